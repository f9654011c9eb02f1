//! Undamped evolution of the vacuum on the resonant minus branch: the
//! closed-form qubit amplitudes against direct integration, and the
//! tripartite negativity over one period.

use kerr_chain::closed::{
    nqs_amplitudes, propagate_schrodinger, reference_period, resonant_epsilon, PureState,
};
use kerr_chain::entanglement::entanglement_report;
use kerr_chain::experiments::uniform_grid;
use kerr_chain::{Branch, DensityMatrix, HilbertSpace, SystemParams, Thresholds};

fn main() -> kerr_chain::Result<()> {
    let alpha = 0.001;
    let params = SystemParams::undamped(alpha, resonant_epsilon(alpha, Branch::Minus));
    let period = reference_period(&params)?;
    let grid = uniform_grid(period, 11);
    let states = propagate_schrodinger(&HilbertSpace::qubits(), &params, &grid)?;

    println!(
        "{:>6} {:>12} {:>10} {:>8}",
        "t/T", "|psi-nqs|", "N_tri", "subtype"
    );
    for (t, psi) in grid.iter().zip(&states) {
        let exact = PureState::from_qubit_amplitudes(nqs_amplitudes(&params, *t));
        let diff = (&psi.amplitudes - &exact.amplitudes).norm();
        let report = entanglement_report(&DensityMatrix::from_pure(psi), Thresholds::default())?;
        println!(
            "{:>6.2} {:>12.3e} {:>10.6} {:>8}",
            t / period,
            diff,
            report.tripartite,
            report.subtype
        );
    }
    Ok(())
}
