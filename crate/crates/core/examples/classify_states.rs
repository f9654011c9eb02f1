//! Negativities and entanglement subtype of the built-in target states and a
//! user-written state.

use kerr_chain::cli::parse_amplitudes;
use kerr_chain::entanglement::{entanglement_report, target_library};
use kerr_chain::{DensityMatrix, HilbertSpace, Thresholds};

fn main() -> kerr_chain::Result<()> {
    let th = Thresholds::default();
    println!(
        "{:>10} {:>8} {:>8} {:>8} {:>8} {:>6}",
        "state", "N_12", "N_23", "N_13", "N_tri", "type"
    );
    let mut states: Vec<(String, DensityMatrix)> = target_library()
        .into_iter()
        .map(|t| (t.label.clone(), t.density()))
        .collect();
    let star = parse_amplitudes("000=1,100=1,110=1,111=1", HilbertSpace::qubits())?;
    states.push(("star".into(), DensityMatrix::from_pure(&star)));
    for (label, rho) in &states {
        let e = entanglement_report(rho, th)?;
        println!(
            "{label:>10} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>6}",
            e.reduced[0], e.reduced[1], e.reduced[2], e.tripartite, e.subtype
        );
    }
    Ok(())
}
