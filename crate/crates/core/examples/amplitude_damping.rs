//! Entanglement under amplitude damping with κ = 0.1α, with and without
//! detuning, from the vacuum to the long-time limit.

use kerr_chain::entanglement::entanglement_report;
use kerr_chain::experiments::{preset, run_time_series};
use kerr_chain::open::steady_state;
use kerr_chain::{HilbertSpace, LindbladGenerator, Thresholds};

fn main() -> kerr_chain::Result<()> {
    let space = HilbertSpace::qubits();
    for name in ["fig7a", "fig7b"] {
        let p = preset(name).expect("known preset");
        let params = p.params();
        let series = run_time_series(&params, &space, 5.0, 501, Thresholds::default())?;
        let peak = series
            .samples
            .iter()
            .max_by(|a, b| {
                a.entanglement
                    .tripartite
                    .total_cmp(&b.entanglement.tripartite)
            })
            .expect("nonempty");
        let ss = steady_state(&LindbladGenerator::from_params(&space, &params)?)?;
        let e = entanglement_report(&ss, Thresholds::default())?;
        println!("{name}: delta/alpha = {}", p.delta_over_alpha);
        println!(
            "  peak N_tri = {:.4} at t = {:.3} T",
            peak.entanglement.tripartite, peak.t_over_period
        );
        println!(
            "  steady state: N_tri = {:.4}, N_13 = {:.4}, N_12 = {:.2e}, {}",
            e.tripartite, e.reduced[2], e.reduced[0], e.subtype
        );
    }
    Ok(())
}
