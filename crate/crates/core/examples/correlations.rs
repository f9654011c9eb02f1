//! First- and second-order intermode correlations along the undamped
//! evolution, and for a few reference states.

use kerr_chain::closed::resonant_epsilon;
use kerr_chain::correlations::correlation_report;
use kerr_chain::entanglement::TargetState;
use kerr_chain::experiments::run_time_series;
use kerr_chain::{Branch, HilbertSpace, SystemParams, Thresholds};

fn main() -> kerr_chain::Result<()> {
    for t in [TargetState::ghz(1.0), TargetState::w()] {
        let r = correlation_report(&t.density())?;
        println!("{:>6}: g1 {:.4?}  g2 {:.4?}", t.label, r.g1, r.g2);
    }

    let alpha = 0.001;
    let params = SystemParams::undamped(alpha, resonant_epsilon(alpha, Branch::Plus));
    let series = run_time_series(
        &params,
        &HilbertSpace::qubits(),
        1.0,
        9,
        Thresholds::default(),
    )?;
    println!(
        "\n{:>6} {:>8} {:>8} {:>8} {:>8}",
        "t/T", "g1_12", "g1_13", "g2_12", "g2_13"
    );
    for s in &series.samples {
        let c = &s.correlations;
        println!(
            "{:>6.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            s.t_over_period, c.g1[0], c.g1[2], c.g2[0], c.g2[2]
        );
    }
    Ok(())
}
