//! Steady-state entanglement regimes over κ/α with boundaries refined by
//! bisection, and how they move when the thresholds are doubled.

use kerr_chain::experiments::{
    preset, sweep_steady_state, threshold_sensitivity, SweepParameter, SweepSpec,
};
use kerr_chain::Thresholds;

fn main() -> kerr_chain::Result<()> {
    for name in ["table2a", "table2b"] {
        let spec = SweepSpec {
            parameter: SweepParameter::KappaOverAlpha,
            grid: SweepSpec::default_kappa_grid(),
            base: preset(name).expect("known preset").params(),
            n_max: 1,
            thresholds: Thresholds::default(),
        };
        let sweep = sweep_steady_state(&spec)?;
        let s = threshold_sensitivity(&spec, &sweep, spec.thresholds, 2.0)?;
        println!("{name}");
        for r in &s.base.rows {
            println!("  {:>8.4} .. {:>8.4}  {}", r.lo, r.hi, r.subtype);
        }
        match &s.shifts {
            Some(shifts) => println!("  boundary shifts at doubled thresholds: {shifts:?}"),
            None => println!(
                "  doubled thresholds change the regime sequence: {:?}",
                s.perturbed.subtypes()
            ),
        }
    }
    Ok(())
}
