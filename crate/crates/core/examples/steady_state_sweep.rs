//! Steady-state correlations and negativities over κ/α, written as CSV to
//! stdout.

use kerr_chain::experiments::{preset, sweep_steady_state, SweepParameter, SweepSpec};
use kerr_chain::io::{emit_table, ConfigLayer, Format, Preamble, RunConfig};

fn main() -> kerr_chain::Result<()> {
    let flags = ConfigLayer {
        preset: Some("fig8b".into()),
        n_kappa: Some(24),
        ..Default::default()
    };
    let cfg = RunConfig::resolve(None, &flags)?;
    let spec = SweepSpec {
        parameter: SweepParameter::KappaOverAlpha,
        grid: SweepSpec::log_grid(cfg.kappa_min, cfg.kappa_max, cfg.n_kappa),
        base: preset("fig8b").expect("known preset").params(),
        n_max: cfg.n_max,
        thresholds: cfg.thresholds(),
    };
    let sweep = sweep_steady_state(&spec)?;
    emit_table(
        &sweep.to_table(),
        Format::Csv,
        None,
        &Preamble::new("sweep-kappa --table sweep", &cfg),
    )
}
