//! Command-line front end. The binary only calls [`run`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::closed::PureState;
use crate::entanglement::{entanglement_report, target_library, Thresholds};
use crate::error::{Error, Result};
use crate::experiments::{
    extract_regime_table, frequency_ratio_table, preset, run_time_series, sweep_steady_state,
    threshold_sensitivity, uniform_grid, validate_truncation, PresetKind, RegimeTable,
    SweepParameter, SweepSpec,
};
use crate::hilbert::{DampingKind, HilbertSpace};
use crate::io::{emit_table, load_config_file, Cell, ConfigLayer, Preamble, RunConfig, Table};
use crate::linalg::{CVector, C64};
use crate::open::DensityMatrix;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "KERR_CHAIN_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "kerr-chain",
    version,
    about = "Three coupled Kerr oscillators: dynamics, correlations, entanglement"
)]
struct Cli {
    /// More log output (repeat for debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// TOML config, or a CSV written by this tool
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    layer: ConfigLayer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SweepOutput {
    /// One row per grid point
    Sweep,
    /// Contiguous subtype intervals with refined boundaries
    Regimes,
    /// Regimes at the given thresholds and at doubled thresholds
    Sensitivity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Undamped evolution from the vacuum
    EvolveClosed(Common),
    /// Damped evolution from the vacuum
    EvolveOpen(Common),
    /// Steady state at one damping constant
    SteadyState(Common),
    /// Steady states over a logarithmic grid of damping constants
    SweepKappa {
        #[arg(long, value_enum, default_value = "sweep")]
        table: SweepOutput,
        #[command(flatten)]
        common: Common,
    },
    /// Negativities and subtype of a pure three-mode state
    ClassifyState {
        /// Label from the built-in target states
        #[arg(long, conflicts_with = "amplitudes")]
        state: Option<String>,
        /// Amplitudes such as `000=1,111=-1` or `010=0.5+0.5i`
        #[arg(long)]
        amplitudes: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Infidelity between the truncated evolution and the closed-form qubit solution
    ValidateTruncation(Common),
    /// Run a named preset
    Preset {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_logging(cli.verbose);
    let Some(command) = cli.command else {
        let _ = Cli::command().print_help();
        println!();
        return 0;
    };
    match init_threads().and_then(|_| execute(command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        Error::OutOfRange(format!(
            "{THREADS_ENV} must be a positive integer, got `{raw}`"
        ))
    })?;
    // A pool that is already built (repeated calls in one process) is fine.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn resolve(common: &Common) -> Result<RunConfig> {
    let file = common.config.as_deref().map(load_config_file).transpose()?;
    RunConfig::resolve(file.as_ref(), &common.layer)
}

fn emit(table: &Table, cfg: &RunConfig, command: &str) -> Result<()> {
    emit_table(
        table,
        cfg.format,
        cfg.output_path.as_deref(),
        &Preamble::new(command, cfg),
    )
}

fn require_damping(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.damping == DampingKind::None {
        return Err(Error::ConflictingOptions(format!(
            "{command} needs --damping amplitude or phase"
        )));
    }
    Ok(())
}

fn forbid_damping(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.damping != DampingKind::None {
        return Err(Error::ConflictingOptions(format!(
            "{command} is undamped, but damping is {:?}",
            cfg.damping
        )));
    }
    Ok(())
}

fn kappa_spec(cfg: &RunConfig, grid: Vec<f64>) -> SweepSpec {
    SweepSpec {
        parameter: SweepParameter::KappaOverAlpha,
        grid,
        base: cfg.params(),
        n_max: cfg.n_max,
        thresholds: cfg.thresholds(),
    }
}

fn time_series(cfg: &RunConfig) -> Result<Table> {
    let space = cfg.space()?;
    Ok(run_time_series(
        &cfg.params(),
        &space,
        cfg.t_end_in_t,
        cfg.n_points,
        cfg.thresholds(),
    )?
    .to_table())
}

fn steady_sweep_table(cfg: &RunConfig, output: SweepOutput) -> Result<Table> {
    require_damping(cfg, "a steady-state sweep")?;
    let spec = kappa_spec(
        cfg,
        SweepSpec::log_grid(cfg.kappa_min, cfg.kappa_max, cfg.n_kappa),
    );
    let sweep = sweep_steady_state(&spec)?;
    match output {
        SweepOutput::Sweep => Ok(sweep.to_table()),
        SweepOutput::Regimes => {
            Ok(extract_regime_table(&spec, &sweep, cfg.thresholds())?.to_table())
        }
        SweepOutput::Sensitivity => {
            let s = threshold_sensitivity(&spec, &sweep, cfg.thresholds(), 2.0)?;
            Ok(sensitivity_table(&s.base, &s.perturbed))
        }
    }
}

fn sensitivity_table(base: &RegimeTable, doubled: &RegimeTable) -> Table {
    let mut columns = vec!["thresholds".to_string()];
    columns.extend(base.to_table().columns);
    let mut rows = Vec::new();
    for (label, t) in [("base", base), ("doubled", doubled)] {
        for row in t.to_table().rows {
            let mut r = vec![Cell::Text(label.into())];
            r.extend(row);
            rows.push(r);
        }
    }
    Table { columns, rows }
}

/// Parses `000=1,111=-1` into a normalized state on `space`.
pub fn parse_amplitudes(spec: &str, space: HilbertSpace) -> Result<PureState> {
    let mut v = CVector::zeros(space.total_dim());
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (occ, amp) = item.split_once('=').ok_or_else(|| {
            Error::MalformedConfig(format!("amplitude `{item}` is not of the form 000=value"))
        })?;
        let digits: Vec<usize> = occ
            .trim()
            .chars()
            .filter_map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        if digits.len() != 3 || occ.trim().chars().count() != 3 {
            return Err(Error::MalformedConfig(format!(
                "occupation `{occ}` must be three digits"
            )));
        }
        let idx = space
            .index([digits[0], digits[1], digits[2]])
            .ok_or_else(|| {
                Error::OutOfRange(format!(
                    "occupation `{occ}` exceeds n_max = {}",
                    space.n_max()
                ))
            })?;
        let a: C64 = amp
            .trim()
            .parse()
            .map_err(|_| Error::MalformedConfig(format!("bad amplitude `{amp}`")))?;
        v[idx] += a;
    }
    let norm = v.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::OutOfRange(
            "amplitudes must have a finite nonzero norm".into(),
        ));
    }
    PureState::new(space, v.unscale(norm))
}

fn classification_table(
    states: Vec<(String, DensityMatrix)>,
    thresholds: Thresholds,
) -> Result<Table> {
    let columns = [
        "state", "N_12", "N_23", "N_13", "N_1_23", "N_2_13", "N_3_12", "N_tri", "subtype",
    ];
    let rows = states
        .iter()
        .map(|(label, rho)| {
            let e = entanglement_report(rho, thresholds)?;
            let mut row = vec![Cell::Text(label.clone())];
            row.extend(
                e.reduced
                    .iter()
                    .chain(&e.bipartitions)
                    .map(|x| Cell::Num(*x)),
            );
            row.push(Cell::Num(e.tripartite));
            row.push(Cell::Text(e.subtype.label().into()));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        columns: columns.map(String::from).to_vec(),
        rows,
    })
}

fn classify(cfg: &RunConfig, state: Option<&str>, amplitudes: Option<&str>) -> Result<Table> {
    let states = match (state, amplitudes) {
        (_, Some(spec)) => {
            let psi = parse_amplitudes(spec, cfg.space()?)?;
            vec![(spec.to_string(), DensityMatrix::from_pure(&psi))]
        }
        (Some(label), None) => {
            let t = target_library()
                .into_iter()
                .find(|t| t.label == label)
                .ok_or_else(|| Error::OutOfRange(format!("unknown state `{label}`")))?;
            vec![(t.label.clone(), t.density())]
        }
        (None, None) => target_library()
            .into_iter()
            .map(|t| (t.label.clone(), t.density()))
            .collect(),
    };
    classification_table(states, cfg.thresholds())
}

fn run_preset(cfg: &RunConfig, name: &str) -> Result<Table> {
    let p = preset(name).ok_or_else(|| Error::OutOfRange(format!("unknown preset `{name}`")))?;
    match p.kind {
        PresetKind::FrequencyRatio => frequency_ratio_table(&uniform_grid(10.0, cfg.n_points)),
        PresetKind::TruncationValidation => validate_truncation(
            &cfg.params(),
            cfg.n_max,
            cfg.t_end_in_t,
            cfg.n_points,
            cfg.method(),
        ),
        PresetKind::TimeSeries => time_series(cfg),
        PresetKind::SteadySweep if name.starts_with("table") => {
            steady_sweep_table(cfg, SweepOutput::Regimes)
        }
        PresetKind::SteadySweep => steady_sweep_table(cfg, SweepOutput::Sweep),
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::EvolveClosed(common) => {
            let cfg = resolve(&common)?;
            forbid_damping(&cfg, "evolve-closed")?;
            emit(&time_series(&cfg)?, &cfg, "evolve-closed")
        }
        Command::EvolveOpen(common) => {
            let cfg = resolve(&common)?;
            require_damping(&cfg, "evolve-open")?;
            emit(&time_series(&cfg)?, &cfg, "evolve-open")
        }
        Command::SteadyState(common) => {
            let cfg = resolve(&common)?;
            require_damping(&cfg, "steady-state")?;
            let sweep = sweep_steady_state(&kappa_spec(&cfg, vec![cfg.kappa_over_alpha]))?;
            if let Some(msg) = sweep.rows.iter().find_map(|r| r.error.clone()) {
                return Err(Error::SteadyState(msg));
            }
            emit(&sweep.to_table(), &cfg, "steady-state")
        }
        Command::SweepKappa { table, common } => {
            let cfg = resolve(&common)?;
            let name = table
                .to_possible_value()
                .expect("not skipped")
                .get_name()
                .to_string();
            emit(
                &steady_sweep_table(&cfg, table)?,
                &cfg,
                &format!("sweep-kappa --table {name}"),
            )
        }
        Command::ClassifyState {
            state,
            amplitudes,
            common,
        } => {
            let cfg = resolve(&common)?;
            let mut line = "classify-state".to_string();
            if let Some(s) = &state {
                line += &format!(" --state {s}");
            }
            if let Some(a) = &amplitudes {
                line += &format!(" --amplitudes {a}");
            }
            emit(
                &classify(&cfg, state.as_deref(), amplitudes.as_deref())?,
                &cfg,
                &line,
            )
        }
        Command::ValidateTruncation(common) => {
            let cfg = resolve(&common)?;
            forbid_damping(&cfg, "validate-truncation")?;
            let table = validate_truncation(
                &cfg.params(),
                cfg.n_max,
                cfg.t_end_in_t,
                cfg.n_points,
                cfg.method(),
            )?;
            emit(&table, &cfg, "validate-truncation")
        }
        Command::Preset { name, mut common } => {
            if common.layer.preset.as_ref().is_some_and(|p| *p != name) {
                return Err(Error::ConflictingOptions(format!(
                    "--preset disagrees with preset {name}"
                )));
            }
            common.layer.preset = Some(name.clone());
            let cfg = resolve(&common)?;
            emit(&run_preset(&cfg, &name)?, &cfg, &format!("preset {name}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_arguments_prints_usage() {
        assert_eq!(run(["kerr-chain"]), 0);
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn amplitude_strings() {
        let psi = parse_amplitudes("000=1, 111=-1", HilbertSpace::qubits()).unwrap();
        assert!((psi.amplitude([1, 1, 1]).re + 0.5f64.sqrt()).abs() < 1e-15);
        let psi = parse_amplitudes("010=0+1i", HilbertSpace::qubits()).unwrap();
        assert!((psi.amplitude([0, 1, 0]).im - 1.0).abs() < 1e-15);
        assert_eq!(
            parse_amplitudes("200=1", HilbertSpace::qubits())
                .unwrap_err()
                .exit_code(),
            4
        );
        assert_eq!(
            parse_amplitudes("00=1", HilbertSpace::qubits())
                .unwrap_err()
                .exit_code(),
            3
        );
        assert_eq!(
            parse_amplitudes("000=x", HilbertSpace::qubits())
                .unwrap_err()
                .exit_code(),
            3
        );
        assert_eq!(
            parse_amplitudes("000=0", HilbertSpace::qubits())
                .unwrap_err()
                .exit_code(),
            4
        );
    }

    #[test]
    fn damping_requirements() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("x.csv");
        let out = out.to_str().unwrap();
        assert_eq!(run(["kerr-chain", "evolve-open", "-o", out]), 2);
        assert_eq!(
            run([
                "kerr-chain",
                "evolve-closed",
                "--damping",
                "phase",
                "-o",
                out
            ]),
            2
        );
        assert_eq!(
            run(["kerr-chain", "evolve-closed", "--n-max", "0", "-o", out]),
            4
        );
    }
}
