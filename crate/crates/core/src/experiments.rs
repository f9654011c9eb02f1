//! Scripted runs: time series of correlations and negativities, steady-state
//! sweeps over the damping constant, regime-boundary extraction, and the
//! named presets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{
    fidelity, frequency_ratio, nqs_amplitudes, propagate_schrodinger_with, reference_period,
    resonant_epsilon, Branch, PureState, SchrodingerMethod,
};
use crate::correlations::{CorrelationReport, Correlator};
use crate::entanglement::{
    entanglement_report, state_fidelity, target_library, EntanglementReport, Subtype, Thresholds,
};
use crate::error::{Error, Result};
use crate::hilbert::{DampingKind, HilbertSpace, SystemParams};
use crate::io::{Cell, Table};
use crate::linalg::max_abs;
use crate::open::{
    lindblad_rhs, propagate_lindblad, steady_state, DensityMatrix, LindbladGenerator,
};

/// One sample of a time series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSample {
    pub t_over_period: f64,
    pub correlations: CorrelationReport,
    pub entanglement: EntanglementReport,
    /// Fidelities to [`target_library`], same order.
    pub fidelities: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub params: SystemParams,
    pub n_max: usize,
    pub period: f64,
    pub target_labels: Vec<String>,
    pub samples: Vec<TimeSample>,
}

/// Evenly spaced grid `[0, t_end]` with `n_points` points.
pub fn uniform_grid(t_end: f64, n_points: usize) -> Vec<f64> {
    match n_points {
        0 => Vec::new(),
        1 => vec![t_end],
        n => (0..n).map(|k| t_end * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Evolves the vacuum for `t_end_in_period` reference periods and records
/// `n_points` evenly spaced samples. Undamped runs integrate the Schrödinger
/// equation; damped runs the master equation.
pub fn run_time_series(
    params: &SystemParams,
    space: &HilbertSpace,
    t_end_in_period: f64,
    n_points: usize,
    thresholds: Thresholds,
) -> Result<TimeSeries> {
    params.validate()?;
    if n_points == 0 || t_end_in_period <= 0.0 {
        return Err(Error::TimeGrid);
    }
    let period = reference_period(params)?;
    let grid = uniform_grid(t_end_in_period * period, n_points);
    let states: Vec<DensityMatrix> = match params.damping {
        DampingKind::None => propagate_schrodinger_with(
            space,
            params,
            &grid,
            SchrodingerMethod::Rk4 { max_step: None },
        )?
        .iter()
        .map(DensityMatrix::from_pure)
        .collect(),
        _ => {
            let gen = LindbladGenerator::from_params(space, params)?;
            propagate_lindblad(&gen, &DensityMatrix::vacuum(space), &grid)?
        }
    };

    let correlator = Correlator::new(space);
    let targets = target_library();
    let samples = grid
        .par_iter()
        .zip(states.par_iter())
        .map(|(t, rho)| -> Result<TimeSample> {
            Ok(TimeSample {
                t_over_period: t / period,
                correlations: correlator.report(rho),
                entanglement: entanglement_report(rho, thresholds)?,
                fidelities: targets
                    .iter()
                    .map(|tg| state_fidelity(rho, tg))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TimeSeries {
        params: *params,
        n_max: space.n_max(),
        period,
        target_labels: targets.into_iter().map(|t| t.label).collect(),
        samples,
    })
}

impl TimeSeries {
    pub fn to_table(&self) -> Table {
        let mut columns: Vec<String> = [
            "t_over_T", "g1_12", "g1_13", "g2_12", "g2_13", "N_12", "N_13", "N_1_23", "N_2_13",
            "N_3_12", "N_tri", "subtype", "g1_23", "g2_23", "g2m1_12", "g2m1_23", "g2m1_13",
            "N_23", "n1", "n2", "n3",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        columns.extend(self.target_labels.iter().map(|l| format!("F_{l}")));
        let rows = self
            .samples
            .iter()
            .map(|s| {
                let c = &s.correlations;
                let e = &s.entanglement;
                let mut row = vec![
                    Cell::Num(s.t_over_period),
                    Cell::Num(c.g1[0]),
                    Cell::Num(c.g1[2]),
                    Cell::Num(c.g2[0]),
                    Cell::Num(c.g2[2]),
                    Cell::Num(e.reduced[0]),
                    Cell::Num(e.reduced[2]),
                    Cell::Num(e.bipartitions[0]),
                    Cell::Num(e.bipartitions[1]),
                    Cell::Num(e.bipartitions[2]),
                    Cell::Num(e.tripartite),
                    Cell::Text(e.subtype.label().into()),
                    Cell::Num(c.g1[1]),
                    Cell::Num(c.g2[1]),
                    Cell::Num(c.g2[0] - 1.0),
                    Cell::Num(c.g2[1] - 1.0),
                    Cell::Num(c.g2[2] - 1.0),
                    Cell::Num(e.reduced[1]),
                    Cell::Num(c.occupations[0]),
                    Cell::Num(c.occupations[1]),
                    Cell::Num(c.occupations[2]),
                ];
                row.extend(s.fidelities.iter().map(|f| Cell::Num(*f)));
                row
            })
            .collect();
        Table { columns, rows }
    }
}

/// Which parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    KappaOverAlpha,
    EpsilonOverAlpha,
    AlphaOverEpsilon,
    Time,
}

impl SweepParameter {
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::KappaOverAlpha => "kappa_over_alpha",
            SweepParameter::EpsilonOverAlpha => "epsilon_over_alpha",
            SweepParameter::AlphaOverEpsilon => "alpha_over_epsilon",
            SweepParameter::Time => "t_over_T",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
    pub base: SystemParams,
    pub n_max: usize,
    pub thresholds: Thresholds,
}

impl SweepSpec {
    /// `n` log-spaced points over `[lo, hi]`.
    pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![lo];
        }
        let (a, b) = (lo.ln(), hi.ln());
        (0..n)
            .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
            .collect()
    }

    /// The 120-point logarithmic κ/α grid over `[0.05, 10]`.
    pub fn default_kappa_grid() -> Vec<f64> {
        Self::log_grid(0.05, 10.0, 120)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let ok = !self.grid.is_empty()
            && self.grid.iter().all(|x| x.is_finite())
            && self.grid.windows(2).all(|w| w[1] > w[0]);
        if !ok {
            return Err(Error::SweepGrid);
        }
        if self.parameter == SweepParameter::Time {
            return Err(Error::InvalidParams(
                "time is swept by run_time_series, not by a steady-state sweep".into(),
            ));
        }
        if self.parameter == SweepParameter::KappaOverAlpha && self.grid[0] <= 0.0 {
            return Err(Error::InvalidParams("kappa grid must be positive".into()));
        }
        Ok(())
    }

    /// Parameters at one grid value.
    pub fn params_at(&self, x: f64) -> SystemParams {
        let mut p = self.base;
        match self.parameter {
            SweepParameter::KappaOverAlpha => p.kappa = [x * p.alpha; 3],
            SweepParameter::EpsilonOverAlpha => p.epsilon = x * p.alpha,
            SweepParameter::AlphaOverEpsilon => p.alpha = x * p.epsilon,
            SweepParameter::Time => {}
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteadyRow {
    pub x: f64,
    pub correlations: Option<CorrelationReport>,
    pub entanglement: Option<EntanglementReport>,
    pub residual: f64,
    /// Why the row has no values (for example a degenerate null space).
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteadySweep {
    pub parameter: SweepParameter,
    pub rows: Vec<SteadyRow>,
}

fn steady_row(spec: &SweepSpec, space: &HilbertSpace, x: f64) -> SteadyRow {
    let params = spec.params_at(x);
    let solved = LindbladGenerator::from_params(space, &params).and_then(|gen| {
        let rho = steady_state(&gen)?;
        let residual = max_abs(&lindblad_rhs(&gen, &rho));
        Ok((rho, residual))
    });
    match solved.and_then(|(rho, residual)| {
        Ok((entanglement_report(&rho, spec.thresholds)?, rho, residual))
    }) {
        Ok((ent, rho, residual)) => SteadyRow {
            x,
            correlations: Some(Correlator::new(space).report(&rho)),
            entanglement: Some(ent),
            residual,
            error: None,
        },
        Err(e) => SteadyRow {
            x,
            correlations: None,
            entanglement: None,
            residual: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

/// Steady state at every grid point, computed in parallel and returned in
/// grid order. Failed points are kept with their error message.
pub fn sweep_steady_state(spec: &SweepSpec) -> Result<SteadySweep> {
    spec.validate()?;
    let space = HilbertSpace::new(spec.n_max)?;
    let rows = spec
        .grid
        .par_iter()
        .map(|&x| steady_row(spec, &space, x))
        .collect();
    Ok(SteadySweep {
        parameter: spec.parameter,
        rows,
    })
}

impl SteadySweep {
    pub fn to_table(&self) -> Table {
        let columns: Vec<String> = [
            self.parameter.column(),
            "g1_12",
            "g1_23",
            "g1_13",
            "g2_12",
            "g2_23",
            "g2_13",
            "g2m1_12",
            "g2m1_23",
            "g2m1_13",
            "N_12",
            "N_23",
            "N_13",
            "N_1_23",
            "N_2_13",
            "N_3_12",
            "N_tri",
            "subtype",
            "residual",
            "error",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![Cell::Num(r.x)];
                match (&r.correlations, &r.entanglement) {
                    (Some(c), Some(e)) => {
                        row.extend(c.g1.iter().chain(&c.g2).map(|v| Cell::Num(*v)));
                        row.extend(c.g2.iter().map(|v| Cell::Num(v - 1.0)));
                        row.extend(
                            e.reduced
                                .iter()
                                .chain(&e.bipartitions)
                                .map(|v| Cell::Num(*v)),
                        );
                        row.push(Cell::Num(e.tripartite));
                        row.push(Cell::Text(e.subtype.label().into()));
                    }
                    _ => {
                        row.extend(std::iter::repeat_n(Cell::Num(f64::NAN), 16));
                        row.push(Cell::Text("error".into()));
                    }
                }
                row.push(Cell::Num(r.residual));
                row.push(Cell::Text(r.error.clone().unwrap_or_default()));
                row
            })
            .collect();
        Table { columns, rows }
    }
}

/// One contiguous interval of the swept parameter with a single subtype.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub lo: f64,
    pub hi: f64,
    pub subtype: Subtype,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeTable {
    pub parameter: SweepParameter,
    pub rows: Vec<Regime>,
}

impl RegimeTable {
    pub fn subtypes(&self) -> Vec<Subtype> {
        self.rows.iter().map(|r| r.subtype).collect()
    }

    /// Interior boundaries, in order.
    pub fn boundaries(&self) -> Vec<f64> {
        self.rows.iter().skip(1).map(|r| r.lo).collect()
    }

    pub fn to_table(&self) -> Table {
        let p = self.parameter.column();
        Table {
            columns: vec![format!("{p}_lo"), format!("{p}_hi"), "subtype".into()],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Num(r.lo),
                        Cell::Num(r.hi),
                        Cell::Text(r.subtype.label().into()),
                    ]
                })
                .collect(),
        }
    }
}

/// Boundary resolution of the regime refinement, in units of the swept ratio.
pub const BOUNDARY_RESOLUTION: f64 = 1e-3;

struct Refiner<'a> {
    spec: &'a SweepSpec,
    space: HilbertSpace,
    thresholds: Thresholds,
}

impl Refiner<'_> {
    fn classify_at(&self, x: f64) -> Result<Subtype> {
        let row = steady_row(self.spec, &self.space, x);
        match row.entanglement {
            Some(e) => Ok(crate::entanglement::classify(&e, self.thresholds)),
            None => Err(Error::SteadyState(format!(
                "at {x}: {}",
                row.error.unwrap_or_default()
            ))),
        }
    }

    /// Transitions inside `[lo, hi]` as `(position, subtype on the right)`.
    /// A midpoint matching neither end splits the cell and both halves are
    /// refined, so short intermediate regimes are kept.
    fn refine(
        &self,
        lo: f64,
        c_lo: Subtype,
        hi: f64,
        c_hi: Subtype,
        out: &mut Vec<(f64, Subtype)>,
    ) -> Result<()> {
        if c_lo == c_hi {
            return Ok(());
        }
        if hi - lo <= BOUNDARY_RESOLUTION {
            out.push((0.5 * (lo + hi), c_hi));
            return Ok(());
        }
        let mid = 0.5 * (lo + hi);
        let c_mid = self.classify_at(mid)?;
        self.refine(lo, c_lo, mid, c_mid, out)?;
        self.refine(mid, c_mid, hi, c_hi, out)
    }
}

/// Contiguous subtype intervals covering the swept range, with each boundary
/// refined by bisection between the bracketing grid points.
pub fn extract_regime_table(
    spec: &SweepSpec,
    sweep: &SteadySweep,
    thresholds: Thresholds,
) -> Result<RegimeTable> {
    spec.validate()?;
    let mut classes = Vec::with_capacity(sweep.rows.len());
    for row in &sweep.rows {
        match &row.entanglement {
            Some(e) => classes.push((row.x, crate::entanglement::classify(e, thresholds))),
            None => {
                return Err(Error::SteadyState(format!(
                    "row at {} failed: {}",
                    row.x,
                    row.error.clone().unwrap_or_default()
                )))
            }
        }
    }
    if classes.is_empty() {
        return Err(Error::SweepGrid);
    }
    if classes.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::SweepGrid);
    }
    let refiner = Refiner {
        spec,
        space: HilbertSpace::new(spec.n_max)?,
        thresholds,
    };
    let cells: Vec<Vec<(f64, Subtype)>> = classes
        .par_windows(2)
        .map(|w| {
            let mut out = Vec::new();
            refiner.refine(w[0].0, w[0].1, w[1].0, w[1].1, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let (first_x, first_class) = classes[0];
    let last_x = classes[classes.len() - 1].0;
    let mut rows = vec![Regime {
        lo: first_x,
        hi: last_x,
        subtype: first_class,
    }];
    for (x, subtype) in cells.into_iter().flatten() {
        let last = rows.last_mut().unwrap();
        last.hi = x;
        rows.push(Regime {
            lo: x,
            hi: last_x,
            subtype,
        });
    }
    Ok(RegimeTable {
        parameter: spec.parameter,
        rows,
    })
}

/// Regime tables at the given thresholds and at thresholds scaled by
/// `factor`, with the boundary shifts when the subtype sequences agree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSensitivity {
    pub base: RegimeTable,
    pub perturbed: RegimeTable,
    pub factor: f64,
    /// Per-boundary shift, present when both tables have the same sequence.
    pub shifts: Option<Vec<f64>>,
}

pub fn threshold_sensitivity(
    spec: &SweepSpec,
    sweep: &SteadySweep,
    thresholds: Thresholds,
    factor: f64,
) -> Result<ThresholdSensitivity> {
    let base = extract_regime_table(spec, sweep, thresholds)?;
    let perturbed = extract_regime_table(spec, sweep, thresholds.scaled(factor))?;
    let shifts = (base.subtypes() == perturbed.subtypes()).then(|| {
        base.boundaries()
            .iter()
            .zip(perturbed.boundaries())
            .map(|(a, b)| b - a)
            .collect()
    });
    Ok(ThresholdSensitivity {
        base,
        perturbed,
        factor,
        shifts,
    })
}

/// `ω₁/ω₂` against `α/ε` (with `ε = 1`).
pub fn frequency_ratio_table(alpha_over_epsilon: &[f64]) -> Result<Table> {
    let rows = alpha_over_epsilon
        .iter()
        .map(|&r| Ok(vec![Cell::Num(r), Cell::Num(frequency_ratio(r, 1.0)?)]))
        .collect::<Result<_>>()?;
    Ok(Table {
        columns: vec!["alpha_over_epsilon".into(), "omega1_over_omega2".into()],
        rows,
    })
}

/// `1 − F(t)` between full evolution on a space with cutoff `n_max` and the
/// closed-form qubit solution.
pub fn validate_truncation(
    params: &SystemParams,
    n_max: usize,
    t_end_in_period: f64,
    n_points: usize,
    method: SchrodingerMethod,
) -> Result<Table> {
    let period = reference_period(params)?;
    let grid = uniform_grid(t_end_in_period * period, n_points);
    let space = HilbertSpace::new(n_max)?;
    let full = propagate_schrodinger_with(&space, params, &grid, method)?;
    let rows = grid
        .iter()
        .zip(&full)
        .map(|(&t, psi)| {
            let cut = PureState::from_qubit_amplitudes(nqs_amplitudes(params, t));
            Ok(vec![
                Cell::Num(t / period),
                Cell::Num(1.0 - fidelity(psi, &cut)?),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        columns: vec!["t_over_T".into(), "one_minus_F".into()],
        rows,
    })
}

/// What a preset produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetKind {
    FrequencyRatio,
    TruncationValidation,
    TimeSeries,
    SteadySweep,
}

/// Fully pinned parameters for one named run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: &'static str,
    pub kind: PresetKind,
    pub alpha_over_chi: f64,
    pub branch: Branch,
    pub delta_over_alpha: f64,
    pub damping: DampingKind,
    pub kappa_over_alpha: f64,
    pub n_max: usize,
    pub t_end_in_t: f64,
    pub n_points: usize,
}

pub const PRESET_NAMES: [&str; 16] = [
    "fig2", "fig3", "fig4a", "fig4b", "fig5a", "fig5b", "fig6", "fig7a", "fig7b", "fig8a", "fig8b",
    "fig8c", "fig9a", "fig9b", "table2a", "table2b",
];

pub fn preset(name: &str) -> Option<Preset> {
    use Branch::*;
    use DampingKind as D;
    let base = Preset {
        name: "",
        kind: PresetKind::TimeSeries,
        alpha_over_chi: 0.001,
        branch: Minus,
        delta_over_alpha: 0.0,
        damping: D::None,
        kappa_over_alpha: 0.0,
        n_max: 1,
        t_end_in_t: 2.0,
        n_points: 401,
    };
    let p = match name {
        "fig2" => Preset {
            kind: PresetKind::FrequencyRatio,
            n_points: 1001,
            ..base
        },
        "fig3" => Preset {
            kind: PresetKind::TruncationValidation,
            branch: Plus,
            n_max: 9,
            t_end_in_t: 3.0,
            n_points: 601,
            ..base
        },
        "fig4a" | "fig5a" => Preset {
            branch: Plus,
            ..base
        },
        "fig4b" | "fig5b" => base,
        "fig6" => Preset {
            delta_over_alpha: -0.6,
            t_end_in_t: 5.0,
            n_points: 1001,
            ..base
        },
        "fig7a" => Preset {
            damping: D::Amplitude,
            kappa_over_alpha: 0.1,
            t_end_in_t: 20.0,
            n_points: 2001,
            ..base
        },
        "fig7b" => Preset {
            delta_over_alpha: -0.6,
            ..preset("fig7a")?
        },
        "fig8a" | "fig8b" | "table2a" => Preset {
            kind: PresetKind::SteadySweep,
            damping: D::Amplitude,
            kappa_over_alpha: 0.1,
            n_points: 120,
            ..base
        },
        "fig8c" | "table2b" => Preset {
            delta_over_alpha: -0.6,
            ..preset("fig8b")?
        },
        "fig9a" => Preset {
            damping: D::Phase,
            kappa_over_alpha: 0.1,
            t_end_in_t: 10.0,
            n_points: 1001,
            ..base
        },
        "fig9b" => Preset {
            delta_over_alpha: -0.6,
            ..preset("fig9a")?
        },
        _ => return None,
    };
    let name = PRESET_NAMES.iter().find(|n| **n == name)?;
    Some(Preset { name, ..p })
}

impl Preset {
    /// Physical parameters with `χ = 1`.
    pub fn params(&self) -> SystemParams {
        let alpha = self.alpha_over_chi;
        SystemParams::undamped(alpha, resonant_epsilon(alpha, self.branch))
            .with_delta(self.delta_over_alpha * alpha)
            .with_damping(self.damping, self.kappa_over_alpha * alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(uniform_grid(1.0, 3), vec![0.0, 0.5, 1.0]);
        let g = SweepSpec::default_kappa_grid();
        assert_eq!(g.len(), 120);
        assert!((g[0] - 0.05).abs() < 1e-15 && (g[119] - 10.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn presets_pin_parameters() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            assert_eq!(p.name, name);
            assert!(p.params().validate().is_ok());
        }
        let f3 = preset("fig3").unwrap();
        assert_eq!(
            (f3.branch, f3.n_max, f3.damping),
            (Branch::Plus, 9, DampingKind::None)
        );
        let f7b = preset("fig7b").unwrap();
        assert_eq!(
            (
                f7b.branch,
                f7b.damping,
                f7b.delta_over_alpha,
                f7b.kappa_over_alpha
            ),
            (Branch::Minus, DampingKind::Amplitude, -0.6, 0.1)
        );
        assert!(preset("fig10").is_none());
    }

    #[test]
    fn sweep_spec_validation() {
        let base = preset("fig8b").unwrap().params();
        let mut spec = SweepSpec {
            parameter: SweepParameter::KappaOverAlpha,
            grid: vec![0.1, 0.2],
            base,
            n_max: 1,
            thresholds: Thresholds::default(),
        };
        assert!(spec.validate().is_ok());
        spec.grid = vec![0.2, 0.1];
        assert!(matches!(spec.validate(), Err(Error::SweepGrid)));
        spec.grid = vec![];
        assert!(spec.validate().is_err());
        spec.grid = vec![0.0, 1.0];
        assert!(spec.validate().is_err());
        spec.grid = vec![0.1];
        spec.parameter = SweepParameter::Time;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn degenerate_rows_are_flagged_not_dropped() {
        let base = SystemParams::undamped(0.0, 0.4).with_damping(DampingKind::Phase, 0.1);
        let spec = SweepSpec {
            parameter: SweepParameter::EpsilonOverAlpha,
            grid: vec![0.5, 1.0],
            base,
            n_max: 1,
            thresholds: Thresholds::default(),
        };
        let sweep = sweep_steady_state(&spec).unwrap();
        assert_eq!(sweep.rows.len(), 2);
        assert!(sweep
            .rows
            .iter()
            .all(|r| r.error.as_deref().is_some_and(|e| e.contains("dimension"))));
        assert!(extract_regime_table(&spec, &sweep, Thresholds::default()).is_err());
        let table = sweep.to_table();
        assert!(table.rows.iter().all(|r| r.len() == table.columns.len()));
    }
}
