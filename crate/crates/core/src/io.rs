//! Run configuration and table output.
//!
//! A [`RunConfig`] is resolved from layers: built-in defaults, an optional
//! named preset, an optional TOML file, then command-line flags. Later layers
//! win. Every output file starts with a `#` preamble holding the resolved
//! configuration as TOML, so a file can be fed back through `--config` to
//! regenerate it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::closed::{resonant_epsilon, Branch, SchrodingerMethod};
use crate::entanglement::Thresholds;
use crate::error::{Error, Result};
use crate::experiments::{preset, Preset, PresetKind};
use crate::hilbert::{DampingKind, DissipatorScale, HilbertSpace, SystemParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest cutoff accepted from a config.
pub const MAX_N_MAX: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EpsilonBranch {
    Plus,
    Minus,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Propagator {
    Rk4,
    Spectral,
}

/// Where a resolved value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Default,
    Preset,
    File,
    Flag,
}

/// One partial layer of configuration. Also the on-disk TOML schema.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    /// Named preset
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Kerr strength; only 1 is accepted
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_over_chi: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_branch: Option<EpsilonBranch>,
    /// Coupling for the explicit branch
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_over_alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_over_alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_over_alpha: Option<f64>,
    #[arg(long, value_parser = parse_damping)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub damping: Option<DampingKind>,
    /// Rate convention: half (γ = κ) or full (γ = 2κ)
    #[arg(long, value_parser = parse_scale)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dissipator_scale: Option<DissipatorScale>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// End time in units of the reference period T
    #[arg(long = "t-end-in-t")]
    #[serde(rename = "t_end_in_T", skip_serializing_if = "Option::is_none")]
    pub t_end_in_t: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_kappa: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_tripartite: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_reduced: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propagator: Option<Propagator>,
    #[arg(long = "output-path", short = 'o')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

fn parse_damping(s: &str) -> std::result::Result<DampingKind, String> {
    match s {
        "none" => Ok(DampingKind::None),
        "amplitude" => Ok(DampingKind::Amplitude),
        "phase" => Ok(DampingKind::Phase),
        _ => Err(format!("unknown damping `{s}` (none, amplitude, phase)")),
    }
}

fn parse_scale(s: &str) -> std::result::Result<DissipatorScale, String> {
    match s {
        "half" => Ok(DissipatorScale::Half),
        "full" => Ok(DissipatorScale::Full),
        _ => Err(format!("unknown dissipator scale `{s}` (half, full)")),
    }
}

/// Fully resolved run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub chi: f64,
    pub alpha_over_chi: f64,
    pub epsilon_branch: EpsilonBranch,
    pub epsilon_over_alpha: Option<f64>,
    pub delta_over_alpha: f64,
    pub kappa_over_alpha: f64,
    pub damping: DampingKind,
    /// `None` means the default scale for the damping kind.
    pub dissipator_scale: Option<DissipatorScale>,
    pub n_max: usize,
    pub t_end_in_t: f64,
    pub n_points: usize,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub n_kappa: usize,
    pub threshold_tripartite: f64,
    pub threshold_reduced: f64,
    pub propagator: Propagator,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub provenance: BTreeMap<&'static str, Source>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let th = Thresholds::default();
        let mut cfg = Self {
            preset: None,
            chi: 1.0,
            alpha_over_chi: 0.001,
            epsilon_branch: EpsilonBranch::Minus,
            epsilon_over_alpha: None,
            delta_over_alpha: 0.0,
            kappa_over_alpha: 0.1,
            damping: DampingKind::None,
            dissipator_scale: None,
            n_max: 1,
            t_end_in_t: 2.0,
            n_points: 401,
            kappa_min: 0.05,
            kappa_max: 10.0,
            n_kappa: 120,
            threshold_tripartite: th.tripartite,
            threshold_reduced: th.reduced,
            propagator: Propagator::Rk4,
            output_path: None,
            format: Format::Csv,
            provenance: BTreeMap::new(),
        };
        for key in KEYS {
            cfg.provenance.insert(key, Source::Default);
        }
        cfg
    }
}

const KEYS: [&str; 20] = [
    "preset",
    "chi",
    "alpha_over_chi",
    "epsilon_branch",
    "epsilon_over_alpha",
    "delta_over_alpha",
    "kappa_over_alpha",
    "damping",
    "dissipator_scale",
    "n_max",
    "t_end_in_T",
    "n_points",
    "kappa_min",
    "kappa_max",
    "n_kappa",
    "threshold_tripartite",
    "threshold_reduced",
    "propagator",
    "output_path",
    "format",
];

impl Preset {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            alpha_over_chi: Some(self.alpha_over_chi),
            epsilon_branch: Some(match self.branch {
                Branch::Plus => EpsilonBranch::Plus,
                Branch::Minus => EpsilonBranch::Minus,
            }),
            delta_over_alpha: Some(self.delta_over_alpha),
            kappa_over_alpha: Some(self.kappa_over_alpha),
            damping: Some(self.damping),
            n_max: Some(self.n_max),
            t_end_in_t: Some(self.t_end_in_t),
            n_points: Some(self.n_points),
            // RK4 on the 1000-state space takes minutes; the eigenbasis is exact
            propagator: (self.kind == PresetKind::TruncationValidation)
                .then_some(Propagator::Spectral),
            ..ConfigLayer::default()
        }
    }
}

impl RunConfig {
    /// Applies one layer. A coupling given without a branch switches the
    /// branch to explicit; giving both with a resonant branch is a conflict.
    fn apply(&mut self, layer: &ConfigLayer, source: Source) -> Result<()> {
        if let (Some(b), Some(_)) = (layer.epsilon_branch, layer.epsilon_over_alpha) {
            if b != EpsilonBranch::Explicit {
                return Err(Error::ConflictingOptions(format!(
                    "epsilon_over_alpha given together with the resonant branch {b:?}"
                )));
            }
        }
        let overriding_preset = |cfg: &Self, key: &str| {
            if source != Source::Preset && cfg.provenance.get(key) == Some(&Source::Preset) {
                log::info!("{key} from {source:?} overrides the preset value");
            }
        };
        macro_rules! set {
            ($field:ident, $key:literal) => {
                if let Some(v) = &layer.$field {
                    overriding_preset(self, $key);
                    self.$field = v.clone();
                    self.provenance.insert($key, source);
                }
            };
            ($field:ident, $key:literal, opt) => {
                if let Some(v) = &layer.$field {
                    overriding_preset(self, $key);
                    self.$field = Some(v.clone());
                    self.provenance.insert($key, source);
                }
            };
        }
        set!(preset, "preset", opt);
        set!(chi, "chi");
        set!(alpha_over_chi, "alpha_over_chi");
        set!(epsilon_branch, "epsilon_branch");
        set!(epsilon_over_alpha, "epsilon_over_alpha", opt);
        if layer.epsilon_over_alpha.is_some() && layer.epsilon_branch.is_none() {
            self.epsilon_branch = EpsilonBranch::Explicit;
            self.provenance.insert("epsilon_branch", source);
        }
        if matches!(
            layer.epsilon_branch,
            Some(EpsilonBranch::Plus | EpsilonBranch::Minus)
        ) {
            self.epsilon_over_alpha = None;
            self.provenance.insert("epsilon_over_alpha", source);
        }
        set!(delta_over_alpha, "delta_over_alpha");
        set!(kappa_over_alpha, "kappa_over_alpha");
        set!(damping, "damping");
        set!(dissipator_scale, "dissipator_scale", opt);
        set!(n_max, "n_max");
        set!(t_end_in_t, "t_end_in_T");
        set!(n_points, "n_points");
        set!(kappa_min, "kappa_min");
        set!(kappa_max, "kappa_max");
        set!(n_kappa, "n_kappa");
        set!(threshold_tripartite, "threshold_tripartite");
        set!(threshold_reduced, "threshold_reduced");
        set!(propagator, "propagator");
        set!(output_path, "output_path", opt);
        set!(format, "format");
        Ok(())
    }

    fn check_ranges(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        let finite = [
            self.chi,
            self.alpha_over_chi,
            self.delta_over_alpha,
            self.kappa_over_alpha,
            self.t_end_in_t,
            self.kappa_min,
            self.kappa_max,
            self.threshold_tripartite,
            self.threshold_reduced,
        ]
        .iter()
        .chain(self.epsilon_over_alpha.iter())
        .all(|x| x.is_finite());
        if !finite {
            return bad("all numeric values must be finite".into());
        }
        if self.chi != 1.0 {
            return bad(format!(
                "chi is fixed to 1 (all inputs are ratios), got {}",
                self.chi
            ));
        }
        if self.alpha_over_chi <= 0.0 {
            return bad(format!(
                "alpha_over_chi must be > 0, got {}",
                self.alpha_over_chi
            ));
        }
        if self.kappa_over_alpha < 0.0 {
            return bad(format!(
                "kappa_over_alpha must be >= 0, got {}",
                self.kappa_over_alpha
            ));
        }
        if !(1..=MAX_N_MAX).contains(&self.n_max) {
            return bad(format!(
                "n_max must be in 1..={MAX_N_MAX}, got {}",
                self.n_max
            ));
        }
        if self.t_end_in_t <= 0.0 {
            return bad(format!("t_end_in_T must be > 0, got {}", self.t_end_in_t));
        }
        if self.n_points < 2 {
            return bad(format!("n_points must be >= 2, got {}", self.n_points));
        }
        if !(self.kappa_min > 0.0 && self.kappa_max > self.kappa_min) {
            return bad(format!(
                "need 0 < kappa_min < kappa_max, got {} and {}",
                self.kappa_min, self.kappa_max
            ));
        }
        if self.n_kappa < 2 {
            return bad(format!("n_kappa must be >= 2, got {}", self.n_kappa));
        }
        if self.threshold_tripartite <= 0.0 || self.threshold_reduced <= 0.0 {
            return bad("thresholds must be > 0".into());
        }
        if let Some(name) = &self.preset {
            if preset(name).is_none() {
                return bad(format!("unknown preset `{name}`"));
            }
        }
        Ok(())
    }

    /// Resolves defaults, the preset (named by the file or the flags), the
    /// file layer and the flag layer, in that order.
    pub fn resolve(file: Option<&ConfigLayer>, flags: &ConfigLayer) -> Result<Self> {
        let mut cfg = Self::default();
        let preset_name = flags
            .preset
            .as_ref()
            .or(file.and_then(|f| f.preset.as_ref()));
        if let Some(name) = preset_name {
            let p = preset(name)
                .ok_or_else(|| Error::OutOfRange(format!("unknown preset `{name}`")))?;
            cfg.apply(&p.layer(), Source::Preset)?;
        }
        if let Some(file) = file {
            cfg.apply(file, Source::File)?;
        }
        cfg.apply(flags, Source::Flag)?;
        if cfg.epsilon_branch == EpsilonBranch::Explicit && cfg.epsilon_over_alpha.is_none() {
            return Err(Error::ConflictingOptions(
                "explicit epsilon branch needs epsilon_over_alpha".into(),
            ));
        }
        cfg.check_ranges()?;
        for (key, source) in &cfg.provenance {
            log::debug!("{key}: {source:?}");
        }
        Ok(cfg)
    }

    pub fn epsilon(&self) -> f64 {
        let alpha = self.alpha_over_chi;
        match self.epsilon_branch {
            EpsilonBranch::Plus => resonant_epsilon(alpha, Branch::Plus),
            EpsilonBranch::Minus => resonant_epsilon(alpha, Branch::Minus),
            EpsilonBranch::Explicit => self.epsilon_over_alpha.unwrap_or(f64::NAN) * alpha,
        }
    }

    pub fn params(&self) -> SystemParams {
        let alpha = self.alpha_over_chi;
        let p = SystemParams::undamped(alpha, self.epsilon())
            .with_delta(self.delta_over_alpha * alpha)
            .with_damping(self.damping, self.kappa_over_alpha * alpha);
        match self.dissipator_scale {
            Some(s) => p.with_scale(s),
            None => p,
        }
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        HilbertSpace::new(self.n_max)
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds {
            tripartite: self.threshold_tripartite,
            reduced: self.threshold_reduced,
        }
    }

    pub fn method(&self) -> SchrodingerMethod {
        match self.propagator {
            Propagator::Rk4 => SchrodingerMethod::Rk4 { max_step: None },
            Propagator::Spectral => SchrodingerMethod::Spectral,
        }
    }

    /// The resolved values that determine the output, as a complete layer.
    /// Output path and format are left out.
    pub fn embedded_layer(&self) -> ConfigLayer {
        ConfigLayer {
            preset: self.preset.clone(),
            chi: Some(self.chi),
            alpha_over_chi: Some(self.alpha_over_chi),
            epsilon_branch: Some(self.epsilon_branch),
            epsilon_over_alpha: self.epsilon_over_alpha,
            delta_over_alpha: Some(self.delta_over_alpha),
            kappa_over_alpha: Some(self.kappa_over_alpha),
            damping: Some(self.damping),
            dissipator_scale: Some(
                self.dissipator_scale
                    .unwrap_or(DissipatorScale::default_for(self.damping)),
            ),
            n_max: Some(self.n_max),
            t_end_in_t: Some(self.t_end_in_t),
            n_points: Some(self.n_points),
            kappa_min: Some(self.kappa_min),
            kappa_max: Some(self.kappa_max),
            n_kappa: Some(self.n_kappa),
            threshold_tripartite: Some(self.threshold_tripartite),
            threshold_reduced: Some(self.threshold_reduced),
            propagator: Some(self.propagator),
            output_path: None,
            format: None,
        }
    }
}

/// Marker line that opens the embedded config in an output preamble.
const CONFIG_MARKER: &str = "# config:";

/// Parses a config file: plain TOML, or the preamble of a CSV written by
/// [`emit_table`].
pub fn parse_config_text(text: &str) -> Result<ConfigLayer> {
    let body = if text.lines().any(|l| l.trim_end() == CONFIG_MARKER) {
        embedded_config(text)
    } else {
        text.to_string()
    };
    toml::from_str(&body).map_err(|e| Error::MalformedConfig(e.to_string()))
}

pub fn load_config_file(path: &Path) -> Result<ConfigLayer> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedConfig(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn embedded_config(text: &str) -> String {
    text.lines()
        .skip_while(|l| l.trim_end() != CONFIG_MARKER)
        .skip(1)
        .map_while(|l| l.strip_prefix("#   "))
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

/// Column-named rows, the common output of every experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// 12 significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.11e}")
    }
}

/// The value a number takes after a write and read at 12 digits.
pub fn rounded(x: f64) -> f64 {
    format_number(x).parse().unwrap_or(f64::NAN)
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn parse(field: &str) -> Cell {
        match field.parse::<f64>() {
            Ok(x) => Cell::Num(x),
            Err(_) => Cell::Text(field.to_string()),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(rounded(*x))
                .map_or(serde_json::Value::Null, Into::into),
            Cell::Text(s) => s.clone().into(),
        }
    }
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }

    /// Numeric column; text cells become NaN.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        Some(
            self.column(name)?
                .into_iter()
                .map(|c| match c {
                    Cell::Num(x) => *x,
                    Cell::Text(_) => f64::NAN,
                })
                .collect(),
        )
    }

    fn check(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::InvalidParams("table is empty".into()));
        }
        if let Some(r) = self.rows.iter().find(|r| r.len() != self.columns.len()) {
            return Err(Error::DimensionMismatch {
                left: r.len(),
                right: self.columns.len(),
            });
        }
        Ok(())
    }
}

/// What gets written above the data.
#[derive(Clone, Debug, PartialEq)]
pub struct Preamble {
    /// Command line that produced the table, without config flags.
    pub command: String,
    pub config: ConfigLayer,
}

impl Preamble {
    pub fn new(command: impl Into<String>, config: &RunConfig) -> Self {
        Self {
            command: command.into(),
            config: config.embedded_layer(),
        }
    }

    fn lines(&self) -> Result<Vec<String>> {
        let toml =
            toml::to_string(&self.config).map_err(|e| Error::MalformedConfig(e.to_string()))?;
        let mut lines = vec![
            format!("# kerr-chain {VERSION}"),
            format!("# command: {}", self.command),
            CONFIG_MARKER.into(),
        ];
        lines.extend(
            toml.lines()
                .filter(|l| !l.is_empty())
                .map(|l| format!("#   {l}")),
        );
        Ok(lines)
    }
}

pub fn render_csv(table: &Table, preamble: &Preamble) -> Result<String> {
    table.check()?;
    let mut out = String::new();
    for line in preamble.lines()? {
        writeln!(out, "{line}").expect("write to string");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(out)
}

pub fn render_json(table: &Table, preamble: &Preamble) -> Result<String> {
    table.check()?;
    let data: serde_json::Map<String, serde_json::Value> = table
        .columns
        .iter()
        .enumerate()
        .map(|(j, name)| {
            (
                name.clone(),
                table.rows.iter().map(|r| r[j].json()).collect(),
            )
        })
        .collect();
    let doc = serde_json::json!({
        "generator": format!("kerr-chain {VERSION}"),
        "command": preamble.command,
        "config": preamble.config,
        "columns": table.columns,
        "data": data,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Writes the table to `path`, or to stdout when `path` is `None`.
pub fn emit_table(
    table: &Table,
    format: Format,
    path: Option<&Path>,
    preamble: &Preamble,
) -> Result<()> {
    let text = match format {
        Format::Csv => render_csv(table, preamble)?,
        Format::Json => render_json(table, preamble)?,
    };
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Reads a CSV written by [`emit_table`], skipping the preamble.
pub fn parse_csv(text: &str) -> Result<Table> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| Ok(rec?.iter().map(Cell::parse).collect()))
        .collect::<Result<_>>()?;
    Ok(Table { columns, rows })
}

pub fn read_csv(path: &Path) -> Result<Table> {
    parse_csv(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(f: impl FnOnce(&mut ConfigLayer)) -> ConfigLayer {
        let mut l = ConfigLayer::default();
        f(&mut l);
        l
    }

    #[test]
    fn defaults_resolve() {
        let cfg = RunConfig::resolve(None, &ConfigLayer::default()).unwrap();
        assert_eq!(cfg.epsilon_branch, EpsilonBranch::Minus);
        assert!(cfg.provenance.values().all(|s| *s == Source::Default));
        assert_eq!(cfg.provenance.len(), KEYS.len());
    }

    #[test]
    fn preset_fig3() {
        let cfg = RunConfig::resolve(None, &flags(|l| l.preset = Some("fig3".into()))).unwrap();
        let p = cfg.params();
        assert_eq!(p.alpha, 0.001);
        assert_eq!(p.epsilon, resonant_epsilon(0.001, Branch::Plus));
        assert_eq!((cfg.n_max, p.damping), (9, DampingKind::None));
        assert_eq!(cfg.provenance["n_max"], Source::Preset);
        assert_eq!(cfg.propagator, Propagator::Spectral);
    }

    #[test]
    fn preset_fig7b() {
        let cfg = RunConfig::resolve(None, &flags(|l| l.preset = Some("fig7b".into()))).unwrap();
        let p = cfg.params();
        assert_eq!(p.epsilon, resonant_epsilon(0.001, Branch::Minus));
        assert!((p.delta + 0.6e-3).abs() < 1e-18);
        assert_eq!(p.damping, DampingKind::Amplitude);
        assert!((p.kappa[0] - 1e-4).abs() < 1e-18);
    }

    #[test]
    fn layers_override_in_order() {
        let file = flags(|l| {
            l.preset = Some("fig7a".into());
            l.kappa_over_alpha = Some(0.5);
            l.n_max = Some(2);
        });
        let cfg = RunConfig::resolve(Some(&file), &flags(|l| l.n_max = Some(3))).unwrap();
        assert_eq!(cfg.kappa_over_alpha, 0.5);
        assert_eq!(cfg.n_max, 3);
        assert_eq!(cfg.provenance["kappa_over_alpha"], Source::File);
        assert_eq!(cfg.provenance["n_max"], Source::Flag);
        assert_eq!(cfg.provenance["damping"], Source::Preset);
    }

    #[test]
    fn explicit_coupling() {
        let cfg = RunConfig::resolve(None, &flags(|l| l.epsilon_over_alpha = Some(0.4))).unwrap();
        assert_eq!(cfg.epsilon_branch, EpsilonBranch::Explicit);
        assert!((cfg.epsilon() - 4e-4).abs() < 1e-18);
    }

    #[test]
    fn error_kinds_have_distinct_codes() {
        let conflict = RunConfig::resolve(
            None,
            &flags(|l| {
                l.epsilon_branch = Some(EpsilonBranch::Plus);
                l.epsilon_over_alpha = Some(0.4);
            }),
        )
        .unwrap_err();
        let malformed = parse_config_text("n_max = \"two\"").unwrap_err();
        let unknown = parse_config_text("nmax = 2").unwrap_err();
        let range = RunConfig::resolve(None, &flags(|l| l.n_max = Some(0))).unwrap_err();
        let numeric = Error::DegenerateNullSpace(2);
        assert_eq!(conflict.exit_code(), 2);
        assert_eq!(malformed.exit_code(), 3);
        assert_eq!(unknown.exit_code(), 3);
        assert_eq!(range.exit_code(), 4);
        assert_eq!(numeric.exit_code(), 5);
        let explicit_without_value = RunConfig::resolve(
            None,
            &flags(|l| l.epsilon_branch = Some(EpsilonBranch::Explicit)),
        )
        .unwrap_err();
        assert_eq!(explicit_without_value.exit_code(), 2);
        assert_eq!(
            RunConfig::resolve(None, &flags(|l| l.preset = Some("fig99".into())))
                .unwrap_err()
                .exit_code(),
            4
        );
    }

    fn sample_table() -> Table {
        Table {
            columns: vec![
                "kappa_over_alpha_lo".into(),
                "kappa_over_alpha_hi".into(),
                "subtype".into(),
            ],
            rows: vec![
                vec![
                    Cell::Num(0.05),
                    Cell::Num(std::f64::consts::PI / 7.0),
                    Cell::Text("III-2".into()),
                ],
                vec![
                    Cell::Num(1.0 / 3.0),
                    Cell::Num(f64::NAN),
                    Cell::Text("none".into()),
                ],
            ],
        }
    }

    #[test]
    fn csv_round_trip_is_exact_at_twelve_digits() {
        let cfg = RunConfig::default();
        let pre = Preamble::new("sweep-kappa --table regimes", &cfg);
        let text = render_csv(&sample_table(), &pre).unwrap();
        assert!(text
            .lines()
            .any(|l| l == "kappa_over_alpha_lo,kappa_over_alpha_hi,subtype"));
        let back = parse_csv(&text).unwrap();
        assert_eq!(back.columns, sample_table().columns);
        let x = back.numbers("kappa_over_alpha_hi").unwrap();
        assert_eq!(x[0], rounded(std::f64::consts::PI / 7.0));
        assert!(x[1].is_nan());
        assert_eq!(render_csv(&back, &pre).unwrap(), text);
        let relative = (x[0] - std::f64::consts::PI / 7.0).abs() / x[0];
        assert!(relative < 5e-12);
    }

    #[test]
    fn embedded_config_reproduces_resolution() {
        let cfg = RunConfig::resolve(None, &flags(|l| l.preset = Some("fig9b".into()))).unwrap();
        let text = render_csv(&sample_table(), &Preamble::new("preset fig9b", &cfg)).unwrap();
        let layer = parse_config_text(&text).unwrap();
        let again = RunConfig::resolve(Some(&layer), &ConfigLayer::default()).unwrap();
        assert_eq!(again.params(), cfg.params());
        assert_eq!(
            render_csv(&sample_table(), &Preamble::new("preset fig9b", &again)).unwrap(),
            text
        );
    }

    #[test]
    fn json_keyed_by_column() {
        let text =
            render_json(&sample_table(), &Preamble::new("x", &RunConfig::default())).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["data"]["subtype"][0], "III-2");
        assert!(v["data"]["kappa_over_alpha_hi"][1].is_null());
        assert_eq!(
            v["data"]["kappa_over_alpha_lo"][1].as_f64().unwrap(),
            rounded(1.0 / 3.0)
        );
        assert_eq!(v["config"]["n_max"], 1);
    }

    #[test]
    fn empty_table_rejected() {
        let t = Table {
            columns: vec!["a".into()],
            rows: vec![],
        };
        assert!(render_csv(&t, &Preamble::new("x", &RunConfig::default())).is_err());
    }
}
