//! Partial traces, partial transposes, negativities and the tripartite
//! entanglement subtypes built on them.
//!
//! Subsystems are addressed by 0-based position in the tensor product of a
//! [`DensityMatrix`] (mode 1 is position 0). Negativities are normalized so a
//! maximally entangled two-qubit state scores 1: `N = ‖ρ^Γ‖₁ − 1`, which is
//! twice the sum of the moduli of the negative eigenvalues of `ρ^Γ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closed::PureState;
use crate::error::{Error, Result};
use crate::hilbert::{HilbertSpace, Mode};
use crate::linalg::{eigvalsh, hermitize, CMatrix, CVector, C64, ZERO};
use crate::open::DensityMatrix;

fn validate_subset(part: &[usize], n_modes: usize) -> Result<Vec<usize>> {
    let mut sorted = part.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let ok = !sorted.is_empty()
        && sorted.len() == part.len()
        && sorted.len() < n_modes
        && sorted.iter().all(|&p| p < n_modes);
    if ok {
        Ok(sorted)
    } else {
        Err(Error::InvalidModeSet(part.to_vec()))
    }
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

fn compose(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (x, d)| acc * d + x)
}

/// Partial trace keeping the subsystems at positions `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = validate_subset(keep, rho.dims.len())?;
    let kept_dims: Vec<usize> = keep.iter().map(|&p| rho.dims[p]).collect();
    let n_out: usize = kept_dims.iter().product();
    let mut out = CMatrix::zeros(n_out, n_out);
    let n = rho.dim();
    for r in 0..n {
        let dr = digits(r, &rho.dims);
        for c in 0..n {
            let dc = digits(c, &rho.dims);
            // traced subsystems must agree
            let traced_match = (0..rho.dims.len())
                .filter(|p| !keep.contains(p))
                .all(|p| dr[p] == dc[p]);
            if !traced_match {
                continue;
            }
            let rr: Vec<usize> = keep.iter().map(|&p| dr[p]).collect();
            let cc: Vec<usize> = keep.iter().map(|&p| dc[p]).collect();
            out[(compose(&rr, &kept_dims), compose(&cc, &kept_dims))] += rho.matrix[(r, c)];
        }
    }
    DensityMatrix::new(out, kept_dims)
}

/// Reduced state of a three-mode density matrix on the given modes.
pub fn reduce(rho: &DensityMatrix, keep: &[Mode]) -> Result<DensityMatrix> {
    let positions: Vec<usize> = keep.iter().map(|m| m.position()).collect();
    partial_trace(rho, &positions)
}

/// Transposes the indices of the subsystems at positions `part`.
pub fn partial_transpose(rho: &DensityMatrix, part: &[usize]) -> Result<CMatrix> {
    let part = validate_subset(part, rho.dims.len())?;
    let n = rho.dim();
    let mut out = CMatrix::zeros(n, n);
    for r in 0..n {
        let dr = digits(r, &rho.dims);
        for c in 0..n {
            let dc = digits(c, &rho.dims);
            let (mut nr, mut nc) = (dr.clone(), dc.clone());
            for &p in &part {
                nr[p] = dc[p];
                nc[p] = dr[p];
            }
            out[(compose(&nr, &rho.dims), compose(&nc, &rho.dims))] = rho.matrix[(r, c)];
        }
    }
    Ok(out)
}

/// `2 Σ |μ|` over the negative eigenvalues `μ` of `ρ^{Γ_part}`.
pub fn negativity(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, part)?;
    let neg: f64 = eigvalsh(&hermitize(&pt))
        .iter()
        .filter(|&&x| x < 0.0)
        .fold(0.0, |acc, x| acc - x);
    Ok(2.0 * neg)
}

/// `‖ρ^{Γ_part}‖₁ − tr ρ`, the trace-norm route to the same quantity.
pub fn negativity_trace_norm(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, part)?;
    let norm: f64 = eigvalsh(&hermitize(&pt)).iter().map(|x| x.abs()).sum();
    Ok(norm - rho.trace())
}

/// `(N₁₋₂₃ N₂₋₁₃ N₃₋₁₂)^{1/3}`.
pub fn tripartite_negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(geometric_mean(bipartition_negativities(rho)?))
}

fn geometric_mean(ns: [f64; 3]) -> f64 {
    if ns.iter().any(|&x| x <= 0.0) {
        0.0
    } else {
        (ns[0] * ns[1] * ns[2]).cbrt()
    }
}

fn require_three_modes(rho: &DensityMatrix) -> Result<()> {
    if rho.dims.len() != 3 {
        return Err(Error::InvalidParams(format!(
            "expected a three-mode state, got dims {:?}",
            rho.dims
        )));
    }
    Ok(())
}

/// One-vs-rest negativities `[N₁₋₂₃, N₂₋₁₃, N₃₋₁₂]`.
pub fn bipartition_negativities(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_three_modes(rho)?;
    Ok([
        negativity(rho, &[0])?,
        negativity(rho, &[1])?,
        negativity(rho, &[2])?,
    ])
}

/// Negativities of the two-mode reduced states `[N₁₂, N₂₃, N₁₃]`.
pub fn reduced_negativities(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_three_modes(rho)?;
    let mut out = [0.0; 3];
    for (slot, keep) in [[0, 1], [1, 2], [0, 2]].iter().enumerate() {
        out[slot] = negativity(&partial_trace(rho, keep)?, &[0])?;
    }
    Ok(out)
}

/// Subtypes of full tripartite entanglement, by how many reduced pairs stay
/// entangled. `None` covers fully separable and biseparable states alike.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subtype {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "III-0")]
    III0,
    #[serde(rename = "III-1")]
    III1,
    #[serde(rename = "III-2")]
    III2,
    #[serde(rename = "III-3")]
    III3,
}

impl Subtype {
    pub fn label(self) -> &'static str {
        match self {
            Subtype::None => "none",
            Subtype::III0 => "III-0",
            Subtype::III1 => "III-1",
            Subtype::III2 => "III-2",
            Subtype::III3 => "III-3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" | "-" => Some(Subtype::None),
            "III-0" => Some(Subtype::III0),
            "III-1" => Some(Subtype::III1),
            "III-2" => Some(Subtype::III2),
            "III-3" => Some(Subtype::III3),
            _ => None,
        }
    }
}

impl fmt::Display for Subtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Zero thresholds used by [`classify`].
///
/// The tripartite threshold decides whether full tripartite entanglement is
/// present. Reduced two-qubit negativities are exact PPT witnesses, so their
/// threshold sits just above numerical noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub tripartite: f64,
    pub reduced: f64,
}

impl Thresholds {
    pub fn uniform(t: f64) -> Self {
        Self {
            tripartite: t,
            reduced: t,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            tripartite: self.tripartite * factor,
            reduced: self.reduced * factor,
        }
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            tripartite: 1e-4,
            reduced: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    /// `[N₁₂, N₂₃, N₁₃]`
    pub reduced: [f64; 3],
    /// `[N₁₋₂₃, N₂₋₁₃, N₃₋₁₂]`
    pub bipartitions: [f64; 3],
    pub tripartite: f64,
    pub subtype: Subtype,
}

/// Full report for a three-mode state, classified with `thresholds`.
pub fn entanglement_report(
    rho: &DensityMatrix,
    thresholds: Thresholds,
) -> Result<EntanglementReport> {
    let bipartitions = bipartition_negativities(rho)?;
    let mut report = EntanglementReport {
        reduced: reduced_negativities(rho)?,
        bipartitions,
        tripartite: geometric_mean(bipartitions),
        subtype: Subtype::None,
    };
    report.subtype = classify(&report, thresholds);
    Ok(report)
}

/// `None` when the tripartite negativity is at or below its threshold,
/// otherwise `III-k` where `k` counts reduced negativities above theirs.
pub fn classify(report: &EntanglementReport, thresholds: Thresholds) -> Subtype {
    if report.tripartite <= thresholds.tripartite {
        return Subtype::None;
    }
    match report
        .reduced
        .iter()
        .filter(|&&n| n > thresholds.reduced)
        .count()
    {
        0 => Subtype::III0,
        1 => Subtype::III1,
        2 => Subtype::III2,
        _ => Subtype::III3,
    }
}

/// A named qubit-space state used for fidelity tracking.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetState {
    pub label: String,
    pub amplitudes: [C64; 8],
}

impl TargetState {
    /// Normalizes `entries` of `(|ijk⟩, amplitude)`.
    pub fn new(label: impl Into<String>, entries: &[([usize; 3], f64)]) -> Self {
        let space = HilbertSpace::qubits();
        let mut amplitudes = [ZERO; 8];
        for (occ, a) in entries {
            amplitudes[space.index(*occ).expect("qubit occupation")] += C64::from(*a);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        Self {
            label: label.into(),
            amplitudes,
        }
    }

    pub fn state(&self) -> PureState {
        PureState::from_qubit_amplitudes(self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.state())
    }

    pub fn ghz(sign: f64) -> Self {
        let label = if sign > 0.0 {
            "ghz_000_111_plus"
        } else {
            "ghz_000_111_minus"
        };
        Self::new(label, &[([0, 0, 0], 1.0), ([1, 1, 1], sign)])
    }

    pub fn w() -> Self {
        Self::new("w", &[([0, 0, 1], 1.0), ([0, 1, 0], 1.0), ([1, 0, 0], 1.0)])
    }

    /// `(|0⟩₂ + s₂|1⟩₂)(|00⟩₁₃ + s₁₃|11⟩₁₃)/2`
    pub fn central_times_boundary_bell(s2: f64, s13: f64) -> Self {
        let name = |s: f64| if s > 0.0 { "plus" } else { "minus" };
        Self::new(
            format!("c{}_b13{}", name(s2), name(s13)),
            &[
                ([0, 0, 0], 1.0),
                ([1, 0, 1], s13),
                ([0, 1, 0], s2),
                ([1, 1, 1], s2 * s13),
            ],
        )
    }
}

/// Targets tracked along the evolution: both GHZ pairs, the four
/// central-qubit ⊗ boundary-Bell products, W and its spin flip, and the four
/// Bell states of the boundary pair with the central mode empty.
pub fn target_library() -> Vec<TargetState> {
    let mut out = vec![
        TargetState::ghz(1.0),
        TargetState::ghz(-1.0),
        TargetState::new("ghz_010_101_plus", &[([0, 1, 0], 1.0), ([1, 0, 1], 1.0)]),
        TargetState::new("ghz_010_101_minus", &[([0, 1, 0], 1.0), ([1, 0, 1], -1.0)]),
    ];
    for s2 in [1.0, -1.0] {
        for s13 in [1.0, -1.0] {
            out.push(TargetState::central_times_boundary_bell(s2, s13));
        }
    }
    out.push(TargetState::w());
    out.push(TargetState::new(
        "w_flip",
        &[([1, 1, 0], 1.0), ([1, 0, 1], 1.0), ([0, 1, 1], 1.0)],
    ));
    out.push(TargetState::new(
        "bell13_phi_plus",
        &[([0, 0, 0], 1.0), ([1, 0, 1], 1.0)],
    ));
    out.push(TargetState::new(
        "bell13_phi_minus",
        &[([0, 0, 0], 1.0), ([1, 0, 1], -1.0)],
    ));
    out.push(TargetState::new(
        "bell13_psi_plus",
        &[([1, 0, 0], 1.0), ([0, 0, 1], 1.0)],
    ));
    out.push(TargetState::new(
        "bell13_psi_minus",
        &[([1, 0, 0], 1.0), ([0, 0, 1], -1.0)],
    ));
    out
}

/// `⟨target|ρ|target⟩`. The target is zero-padded into `ρ`'s space when that
/// space has a larger cutoff.
pub fn state_fidelity(rho: &DensityMatrix, target: &TargetState) -> Result<f64> {
    let d = rho.dims.first().copied().unwrap_or(0);
    if rho.dims.len() != 3 || rho.dims.iter().any(|&x| x != d) || d < 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 8,
        });
    }
    let embedded: CVector = target.state().embed(HilbertSpace::new(d - 1)?)?.amplitudes;
    let val = (embedded.adjoint() * &rho.matrix * &embedded)[(0, 0)];
    Ok(val.re)
}
