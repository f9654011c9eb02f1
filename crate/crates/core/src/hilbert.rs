//! Truncated Fock spaces for the three-oscillator chain, bosonic ladder
//! operators embedded in the composite space, and the system Hamiltonian.
//!
//! Basis convention: `|ijk⟩` where `i`, `j`, `k` are the photon numbers of
//! modes 1, 2, 3; mode 1 is the slowest-varying index and mode 3 the fastest,
//! so `index(i, j, k) = (i·d + j)·d + k` with `d = n_max + 1`. Every module in
//! the crate uses this ordering. Units are ħ = 1; all rates share the unit of
//! `chi`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ONE};

/// One of the three oscillators. Modes 1 and 3 are the pumped boundary
/// oscillators, mode 2 the central one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    One,
    Two,
    Three,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::One, Mode::Two, Mode::Three];

    /// 1-based label.
    pub fn number(self) -> usize {
        self.position() + 1
    }

    /// 0-based position in the tensor product.
    pub fn position(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 1,
            Mode::Three => 2,
        }
    }
}

impl TryFrom<usize> for Mode {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            3 => Ok(Mode::Three),
            other => Err(Error::InvalidMode(other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DampingKind {
    None,
    Amplitude,
    Phase,
}

/// How a damping constant `κ` is turned into the rate `γ` of the dissipator
/// `(γ/2)(2LρL† − L†Lρ − ρL†L)`.
///
/// `Half` takes `γ = κ`. `Full` takes `γ = 2κ`, i.e. the dissipator
/// `κ(2LρL† − L†Lρ − ρL†L)`; the amplitude-damping steady-state regime
/// boundaries, the damped negativity peaks and the long-time values that the
/// model is usually quoted with are reproduced with `Full`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DissipatorScale {
    Half,
    Full,
}

impl DissipatorScale {
    pub fn factor(self) -> f64 {
        match self {
            DissipatorScale::Half => 1.0,
            DissipatorScale::Full => 2.0,
        }
    }

    /// Scale that reproduces the published curves for each damping kind.
    pub fn default_for(kind: DampingKind) -> Self {
        match kind {
            DampingKind::Amplitude => DissipatorScale::Full,
            DampingKind::None | DampingKind::Phase => DissipatorScale::Half,
        }
    }
}

/// Physical constants of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Kerr nonlinearity.
    pub chi: f64,
    /// Pump strength on the boundary modes.
    pub alpha: f64,
    /// Nearest-neighbour coupling.
    pub epsilon: f64,
    /// Detuning added to `epsilon`; the coupling actually used is `epsilon + delta`.
    pub delta: f64,
    /// Damping constants for modes 1, 2, 3.
    pub kappa: [f64; 3],
    pub damping: DampingKind,
    pub scale: DissipatorScale,
}

impl SystemParams {
    /// Undamped chain with `χ = 1`.
    pub fn undamped(alpha: f64, epsilon: f64) -> Self {
        Self {
            chi: 1.0,
            alpha,
            epsilon,
            delta: 0.0,
            kappa: [0.0; 3],
            damping: DampingKind::None,
            scale: DissipatorScale::Half,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    /// Equal damping `kappa` on all three modes, with the default scale for `kind`.
    pub fn with_damping(mut self, kind: DampingKind, kappa: f64) -> Self {
        self.damping = kind;
        self.kappa = [kappa; 3];
        self.scale = DissipatorScale::default_for(kind);
        self
    }

    pub fn with_scale(mut self, scale: DissipatorScale) -> Self {
        self.scale = scale;
        self
    }

    /// Effective nearest-neighbour coupling `ε + Δ`.
    pub fn coupling(&self) -> f64 {
        self.epsilon + self.delta
    }

    /// Dissipator rates `γ_j` after applying the scale convention.
    pub fn jump_rates(&self) -> [f64; 3] {
        let f = self.scale.factor();
        [self.kappa[0] * f, self.kappa[1] * f, self.kappa[2] * f]
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.chi, self.alpha, self.epsilon, self.delta]
            .iter()
            .chain(self.kappa.iter())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if self.chi <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "chi must be > 0, got {}",
                self.chi
            )));
        }
        if self.alpha < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha must be >= 0, got {}",
                self.alpha
            )));
        }
        if let Some(k) = self.kappa.iter().find(|k| **k < 0.0) {
            return Err(Error::InvalidParams(format!("kappa must be >= 0, got {k}")));
        }
        Ok(())
    }
}

/// Composite Fock space of three modes, each truncated at `n_max` photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSpace {
    n_max: usize,
}

pub fn build_space(n_max: usize) -> Result<HilbertSpace> {
    HilbertSpace::new(n_max)
}

impl HilbertSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::Cutoff(n_max));
        }
        Ok(Self { n_max })
    }

    /// The qubit truncation (`n_max = 1`, dimension 8).
    pub fn qubits() -> Self {
        Self { n_max: 1 }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn mode_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn mode_dims(&self) -> [usize; 3] {
        [self.mode_dim(); 3]
    }

    pub fn total_dim(&self) -> usize {
        self.mode_dim().pow(3)
    }

    /// Basis index of `|ijk⟩`, or `None` if any occupation exceeds the cutoff.
    pub fn index(&self, occupations: [usize; 3]) -> Option<usize> {
        let d = self.mode_dim();
        if occupations.iter().any(|&n| n >= d) {
            return None;
        }
        let [i, j, k] = occupations;
        Some((i * d + j) * d + k)
    }

    /// Occupation triple of a basis index.
    pub fn occupations(&self, index: usize) -> [usize; 3] {
        let d = self.mode_dim();
        [index / (d * d), (index / d) % d, index % d]
    }

    /// Basis index with modes 1 and 3 exchanged.
    pub fn mirror_index(&self, index: usize) -> usize {
        let [i, j, k] = self.occupations(index);
        self.index([k, j, i])
            .expect("mirror stays inside the space")
    }

    /// `P₁₃ M P₁₃` for a matrix on this space.
    pub fn mirror_matrix(&self, m: &CMatrix) -> CMatrix {
        let n = self.total_dim();
        CMatrix::from_fn(n, n, |r, c| m[(self.mirror_index(r), self.mirror_index(c))])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Annihilation,
    Creation,
    Number,
}

/// A single-mode operator embedded in the three-mode space.
#[derive(Clone, Debug)]
pub struct ModeOperator {
    pub matrix: CMatrix,
    pub mode: Mode,
    pub kind: OperatorKind,
}

/// Embed a ladder or number operator for `mode`. The truncation is hard: the
/// annihilation operator has `√n` on its superdiagonal and nothing
/// couples beyond `n_max`, so `[a, a†]` equals the identity except on the
/// cutoff level.
pub fn mode_operator(space: &HilbertSpace, mode: Mode, kind: OperatorKind) -> ModeOperator {
    let n = space.total_dim();
    let p = mode.position();
    let mut matrix = CMatrix::zeros(n, n);
    for col in 0..n {
        let occ = space.occupations(col);
        let m = occ[p];
        match kind {
            OperatorKind::Annihilation if m > 0 => {
                let mut lower = occ;
                lower[p] -= 1;
                let row = space.index(lower).unwrap();
                matrix[(row, col)] = C64::from((m as f64).sqrt());
            }
            OperatorKind::Creation if m < space.n_max() => {
                let mut upper = occ;
                upper[p] += 1;
                let row = space.index(upper).unwrap();
                matrix[(row, col)] = C64::from(((m + 1) as f64).sqrt());
            }
            OperatorKind::Number => matrix[(col, col)] = C64::from(m as f64),
            _ => {}
        }
    }
    ModeOperator { matrix, mode, kind }
}

/// Annihilation operators for modes 1, 2, 3.
pub fn annihilators(space: &HilbertSpace) -> [CMatrix; 3] {
    Mode::ALL.map(|m| mode_operator(space, m, OperatorKind::Annihilation).matrix)
}

/// `H = H_nl + H_i + H_e` with
/// `H_nl = (χ/2) Σ_j a_j†² a_j²`,
/// `H_i = ε'(a₁†a₂ + a₂†a₁) + ε'(a₂†a₃ + a₃†a₂)` for `ε' = ε + Δ`,
/// `H_e = α(a₁† + a₁) + α(a₃† + a₃)`.
pub fn build_hamiltonian(space: &HilbertSpace, params: &SystemParams) -> CMatrix {
    let [a1, a2, a3] = annihilators(space);
    let n = space.total_dim();
    let mut h = CMatrix::zeros(n, n);

    // (a†)² a² is diagonal with entries n(n-1).
    for idx in 0..n {
        let kerr: usize = space
            .occupations(idx)
            .iter()
            .map(|&m| m * m.saturating_sub(1))
            .sum();
        h[(idx, idx)] += C64::from(0.5 * params.chi * kerr as f64);
    }

    let eps = C64::from(params.coupling());
    for (left, right) in [(&a1, &a2), (&a2, &a3)] {
        let hop = left.adjoint() * right;
        h += &hop * eps + hop.adjoint() * eps.conj();
    }

    let alpha = C64::from(params.alpha);
    for a in [&a1, &a3] {
        h += a.adjoint() * alpha + a * alpha.conj();
    }
    h
}

/// `|ijk⟩` as a basis vector index helper for tests and target states.
pub fn basis_vector(
    space: &HilbertSpace,
    occupations: [usize; 3],
) -> Option<crate::linalg::CVector> {
    let idx = space.index(occupations)?;
    let mut v = crate::linalg::CVector::zeros(space.total_dim());
    v[idx] = ONE;
    Some(v)
}
