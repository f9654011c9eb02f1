//! Undamped evolution from the vacuum `|000⟩`.
//!
//! Two independent routes: the closed-form solution valid in the
//! nonlinear-quantum-scissors regime (only `|ijk⟩` with `i, j, k ∈ {0, 1}`
//! take part), and direct integration of the Schrödinger equation on any
//! truncated space.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{build_hamiltonian, HilbertSpace, SystemParams};
use crate::integrate::integrate_on_grid;
use crate::linalg::{spectral_bound, CMatrix, CVector, SparseOp, C64, I, ONE, ZERO};

/// Which root of the `ω₁/ω₂ = 2` resonance condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `ε = 12α / (10 ± √28)`, the couplings for which `ω₁ = 2ω₂`.
pub fn resonant_epsilon(alpha: f64, branch: Branch) -> f64 {
    12.0 * alpha / (10.0 + branch.sign() * 28f64.sqrt())
}

/// Recurrence period `T = √(5 ± √7) π / (2α)` of the resonant branches.
pub fn resonant_period(alpha: f64, branch: Branch) -> f64 {
    (5.0 + branch.sign() * 7f64.sqrt()).sqrt() * std::f64::consts::PI / (2.0 * alpha)
}

/// Frequencies and coefficients of the closed-form amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NqsSolution {
    pub alpha: f64,
    pub epsilon: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// A₁ … A₅
    pub coeffs: [f64; 5],
}

impl NqsSolution {
    pub fn new(alpha: f64, epsilon: f64) -> Self {
        let (a, e) = (alpha, epsilon);
        let omega1 = (4.0 * a * a + 4.0 * a * e + 2.0 * e * e).sqrt();
        let omega2 = (4.0 * a * a - 4.0 * a * e + 2.0 * e * e).sqrt();
        let coeffs = [
            2.0 * a * a - 2.0 * a * e + e * e,
            2.0 * a * a + 2.0 * a * e + e * e,
            2.0 * a.powi(3) - a * e * e + e.powi(3),
            -2.0 * a.powi(3) + a * e * e + e.powi(3),
            2.0 * a.powi(3) - a * e * e - e.powi(3),
        ];
        Self {
            alpha,
            epsilon,
            omega1,
            omega2,
            coeffs,
        }
    }

    pub fn from_params(params: &SystemParams) -> Self {
        Self::new(params.alpha, params.coupling())
    }

    /// Amplitudes `(C₀₀₀, C₀₀₁, C₀₁₀, C₀₁₁, C₁₀₀, C₁₀₁, C₁₁₀, C₁₁₁)` at time `t`.
    pub fn amplitudes(&self, t: f64) -> [C64; 8] {
        let (a, e) = (self.alpha, self.epsilon);
        if a == 0.0 {
            // no pump: the vacuum is stationary
            let mut c = [ZERO; 8];
            c[0] = ONE;
            return c;
        }
        let [a1, a2, a3, a4, a5] = self.coeffs;
        let (c1, c2) = ((self.omega1 * t).cos(), (self.omega2 * t).cos());
        let (s1, s2) = (sinc_t(self.omega1, t), sinc_t(self.omega2, t));
        let denom = 8.0 * a.powi(4) + 2.0 * e.powi(4);

        let c000 =
            (4.0 * a.powi(4) - 2.0 * a * a * e * e + 2.0 * e.powi(4) + a * a * (a1 * c1 + a2 * c2))
                / denom;
        let c001 = -I * (a / 2.0) * (s1 + s2);
        let c010 = a / denom * (-2.0 * e.powi(3) + a3 * c1 + a4 * c2);
        let c011 = -I * (a / 2.0) * (s1 - s2);
        let c101 = a / denom * (-4.0 * a.powi(3) + 2.0 * a * e * e + a3 * c1 + a5 * c2);
        let c111 = a * a / denom * (4.0 * a * e + a1 * c1 - a2 * c2);

        [
            C64::from(c000),
            c001,
            C64::from(c010),
            c011,
            c001,
            C64::from(c101),
            c011,
            C64::from(c111),
        ]
    }
}

/// `sin(ωt)/ω`, continued to `t` at `ω = 0`.
fn sinc_t(omega: f64, t: f64) -> f64 {
    let x = omega * t;
    if x.abs() < 1e-6 {
        t * (1.0 - x * x / 6.0)
    } else {
        x.sin() / omega
    }
}

/// Closed-form amplitudes for `params` at time `t`, in basis order.
pub fn nqs_amplitudes(params: &SystemParams, t: f64) -> [C64; 8] {
    NqsSolution::from_params(params).amplitudes(t)
}

/// `ω₁ / ω₂`.
pub fn frequency_ratio(alpha: f64, epsilon: f64) -> Result<f64> {
    let sol = NqsSolution::new(alpha, epsilon);
    if sol.omega2 == 0.0 {
        return Err(Error::ZeroFrequency("omega2"));
    }
    Ok(sol.omega1 / sol.omega2)
}

/// Natural time unit of a parameter set: `2π/ω₂` of the undetuned coupling
/// `ε`. For a resonant `ε` this is the recurrence period `T`; detuned runs keep
/// the period of the branch they were detuned from.
pub fn reference_period(params: &SystemParams) -> Result<f64> {
    let sol = NqsSolution::new(params.alpha, params.epsilon);
    if sol.omega2 == 0.0 {
        return Err(Error::ZeroFrequency("omega2"));
    }
    Ok(2.0 * std::f64::consts::PI / sol.omega2)
}

/// Normalized state vector on a composite space.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    pub amplitudes: CVector,
    pub space: HilbertSpace,
}

impl PureState {
    pub fn new(space: HilbertSpace, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: space.total_dim(),
            });
        }
        Ok(Self { amplitudes, space })
    }

    pub fn vacuum(space: HilbertSpace) -> Self {
        let mut amplitudes = CVector::zeros(space.total_dim());
        amplitudes[0] = ONE;
        Self { amplitudes, space }
    }

    /// State on the qubit space from eight amplitudes in basis order.
    pub fn from_qubit_amplitudes(c: [C64; 8]) -> Self {
        Self {
            amplitudes: CVector::from_row_slice(&c),
            space: HilbertSpace::qubits(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn amplitude(&self, occupations: [usize; 3]) -> C64 {
        self.space
            .index(occupations)
            .map_or(ZERO, |i| self.amplitudes[i])
    }

    /// Zero-pads (matching by occupation triple) into a space with a cutoff at
    /// least as large.
    pub fn embed(&self, target: HilbertSpace) -> Result<PureState> {
        if target.n_max() < self.space.n_max() {
            return Err(Error::DimensionMismatch {
                left: self.space.total_dim(),
                right: target.total_dim(),
            });
        }
        let mut amplitudes = CVector::zeros(target.total_dim());
        for (idx, z) in self.amplitudes.iter().enumerate() {
            let occ = self.space.occupations(idx);
            amplitudes[target.index(occ).unwrap()] = *z;
        }
        Ok(PureState {
            amplitudes,
            space: target,
        })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// Overlap modulus `|⟨a|b⟩|`, after embedding both states in the larger of
/// their two spaces.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    let target = if a.space.n_max() >= b.space.n_max() {
        a.space
    } else {
        b.space
    };
    let a = a.embed(target)?;
    let b = b.embed(target)?;
    Ok(a.amplitudes.dotc(&b.amplitudes).norm())
}

/// Propagation scheme for the Schrödinger equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchrodingerMethod {
    /// Fixed-step RK4. `None` picks the default step (see [`default_step`]).
    Rk4 { max_step: Option<f64> },
    /// Exact evolution through the eigendecomposition of `H`.
    Spectral,
}

/// Largest norm drift tolerated before a propagation is declared broken.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Default RK4 step: at most `T/20000` of the reference period and at most
/// `0.5/‖H‖`, the latter keeping the Kerr levels (of order `χ n_max²`) well
/// inside the stability region when `n_max > 1`.
pub fn default_step(params: &SystemParams, h: &CMatrix) -> f64 {
    let by_period = reference_period(params)
        .map(|t| t / 20000.0)
        .unwrap_or(f64::INFINITY);
    let bound = spectral_bound(h);
    let by_norm = if bound > 0.0 {
        0.5 / bound
    } else {
        f64::INFINITY
    };
    let step = by_period.min(by_norm);
    if step.is_finite() {
        step
    } else {
        1.0
    }
}

/// Evolves `|000⟩` with fixed-step RK4 and returns the state at each grid time.
pub fn propagate_schrodinger(
    space: &HilbertSpace,
    params: &SystemParams,
    t_grid: &[f64],
) -> Result<Vec<PureState>> {
    propagate_schrodinger_with(
        space,
        params,
        t_grid,
        SchrodingerMethod::Rk4 { max_step: None },
    )
}

pub fn propagate_schrodinger_with(
    space: &HilbertSpace,
    params: &SystemParams,
    t_grid: &[f64],
    method: SchrodingerMethod,
) -> Result<Vec<PureState>> {
    params.validate()?;
    let h = build_hamiltonian(space, params);
    match method {
        SchrodingerMethod::Rk4 { max_step } => {
            let step = max_step.unwrap_or_else(|| default_step(params, &h));
            let op = SparseOp::from_dense(&h);
            let minus_i = -I;
            let states = integrate_on_grid(
                PureState::vacuum(*space).amplitudes,
                t_grid,
                step,
                |psi: &CVector, out: &mut CVector| {
                    out.fill(ZERO);
                    op.mul_vec_acc(psi, minus_i, out);
                },
                |t, psi| {
                    let drift = (psi.norm_squared() - 1.0).abs();
                    if drift > NORM_DRIFT_LIMIT {
                        Err(Error::NormDrift { t, drift })
                    } else {
                        Ok(())
                    }
                },
            )?;
            Ok(states
                .into_iter()
                .map(|amplitudes| PureState {
                    amplitudes,
                    space: *space,
                })
                .collect())
        }
        SchrodingerMethod::Spectral => {
            crate::integrate::check_grid(t_grid)?;
            let prop = SpectralPropagator::new(&h);
            let psi0 = PureState::vacuum(*space).amplitudes;
            Ok(t_grid
                .iter()
                .map(|&t| PureState {
                    amplitudes: prop.evolve(&psi0, t),
                    space: *space,
                })
                .collect())
        }
    }
}

/// `e^{-iHt}` through the eigendecomposition of a hermitian `H`. Real
/// symmetric Hamiltonians (the usual case: real `α`, `ε`) use a real
/// eigensolver.
pub struct SpectralPropagator {
    energies: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralPropagator {
    pub fn new(h: &CMatrix) -> Self {
        let n = h.nrows();
        if h.iter().all(|z| z.im == 0.0) {
            let real: DMatrix<f64> = h.map(|z| z.re);
            let eig = SymmetricEigen::new(real);
            let vectors = eig.eigenvectors.map(C64::from);
            Self {
                energies: eig.eigenvalues.iter().copied().collect(),
                vectors,
            }
        } else {
            let eig = SymmetricEigen::new(crate::linalg::hermitize(h));
            debug_assert_eq!(eig.eigenvalues.len(), n);
            Self {
                energies: eig.eigenvalues.iter().copied().collect(),
                vectors: eig.eigenvectors,
            }
        }
    }

    pub fn evolve(&self, psi0: &CVector, t: f64) -> CVector {
        let mut coeffs = self.vectors.adjoint() * psi0;
        for (c, e) in coeffs.iter_mut().zip(&self.energies) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        &self.vectors * coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::build_space;

    #[test]
    fn resonant_values() {
        let plus = resonant_epsilon(1e-3, Branch::Plus);
        let minus = resonant_epsilon(1e-3, Branch::Minus);
        // 12e-3/(10 ± √28), evaluated independently
        assert!((plus - 7.847_495_629_784_698e-4).abs() < 1e-15);
        assert!((minus - 2.548_583_770_354_863_7e-3).abs() < 1e-15);
        assert!((frequency_ratio(1e-3, plus).unwrap() - 2.0).abs() < 1e-12);
        assert!((frequency_ratio(1e-3, minus).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn period_is_two_pi_over_omega2_on_resonance() {
        for branch in [Branch::Plus, Branch::Minus] {
            let alpha = 1e-3;
            let sol = NqsSolution::new(alpha, resonant_epsilon(alpha, branch));
            let t = resonant_period(alpha, branch);
            assert!((t * sol.omega2 / (2.0 * std::f64::consts::PI) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_edge_cases() {
        assert!((frequency_ratio(0.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            frequency_ratio(0.0, 0.0),
            Err(Error::ZeroFrequency(_))
        ));
    }

    #[test]
    fn vacuum_at_t0_and_symmetric_amplitudes() {
        let p = SystemParams::undamped(1e-3, 2e-3);
        let c = nqs_amplitudes(&p, 0.0);
        assert!((c[0] - ONE).norm() < 1e-15);
        assert!(c[1..].iter().all(|z| z.norm() < 1e-15));
        for t in [10.0, 333.3, 1234.5] {
            let c = nqs_amplitudes(&p, t);
            assert_eq!(c[1], c[4]);
            assert_eq!(c[3], c[6]);
            let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_coupling_limits() {
        let c = nqs_amplitudes(&SystemParams::undamped(0.0, 0.0), 5.0);
        assert_eq!(c[0], ONE);
        assert!((sinc_t(0.0, 3.0) - 3.0).abs() < 1e-15);
        assert!((sinc_t(1e-9, 3.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_matches_by_occupation() {
        let s = PureState::from_qubit_amplitudes(nqs_amplitudes(
            &SystemParams::undamped(0.3, 0.2),
            1.7,
        ));
        let big = s.embed(build_space(3).unwrap()).unwrap();
        for occ in [[0, 0, 0], [1, 0, 1], [1, 1, 1], [0, 1, 0]] {
            assert_eq!(s.amplitude(occ), big.amplitude(occ));
        }
        assert!((big.norm_sqr() - s.norm_sqr()).abs() < 1e-15);
        assert!(big.embed(HilbertSpace::qubits()).is_err());
    }

    #[test]
    fn fidelity_basics() {
        let space = HilbertSpace::qubits();
        let a = PureState::vacuum(space);
        let mut b = CVector::zeros(8);
        b[3] = ONE;
        let b = PureState::new(space, b).unwrap();
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        let big = PureState::vacuum(build_space(2).unwrap());
        assert!((fidelity(&a, &big).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&big, &a).unwrap(), fidelity(&a, &big).unwrap());
    }

    #[test]
    fn no_dynamics_keeps_vacuum() {
        let space = HilbertSpace::qubits();
        let states = propagate_schrodinger(
            &space,
            &SystemParams::undamped(0.0, 0.0),
            &[0.0, 1.0, 100.0],
        )
        .unwrap();
        for s in states {
            assert_eq!(s.amplitudes, PureState::vacuum(space).amplitudes);
        }
    }

    #[test]
    fn rk4_and_spectral_agree_on_small_space() {
        let space = build_space(2).unwrap();
        let p = SystemParams::undamped(0.01, 0.02);
        let grid = [0.0, 50.0, 120.0];
        let a = propagate_schrodinger(&space, &p, &grid).unwrap();
        let b = propagate_schrodinger_with(&space, &p, &grid, SchrodingerMethod::Spectral).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((&x.amplitudes - &y.amplitudes).camax() < 1e-8);
        }
    }

    #[test]
    fn oversized_step_raises_norm_drift() {
        let space = build_space(2).unwrap();
        let p = SystemParams::undamped(0.01, 0.02);
        let res = propagate_schrodinger_with(
            &space,
            &p,
            &[100.0],
            SchrodingerMethod::Rk4 {
                max_step: Some(2.0),
            },
        );
        assert!(matches!(res, Err(Error::NormDrift { .. })));
    }
}
