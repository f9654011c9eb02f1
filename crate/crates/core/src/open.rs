//! Lindblad evolution under amplitude or phase damping, and steady states.
//!
//! `dρ/dt = −i[H, ρ] + Σ_j (γ_j/2)(2 L_j ρ L_j† − L_j†L_j ρ − ρ L_j†L_j)`
//! with `L_j = a_j` (amplitude damping, zero-temperature bath) or
//! `L_j = a_j†a_j` (phase damping). The rates `γ_j` come from the damping
//! constants through [`SystemParams::jump_rates`].

use nalgebra::SVD;

use crate::closed::{reference_period, PureState};
use crate::error::{Error, Result};
use crate::hilbert::{annihilators, build_hamiltonian, DampingKind, HilbertSpace, SystemParams};
use crate::integrate::integrate_on_grid;
use crate::linalg::{
    eigvalsh, hermiticity_error, hermitize, max_abs, spectral_bound, CMatrix, SparseOp, C64, I,
};

/// Tolerances of the density-matrix invariants.
pub const TRACE_TOL: f64 = 1e-8;
pub const HERMITICITY_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-7;
/// Propagation aborts when the smallest eigenvalue falls below this.
pub const POSITIVITY_ABORT: f64 = 1e-6;
/// Bound on `‖L(ρ_ss)‖_max` for an accepted steady state.
pub const STEADY_RESIDUAL_TOL: f64 = 1e-10;

/// A density matrix over a tensor product of modes with dimensions `dims`
/// (mode 1 slowest-varying).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    pub matrix: CMatrix,
    pub dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: n,
            });
        }
        Ok(Self { matrix, dims })
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            matrix: state.projector(),
            dims: state.space.mode_dims().to_vec(),
        }
    }

    /// `|v⟩⟨v|/⟨v|v⟩` for a vector over `dims`.
    pub fn from_vector(v: &crate::linalg::CVector, dims: Vec<usize>) -> Result<Self> {
        let n = v.norm();
        Self::new(&(v / C64::from(n)) * (v / C64::from(n)).adjoint(), dims)
    }

    pub fn vacuum(space: &HilbertSpace) -> Self {
        Self::from_pure(&PureState::vacuum(*space))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eigvalsh(&self.matrix)[0]
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    /// `tr(ρ A)`
    pub fn expect(&self, op: &CMatrix) -> C64 {
        (&self.matrix * op).trace()
    }

    /// Violated invariant, if any: hermiticity, unit trace, positivity.
    pub fn check(&self) -> std::result::Result<(), String> {
        let herm = hermiticity_error(&self.matrix);
        if herm > HERMITICITY_TOL {
            return Err(format!("hermiticity error {herm:.3e}"));
        }
        let tr = (self.trace() - 1.0).abs();
        if tr > TRACE_TOL {
            return Err(format!("trace error {tr:.3e}"));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(format!("min eigenvalue {min:.3e}"));
        }
        Ok(())
    }
}

/// Hamiltonian plus jump operators with their rates.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    pub hamiltonian: CMatrix,
    pub jumps: Vec<(CMatrix, f64)>,
    pub kind: DampingKind,
    pub dims: Vec<usize>,
    /// Natural period of the coherent dynamics, used for step selection.
    pub reference_period: Option<f64>,
}

impl LindbladGenerator {
    pub fn new(
        hamiltonian: CMatrix,
        jumps: Vec<(CMatrix, f64)>,
        kind: DampingKind,
        dims: Vec<usize>,
    ) -> Self {
        Self {
            hamiltonian,
            jumps,
            kind,
            dims,
            reference_period: None,
        }
    }

    /// Generator for the chain: one jump per mode, `a_j` or `a_j†a_j`
    /// depending on the damping kind; no jumps when damping is `None`.
    pub fn from_params(space: &HilbertSpace, params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let h = build_hamiltonian(space, params);
        let rates = params.jump_rates();
        let jumps = match params.damping {
            DampingKind::None => Vec::new(),
            DampingKind::Amplitude => annihilators(space).into_iter().zip(rates).collect(),
            DampingKind::Phase => annihilators(space)
                .into_iter()
                .map(|a| a.adjoint() * a)
                .zip(rates)
                .collect(),
        };
        Ok(Self {
            hamiltonian: h,
            jumps,
            kind: params.damping,
            dims: space.mode_dims().to_vec(),
            reference_period: reference_period(params).ok(),
        })
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn max_rate(&self) -> f64 {
        self.jumps.iter().map(|(_, g)| *g).fold(0.0, f64::max)
    }

    /// Default RK4 step: `min(T, 1/γ_max)/20000`, further capped by
    /// `0.5/‖H_eff‖` for stability on spaces with Kerr levels.
    pub fn default_step(&self) -> f64 {
        let mut step = f64::INFINITY;
        if let Some(t) = self.reference_period {
            step = step.min(t / 20000.0);
        }
        let g = self.max_rate();
        if g > 0.0 {
            step = step.min(1.0 / g / 20000.0);
        }
        let bound = spectral_bound(&self.hamiltonian)
            + self
                .jumps
                .iter()
                .map(|(l, g)| g * spectral_bound(&(l.adjoint() * l)))
                .sum::<f64>();
        if bound > 0.0 {
            step = step.min(0.5 / bound);
        }
        if step.is_finite() {
            step
        } else {
            1.0
        }
    }

    /// The Liouvillian acting on row-major `vec(ρ)` (`vec(ρ)[i·d + j] = ρ_ij`).
    pub fn liouvillian(&self) -> CMatrix {
        let d = self.dim();
        let id = CMatrix::identity(d, d);
        let h = &self.hamiltonian;
        let mut sup = (h.kronecker(&id) - id.kronecker(&h.transpose())) * (-I);
        for (l, g) in &self.jumps {
            let ldl = l.adjoint() * l;
            let g = C64::from(*g);
            sup += l.kronecker(&l.conjugate()) * g;
            sup -= (ldl.kronecker(&id) + id.kronecker(&ldl.transpose())) * (g * 0.5);
        }
        sup
    }

    fn kernel(&self) -> RhsKernel {
        let mut heff = self.hamiltonian.clone();
        for (l, g) in &self.jumps {
            heff -= (l.adjoint() * l) * (I * (0.5 * g));
        }
        RhsKernel {
            heff: SparseOp::from_dense(&heff),
            jumps: self
                .jumps
                .iter()
                .map(|(l, g)| (SparseOp::from_dense(l), *g))
                .collect(),
        }
    }
}

/// `dρ/dt = −i H_eff ρ + i ρ H_eff† + Σ γ L ρ L†` with
/// `H_eff = H − (i/2) Σ γ L†L`, on sparse operators.
struct RhsKernel {
    heff: SparseOp,
    jumps: Vec<(SparseOp, f64)>,
}

impl RhsKernel {
    fn apply(&self, rho: &CMatrix, out: &mut CMatrix) {
        out.fill(C64::from(0.0));
        self.heff.mul_left_acc(rho, -I, out);
        self.heff.mul_right_adjoint_acc(rho, I, out);
        for (l, g) in &self.jumps {
            l.sandwich_acc(rho, C64::from(*g), out);
        }
    }
}

/// `dρ/dt` for the given generator, evaluated with dense products.
pub fn lindblad_rhs(gen: &LindbladGenerator, rho: &DensityMatrix) -> CMatrix {
    let h = &gen.hamiltonian;
    let r = &rho.matrix;
    let mut out = (h * r - r * h) * (-I);
    for (l, g) in &gen.jumps {
        let ldl = l.adjoint() * l;
        out += (l * r * l.adjoint() * C64::from(2.0) - &ldl * r - r * &ldl) * C64::from(0.5 * g);
    }
    out
}

/// Integrates the master equation from `rho0` with the generator's default step.
pub fn propagate_lindblad(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t_grid: &[f64],
) -> Result<Vec<DensityMatrix>> {
    propagate_lindblad_with(gen, rho0, t_grid, gen.default_step())
}

/// RK4 integration with an explicit maximum step. Every output is hermitized
/// and checked for positivity; a smallest eigenvalue below
/// `-POSITIVITY_ABORT` aborts the run.
pub fn propagate_lindblad_with(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    max_step: f64,
) -> Result<Vec<DensityMatrix>> {
    if rho0.dim() != gen.dim() {
        return Err(Error::DimensionMismatch {
            left: rho0.dim(),
            right: gen.dim(),
        });
    }
    let kernel = gen.kernel();
    let mut out = Vec::with_capacity(t_grid.len());
    let mut current = rho0.matrix.clone();
    let mut t_prev = 0.0;
    crate::integrate::check_grid(t_grid)?;
    // integrate one output interval at a time so each output can be hermitized
    for &t in t_grid {
        let seg = integrate_on_grid(
            current,
            &[t - t_prev],
            max_step,
            |r, o| kernel.apply(r, o),
            |_, _| Ok(()),
        )?;
        let rho = hermitize(&seg[0]);
        let min_eig = eigvalsh(&rho)[0];
        if min_eig < -POSITIVITY_ABORT {
            return Err(Error::Positivity { t, min_eig });
        }
        out.push(DensityMatrix {
            matrix: rho.clone(),
            dims: rho0.dims.clone(),
        });
        current = rho;
        t_prev = t;
    }
    Ok(out)
}

/// Relative singular-value cutoff defining the numerical null space.
const NULL_SPACE_RTOL: f64 = 1e-9;

/// Unique fixed point of the generator, from the null space of the dense
/// Liouvillian. The null vector is normalized to unit trace and hermitized;
/// a null space of dimension other than one is an error.
pub fn steady_state(gen: &LindbladGenerator) -> Result<DensityMatrix> {
    let d = gen.dim();
    let sup = gen.liouvillian();
    let svd = SVD::new(sup, false, true);
    let sigma = &svd.singular_values;
    let smax = sigma.max();
    let cutoff = NULL_SPACE_RTOL * smax.max(f64::MIN_POSITIVE);
    let null: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] <= cutoff).collect();
    if null.len() != 1 {
        return Err(Error::DegenerateNullSpace(null.len()));
    }
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::SteadyState("missing singular vectors".into()))?;
    let v = v_t.row(null[0]).adjoint();
    let mut rho = CMatrix::from_fn(d, d, |i, j| v[i * d + j]);
    let tr = rho.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::SteadyState("null vector has zero trace".into()));
    }
    rho /= tr;
    let rho = DensityMatrix {
        matrix: hermitize(&rho),
        dims: gen.dims.clone(),
    };
    let residual = max_abs(&lindblad_rhs(gen, &rho));
    if residual > STEADY_RESIDUAL_TOL {
        return Err(Error::SteadyState(format!("residual {residual:.3e}")));
    }
    Ok(rho)
}
