//! Small dense linear-algebra helpers shared by the dynamics and
//! entanglement code, plus a triplet-list sparse operator used to keep the
//! time-stepping kernels cheap.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// (M + M†) / 2
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest elementwise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest elementwise deviation from hermiticity.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Ascending eigenvalues of a hermitian matrix. The input is hermitized first
/// so roundoff asymmetry does not leak into the spectrum.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(hermitize(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Trace norm of a hermitian matrix.
pub fn trace_norm_hermitian(m: &CMatrix) -> f64 {
    eigvalsh(m).iter().map(|x| x.abs()).sum()
}

/// Trace distance ½‖A − B‖₁ between two hermitian matrices.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    0.5 * trace_norm_hermitian(&(a - b))
}

/// Gershgorin bound on the spectral radius.
pub fn spectral_bound(m: &CMatrix) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Sparse square operator stored as nonzero triplets.
#[derive(Clone, Debug)]
pub struct SparseOp {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseOp {
    pub fn from_dense(m: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if z != ZERO {
                    entries.push((i, j, z));
                }
            }
        }
        Self {
            dim: m.nrows(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// out += scale · A·v
    pub fn mul_vec_acc(&self, v: &CVector, scale: C64, out: &mut CVector) {
        for &(i, j, z) in &self.entries {
            out[i] += scale * z * v[j];
        }
    }

    /// out += scale · A·X
    pub fn mul_left_acc(&self, x: &CMatrix, scale: C64, out: &mut CMatrix) {
        let n = x.ncols();
        for &(i, k, z) in &self.entries {
            let s = scale * z;
            for c in 0..n {
                out[(i, c)] += s * x[(k, c)];
            }
        }
    }

    /// out += scale · X·A†
    pub fn mul_right_adjoint_acc(&self, x: &CMatrix, scale: C64, out: &mut CMatrix) {
        let n = x.nrows();
        // (X A†)_{r,i} = Σ_k X_{r,k} conj(A_{i,k})
        for &(i, k, z) in &self.entries {
            let s = scale * z.conj();
            for r in 0..n {
                out[(r, i)] += s * x[(r, k)];
            }
        }
    }

    /// out += scale · A·X·A†
    pub fn sandwich_acc(&self, x: &CMatrix, scale: C64, out: &mut CMatrix) {
        for &(i, k, a) in &self.entries {
            for &(j, l, b) in &self.entries {
                out[(i, j)] += scale * a * x[(k, l)] * b.conj();
            }
        }
    }
}
