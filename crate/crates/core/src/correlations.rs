//! Intermode first-order (coherence) and second-order (intensity)
//! correlation functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{mode_operator, HilbertSpace, Mode, OperatorKind};
use crate::linalg::CMatrix;
use crate::open::DensityMatrix;

/// Occupations below this count as an empty mode.
pub const EMPTY_MODE: f64 = 1e-12;

/// Mode pairs in reporting order.
pub const PAIRS: [(Mode, Mode); 3] = [
    (Mode::One, Mode::Two),
    (Mode::Two, Mode::Three),
    (Mode::One, Mode::Three),
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    /// g¹ for pairs (1,2), (2,3), (1,3).
    pub g1: [f64; 3],
    /// g² for pairs (1,2), (2,3), (1,3).
    pub g2: [f64; 3],
    /// ⟨n₁⟩, ⟨n₂⟩, ⟨n₃⟩
    pub occupations: [f64; 3],
}

/// Ladder operators of a three-mode density matrix, built once per space.
pub struct Correlator {
    a: [CMatrix; 3],
}

impl Correlator {
    pub fn new(space: &HilbertSpace) -> Self {
        Self {
            a: Mode::ALL.map(|m| mode_operator(space, m, OperatorKind::Annihilation).matrix),
        }
    }

    fn space_of(rho: &DensityMatrix) -> Result<HilbertSpace> {
        let d = rho.dims.first().copied().unwrap_or(0);
        if rho.dims.len() != 3 || rho.dims.iter().any(|&x| x != d) || d < 2 {
            return Err(Error::InvalidParams(format!(
                "expected three equal modes, got dims {:?}",
                rho.dims
            )));
        }
        HilbertSpace::new(d - 1)
    }

    pub fn for_state(rho: &DensityMatrix) -> Result<Self> {
        Ok(Self::new(&Self::space_of(rho)?))
    }

    fn op(&self, m: Mode) -> &CMatrix {
        &self.a[m.position()]
    }

    pub fn occupation(&self, rho: &DensityMatrix, m: Mode) -> f64 {
        let a = self.op(m);
        rho.expect(&(a.adjoint() * a)).re
    }

    /// `|⟨a_j†a_k⟩| / √(⟨n_j⟩⟨n_k⟩)`, or 0 if either mode is empty.
    pub fn g1(&self, rho: &DensityMatrix, j: Mode, k: Mode) -> Result<f64> {
        if j == k {
            return Err(Error::InvalidModeSet(vec![j.number(), k.number()]));
        }
        let (nj, nk) = (self.occupation(rho, j), self.occupation(rho, k));
        if nj < EMPTY_MODE || nk < EMPTY_MODE {
            return Ok(0.0);
        }
        let cross = rho.expect(&(self.op(j).adjoint() * self.op(k))).norm();
        Ok(cross / (nj * nk).sqrt())
    }

    /// `⟨a_j†a_k†a_j a_k⟩ / (⟨n_j⟩⟨n_k⟩)`, or 1 if either mode is empty.
    pub fn g2(&self, rho: &DensityMatrix, j: Mode, k: Mode) -> Result<f64> {
        if j == k {
            return Err(Error::InvalidModeSet(vec![j.number(), k.number()]));
        }
        let (nj, nk) = (self.occupation(rho, j), self.occupation(rho, k));
        if nj < EMPTY_MODE || nk < EMPTY_MODE {
            return Ok(1.0);
        }
        let (aj, ak) = (self.op(j), self.op(k));
        let num = rho.expect(&(aj.adjoint() * ak.adjoint() * aj * ak)).re;
        Ok(num.max(0.0) / (nj * nk))
    }

    pub fn report(&self, rho: &DensityMatrix) -> CorrelationReport {
        let mut g1 = [0.0; 3];
        let mut g2 = [0.0; 3];
        for (slot, (j, k)) in PAIRS.iter().enumerate() {
            g1[slot] = self.g1(rho, *j, *k).expect("distinct pair");
            g2[slot] = self.g2(rho, *j, *k).expect("distinct pair");
        }
        CorrelationReport {
            g1,
            g2,
            occupations: Mode::ALL.map(|m| self.occupation(rho, m)),
        }
    }
}

pub fn g1(rho: &DensityMatrix, j: Mode, k: Mode) -> Result<f64> {
    Correlator::for_state(rho)?.g1(rho, j, k)
}

pub fn g2(rho: &DensityMatrix, j: Mode, k: Mode) -> Result<f64> {
    Correlator::for_state(rho)?.g2(rho, j, k)
}

pub fn correlation_report(rho: &DensityMatrix) -> Result<CorrelationReport> {
    Ok(Correlator::for_state(rho)?.report(rho))
}
