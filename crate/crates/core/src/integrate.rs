//! Fixed-step classical Runge–Kutta for linear complex ODEs.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64};

pub trait OdeState: Clone {
    fn zeros_like(&self) -> Self;
    /// self += a · x
    fn axpy(&mut self, a: f64, x: &Self);
}

impl OdeState for CVector {
    fn zeros_like(&self) -> Self {
        CVector::zeros(self.len())
    }

    fn axpy(&mut self, a: f64, x: &Self) {
        self.axpy(C64::from(a), x, C64::from(1.0));
    }
}

impl OdeState for CMatrix {
    fn zeros_like(&self) -> Self {
        CMatrix::zeros(self.nrows(), self.ncols())
    }

    fn axpy(&mut self, a: f64, x: &Self) {
        self.zip_apply(x, |s, v| *s += v * a);
    }
}

/// One RK4 step. `rhs(y, out)` must overwrite `out` with `dy/dt`.
pub fn rk4_step<S, F>(y: &S, h: f64, rhs: &mut F) -> S
where
    S: OdeState,
    F: FnMut(&S, &mut S),
{
    let mut k1 = y.zeros_like();
    let mut k2 = y.zeros_like();
    let mut k3 = y.zeros_like();
    let mut k4 = y.zeros_like();

    rhs(y, &mut k1);
    let mut tmp = y.clone();
    tmp.axpy(0.5 * h, &k1);
    rhs(&tmp, &mut k2);
    let mut tmp = y.clone();
    tmp.axpy(0.5 * h, &k2);
    rhs(&tmp, &mut k3);
    let mut tmp = y.clone();
    tmp.axpy(h, &k3);
    rhs(&tmp, &mut k4);

    let mut next = y.clone();
    next.axpy(h / 6.0, &k1);
    next.axpy(h / 3.0, &k2);
    next.axpy(h / 3.0, &k3);
    next.axpy(h / 6.0, &k4);
    next
}

/// Checks that a time grid is nonempty, starts at or after zero and is
/// strictly increasing.
pub fn check_grid(t_grid: &[f64]) -> Result<()> {
    let ok = !t_grid.is_empty()
        && t_grid[0] >= 0.0
        && t_grid.iter().all(|t| t.is_finite())
        && t_grid.windows(2).all(|w| w[1] > w[0]);
    if ok {
        Ok(())
    } else {
        Err(Error::TimeGrid)
    }
}

/// Integrates from `t = 0` and hands back the state at every grid time.
/// Each interval between consecutive outputs is split into the smallest
/// number of equal steps not exceeding `max_step`, so the result depends only
/// on the grid and `max_step`. `inspect` runs on every output and may abort.
pub fn integrate_on_grid<S, F, G>(
    initial: S,
    t_grid: &[f64],
    max_step: f64,
    mut rhs: F,
    mut inspect: G,
) -> Result<Vec<S>>
where
    S: OdeState,
    F: FnMut(&S, &mut S),
    G: FnMut(f64, &S) -> Result<()>,
{
    check_grid(t_grid)?;
    assert!(
        max_step > 0.0 && max_step.is_finite(),
        "max_step must be positive"
    );
    let mut out = Vec::with_capacity(t_grid.len());
    let mut y = initial;
    let mut t_prev = 0.0;
    for &t in t_grid {
        let span = t - t_prev;
        if span > 0.0 {
            let n = (span / max_step).ceil().max(1.0) as usize;
            let h = span / n as f64;
            for _ in 0..n {
                y = rk4_step(&y, h, &mut rhs);
            }
        }
        inspect(t, &y)?;
        out.push(y.clone());
        t_prev = t;
    }
    Ok(out)
}
