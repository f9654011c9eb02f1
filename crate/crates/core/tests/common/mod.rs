//! Independent oracles and shared invariant checks for the integration tests.
//!
//! Nothing here calls the library's eigensolver, partial transpose or
//! Hamiltonian builder.

#![allow(dead_code)]

use kerr_chain::closed::resonant_epsilon;
use kerr_chain::correlations::correlation_report;
use kerr_chain::entanglement::{
    bipartition_negativities, partial_transpose, tripartite_negativity,
};
use kerr_chain::hilbert::mode_operator;
use kerr_chain::linalg::{CMatrix, C64};
use kerr_chain::open::{lindblad_rhs, propagate_lindblad, steady_state};
use kerr_chain::{
    Branch, DampingKind, DensityMatrix, HilbertSpace, LindbladGenerator, Mode, SystemParams,
};
use rand::rngs::StdRng;
use rand::Rng;

/// Cyclic Jacobi rotations on a real symmetric matrix stored row-major.
/// Returns eigenvalues and eigenvectors (as columns, row-major storage).
pub fn jacobi_symmetric(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Eigenvalues of a hermitian matrix through the real embedding
/// `[[Re, −Im], [Im, Re]]`, whose spectrum is the original one doubled.
pub fn oracle_eigvals(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let big = 2 * n;
    let mut a = vec![0.0; big * big];
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            a[i * big + j] = z.re;
            a[(i + n) * big + (j + n)] = z.re;
            a[i * big + (j + n)] = -z.im;
            a[(i + n) * big + j] = z.im;
        }
    }
    let (mut ev, _) = jacobi_symmetric(&a, big);
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

/// Partial transpose by explicit occupation loops; `mask[m]` transposes mode `m`.
pub fn oracle_partial_transpose(rho: &CMatrix, d: usize, mask: [bool; 3]) -> CMatrix {
    let idx = |o: [usize; 3]| (o[0] * d + o[1]) * d + o[2];
    let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
    for r0 in 0..d {
        for r1 in 0..d {
            for r2 in 0..d {
                for c0 in 0..d {
                    for c1 in 0..d {
                        for c2 in 0..d {
                            let (mut r, mut c) = ([r0, r1, r2], [c0, c1, c2]);
                            for m in 0..3 {
                                if mask[m] {
                                    std::mem::swap(&mut r[m], &mut c[m]);
                                }
                            }
                            out[(idx(r), idx(c))] = rho[(idx([r0, r1, r2]), idx([c0, c1, c2]))];
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn oracle_negativity(rho: &CMatrix, d: usize, mask: [bool; 3]) -> f64 {
    let pt = oracle_partial_transpose(rho, d, mask);
    2.0 * oracle_eigvals(&pt)
        .into_iter()
        .filter(|x| *x < 0.0)
        .map(|x| -x)
        .fold(0.0, |a, b| a + b)
}

/// Reduced state of a three-mode matrix on the two modes not equal to `traced`.
pub fn oracle_trace_out(rho: &CMatrix, d: usize, traced: usize) -> CMatrix {
    let idx = |o: [usize; 3]| (o[0] * d + o[1]) * d + o[2];
    let keep: Vec<usize> = (0..3).filter(|m| *m != traced).collect();
    let mut out = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    for s in 0..d {
                        let mut r = [0; 3];
                        let mut col = [0; 3];
                        r[keep[0]] = a;
                        r[keep[1]] = b;
                        col[keep[0]] = c;
                        col[keep[1]] = e;
                        r[traced] = s;
                        col[traced] = s;
                        out[(a * d + b, c * d + e)] += rho[(idx(r), idx(col))];
                    }
                }
            }
        }
    }
    out
}

/// Two-mode negativity of a `d²`-dimensional state, transposing the second mode.
pub fn oracle_pair_negativity(rho2: &CMatrix, d: usize) -> f64 {
    let mut pt = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    pt[(a * d + e, c * d + b)] = rho2[(a * d + b, c * d + e)];
                }
            }
        }
    }
    2.0 * oracle_eigvals(&pt)
        .into_iter()
        .filter(|x| *x < 0.0)
        .fold(0.0, |a, x| a - x)
}

/// Hamiltonian written out element by element for cutoff `d − 1`.
pub fn oracle_hamiltonian(d: usize, chi: f64, alpha: f64, coupling: f64) -> Vec<f64> {
    let n = d * d * d;
    let idx = |o: [usize; 3]| (o[0] * d + o[1]) * d + o[2];
    let mut h = vec![0.0; n * n];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let o = [i, j, k];
                let s = idx(o);
                h[s * n + s] = 0.5
                    * chi
                    * o.iter()
                        .map(|&m| (m * m.saturating_sub(1)) as f64)
                        .sum::<f64>();
                // hopping between neighbours (0,1) and (1,2), both directions
                for (p, q) in [(0usize, 1usize), (1, 2)] {
                    for (from, to) in [(p, q), (q, p)] {
                        if o[from] >= 1 && o[to] + 1 < d {
                            let mut t = o;
                            t[from] -= 1;
                            t[to] += 1;
                            let amp = ((o[from]) as f64).sqrt() * ((o[to] + 1) as f64).sqrt();
                            h[idx(t) * n + s] += coupling * amp;
                        }
                    }
                }
                // pump on the boundary modes
                for m in [0usize, 2] {
                    if o[m] + 1 < d {
                        let mut t = o;
                        t[m] += 1;
                        let amp = ((o[m] + 1) as f64).sqrt();
                        h[idx(t) * n + s] += alpha * amp;
                        h[s * n + idx(t)] += alpha * amp;
                    }
                }
            }
        }
    }
    h
}

/// `exp(−iHt)|000⟩` through the Jacobi eigendecomposition of a real `H`.
pub fn oracle_evolve_vacuum(h: &[f64], n: usize, t: f64) -> Vec<C64> {
    let (e, v) = jacobi_symmetric(h, n);
    let mut out = vec![C64::new(0.0, 0.0); n];
    for k in 0..n {
        let w = v[k] * C64::new(0.0, -e[k] * t).exp();
        for (i, o) in out.iter_mut().enumerate() {
            *o += v[i * n + k] * w;
        }
    }
    out
}

/// Random mixed state `AA†/tr` on three modes of dimension `d`.
pub fn random_density(rng: &mut StdRng, d: usize, rank: usize) -> DensityMatrix {
    let n = d * d * d;
    let a = CMatrix::from_fn(n, rank, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr, vec![d; 3]).unwrap()
}

pub fn random_damped_params(rng: &mut StdRng) -> SystemParams {
    let alpha = rng.gen_range(0.001..0.05);
    let branch = if rng.gen_bool(0.5) {
        Branch::Plus
    } else {
        Branch::Minus
    };
    let kind = if rng.gen_bool(0.5) {
        DampingKind::Amplitude
    } else {
        DampingKind::Phase
    };
    SystemParams::undamped(alpha, resonant_epsilon(alpha, branch))
        .with_delta(rng.gen_range(-0.8..0.8) * alpha)
        .with_damping(kind, rng.gen_range(0.05..5.0) * alpha)
}

/// Open evolution from the vacuum preserves trace, hermiticity and
/// positivity, and keeps the 1 ↔ 3 mirror symmetry of the chain.
pub fn check_open_evolution(params: &SystemParams) -> Result<(), String> {
    let space = HilbertSpace::qubits();
    let gen = LindbladGenerator::from_params(&space, params).map_err(|e| e.to_string())?;
    let t = 0.2 / params.alpha;
    let grid = [0.0, 0.5 * t, t];
    let states = propagate_lindblad(&gen, &DensityMatrix::vacuum(&space), &grid)
        .map_err(|e| e.to_string())?;
    for rho in &states {
        let m = &rho.matrix;
        let tr = (m.trace() - C64::new(1.0, 0.0)).norm();
        let herm = (m - m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let min = oracle_eigvals(m)[0];
        let mirror = (space.mirror_matrix(m) - m)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if tr > 1e-8 || herm > 1e-10 || min < -1e-7 || mirror > 1e-10 {
            return Err(format!(
                "trace {tr:.2e}, hermiticity {herm:.2e}, min eig {min:.2e}, mirror {mirror:.2e}"
            ));
        }
    }
    Ok(())
}

pub fn check_steady_residual(params: &SystemParams) -> Result<(), String> {
    let space = HilbertSpace::qubits();
    let gen = LindbladGenerator::from_params(&space, params).map_err(|e| e.to_string())?;
    let rho = steady_state(&gen).map_err(|e| e.to_string())?;
    let res = lindblad_rhs(&gen, &rho)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if res > 1e-10 {
        return Err(format!("residual {res:.2e}"));
    }
    Ok(())
}

pub fn check_g1_range(rho: &DensityMatrix) -> Result<(), String> {
    let r = correlation_report(rho).map_err(|e| e.to_string())?;
    match r.g1.iter().find(|g| !(0.0..=1.0 + 1e-12).contains(*g)) {
        Some(g) => Err(format!("g1 = {g}")),
        None => Ok(()),
    }
}

pub fn check_geometric_mean(rho: &DensityMatrix) -> Result<(), String> {
    let b = bipartition_negativities(rho).map_err(|e| e.to_string())?;
    let n = tripartite_negativity(rho).map_err(|e| e.to_string())?;
    let expect = (b[0] * b[1] * b[2]).cbrt();
    if (n - expect).abs() > 1e-12 * (1.0 + expect) {
        return Err(format!("N = {n}, cube root of product = {expect}"));
    }
    Ok(())
}

pub fn check_transpose_involution(rho: &DensityMatrix, part: &[usize]) -> Result<(), String> {
    let once = DensityMatrix::new(
        partial_transpose(rho, part).map_err(|e| e.to_string())?,
        rho.dims.clone(),
    )
    .map_err(|e| e.to_string())?;
    let twice = partial_transpose(&once, part).map_err(|e| e.to_string())?;
    if twice != rho.matrix {
        return Err("partial transpose applied twice differs from the input".into());
    }
    Ok(())
}

/// Mirror symmetry of the Hamiltonian itself.
pub fn check_mirror_hamiltonian(params: &SystemParams, n_max: usize) -> Result<(), String> {
    let space = HilbertSpace::new(n_max).map_err(|e| e.to_string())?;
    let h = kerr_chain::hilbert::build_hamiltonian(&space, params);
    let diff = (space.mirror_matrix(&h) - &h)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if diff > 1e-15 {
        return Err(format!("mirror asymmetry {diff:.2e}"));
    }
    let a1 = mode_operator(
        &space,
        Mode::One,
        kerr_chain::hilbert::OperatorKind::Annihilation,
    )
    .matrix;
    let a3 = mode_operator(
        &space,
        Mode::Three,
        kerr_chain::hilbert::OperatorKind::Annihilation,
    )
    .matrix;
    if space.mirror_matrix(&a1) != a3 {
        return Err("mirror does not exchange a1 and a3".into());
    }
    Ok(())
}
