//! Closed polygons in `𝔭` with prescribed side spectra, found by minimizing
//! the momentum norm `‖Σ_i k_i D_i k_i*‖²` over tuples of unitary matrices.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{diag, exp_skew, random_unitary, sorted_eigenvalues, CMat, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MomentumOptions {
    /// Success threshold for the residual `‖Σ A_i‖_F`.
    pub tol: f64,
    /// Gradient-descent iterations per restart before switching to Levenberg–Marquardt.
    pub max_iter: usize,
    pub lm_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MomentumOptions {
    fn default() -> Self {
        MomentumOptions {
            tol: 1e-8,
            max_iter: 2000,
            lm_iter: 200,
            restarts: 10,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HermitianTuple {
    pub m: usize,
    /// Each matrix as rows of `[re, im]` pairs.
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    pub spectra: Vec<Vec<f64>>,
}

impl HermitianTuple {
    pub fn from_matrices(ms: &[CMat], spectra: &[Vec<f64>]) -> Self {
        let m = ms.first().map_or(0, |a| a.nrows());
        let matrices = ms
            .iter()
            .map(|a| {
                (0..m)
                    .map(|i| (0..m).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
                    .collect()
            })
            .collect();
        HermitianTuple {
            m,
            matrices,
            spectra: spectra.to_vec(),
        }
    }

    pub fn to_matrices(&self) -> Vec<CMat> {
        self.matrices
            .iter()
            .map(|rows| {
                CMat::from_fn(self.m, self.m, |i, j| {
                    C64::new(rows[i][j][0], rows[i][j][1])
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MomentumOutcome {
    Polygon {
        tuple: HermitianTuple,
        residual: f64,
        restarts_used: usize,
    },
    Failure {
        best_residual: f64,
    },
}

impl MomentumOutcome {
    pub fn residual(&self) -> f64 {
        match self {
            MomentumOutcome::Polygon { residual, .. } => *residual,
            MomentumOutcome::Failure { best_residual } => *best_residual,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self, MomentumOutcome::Polygon { .. })
    }
}

/// `A_i = k_i D_i k_i*`.
pub fn conjugates(ks: &[CMat], ds: &[CMat]) -> Vec<CMat> {
    ks.iter()
        .zip(ds)
        .map(|(k, d)| k * d * k.adjoint())
        .collect()
}

pub fn momentum(ks: &[CMat], ds: &[CMat]) -> CMat {
    let m = ds[0].nrows();
    conjugates(ks, ds)
        .into_iter()
        .fold(CMat::zeros(m, m), |acc, a| acc + a)
}

/// `f(k) = ‖Σ k_i D_i k_i*‖²_F`.
pub fn objective(ks: &[CMat], ds: &[CMat]) -> f64 {
    momentum(ks, ds).norm_squared()
}

/// Gradient of [`objective`] for perturbations `k_i ↦ exp(X_i) k_i` with
/// skew-Hermitian `X_i`, in the inner product `Re tr(X* Y)`: `G_i = 2[S, A_i]`.
pub fn gradient(ks: &[CMat], ds: &[CMat]) -> Vec<CMat> {
    let a = conjugates(ks, ds);
    let s = a
        .iter()
        .fold(CMat::zeros(ds[0].nrows(), ds[0].nrows()), |acc, x| acc + x);
    a.iter()
        .map(|ai| (&s * ai - ai * &s) * C64::new(2.0, 0.0))
        .collect()
}

fn step(ks: &[CMat], dirs: &[CMat], scale: f64) -> Vec<CMat> {
    ks.iter()
        .zip(dirs)
        .map(|(k, g)| exp_skew(&(g * C64::new(scale, 0.0))) * k)
        .collect()
}

/// Orthogonal basis of the skew-Hermitian `m × m` matrices.
fn skew_basis(m: usize) -> Vec<CMat> {
    let mut out = Vec::with_capacity(m * m);
    for j in 0..m {
        let mut e = CMat::zeros(m, m);
        e[(j, j)] = C64::new(0.0, 1.0);
        out.push(e);
    }
    for j in 0..m {
        for k in j + 1..m {
            let mut e = CMat::zeros(m, m);
            e[(j, k)] = C64::new(1.0, 0.0);
            e[(k, j)] = C64::new(-1.0, 0.0);
            out.push(e);
            let mut e = CMat::zeros(m, m);
            e[(j, k)] = C64::new(0.0, 1.0);
            e[(k, j)] = C64::new(0.0, 1.0);
            out.push(e);
        }
    }
    out
}

/// Real coordinates of a Hermitian matrix with `‖vec(S)‖ = ‖S‖_F`.
fn hermitian_vec(s: &CMat) -> Vec<f64> {
    let m = s.nrows();
    let mut v = Vec::with_capacity(m * m);
    for j in 0..m {
        v.push(s[(j, j)].re);
    }
    let r2 = std::f64::consts::SQRT_2;
    for j in 0..m {
        for k in j + 1..m {
            v.push(r2 * s[(j, k)].re);
            v.push(r2 * s[(j, k)].im);
        }
    }
    v
}

fn gradient_descent(ks: &mut Vec<CMat>, ds: &[CMat], iters: usize, stop: f64) {
    let mut f = objective(ks, ds);
    let mut eta = 0.1;
    for _ in 0..iters {
        if f.sqrt() < stop {
            return;
        }
        let g = gradient(ks, ds);
        let gnorm2: f64 = g.iter().map(|x| x.norm_squared()).sum();
        // a critical point with positive value: the spectra are not realizable from here
        if gnorm2 < 1e-30 || gnorm2 < 1e-16 * f {
            return;
        }
        // Armijo backtracking from a slightly enlarged previous step
        eta *= 2.0;
        loop {
            let trial = step(ks, &g, -eta);
            let ft = objective(&trial, ds);
            if ft <= f - 1e-4 * eta * gnorm2 {
                *ks = trial;
                f = ft;
                break;
            }
            eta *= 0.5;
            if eta < 1e-16 {
                return;
            }
        }
    }
}

fn levenberg_marquardt(ks: &mut Vec<CMat>, ds: &[CMat], iters: usize, stop: f64) {
    let m = ds[0].nrows();
    let basis = skew_basis(m);
    let rows = m * m;
    let mut mu = 1e-3;
    let mut f = objective(ks, ds);
    for _ in 0..iters {
        if f.sqrt() < stop {
            return;
        }
        let a = conjugates(ks, ds);
        let s = a.iter().fold(CMat::zeros(m, m), |acc, x| acc + x);
        let r = nalgebra::DVector::from_vec(hermitian_vec(&s));
        let cols = a.len() * basis.len();
        let mut j = DMatrix::<f64>::zeros(rows, cols);
        for (i, ai) in a.iter().enumerate() {
            for (b, e) in basis.iter().enumerate() {
                let d = e * ai - ai * e;
                for (row, x) in hermitian_vec(&d).into_iter().enumerate() {
                    j[(row, i * basis.len() + b)] = x;
                }
            }
        }
        let jjt = &j * j.transpose();
        let mut improved = false;
        for _ in 0..30 {
            let mut lhs = jjt.clone();
            for d in 0..rows {
                lhs[(d, d)] += mu;
            }
            let Some(y) = lhs.cholesky().map(|c| c.solve(&r)) else {
                mu *= 10.0;
                continue;
            };
            let delta = -(j.transpose() * y);
            let dirs: Vec<CMat> = (0..a.len())
                .map(|i| {
                    basis
                        .iter()
                        .enumerate()
                        .fold(CMat::zeros(m, m), |acc, (b, e)| {
                            acc + e * C64::new(delta[i * basis.len() + b], 0.0)
                        })
                })
                .collect();
            let trial = step(ks, &dirs, 1.0);
            let ft = objective(&trial, ds);
            if ft < f {
                *ks = trial;
                f = ft;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            return;
        }
    }
}

fn validate(h: &[Vec<f64>]) -> Result<usize> {
    let m = h.first().map_or(0, Vec::len);
    for (i, hi) in h.iter().enumerate() {
        if hi.len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: hi.len(),
            });
        }
        if hi.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant {
                side: i + 1,
                reason: "entries must be non-increasing".into(),
            });
        }
        let scale = hi.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if hi.iter().sum::<f64>().abs() > 1e-9 * scale {
            return Err(Error::NotDominant {
                side: i + 1,
                reason: "entries must sum to zero".into(),
            });
        }
    }
    Ok(m)
}

/// Searches for traceless Hermitian `A_1, …, A_n` with spectra `h_i` and
/// `Σ A_i = 0`: gradient descent with Armijo steps on the unitary group,
/// then Levenberg–Marquardt polishing, with random restarts.
pub fn construct_polygon_momentum(
    h: &[Vec<f64>],
    opts: &MomentumOptions,
) -> Result<MomentumOutcome> {
    let m = validate(h)?;
    let ds: Vec<CMat> = h.iter().map(|hi| diag(hi)).collect();
    if h.iter().flatten().all(|&x| x == 0.0) {
        let zeros = vec![CMat::zeros(m, m); h.len()];
        let tuple = HermitianTuple::from_matrices(&zeros, h);
        return Ok(MomentumOutcome::Polygon {
            tuple,
            residual: 0.0,
            restarts_used: 0,
        });
    }
    let mut best = f64::INFINITY;
    for restart in 0..opts.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(restart as u64);
        let mut ks: Vec<CMat> = (0..h.len()).map(|_| random_unitary(&mut rng, m)).collect();
        gradient_descent(&mut ks, &ds, opts.max_iter, 1e-4);
        levenberg_marquardt(&mut ks, &ds, opts.lm_iter, opts.tol * 1e-2);
        let residual = objective(&ks, &ds).sqrt();
        best = best.min(residual);
        if residual < opts.tol {
            let a = conjugates(&ks, &ds);
            let spectra: Vec<Vec<f64>> = a.iter().map(sorted_eigenvalues).collect();
            let tuple = HermitianTuple::from_matrices(&a, &spectra);
            return Ok(MomentumOutcome::Polygon {
                tuple,
                residual,
                restarts_used: restart + 1,
            });
        }
    }
    Ok(MomentumOutcome::Failure {
        best_residual: best,
    })
}
