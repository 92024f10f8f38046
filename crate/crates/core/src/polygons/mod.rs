//! Floating-point matrix models: Δ-lengths in the flat space `𝔭` of traceless
//! Hermitian matrices and in `X = SL(m,ℂ)/SU(m)`, polygon construction by
//! momentum minimization, the rank-one fixed-point construction in `H²`, and
//! random sampling of closed polygons.

pub mod hyperbolic;
pub mod momentum;
pub mod thompson;

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

pub use hyperbolic::{
    gauss_map, phi, phi_fixed_point, FixedPointOptions, HyperbolicConfig, HyperbolicOutcome,
    HyperbolicPolygon,
};
pub use momentum::{construct_polygon_momentum, HermitianTuple, MomentumOptions, MomentumOutcome};
pub use thompson::{sample_thompson, ThompsonReport};

const HERMITIAN_TOL: f64 = 1e-9;

pub fn hermitian_deviation(a: &CMat) -> f64 {
    (a - a.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn check_hermitian(a: &CMat) -> Result<()> {
    let dev = hermitian_deviation(a);
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix in decreasing order.
pub fn sorted_eigenvalues(a: &CMat) -> Vec<f64> {
    let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Δ-length of the segment from `a` to `b` in `𝔭`: the spectrum of `b − a`.
pub fn delta_length_p(a: &CMat, b: &CMat) -> Result<Vec<f64>> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    check_hermitian(a)?;
    check_hermitian(b)?;
    Ok(sorted_eigenvalues(&(b - a)))
}

/// Δ-length of the segment from `g1·K` to `g2·K` in `X`: the logarithms of
/// the singular values of `g1⁻¹ g2`, in decreasing order.
pub fn delta_length_x(g1: &CMat, g2: &CMat) -> Result<Vec<f64>> {
    if g1.shape() != g2.shape() {
        return Err(Error::Dimension {
            expected: g1.nrows(),
            got: g2.nrows(),
        });
    }
    let inv = g1.clone().try_inverse().ok_or(Error::Singular)?;
    log_singular_values(&(inv * g2))
}

pub fn log_singular_values(g: &CMat) -> Result<Vec<f64>> {
    let sv = g.clone().singular_values();
    if sv.iter().any(|&s| s <= 0.0 || !s.is_finite()) {
        return Err(Error::Singular);
    }
    let mut out: Vec<f64> = sv.iter().map(|s| s.ln()).collect();
    out.sort_by(|x, y| y.total_cmp(x));
    Ok(out)
}

/// `h♯ = −w₀h` for type A: reverse and negate.
pub fn sharp_a(h: &[f64]) -> Vec<f64> {
    h.iter().rev().map(|x| -x).collect()
}

pub fn diag(h: &[f64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        h.len(),
        h.iter().map(|&x| C64::new(x, 0.0)),
    ))
}

pub fn random_gaussian_matrix<R: Rng>(rng: &mut R, m: usize) -> CMat {
    CMat::from_fn(m, m, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    })
}

/// Random unitary matrix: QR of a complex Gaussian matrix with phases fixed.
pub fn random_unitary<R: Rng>(rng: &mut R, m: usize) -> CMat {
    let qr = random_gaussian_matrix(rng, m).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random traceless Hermitian matrix with Gaussian entries.
pub fn random_traceless_hermitian<R: Rng>(rng: &mut R, m: usize) -> CMat {
    let g = random_gaussian_matrix(rng, m);
    let mut h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    let tr = h.trace() / C64::new(m as f64, 0.0);
    for i in 0..m {
        h[(i, i)] -= tr;
    }
    h
}

/// Random element of `SL(m,ℂ)`: a complex Gaussian matrix divided by an `m`-th root of its determinant.
pub fn random_sl<R: Rng>(rng: &mut R, m: usize) -> CMat {
    loop {
        let g = random_gaussian_matrix(rng, m);
        let det = g.determinant();
        if det.norm() > 1e-6 {
            let root = det.powf(1.0 / m as f64);
            return g / root;
        }
    }
}

/// `exp(X)` for skew-Hermitian `X`, through the spectral decomposition of `−iX`.
pub fn exp_skew(x: &CMat) -> CMat {
    let h = x * C64::new(0.0, -1.0);
    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let v = &eig.eigenvectors;
    let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| C64::new(0.0, l).exp()),
    ));
    v * d * v.adjoint()
}
