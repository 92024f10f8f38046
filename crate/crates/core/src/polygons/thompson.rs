//! Random closed triangles (or n-gons) in `𝔭` and in `X = SL(3,ℂ)/SU(3)`,
//! checked against the A2 stability inequalities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{log_singular_values, random_sl, random_traceless_hermitian, sorted_eigenvalues, CMat};
use crate::coxeter::{build_root_system, RootSystemName};
use crate::error::Result;
use crate::inequalities::{stability_system, LinearInequality};
use crate::schubert::ProductMode;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub samples: usize,
    /// Largest value of any inequality's left side (≤ 0 means satisfied).
    pub max_violation: f64,
    pub worst_inequality: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThompsonReport {
    pub n: usize,
    pub seed: u64,
    pub inequalities: usize,
    pub flat: FamilyReport,
    pub curved: FamilyReport,
}

impl ThompsonReport {
    pub fn passes(&self, slack: f64) -> bool {
        self.flat.max_violation <= slack && self.curved.max_violation <= slack
    }
}

fn evaluate(rows: &[LinearInequality], h: &[Vec<f64>]) -> (f64, usize) {
    let mut worst = (f64::NEG_INFINITY, 0);
    for (i, r) in rows.iter().enumerate() {
        let v: f64 = r
            .coefficients
            .iter()
            .zip(h)
            .map(|(c, x)| c.iter().zip(x).map(|(a, b)| *a as f64 * b).sum::<f64>())
            .sum();
        if v > worst.0 {
            worst = (v, i);
        }
    }
    worst
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Side spectra of a random closed n-gon in `𝔭`: `n − 1` random sides, the last closes up.
pub fn random_flat_polygon(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let sides: Vec<CMat> = (0..n - 1)
        .map(|_| random_traceless_hermitian(rng, 3))
        .collect();
    let last = -sides.iter().fold(CMat::zeros(3, 3), |a, b| a + b);
    sides
        .iter()
        .chain(std::iter::once(&last))
        .map(sorted_eigenvalues)
        .collect()
}

/// Side lengths of a random closed n-gon in `X`: vertices `g₁⋯g_k·K`, the last
/// factor is the inverse of the product so the polygon closes.
pub fn random_curved_polygon(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let factors: Vec<CMat> = (0..n - 1).map(|_| random_sl(rng, 3)).collect();
    let prod = factors.iter().fold(CMat::identity(3, 3), |a, b| a * b);
    let last = prod.try_inverse().expect("SL(3) element is invertible");
    factors
        .iter()
        .chain(std::iter::once(&last))
        .map(|g| log_singular_values(g).expect("SL(3) element is invertible"))
        .collect()
}

fn family<F>(
    rows: &[LinearInequality],
    count: usize,
    seed: u64,
    offset: u64,
    sample: F,
) -> FamilyReport
where
    F: Fn(&mut ChaCha8Rng) -> Vec<Vec<f64>> + Sync,
{
    let worst = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed, offset + k as u64);
            evaluate(rows, &sample(&mut rng))
        })
        .reduce(
            || (f64::NEG_INFINITY, 0),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    FamilyReport {
        samples: count,
        max_violation: worst.0,
        worst_inequality: (count > 0).then(|| rows[worst.1].to_symbolic()),
    }
}

/// Samples `count` closed n-gons in each model and reports the largest
/// violation of the A2 stability inequalities.
pub fn sample_thompson(n: usize, count: usize, seed: u64) -> Result<ThompsonReport> {
    let rs = build_root_system(RootSystemName::A2);
    let sys = stability_system(&rs, n, ProductMode::ExactPoint, true)?;
    let rows = &sys.inequalities;
    let flat = family(rows, count, seed, 0, |rng| random_flat_polygon(rng, n));
    let curved = family(rows, count, seed, 1 << 32, |rng| {
        random_curved_polygon(rng, n)
    });
    Ok(ThompsonReport {
        n,
        seed,
        inequalities: rows.len(),
        flat,
        curved,
    })
}
