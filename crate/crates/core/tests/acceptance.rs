//! Acceptance suite: one PASS/FAIL line per criterion, with wall time
//! against its budget. Runs without the libtest harness so the lines always
//! show up in the test log.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use deltapoly::cone::{
    ambient_ray, cone_contains, cones_equal, extreme_rays, irredundant, ConeHRep, RowStatus,
};
use deltapoly::configurations::{
    atom, sl_semistable, GrassmannianMeasure, GrassmannianVerdict, Strategy,
};
use deltapoly::coxeter::{
    build_root_system, dominant_representative, sharp, RootSystem, RootSystemName,
};
use deltapoly::inequalities::{
    membership, stability_system, weak_geometric_test, weak_system, InequalitySystem,
    LinearInequality, Provenance,
};
use deltapoly::polygons::hyperbolic::{
    config_distance, distance, phi, phi_fixed_point, FixedPointOptions, HyperbolicConfig, Point,
};
use deltapoly::polygons::momentum::{
    construct_polygon_momentum, gradient, objective, MomentumOptions,
};
use deltapoly::polygons::{diag, random_unitary, sample_thompson, CMat, C64};
use deltapoly::rational::{to_f64, Q};
use deltapoly::schubert::{CohomologyRing, ProductMode};
use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use RootSystemName::{A2, B2, G2};

type Check = Result<String, String>;

fn rs(name: RootSystemName) -> RootSystem {
    build_root_system(name)
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- 1

/// Multiplication tables as printed, `table[j][k]` for `j + k < m`.
fn printed_tables() -> Vec<(RootSystemName, usize, Vec<Vec<u64>>)> {
    vec![
        (A2, 1, vec![vec![1, 1, 1], vec![1, 1], vec![1]]),
        (A2, 2, vec![vec![1, 1, 1], vec![1, 1], vec![1]]),
        (
            B2,
            1,
            vec![vec![1, 1, 1, 1], vec![1, 2, 1], vec![1, 1], vec![1]],
        ),
        (
            B2,
            2,
            vec![vec![1, 1, 1, 1], vec![1, 1, 1], vec![1, 1], vec![1]],
        ),
        (
            G2,
            1,
            vec![
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 1, 2, 1, 1],
                vec![1, 2, 2, 1],
                vec![1, 1, 1],
                vec![1, 1],
                vec![1],
            ],
        ),
        (
            G2,
            2,
            vec![
                vec![1, 1, 1, 1, 1, 1],
                vec![1, 3, 2, 3, 1],
                vec![1, 2, 2, 1],
                vec![1, 3, 1],
                vec![1, 1],
                vec![1],
            ],
        ),
    ]
}

fn criterion_1() -> Check {
    let mut entries = 0;
    for (name, vertex, table) in printed_tables() {
        let ring = CohomologyRing::new(&rs(name), vertex).map_err(|e| e.to_string())?;
        ensure(ring.m == table.len(), || {
            format!("{name:?} P{vertex}: m = {}", ring.m)
        })?;
        for (j, row) in table.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                ensure(ring.product(j, k) == c, || {
                    format!(
                        "{name:?} P{vertex}: c[{j}][{k}] = {} (printed {c})",
                        ring.product(j, k)
                    )
                })?;
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries in 6 tables"))
}

// ---------------------------------------------------------------- 2

type Rows = Vec<Vec<Vec<i64>>>;

fn printed_representatives() -> Vec<(RootSystemName, usize, Rows)> {
    let r = |v: &[&[i64]]| v.iter().map(|s| s.to_vec()).collect::<Vec<_>>();
    vec![
        (
            A2,
            1,
            vec![
                r(&[&[1, 0, 0], &[0, 0, 1], &[0, 0, 1]]),
                r(&[&[0, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
            ],
        ),
        (
            A2,
            2,
            vec![
                r(&[&[0, 0, -1], &[-1, 0, 0], &[-1, 0, 0]]),
                r(&[&[0, -1, 0], &[0, -1, 0], &[-1, 0, 0]]),
            ],
        ),
        (
            B2,
            1,
            vec![
                r(&[&[1, 0], &[-1, 0], &[-1, 0]]),
                r(&[&[0, 1], &[0, -1], &[-1, 0]]),
            ],
        ),
        (
            B2,
            2,
            vec![
                r(&[&[1, 1], &[-1, -1], &[-1, -1]]),
                r(&[&[1, -1], &[-1, 1], &[-1, -1]]),
                r(&[&[-1, 1], &[-1, 1], &[-1, 1]]),
            ],
        ),
        (
            G2,
            1,
            vec![
                r(&[&[2, 1], &[-2, -1], &[-2, -1]]),
                r(&[&[1, 1], &[-1, -1], &[-2, -1]]),
                r(&[&[1, 0], &[-1, 0], &[-2, -1]]),
                r(&[&[1, 0], &[-1, -1], &[-1, -1]]),
            ],
        ),
        (
            G2,
            2,
            vec![
                r(&[&[3, 2], &[-3, -2], &[-3, -2]]),
                r(&[&[3, 1], &[-3, -1], &[-3, -2]]),
                r(&[&[0, 1], &[0, -1], &[-3, -2]]),
            ],
        ),
    ]
}

fn as_inequality(rows: &[Vec<i64>]) -> LinearInequality {
    let q: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect();
    LinearInequality::new(
        &q,
        Provenance::Chamber {
            side: 0,
            functional: 0,
        },
    )
    .expect("nonzero row")
}

fn criterion_2() -> Check {
    let mut families = 0;
    for (name, vertex, printed) in printed_representatives() {
        let r = rs(name);
        let sys =
            stability_system(&r, 3, ProductMode::ExactPoint, false).map_err(|e| e.to_string())?;
        let generated: BTreeSet<Vec<i64>> = sys
            .inequalities
            .iter()
            .filter(|i| matches!(i.provenance, Provenance::Schubert { grassmannian, .. } if grassmannian == vertex))
            .map(|i| i.orbit_key(&r))
            .collect();
        let expected: BTreeSet<Vec<i64>> = printed
            .iter()
            .map(|p| as_inequality(p).orbit_key(&r))
            .collect();
        ensure(generated == expected, || {
            format!("{name:?} P{vertex}: generated orbits {generated:?}, printed {expected:?}")
        })?;
        families += 1;
    }
    Ok(format!(
        "{families} families match up to S3 and normalization"
    ))
}

// ---------------------------------------------------------------- 3

fn full_system(r: &RootSystem, n: usize, mode: ProductMode) -> InequalitySystem {
    stability_system(r, n, mode, true).expect("n is within limits")
}

fn orbit_of(r: &RootSystem, row: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let ineq = as_inequality(row);
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms.iter().map(|p| ineq.permuted(p).key(r)).collect()
}

fn criterion_3() -> Check {
    let b2_row = vec![vec![-1, 1], vec![-1, 1], vec![-1, 1]];
    let g2_row = vec![vec![1, 0], vec![-1, -1], vec![-1, -1]];
    let mut summary = Vec::new();
    for (name, expected) in [(A2, None), (B2, Some(b2_row)), (G2, Some(g2_row))] {
        let r = rs(name);
        let sys = full_system(&r, 3, ProductMode::ExactPoint);
        let irr = irredundant(&ConeHRep::from_system(&r, &sys));
        ensure(irr.implicit_equalities().is_empty(), || {
            format!("{name:?}: unexpected implicit equalities")
        })?;
        let flagged: BTreeSet<Vec<i64>> = irr
            .status
            .iter()
            .zip(&sys.inequalities)
            .filter(|(s, _)| **s == RowStatus::Redundant)
            .map(|(_, i)| i.key(&r))
            .collect();
        let want = expected.map(|row| orbit_of(&r, &row)).unwrap_or_default();
        ensure(flagged == want, || {
            format!("{name:?}: flagged {flagged:?}, expected {want:?}")
        })?;
        summary.push(format!("{name:?} {}/{}", flagged.len(), sys.len()));
    }
    Ok(format!("redundant rows {}", summary.join(", ")))
}

// ---------------------------------------------------------------- 4

fn printed_rays(name: RootSystemName) -> Vec<Vec<i64>> {
    let table: &[[&[i64]; 3]] = match name {
        A2 => &[
            [&[2, -1, -1], &[2, -1, -1], &[2, -1, -1]],
            [&[1, 1, -2], &[2, -1, -1], &[0, 0, 0]],
            [&[0, 0, 0], &[1, 1, -2], &[2, -1, -1]],
            [&[2, -1, -1], &[0, 0, 0], &[1, 1, -2]],
            [&[0, 0, 0], &[2, -1, -1], &[1, 1, -2]],
            [&[2, -1, -1], &[1, 1, -2], &[0, 0, 0]],
            [&[1, 1, -2], &[0, 0, 0], &[2, -1, -1]],
            [&[1, 1, -2], &[1, 1, -2], &[1, 1, -2]],
        ],
        B2 => &[
            [&[1, 1], &[1, 1], &[2, 0]],
            [&[1, 0], &[0, 0], &[1, 0]],
            [&[1, 1], &[1, 1], &[0, 0]],
            [&[1, 1], &[2, 0], &[1, 1]],
            [&[1, 0], &[1, 0], &[0, 0]],
            [&[1, 0], &[1, 0], &[1, 1]],
            [&[2, 0], &[1, 1], &[1, 1]],
            [&[0, 0], &[1, 1], &[1, 1]],
            [&[1, 0], &[1, 1], &[1, 0]],
            [&[0, 0], &[1, 0], &[1, 0]],
            [&[1, 1], &[0, 0], &[1, 1]],
            [&[1, 1], &[1, 0], &[1, 0]],
        ],
        G2 => &[
            [&[0, 3], &[1, 0], &[2, 0]],
            [&[1, 0], &[0, 1], &[0, 2]],
            [&[0, 1], &[0, 0], &[0, 1]],
            [&[0, 3], &[2, 0], &[1, 0]],
            [&[1, 0], &[0, 2], &[0, 1]],
            [&[0, 1], &[0, 1], &[0, 0]],
            [&[1, 0], &[0, 3], &[2, 0]],
            [&[0, 2], &[0, 1], &[1, 0]],
            [&[0, 0], &[1, 0], &[1, 0]],
            [&[1, 0], &[2, 0], &[0, 3]],
            [&[0, 2], &[1, 0], &[0, 1]],
            [&[1, 0], &[0, 0], &[1, 0]],
            [&[2, 0], &[0, 3], &[1, 0]],
            [&[0, 3], &[1, 0], &[1, 0]],
            [&[1, 0], &[1, 0], &[0, 0]],
            [&[2, 0], &[1, 0], &[0, 3]],
            [&[1, 0], &[0, 3], &[1, 0]],
            [&[0, 1], &[0, 1], &[1, 0]],
            [&[0, 1], &[0, 2], &[1, 0]],
            [&[1, 0], &[1, 0], &[0, 3]],
            [&[0, 1], &[1, 0], &[0, 1]],
            [&[0, 1], &[1, 0], &[0, 2]],
            [&[0, 0], &[0, 1], &[0, 1]],
            [&[1, 0], &[0, 1], &[0, 1]],
        ],
    };
    table.iter().map(|r| r.concat()).collect()
}

fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
    v.iter().map(|x| x / g.max(1)).collect()
}

fn criterion_4() -> Check {
    let mut counts = Vec::new();
    for name in [A2, B2, G2] {
        let r = rs(name);
        let sys = full_system(&r, 3, ProductMode::ExactPoint);
        let v = extreme_rays(&ConeHRep::from_system(&r, &sys)).map_err(|e| e.to_string())?;
        let computed: BTreeSet<Vec<i64>> = v
            .rays
            .iter()
            .map(|ray| {
                ambient_ray(&r, ray)
                    .iter()
                    .map(|x| i64::try_from(x).expect("small ray"))
                    .collect()
            })
            .collect();
        let printed: BTreeSet<Vec<i64>> = printed_rays(name)
            .iter()
            .map(|p| primitive_i64(p))
            .collect();
        ensure(computed == printed, || {
            format!("{name:?}: computed {computed:?}, printed {printed:?}")
        })?;
        counts.push(computed.len().to_string());
    }
    Ok(format!("{} rays (A2/B2/G2)", counts.join("/")))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Check {
    let mut notes = Vec::new();
    for n in [3, 4] {
        for name in [A2, B2, G2] {
            let r = rs(name);
            let exact = ConeHRep::from_system(&r, &full_system(&r, n, ProductMode::ExactPoint));
            let nonzero = ConeHRep::from_system(&r, &full_system(&r, n, ProductMode::Nonzero));
            ensure(cones_equal(&exact, &nonzero), || {
                format!("{name:?} n={n}: exact-point and nonzero cones differ")
            })?;
            let mut weak = weak_system(&r, n).map_err(|e| e.to_string())?;
            weak.add_chamber(&r);
            let weak = ConeHRep::from_system(&r, &weak);
            ensure(cone_contains(&weak, &exact), || {
                format!("{name:?} n={n}: stability cone not inside weak cone")
            })?;
            if n == 3 {
                ensure(cone_contains(&exact, &weak), || {
                    format!("{name:?} n=3: weak cone strictly larger")
                })?;
            } else {
                notes.push(format!(
                    "{name:?} n=4 weak={}",
                    cone_contains(&exact, &weak)
                ));
            }
        }
    }
    Ok(format!(
        "exact=nonzero and stability⊆weak for n=3,4; weak=stability at n=3; {}",
        notes.join(" ")
    ))
}

// ---------------------------------------------------------------- 6

/// A random dominant vector with entries in `(1/den)ℤ`; small ranges make ties common.
fn random_dominant(r: &RootSystem, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let den = rng.random_range(1..=3i64);
    let mut v: Vec<Q> = (0..r.ambient_dim)
        .map(|_| Q::new(rng.random_range(-4..=4i64).into(), den.into()))
        .collect();
    if r.ambient_dim == 3 {
        let mean = v.iter().cloned().sum::<Q>() / qi(3);
        v.iter_mut().for_each(|x| *x -= &mean);
    }
    dominant_representative(r, &v).0.coords().to_vec()
}

fn criterion_6() -> Check {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut agree = 0;
    let mut members = 0;
    for name in [A2, B2, G2] {
        let r = rs(name);
        let weak = weak_system(&r, 3).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for trial in 0..1000 {
            let h: Vec<Vec<Q>> = (0..3).map(|_| random_dominant(&r, &mut rng)).collect();
            let by_rows = weak
                .inequalities
                .iter()
                .all(|i| !i.evaluate(&h).is_positive());
            let by_hull = perms.iter().all(|p| {
                let sides: Vec<_> = p
                    .iter()
                    .map(|&k| r.dominant(h[k].clone()).expect("dominant"))
                    .collect();
                weak_geometric_test(&r, &sides)
            });
            ensure(by_rows == by_hull, || {
                format!("{name:?} trial {trial}: rows {by_rows}, hull {by_hull} at {h:?}")
            })?;
            agree += 1;
            members += by_rows as usize;
        }
    }
    Ok(format!("{agree} triples agree ({members} inside)"))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Check {
    let report = sample_thompson(3, 1000, 42).map_err(|e| e.to_string())?;
    ensure(report.passes(1e-9), || {
        format!(
            "max violation flat {:.3e}, curved {:.3e}",
            report.flat.max_violation, report.curved.max_violation
        )
    })?;
    Ok(format!(
        "max violation flat {:.3e}, curved {:.3e} over {} inequalities",
        report.flat.max_violation, report.curved.max_violation, report.inequalities
    ))
}

// ---------------------------------------------------------------- 8

fn spectra(h: &[Vec<Q>]) -> Vec<Vec<f64>> {
    h.iter().map(|s| s.iter().map(to_f64).collect()).collect()
}

fn criterion_8() -> Check {
    let r = rs(A2);
    let sys = full_system(&r, 3, ProductMode::ExactPoint);
    let opts = MomentumOptions::default();
    let rays: Vec<Vec<Vec<Q>>> = printed_rays(A2)
        .iter()
        .map(|p| {
            p.chunks(3)
                .map(|s| s.iter().map(|&x| qi(x)).collect())
                .collect()
        })
        .collect();
    let mut worst_inside: f64 = 0.0;
    let mut restarts = 0;
    for (i, ray) in rays.iter().enumerate() {
        let out = construct_polygon_momentum(&spectra(ray), &opts).map_err(|e| e.to_string())?;
        ensure(out.residual() < 1e-8, || {
            format!("printed ray {} left residual {:.3e}", i + 1, out.residual())
        })?;
        worst_inside = worst_inside.max(out.residual());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..100 {
        // strictly positive combinations of all generators lie in the interior
        let mut h = vec![vec![Q::zero(); 3]; 3];
        for ray in &rays {
            let c = Q::new(
                rng.random_range(1..=12i64).into(),
                rng.random_range(1..=4i64).into(),
            );
            for (side, v) in h.iter_mut().zip(ray) {
                for (x, y) in side.iter_mut().zip(v) {
                    *x += &c * y;
                }
            }
        }
        ensure(
            membership(&r, &sys, &h)
                .map(|m| m.is_member())
                .unwrap_or(false),
            || format!("interior point {k} not in the cone"),
        )?;
        let out = construct_polygon_momentum(&spectra(&h), &opts).map_err(|e| e.to_string())?;
        let deltapoly::polygons::MomentumOutcome::Polygon {
            residual,
            restarts_used,
            ..
        } = out
        else {
            return Err(format!(
                "interior point {k}: no polygon (best residual {:.3e})",
                out.residual()
            ));
        };
        worst_inside = worst_inside.max(residual);
        restarts = restarts.max(restarts_used);
    }
    let named: Vec<&LinearInequality> = sys
        .inequalities
        .iter()
        .filter(|i| matches!(i.provenance, Provenance::Schubert { .. }))
        .collect();
    let mut outside = 0;
    let mut min_outside = f64::INFINITY;
    let mut tries = 0;
    while outside < 20 {
        tries += 1;
        ensure(tries < 10_000, || "could not sample outside points".into())?;
        let h: Vec<Vec<Q>> = (0..3).map(|_| random_dominant(&r, &mut rng)).collect();
        let hf = spectra(&h);
        let hnorm = hf.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        if hnorm == 0.0 {
            continue;
        }
        let violation = named
            .iter()
            .map(|i| {
                let a: Vec<f64> = i.coefficients.iter().flatten().map(|&c| c as f64).collect();
                let anorm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
                to_f64(&i.evaluate(&h)) / (anorm * hnorm)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if violation < 0.1 {
            continue;
        }
        let out = construct_polygon_momentum(&hf, &opts).map_err(|e| e.to_string())?;
        ensure(out.residual() > 1e-3, || {
            format!(
                "outside point {hf:?} reached residual {:.3e}",
                out.residual()
            )
        })?;
        min_outside = min_outside.min(out.residual());
        outside += 1;
    }
    Ok(format!(
        "inside: worst residual {worst_inside:.2e}, ≤{restarts} restarts; outside: min residual {min_outside:.3}"
    ))
}

// ---------------------------------------------------------------- 9

fn random_config(rng: &mut ChaCha8Rng, stable: bool) -> HyperbolicConfig {
    loop {
        let n = rng.random_range(3..=6);
        let mut masses: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..2.0)).collect();
        let angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        let total: f64 = masses.iter().sum();
        let max = masses.iter().cloned().fold(0.0, f64::max);
        if stable {
            if max < 0.5 * total {
                return HyperbolicConfig { masses, angles };
            }
        } else {
            let rest = total - masses[0];
            masses[0] = rest * rng.random_range(1.1..3.0);
            return HyperbolicConfig { masses, angles };
        }
    }
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let opts = FixedPointOptions::default();
    let mut worst_closure: f64 = 0.0;
    let mut worst_round_trip: f64 = 0.0;
    let mut max_iter = 0;
    for k in 0..100 {
        let cfg = random_config(&mut rng, true);
        let out = phi_fixed_point(&cfg, &opts).map_err(|e| e.to_string())?;
        let deltapoly::polygons::HyperbolicOutcome::Polygon {
            polygon,
            closure_error,
            iterations,
        } = out
        else {
            return Err(format!("stable configuration {k} diverged: {cfg:?}"));
        };
        let back = polygon.gauss_map();
        let err = config_distance(&cfg, &back);
        ensure(closure_error < 1e-8 && err < 1e-8, || {
            format!("configuration {k}: closure {closure_error:.2e}, round trip {err:.2e}")
        })?;
        worst_closure = worst_closure.max(closure_error);
        worst_round_trip = worst_round_trip.max(err);
        max_iter = max_iter.max(iterations);
    }
    for k in 0..20 {
        let cfg = random_config(&mut rng, false);
        let out = phi_fixed_point(&cfg, &opts).map_err(|e| e.to_string())?;
        ensure(out.polygon().is_none(), || {
            format!("unstable configuration {k} converged: {cfg:?}")
        })?;
    }
    Ok(format!(
        "closure ≤ {worst_closure:.1e}, round trip ≤ {worst_round_trip:.1e}, ≤ {max_iter} iterations; 20/20 diverged"
    ))
}

// ---------------------------------------------------------------- 10

/// Rank of an integer matrix by fraction-free elimination.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x = *x * a - p * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num::integer::gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, PartialEq)]
enum Oracle {
    Stable,
    Semistable,
    Unstable,
}

/// Checks `n·μ(U) ≤ μ(total)·dim U` on the span of every subset of atoms.
fn oracle(n: usize, lines: &[Vec<i64>], masses: &[Q]) -> Oracle {
    let total: Q = masses.iter().cloned().sum();
    let mut strict = true;
    for subset in 1u32..(1 << lines.len()) {
        let span: Vec<Vec<i64>> = (0..lines.len())
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| lines[i].clone())
            .collect();
        let d = rank(&span);
        if d == 0 || d == n {
            continue;
        }
        let inside: Q = lines
            .iter()
            .zip(masses)
            .filter(|(l, _)| {
                let mut with = span.clone();
                with.push((*l).clone());
                rank(&with) == d
            })
            .map(|(_, m)| m.clone())
            .sum();
        let lhs = &inside * qi(n as i64);
        let rhs = &total * qi(d as i64);
        if lhs > rhs {
            return Oracle::Unstable;
        }
        if lhs == rhs {
            strict = false;
        }
    }
    if strict {
        Oracle::Stable
    } else {
        Oracle::Semistable
    }
}

fn verdict_class(v: &GrassmannianVerdict) -> Option<Oracle> {
    match v {
        GrassmannianVerdict::Stable => Some(Oracle::Stable),
        GrassmannianVerdict::Semistable => Some(Oracle::Semistable),
        GrassmannianVerdict::Unstable { .. } => Some(Oracle::Unstable),
        GrassmannianVerdict::Undetermined { .. } => None,
    }
}

fn measure(n: usize, lines: &[Vec<i64>], masses: &[Q]) -> GrassmannianMeasure {
    let atoms = lines
        .iter()
        .zip(masses)
        .map(|(l, m)| atom(&[l.as_slice()], m.clone()))
        .collect();
    GrassmannianMeasure {
        n,
        q: 1,
        form: None,
        atoms,
    }
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut tally = [0usize; 3];
    for k in 0..200 {
        let n = rng.random_range(2..=4);
        let count = rng.random_range(2..=6);
        let mut lines = Vec::new();
        while lines.len() < count {
            let l: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2)).collect();
            if l.iter().any(|&x| x != 0) {
                lines.push(l);
            }
        }
        // integer masses make the boundary case frequent
        let masses: Vec<Q> = (0..count).map(|_| qi(rng.random_range(1..=3))).collect();
        let expected = oracle(n, &lines, &masses);
        let got = sl_semistable(&measure(n, &lines, &masses), &Strategy::Spans)
            .map_err(|e| e.to_string())?;
        ensure(verdict_class(&got).as_ref() == Some(&expected), || {
            format!("instance {k}: n={n} lines {lines:?} masses {masses:?}: got {got:?}, oracle {expected:?}")
        })?;
        tally[expected as usize] += 1;
    }
    // three points of ℂP¹, the first carrying mass 1 + ε out of 2 + ε
    let lines = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    let half = Q::new(BigInt::one(), 2.into());
    let eps = Q::new(BigInt::one(), 1000.into());
    for (first, want) in [
        (Q::one() - &eps, Oracle::Stable),
        (Q::one(), Oracle::Semistable),
        (Q::one() + &eps, Oracle::Unstable),
    ] {
        let masses = vec![first.clone(), half.clone(), half.clone()];
        let got = sl_semistable(&measure(2, &lines, &masses), &Strategy::Spans)
            .map_err(|e| e.to_string())?;
        ensure(verdict_class(&got).as_ref() == Some(&want), || {
            format!("mass {first}: got {got:?}, expected {want:?}")
        })?;
    }
    Ok(format!(
        "200 instances agree (stable {}, semistable {}, unstable {}); ℂP¹ threshold exact",
        tally[0], tally[1], tally[2]
    ))
}

// ---------------------------------------------------------------- 11

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checks = 0;
    for name in [A2, B2, G2] {
        let r = rs(name);
        for _ in 0..20 {
            let u = random_dominant(&r, &mut rng);
            let v: Vec<Q> = (0..r.ambient_dim)
                .map(|_| qi(rng.random_range(-5..=5)))
                .collect();
            let v = if r.ambient_dim == 3 {
                let mean = v.iter().cloned().sum::<Q>() / qi(3);
                v.iter().map(|x| x - &mean).collect()
            } else {
                v
            };
            for w in r.weyl() {
                ensure(
                    r.pairing(&w.act(&u), &w.act(&v)) == r.pairing(&u, &v),
                    || format!("{name:?}: pairing not W-invariant"),
                )?;
                checks += 1;
            }
            let h = r.dominant(u.clone()).expect("dominant");
            ensure(sharp(&r, &sharp(&r, &h)) == h, || {
                format!("{name:?}: ♯ is not an involution at {u:?}")
            })?;
            checks += 1;
        }
        for vertex in [1, 2] {
            let ring = CohomologyRing::new(&r, vertex).map_err(|e| e.to_string())?;
            for j in 0..ring.m {
                ensure(ring.product(j, ring.m - 1 - j) == 1, || {
                    format!("{name:?} P{vertex}: c[{j}][m-1-{j}] ≠ 1")
                })?;
                checks += 1;
            }
        }
    }
    let mut worst_fd: f64 = 0.0;
    for _ in 0..20 {
        let ds: Vec<CMat> = (0..3)
            .map(|_| {
                let mut s: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
                s.sort_by(|a, b| b.total_cmp(a));
                diag(&s)
            })
            .collect();
        let ks: Vec<CMat> = (0..3).map(|_| random_unitary(&mut rng, 3)).collect();
        let g = gradient(&ks, &ds);
        // directional derivative along a random skew-Hermitian direction
        let dir: Vec<CMat> = (0..3)
            .map(|_| {
                let a = CMat::from_fn(3, 3, |_, _| {
                    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                (&a - a.adjoint()) * C64::new(0.5, 0.0)
            })
            .collect();
        let analytic: f64 = g
            .iter()
            .zip(&dir)
            .map(|(gi, xi)| (gi.adjoint() * xi).trace().re)
            .sum();
        let eps = 1e-6;
        let moved = |s: f64| -> Vec<CMat> {
            ks.iter()
                .zip(&dir)
                .map(|(k, x)| exp_taylor(&(x * C64::new(s, 0.0))) * k)
                .collect()
        };
        let fd = (objective(&moved(eps), &ds) - objective(&moved(-eps), &ds)) / (2.0 * eps);
        let rel = (fd - analytic).abs() / analytic.abs().max(1e-3);
        ensure(rel < 1e-5, || {
            format!("gradient mismatch: analytic {analytic}, finite difference {fd}")
        })?;
        worst_fd = worst_fd.max(rel);
        checks += 1;
    }
    let mut worst_lip: f64 = f64::NEG_INFINITY;
    for _ in 0..500 {
        let point = |rng: &mut ChaCha8Rng| {
            let (a, b): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            Point::new((1.0 + a * a + b * b).sqrt(), a, b)
        };
        let (x, y) = (point(&mut rng), point(&mut rng));
        let (theta, t) = (rng.random_range(0.0..TAU), rng.random_range(0.0..4.0));
        let excess = distance(&phi(theta, t, &x), &phi(theta, t, &y)) - distance(&x, &y);
        ensure(excess <= 1e-12, || {
            format!("φ expands distances by {excess:.3e}")
        })?;
        worst_lip = worst_lip.max(excess);
        checks += 1;
    }
    Ok(format!(
        "{checks} checks; gradient rel. error ≤ {worst_fd:.1e}; φ excess ≤ {worst_lip:.1e}"
    ))
}

/// Independent matrix exponential (truncated Taylor series with squaring).
fn exp_taylor(x: &CMat) -> CMat {
    let scale = 8;
    let y = x * C64::new(0.5f64.powi(scale), 0.0);
    let mut term = CMat::identity(x.nrows(), x.ncols());
    let mut sum = term.clone();
    for k in 1..20 {
        term = &term * &y * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..scale {
        sum = &sum * &sum;
    }
    sum
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 11] = [
        ("Schubert structure constants", 1, criterion_1),
        ("inequality orbit representatives", 1, criterion_2),
        ("redundant inequalities", 10, criterion_3),
        ("extreme rays", 60, criterion_4),
        ("cone equalities", 300, criterion_5),
        ("weak inequality equivalence", 30, criterion_6),
        ("Thompson sampling", 60, criterion_7),
        ("momentum polygon construction", 300, criterion_8),
        ("rank-one fixed point", 60, criterion_9),
        ("Grassmannian stability", 60, criterion_10),
        ("property suites", u64::MAX, criterion_11),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {name} ({:.2} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
