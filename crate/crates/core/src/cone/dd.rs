//! Double description method for `{x : A x ≤ 0}` over exact rationals.

use num::{Signed, Zero};

use crate::rational::{dot, int_to_q, primitive, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<Q>,
    zeros: Bits,
}

/// Generators of a polyhedral cone: extreme rays plus a lineality basis.
#[derive(Clone, Debug, Default)]
pub struct Generators {
    pub rays: Vec<Vec<Q>>,
    pub lineality: Vec<Vec<Q>>,
}

fn normalize(v: &[Q]) -> Vec<Q> {
    int_to_q(&primitive(v))
}

/// Computes generators of `{x ∈ ℚ^dim : row·x ≤ 0 for all rows}`.
///
/// Rows are inserted in order of fewest currently satisfied rays first;
/// the result does not depend on that order.
pub fn double_description(rows: &[Vec<Q>], dim: usize) -> Generators {
    let m = rows.len();
    // start from the whole space: lineality = standard basis, no rays
    let mut lineality: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            let mut e = vec![Q::zero(); dim];
            e[i] = Q::from_integer(1.into());
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut done = vec![false; m];

    for _ in 0..m {
        // rows that cut the lineality space go first
        let cutting =
            (0..m).find(|&r| !done[r] && lineality.iter().any(|l| !dot(&rows[r], l).is_zero()));
        let r = match cutting {
            Some(r) => r,
            None => (0..m)
                .filter(|&r| !done[r])
                .min_by_key(|&r| {
                    rays.iter()
                        .filter(|ray| !dot(&rows[r], &ray.v).is_positive())
                        .count()
                })
                .unwrap(),
        };
        done[r] = true;
        let a = &rows[r];

        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(k);
            let al = dot(a, &l);
            if al.is_positive() {
                l = l.iter().map(|x| -x).collect();
            }
            let al = dot(a, &l);
            let project = |v: &[Q]| -> Vec<Q> {
                let c = dot(a, v) / &al;
                v.iter().zip(&l).map(|(x, y)| x - &c * y).collect()
            };
            lineality = lineality.iter().map(|v| project(v)).collect();
            for ray in rays.iter_mut() {
                ray.v = normalize(&project(&ray.v));
                ray.zeros.set(r);
            }
            // l was in the lineality space, so every earlier row is tight on it
            let mut zeros = Bits::new(m);
            for (i, _) in done.iter().enumerate().filter(|(i, d)| **d && *i != r) {
                zeros.set(i);
            }
            rays.push(Ray {
                v: normalize(&l),
                zeros,
            });
            continue;
        }

        let vals: Vec<Q> = rays.iter().map(|ray| dot(a, &ray.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    ray.zeros.set(r);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let free_dim = dim - lineality.len();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                // two rays span a 2-face only if they share at least free_dim − 2 tight rows
                if free_dim >= 2 && common.count() + 2 < free_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, other)| i == p || i == n || !common.subset_of(&other.zeros));
                if !adjacent {
                    continue;
                }
                let v: Vec<Q> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let mut zeros = common;
                zeros.set(r);
                fresh.push(Ray {
                    v: normalize(&v),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut ray, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.set(r);
            }
            kept.push(ray);
        }
        kept.extend(fresh);
        rays = kept;
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality: lineality.iter().map(|l| normalize(l)).collect(),
    }
}
