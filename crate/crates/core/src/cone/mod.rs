//! Exact polyhedral cones `{x : row·x ≤ 0}`: redundancy removal, extreme
//! rays, facets, containment and equality.

pub mod dd;

use num::{BigInt, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{RootSystem, RootSystemName};
use crate::error::{Error, Result};
use crate::inequalities::{InequalitySystem, Provenance};
use crate::lp::{maximize_free, LpOutcome};
use crate::rational::{dot, int_to_q, primitive, Q};

pub use dd::{double_description, Generators};

/// H-representation in free coordinates (A2 sides use `(x, y)` with `z = −x − y`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeHRep {
    pub dim: usize,
    #[serde(with = "crate::rational::serde_q::mat")]
    pub rows: Vec<Vec<Q>>,
    pub names: Vec<String>,
}

/// Extreme rays as primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeVRep {
    pub dim: usize,
    #[serde(with = "crate::rational::serde_q::int_mat")]
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Irredundant,
    Redundant,
    /// The row holds with equality on the whole cone.
    ImplicitEquality,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Irredundant {
    pub subsystem: ConeHRep,
    pub status: Vec<RowStatus>,
}

impl Irredundant {
    pub fn redundant_indices(&self) -> Vec<usize> {
        indices(&self.status, RowStatus::Redundant)
    }

    pub fn implicit_equalities(&self) -> Vec<usize> {
        indices(&self.status, RowStatus::ImplicitEquality)
    }
}

fn indices(status: &[RowStatus], which: RowStatus) -> Vec<usize> {
    status
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == which)
        .map(|(i, _)| i)
        .collect()
}

/// Facet rows and the equations of the linear span of a cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Facets {
    pub dim: usize,
    #[serde(with = "crate::rational::serde_q::mat")]
    pub rows: Vec<Vec<Q>>,
    #[serde(with = "crate::rational::serde_q::mat")]
    pub equations: Vec<Vec<Q>>,
}

/// Number of free coordinates per side.
pub fn free_width(rs: &RootSystem) -> usize {
    if rs.name == RootSystemName::A2 {
        2
    } else {
        rs.ambient_dim
    }
}

/// Rewrites a per-side functional in free coordinates.
pub fn reduce_functional(rs: &RootSystem, f: &[Q]) -> Vec<Q> {
    if rs.name == RootSystemName::A2 {
        vec![&f[0] - &f[2], &f[1] - &f[2]]
    } else {
        f.to_vec()
    }
}

/// Restores ambient coordinates of a point given in free coordinates.
pub fn restore_point(rs: &RootSystem, v: &[Q]) -> Vec<Q> {
    let w = free_width(rs);
    if rs.name != RootSystemName::A2 {
        return v.to_vec();
    }
    v.chunks(w)
        .flat_map(|s| [s[0].clone(), s[1].clone(), -(&s[0] + &s[1])])
        .collect()
}

/// Free coordinates of an ambient point.
pub fn reduce_point(rs: &RootSystem, v: &[Q]) -> Vec<Q> {
    if rs.name != RootSystemName::A2 {
        return v.to_vec();
    }
    v.chunks(3)
        .flat_map(|s| [s[0].clone(), s[1].clone()])
        .collect()
}

pub fn provenance_name(p: &Provenance) -> String {
    match p {
        Provenance::Schubert {
            grassmannian,
            degrees,
        } => {
            let d: Vec<String> = degrees.iter().map(usize::to_string).collect();
            format!("P{grassmannian}({})", d.join(","))
        }
        Provenance::Weak {
            word,
            first,
            second,
            form,
        } => {
            let w: String = word.iter().map(usize::to_string).collect();
            format!(
                "weak(w={},{first},{second},λ{form})",
                if w.is_empty() { "e" } else { &w }
            )
        }
        Provenance::Chamber { side, functional } => format!("chamber(side {side},{functional})"),
    }
}

impl ConeHRep {
    pub fn from_system(rs: &RootSystem, sys: &InequalitySystem) -> Self {
        let rows = sys
            .inequalities
            .iter()
            .map(|ineq| {
                ineq.rational_rows()
                    .iter()
                    .flat_map(|side| reduce_functional(rs, side))
                    .collect()
            })
            .collect();
        let names = sys
            .inequalities
            .iter()
            .map(|i| provenance_name(&i.provenance))
            .collect();
        ConeHRep {
            dim: sys.n * free_width(rs),
            rows,
            names,
        }
    }

    pub fn new(dim: usize, rows: Vec<Vec<Q>>) -> Self {
        let names = (0..rows.len()).map(|i| format!("r{}", i + 1)).collect();
        ConeHRep { dim, rows, names }
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.rows.iter().all(|r| !dot(r, x).is_positive())
    }

    fn subset(&self, keep: &[usize]) -> ConeHRep {
        ConeHRep {
            dim: self.dim,
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
        }
    }
}

/// `max a·x` over `{others·x ≤ 0, a·x ≤ 1}`: 0 means `a` is implied.
fn implied(others: &[&Vec<Q>], a: &[Q]) -> bool {
    let mut rows: Vec<Vec<Q>> = others.iter().map(|r| (*r).clone()).collect();
    let mut b = vec![Q::zero(); rows.len()];
    rows.push(a.to_vec());
    b.push(Q::one());
    match maximize_free(&rows, &b, a) {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        _ => unreachable!("the origin is feasible and the objective is capped"),
    }
}

/// Flags each row as irredundant, redundant or an implicit equality, and
/// returns the irredundant subsystem (implicit equalities included).
pub fn irredundant(h: &ConeHRep) -> Irredundant {
    let m = h.rows.len();
    let equality: Vec<bool> = (0..m)
        .into_par_iter()
        .map(|i| {
            let all: Vec<&Vec<Q>> = h.rows.iter().collect();
            let neg: Vec<Q> = h.rows[i].iter().map(|x| -x).collect();
            implied(&all, &neg)
        })
        .collect();
    let candidates: Vec<usize> = (0..m).filter(|&i| !equality[i]).collect();
    let others_of = |i: usize, pool: &[usize]| -> Vec<&Vec<Q>> {
        pool.iter()
            .filter(|&&j| j != i)
            .map(|&j| &h.rows[j])
            .collect()
    };
    let flagged: Vec<bool> = candidates
        .par_iter()
        .map(|&i| implied(&others_of(i, &(0..m).collect::<Vec<_>>()), &h.rows[i]))
        .collect();
    let redundant: Vec<usize> = candidates
        .iter()
        .zip(&flagged)
        .filter(|(_, f)| **f)
        .map(|(i, _)| *i)
        .collect();
    let keep: Vec<usize> = (0..m).filter(|i| !redundant.contains(i)).collect();
    // the one-at-a-time flags are valid jointly only if the kept rows imply every flagged one
    let jointly = redundant
        .par_iter()
        .all(|&i| implied(&others_of(i, &keep), &h.rows[i]));
    let redundant = if jointly {
        redundant
    } else {
        let mut pool: Vec<usize> = (0..m).collect();
        let mut out = Vec::new();
        for &i in &candidates {
            if implied(&others_of(i, &pool), &h.rows[i]) {
                pool.retain(|&j| j != i);
                out.push(i);
            }
        }
        out
    };
    let status: Vec<RowStatus> = (0..m)
        .map(|i| {
            if equality[i] {
                RowStatus::ImplicitEquality
            } else if redundant.contains(&i) {
                RowStatus::Redundant
            } else {
                RowStatus::Irredundant
            }
        })
        .collect();
    let keep: Vec<usize> = (0..m)
        .filter(|&i| status[i] != RowStatus::Redundant)
        .collect();
    Irredundant {
        subsystem: h.subset(&keep),
        status,
    }
}

/// Extreme rays of a pointed cone.
pub fn extreme_rays(h: &ConeHRep) -> Result<ConeVRep> {
    let g = double_description(&h.rows, h.dim);
    if !g.lineality.is_empty() {
        return Err(Error::NotPointed {
            lineality: g.lineality.iter().map(|l| primitive(l)).collect(),
        });
    }
    let mut rays: Vec<Vec<BigInt>> = g.rays.iter().map(|r| primitive(r)).collect();
    rays.sort();
    rays.dedup();
    Ok(ConeVRep { dim: h.dim, rays })
}

/// Facets of the cone generated by `rays` (and the lineality space `lin`).
pub fn facets(dim: usize, rays: &[Vec<Q>], lin: &[Vec<Q>]) -> Facets {
    // the polar cone {a : a·r ≤ 0, a·l = 0} has the facet normals as extreme rays
    let mut rows: Vec<Vec<Q>> = rays.to_vec();
    for l in lin {
        rows.push(l.clone());
        rows.push(l.iter().map(|x| -x).collect());
    }
    let g = double_description(&rows, dim);
    let mut facet_rows: Vec<Vec<Q>> = g.rays.iter().map(|r| int_to_q(&primitive(r))).collect();
    facet_rows.sort();
    Facets {
        dim,
        rows: facet_rows,
        equations: g.lineality,
    }
}

impl ConeVRep {
    pub fn rational(&self) -> Vec<Vec<Q>> {
        self.rays.iter().map(|r| int_to_q(r)).collect()
    }

    pub fn facets(&self) -> Facets {
        facets(self.dim, &self.rational(), &[])
    }
}

/// `inner ⊆ outer`, decided by checking the generators of `inner` against the rows of `outer`.
pub fn cone_contains(outer: &ConeHRep, inner: &ConeHRep) -> bool {
    assert_eq!(outer.dim, inner.dim, "cones live in different spaces");
    let g = double_description(&inner.rows, inner.dim);
    g.rays.iter().all(|r| outer.contains_point(r))
        && g.lineality
            .iter()
            .all(|l| outer.rows.iter().all(|row| dot(row, l).is_zero()))
}

pub fn cones_equal(a: &ConeHRep, b: &ConeHRep) -> bool {
    cone_contains(a, b) && cone_contains(b, a)
}

/// Primitive integer ray in ambient coordinates.
pub fn ambient_ray(rs: &RootSystem, ray: &[BigInt]) -> Vec<BigInt> {
    primitive(&restore_point(rs, &int_to_q(ray)))
}

/// Splits an ambient ray into per-side vectors.
pub fn split_sides(rs: &RootSystem, ray: &[BigInt]) -> Vec<Vec<BigInt>> {
    ray.chunks(rs.ambient_dim).map(<[BigInt]>::to_vec).collect()
}
