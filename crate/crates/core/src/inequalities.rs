//! Stability inequalities cutting out the side-length polyhedron, the weak
//! (triangle-type) subsystem, and exact membership tests.

use std::collections::HashSet;

use num::{BigInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{sharp, RootSystem, RootSystemName};
use crate::error::{Error, Result};
use crate::linalg::{mat_mul, vec_mat, QMatrix};
use crate::lp::in_convex_hull;
use crate::rational::{primitive, Q};
use crate::schubert::{point_products, CohomologyRing, ProductMode};

/// Largest number of sides accepted unless a caller raises the limit.
pub const DEFAULT_MAX_SIDES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// From a Schubert product `γ_{j₁}⋯γ_{jₙ} = c·[pt]` on `G/P_grassmannian`.
    Schubert {
        grassmannian: usize,
        degrees: Vec<usize>,
    },
    /// `⟨λ_form, w h_first♯⟩ ≤ ⟨λ_form, w h_second + Σ_{k≠first,second} h_k⟩`.
    Weak {
        word: Vec<usize>,
        first: usize,
        second: usize,
        form: usize,
    },
    /// `chamber functional ≥ 0` on one side.
    Chamber { side: usize, functional: usize },
}

/// `Σ_i ⟨coefficients[i], h_i⟩ ≤ 0` with primitive integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInequality {
    pub coefficients: Vec<Vec<i64>>,
    pub provenance: Provenance,
}

impl LinearInequality {
    /// Normalizes to primitive integers; `None` for the zero row.
    pub fn new(rows: &[Vec<Q>], provenance: Provenance) -> Option<Self> {
        let width = rows.first().map_or(0, Vec::len);
        let flat: Vec<Q> = rows.iter().flatten().cloned().collect();
        if flat.iter().all(Zero::is_zero) {
            return None;
        }
        let ints = primitive(&flat);
        let coefficients = ints
            .chunks(width)
            .map(|c| {
                c.iter()
                    .map(|x| x.to_i64().expect("coefficient fits in i64"))
                    .collect()
            })
            .collect();
        Some(LinearInequality {
            coefficients,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Q>> {
        self.coefficients
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Q::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect()
    }

    pub fn flat(&self) -> Vec<i64> {
        self.coefficients.iter().flatten().copied().collect()
    }

    pub fn evaluate(&self, h: &[Vec<Q>]) -> Q {
        self.coefficients
            .iter()
            .zip(h)
            .map(|(c, x)| {
                c.iter()
                    .zip(x)
                    .map(|(a, b)| b * Q::from_integer(BigInt::from(*a)))
                    .sum::<Q>()
            })
            .sum()
    }

    /// The row after relabelling sides: side `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LinearInequality {
        let mut coefficients = self.coefficients.clone();
        for (i, &p) in perm.iter().enumerate() {
            coefficients[p] = self.coefficients[i].clone();
        }
        LinearInequality {
            coefficients,
            provenance: self.provenance.clone(),
        }
    }

    /// Key identifying the functional on the actual domain (for A2, modulo
    /// `(1,1,1)` on each side).
    pub fn key(&self, rs: &RootSystem) -> Vec<i64> {
        reduced_key(rs, &self.coefficients)
    }

    /// Key identifying the Sₙ-orbit of the row.
    pub fn orbit_key(&self, rs: &RootSystem) -> Vec<i64> {
        let k = self.key(rs);
        let w = reduced_width(rs);
        let mut sides: Vec<&[i64]> = k.chunks(w).collect();
        sides.sort_unstable_by(|a, b| b.cmp(a));
        sides.concat()
    }

    /// Renders as `a b | c d | ... <= 0`.
    pub fn to_text(&self) -> String {
        let sides: Vec<String> = self
            .coefficients
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{} <= 0", sides.join(" | "))
    }

    /// Renders with coordinate names, as `x1 + z2 + z3 <= 0`.
    pub fn to_symbolic(&self) -> String {
        let names: &[&str] = if self.coefficients.first().map_or(0, Vec::len) == 3 {
            &["x", "y", "z"]
        } else {
            &["x", "y"]
        };
        let mut out = String::new();
        for (i, side) in self.coefficients.iter().enumerate() {
            for (c, name) in side.iter().zip(names) {
                if *c == 0 {
                    continue;
                }
                let sign = if *c < 0 { "-" } else { "+" };
                let mag = c.abs();
                let term = if mag == 1 {
                    format!("{name}{}", i + 1)
                } else {
                    format!("{mag}{name}{}", i + 1)
                };
                if out.is_empty() {
                    out = if *c < 0 { format!("-{term}") } else { term };
                } else {
                    out.push_str(&format!(" {sign} {term}"));
                }
            }
        }
        format!("{out} <= 0")
    }
}

fn reduced_width(rs: &RootSystem) -> usize {
    if rs.name == RootSystemName::A2 {
        2
    } else {
        rs.ambient_dim
    }
}

fn reduced_key(rs: &RootSystem, rows: &[Vec<i64>]) -> Vec<i64> {
    let flat: Vec<i64> = if rs.name == RootSystemName::A2 {
        rows.iter()
            .flat_map(|r| [r[0] - r[2], r[1] - r[2]])
            .collect()
    } else {
        rows.iter().flatten().copied().collect()
    };
    let g = flat.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x));
    if g > 1 {
        flat.iter().map(|x| x / g).collect()
    } else {
        flat
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub root_system: RootSystemName,
    pub n: usize,
    pub inequalities: Vec<LinearInequality>,
    pub includes_chamber: bool,
}

impl InequalitySystem {
    pub fn empty(root_system: RootSystemName, n: usize) -> Self {
        InequalitySystem {
            root_system,
            n,
            inequalities: Vec::new(),
            includes_chamber: false,
        }
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Appends rows whose functional is not already present.
    pub fn extend_dedup(
        &mut self,
        rs: &RootSystem,
        rows: impl IntoIterator<Item = LinearInequality>,
    ) {
        let mut seen: HashSet<Vec<i64>> = self.inequalities.iter().map(|r| r.key(rs)).collect();
        for row in rows {
            let key = row.key(rs);
            if key.iter().any(|&x| x != 0) && seen.insert(key) {
                self.inequalities.push(row);
            }
        }
    }

    /// Adds `chamber functional ≥ 0` for every side.
    pub fn add_chamber(&mut self, rs: &RootSystem) {
        let rows = chamber_rows(rs, self.n);
        self.extend_dedup(rs, rows);
        self.includes_chamber = true;
    }

    /// Rows sorted lexicographically (descending) by coefficients, keeping provenance groups.
    pub fn sorted(&self) -> InequalitySystem {
        let mut out = self.clone();
        out.inequalities.sort_by(|a, b| {
            group(&a.provenance)
                .cmp(&group(&b.provenance))
                .then_with(|| b.flat().cmp(&a.flat()))
        });
        out
    }

    /// One row per Sₙ-orbit: the first one met in generation order.
    pub fn orbit_representatives(&self, rs: &RootSystem) -> Vec<&LinearInequality> {
        let mut seen = HashSet::new();
        self.inequalities
            .iter()
            .filter(|r| seen.insert(r.orbit_key(rs)))
            .collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Vec<Q>>> {
        self.inequalities
            .iter()
            .map(LinearInequality::rational_rows)
            .collect()
    }
}

fn group(p: &Provenance) -> (usize, usize) {
    match p {
        Provenance::Schubert { grassmannian, .. } => (0, *grassmannian),
        Provenance::Weak { .. } => (1, 0),
        Provenance::Chamber { .. } => (2, 0),
    }
}

fn check_sides(n: usize, limit: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewSides(n));
    }
    if n > limit {
        return Err(Error::TooManySides { n, limit });
    }
    Ok(())
}

fn chamber_rows(rs: &RootSystem, n: usize) -> Vec<LinearInequality> {
    let zero = vec![Q::zero(); rs.ambient_dim];
    let mut out = Vec::new();
    for side in 0..n {
        for (k, f) in rs.chamber_inequalities.iter().enumerate() {
            let mut rows = vec![zero.clone(); n];
            rows[side] = f.iter().map(|x| -x).collect();
            let prov = Provenance::Chamber {
                side: side + 1,
                functional: k + 1,
            };
            out.extend(LinearInequality::new(&rows, prov));
        }
    }
    out
}

/// The system of `Σ_i λ^{(j_i)}(h_i) ≤ 0` over both Grassmannians and every
/// admissible degree tuple, with at most [`DEFAULT_MAX_SIDES`] sides.
pub fn stability_system(
    rs: &RootSystem,
    n: usize,
    mode: ProductMode,
    with_chamber: bool,
) -> Result<InequalitySystem> {
    stability_system_with_limit(rs, n, mode, with_chamber, DEFAULT_MAX_SIDES)
}

pub fn stability_system_with_limit(
    rs: &RootSystem,
    n: usize,
    mode: ProductMode,
    with_chamber: bool,
    limit: usize,
) -> Result<InequalitySystem> {
    check_sides(n, limit)?;
    let rings = [CohomologyRing::new(rs, 1)?, CohomologyRing::new(rs, 2)?];
    let batches: Vec<Vec<LinearInequality>> = rings
        .par_iter()
        .map(|ring| {
            point_products(ring, n, mode)
                .into_par_iter()
                .filter_map(|degrees| {
                    let rows: Vec<Vec<Q>> = degrees
                        .iter()
                        .map(|&j| ring.classes[j].weight.clone())
                        .collect();
                    let prov = Provenance::Schubert {
                        grassmannian: ring.vertex,
                        degrees,
                    };
                    LinearInequality::new(&rows, prov)
                })
                .collect()
        })
        .collect();
    let mut sys = InequalitySystem::empty(rs.name, n);
    for batch in batches {
        sys.extend_dedup(rs, batch);
    }
    if with_chamber {
        sys.add_chamber(rs);
    }
    Ok(sys)
}

/// Scalar rows of `w h_a♯ ≤ w h_b + Σ_{k≠a,b} h_k` in dominance order, for
/// every `w ∈ W`, every ordered pair of distinct sides and both fundamental weights.
pub fn weak_system(rs: &RootSystem, n: usize) -> Result<InequalitySystem> {
    check_sides(n, DEFAULT_MAX_SIDES)?;
    let w0 = &rs.longest_element().matrix;
    let mut rows = Vec::new();
    for w in rs.weyl() {
        let ww0: QMatrix = mat_mul(&w.matrix, w0);
        for first in 0..n {
            for second in 0..n {
                if first == second {
                    continue;
                }
                for (form, lam) in rs.fundamental_weights.iter().enumerate() {
                    let r = weak_row(n, lam, &w.matrix, &ww0, first, second);
                    let prov = Provenance::Weak {
                        word: w.word.clone(),
                        first: first + 1,
                        second: second + 1,
                        form: form + 1,
                    };
                    rows.extend(LinearInequality::new(&r, prov));
                }
            }
        }
    }
    let mut sys = InequalitySystem::empty(rs.name, n);
    sys.extend_dedup(rs, rows);
    Ok(sys)
}

fn weak_row(
    n: usize,
    lam: &[Q],
    w: &QMatrix,
    ww0: &QMatrix,
    first: usize,
    second: usize,
) -> Vec<Vec<Q>> {
    let neg = |v: Vec<Q>| -> Vec<Q> { v.into_iter().map(|x| -x).collect() };
    let rest = neg(lam.to_vec());
    let mut rows = vec![rest; n];
    // λ(w h♯) = −λ·M_w·M_{w₀}·h
    rows[first] = neg(vec_mat(lam, ww0));
    rows[second] = neg(vec_mat(lam, w));
    rows
}

/// Decides `h₁♯ − h₂ ∈ conv(W·(h₃ + ⋯ + hₙ))` by exact linear feasibility.
pub fn weak_geometric_test(rs: &RootSystem, h: &[crate::coxeter::DominantVector]) -> bool {
    let dim = rs.ambient_dim;
    let target: Vec<Q> = sharp(rs, &h[0])
        .coords()
        .iter()
        .zip(h[1].coords())
        .map(|(a, b)| a - b)
        .collect();
    let mut rest = vec![Q::zero(); dim];
    for x in &h[2..] {
        for (r, c) in rest.iter_mut().zip(x.coords()) {
            *r += c;
        }
    }
    let mut orbit: Vec<Vec<Q>> = Vec::new();
    for w in rs.weyl() {
        let p = w.act(&rest);
        if !orbit.contains(&p) {
            orbit.push(p);
        }
    }
    in_convex_hull(&orbit, &target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    /// Every row holds; `tight` lists the rows attained with equality.
    Member {
        tight: Vec<usize>,
    },
    NonMember {
        violated: Vec<usize>,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Evaluates every row of `system` on `h` (each side must be dominant).
pub fn membership(rs: &RootSystem, system: &InequalitySystem, h: &[Vec<Q>]) -> Result<Membership> {
    if h.len() != system.n {
        return Err(Error::Dimension {
            expected: system.n,
            got: h.len(),
        });
    }
    for (side, v) in h.iter().enumerate() {
        rs.check_dominant(v).map_err(|reason| Error::NotDominant {
            side: side + 1,
            reason,
        })?;
    }
    let mut tight = Vec::new();
    let mut violated = Vec::new();
    for (i, row) in system.inequalities.iter().enumerate() {
        let v = row.evaluate(h);
        if v.is_positive() {
            violated.push(i);
        } else if v.is_zero() {
            tight.push(i);
        }
    }
    Ok(if violated.is_empty() {
        Membership::Member { tight }
    } else {
        Membership::NonMember { violated }
    })
}
