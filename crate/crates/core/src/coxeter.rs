//! Rank-two spherical Coxeter complexes: root data for A2, B2 = C2 and G2 in
//! the coordinates the side-length tables are written in, the Weyl group with
//! reduced words, the `♯` involution and the dominance order.
//!
//! Coordinates:
//! * A2 lives in ℚ³ on the plane `x + y + z = 0`, chamber `x ≥ y ≥ z`.
//! * B2 lives in ℚ², chamber `x ≥ y ≥ 0`.
//! * G2 lives in ℚ² with the fundamental coweights as standard basis, chamber
//!   `x, y ≥ 0`, and inner product `3dx² + 3dx·dy + dy²`.
//!
//! Generator `w_i` (1-based, as used in Weyl words) is the simple reflection
//! fixing the `i`-th vertex `ζ_i` of the spherical chamber.

use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity, inverse, mat_mul, mat_vec, vec_mat, QMatrix};
use crate::rational::{dot, q, qf, qvec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootSystemName {
    A2,
    B2,
    G2,
}

impl RootSystemName {
    pub const ALL: [RootSystemName; 3] =
        [RootSystemName::A2, RootSystemName::B2, RootSystemName::G2];
}

impl fmt::Display for RootSystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootSystemName::A2 => "A2",
            RootSystemName::B2 => "B2",
            RootSystemName::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for RootSystemName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A2" => Ok(RootSystemName::A2),
            "B2" | "C2" => Ok(RootSystemName::B2),
            "G2" => Ok(RootSystemName::G2),
            _ => Err(Error::UnknownRootSystem(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: QMatrix,
    /// Reduced word in the generators `w_1`, `w_2` (1-based), lexicographically minimal.
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn act(&self, v: &[Q]) -> Vec<Q> {
        mat_vec(&self.matrix, v)
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

/// A vector in the closed Euclidean Weyl chamber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantVector(Vec<Q>);

impl DominantVector {
    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Q> {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: RootSystemName,
    pub ambient_dim: usize,
    pub gram: QMatrix,
    pub simple_reflections: Vec<QMatrix>,
    /// Root functional of each simple reflection (`reflection_roots[i]` vanishes on `ζ_{i+1}`).
    pub reflection_roots: Vec<Vec<Q>>,
    pub fundamental_weights: Vec<Vec<Q>>,
    pub fundamental_coweights: Vec<Vec<Q>>,
    /// Functionals that are `≥ 0` exactly on the Euclidean Weyl chamber.
    pub chamber_inequalities: Vec<Vec<Q>>,
    weyl: Vec<WeylElement>,
    longest: usize,
}

pub fn build_root_system(name: RootSystemName) -> RootSystem {
    let (ambient_dim, gram, reflection_roots, weights, coweights, chamber) = match name {
        RootSystemName::A2 => (
            3,
            identity(3),
            vec![qvec(&[0, 1, -1]), qvec(&[1, -1, 0])],
            vec![qvec(&[1, 0, 0]), qvec(&[0, 0, -1])],
            vec![
                vec![qf(2, 3), qf(-1, 3), qf(-1, 3)],
                vec![qf(1, 3), qf(1, 3), qf(-2, 3)],
            ],
            vec![qvec(&[1, -1, 0]), qvec(&[0, 1, -1])],
        ),
        RootSystemName::B2 => (
            2,
            identity(2),
            vec![qvec(&[0, 1]), qvec(&[1, -1])],
            vec![qvec(&[1, 0]), qvec(&[1, 1])],
            vec![qvec(&[1, 0]), qvec(&[1, 1])],
            vec![qvec(&[1, -1]), qvec(&[0, 1])],
        ),
        RootSystemName::G2 => (
            2,
            vec![vec![q(3), qf(3, 2)], vec![qf(3, 2), q(1)]],
            vec![qvec(&[0, 1]), qvec(&[1, 0])],
            vec![qvec(&[2, 1]), qvec(&[3, 2])],
            vec![qvec(&[1, 0]), qvec(&[0, 1])],
            vec![qvec(&[1, 0]), qvec(&[0, 1])],
        ),
    };
    let gram_inv = gram_inverse(&gram);
    let simple_reflections = reflection_roots
        .iter()
        .map(|a| reflection_matrix(a, &gram_inv))
        .collect();
    let mut rs = RootSystem {
        name,
        ambient_dim,
        gram,
        simple_reflections,
        reflection_roots,
        fundamental_weights: weights,
        fundamental_coweights: coweights,
        chamber_inequalities: chamber,
        weyl: Vec::new(),
        longest: 0,
    };
    rs.weyl = generate_weyl(&rs.simple_reflections, ambient_dim);
    rs.longest = (0..rs.weyl.len())
        .max_by_key(|&i| rs.weyl[i].length)
        .unwrap();
    rs
}

fn gram_inverse(gram: &QMatrix) -> QMatrix {
    inverse(gram).expect("gram matrix is nondegenerate")
}

/// `s(v) = v − α(v)·α^∨` with `α^∨ = 2 G⁻¹αᵀ / (α G⁻¹ αᵀ)`.
fn reflection_matrix(alpha: &[Q], gram_inv: &QMatrix) -> QMatrix {
    let coroot = coroot_of(alpha, gram_inv);
    let n = alpha.len();
    let mut m = identity(n);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x -= &coroot[i] * &alpha[j];
        }
    }
    m
}

fn coroot_of(alpha: &[Q], gram_inv: &QMatrix) -> Vec<Q> {
    let dual = mat_vec(gram_inv, alpha);
    let norm = dot(alpha, &dual);
    dual.iter().map(|x| x * q(2) / &norm).collect()
}

fn generate_weyl(gens: &[QMatrix], dim: usize) -> Vec<WeylElement> {
    let mut elems = vec![WeylElement {
        matrix: identity(dim),
        word: Vec::new(),
        length: 0,
    }];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &idx in &frontier {
            for (g, gen) in gens.iter().enumerate() {
                let m = mat_mul(&elems[idx].matrix, gen);
                if elems.iter().any(|e| e.matrix == m) {
                    continue;
                }
                let mut word = elems[idx].word.clone();
                word.push(g + 1);
                let length = word.len();
                elems.push(WeylElement {
                    matrix: m,
                    word,
                    length,
                });
                next.push(elems.len() - 1);
            }
        }
        frontier = next;
    }
    elems
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        2
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.weyl[self.longest]
    }

    pub fn identity_element(&self) -> &WeylElement {
        &self.weyl[0]
    }

    /// Index in [`RootSystem::weyl`] of the element with the given matrix.
    pub fn index_of(&self, matrix: &QMatrix) -> Option<usize> {
        self.weyl.iter().position(|e| &e.matrix == matrix)
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = identity(self.ambient_dim);
        for &g in word {
            let gen = self
                .simple_reflections
                .get(g.wrapping_sub(1))
                .ok_or(Error::BadWord(g))?;
            m = mat_mul(&m, gen);
        }
        let idx = self.index_of(&m).expect("products of generators lie in W");
        Ok(self.weyl[idx].clone())
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let m = mat_mul(&a.matrix, &b.matrix);
        self.weyl[self.index_of(&m).expect("W is closed")].clone()
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let m = inverse(&w.matrix).expect("Weyl elements are invertible");
        self.weyl[self.index_of(&m).expect("W is closed")].clone()
    }

    /// `⟨u, v⟩` for the invariant inner product.
    pub fn pairing(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &mat_vec(&self.gram, v))
    }

    /// The functional `f ∘ w⁻¹`, i.e. the action of `w` on weights.
    pub fn act_on_functional(&self, w: &WeylElement, f: &[Q]) -> Vec<Q> {
        vec_mat(f, &self.inverse(w).matrix)
    }

    /// Checks the chamber functionals (and the sum-zero plane for A2).
    pub fn check_dominant(&self, v: &[Q]) -> std::result::Result<(), String> {
        if v.len() != self.ambient_dim {
            return Err(format!(
                "expected {} coordinates, got {}",
                self.ambient_dim,
                v.len()
            ));
        }
        if self.name == RootSystemName::A2 && !v.iter().sum::<Q>().is_zero() {
            return Err("A2 coordinates must sum to zero".into());
        }
        for f in &self.chamber_inequalities {
            if dot(f, v).is_negative() {
                return Err(format!("chamber functional {f:?} is negative"));
            }
        }
        Ok(())
    }

    pub fn is_dominant(&self, v: &[Q]) -> bool {
        self.check_dominant(v).is_ok()
    }

    pub fn dominant(&self, v: Vec<Q>) -> Result<DominantVector> {
        self.check_dominant(&v)
            .map_err(|reason| Error::NotDominant { side: 0, reason })?;
        Ok(DominantVector(v))
    }

    /// All roots as functionals, positive ones first (positive on the open chamber).
    pub fn positive_roots(&self) -> Vec<Vec<Q>> {
        let interior: Vec<Q> = self.fundamental_coweights[0]
            .iter()
            .zip(&self.fundamental_coweights[1])
            .map(|(a, b)| a + b)
            .collect();
        let mut roots: Vec<Vec<Q>> = Vec::new();
        for w in &self.weyl {
            for a in &self.reflection_roots {
                let r = self.act_on_functional(w, a);
                if dot(&r, &interior).is_positive() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        roots
    }

    /// The orthogonal reflection in the hyperplane `ker root`.
    pub fn reflection(&self, root: &[Q]) -> QMatrix {
        reflection_matrix(root, &gram_inverse(&self.gram))
    }

    /// Coroot vector of a root functional.
    pub fn coroot(&self, alpha: &[Q]) -> Vec<Q> {
        coroot_of(alpha, &gram_inverse(&self.gram))
    }

    /// Length of the coset `w·W_{ζ_vertex}` in `W / ⟨w_vertex⟩` (vertex is 1-based).
    pub fn coset_length(&self, w: &WeylElement, vertex: usize) -> usize {
        let other = mat_mul(&w.matrix, &self.simple_reflections[vertex - 1]);
        let other_len = self.weyl[self.index_of(&other).unwrap()].length;
        w.length.min(other_len)
    }
}

pub fn enumerate_weyl(rs: &RootSystem) -> Vec<WeylElement> {
    rs.weyl.clone()
}

/// Returns `(d, w)` with `d` dominant and `w·d = v`; `w` is the shortest such element.
pub fn dominant_representative(rs: &RootSystem, v: &[Q]) -> (DominantVector, WeylElement) {
    let mut best: Option<(Vec<Q>, &WeylElement)> = None;
    for w in &rs.weyl {
        let inv = rs.inverse(w);
        let d = inv.act(v);
        let in_chamber = rs
            .chamber_inequalities
            .iter()
            .all(|f| !dot(f, &d).is_negative());
        if in_chamber && best.as_ref().is_none_or(|(_, b)| w.length < b.length) {
            best = Some((d, w));
        }
    }
    let (d, w) = best.expect("every vector has a dominant representative");
    (DominantVector(d), w.clone())
}

/// `h♯ = −w₀h`.
pub fn sharp(rs: &RootSystem, h: &DominantVector) -> DominantVector {
    DominantVector(sharp_vec(rs, h.coords()))
}

pub(crate) fn sharp_vec(rs: &RootSystem, h: &[Q]) -> Vec<Q> {
    rs.longest_element()
        .act(h)
        .into_iter()
        .map(|x| -x)
        .collect()
}

/// `a ≤ b` iff `λ(b − a) ≥ 0` for both fundamental weights.
pub fn dominance_leq(rs: &RootSystem, a: &[Q], b: &[Q]) -> bool {
    let diff: Vec<Q> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    rs.fundamental_weights
        .iter()
        .all(|lam| !dot(lam, &diff).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all() -> Vec<RootSystem> {
        RootSystemName::ALL
            .iter()
            .map(|&n| build_root_system(n))
            .collect()
    }

    #[test]
    fn weyl_orders_and_longest_elements() {
        for (rs, order, longest) in all()
            .iter()
            .zip([6, 8, 12])
            .zip([3, 4, 6])
            .map(|((r, o), l)| (r, o, l))
        {
            let w = enumerate_weyl(rs);
            assert_eq!(w.len(), order, "{}", rs.name);
            assert_eq!(w.iter().filter(|e| e.length == longest).count(), 1);
            assert_eq!(rs.longest_element().length, longest);
            assert!(w[0].is_identity());
            assert_eq!(w[0].matrix, identity(rs.ambient_dim));
            for e in &w {
                assert_eq!(rs.element_from_word(&e.word).unwrap().matrix, e.matrix);
                for f in &w {
                    assert!(rs.index_of(&mat_mul(&e.matrix, &f.matrix)).is_some());
                }
            }
        }
    }

    #[test]
    fn reflections_are_isometric_involutions() {
        for rs in all() {
            for s in &rs.simple_reflections {
                assert_eq!(mat_mul(s, s), identity(rs.ambient_dim));
            }
            for (i, s) in rs.simple_reflections.iter().enumerate() {
                // w_i fixes ζ_i
                assert_eq!(
                    mat_vec(s, &rs.fundamental_coweights[i]),
                    rs.fundamental_coweights[i]
                );
            }
            for z in &rs.fundamental_coweights {
                assert!(rs.is_dominant(z));
            }
        }
    }

    #[test]
    fn fundamental_weights_match_tables() {
        let a2 = build_root_system(RootSystemName::A2);
        assert_eq!(
            a2.fundamental_weights,
            vec![qvec(&[1, 0, 0]), qvec(&[0, 0, -1])]
        );
        let b2 = build_root_system(RootSystemName::B2);
        assert_eq!(b2.fundamental_weights, vec![qvec(&[1, 0]), qvec(&[1, 1])]);
        let g2 = build_root_system(RootSystemName::G2);
        let e1 = qvec(&[1, 0]);
        let e2 = qvec(&[0, 1]);
        assert_eq!(g2.pairing(&e1, &e1), q(3) * g2.pairing(&e2, &e2));
    }

    #[test]
    fn weights_are_gram_duals_of_coweights() {
        for rs in all() {
            for (lam, z) in rs.fundamental_weights.iter().zip(&rs.fundamental_coweights) {
                let g = mat_vec(&rs.gram, z);
                // proportional on the chamber's span: compare on the coweights
                let r0 =
                    dot(lam, &rs.fundamental_coweights[0]) * dot(&g, &rs.fundamental_coweights[1]);
                let r1 =
                    dot(lam, &rs.fundamental_coweights[1]) * dot(&g, &rs.fundamental_coweights[0]);
                assert_eq!(r0, r1, "{}", rs.name);
            }
        }
    }

    #[test]
    fn dominant_representatives() {
        let b2 = build_root_system(RootSystemName::B2);
        let (d, w) = dominant_representative(&b2, &qvec(&[-1, 2]));
        assert_eq!(d.coords(), qvec(&[2, 1]).as_slice());
        assert!(w.length >= 1);
        assert_eq!(w.act(d.coords()), qvec(&[-1, 2]));

        let a2 = build_root_system(RootSystemName::A2);
        let (d, _) = dominant_representative(&a2, &qvec(&[-1, -1, 2]));
        assert_eq!(d.coords(), qvec(&[2, -1, -1]).as_slice());

        let v = qvec(&[3, 1, -4]);
        let (d, w) = dominant_representative(&a2, &v);
        assert_eq!(d.coords(), v.as_slice());
        assert!(w.is_identity());
    }

    #[test]
    fn sharp_examples() {
        let a2 = build_root_system(RootSystemName::A2);
        let h = a2.dominant(qvec(&[2, -1, -1])).unwrap();
        assert_eq!(sharp(&a2, &h).coords(), qvec(&[1, 1, -2]).as_slice());
        let b2 = build_root_system(RootSystemName::B2);
        let h = b2.dominant(qvec(&[5, 2])).unwrap();
        assert_eq!(sharp(&b2, &h), h);
        let g2 = build_root_system(RootSystemName::G2);
        let zero = g2.dominant(qvec(&[0, 0])).unwrap();
        assert_eq!(sharp(&g2, &zero), zero);
    }

    #[test]
    fn dominance_examples() {
        let b2 = build_root_system(RootSystemName::B2);
        assert!(dominance_leq(&b2, &qvec(&[0, 0]), &qvec(&[1, 0])));
        assert!(dominance_leq(&b2, &qvec(&[3, 1]), &qvec(&[3, 1])));
        let a2 = build_root_system(RootSystemName::A2);
        assert!(!dominance_leq(&a2, &qvec(&[2, -1, -1]), &qvec(&[1, 1, -2])));
    }

    #[test]
    fn w0_maps_chamber_to_its_negative() {
        for rs in all() {
            let w0 = rs.longest_element();
            for f in &rs.chamber_inequalities {
                for z in &rs.fundamental_coweights {
                    assert!(!dot(f, &w0.act(z)).is_positive());
                }
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!("D4".parse::<RootSystemName>().is_err());
        assert_eq!("c2".parse::<RootSystemName>().unwrap(), RootSystemName::B2);
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec((-20i64..20, 1i64..6), dim)
            .prop_map(|v| v.into_iter().map(|(n, d)| qf(n, d)).collect())
    }

    fn project_a2(rs: &RootSystem, mut v: Vec<Q>) -> Vec<Q> {
        if rs.name == RootSystemName::A2 {
            let s: Q = v.iter().sum::<Q>() / q(3);
            for x in v.iter_mut() {
                *x -= &s;
            }
        }
        v
    }

    proptest! {
        #[test]
        fn pairings_are_weyl_invariant(which in 0usize..3, u in small_vec(3), v in small_vec(3)) {
            let rs = build_root_system(RootSystemName::ALL[which]);
            let d = rs.ambient_dim;
            let (u, v) = (project_a2(&rs, u[..d].to_vec()), project_a2(&rs, v[..d].to_vec()));
            for w in rs.weyl() {
                prop_assert_eq!(rs.pairing(&w.act(&u), &w.act(&v)), rs.pairing(&u, &v));
            }
        }

        #[test]
        fn folding_is_weyl_independent(which in 0usize..3, v in small_vec(3)) {
            let rs = build_root_system(RootSystemName::ALL[which]);
            let v = project_a2(&rs, v[..rs.ambient_dim].to_vec());
            let (d, w) = dominant_representative(&rs, &v);
            prop_assert_eq!(w.act(d.coords()), v.clone());
            for g in rs.weyl() {
                let (d2, _) = dominant_representative(&rs, &g.act(&v));
                prop_assert_eq!(&d2, &d);
            }
        }

        #[test]
        fn sharp_is_an_order_preserving_involution(which in 0usize..3, a in small_vec(3), b in small_vec(3)) {
            let rs = build_root_system(RootSystemName::ALL[which]);
            let a = dominant_representative(&rs, &project_a2(&rs, a[..rs.ambient_dim].to_vec())).0;
            let b = dominant_representative(&rs, &project_a2(&rs, b[..rs.ambient_dim].to_vec())).0;
            prop_assert_eq!(sharp(&rs, &sharp(&rs, &a)), a.clone());
            prop_assert!(rs.is_dominant(sharp(&rs, &a).coords()));
            prop_assert_eq!(
                dominance_leq(&rs, a.coords(), b.coords()),
                dominance_leq(&rs, sharp(&rs, &a).coords(), sharp(&rs, &b).coords())
            );
        }
    }
}
