//! Integral cohomology of the two generalized Grassmannians `G/P₁`, `G/P₂`
//! of a rank-two group.
//!
//! Each graded piece `H^{2j}` has rank one, generated by the Schubert class
//! `γ_j`. Powers of the hyperplane class satisfy `γ₁^j = a_j γ_j`, so every
//! structure constant follows from the Chevalley row `b_j` (with
//! `γ₁·γ_j = b_j γ_{j+1}`) by the ratio rule `c_{jk} = a_{j+k} / (a_j a_k)`.

use num::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coxeter::{RootSystem, RootSystemName, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::mat_mul;
use crate::rational::{dot, primitive, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchubertClass {
    pub degree: usize,
    /// Weight `λ` of the Schubert cycle of complex dimension `m − 1 − degree`,
    /// as a primitive integer functional.
    #[serde(with = "crate::rational::serde_q::vec")]
    pub weight: Vec<Q>,
    /// The vertex `wζ` of the Coxeter complex labelling the same cycle.
    #[serde(with = "crate::rational::serde_q::vec")]
    pub coweight: Vec<Q>,
    /// Minimal coset representative; its length is the cycle dimension.
    #[serde(skip)]
    pub coset_rep: WeylElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRing {
    pub root_system: RootSystemName,
    /// 1-based index of the chamber vertex `ζ_i` (the Grassmannian `G/P_i`).
    pub vertex: usize,
    pub m: usize,
    pub classes: Vec<SchubertClass>,
    pub chevalley_row: Vec<u64>,
    pub a: Vec<u64>,
    pub structure: Vec<Vec<u64>>,
}

impl CohomologyRing {
    /// Builds the full ring: class table, Chevalley row and structure constants.
    pub fn new(rs: &RootSystem, vertex: usize) -> Result<Self> {
        let mut ring = class_table(rs, vertex)?;
        ring.chevalley_row = chevalley_multiply(rs, &ring);
        structure_constants(&mut ring)?;
        Ok(ring)
    }

    pub fn top_degree(&self) -> usize {
        self.m - 1
    }

    /// `c_{jk}` with `γ_j γ_k = c_{jk} γ_{j+k}`; zero beyond the top degree.
    pub fn product(&self, j: usize, k: usize) -> u64 {
        self.structure[j][k]
    }

    /// Coefficient of `[pt]` in `γ_{j₁}⋯γ_{jₙ}` when the degrees add up to `m − 1`.
    pub fn point_coefficient(&self, degrees: &[usize]) -> Option<u64> {
        if degrees.iter().sum::<usize>() != self.top_degree() {
            return None;
        }
        let denom: u64 = degrees.iter().map(|&j| self.a[j]).product();
        Some(self.a[self.top_degree()] / denom)
    }

    pub fn grassmannian_label(&self) -> String {
        format!("{} P{}", self.root_system, self.vertex)
    }
}

/// Schubert classes of `G/P_vertex` with their weights; the multiplicative
/// data is left empty (see [`chevalley_multiply`], [`structure_constants`]).
pub fn class_table(rs: &RootSystem, vertex: usize) -> Result<CohomologyRing> {
    if vertex != 1 && vertex != 2 {
        return Err(Error::UnknownVertex(format!("P{vertex}")));
    }
    let lambda = &rs.fundamental_weights[vertex - 1];
    let zeta = &rs.fundamental_coweights[vertex - 1];
    let m = rs.weyl().len() / 2;

    // minimal coset representative for each cycle dimension
    let mut reps: Vec<Option<WeylElement>> = vec![None; m];
    for w in rs.weyl() {
        let len = rs.coset_length(w, vertex);
        if w.length == len && reps[len].is_none() {
            reps[len] = Some(w.clone());
        }
    }
    let classes = (0..m)
        .map(|degree| {
            let dim = m - 1 - degree;
            let w = reps[dim].clone().expect("one coset per length");
            let weight = rs.act_on_functional(&w, lambda);
            let weight = primitive(&weight)
                .into_iter()
                .map(Q::from_integer)
                .collect();
            SchubertClass {
                degree,
                weight,
                coweight: w.act(zeta),
                coset_rep: w,
            }
        })
        .collect();
    Ok(CohomologyRing {
        root_system: rs.name,
        vertex,
        m,
        classes,
        chevalley_row: Vec::new(),
        a: Vec::new(),
        structure: Vec::new(),
    })
}

/// The hyperplane-class row `b_j` of `γ₁·γ_j = b_j γ_{j+1}`, from Chevalley's
/// formula `σ_{s_α}·σ_w = Σ_β ⟨ω_P, β^∨⟩ σ_{w s_β}` summed over positive roots
/// `β` for which `w s_β` lies in the coset one step longer.
pub fn chevalley_multiply(rs: &RootSystem, ring: &CohomologyRing) -> Vec<u64> {
    let vertex = ring.vertex;
    let lambda = &rs.fundamental_weights[vertex - 1];
    // the simple root not vanishing on ζ normalizes ω_P
    let alpha = &rs.reflection_roots[2 - vertex];
    let unit = dot(lambda, &rs.coroot(alpha));
    let roots = rs.positive_roots();
    let fixing = &rs.simple_reflections[vertex - 1];

    // the coset of length j indexes the degree-j class in Chevalley's formula
    let coset = |len: usize| &ring.classes[ring.m - 1 - len].coset_rep;
    (0..ring.m - 1)
        .map(|j| {
            let w = coset(j);
            let target = coset(j + 1);
            let target_alt = mat_mul(&target.matrix, fixing);
            let mut coeff = Q::zero();
            for beta in &roots {
                let s_beta = rs.reflection(beta);
                let ws = mat_mul(&w.matrix, &s_beta);
                if ws == target.matrix || ws == target_alt {
                    coeff += dot(lambda, &rs.coroot(beta)) / &unit;
                }
            }
            assert!(
                coeff.is_integer() && coeff.is_positive(),
                "Chevalley coefficient {coeff}"
            );
            coeff.to_integer().to_u64().unwrap()
        })
        .collect()
}

/// Fills `a` and `structure` from the Chevalley row via the ratio rule.
pub fn structure_constants(ring: &mut CohomologyRing) -> Result<()> {
    let m = ring.m;
    let mut a = vec![1u64; m];
    for j in 0..m - 1 {
        a[j + 1] = a[j] * ring.chevalley_row[j];
    }
    let mut structure = vec![vec![0u64; m]; m];
    for j in 0..m {
        for k in 0..m - j {
            let num = a[j + k];
            let den = a[j] * a[k];
            if !num.is_multiple_of(den) {
                return Err(Error::NonIntegralStructureConstant {
                    left: j,
                    right: k,
                    total: j + k,
                });
            }
            structure[j][k] = num / den;
        }
    }
    ring.a = a;
    ring.structure = structure;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductMode {
    /// The product equals the point class.
    ExactPoint,
    /// The product is any nonzero multiple of the point class.
    Nonzero,
}

/// Ordered degree tuples `(j₁,…,jₙ)` whose Schubert product is (a multiple of) `[pt]`,
/// in lexicographically decreasing order.
pub fn point_products(ring: &CohomologyRing, n: usize, mode: ProductMode) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    compositions(ring.top_degree(), n, &mut cur, &mut out);
    out.retain(|t| match mode {
        ProductMode::Nonzero => true,
        ProductMode::ExactPoint => ring.point_coefficient(t) == Some(1),
    });
    out
}

fn compositions(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if slots == 1 {
        cur.push(rest);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for j in (0..=rest).rev() {
        cur.push(j);
        compositions(rest - j, slots - 1, cur, out);
        cur.pop();
    }
}

/// Renders a coefficient times `γ_k` the way the multiplication tables print it.
pub fn format_term(c: u64, k: usize) -> String {
    match (c, k) {
        (0, _) => "0".into(),
        (1, 0) => "1".into(),
        (1, k) => format!("γ{k}"),
        (c, 0) => format!("{c}"),
        (c, k) => format!("{c}γ{k}"),
    }
}

/// The multiplication table in row/column layout, header included.
pub fn format_table(ring: &CohomologyRing) -> String {
    let m = ring.m;
    let header = |j: usize| {
        if j == 0 {
            "1".to_string()
        } else {
            format!("γ{j}")
        }
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut head = vec![format!("H*({})", ring.grassmannian_label())];
    head.extend((0..m).map(header));
    rows.push(head);
    for j in 0..m {
        let mut row = vec![header(j)];
        for k in 0..m {
            row.push(if j + k < m {
                format_term(ring.product(j, k), j + k)
            } else {
                "0".into()
            });
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..=m)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap())
        .collect();
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        s.push_str(cells.join(" | ").trim_end());
        s.push('\n');
    }
    s
}
