//! Weighted configurations at infinity and their stability.
//!
//! Two models: finitely many weighted ideal points in one apartment of a
//! rank-two building (any root system), and finitely supported measures on
//! Grassmannians of `SL(n)` or of an isotropic-flag variety.

use std::collections::BTreeSet;
use std::str::FromStr;

use num::{BigInt, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{dominant_representative, RootSystem, RootSystemName, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::{determinant, QMatrix, Subspace};
use crate::rational::{dot, q, Q};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApartmentPoint {
    /// Weyl word (1-based generators) placing the point.
    pub word: Vec<usize>,
    /// Dominant vector: its direction is the type, its length the mass.
    #[serde(with = "crate::rational::serde_q::vec")]
    pub h: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApartmentConfiguration {
    pub root_system: RootSystemName,
    pub points: Vec<ApartmentPoint>,
}

impl ApartmentConfiguration {
    /// Resolves words and checks that each `h` is dominant.
    pub fn resolve(&self, rs: &RootSystem) -> Result<Vec<(WeylElement, Vec<Q>)>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let w = rs.element_from_word(&p.word)?;
                rs.check_dominant(&p.h)
                    .map_err(|reason| Error::NotDominant {
                        side: i + 1,
                        reason,
                    })?;
                Ok((w, p.h.clone()))
            })
            .collect()
    }
}

/// `v = Σ w_i h_i`; the slope of the configuration at an ideal point `η` is `−⟨v, η⟩`.
pub fn closing_vector(rs: &RootSystem, cfg: &ApartmentConfiguration) -> Result<Vec<Q>> {
    let mut v = vec![Q::zero(); rs.ambient_dim];
    for (w, h) in cfg.resolve(rs)? {
        for (acc, x) in v.iter_mut().zip(w.act(&h)) {
            *acc += x;
        }
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HnVertex {
    /// Which chamber vertex `ζ_i` (1-based) the vertex is a translate of.
    pub vertex: usize,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub point: Vec<Q>,
    /// `⟨v, η⟩ > ⟨v, η'⟩` for every other `η'` in the Weyl orbit of `η`.
    pub unique_minimizer: bool,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ApartmentVerdict {
    Semistable {
        note: String,
    },
    Unstable {
        #[serde(with = "crate::rational::serde_q::vec")]
        direction: Vec<Q>,
        #[serde(with = "crate::rational::serde_q::vec")]
        dominant_type: Vec<Q>,
        /// Word of the shortest `w` with `w · dominant_type = direction`.
        word: Vec<usize>,
        hn_vertices: Vec<HnVertex>,
    },
}

impl ApartmentVerdict {
    pub fn is_unstable(&self) -> bool {
        matches!(self, ApartmentVerdict::Unstable { .. })
    }
}

/// Stability of an apartment configuration from the sign data of its closing vector.
pub fn apartment_semistability(
    rs: &RootSystem,
    cfg: &ApartmentConfiguration,
) -> Result<ApartmentVerdict> {
    let v = closing_vector(rs, cfg)?;
    if v.iter().all(Zero::is_zero) {
        return Ok(ApartmentVerdict::Semistable {
            note: "closing vector vanishes, so the slope is zero on the whole apartment; \
                   stability cannot be decided from apartment data"
                .into(),
        });
    }
    let (d, w) = dominant_representative(rs, &v);
    let mut hn_vertices = Vec::new();
    for (i, zeta) in rs.fundamental_coweights.iter().enumerate() {
        let f = &rs.chamber_inequalities[i];
        if dot(f, d.coords()).is_zero() {
            continue;
        }
        let eta = w.act(zeta);
        let mut orbit: Vec<Vec<Q>> = Vec::new();
        for u in rs.weyl() {
            let p = u.act(zeta);
            if !orbit.contains(&p) {
                orbit.push(p);
            }
        }
        let best = rs.pairing(&v, &eta);
        let unique_minimizer = orbit.iter().all(|p| *p == eta || rs.pairing(&v, p) < best);
        hn_vertices.push(HnVertex {
            vertex: i + 1,
            point: eta,
            unique_minimizer,
            orbit_size: orbit.len(),
        });
    }
    Ok(ApartmentVerdict::Unstable {
        direction: v,
        dominant_type: d.into_inner(),
        word: w.word.clone(),
        hn_vertices,
    })
}

/// `cos ∠(U, V) = numerator / √radicand` on the Tits boundary of `SL(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsCosine {
    pub numerator: i64,
    pub radicand: i64,
}

impl TitsCosine {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / (self.radicand as f64).sqrt()
    }
}

pub fn sl_tits_cosine(u: &Subspace, v: &Subspace) -> Result<TitsCosine> {
    let n = u.ambient as i64;
    if v.ambient != u.ambient {
        return Err(Error::Dimension {
            expected: u.ambient,
            got: v.ambient,
        });
    }
    let p = u.dim() as i64;
    let qd = v.dim() as i64;
    for d in [p, qd] {
        if d == 0 || d == n {
            return Err(Error::Subspace(format!(
                "dimension {d} is trivial in ambient dimension {n}"
            )));
        }
    }
    let s = u.intersection(v).dim() as i64;
    Ok(TitsCosine {
        numerator: s * n - p * qd,
        radicand: p * (n - p) * qd * (n - qd),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atom {
    #[serde(with = "crate::rational::serde_q::mat")]
    pub basis: QMatrix,
    #[serde(with = "crate::rational::serde_q")]
    pub mass: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrassmannianMeasure {
    pub n: usize,
    pub q: usize,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::rational::serde_q::opt_mat"
    )]
    pub form: Option<QMatrix>,
    pub atoms: Vec<Atom>,
}

impl GrassmannianMeasure {
    pub fn total_mass(&self) -> Q {
        self.atoms.iter().map(|a| a.mass.clone()).sum()
    }

    /// Validates ranks, masses and (when a form is present) isotropy.
    pub fn subspaces(&self) -> Result<Vec<Subspace>> {
        if let Some(b) = &self.form {
            check_form(b, self.n)?;
        }
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if !a.mass.is_positive() {
                    return Err(Error::Subspace(format!(
                        "atom {} has non-positive mass",
                        i + 1
                    )));
                }
                if a.basis.iter().any(|r| r.len() != self.n) {
                    return Err(Error::Dimension {
                        expected: self.n,
                        got: a.basis[0].len(),
                    });
                }
                let s = Subspace::span(self.n, &a.basis);
                if s.dim() != self.q {
                    return Err(Error::Subspace(format!(
                        "atom {} has rank {}, expected {}",
                        i + 1,
                        s.dim(),
                        self.q
                    )));
                }
                if let Some(b) = &self.form {
                    if !s.is_isotropic(b) {
                        return Err(Error::Subspace(format!("atom {} is not isotropic", i + 1)));
                    }
                }
                Ok(s)
            })
            .collect()
    }
}

fn check_form(b: &QMatrix, n: usize) -> Result<()> {
    if b.len() != n || b.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: b.len(),
        });
    }
    let symmetric = (0..n).all(|i| (0..n).all(|j| b[i][j] == b[j][i]));
    let alternating = (0..n).all(|i| (0..n).all(|j| b[i][j] == -b[j][i].clone()));
    if !symmetric && !alternating {
        return Err(Error::Subspace(
            "form must be symmetric or alternating".into(),
        ));
    }
    if determinant(b).is_zero() {
        return Err(Error::DegenerateForm);
    }
    Ok(())
}

pub const DEFAULT_LATTICE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Spans of all subsets of atoms.
    Spans,
    /// Closure of the atoms under sums and intersections (and `⊥` with a form).
    Lattice { cap: usize },
    /// Random rational subspaces; can only find violations.
    MonteCarlo { samples: usize, seed: u64 },
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spans" => Ok(Strategy::Spans),
            "lattice" => Ok(Strategy::Lattice {
                cap: DEFAULT_LATTICE_CAP,
            }),
            _ => match s.strip_prefix("mc:").map(str::parse::<usize>) {
                Some(Ok(samples)) => Ok(Strategy::MonteCarlo { samples, seed: 0 }),
                _ => Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("unknown strategy `{s}` (expected spans, lattice or mc:<k>)"),
                }),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GrassmannianVerdict {
    Stable,
    Semistable,
    Unstable {
        witness: Subspace,
        #[serde(with = "crate::rational::serde_q")]
        lhs: Q,
        #[serde(with = "crate::rational::serde_q")]
        rhs: Q,
    },
    /// No violation among the candidates, which do not cover every subspace.
    Undetermined {
        candidates: usize,
    },
}

/// Proper nonzero spans of subsets of `atoms`, deduplicated.
pub fn span_family(n: usize, atoms: &[Subspace]) -> Vec<Subspace> {
    let mut family: BTreeSet<Subspace> = BTreeSet::new();
    let mut frontier: Vec<Subspace> = Vec::new();
    for a in atoms {
        if family.insert(a.clone()) {
            frontier.push(a.clone());
        }
    }
    // grow by one atom at a time; each span is reached from a smaller one
    while let Some(s) = frontier.pop() {
        for a in atoms {
            let t = s.sum(a);
            if t.dim() < n && family.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    family
        .into_iter()
        .filter(|s| s.dim() > 0 && s.dim() < n)
        .collect()
}

/// Closure under pairwise sum, intersection and (optionally) `⊥`.
pub fn lattice_family(
    n: usize,
    atoms: &[Subspace],
    form: Option<&QMatrix>,
    cap: usize,
) -> Result<Vec<Subspace>> {
    let mut family: BTreeSet<Subspace> = atoms.iter().cloned().collect();
    if let Some(b) = form {
        family.extend(atoms.iter().map(|a| a.perp(b)));
    }
    let mut list: Vec<Subspace> = family.iter().cloned().collect();
    let mut start = 0;
    while start < list.len() {
        let end = list.len();
        for i in start..end {
            for j in 0..end {
                let (a, bb) = (&list[i], &list[j]);
                let mut new = vec![a.sum(bb), a.intersection(bb)];
                if let Some(f) = form {
                    new.push(a.perp(f));
                }
                for s in new {
                    if family.insert(s.clone()) {
                        list.push(s);
                        if list.len() > cap {
                            return Err(Error::LatticeCapExceeded(cap));
                        }
                    }
                }
            }
        }
        start = end;
    }
    Ok(family
        .into_iter()
        .filter(|s| s.dim() > 0 && s.dim() < n)
        .collect())
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize) -> Subspace {
    loop {
        let d = rng.random_range(1..n);
        let rows: QMatrix = (0..d)
            .map(|_| (0..n).map(|_| q(rng.random_range(-3..=3))).collect())
            .collect();
        let s = Subspace::span(n, &rows);
        if s.dim() == d {
            return s;
        }
    }
}

fn random_isotropic(rng: &mut ChaCha8Rng, n: usize, b: &QMatrix) -> Option<Subspace> {
    let target = rng.random_range(1..=n / 2);
    let mut s = Subspace::zero(n);
    for _ in 0..50 {
        if s.dim() == target {
            break;
        }
        let v: Vec<Q> = (0..n).map(|_| q(rng.random_range(-3..=3))).collect();
        let t = s.sum(&Subspace::span(n, &[v]));
        if t.dim() > s.dim() && t.is_isotropic(b) {
            s = t;
        }
    }
    (s.dim() > 0).then_some(s)
}

struct Evaluation {
    worst: Option<(Subspace, Q, Q)>,
    equality: bool,
}

fn evaluate<F>(candidates: &[Subspace], criterion: F) -> Evaluation
where
    F: Fn(&Subspace) -> (Q, Q) + Sync,
{
    let results: Vec<(usize, Q, Q)> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            let (lhs, rhs) = criterion(u);
            (i, lhs, rhs)
        })
        .collect();
    let mut worst: Option<(Subspace, Q, Q)> = None;
    let mut equality = false;
    for (i, lhs, rhs) in results {
        if lhs == rhs {
            equality = true;
        }
        if lhs > rhs {
            let excess = &lhs - &rhs;
            let better = worst.as_ref().is_none_or(|(_, l, r)| excess > l - r);
            if better {
                worst = Some((candidates[i].clone(), lhs, rhs));
            }
        }
    }
    Evaluation { worst, equality }
}

fn candidates(
    m: &GrassmannianMeasure,
    atoms: &[Subspace],
    strategy: &Strategy,
) -> Result<Vec<Subspace>> {
    Ok(match strategy {
        Strategy::Spans => span_family(m.n, atoms),
        Strategy::Lattice { cap } => lattice_family(m.n, atoms, m.form.as_ref(), *cap)?,
        Strategy::MonteCarlo { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(*samples);
            for _ in 0..*samples {
                match &m.form {
                    Some(b) => out.extend(random_isotropic(&mut rng, m.n, b)),
                    None => out.push(random_subspace(&mut rng, m.n)),
                }
            }
            out
        }
    })
}

/// `n Σ m_i dim(U ∩ V_i) ≤ q ‖μ‖ dim U` for proper nonzero `U`.
pub fn sl_criterion(m: &GrassmannianMeasure, atoms: &[Subspace], u: &Subspace) -> (Q, Q) {
    let lhs: Q = atoms
        .iter()
        .zip(&m.atoms)
        .map(|(v, a)| &a.mass * q(u.intersection(v).dim() as i64))
        .sum::<Q>()
        * q(m.n as i64);
    let rhs = m.total_mass() * q((m.q * u.dim()) as i64);
    (lhs, rhs)
}

/// `Σ m_i (dim(U ∩ V_i) + dim(U ∩ V_i^⊥)) ≤ ‖μ‖ dim U` for isotropic `U ≠ 0`.
pub fn iso_criterion(m: &GrassmannianMeasure, atoms: &[Subspace], u: &Subspace) -> (Q, Q) {
    let b = m.form.as_ref().expect("isotropic criterion needs a form");
    let lhs: Q = atoms
        .iter()
        .zip(&m.atoms)
        .map(|(v, a)| {
            let d = u.intersection(v).dim() + u.intersection(&v.perp(b)).dim();
            &a.mass * q(d as i64)
        })
        .sum();
    (lhs, m.total_mass() * q(u.dim() as i64))
}

/// Semistability of a measure on the Grassmannian of `q`-planes in `ℚⁿ`.
pub fn sl_semistable(m: &GrassmannianMeasure, strategy: &Strategy) -> Result<GrassmannianVerdict> {
    let atoms = m.subspaces()?;
    let cands = candidates(m, &atoms, strategy)?;
    let eval = evaluate(&cands, |u| sl_criterion(m, &atoms, u));
    if let Some((witness, lhs, rhs)) = eval.worst {
        return Ok(GrassmannianVerdict::Unstable { witness, lhs, rhs });
    }
    // for lines, shrinking U to the span of the atoms it contains only helps the left side
    let complete = m.q == 1 && !matches!(strategy, Strategy::MonteCarlo { .. });
    Ok(if !complete {
        GrassmannianVerdict::Undetermined {
            candidates: cands.len(),
        }
    } else if eval.equality || m.atoms.is_empty() {
        GrassmannianVerdict::Semistable
    } else {
        GrassmannianVerdict::Stable
    })
}

/// Semistability of a measure on isotropic `q`-planes for the form `m.form`.
pub fn iso_semistable(m: &GrassmannianMeasure, strategy: &Strategy) -> Result<GrassmannianVerdict> {
    if m.form.is_none() {
        return Err(Error::Subspace(
            "isotropic criterion needs a bilinear form".into(),
        ));
    }
    let atoms = m.subspaces()?;
    if atoms.is_empty() {
        return Ok(GrassmannianVerdict::Semistable);
    }
    let b = m.form.as_ref().unwrap();
    let cands: Vec<Subspace> = candidates(m, &atoms, strategy)?
        .into_iter()
        .filter(|u| u.is_isotropic(b))
        .collect();
    let eval = evaluate(&cands, |u| iso_criterion(m, &atoms, u));
    Ok(match eval.worst {
        Some((witness, lhs, rhs)) => GrassmannianVerdict::Unstable { witness, lhs, rhs },
        None => GrassmannianVerdict::Undetermined {
            candidates: cands.len(),
        },
    })
}

/// Integer entries helper for building atoms in code.
pub fn atom(basis: &[&[i64]], mass: Q) -> Atom {
    Atom {
        basis: basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Q::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect(),
        mass,
    }
}
