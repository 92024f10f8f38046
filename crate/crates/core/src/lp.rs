//! Exact rational simplex method (dense tableau, Bland's rule).

use num::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>, // constraint rows, last entry is the right-hand side
    obj: Vec<Q>,       // reduced costs (maximize), last entry is −value
    basis: Vec<usize>,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over the allowed columns; false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[row.len() - 1] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                x[b] = row[row.len() - 1].clone();
            }
        }
        x
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize_standard(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // phase 1: artificials n..n+m, objective −Σ artificials
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Q> = ai
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if flip { -bi } else { bi.clone() });
        rows.push(row);
    }
    let mut obj = vec![Q::zero(); n + m + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] += &row[j];
        }
        obj[n + m] += &row[n + m];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
    };
    t.optimize(n + m);
    if t.obj[n + m].is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // phase 2
    let mut obj = vec![Q::zero(); n + m + 1];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if !c[bv].is_zero() {
            let f = c[bv].clone();
            for (x, y) in obj.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = crate::rational::dot(c, &x);
    LpOutcome::Optimal { x, value }
}

/// Maximizes `c·x` subject to `A x ≤ b` with `x` free.
pub fn maximize_free(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    if b.iter().all(|x| !x.is_negative()) {
        // slack basis is feasible: columns x⁺ (0..n), x⁻ (n..2n), slack (2n..2n+m)
        let rows = a
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (ai, bi))| {
                let mut row: Vec<Q> = ai.clone();
                row.extend(ai.iter().map(|x| -x));
                row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
                row.push(bi.clone());
                row
            })
            .collect();
        let mut obj: Vec<Q> = c.to_vec();
        obj.extend(c.iter().map(|x| -x));
        obj.extend((0..=m).map(|_| Q::zero()));
        let mut t = Tableau {
            rows,
            obj,
            basis: (2 * n..2 * n + m).collect(),
        };
        let cols = t.cols();
        if !t.optimize(cols) {
            return LpOutcome::Unbounded;
        }
        let s = t.solution(2 * n);
        let x: Vec<Q> = (0..n).map(|j| &s[j] - &s[n + j]).collect();
        let value = crate::rational::dot(c, &x);
        return LpOutcome::Optimal { x, value };
    }
    let rows: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, ai)| {
            let mut row: Vec<Q> = ai.clone();
            row.extend(ai.iter().map(|x| -x));
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let mut cc: Vec<Q> = c.to_vec();
    cc.extend(c.iter().map(|x| -x));
    cc.extend((0..m).map(|_| Q::zero()));
    match maximize_standard(&rows, b, &cc) {
        LpOutcome::Optimal { x: s, .. } => {
            let x: Vec<Q> = (0..n).map(|j| &s[j] - &s[n + j]).collect();
            let value = crate::rational::dot(c, &x);
            LpOutcome::Optimal { x, value }
        }
        other => other,
    }
}

/// Is `target` a convex combination of `points`?
pub fn in_convex_hull(points: &[Vec<Q>], target: &[Q]) -> bool {
    let dim = target.len();
    let k = points.len();
    if k == 0 {
        return false;
    }
    let mut a: Vec<Vec<Q>> = (0..dim)
        .map(|d| points.iter().map(|p| p[d].clone()).collect())
        .collect();
    a.push(vec![Q::one(); k]);
    let mut b: Vec<Q> = target.to_vec();
    b.push(Q::one());
    !matches!(
        maximize_standard(&a, &b, &vec![Q::zero(); k]),
        LpOutcome::Infeasible
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, qvec};

    #[test]
    fn small_standard_lp() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6
        let a = vec![qvec(&[1, 2]), qvec(&[3, 1])];
        let out = maximize_free(&a, &qvec(&[4, 6]), &qvec(&[1, 1]));
        assert_eq!(out.value(), Some(&qf(14, 5)));
        let out = maximize_free(&a, &qvec(&[4, 6]), &qvec(&[-1, 1]));
        assert_eq!(out, LpOutcome::Unbounded);
        let a = vec![qvec(&[1, 2]), qvec(&[3, 1]), qvec(&[-1, 0]), qvec(&[0, -1])];
        let out = maximize_free(&a, &qvec(&[4, 6, 0, 0]), &qvec(&[1, 1]));
        assert_eq!(out.value(), Some(&qf(14, 5)));
    }

    #[test]
    fn negative_rhs_goes_through_phase_one() {
        // max −x s.t. −x ≤ −3 (x ≥ 3)
        let out = maximize_free(&[qvec(&[-1])], &qvec(&[-3]), &qvec(&[-1]));
        assert_eq!(out.value(), Some(&q(-3)));
        // x ≤ 1 and x ≥ 2
        let out = maximize_free(&[qvec(&[1]), qvec(&[-1])], &qvec(&[1, -2]), &qvec(&[0]));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn hull_membership() {
        let square = vec![
            qvec(&[1, 1]),
            qvec(&[1, -1]),
            qvec(&[-1, 1]),
            qvec(&[-1, -1]),
        ];
        assert!(in_convex_hull(&square, &qvec(&[0, 0])));
        assert!(in_convex_hull(&square, &qvec(&[1, 0])));
        assert!(!in_convex_hull(&square, &[qf(3, 2), q(0)]));
        // redundant equality rows (all points on a plane)
        let tri = vec![qvec(&[1, -1, 0]), qvec(&[0, 1, -1]), qvec(&[-1, 0, 1])];
        assert!(in_convex_hull(&tri, &qvec(&[0, 0, 0])));
        assert!(!in_convex_hull(&tri, &qvec(&[2, -1, -1])));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance; Bland's rule must terminate.
        let a = vec![
            vec![qf(1, 4), q(-60), qf(-1, 25), q(9)],
            vec![qf(1, 2), q(-90), qf(-1, 50), q(3)],
            vec![q(0), q(0), q(1), q(0)],
            qvec(&[-1, 0, 0, 0]),
            qvec(&[0, -1, 0, 0]),
            qvec(&[0, 0, -1, 0]),
            qvec(&[0, 0, 0, -1]),
        ];
        let b = qvec(&[0, 0, 1, 0, 0, 0, 0]);
        let c = vec![qf(3, 4), q(-150), qf(1, 50), q(-6)];
        assert_eq!(maximize_free(&a, &b, &c).value(), Some(&qf(1, 20)));
    }
}
