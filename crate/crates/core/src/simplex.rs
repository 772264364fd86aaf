//! Dense two-phase simplex over exact rationals with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("the linear program is infeasible")]
    Infeasible,
    #[error("the linear program is unbounded")]
    Unbounded,
    #[error("expected {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: BigRational,
    pub point: Vec<BigRational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    // reduced-cost row, same width as `rows`; last entry is minus the objective
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..=self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<BigRational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nonzero {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn set_objective(&mut self, objective: &[BigRational]) {
        let mut cost: Vec<BigRational> =
            (0..=self.width).map(|j| objective.get(j).cloned().unwrap_or_else(BigRational::zero)).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = objective.get(b).cloned().unwrap_or_else(BigRational::zero);
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    cost[j] -= &cb * v;
                }
            }
        }
        self.cost = cost;
    }

    /// Maximizes the current objective over columns `allowed`.
    fn run(&mut self, allowed: &[bool]) -> Result<(), LpError> {
        loop {
            let Some(enter) = (0..self.width).find(|&j| allowed[j] && self.cost[j].is_positive()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, enter);
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> Result<LpSolution, LpError> {
    let n = objective.len();
    for c in constraints {
        if c.coefficients.len() != n {
            return Err(LpError::DimensionMismatch { expected: n, got: c.coefficients.len() });
        }
    }
    let m = constraints.len();
    let slack_count = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    // columns: x, slacks, artificials (one per row, unused ones stay zero)
    let first_art = n + slack_count;
    let width = first_art + m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, a) in c.coefficients.iter().enumerate() {
            row[j] = a.clone();
        }
        let slack_col = match c.relation {
            Relation::Le => {
                row[slack] = BigRational::one();
                slack += 1;
                Some(slack - 1)
            }
            Relation::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
                Some(slack - 1)
            }
            Relation::Eq => None,
        };
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -core::mem::take(v);
            }
        }
        match slack_col {
            Some(s) if row[s].is_one() => basis.push(s),
            _ => {
                row[first_art + i] = BigRational::one();
                basis.push(first_art + i);
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, cost: Vec::new(), basis, width, pivots: 0 };

    let artificial: Vec<bool> = (0..width).map(|j| j >= first_art).collect();
    if t.basis.iter().any(|&b| artificial[b]) {
        let phase1: Vec<BigRational> =
            (0..width).map(|j| if artificial[j] { -BigRational::one() } else { BigRational::zero() }).collect();
        t.set_objective(&phase1);
        let all = vec![true; width];
        t.run(&all)?;
        // cost[width] holds minus the phase-one objective, i.e. the artificial total
        if t.cost[width].is_positive() {
            return Err(LpError::Infeasible);
        }
        // drive zero-level artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if artificial[t.basis[i]] {
                match (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    t.set_objective(objective);
    let allowed: Vec<bool> = artificial.iter().map(|a| !a).collect();
    t.run(&allowed)?;
    let mut point = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rhs(i).clone();
        }
    }
    let optimum = objective.iter().zip(&point).fold(BigRational::zero(), |acc, (c, x)| acc + c * x);
    Ok(LpSolution { optimum, point, pivots: t.pivots })
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[i64], relation: Relation, rhs: i64) -> Constraint {
        Constraint { coefficients: c.iter().map(|&v| int(v)).collect(), relation, rhs: int(rhs) }
    }

    fn obj(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let cons = [row(&[1, 0], Relation::Le, 4), row(&[0, 2], Relation::Le, 12), row(&[3, 2], Relation::Le, 18)];
        let s = maximize(&obj(&[3, 5]), &cons).unwrap();
        assert_eq!(s.optimum, int(36));
        assert_eq!(s.point, vec![int(2), int(6)]);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y <= 1, x + 2y <= 1 -> 2/3 at (1/3, 1/3)
        let cons = [row(&[2, 1], Relation::Le, 1), row(&[1, 2], Relation::Le, 1)];
        let s = maximize(&obj(&[1, 1]), &cons).unwrap();
        assert_eq!(s.optimum, BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x - y, x + y = 2, y >= 1/2 -> 1 at (3/2, 1/2)
        let mut half = row(&[0, 2], Relation::Ge, 1);
        half.coefficients[1] = int(1);
        half.rhs = BigRational::new(1.into(), 2.into());
        let cons = [row(&[1, 1], Relation::Eq, 2), half];
        let s = maximize(&obj(&[1, -1]), &cons).unwrap();
        assert_eq!(s.optimum, int(1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let cons = [row(&[1], Relation::Le, 1), row(&[1], Relation::Ge, 2)];
        assert_eq!(maximize(&obj(&[1]), &cons), Err(LpError::Infeasible));
        let cons = [row(&[1, -1], Relation::Le, 1)];
        assert_eq!(maximize(&obj(&[1, 0]), &cons), Err(LpError::Unbounded));
        let cons = [row(&[1, 1, 1], Relation::Le, 1)];
        assert!(matches!(maximize(&obj(&[1, 0]), &cons), Err(LpError::DimensionMismatch { .. })));
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 twice; max y -> 1
        let cons = [row(&[1, 1], Relation::Eq, 1), row(&[1, 1], Relation::Eq, 1), row(&[2, 2], Relation::Eq, 2)];
        let s = maximize(&obj(&[0, 1]), &cons).unwrap();
        assert_eq!(s.optimum, int(1));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let objective = vec![q(3, 4), int(-150), q(1, 50), int(-6)];
        let cons = [
            Constraint {
                coefficients: vec![q(1, 4), int(-60), q(-1, 25), int(9)],
                relation: Relation::Le,
                rhs: int(0),
            },
            Constraint {
                coefficients: vec![q(1, 2), int(-90), q(-1, 50), int(3)],
                relation: Relation::Le,
                rhs: int(0),
            },
            Constraint { coefficients: vec![int(0), int(0), int(1), int(0)], relation: Relation::Le, rhs: int(1) },
        ];
        let s = maximize(&objective, &cons).unwrap();
        assert_eq!(s.optimum, q(1, 20));
    }
}
