//! The bases polytope described by the locked structure, its comparison
//! system over all subsets, exact membership, 0/1 points, and linear
//! optimization over it.
//!
//! `P(M)` rows, in order:
//!
//! * `x(E) = r(E)`
//! * `x(P) <= 1` for every parallel closure `P`
//! * `x(S) >= |S| - 1` for every coparallel closure `S`
//! * `x(L) <= r(L)` for every locked subset `L`
//!
//! Box rows `0 <= x(e) <= 1` are only appended for optimization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::locked::LockedStructure;
use crate::matroid::Matroid;
use crate::simplex::{self, int, Constraint, LpError, Relation};
use crate::subset::{Subset, SubsetFamily, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("point has dimension {got}, system has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ground set of {0} elements is too large for subset enumeration")]
    TooLarge(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowTag {
    Rank,
    Parallel,
    Coparallel,
    Locked,
    Box,
}

impl RowTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowTag::Rank => "eq1",
            RowTag::Parallel => "parallel",
            RowTag::Coparallel => "coparallel",
            RowTag::Locked => "locked",
            RowTag::Box => "box",
        }
    }
}

/// `x(support) relation bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub support: Subset,
    pub relation: Relation,
    pub bound: i64,
    pub tag: RowTag,
}

impl Row {
    fn holds_for_count(&self, value: i64) -> bool {
        match self.relation {
            Relation::Le => value <= self.bound,
            Relation::Ge => value >= self.bound,
            Relation::Eq => value == self.bound,
        }
    }

    fn holds_for(&self, value: &BigRational) -> bool {
        let bound = int(self.bound);
        match self.relation {
            Relation::Le => *value <= bound,
            Relation::Ge => *value >= bound,
            Relation::Eq => *value == bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub dimension: usize,
    /// The equality row comes first.
    pub rows: Vec<Row>,
}

impl LinearSystem {
    /// The system with box rows `x(e) >= 0` and `x(e) <= 1` appended.
    pub fn with_box_rows(&self) -> LinearSystem {
        let mut rows = self.rows.clone();
        for e in 0..self.dimension {
            let support = Subset::singleton(e);
            rows.push(Row { support, relation: Relation::Ge, bound: 0, tag: RowTag::Box });
            rows.push(Row { support, relation: Relation::Le, bound: 1, tag: RowTag::Box });
        }
        LinearSystem { dimension: self.dimension, rows }
    }
}

/// A point of `Q^E` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    /// Incidence vector of `set`.
    pub fn indicator(n: usize, set: Subset) -> Self {
        RationalPoint((0..n).map(|e| if set.contains(e) { BigRational::one() } else { BigRational::zero() }).collect())
    }

    pub fn from_integers(values: &[i64]) -> Self {
        RationalPoint(values.iter().map(|&v| int(v)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn sum_over(&self, set: Subset) -> BigRational {
        set.iter().fold(BigRational::zero(), |acc, e| acc + &self.0[e])
    }

    /// The 0/1 set this point is the indicator of, if any.
    pub fn as_indicator(&self) -> Option<Subset> {
        let mut set = Subset::EMPTY;
        for (e, v) in self.0.iter().enumerate() {
            if v.is_one() {
                set = set.with(e);
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(set)
    }
}

/// `P(M)` from the locked structure.
pub fn build_p(s: &LockedStructure) -> LinearSystem {
    let mut rows =
        vec![Row { support: s.ground_set(), relation: Relation::Eq, bound: s.rank as i64, tag: RowTag::Rank }];
    for &p in s.parallel.iter() {
        rows.push(Row { support: p, relation: Relation::Le, bound: 1, tag: RowTag::Parallel });
    }
    for &c in s.coparallel.iter() {
        rows.push(Row { support: c, relation: Relation::Ge, bound: c.len() as i64 - 1, tag: RowTag::Coparallel });
    }
    for &l in s.locked.iter() {
        let r = s.rho(l).expect("locked subsets have a rank") as i64;
        rows.push(Row { support: l, relation: Relation::Le, bound: r, tag: RowTag::Locked });
    }
    LinearSystem { dimension: s.ground_size, rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub inside: bool,
    /// Index into `rows` of the first violated row.
    pub first_violation: Option<usize>,
}

pub fn member(sys: &LinearSystem, x: &RationalPoint) -> Result<Membership, PolytopeError> {
    if x.dimension() != sys.dimension {
        return Err(PolytopeError::DimensionMismatch { expected: sys.dimension, got: x.dimension() });
    }
    let first_violation = sys.rows.iter().position(|row| !row.holds_for(&x.sum_over(row.support)));
    Ok(Membership { inside: first_violation.is_none(), first_violation })
}

/// Checks `x(E) = r(E)`, `0 <= x(e) <= 1` and `x(A) <= r(A)` for every
/// subset `A`.
pub fn member_q(m: &Matroid, x: &RationalPoint) -> Result<bool, PolytopeError> {
    let n = m.ground_size();
    if n > MAX_ELEMENTS {
        return Err(PolytopeError::TooLarge(n));
    }
    if x.dimension() != n {
        return Err(PolytopeError::DimensionMismatch { expected: n, got: x.dimension() });
    }
    // scale to integers over a common denominator
    let denom = x.0.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = x.0.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
    let total: BigInt = scaled.iter().sum();
    if total != &denom * BigInt::from(m.rank()) {
        return Ok(false);
    }
    if scaled.iter().any(|v| v.is_negative() || *v > denom) {
        return Ok(false);
    }
    let mut sums = vec![BigInt::zero(); 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] + &scaled[low];
        let bound = &denom * BigInt::from(m.r(Subset::from_bits(mask as u32)));
        if sums[mask] > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 0/1 points of the given cardinality that satisfy every row.
pub fn zero_one_vertices(sys: &LinearSystem, cardinality: usize) -> SubsetFamily {
    Subset::full(sys.dimension)
        .submasks()
        .filter(|s| s.len() == cardinality)
        .filter(|s| sys.rows.iter().all(|row| row.holds_for_count(s.intersection(row.support).len() as i64)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOptimum {
    pub optimum: BigRational,
    pub witness: RationalPoint,
    pub pivots: usize,
}

fn constraints_of(sys: &LinearSystem) -> Vec<Constraint> {
    sys.rows
        .iter()
        .map(|row| Constraint {
            coefficients: (0..sys.dimension)
                .map(|e| if row.support.contains(e) { BigRational::one() } else { BigRational::zero() })
                .collect(),
            relation: row.relation,
            rhs: int(row.bound),
        })
        .collect()
}

/// Maximizes `objective · x` over the system plus box rows.
pub fn lp_maximize_rational(sys: &LinearSystem, objective: &[BigRational]) -> Result<LpOptimum, PolytopeError> {
    if objective.len() != sys.dimension {
        return Err(PolytopeError::DimensionMismatch { expected: sys.dimension, got: objective.len() });
    }
    let boxed = sys.with_box_rows();
    let sol = simplex::maximize(objective, &constraints_of(&boxed))?;
    Ok(LpOptimum { optimum: sol.optimum, witness: RationalPoint(sol.point), pivots: sol.pivots })
}

pub fn lp_maximize(sys: &LinearSystem, weights: &[i64]) -> Result<LpOptimum, PolytopeError> {
    let objective: Vec<BigRational> = weights.iter().map(|&w| int(w)).collect();
    lp_maximize_rational(sys, &objective)
}

/// Minimum of `weights · x`, via maximizing the negation.
pub fn lp_minimize(sys: &LinearSystem, weights: &[i64]) -> Result<LpOptimum, PolytopeError> {
    let negated: Vec<i64> = weights.iter().map(|w| -w).collect();
    let mut sol = lp_maximize(sys, &negated)?;
    sol.optimum = -sol.optimum;
    Ok(sol)
}

/// Maximizes `weights · x` over the rows alone, with every coordinate
/// free in sign (no box rows, no implicit `x >= 0`).
pub fn lp_maximize_unboxed(sys: &LinearSystem, weights: &[i64]) -> Result<BigRational, PolytopeError> {
    if weights.len() != sys.dimension {
        return Err(PolytopeError::DimensionMismatch { expected: sys.dimension, got: weights.len() });
    }
    // x = x+ - x-
    let objective: Vec<BigRational> = weights.iter().map(|&w| int(w)).chain(weights.iter().map(|&w| int(-w))).collect();
    let constraints: Vec<Constraint> = constraints_of(sys)
        .into_iter()
        .map(|mut c| {
            let negated: Vec<BigRational> = c.coefficients.iter().map(|v| -v).collect();
            c.coefficients.extend(negated);
            c
        })
        .collect();
    Ok(simplex::maximize(&objective, &constraints)?.optimum)
}

pub fn lp_minimize_unboxed(sys: &LinearSystem, weights: &[i64]) -> Result<BigRational, PolytopeError> {
    let negated: Vec<i64> = weights.iter().map(|w| -w).collect();
    Ok(-lp_maximize_unboxed(sys, &negated)?)
}

/// Classic greedy: scan by decreasing weight (ties by index), keep an
/// element while the kept set stays independent.
pub fn greedy_max_basis(m: &Matroid, weights: &[i64]) -> (i64, Subset) {
    let mut order: Vec<usize> = (0..m.ground_size()).collect();
    order.sort_by_key(|&e| (core::cmp::Reverse(weights[e]), e));
    let mut basis = Subset::EMPTY;
    for e in order {
        if m.is_independent(basis.with(e)) {
            basis = basis.with(e);
        }
    }
    (basis.iter().map(|e| weights[e]).sum(), basis)
}
