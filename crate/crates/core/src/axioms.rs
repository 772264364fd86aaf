//! Locked systems `(E, P, S, L, r)`: validation against the axiom list
//! and rank derivation outside the structured family.
//!
//! Every decomposition rule bounds the rank from above (submodularity for
//! the first three, the series-class identity for the fourth), so the
//! derived rank of a set is the least value over all chains of applicable
//! rules. The down chains use rules P1/P2 and end in a set of the domain;
//! the up chains use P3/P4 likewise.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::locked::{locked_structure, LockedError, LockedStructure};
use crate::matroid::Matroid;
use crate::subset::{Subset, SubsetFamily, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("the rank map has no value for {0:?}")]
    DomainMismatch(Subset),
    #[error("{0:?} already has a rank in the system")]
    InDomain(Subset),
    #[error("no decomposition applies to {0:?}")]
    NoDecomposition(Subset),
    #[error("{0:?} is not a subset of the ground set")]
    OutOfRange(Subset),
    #[error("ground set of {0} elements is too large")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockedSystem {
    pub ground_size: usize,
    pub parallel: SubsetFamily,
    pub coparallel: SubsetFamily,
    pub locked: SubsetFamily,
    /// Defined on `P ∪ S ∪ L ∪ {∅, E}` and on the complements of members
    /// of `P` and `S`.
    pub r: BTreeMap<Subset, usize>,
}

impl LockedSystem {
    pub fn ground_set(&self) -> Subset {
        Subset::full(self.ground_size)
    }

    /// Sets on which `r` must be defined.
    pub fn required_domain(&self) -> Vec<Subset> {
        let full = self.ground_set();
        let mut out: Vec<Subset> = self
            .parallel
            .iter()
            .chain(self.coparallel.iter())
            .chain(self.locked.iter())
            .copied()
            .chain([Subset::EMPTY, full])
            .chain(self.parallel.iter().chain(self.coparallel.iter()).map(|x| full.difference(*x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `x` is in `P ∪ S ∪ L ∪ {∅, E}`.
    pub fn is_structured(&self, x: Subset) -> bool {
        x.is_empty()
            || x == self.ground_set()
            || self.parallel.contains(x)
            || self.coparallel.contains(x)
            || self.locked.contains(x)
    }

    fn check_domain(&self) -> Result<(), AxiomError> {
        if self.ground_size > MAX_ELEMENTS {
            return Err(AxiomError::TooLarge(self.ground_size));
        }
        for x in self.required_domain() {
            if !self.r.contains_key(&x) {
                return Err(AxiomError::DomainMismatch(x));
            }
        }
        Ok(())
    }

    fn rank_of(&self, x: Subset) -> usize {
        self.r[&x]
    }

    fn total_rank(&self) -> usize {
        self.rank_of(self.ground_set())
    }
}

impl From<&LockedStructure> for LockedSystem {
    /// Uses `r(E\P) = r(E)` and `r(E\S) = r(E) + 1 - |S|` where the
    /// structure itself has no value.
    fn from(s: &LockedStructure) -> Self {
        let full = s.ground_set();
        let mut r = s.rho.clone();
        for &p in s.parallel.iter() {
            r.entry(full.difference(p)).or_insert(s.rank);
        }
        for &c in s.coparallel.iter() {
            r.entry(full.difference(c)).or_insert(s.rank + 1 - c.len());
        }
        LockedSystem {
            ground_size: s.ground_size,
            parallel: s.parallel.clone(),
            coparallel: s.coparallel.clone(),
            locked: s.locked.clone(),
            r,
        }
    }
}

/// The locked system of a loopless, coloopless matroid.
pub fn extract(m: &Matroid) -> Result<LockedSystem, LockedError> {
    let s = locked_structure(m)?;
    let mut sys = LockedSystem::from(&s);
    for x in sys.required_domain() {
        sys.r.insert(x, m.r(x));
    }
    Ok(sys)
}

/// A rank function on all subsets of the ground set.
pub trait RankOracle {
    fn rank(&self, x: Subset) -> usize;
}

impl RankOracle for Matroid {
    fn rank(&self, x: Subset) -> usize {
        self.r(x)
    }
}

impl<F: Fn(Subset) -> usize> RankOracle for F {
    fn rank(&self, x: Subset) -> usize {
        self(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L7,
    L8,
    L9,
    L10,
    L11,
    L12,
    L13,
    L14,
    L15,
    L16,
    L18,
    L19,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: AxiomId,
    pub witnesses: Vec<Subset>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Domain sets where the system and the oracle disagree: `(set, system, oracle)`.
    pub oracle_disagreements: Vec<(Subset, usize, usize)>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self) -> Vec<AxiomId> {
        let mut ids: Vec<AxiomId> = self.violations.iter().map(|v| v.axiom).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    P1,
    P2,
    P3,
    P4,
}

/// One rule application: `set` was split using `witness`, leaving `next`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub set: Subset,
    pub witness: Subset,
    pub next: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDerivation {
    pub rank: usize,
    /// Applied rules; the last `next` is in the rank map.
    pub trace: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Down,
    Up,
}

/// Best down and up chains for every subset of the ground set.
#[derive(Debug, Clone)]
pub struct Derivations<'a> {
    sys: &'a LockedSystem,
    // value of the best chain starting with a rule, and the first step
    down: Vec<Option<(i64, Step)>>,
    up: Vec<Option<(i64, Step)>>,
}

impl<'a> Derivations<'a> {
    /// Relaxes both tables until no value drops. A step may continue with
    /// either kind of rule. Values are clamped at 0, so the loop ends even
    /// for systems no matroid realizes.
    pub fn new(sys: &'a LockedSystem) -> Result<Self, AxiomError> {
        sys.check_domain()?;
        let n = sys.ground_size;
        let size = 1usize << n;
        let full = sys.ground_set();
        let total = sys.total_rank() as i64;
        let mut d = Derivations { sys, down: vec![None; size], up: vec![None; size] };

        loop {
            let mut changed = false;
            for bits in 0..size {
                let x = Subset::from_bits(bits as u32);
                let mut best = d.down[bits];
                for &l in sys.locked.iter() {
                    if l.is_subset_of(x) && l != x {
                        let next = x.difference(l);
                        if let Some(v) = d.value(next) {
                            consider(
                                &mut best,
                                sys.rank_of(l) as i64 + v,
                                Step { rule: Rule::P1, set: x, witness: l, next },
                            );
                        }
                    }
                }
                for &p in sys.parallel.iter() {
                    if !p.is_disjoint(x) {
                        let next = x.difference(p);
                        if let Some(v) = d.value(next) {
                            consider(
                                &mut best,
                                sys.rank_of(p) as i64 + v,
                                Step { rule: Rule::P2, set: x, witness: p, next },
                            );
                        }
                    }
                }
                changed |= best != d.down[bits];
                d.down[bits] = best;
            }

            for bits in (0..size).rev() {
                let x = Subset::from_bits(bits as u32);
                let mut best = d.up[bits];
                for &l in sys.locked.iter() {
                    if x.is_subset_of(l) && l != x {
                        let next = x.union(full.difference(l));
                        if let Some(v) = d.value(next) {
                            let value = sys.rank_of(l) as i64 + v - total;
                            consider(&mut best, value, Step { rule: Rule::P3, set: x, witness: l, next });
                        }
                    }
                }
                for &s in sys.coparallel.iter() {
                    if !s.is_subset_of(x) {
                        let next = x.union(s);
                        if let Some(v) = d.value(next) {
                            let rest = sys.rank_of(full.difference(s)) as i64;
                            let value = rest + v + s.intersection(x).len() as i64 - total;
                            consider(&mut best, value, Step { rule: Rule::P4, set: x, witness: s, next });
                        }
                    }
                }
                changed |= best != d.up[bits];
                d.up[bits] = best;
            }
            if !changed {
                return Ok(d);
            }
        }
    }

    // rank map on the domain, best chain of either kind elsewhere
    fn value(&self, x: Subset) -> Option<i64> {
        if let Some(&v) = self.sys.r.get(&x) {
            return Some(v as i64);
        }
        self.best(x).map(|(_, v)| v)
    }

    fn best(&self, x: Subset) -> Option<(Direction, i64)> {
        let bits = x.bits() as usize;
        match (self.down[bits], self.up[bits]) {
            (None, None) => None,
            (Some((d, _)), None) => Some((Direction::Down, d)),
            (None, Some((u, _))) => Some((Direction::Up, u)),
            (Some((d, _)), Some((u, _))) => Some(if d <= u { (Direction::Down, d) } else { (Direction::Up, u) }),
        }
    }

    pub fn system(&self) -> &LockedSystem {
        self.sys
    }

    fn table(&self, dir: Direction) -> &[Option<(i64, Step)>] {
        match dir {
            Direction::Down => &self.down,
            Direction::Up => &self.up,
        }
    }

    /// Least rank over chains that start with P1 or P2.
    pub fn down_rank(&self, x: Subset) -> Option<i64> {
        self.down[x.bits() as usize].map(|(v, _)| v)
    }

    /// Least rank over chains that start with P3 or P4.
    pub fn up_rank(&self, x: Subset) -> Option<i64> {
        self.up[x.bits() as usize].map(|(v, _)| v)
    }

    // follows the chosen step at every set outside the rank map
    fn trace(&self, dir: Direction, x: Subset) -> Vec<Step> {
        let mut out = Vec::new();
        let mut step = self.table(dir)[x.bits() as usize].map(|(_, s)| s);
        while let Some(st) = step {
            out.push(st);
            if self.sys.r.contains_key(&st.next) || out.len() > self.down.len() {
                break;
            }
            step = self.best(st.next).and_then(|(d, _)| self.table(d)[st.next.bits() as usize]).map(|(_, s)| s);
        }
        out
    }

    /// Rank of a set outside `P ∪ S ∪ L ∪ {∅, E}`; a down chain wins ties.
    pub fn derive(&self, x: Subset) -> Result<RankDerivation, AxiomError> {
        if !x.is_subset_of(self.sys.ground_set()) {
            return Err(AxiomError::OutOfRange(x));
        }
        if self.sys.is_structured(x) {
            return Err(AxiomError::InDomain(x));
        }
        let (dir, value) = self.best(x).ok_or(AxiomError::NoDecomposition(x))?;
        let rank = usize::try_from(value).map_err(|_| AxiomError::NoDecomposition(x))?;
        Ok(RankDerivation { rank, trace: self.trace(dir, x) })
    }
}

// keeps the first candidate among equal values
fn consider(best: &mut Option<(i64, Step)>, value: i64, step: Step) {
    let value = value.max(0);
    if best.as_ref().is_none_or(|(v, _)| value < *v) {
        *best = Some((value, step));
    }
}

/// Rank of `x` from the system alone, with the applied rules.
pub fn rank_extend(sys: &LockedSystem, x: Subset) -> Result<RankDerivation, AxiomError> {
    Derivations::new(sys)?.derive(x)
}

/// Rank function induced by a system: the rank map on its domain, derived
/// ranks elsewhere.
#[derive(Debug, Clone)]
pub struct SystemOracle {
    ranks: Vec<usize>,
}

impl SystemOracle {
    pub fn new(sys: &LockedSystem) -> Result<Self, AxiomError> {
        let d = Derivations::new(sys)?;
        let mut ranks = Vec::with_capacity(1 << sys.ground_size);
        for bits in 0..1u32 << sys.ground_size {
            let x = Subset::from_bits(bits);
            let v = match sys.r.get(&x) {
                Some(&v) => v,
                None => d.derive(x)?.rank,
            };
            ranks.push(v);
        }
        Ok(SystemOracle { ranks })
    }
}

impl RankOracle for SystemOracle {
    fn rank(&self, x: Subset) -> usize {
        self.ranks[x.bits() as usize]
    }
}

struct Checker<'a, O: RankOracle + ?Sized> {
    sys: &'a LockedSystem,
    oracle: &'a O,
    out: Vec<Violation>,
}

impl<O: RankOracle + ?Sized> Checker<'_, O> {
    fn r(&self, x: Subset) -> usize {
        self.sys.r.get(&x).copied().unwrap_or_else(|| self.oracle.rank(x))
    }

    fn fail(&mut self, axiom: AxiomId, witnesses: &[Subset], text: String) {
        self.out.push(Violation { axiom, witnesses: witnesses.to_vec(), text });
    }
}

fn partition_problem(family: &SubsetFamily, ground: Subset) -> Option<(Vec<Subset>, &'static str)> {
    if let Some(&empty) = family.iter().find(|x| x.is_empty()) {
        return Some((vec![empty], "contains the empty set"));
    }
    if let Some(&out) = family.iter().find(|x| !x.is_subset_of(ground)) {
        return Some((vec![out], "has a member outside the ground set"));
    }
    let sets = family.as_slice();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            if !a.is_disjoint(b) {
                return Some((vec![a, b], "has overlapping members"));
            }
        }
    }
    let covered = sets.iter().fold(Subset::EMPTY, |acc, &x| acc.union(x));
    if covered != ground {
        return Some((vec![ground.difference(covered)], "does not cover the ground set"));
    }
    None
}

/// Checks the axioms over their full quantifier domains. Ranks on the
/// domain come from the system, other ranks from `oracle`.
pub fn validate<O: RankOracle + ?Sized>(sys: &LockedSystem, oracle: &O) -> Result<AxiomReport, AxiomError> {
    use AxiomId::*;
    sys.check_domain()?;
    let n = sys.ground_size;
    let full = sys.ground_set();
    let mut c = Checker { sys, oracle, out: Vec::new() };
    let total = sys.total_rank();

    let oracle_disagreements = sys
        .r
        .iter()
        .filter_map(|(&x, &v)| {
            let o = oracle.rank(x);
            (o != v).then_some((x, v, o))
        })
        .collect();

    if n == 0 {
        c.fail(L1, &[], String::from("the ground set is empty"));
    }

    for (name, family) in [("P", &sys.parallel), ("S", &sys.coparallel)] {
        if let Some((w, what)) = partition_problem(family, full) {
            c.fail(L2, &w, format!("{name} {what}"));
        }
    }

    for &p in sys.parallel.iter() {
        for &s in sys.coparallel.iter() {
            if !p.is_disjoint(s) && p.len() > 1 && s.len() > 1 {
                c.fail(L3, &[p, s], String::from("intersecting classes both have more than one element"));
            }
        }
    }

    for &l in sys.locked.iter() {
        if l.is_empty() || l == full || !l.is_subset_of(full) {
            c.fail(L4, &[l], String::from("locked set is not a nonempty proper subset"));
        } else if sys.parallel.contains(l) || sys.coparallel.contains(l) {
            c.fail(L4, &[l], String::from("locked set is also a closure class"));
        }
    }

    for &x in sys.parallel.iter().chain(sys.coparallel.iter()) {
        for &l in sys.locked.iter() {
            if !x.is_disjoint(l) && !x.is_subset_of(l) {
                c.fail(L5, &[x, l], String::from("class meets the locked set without being inside it"));
            }
        }
    }

    if c.r(Subset::EMPTY) != 0 {
        c.fail(L7, &[Subset::EMPTY], format!("r(empty) = {}", c.r(Subset::EMPTY)));
    }
    for x in full.submasks() {
        let v = c.r(x);
        if v > total {
            c.fail(L7, &[x], format!("r = {v} exceeds r(E) = {total}"));
        }
    }

    for &p in sys.parallel.iter() {
        let want = total.min(1);
        if c.r(p) != want {
            c.fail(L8, &[p], format!("r = {}, expected {want}", c.r(p)));
        }
        let rest = full.difference(p);
        let want = rest.len().min(total);
        if c.r(rest) != want {
            c.fail(L9, &[rest], format!("r = {}, expected {want}", c.r(rest)));
        }
    }
    for &s in sys.coparallel.iter() {
        let want = s.len().min(total);
        if c.r(s) != want {
            c.fail(L10, &[s], format!("r = {}, expected {want}", c.r(s)));
        }
        let rest = full.difference(s);
        let want = rest.len().min((total + 1).saturating_sub(s.len()));
        if c.r(rest) != want {
            c.fail(L11, &[rest], format!("r = {}, expected {want}", c.r(rest)));
        }
    }

    for &l in sys.locked.iter() {
        let bound = 2.max((total + 2).saturating_sub(full.difference(l).len()));
        if c.r(l) < bound {
            c.fail(L12, &[l], format!("r = {} is below {bound}", c.r(l)));
        }
    }

    let increasing: Vec<Subset> =
        sys.parallel.iter().chain(sys.locked.iter()).copied().chain([Subset::EMPTY, full]).collect();
    for &x in &increasing {
        for &y in &increasing {
            if x != y && x.is_subset_of(y) && c.r(x) > c.r(y) {
                c.fail(L13, &[x, y], format!("r drops from {} to {}", c.r(x), c.r(y)));
            }
        }
    }

    let mut family = increasing.clone();
    family.extend(sys.coparallel.iter().copied());
    family.sort_unstable();
    family.dedup();
    for (i, &x) in family.iter().enumerate() {
        for &y in &family[i + 1..] {
            let lhs = c.r(x) + c.r(y);
            let rhs = c.r(x.union(y)) + c.r(x.intersection(y));
            if lhs < rhs {
                c.fail(L14, &[x, y], format!("{lhs} < {rhs}"));
            }
        }
    }

    for &l in sys.locked.iter() {
        let Some(low) = l.first() else { continue };
        let rl = c.r(l);
        // unordered covers: the part holding the lowest element is listed
        for x in l.submasks() {
            if !x.contains(low) || x == l {
                continue;
            }
            let y = l.difference(x);
            if rl >= c.r(x) + c.r(y) {
                c.fail(L15, &[l, x, y], format!("r(L) = {rl} is not below {}", c.r(x) + c.r(y)));
            }
        }
        let outside = full.difference(l);
        if let Some(low) = outside.first() {
            for a in outside.submasks() {
                if !a.contains(low) || a == outside {
                    continue;
                }
                let (x, y) = (l.union(a), l.union(outside.difference(a)));
                if rl + total >= c.r(x) + c.r(y) {
                    c.fail(L16, &[l, x, y], format!("r(L) = {rl} is not below {}", c.r(x) + c.r(y) - total));
                }
            }
        }
    }

    if !sys.locked.is_empty() {
        let d = Derivations::new(sys)?;
        let ls = sys.locked.as_slice();
        let mut seen_meet = Vec::new();
        let mut seen_join = Vec::new();
        for (i, &l1) in ls.iter().enumerate() {
            for &l2 in &ls[i + 1..] {
                let meet = l1.intersection(l2);
                if !meet.is_empty() && !sys.locked.contains(meet) && !seen_meet.contains(&meet) {
                    seen_meet.push(meet);
                    let want = c.r(meet) as i64;
                    if d.down_rank(meet) != Some(want) {
                        c.fail(L18, &[l1, l2, meet], chain_text("P1/P2", d.down_rank(meet), want));
                    }
                }
                let join = l1.union(l2);
                if join != full && !sys.locked.contains(join) && !seen_join.contains(&join) {
                    seen_join.push(join);
                    let want = c.r(join) as i64;
                    if d.up_rank(join) != Some(want) {
                        c.fail(L19, &[l1, l2, join], chain_text("P3/P4", d.up_rank(join), want));
                    }
                }
            }
        }
    }

    let mut violations = c.out;
    violations.sort_by_key(|v| v.axiom);
    Ok(AxiomReport { violations, oracle_disagreements })
}

fn chain_text(rules: &str, got: Option<i64>, want: i64) -> String {
    match got {
        Some(v) => format!("best {rules} chain gives {v}, rank is {want}"),
        None => format!("no {rules} chain applies, rank is {want}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, uniform};
    use crate::matroid::two_sum;

    fn set(elements: &[usize]) -> Subset {
        Subset::from_elements(elements.iter().copied())
    }

    fn sample() -> Vec<Matroid> {
        let mut out = vec![
            catalog::mk4(),
            catalog::whirl3(),
            catalog::q6(),
            catalog::p6(),
            catalog::vamos(),
            uniform(2, 4).unwrap(),
            uniform(3, 6).unwrap(),
            uniform(1, 3).unwrap(),
        ];
        out.push(two_sum(&catalog::mk4(), 0, &uniform(1, 3).unwrap(), 0).unwrap());
        out.push(two_sum(&catalog::q6(), 1, &uniform(2, 4).unwrap(), 2).unwrap());
        let extra: Vec<Matroid> = out.iter().map(|m| m.dual()).collect();
        out.extend(extra);
        out
    }

    #[test]
    fn extracted_systems_are_valid() {
        for m in sample() {
            let sys = extract(&m).unwrap();
            let report = validate(&sys, &m).unwrap();
            assert!(report.is_valid(), "{:?}", report.violations);
            assert!(report.oracle_disagreements.is_empty());
        }
    }

    #[test]
    fn derived_rank_matches_brute_force() {
        for m in sample() {
            let sys = extract(&m).unwrap();
            let d = Derivations::new(&sys).unwrap();
            for x in m.ground_set().submasks() {
                if sys.is_structured(x) {
                    assert_eq!(d.derive(x), Err(AxiomError::InDomain(x)));
                } else {
                    assert_eq!(d.derive(x).unwrap().rank, m.r(x), "{x:?}");
                }
            }
        }
    }

    #[test]
    fn derivation_examples() {
        let sys = extract(&catalog::mk4()).unwrap();
        let ab = set(&[0, 1]);
        let d = rank_extend(&sys, ab).unwrap();
        assert_eq!(d.rank, 2);
        assert_eq!(d.trace, vec![Step { rule: Rule::P2, set: ab, witness: set(&[0]), next: set(&[1]) }]);
        assert_eq!(rank_extend(&sys, set(&[0, 1, 2, 3])).unwrap().rank, 3);
        assert_eq!(rank_extend(&sys, set(&[0, 1, 3])), Err(AxiomError::InDomain(set(&[0, 1, 3]))));
        assert_eq!(rank_extend(&sys, Subset::EMPTY), Err(AxiomError::InDomain(Subset::EMPTY)));
    }

    #[test]
    fn traces_end_in_the_rank_map() {
        let sys = extract(&catalog::vamos()).unwrap();
        let d = Derivations::new(&sys).unwrap();
        for x in sys.ground_set().submasks().filter(|&x| !sys.is_structured(x)) {
            let trace = d.derive(x).unwrap().trace;
            assert_eq!(trace[0].set, x);
            assert!(sys.r.contains_key(&trace.last().unwrap().next));
            for w in trace.windows(2) {
                assert_eq!(w[0].next, w[1].set);
            }
        }
    }

    #[test]
    fn system_oracle_reproduces_the_rank_function() {
        for m in [catalog::mk4(), catalog::vamos(), catalog::whirl3()] {
            let sys = extract(&m).unwrap();
            let o = SystemOracle::new(&sys).unwrap();
            assert!(m.ground_set().submasks().all(|x| o.rank(x) == m.r(x)));
            assert!(validate(&sys, &o).unwrap().is_valid());
        }
    }

    #[test]
    fn missing_rank_is_reported() {
        let mut sys = extract(&catalog::mk4()).unwrap();
        sys.r.remove(&set(&[0, 1, 3]));
        let m = catalog::mk4();
        assert_eq!(validate(&sys, &m), Err(AxiomError::DomainMismatch(set(&[0, 1, 3]))));
        assert!(matches!(rank_extend(&sys, set(&[0, 1])), Err(AxiomError::DomainMismatch(_))));
    }

    fn violated_after(m: &Matroid, mutate: impl FnOnce(&mut LockedSystem)) -> Vec<AxiomId> {
        let mut sys = extract(m).unwrap();
        mutate(&mut sys);
        validate(&sys, m).unwrap().violated()
    }

    #[test]
    fn mutations_are_detected() {
        use AxiomId::*;
        let m = catalog::mk4();
        let abd = set(&[0, 1, 3]);

        let v = violated_after(&m, |s| {
            s.r.insert(abd, 1);
        });
        assert!(v.contains(&L12) || v.contains(&L13), "{v:?}");

        let v = violated_after(&m, |s| {
            let mut p = s.parallel.clone().into_vec();
            p.push(set(&[0, 1]));
            s.parallel = SubsetFamily::from_vec(p);
            s.r.insert(set(&[0, 1]), 2);
            s.r.insert(set(&[2, 3, 4, 5]), 3);
        });
        assert!(v.contains(&L2), "{v:?}");

        let v = violated_after(&m, |s| {
            let mut c: Vec<Subset> = s.coparallel.iter().copied().filter(|x| !x.is_subset_of(set(&[0, 1]))).collect();
            c.push(set(&[0, 1]));
            s.coparallel = SubsetFamily::from_vec(c);
            s.r.insert(set(&[0, 1]), 2);
            s.r.insert(set(&[2, 3, 4, 5]), 3);
        });
        assert!(v.contains(&L11) || v.contains(&L5), "{v:?}");

        let v = violated_after(&m, |s| {
            let mut l = s.locked.clone().into_vec();
            l.push(set(&[0]));
            s.locked = SubsetFamily::from_vec(l);
        });
        assert!(v.contains(&L4), "{v:?}");

        let v = violated_after(&m, |s| {
            let mut l = s.locked.clone().into_vec();
            l.push(set(&[0, 1]));
            s.locked = SubsetFamily::from_vec(l);
            s.r.insert(set(&[0, 1]), 2);
        });
        assert!(v.contains(&L15), "{v:?}");

        let v = violated_after(&m, |s| {
            s.r.insert(s.ground_set(), 4);
        });
        assert!(v.contains(&L9), "{v:?}");

        // the U(2,4) side is the only locked set inside a meet of two others
        let glued = two_sum(&m, 0, &uniform(2, 4).unwrap(), 0).unwrap();
        let side = set(&[5, 6, 7]);
        let v = violated_after(&glued, |s| {
            s.locked = SubsetFamily::from_vec(s.locked.iter().copied().filter(|&l| l != side).collect());
            s.r.remove(&side);
        });
        assert_eq!(v, vec![L18]);
    }

    // Gluing two non-uniform pieces leaves 4-circuits across the seam that
    // no chain starting with P1 or P2 reaches; chains starting with P3 or
    // P4 still give their rank.
    #[test]
    fn two_sum_of_two_wheels_has_no_meet_decomposition() {
        let m = two_sum(&catalog::mk4(), 0, &catalog::mk4(), 3).unwrap();
        let sys = extract(&m).unwrap();
        assert_eq!(sys.locked.len(), 10);
        let report = validate(&sys, &m).unwrap();
        assert_eq!(report.violated(), vec![AxiomId::L18, AxiomId::L19]);
        let meet = set(&[0, 2, 5, 6]);
        assert!(report.violations.iter().any(|v| v.axiom == AxiomId::L18 && v.witnesses[2] == meet));
        assert_eq!(m.r(meet), 3);

        let d = Derivations::new(&sys).unwrap();
        assert_eq!((d.down_rank(meet), d.up_rank(meet)), (Some(4), Some(3)));
        assert_eq!(d.derive(meet).unwrap().rank, 3);
        for x in m.ground_set().submasks().filter(|&x| !sys.is_structured(x)) {
            assert_eq!(d.derive(x).unwrap().rank, m.r(x), "{x:?}");
        }
    }
}
