//! Locked subsets and the locked structure `(P, S, L, rho)` of a matroid.
//!
//! A proper nonempty `L ⊂ E` is locked when `M|L` and `M*|(E\L)` are both
//! connected and `min(r(L), r*(E\L)) >= 2`. For a disconnected matroid the
//! locked subsets are collected component by component.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::CheckedMul;

use crate::matroid::{components_with, Matroid, MatroidError};
use crate::subset::{Subset, SubsetFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LockedError {
    #[error("{0:?} is not a proper nonempty subset of the ground set")]
    NotProperSubset(Subset),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// The quadruple of parallel closures, coparallel closures, locked subsets
/// and their ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockedStructure {
    pub ground_size: usize,
    pub rank: usize,
    pub parallel: SubsetFamily,
    pub coparallel: SubsetFamily,
    pub locked: SubsetFamily,
    /// Rank of every member of `P ∪ S ∪ L ∪ {∅, E}`.
    pub rho: BTreeMap<Subset, usize>,
}

impl LockedStructure {
    /// `ℓ(M)`.
    pub fn locked_number(&self) -> usize {
        self.locked.len()
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.ground_size)
    }

    pub fn rho(&self, x: Subset) -> Option<usize> {
        self.rho.get(&x).copied()
    }

    // rank of E \ x for x in the domain, falling back on the closure
    // identities r(E\P) = r(E) and r(E\S) = r(E) + 1 - |S|
    fn rho_of_complement(&self, x: Subset) -> usize {
        let comp = x.complement(self.ground_size);
        if let Some(v) = self.rho(comp) {
            v
        } else if self.coparallel.contains(x) {
            self.rank + 1 - x.len()
        } else {
            self.rank
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LockedCount {
    Exactly(usize),
    Exceeded,
}

/// Answer of the k-locked oracle. `structure` is present iff the count did
/// not exceed the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLockedVerdict {
    pub k: u32,
    pub threshold: u64,
    pub locked_count: LockedCount,
    pub structure: Option<LockedStructure>,
}

impl KLockedVerdict {
    pub fn is_k_locked(&self) -> bool {
        self.structure.is_some()
    }
}

/// Direct test of the definition on the whole ground set.
pub fn is_locked(m: &Matroid, set: Subset) -> Result<bool, LockedError> {
    let full = m.ground_set();
    if set.is_empty() || set == full || !set.is_subset_of(full) {
        return Err(LockedError::NotProperSubset(set));
    }
    m.require_loopless_coloopless()?;
    Ok(locked_in_component(m, full, set))
}

// `set` is a proper nonempty subset of the component `comp`
fn locked_in_component(m: &Matroid, comp: Subset, set: Subset) -> bool {
    let rest = comp.difference(set);
    let rank_set = m.r(set);
    if rank_set < 2 {
        return false;
    }
    // r*(C \ L) in the dual of M|C
    if rest.len() + rank_set < m.r(comp) + 2 {
        return false;
    }
    if components_with(set, |x| m.r(x)).len() != 1 {
        return false;
    }
    // M*|(C\L) is the dual of M|C / L, and connectivity is self-dual
    components_with(rest, |x| m.r(x.union(set)) - rank_set).len() == 1
}

/// Locked subsets in canonical order, or `None` once more than `limit`
/// have been found.
fn enumerate_locked(m: &Matroid, limit: Option<usize>) -> Option<Vec<Subset>> {
    let mut found = Vec::new();
    for comp in m.components() {
        for set in comp.submasks() {
            if set.is_empty() || set == comp {
                continue;
            }
            if locked_in_component(m, comp, set) {
                found.push(set);
                if limit.is_some_and(|l| found.len() > l) {
                    return None;
                }
            }
        }
    }
    found.sort_unstable();
    Some(found)
}

fn assemble(m: &Matroid, locked: Vec<Subset>) -> Result<LockedStructure, LockedError> {
    let closures = m.closures()?;
    let locked = SubsetFamily::from_vec(locked);
    let mut rho = BTreeMap::new();
    let full = m.ground_set();
    for &x in closures
        .parallel
        .iter()
        .chain(closures.coparallel.iter())
        .chain(locked.iter())
        .chain([Subset::EMPTY, full].iter())
    {
        rho.insert(x, m.r(x));
    }
    Ok(LockedStructure {
        ground_size: m.ground_size(),
        rank: m.rank(),
        parallel: closures.parallel,
        coparallel: closures.coparallel,
        locked,
        rho,
    })
}

pub fn locked_structure(m: &Matroid) -> Result<LockedStructure, LockedError> {
    m.require_loopless_coloopless()?;
    let locked = enumerate_locked(m, None).expect("no limit");
    assemble(m, locked)
}

/// The k-locked oracle with threshold `ceil(c * |E|^k)`. Enumeration stops
/// as soon as the threshold is exceeded.
pub fn k_locked_decision(m: &Matroid, k: u32, c: Ratio<u64>) -> Result<KLockedVerdict, LockedError> {
    m.require_loopless_coloopless()?;
    let threshold = (m.ground_size() as u64)
        .checked_pow(k)
        .and_then(|p| Ratio::from_integer(p).checked_mul(&c))
        .map(|t| t.ceil().to_integer())
        .unwrap_or(u64::MAX);
    let limit = usize::try_from(threshold).ok();
    match enumerate_locked(m, limit) {
        Some(locked) => Ok(KLockedVerdict {
            k,
            threshold,
            locked_count: LockedCount::Exactly(locked.len()),
            structure: Some(assemble(m, locked)?),
        }),
        None => Ok(KLockedVerdict { k, threshold, locked_count: LockedCount::Exceeded, structure: None }),
    }
}

/// Locked structure of the dual, computed from `s` alone.
pub fn dual_structure(s: &LockedStructure) -> LockedStructure {
    let n = s.ground_size;
    let locked = SubsetFamily::from_vec(s.locked.iter().map(|l| l.complement(n)).collect());
    let mut rho = BTreeMap::new();
    // rho*(X) = rho(E\X) + |X| - r(E)
    for &x in
        s.parallel.iter().chain(s.coparallel.iter()).chain(locked.iter()).chain([Subset::EMPTY, s.ground_set()].iter())
    {
        rho.insert(x, s.rho_of_complement(x) + x.len() - s.rank);
    }
    LockedStructure {
        ground_size: n,
        rank: n - s.rank,
        parallel: s.coparallel.clone(),
        coparallel: s.parallel.clone(),
        locked,
        rho,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, uniform};

    fn set(elements: &[usize]) -> Subset {
        Subset::from_elements(elements.iter().copied())
    }

    #[test]
    fn is_locked_examples() {
        let mk4 = catalog::mk4();
        assert_eq!(is_locked(&mk4, set(&[0, 1, 3])), Ok(true));
        assert_eq!(is_locked(&mk4, set(&[0])), Ok(false));
        assert_eq!(is_locked(&mk4, Subset::EMPTY), Err(LockedError::NotProperSubset(Subset::EMPTY)));
        assert!(is_locked(&mk4, mk4.ground_set()).is_err());

        let u24 = uniform(2, 4).unwrap();
        let proper: Vec<_> = u24.ground_set().submasks().filter(|s| !s.is_empty() && s.len() < 4).collect();
        assert_eq!(proper.len(), 14);
        assert!(proper.iter().all(|&l| is_locked(&u24, l) == Ok(false)));
    }

    #[test]
    fn mk4_structure() {
        let s = locked_structure(&catalog::mk4()).unwrap();
        let expected = [set(&[0, 1, 3]), set(&[0, 2, 5]), set(&[1, 2, 4]), set(&[3, 4, 5])];
        assert_eq!(s.locked.as_slice(), &expected);
        assert!(expected.iter().all(|&l| s.rho(l) == Some(2)));
        assert_eq!(s.rho(Subset::EMPTY), Some(0));
        assert_eq!(s.rho(s.ground_set()), Some(3));
    }

    #[test]
    fn uniform_matroids_have_no_locked_sets() {
        for n in 2..=8 {
            for r in 1..n {
                let s = locked_structure(&uniform(r, n).unwrap()).unwrap();
                assert_eq!(s.locked_number(), 0, "U({r},{n})");
            }
        }
    }

    #[test]
    fn locked_number_is_dual_invariant() {
        let v = catalog::vamos();
        let a = locked_structure(&v).unwrap().locked_number();
        let b = locked_structure(&v.dual()).unwrap().locked_number();
        assert_eq!(a, b);
    }

    #[test]
    fn k_locked_examples() {
        let mk4 = catalog::mk4();
        let one = Ratio::from_integer(1);
        let v = k_locked_decision(&mk4, 1, one).unwrap();
        assert_eq!((v.threshold, v.locked_count), (6, LockedCount::Exactly(4)));
        assert!(v.is_k_locked());

        let v = k_locked_decision(&uniform(3, 7).unwrap(), 0, one).unwrap();
        assert_eq!(v.locked_count, LockedCount::Exactly(0));

        let v = k_locked_decision(&mk4, 0, one).unwrap();
        assert_eq!((v.threshold, v.locked_count), (1, LockedCount::Exceeded));
        assert!(v.structure.is_none());

        // ceil(3/2 * 6^0) = 2 < 4
        let v = k_locked_decision(&mk4, 0, Ratio::new(3, 2)).unwrap();
        assert_eq!(v.threshold, 2);
        assert!(!v.is_k_locked());
    }

    #[test]
    fn dual_structure_examples() {
        let mk4 = catalog::mk4();
        let s = locked_structure(&mk4).unwrap();
        let d = dual_structure(&s);
        let expected = [set(&[2, 4, 5]), set(&[1, 3, 4]), set(&[0, 3, 5]), set(&[0, 1, 2])];
        let mut sorted = expected.to_vec();
        sorted.sort();
        assert_eq!(d.locked.as_slice(), sorted.as_slice());
        assert!(expected.iter().all(|&l| d.rho(l) == Some(2)));
        assert_eq!(d, locked_structure(&mk4.dual()).unwrap());
        assert_eq!(dual_structure(&d), s);

        let u = locked_structure(&uniform(2, 4).unwrap()).unwrap();
        assert_eq!(dual_structure(&u), u);
    }

    #[test]
    fn loops_and_coloops_rejected() {
        let m = Matroid::from_bases(3, [set(&[0, 1])]).unwrap();
        assert!(matches!(locked_structure(&m), Err(LockedError::Matroid(MatroidError::LoopPresent(2)))));
    }

    #[test]
    fn locked_sets_and_complements_are_closed() {
        for m in [catalog::mk4(), catalog::vamos(), catalog::whirl3(), catalog::q6()] {
            let s = locked_structure(&m).unwrap();
            let full = m.ground_set();
            for &l in s.locked.iter() {
                let rest = full.difference(l);
                for e in rest.iter() {
                    assert!(m.r(l.with(e)) > m.r(l));
                }
                for e in l.iter() {
                    assert!(m.r_dual(rest.with(e)) > m.r_dual(rest));
                }
            }
        }
    }
}
