//! Finite matroids given by their list of bases.
//!
//! Every [`Matroid`] carries a rank table over all `2^n` subsets, derived
//! once from the bases at construction. All later rank, independence and
//! connectivity queries are table lookups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::subset::{Subset, SubsetFamily, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("ground set must have at least one element")]
    EmptyGround,
    #[error("ground set of {0} elements exceeds the cap of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("no bases given")]
    EmptyBases,
    #[error("element {element} out of range for a ground set of {n} elements")]
    OutOfRange { element: usize, n: usize },
    #[error("bases {0:?} and {1:?} have different cardinalities")]
    UnequalCardinality(Subset, Subset),
    #[error("exchange fails for bases {0:?}, {1:?} at element {2}")]
    ExchangeViolation(Subset, Subset, usize),
    #[error("invalid element names: {0}")]
    InvalidNames(String),
    #[error("delete and contract sets overlap")]
    OverlappingSets,
    #[error("minor would have an empty ground set")]
    EmptyResult,
    #[error("element {0} is a loop")]
    LoopPresent(usize),
    #[error("element {0} is a coloop")]
    ColoopPresent(usize),
    #[error("2-sum basepoint {0} is a loop or coloop")]
    BasepointIsLoopOrColoop(usize),
    #[error("2-sum summands need at least 3 elements")]
    TooSmall,
    #[error("2-sum summands must be connected")]
    Disconnected,
    #[error("permutation is not a bijection on {0} elements")]
    BadPermutation(usize),
}

/// Element names of a ground set `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    /// Default names `e0 .. e{n-1}`.
    pub fn with_size(n: usize) -> Self {
        GroundSet { names: (0..n).map(|i| format!("e{i}")).collect() }
    }

    /// Names must be distinct, nonempty, and free of whitespace and commas
    /// so they survive the text file format.
    pub fn named(names: Vec<String>) -> Result<Self, MatroidError> {
        if names.is_empty() {
            return Err(MatroidError::EmptyGround);
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',' || c.is_control()) {
                return Err(MatroidError::InvalidNames(format!("unprintable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(MatroidError::InvalidNames(format!("duplicate name {name:?}")));
            }
        }
        Ok(GroundSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    bases: Vec<Subset>,
    rank: usize,
    // rank of every subset, indexed by bitmask
    ranks: Vec<u8>,
}

/// A minor together with the map from old element indices to new ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    pub index_map: Vec<Option<usize>>,
}

/// Result of a connectivity test. `separator` is the connected component
/// containing element 0 when the matroid is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub separator: Option<Subset>,
}

/// Parallel and coparallel (series) classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closures {
    pub parallel: SubsetFamily,
    pub coparallel: SubsetFamily,
}

impl Matroid {
    /// Builds and validates a matroid from its bases. The basis list may be
    /// in any order and may repeat; it is canonicalized.
    pub fn from_bases<I>(n: usize, bases: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = Subset>,
    {
        Self::from_bases_named(GroundSet::with_size(n), bases)
    }

    pub fn from_bases_named<I>(ground: GroundSet, bases: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = Subset>,
    {
        let n = ground.len();
        check_size(n)?;
        let full = Subset::full(n);
        let mut list: Vec<Subset> = bases.into_iter().collect();
        for b in &list {
            if !b.is_subset_of(full) {
                let element = b.difference(full).first().unwrap_or(0);
                return Err(MatroidError::OutOfRange { element, n });
            }
        }
        list.sort_unstable();
        list.dedup();
        let first = *list.first().ok_or(MatroidError::EmptyBases)?;
        if let Some(&b) = list.iter().find(|b| b.len() != first.len()) {
            return Err(MatroidError::UnequalCardinality(first, b));
        }
        check_exchange(n, &list)?;
        Ok(Self::from_valid(ground, list))
    }

    /// Skips validation; `bases` must be canonical, nonempty and satisfy
    /// the exchange axiom.
    pub(crate) fn from_valid(ground: GroundSet, bases: Vec<Subset>) -> Self {
        let n = ground.len();
        let rank = bases[0].len();
        let ranks = rank_table(n, &bases);
        Matroid { ground, bases, rank, ranks }
    }

    pub(crate) fn from_unsorted_valid(ground: GroundSet, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        Self::from_valid(ground, bases)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.ground.len())
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in canonical (lexicographic) order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn with_names(self, names: Vec<String>) -> Result<Self, MatroidError> {
        let ground = GroundSet::named(names)?;
        if ground.len() != self.ground.len() {
            return Err(MatroidError::InvalidNames(format!(
                "expected {} names, got {}",
                self.ground.len(),
                ground.len()
            )));
        }
        Ok(Matroid { ground, ..self })
    }

    /// Rank of `x`, i.e. the largest intersection of `x` with a basis.
    pub fn rank_of(&self, x: Subset) -> Result<usize, MatroidError> {
        self.check_range(x)?;
        Ok(self.r(x))
    }

    /// Rank in the dual matroid.
    pub fn corank_of(&self, x: Subset) -> Result<usize, MatroidError> {
        self.check_range(x)?;
        Ok(self.r_dual(x))
    }

    #[inline]
    pub(crate) fn r(&self, x: Subset) -> usize {
        self.ranks[x.bits() as usize] as usize
    }

    #[inline]
    pub(crate) fn r_dual(&self, x: Subset) -> usize {
        x.len() + self.r(self.ground_set().difference(x)) - self.rank
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        x.is_subset_of(self.ground_set()) && self.r(x) == x.len()
    }

    pub fn is_basis(&self, x: Subset) -> bool {
        x.len() == self.rank && self.is_independent(x)
    }

    fn check_range(&self, x: Subset) -> Result<(), MatroidError> {
        let n = self.ground_size();
        match x.difference(self.ground_set()).first() {
            Some(element) => Err(MatroidError::OutOfRange { element, n }),
            None => Ok(()),
        }
    }

    pub fn loops(&self) -> Subset {
        self.ground_set().iter().filter(|&e| self.r(Subset::singleton(e)) == 0).collect()
    }

    pub fn coloops(&self) -> Subset {
        self.ground_set().iter().filter(|&e| self.r_dual(Subset::singleton(e)) == 0).collect()
    }

    /// Bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let full = self.ground_set();
        let bases = self.bases.iter().map(|b| full.difference(*b)).collect();
        Matroid::from_unsorted_valid(self.ground.clone(), bases)
    }

    /// `self \ delete / contract`, with elements re-packed in increasing
    /// order of their old indices.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Minor, MatroidError> {
        self.check_range(delete)?;
        self.check_range(contract)?;
        if !delete.is_disjoint(contract) {
            return Err(MatroidError::OverlappingSets);
        }
        let keep = self.ground_set().difference(delete.union(contract));
        if keep.is_empty() {
            return Err(MatroidError::EmptyResult);
        }
        // B ∩ keep over bases B meeting delete ∪ contract in a way that is a
        // basis of the deletion and spans the contraction
        let kept_rank = self.r(self.ground_set().difference(delete));
        let contract_rank = self.r(contract);
        let mut index_map = vec![None; self.ground_size()];
        for (new, old) in keep.iter().enumerate() {
            index_map[old] = Some(new);
        }
        let mut bases = Vec::new();
        for b in &self.bases {
            let b_del = b.difference(delete);
            if b_del.len() != kept_rank || b_del.intersection(contract).len() != contract_rank {
                continue;
            }
            bases.push(b_del.difference(contract).map(|e| index_map[e].unwrap()));
        }
        let names = keep.iter().map(|e| String::from(self.ground.name(e))).collect();
        let ground = GroundSet { names };
        Ok(Minor { matroid: Matroid::from_unsorted_valid(ground, bases), index_map })
    }

    /// Restriction `M|set`, i.e. deletion of the complement.
    pub fn restrict(&self, set: Subset) -> Result<Minor, MatroidError> {
        self.check_range(set)?;
        self.minor(self.ground_set().difference(set), Subset::EMPTY)
    }

    /// Connected components, ordered by smallest element.
    pub fn components(&self) -> Vec<Subset> {
        components_with(self.ground_set(), |x| self.r(x))
    }

    pub fn connectivity(&self) -> Connectivity {
        let comps = self.components();
        if comps.len() <= 1 {
            Connectivity { connected: true, separator: None }
        } else {
            Connectivity { connected: false, separator: Some(comps[0]) }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity().connected
    }

    /// Parallel classes and coparallel classes. Both are partitions of the
    /// ground set; loops and coloops are rejected.
    pub fn closures(&self) -> Result<Closures, MatroidError> {
        self.require_loopless_coloopless()?;
        let parallel = classes(self.ground_set(), |x| self.r(x) == 1);
        let coparallel = classes(self.ground_set(), |x| self.r_dual(x) == 1);
        Ok(Closures { parallel, coparallel })
    }

    pub(crate) fn require_loopless_coloopless(&self) -> Result<(), MatroidError> {
        if let Some(e) = self.loops().first() {
            return Err(MatroidError::LoopPresent(e));
        }
        if let Some(e) = self.coloops().first() {
            return Err(MatroidError::ColoopPresent(e));
        }
        Ok(())
    }

    /// Renames element `e` to `perm[e]`; names travel with their elements.
    pub fn permute(&self, perm: &[usize]) -> Result<Matroid, MatroidError> {
        let n = self.ground_size();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(MatroidError::BadPermutation(n));
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(MatroidError::BadPermutation(n));
            }
            seen[p] = true;
        }
        let mut names = vec![String::new(); n];
        for (e, &p) in perm.iter().enumerate() {
            names[p] = self.ground.names[e].clone();
        }
        let bases = self.bases.iter().map(|b| b.map(|e| perm[e])).collect();
        Ok(Matroid::from_unsorted_valid(GroundSet { names }, bases))
    }
}

fn check_size(n: usize) -> Result<(), MatroidError> {
    if n == 0 {
        Err(MatroidError::EmptyGround)
    } else if n > MAX_ELEMENTS {
        Err(MatroidError::TooLarge(n))
    } else {
        Ok(())
    }
}

fn check_exchange(n: usize, bases: &[Subset]) -> Result<(), MatroidError> {
    let mut is_basis = vec![false; 1 << n];
    for b in bases {
        is_basis[b.bits() as usize] = true;
    }
    for &b1 in bases {
        for &b2 in bases {
            let only2 = b2.difference(b1);
            for e in b1.difference(b2).iter() {
                let base = b1.without(e);
                if !only2.iter().any(|f| is_basis[base.with(f).bits() as usize]) {
                    return Err(MatroidError::ExchangeViolation(b1, b2, e));
                }
            }
        }
    }
    Ok(())
}

/// Rank of every subset: independent sets are the downward closure of the
/// bases, and a dependent set has the rank of some one-element deletion.
fn rank_table(n: usize, bases: &[Subset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut indep = vec![false; size];
    for b in bases {
        indep[b.bits() as usize] = true;
    }
    for mask in (1..size).rev() {
        if indep[mask] {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                indep[mask ^ bit] = true;
                rest ^= bit;
            }
        }
    }
    let mut ranks = vec![0u8; size];
    for mask in 1..size {
        ranks[mask] = if indep[mask] {
            mask.count_ones() as u8
        } else {
            let mut best = 0;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                best = best.max(ranks[mask ^ bit]);
                rest ^= bit;
            }
            best
        };
    }
    ranks
}

/// Connected components of the matroid on `ground` with rank function
/// `rank`, via fundamental circuits of a greedy basis. Loops and coloops
/// come out as singletons.
pub(crate) fn components_with(ground: Subset, rank: impl Fn(Subset) -> usize) -> Vec<Subset> {
    let mut basis = Subset::EMPTY;
    for e in ground.iter() {
        if rank(basis.with(e)) > basis.len() {
            basis = basis.with(e);
        }
    }
    let mut parent: Vec<usize> = (0..ground.span()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in ground.difference(basis).iter() {
        for b in basis.iter() {
            if rank(basis.without(b).with(e)) == basis.len() {
                let (re, rb) = (find(&mut parent, e), find(&mut parent, b));
                parent[re.max(rb)] = re.min(rb);
            }
        }
    }
    let mut comps: Vec<Subset> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for e in ground.iter() {
        let root = find(&mut parent, e);
        match roots.iter().position(|&r| r == root) {
            Some(i) => comps[i] = comps[i].with(e),
            None => {
                roots.push(root);
                comps.push(Subset::singleton(e));
            }
        }
    }
    comps
}

/// Equivalence classes of `e ~ f iff e = f or related({e, f})`.
fn classes(ground: Subset, related: impl Fn(Subset) -> bool) -> SubsetFamily {
    let mut left = ground;
    let mut out = Vec::new();
    while let Some(e) = left.first() {
        let class: Subset = left.iter().filter(|&f| f == e || related(Subset::from_elements([e, f]))).collect();
        left = left.difference(class);
        out.push(class);
    }
    SubsetFamily::from_vec(out)
}

/// Matroid 2-sum of `m1` and `m2` along basepoints `e1` and `e2`.
///
/// Elements of `m1` other than `e1` come first, in order, followed by those
/// of `m2` other than `e2`. Names are kept when they stay distinct and are
/// otherwise replaced by defaults.
pub fn two_sum(m1: &Matroid, e1: usize, m2: &Matroid, e2: usize) -> Result<Matroid, MatroidError> {
    let (n1, n2) = (m1.ground_size(), m2.ground_size());
    if n1 < 3 || n2 < 3 {
        return Err(MatroidError::TooSmall);
    }
    if e1 >= n1 {
        return Err(MatroidError::OutOfRange { element: e1, n: n1 });
    }
    if e2 >= n2 {
        return Err(MatroidError::OutOfRange { element: e2, n: n2 });
    }
    if !m1.is_connected() || !m2.is_connected() {
        return Err(MatroidError::Disconnected);
    }
    if m1.loops().union(m1.coloops()).contains(e1) {
        return Err(MatroidError::BasepointIsLoopOrColoop(e1));
    }
    if m2.loops().union(m2.coloops()).contains(e2) {
        return Err(MatroidError::BasepointIsLoopOrColoop(e2));
    }
    let n = n1 + n2 - 2;
    check_size(n)?;
    let left = |e: usize| if e < e1 { e } else { e - 1 };
    let right = |e: usize| (n1 - 1) + if e < e2 { e } else { e - 1 };
    let mut bases = Vec::new();
    for b1 in m1.bases() {
        for b2 in m2.bases() {
            if b1.contains(e1) != b2.contains(e2) {
                let part1 = b1.without(e1).map(left);
                let part2 = b2.without(e2).map(right);
                bases.push(part1.union(part2));
            }
        }
    }
    let names: Vec<String> = (0..n1)
        .filter(|&e| e != e1)
        .map(|e| String::from(m1.ground().name(e)))
        .chain((0..n2).filter(|&e| e != e2).map(|e| String::from(m2.ground().name(e))))
        .collect();
    let ground = GroundSet::named(names).unwrap_or_else(|_| GroundSet::with_size(n));
    Ok(Matroid::from_unsorted_valid(ground, bases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn subsets_of_size(n: usize, k: usize) -> Vec<Subset> {
        Subset::full(n).submasks().filter(|s| s.len() == k).collect()
    }

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_bases(n, subsets_of_size(n, r)).unwrap()
    }

    // exhaustive separator search, independent of the fundamental-circuit route
    fn brute_connected(m: &Matroid) -> bool {
        let full = m.ground_set();
        full.submasks().filter(|a| !a.is_empty() && *a != full).all(|a| m.r(a) + m.r(full.difference(a)) != m.rank())
    }

    #[test]
    fn from_bases_examples() {
        let u24 = uniform(2, 4);
        assert_eq!(u24.rank(), 2);
        assert_eq!(u24.bases().len(), 6);

        let m = Matroid::from_bases(2, [Subset::singleton(0), Subset::singleton(1)]).unwrap();
        assert_eq!(m.rank(), 1);

        let err = Matroid::from_bases(3, [Subset::from_elements([0, 1]), Subset::singleton(2)]);
        assert!(matches!(err, Err(MatroidError::UnequalCardinality(..))));
    }

    #[test]
    fn from_bases_rejects_bad_input() {
        assert_eq!(Matroid::from_bases(3, []), Err(MatroidError::EmptyBases));
        assert_eq!(Matroid::from_bases(2, [Subset::singleton(3)]), Err(MatroidError::OutOfRange { element: 3, n: 2 }));
        // {0,1} and {2,3} alone violate exchange
        let err = Matroid::from_bases(4, [Subset::from_elements([0, 1]), Subset::from_elements([2, 3])]);
        assert!(matches!(err, Err(MatroidError::ExchangeViolation(..))));
        assert_eq!(Matroid::from_bases(17, [Subset::EMPTY]), Err(MatroidError::TooLarge(17)));
    }

    #[test]
    fn rank_examples() {
        let u24 = uniform(2, 4);
        assert_eq!(u24.rank_of(Subset::from_elements([0, 1, 2])), Ok(2));
        let mk4 = catalog::mk4();
        // a, b, d
        assert_eq!(mk4.rank_of(Subset::from_elements([0, 1, 3])), Ok(2));
        assert_eq!(mk4.rank_of(Subset::EMPTY), Ok(0));
        assert!(mk4.rank_of(Subset::singleton(9)).is_err());
    }

    #[test]
    fn rank_table_matches_basis_scan() {
        for m in [catalog::mk4(), catalog::vamos(), catalog::q6()] {
            for x in m.ground_set().submasks() {
                let scan = m.bases().iter().map(|b| b.intersection(x).len()).max().unwrap();
                assert_eq!(m.r(x), scan);
            }
        }
    }

    #[test]
    fn dual_examples() {
        let u24 = uniform(2, 4);
        assert_eq!(u24.dual().bases(), u24.bases());
        assert_eq!(catalog::mk4().dual().rank(), 3);
        let v = catalog::vamos();
        assert_eq!(v.dual().dual(), v);
    }

    #[test]
    fn minor_examples() {
        let u24 = uniform(2, 4);
        let m = u24.minor(Subset::singleton(3), Subset::EMPTY).unwrap();
        assert_eq!(m.matroid.bases(), uniform(2, 3).bases());
        assert_eq!(m.index_map, vec![Some(0), Some(1), Some(2), None]);

        let mk4 = catalog::mk4();
        let r = mk4.restrict(Subset::from_elements([0, 1, 3])).unwrap().matroid;
        assert_eq!(r.rank(), 2);
        assert_eq!(r.ground_size(), 3);
        assert_eq!(r.bases(), uniform(2, 3).bases());
        assert_eq!(r.ground().names(), ["a", "b", "d"]);

        let same = mk4.minor(Subset::EMPTY, Subset::EMPTY).unwrap().matroid;
        assert_eq!(same, mk4);

        assert_eq!(mk4.minor(Subset::singleton(0), Subset::singleton(0)), Err(MatroidError::OverlappingSets));
        assert_eq!(mk4.minor(mk4.ground_set(), Subset::EMPTY), Err(MatroidError::EmptyResult));
    }

    #[test]
    fn contraction_matches_rank_formula() {
        let v = catalog::vamos();
        let c = Subset::from_elements([0, 5]);
        let d = Subset::from_elements([2]);
        let minor = v.minor(d, c).unwrap();
        let keep = v.ground_set().difference(c.union(d));
        for x in keep.submasks() {
            let y = x.map(|e| minor.index_map[e].unwrap());
            assert_eq!(minor.matroid.r(y), v.r(x.union(c)) - v.r(c));
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(uniform(2, 4).is_connected());
        assert!(brute_connected(&uniform(2, 4)));
        let mk4 = catalog::mk4();
        assert!(mk4.is_connected());
        assert!(brute_connected(&mk4));

        // U_{1,1} ⊕ U_{1,1}
        let sum = Matroid::from_bases(2, [Subset::from_elements([0, 1])]).unwrap();
        let c = sum.connectivity();
        assert!(!c.connected);
        assert_eq!(c.separator, Some(Subset::singleton(0)));
    }

    #[test]
    fn components_agree_with_separator_search() {
        let mut cases = vec![catalog::mk4(), catalog::vamos(), catalog::whirl3(), catalog::p6()];
        // U_{1,2} ⊕ U_{2,3}
        let bases: Vec<Subset> =
            subsets_of_size(5, 3).into_iter().filter(|b| b.intersection(Subset::full(2)).len() == 1).collect();
        cases.push(Matroid::from_bases(5, bases).unwrap());
        cases.push(Matroid::from_bases(3, [Subset::singleton(0)]).unwrap());
        for m in cases {
            assert_eq!(m.is_connected(), brute_connected(&m));
            for comp in m.components() {
                let restricted = m.restrict(comp).unwrap().matroid;
                assert!(brute_connected(&restricted));
                let rest = m.ground_set().difference(comp);
                assert_eq!(m.r(comp) + m.r(rest), m.rank());
            }
        }
    }

    #[test]
    fn closures_examples() {
        let c = catalog::mk4().closures().unwrap();
        assert_eq!(c.parallel.len(), 6);
        assert_eq!(c.coparallel.len(), 6);
        assert!(c.parallel.iter().all(|p| p.len() == 1));

        let c = uniform(1, 3).closures().unwrap();
        assert_eq!(c.parallel.as_slice(), &[Subset::full(3)]);
        assert_eq!(c.coparallel.len(), 3);

        let c = uniform(2, 3).closures().unwrap();
        assert_eq!(c.parallel.len(), 3);
        assert_eq!(c.coparallel.as_slice(), &[Subset::full(3)]);

        let with_loop = Matroid::from_bases(2, [Subset::singleton(1)]).unwrap();
        assert_eq!(with_loop.closures(), Err(MatroidError::LoopPresent(0)));
        let with_coloop =
            Matroid::from_bases(3, [Subset::from_elements([0, 1]), Subset::from_elements([0, 2])]).unwrap();
        assert_eq!(with_coloop.closures(), Err(MatroidError::ColoopPresent(0)));
    }

    #[test]
    fn two_sum_examples() {
        let u24 = uniform(2, 4);
        let s = two_sum(&u24, 3, &u24, 0).unwrap();
        assert_eq!(s.ground_size(), 6);
        assert_eq!(s.rank(), 3);
        assert!(brute_connected(&s));
        // the construction is not validated on the way in
        assert!(check_exchange(6, s.bases()).is_ok());
        // restriction to E1 \ e1 has rank r1
        assert_eq!(s.r(Subset::full(3)), 2);

        assert_eq!(two_sum(&uniform(1, 2), 0, &u24, 0), Err(MatroidError::TooSmall));
        let disconnected = Matroid::from_bases(3, [Subset::from_elements([0, 1])]).unwrap();
        assert_eq!(two_sum(&disconnected, 0, &u24, 0), Err(MatroidError::Disconnected));
    }

    #[test]
    fn permute_round_trip() {
        let mk4 = catalog::mk4();
        let perm = [3, 0, 5, 1, 4, 2];
        let p = mk4.permute(&perm).unwrap();
        assert_eq!(p.ground().name(3), "a");
        let mut inverse = [0; 6];
        for (e, &q) in perm.iter().enumerate() {
            inverse[q] = e;
        }
        assert_eq!(p.permute(&inverse).unwrap(), mk4);
        assert!(mk4.permute(&[0, 0, 1, 2, 3, 4]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn rank_is_monotone_submodular_and_dual_formula_holds(
            which in 0usize..5, a in 0u32..256, b in 0u32..256,
        ) {
            let m = [catalog::mk4(), catalog::vamos(), catalog::q6(), catalog::p6(), catalog::whirl3()][which].clone();
            let full = m.ground_set();
            let x = Subset::from_bits(a).intersection(full);
            let y = Subset::from_bits(b).intersection(full);
            if x.is_subset_of(y) {
                proptest::prop_assert!(m.r(x) <= m.r(y));
            }
            proptest::prop_assert!(m.r(x.union(y)) + m.r(x.intersection(y)) <= m.r(x) + m.r(y));
            let d = m.dual();
            proptest::prop_assert_eq!(d.r(x), m.r(full.difference(x)) + x.len() - m.rank());
        }
    }
}
