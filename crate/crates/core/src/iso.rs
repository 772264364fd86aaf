//! Matroid isomorphism and self-duality: exhaustive search over element
//! bijections, comparison of reduced locked lattices, and the closure-size
//! comparison for matroids without locked subsets.

use alloc::vec;
use alloc::vec::Vec;

use crate::dagiso::are_isomorphic;
use crate::lattice::{reduced_lattice, series_encode, LatticeError};
use crate::locked::{dual_structure, locked_structure, LockedError, LockedStructure};
use crate::matroid::{Matroid, MatroidError};
use crate::subset::Subset;

/// Largest ground set the exhaustive search accepts.
pub const BRUTE_FORCE_ELEMENTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error("exhaustive search is limited to {limit} elements, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("matroid {which} has {count} locked subsets")]
    NotZeroLocked { which: usize, count: usize },
    #[error("matroid {0} is not connected")]
    Disconnected(usize),
    #[error(transparent)]
    Locked(#[from] LockedError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bruteforce,
    Lattice,
    ZeroLocked,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::Lattice => "lattice",
            Method::ZeroLocked => "zero-locked",
        }
    }
}

/// How two reduced lattices are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LatticeRoute {
    /// Colored DAG isomorphism on the labelled lattices.
    #[default]
    Labeled,
    /// Uncolored isomorphism of the series-arc encodings.
    SeriesArc,
}

/// Nanosecond timestamps for phase timings.
pub trait Clock {
    fn now_nanos(&self) -> u64;
}

/// Reports every phase as taking no time.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_nanos(&self) -> u64 {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub answer: bool,
    pub method: Method,
    /// `witness[e]` is the image of element `e`.
    pub witness: Option<Vec<usize>>,
    pub locked_counts: Option<(usize, usize)>,
    /// `(phase, nanoseconds)`.
    pub timings: Vec<(&'static str, u64)>,
    /// Steps spent sorting and scanning, for the closure-size method.
    pub operations: Option<u64>,
}

impl IsoReport {
    fn new(answer: bool, method: Method) -> Self {
        IsoReport { answer, method, witness: None, locked_counts: None, timings: Vec::new(), operations: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct IsoEngine<C: Clock = NoClock> {
    clock: C,
    route: LatticeRoute,
}

impl IsoEngine<NoClock> {
    pub fn new() -> Self {
        IsoEngine { clock: NoClock, route: LatticeRoute::Labeled }
    }
}

impl<C: Clock> IsoEngine<C> {
    pub fn with_clock(clock: C) -> Self {
        IsoEngine { clock, route: LatticeRoute::Labeled }
    }

    pub fn route(mut self, route: LatticeRoute) -> Self {
        self.route = route;
        self
    }

    fn timed<T>(&self, timings: &mut Vec<(&'static str, u64)>, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = self.clock.now_nanos();
        let out = f();
        timings.push((phase, self.clock.now_nanos().saturating_sub(start)));
        out
    }

    pub fn bruteforce(&self, m1: &Matroid, m2: &Matroid) -> Result<IsoReport, IsoError> {
        for m in [m1, m2] {
            if m.ground_size() > BRUTE_FORCE_ELEMENTS {
                return Err(IsoError::TooLarge { limit: BRUTE_FORCE_ELEMENTS, got: m.ground_size() });
            }
        }
        let mut timings = Vec::new();
        let witness = self.timed(&mut timings, "search", || find_bijection(m1, m2));
        if let Some(map) = &witness {
            assert!(maps_bases_onto(m1, m2, map), "search returned an unverified bijection");
        }
        let mut report = IsoReport::new(witness.is_some(), Method::Bruteforce);
        report.witness = witness;
        report.timings = timings;
        Ok(report)
    }

    pub fn lattice(&self, m1: &Matroid, m2: &Matroid) -> Result<IsoReport, IsoError> {
        let mut timings = Vec::new();
        let (s1, s2) =
            self.timed(&mut timings, "locked", || Ok::<_, IsoError>((locked_structure(m1)?, locked_structure(m2)?)))?;
        self.compare_structures(&s1, &s2, timings)
    }

    fn compare_structures(
        &self,
        s1: &LockedStructure,
        s2: &LockedStructure,
        mut timings: Vec<(&'static str, u64)>,
    ) -> Result<IsoReport, IsoError> {
        let (d1, d2) = self.timed(&mut timings, "lattice", || (reduced_lattice(s1), reduced_lattice(s2)));
        let (g1, g2) = match self.route {
            LatticeRoute::Labeled => (d1.to_colored(), d2.to_colored()),
            LatticeRoute::SeriesArc => {
                self.timed(&mut timings, "encode", || Ok::<_, IsoError>((series_encode(&d1)?, series_encode(&d2)?)))?
            }
        };
        let answer = self.timed(&mut timings, "dag-iso", || are_isomorphic(&g1, &g2).is_some());
        let mut report = IsoReport::new(answer, Method::Lattice);
        report.locked_counts = Some((s1.locked_number(), s2.locked_number()));
        report.timings = timings;
        Ok(report)
    }

    pub fn zero_locked(&self, m1: &Matroid, m2: &Matroid) -> Result<IsoReport, IsoError> {
        let mut timings = Vec::new();
        let (s1, s2) =
            self.timed(&mut timings, "locked", || Ok::<_, IsoError>((locked_structure(m1)?, locked_structure(m2)?)))?;
        for (which, (m, s)) in [(m1, &s1), (m2, &s2)].into_iter().enumerate() {
            if s.locked_number() != 0 {
                return Err(IsoError::NotZeroLocked { which: which + 1, count: s.locked_number() });
            }
            if !m.is_connected() {
                return Err(IsoError::Disconnected(which + 1));
            }
        }
        let mut ops = 0u64;
        let answer = self.timed(&mut timings, "compare", || closure_sizes_agree(&s1, &s2, &mut ops));
        let mut report = IsoReport::new(answer, Method::ZeroLocked);
        report.locked_counts = Some((0, 0));
        report.timings = timings;
        report.operations = Some(ops);
        Ok(report)
    }

    pub fn self_dual(&self, m: &Matroid, method: Method) -> Result<IsoReport, IsoError> {
        match method {
            Method::Bruteforce => self.bruteforce(m, &m.dual()),
            _ => {
                let mut timings = Vec::new();
                let (s, d) = self.timed(&mut timings, "locked", || {
                    let s = locked_structure(m)?;
                    let d = dual_structure(&s);
                    Ok::<_, IsoError>((s, d))
                })?;
                self.compare_structures(&s, &d, timings)
            }
        }
    }
}

pub fn mip_bruteforce(m1: &Matroid, m2: &Matroid) -> Result<IsoReport, IsoError> {
    IsoEngine::new().bruteforce(m1, m2)
}

pub fn mip_locked(m1: &Matroid, m2: &Matroid, route: LatticeRoute) -> Result<IsoReport, IsoError> {
    IsoEngine::new().route(route).lattice(m1, m2)
}

pub fn mip_zero_locked(m1: &Matroid, m2: &Matroid) -> Result<IsoReport, IsoError> {
    IsoEngine::new().zero_locked(m1, m2)
}

/// Self-duality test. `Method::ZeroLocked` is treated as the lattice method.
pub fn tsd(m: &Matroid, method: Method) -> Result<IsoReport, IsoError> {
    IsoEngine::new().self_dual(m, method)
}

// Sizes lie in 1..=|E|, so the sorted size sequences are compared as
// counting-sort histograms; every element visit and bucket comparison
// counts as one operation.
fn closure_sizes_agree(s1: &LockedStructure, s2: &LockedStructure, ops: &mut u64) -> bool {
    *ops += 2;
    if s1.ground_size != s2.ground_size || s1.rank != s2.rank {
        return false;
    }
    let n = s1.ground_size;
    let mut histogram = |family: &crate::subset::SubsetFamily| {
        let mut counts = vec![0usize; n + 1];
        for x in family.iter() {
            *ops += 1;
            counts[x.len()] += 1;
        }
        counts
    };
    let a = [histogram(&s1.coparallel), histogram(&s1.parallel)];
    let b = [histogram(&s2.coparallel), histogram(&s2.parallel)];
    for (x, y) in a.iter().zip(&b) {
        for (u, v) in x.iter().zip(y) {
            *ops += 1;
            if u != v {
                return false;
            }
        }
    }
    true
}

/// Whether `map` carries the basis list of `m1` exactly onto that of `m2`.
pub fn maps_bases_onto(m1: &Matroid, m2: &Matroid, map: &[usize]) -> bool {
    let n = m1.ground_size();
    if map.len() != n || m2.ground_size() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &t in map {
        if t >= n || seen[t] {
            return false;
        }
        seen[t] = true;
    }
    let mut image: Vec<Subset> = m1.bases().iter().map(|b| b.map(|e| map[e])).collect();
    image.sort_unstable();
    image == m2.bases()
}

fn find_bijection(m1: &Matroid, m2: &Matroid) -> Option<Vec<usize>> {
    let n = m1.ground_size();
    if n != m2.ground_size() || m1.rank() != m2.rank() || m1.bases().len() != m2.bases().len() {
        return None;
    }
    let degree = |m: &Matroid, e: usize| m.bases().iter().filter(|b| b.contains(e)).count();
    let d1: Vec<usize> = (0..n).map(|e| degree(m1, e)).collect();
    let d2: Vec<usize> = (0..n).map(|e| degree(m2, e)).collect();
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = Subset::EMPTY;
    extend(m1, m2, &d1, &d2, 0, &mut map, &mut used).then_some(map)
}

// assigns element k; every subset of the prefix containing k keeps its rank
fn extend(
    m1: &Matroid,
    m2: &Matroid,
    d1: &[usize],
    d2: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut Subset,
) -> bool {
    let n = map.len();
    if k == n {
        return true;
    }
    let prefix = Subset::full(k);
    for t in 0..n {
        if used.contains(t) || d1[k] != d2[t] {
            continue;
        }
        map[k] = t;
        let consistent = prefix.submasks().all(|x| {
            let x = x.with(k);
            m1.r(x) == m2.r(x.map(|e| map[e]))
        });
        if consistent {
            *used = used.with(t);
            if extend(m1, m2, d1, d2, k + 1, map, used) {
                return true;
            }
            *used = used.without(t);
        }
    }
    map[k] = usize::MAX;
    false
}
