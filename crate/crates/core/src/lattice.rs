//! Augmented and reduced locked lattices, cardinality recovery by maximum
//! flow, and the series-arc encoding into an unlabelled DAG.
//!
//! Vertices are laid out root, coparallel closures, parallel closures,
//! locked subsets, sink, each level in canonical subset order. Arcs run
//!
//! * root to every coparallel closure,
//! * coparallel closure to every parallel closure it meets,
//! * parallel closure to every locked subset containing it, or to the sink
//!   when no locked subset contains it,
//! * locked subset to each locked subset covering it under inclusion,
//! * maximal locked subsets to the sink.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::dagiso::ColoredDigraph;
use crate::locked::LockedStructure;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vertex {0} is not a locked-subset vertex")]
    NotLockedVertex(usize),
    #[error("vertex {0} does not carry a single-number label")]
    LabelArityMismatch(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Root,
    Coparallel,
    Parallel,
    Locked,
    Sink,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Root => "root",
            Level::Coparallel => "coparallel",
            Level::Parallel => "parallel",
            Level::Locked => "locked",
            Level::Sink => "sink",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// (cardinality, rank)
    Pair(usize, usize),
    Single(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDag {
    levels: Vec<Level>,
    labels: Vec<VertexLabel>,
    provenance: Vec<Option<Subset>>,
    arcs: Vec<(usize, usize)>,
}

impl LabeledDag {
    /// Assembles a DAG from per-vertex data; arcs are sorted and deduplicated.
    pub fn from_parts(
        levels: Vec<Level>,
        labels: Vec<VertexLabel>,
        provenance: Vec<Option<Subset>>,
        mut arcs: Vec<(usize, usize)>,
    ) -> Self {
        assert!(levels.len() == labels.len() && labels.len() == provenance.len());
        assert!(arcs.iter().all(|&(u, v)| u < levels.len() && v < levels.len()));
        arcs.sort_unstable();
        arcs.dedup();
        LabeledDag { levels, labels, provenance, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn level(&self, v: usize) -> Level {
        self.levels[v]
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn provenance(&self, v: usize) -> Option<Subset> {
        self.provenance[v]
    }

    pub fn vertices_at(&self, level: Level) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.levels[v] == level)
    }

    pub fn root(&self) -> Option<usize> {
        self.vertices_at(Level::Root).next()
    }

    pub fn sink(&self) -> Option<usize> {
        self.vertices_at(Level::Sink).next()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    /// Colors encode (level, label) injectively so that isomorphisms keep
    /// levels and labels.
    pub fn to_colored(&self) -> ColoredDigraph {
        let colors = self
            .levels
            .iter()
            .zip(&self.labels)
            .map(|(&level, &label)| {
                let level = (level as u64) << 48;
                match label {
                    VertexLabel::Single(m) => level | m as u64,
                    VertexLabel::Pair(c, r) => level | 1 << 47 | (c as u64) << 24 | r as u64,
                }
            })
            .collect();
        ColoredDigraph::new(colors, self.arcs.clone())
    }
}

fn build(s: &LockedStructure, reduced: bool) -> LabeledDag {
    let full = s.ground_set();
    let rank_of = |x: Subset| s.rho(x).expect("structured set has a rank");
    let mut levels = vec![Level::Root];
    let mut sets = vec![Subset::EMPTY];
    let mut labels = vec![if reduced { VertexLabel::Single(0) } else { VertexLabel::Pair(0, 0) }];
    let mut push = |level: Level, x: Subset, reduced_label: usize| {
        levels.push(level);
        sets.push(x);
        labels.push(if reduced { VertexLabel::Single(reduced_label) } else { VertexLabel::Pair(x.len(), rank_of(x)) });
    };
    for &x in s.coparallel.iter() {
        push(Level::Coparallel, x, x.len());
    }
    for &x in s.parallel.iter() {
        push(Level::Parallel, x, x.len());
    }
    for &x in s.locked.iter() {
        push(Level::Locked, x, rank_of(x));
    }
    push(Level::Sink, full, s.rank);

    let first_s = 1;
    let first_p = first_s + s.coparallel.len();
    let first_l = first_p + s.parallel.len();
    let sink = first_l + s.locked.len();
    let mut arcs = Vec::new();
    for (i, &co) in s.coparallel.iter().enumerate() {
        arcs.push((0, first_s + i));
        for (j, &p) in s.parallel.iter().enumerate() {
            if !co.is_disjoint(p) {
                arcs.push((first_s + i, first_p + j));
            }
        }
    }
    for (j, &p) in s.parallel.iter().enumerate() {
        let mut covered = false;
        for (k, &l) in s.locked.iter().enumerate() {
            if p.is_subset_of(l) {
                arcs.push((first_p + j, first_l + k));
                covered = true;
            }
        }
        if !covered {
            arcs.push((first_p + j, sink));
        }
    }
    let locked = s.locked.as_slice();
    for (k, &low) in locked.iter().enumerate() {
        let mut maximal = true;
        for (t, &high) in locked.iter().enumerate() {
            if k == t || !low.is_subset_of(high) {
                continue;
            }
            maximal = false;
            let covers =
                !locked.iter().any(|&mid| mid != low && mid != high && low.is_subset_of(mid) && mid.is_subset_of(high));
            if covers {
                arcs.push((first_l + k, first_l + t));
            }
        }
        if maximal {
            arcs.push((first_l + k, sink));
        }
    }
    LabeledDag::from_parts(levels, labels, sets.into_iter().map(Some).collect(), arcs)
}

/// Every vertex labelled (cardinality, rank).
pub fn augmented_lattice(s: &LockedStructure) -> LabeledDag {
    build(s, false)
}

/// Single labels: cardinality for closures, rank for locked subsets, 0 at
/// the root and `r(E)` at the sink.
pub fn reduced_lattice(s: &LockedStructure) -> LabeledDag {
    build(s, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Unit,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedDag {
    pub dag: LabeledDag,
    /// One entry per arc of `dag`, in the same order.
    pub capacities: Vec<Capacity>,
}

impl CapacitatedDag {
    /// Unit capacity exactly on coparallel-to-parallel arcs.
    pub fn from_lattice(dag: &LabeledDag) -> Self {
        let capacities = dag
            .arcs
            .iter()
            .map(|&(u, v)| {
                if dag.levels[u] == Level::Coparallel && dag.levels[v] == Level::Parallel {
                    Capacity::Unit
                } else {
                    Capacity::Unbounded
                }
            })
            .collect();
        CapacitatedDag { dag: dag.clone(), capacities }
    }

    /// Edmonds-Karp; unbounded arcs get a capacity above the total of the
    /// unit arcs, which no flow can reach.
    pub fn max_flow(&self, source: usize, target: usize) -> u64 {
        let n = self.dag.vertex_count();
        let units = self.capacities.iter().filter(|c| **c == Capacity::Unit).count() as u64;
        let infinite = units + 1;
        // residual graph as adjacency of edge ids; edge 2i forward, 2i+1 back
        let mut to = Vec::with_capacity(2 * self.dag.arcs.len());
        let mut cap = Vec::with_capacity(2 * self.dag.arcs.len());
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), c) in self.dag.arcs.iter().zip(&self.capacities) {
            adj[u].push(to.len());
            to.push(v);
            cap.push(if *c == Capacity::Unit { 1 } else { infinite });
            adj[v].push(to.len());
            to.push(u);
            cap.push(0);
        }
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; n];
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                if u == target {
                    reached = true;
                    break;
                }
                for &id in &adj[u] {
                    let v = to[id];
                    if cap[id] > 0 && v != source && via[v] == usize::MAX {
                        via[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            if !reached || source == target {
                return total;
            }
            let mut push = u64::MAX;
            let mut v = target;
            while v != source {
                let id = via[v];
                push = push.min(cap[id]);
                v = to[id ^ 1];
            }
            let mut v = target;
            while v != source {
                let id = via[v];
                cap[id] -= push;
                cap[id ^ 1] += push;
                v = to[id ^ 1];
            }
            total += push;
            if total >= infinite {
                return total;
            }
        }
    }
}

/// Cardinality of the locked subset at `vertex`, as the maximum flow from
/// the root with unit capacities between coparallel and parallel closures.
pub fn recover_cardinality(d: &LabeledDag, vertex: usize) -> Result<usize, LatticeError> {
    if vertex >= d.vertex_count() || d.levels[vertex] != Level::Locked {
        return Err(LatticeError::NotLockedVertex(vertex));
    }
    let root = d.root().expect("lattice has a root");
    Ok(CapacitatedDag::from_lattice(d).max_flow(root, vertex) as usize)
}

/// Replaces each vertex labelled `m` by a directed path of `m` arcs.
/// Arcs into a vertex enter the head of its path, arcs out leave the tail.
pub fn series_encode(d: &LabeledDag) -> Result<ColoredDigraph, LatticeError> {
    let mut head = Vec::with_capacity(d.vertex_count());
    let mut next = 0;
    let mut arcs = Vec::new();
    for (v, label) in d.labels.iter().enumerate() {
        let VertexLabel::Single(m) = *label else {
            return Err(LatticeError::LabelArityMismatch(v));
        };
        head.push(next);
        for i in 0..m {
            arcs.push((next + i, next + i + 1));
        }
        next += m + 1;
    }
    let tail = |v: usize| match d.labels[v] {
        VertexLabel::Single(m) => head[v] + m,
        VertexLabel::Pair(..) => unreachable!(),
    };
    for &(u, v) in &d.arcs {
        arcs.push((tail(u), head[v]));
    }
    Ok(ColoredDigraph::uncolored(next, arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, uniform};
    use crate::dagiso::{are_isomorphic, brute_force_iso_with_limit};
    use crate::locked::{dual_structure, locked_structure};
    use crate::matroid::two_sum;

    fn structure(m: &crate::Matroid) -> LockedStructure {
        locked_structure(m).unwrap()
    }

    fn count_at(d: &LabeledDag, level: Level) -> usize {
        d.vertices_at(level).count()
    }

    #[test]
    fn mk4_augmented_lattice() {
        let d = augmented_lattice(&structure(&catalog::mk4()));
        assert_eq!(d.vertex_count(), 18);
        assert_eq!(d.arcs().len(), 28);
        let labels_at = |level| -> Vec<VertexLabel> { d.vertices_at(level).map(|v| d.label(v)).collect() };
        assert_eq!(labels_at(Level::Root), vec![VertexLabel::Pair(0, 0)]);
        assert!(labels_at(Level::Coparallel).iter().all(|&l| l == VertexLabel::Pair(1, 1)));
        assert!(labels_at(Level::Parallel).iter().all(|&l| l == VertexLabel::Pair(1, 1)));
        assert_eq!(labels_at(Level::Locked), vec![VertexLabel::Pair(3, 2); 4]);
        assert_eq!(labels_at(Level::Sink), vec![VertexLabel::Pair(6, 3)]);
        assert_eq!(d.out_degree(0), 6);
    }

    #[test]
    fn uniform_lattice_has_empty_locked_level() {
        let d = augmented_lattice(&structure(&uniform(2, 4).unwrap()));
        assert_eq!(count_at(&d, Level::Coparallel), 4);
        assert_eq!(count_at(&d, Level::Parallel), 4);
        assert_eq!(count_at(&d, Level::Locked), 0);
        let sink = d.sink().unwrap();
        assert!(d.vertices_at(Level::Parallel).all(|p| d.arcs().contains(&(p, sink))));
        assert_eq!(d.arcs().len(), 12);
    }

    #[test]
    fn reduced_labels() {
        let d = reduced_lattice(&structure(&catalog::mk4()));
        assert!(d.vertices_at(Level::Locked).all(|v| d.label(v) == VertexLabel::Single(2)));
        assert_eq!(d.label(d.sink().unwrap()), VertexLabel::Single(3));
        assert!(d.vertices_at(Level::Parallel).all(|v| d.label(v) == VertexLabel::Single(1)));
        assert!(d.vertices_at(Level::Coparallel).all(|v| d.label(v) == VertexLabel::Single(1)));
    }

    #[test]
    fn reduced_lattice_is_relabeling_invariant() {
        let mk4 = catalog::mk4();
        let moved = mk4.permute(&[4, 2, 0, 5, 1, 3]).unwrap();
        let a = reduced_lattice(&structure(&mk4)).to_colored();
        let b = reduced_lattice(&structure(&moved)).to_colored();
        assert!(are_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn root_out_degree_is_coparallel_count() {
        for m in [catalog::mk4(), catalog::vamos(), uniform(1, 4).unwrap(), uniform(3, 4).unwrap()] {
            let s = structure(&m);
            let d = reduced_lattice(&s);
            assert_eq!(d.out_degree(d.root().unwrap()), s.coparallel.len());
        }
    }

    #[test]
    fn recover_cardinality_mk4() {
        let d = reduced_lattice(&structure(&catalog::mk4()));
        for v in d.vertices_at(Level::Locked) {
            assert_eq!(recover_cardinality(&d, v), Ok(3));
        }
        assert_eq!(recover_cardinality(&d, 0), Err(LatticeError::NotLockedVertex(0)));
        assert_eq!(recover_cardinality(&d, 99), Err(LatticeError::NotLockedVertex(99)));
    }

    #[test]
    fn recover_cardinality_with_two_element_parallel_class() {
        // M(K4) with `a` replaced by two parallel copies
        let m = two_sum(&catalog::mk4(), 0, &uniform(1, 3).unwrap(), 0).unwrap();
        let s = structure(&m);
        assert!(s.parallel.iter().any(|p| p.len() == 2));
        let d = reduced_lattice(&s);
        let mut saw_big_class = false;
        for v in d.vertices_at(Level::Locked) {
            let l = d.provenance(v).unwrap();
            saw_big_class |= s.parallel.iter().any(|p| p.len() == 2 && p.is_subset_of(l));
            assert_eq!(recover_cardinality(&d, v), Ok(l.len()));
        }
        assert!(saw_big_class);
        // frozen from brute force: the locked sets of this matroid
        let sizes: Vec<usize> = s.locked.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![3, 3, 4, 4]);
    }

    #[test]
    fn series_encoding_sizes() {
        let s = structure(&catalog::mk4());
        let enc = series_encode(&reduced_lattice(&s)).unwrap();
        // root 1, 12 closures * 2, 4 locked * 3, sink 4
        assert_eq!(enc.vertex_count(), 1 + 24 + 12 + 4);
        assert!(enc.vertex_count() <= (4 + 12 + 2) * 7);
        assert!(enc.is_acyclic());
        assert_eq!(series_encode(&augmented_lattice(&s)), Err(LatticeError::LabelArityMismatch(0)));
    }

    #[test]
    fn zero_labels_keep_the_shape() {
        let d = LabeledDag::from_parts(
            vec![Level::Root, Level::Locked, Level::Locked, Level::Sink],
            vec![VertexLabel::Single(0); 4],
            vec![None; 4],
            vec![(0, 1), (0, 2), (1, 3), (2, 3)],
        );
        let enc = series_encode(&d).unwrap();
        let plain = ColoredDigraph::uncolored(4, d.arcs().to_vec());
        assert!(are_isomorphic(&enc, &plain).is_some());
    }

    #[test]
    fn series_route_matches_labeled_route_by_brute_force() {
        // small lattices so both sides fit exhaustive search
        let ms = [uniform(1, 3).unwrap(), uniform(2, 3).unwrap(), uniform(1, 2).unwrap()];
        for a in &ms {
            for b in &ms {
                let (da, db) = (reduced_lattice(&structure(a)), reduced_lattice(&structure(b)));
                let labeled = brute_force_iso_with_limit(&da.to_colored(), &db.to_colored(), 16).unwrap();
                let series =
                    brute_force_iso_with_limit(&series_encode(&da).unwrap(), &series_encode(&db).unwrap(), 16).unwrap();
                assert_eq!(labeled, series);
            }
        }
    }

    #[test]
    fn lattice_shape_invariants() {
        for m in [catalog::mk4(), catalog::vamos(), catalog::whirl3(), catalog::q6(), catalog::p6()] {
            let s = structure(&m);
            let d = reduced_lattice(&s);
            assert!(d.to_colored().is_acyclic());
            let n = d.vertex_count();
            let sources: Vec<_> = (0..n).filter(|&v| d.arcs().iter().all(|a| a.1 != v)).collect();
            let sinks: Vec<_> = (0..n).filter(|&v| d.out_degree(v) == 0).collect();
            assert_eq!(sources, vec![0]);
            assert_eq!(sinks, vec![n - 1]);
            let dual = reduced_lattice(&dual_structure(&s));
            assert_eq!(dual.vertex_count(), n);
            assert_eq!(dual.arcs().len(), d.arcs().len());
        }
    }
}
