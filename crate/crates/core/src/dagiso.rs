//! Exact isomorphism and canonical forms for vertex-colored digraphs.
//!
//! Canonical labelling is color refinement followed by
//! individualization-refinement search. The canonical form is the
//! lexicographically smallest relabelled arc list over all leaves of the
//! search tree, with subtrees pruned by automorphisms found along the way.
//! The digest is the serialized canonical form itself, so equal digests
//! mean isomorphic graphs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DagIsoError {
    #[error("brute-force search is limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
}

/// Largest vertex count [`brute_force_iso`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
    colors: Vec<u64>,
}

impl ColoredDigraph {
    /// Duplicate arcs are dropped.
    pub fn new(colors: Vec<u64>, mut arcs: Vec<(usize, usize)>) -> Self {
        let vertex_count = colors.len();
        assert!(arcs.iter().all(|&(u, v)| u < vertex_count && v < vertex_count), "arc endpoint out of range");
        arcs.sort_unstable();
        arcs.dedup();
        ColoredDigraph { vertex_count, arcs, colors }
    }

    /// All vertices get color 0.
    pub fn uncolored(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Self {
        Self::new(vec![0; vertex_count], arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> ColoredDigraph {
        let mut colors = vec![0; self.vertex_count];
        for (v, &p) in perm.iter().enumerate() {
            colors[p] = self.colors[v];
        }
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        ColoredDigraph::new(colors, arcs)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertex_count];
        for &(_, v) in &self.arcs {
            indeg[v] += 1;
        }
        let adj = self.out_lists();
        let mut stack: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &v in &adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == self.vertex_count
    }

    fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.arcs {
            out[u].push(v);
        }
        out
    }

    fn in_lists(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.arcs {
            inc[v].push(u);
        }
        inc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of input vertex `v`.
    pub labeling: Vec<usize>,
    /// Arcs under the canonical labelling, sorted.
    pub arcs: Vec<(usize, usize)>,
    /// Colors in canonical vertex order.
    pub colors: Vec<u64>,
    pub digest: Vec<u8>,
}

impl CanonicalForm {
    pub fn hex_digest(&self) -> String {
        let mut s = String::with_capacity(self.digest.len() * 2);
        for b in &self.digest {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

type Cells = Vec<Vec<usize>>;

// (out-neighbour cells, in-neighbour cells) of a vertex
type Signature = (Vec<usize>, Vec<usize>);

// best leaf so far: relabelled arcs and the labelling that produced them
type Leaf = (Vec<(usize, usize)>, Vec<usize>);

struct Search<'a> {
    out: &'a [Vec<usize>],
    inc: &'a [Vec<usize>],
    arcs: &'a [(usize, usize)],
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Splits cells by (out-neighbour cells, in-neighbour cells) until
    /// stable. New cells replace their parent in signature order.
    fn refine(&self, mut cells: Cells) -> Cells {
        let n = self.out.len();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut changed = false;
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(Signature, usize)> = cell
                    .into_iter()
                    .map(|v| {
                        let mut o: Vec<usize> = self.out[v].iter().map(|&w| cell_of[w]).collect();
                        let mut i: Vec<usize> = self.inc[v].iter().map(|&w| cell_of[w]).collect();
                        o.sort_unstable();
                        i.sort_unstable();
                        ((o, i), v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|(_, v)| *v).collect());
                        start = k;
                    }
                }
                if keyed[0].0 != keyed[keyed.len() - 1].0 {
                    changed = true;
                }
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.out.len();
        let mut labeling = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = i;
        }
        let mut cert: Vec<(usize, usize)> = self.arcs.iter().map(|&(u, v)| (labeling[u], labeling[v])).collect();
        cert.sort_unstable();
        match &self.best {
            None => self.best = Some((cert, labeling)),
            Some((best, best_lab)) => match cert.cmp(best) {
                core::cmp::Ordering::Less => self.best = Some((cert, labeling)),
                core::cmp::Ordering::Equal => {
                    // v -> u with best_lab[u] == labeling[v]
                    let mut inverse = vec![0; n];
                    for (u, &l) in best_lab.iter().enumerate() {
                        inverse[l] = u;
                    }
                    let auto: Vec<usize> = labeling.iter().map(|&l| inverse[l]).collect();
                    if auto.iter().enumerate().any(|(v, &u)| v != u) {
                        self.automorphisms.push(auto);
                    }
                }
                core::cmp::Ordering::Greater => {}
            },
        }
    }

    fn search(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        // target: smallest non-singleton cell, first by position
        let target =
            cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &candidates {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, w) {
                continue;
            }
            explored.push(w);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&v| v != w).collect();
            child[target] = vec![w];
            child.insert(target + 1, rest);
            let child = self.refine(child);
            prefix.push(w);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Whether `w` is in the orbit of an explored vertex under the group
    /// generated by known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.out.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for auto in &self.automorphisms {
            if prefix.iter().any(|&v| auto[v] != v) {
                continue;
            }
            for (v, &u) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, u));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }
}

pub fn canonical_form(g: &ColoredDigraph) -> CanonicalForm {
    let n = g.vertex_count;
    let out = g.out_lists();
    let inc = g.in_lists();
    let mut search = Search { out: &out, inc: &inc, arcs: &g.arcs, best: None, automorphisms: Vec::new() };
    let mut by_color: Vec<(u64, usize)> = (0..n).map(|v| (g.colors[v], v)).collect();
    by_color.sort_unstable();
    let mut cells: Cells = Vec::new();
    for (i, &(c, v)) in by_color.iter().enumerate() {
        if i > 0 && by_color[i - 1].0 == c {
            cells.last_mut().unwrap().push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    let (arcs, labeling) = if n == 0 {
        (Vec::new(), Vec::new())
    } else {
        let cells = search.refine(cells);
        search.search(cells, &mut Vec::new());
        search.best.take().expect("search reaches a leaf")
    };
    let mut colors = vec![0; n];
    for (v, &l) in labeling.iter().enumerate() {
        colors[l] = g.colors[v];
    }
    let digest = serialize(n, &colors, &arcs);
    CanonicalForm { labeling, arcs, colors, digest }
}

fn serialize(n: usize, colors: &[u64], arcs: &[(usize, usize)]) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 8 * colors.len() + 8 * arcs.len());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for c in colors {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out.extend_from_slice(&(arcs.len() as u32).to_le_bytes());
    for &(u, v) in arcs {
        out.extend_from_slice(&(u as u32).to_le_bytes());
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
    out
}

/// Isomorphism test by canonical forms. The returned bijection maps
/// vertices of `g1` to vertices of `g2` and has been checked arc by arc.
pub fn are_isomorphic(g1: &ColoredDigraph, g2: &ColoredDigraph) -> Option<Vec<usize>> {
    if g1.vertex_count != g2.vertex_count || g1.arcs.len() != g2.arcs.len() {
        return None;
    }
    let c1 = canonical_form(g1);
    let c2 = canonical_form(g2);
    if c1.digest != c2.digest {
        return None;
    }
    let mut from_canon = vec![0; g2.vertex_count];
    for (v, &l) in c2.labeling.iter().enumerate() {
        from_canon[l] = v;
    }
    let witness: Vec<usize> = c1.labeling.iter().map(|&l| from_canon[l]).collect();
    assert!(verify_isomorphism(g1, g2, &witness), "canonical forms agree but the composed map is not an isomorphism");
    Some(witness)
}

/// Checks that `map` is a color- and arc-preserving bijection.
pub fn verify_isomorphism(g1: &ColoredDigraph, g2: &ColoredDigraph, map: &[usize]) -> bool {
    if map.len() != g1.vertex_count || g1.vertex_count != g2.vertex_count || g1.arcs.len() != g2.arcs.len() {
        return false;
    }
    let mut hit = vec![false; g2.vertex_count];
    for (v, &u) in map.iter().enumerate() {
        if u >= g2.vertex_count || hit[u] || g1.colors[v] != g2.colors[u] {
            return false;
        }
        hit[u] = true;
    }
    g1.arcs.iter().all(|&(u, v)| g2.arcs.binary_search(&(map[u], map[v])).is_ok())
}

/// Exhaustive backtracking over color- and degree-respecting bijections.
pub fn brute_force_iso(g1: &ColoredDigraph, g2: &ColoredDigraph) -> Result<bool, DagIsoError> {
    brute_force_iso_with_limit(g1, g2, BRUTE_FORCE_LIMIT)
}

/// [`brute_force_iso`] with a caller-chosen vertex limit.
pub fn brute_force_iso_with_limit(g1: &ColoredDigraph, g2: &ColoredDigraph, limit: usize) -> Result<bool, DagIsoError> {
    let n = g1.vertex_count.max(g2.vertex_count);
    if n > limit {
        return Err(DagIsoError::TooLarge { limit, got: n });
    }
    if g1.vertex_count != g2.vertex_count || g1.arcs.len() != g2.arcs.len() {
        return Ok(false);
    }
    let adj = |g: &ColoredDigraph| {
        let mut m = vec![false; n * n];
        for &(u, v) in &g.arcs {
            m[u * n + v] = true;
        }
        m
    };
    let degrees = |g: &ColoredDigraph| {
        let mut d = vec![(0usize, 0usize); n];
        for &(u, v) in &g.arcs {
            d[u].0 += 1;
            d[v].1 += 1;
        }
        d
    };
    let (a1, a2) = (adj(g1), adj(g2));
    let (d1, d2) = (degrees(g1), degrees(g2));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        v: usize,
        n: usize,
        g1: &ColoredDigraph,
        g2: &ColoredDigraph,
        a1: &[bool],
        a2: &[bool],
        d1: &[(usize, usize)],
        d2: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for u in 0..n {
            if used[u] || g1.colors[v] != g2.colors[u] || d1[v] != d2[u] || a1[v * n + v] != a2[u * n + u] {
                continue;
            }
            let consistent = (0..v).all(|w| a1[v * n + w] == a2[u * n + map[w]] && a1[w * n + v] == a2[map[w] * n + u]);
            if !consistent {
                continue;
            }
            map[v] = u;
            used[u] = true;
            if extend(v + 1, n, g1, g2, a1, a2, d1, d2, map, used) {
                return true;
            }
            used[u] = false;
        }
        false
    }

    Ok(extend(0, n, g1, g2, &a1, &a2, &d1, &d2, &mut map, &mut used))
}
