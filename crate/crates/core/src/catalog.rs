//! Named matroids: uniform, graphic, `M(K4)`, the rank-3 whirl, `Q6`, `P6`
//! and the Vámos matroid.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::matroid::{GroundSet, Matroid, MatroidError};
use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown matroid name {0:?}")]
    UnknownName(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Looks a matroid up by name. Parameters:
/// `uniform` takes `[rank, size]`; `graphic` takes
/// `[vertex_count, u0, v0, u1, v1, ..]`; the others take none.
pub fn catalog(name: &str, params: &[usize]) -> Result<Matroid, CatalogError> {
    let no_params = |m: Matroid| {
        if params.is_empty() {
            Ok(m)
        } else {
            Err(CatalogError::InvalidParams(alloc::format!("{name} takes no parameters")))
        }
    };
    match name {
        "uniform" => match params {
            &[r, n] => uniform(r, n),
            _ => Err(CatalogError::InvalidParams("uniform takes rank and size".to_string())),
        },
        "graphic" => {
            let (&v, rest) = params
                .split_first()
                .ok_or_else(|| CatalogError::InvalidParams("graphic needs a vertex count".to_string()))?;
            if rest.len() % 2 != 0 {
                return Err(CatalogError::InvalidParams("odd edge endpoint list".to_string()));
            }
            let edges: Vec<(usize, usize)> = rest.chunks(2).map(|c| (c[0], c[1])).collect();
            graphic(v, &edges)
        }
        "mk4" => no_params(mk4()),
        "whirl3" => no_params(whirl3()),
        "q6" => no_params(q6()),
        "p6" => no_params(p6()),
        "vamos" => no_params(vamos()),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

/// `U_{r,n}`: every `r`-subset is a basis.
pub fn uniform(r: usize, n: usize) -> Result<Matroid, CatalogError> {
    if r > n {
        return Err(CatalogError::InvalidParams(alloc::format!("rank {r} exceeds size {n}")));
    }
    if n == 0 || n > MAX_ELEMENTS {
        return Err(CatalogError::InvalidParams(alloc::format!("size {n} out of range")));
    }
    let bases = Subset::full(n).submasks().filter(|s| s.len() == r).collect();
    Ok(Matroid::from_unsorted_valid(GroundSet::with_size(n), bases))
}

/// Cycle matroid of a connected multigraph; edge `i` is element `i`.
pub fn graphic(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Matroid, CatalogError> {
    if edges.is_empty() || edges.len() > MAX_ELEMENTS {
        return Err(CatalogError::InvalidParams(alloc::format!("{} edges", edges.len())));
    }
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
        return Err(CatalogError::InvalidParams(alloc::format!("edge ({u},{v}) out of range")));
    }
    let n = edges.len();
    let all = Subset::full(n);
    if spanning_forest_size(vertex_count, edges, all) + 1 != vertex_count {
        return Err(CatalogError::DisconnectedGraph);
    }
    let tree_size = vertex_count - 1;
    let bases = all
        .submasks()
        .filter(|s| s.len() == tree_size && spanning_forest_size(vertex_count, edges, *s) == tree_size)
        .collect();
    Ok(Matroid::from_unsorted_valid(GroundSet::with_size(n), bases))
}

// number of edges of `set` kept by a spanning forest
fn spanning_forest_size(vertex_count: usize, edges: &[(usize, usize)], set: Subset) -> usize {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut kept = 0;
    for i in set.iter() {
        let (u, v) = edges[i];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            kept += 1;
        }
    }
    kept
}

fn named(m: Matroid, names: &[&str]) -> Matroid {
    m.with_names(names.iter().map(|s| s.to_string()).collect()).expect("catalog names are valid")
}

/// Edges of `K4` labelled `a..f`: with apex 0 over the triangle 1, 2, 3,
/// `a=02 b=01 c=03 d=12 e=13 f=23`, so the triangles are `abd`, `acf`,
/// `bce` and the rim `def`.
const K4_EDGES: [(usize, usize); 6] = [(0, 2), (0, 1), (0, 3), (1, 2), (1, 3), (2, 3)];
const LETTERS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn mk4() -> Matroid {
    named(graphic(4, &K4_EDGES).expect("K4 is connected"), &LETTERS)
}

/// `M(K4)` with the rim triangle `{d, e, f}` relaxed to a basis.
pub fn whirl3() -> Matroid {
    let base = mk4();
    let mut bases = base.bases().to_vec();
    bases.push(Subset::from_elements([3, 4, 5]));
    let m = Matroid::from_bases_named(base.ground().clone(), bases).expect("relaxation of a circuit-hyperplane");
    named(m, &LETTERS)
}

fn rank3_on_six(lines: &[[usize; 3]]) -> Matroid {
    let nonbases: Vec<Subset> = lines.iter().map(|l| Subset::from_elements(*l)).collect();
    let bases: Vec<Subset> = Subset::full(6).submasks().filter(|s| s.len() == 3 && !nonbases.contains(s)).collect();
    Matroid::from_bases(6, bases).expect("catalog basis list is valid")
}

/// Rank 3 on 6 points with two 3-point lines sharing a point.
pub fn q6() -> Matroid {
    rank3_on_six(&[[0, 1, 2], [2, 3, 4]])
}

/// Rank 3 on 6 points with a single 3-point line.
pub fn p6() -> Matroid {
    rank3_on_six(&[[0, 1, 2]])
}

/// Vámos matroid: pairs `{0,1} {2,3} {4,5} {6,7}`; the unions of two pairs
/// are circuit-hyperplanes except `{4,5,6,7}`.
pub fn vamos() -> Matroid {
    let pairs = [
        Subset::from_elements([0, 1]),
        Subset::from_elements([2, 3]),
        Subset::from_elements([4, 5]),
        Subset::from_elements([6, 7]),
    ];
    let mut nonbases = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if (i, j) != (2, 3) {
                nonbases.push(pairs[i].union(pairs[j]));
            }
        }
    }
    let bases: Vec<Subset> = Subset::full(8).submasks().filter(|s| s.len() == 4 && !nonbases.contains(s)).collect();
    Matroid::from_bases(8, bases).expect("Vámos basis list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonbasis_count(m: &Matroid) -> usize {
        m.ground_set().submasks().filter(|s| s.len() == m.rank() && !m.is_basis(*s)).count()
    }

    // spanning trees of K4 counted by exhaustive search over 3-edge subsets
    fn k4_tree_count() -> usize {
        Subset::full(6)
            .submasks()
            .filter(|s| s.len() == 3)
            .filter(|s| {
                let mut seen = [false; 4];
                for i in s.iter() {
                    seen[K4_EDGES[i].0] = true;
                    seen[K4_EDGES[i].1] = true;
                }
                seen.iter().all(|&x| x) && !K4_TRIANGLES.contains(s)
            })
            .count()
    }

    const K4_TRIANGLES: [Subset; 4] = [
        Subset::from_bits(0b001011),
        Subset::from_bits(0b100101),
        Subset::from_bits(0b010110),
        Subset::from_bits(0b111000),
    ];

    #[test]
    fn mk4_shape() {
        let m = mk4();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.ground_size(), 6);
        assert_eq!(m.bases().len(), 16);
        assert_eq!(k4_tree_count(), 16);
        for t in K4_TRIANGLES {
            assert_eq!(m.rank_of(t), Ok(2));
        }
    }

    #[test]
    fn whirl3_shape() {
        let w = whirl3();
        assert_eq!(w.bases().len(), 17);
        assert!(w.is_basis(Subset::from_elements([3, 4, 5])));
    }

    #[test]
    fn vamos_shape() {
        let v = vamos();
        assert_eq!((v.rank(), v.ground_size(), v.bases().len()), (4, 8, 65));
        assert!(v.is_connected());
    }

    #[test]
    fn q6_p6_regression() {
        let (q, p) = (q6(), p6());
        assert_eq!(q.rank(), 3);
        assert_eq!(p.rank(), 3);
        assert!(q.is_connected() && p.is_connected());
        assert_eq!(nonbasis_count(&q), 2);
        assert_eq!(nonbasis_count(&p), 1);
    }

    #[test]
    fn catalog_lookup() {
        let u = catalog("uniform", &[0, 3]).unwrap();
        assert_eq!(u.rank(), 0);
        assert_eq!(u.bases(), &[Subset::EMPTY]);
        assert!(matches!(catalog("uniform", &[4, 3]), Err(CatalogError::InvalidParams(_))));
        assert!(matches!(catalog("nope", &[]), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog("graphic", &[4, 0, 1, 2, 3]), Err(CatalogError::DisconnectedGraph)));
        let triangle = catalog("graphic", &[3, 0, 1, 1, 2, 0, 2]).unwrap();
        assert_eq!(triangle.bases().len(), 3);
        assert_eq!(catalog("mk4", &[]).unwrap(), mk4());
    }
}
