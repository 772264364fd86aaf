//! Matroid specifications for `gen` and the corpus.
//!
//! ```text
//! spec     := uniform:R,N | graphic:V,u,v,u,v,.. | wheel:K
//!           | mk4 | whirl3 | q6 | p6 | vamos
//!           | dual:spec | relabel:SEED:spec | twosum:spec+spec@x,y
//! ```
//!
//! In a 2-sum, `x` and `y` pick the basepoints. Each is an element name of
//! its summand or, failing that, a letter prefix followed by an index
//! (`f0` is element 0). The first `+` separates the summands and the last
//! `@` starts the basepoints.

use locked_matroid_core::catalog::{self, CatalogError};
use locked_matroid_core::{two_sum, Matroid, MatroidError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("bad matroid spec {spec:?}: {message}")]
    Syntax { spec: String, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn bad(spec: &str, message: impl Into<String>) -> SpecError {
    SpecError::Syntax { spec: spec.to_string(), message: message.into() }
}

fn numbers(spec: &str, text: &str) -> Result<Vec<usize>, SpecError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| bad(spec, format!("{t:?} is not a number"))))
        .collect()
}

/// Cycle matroid of the wheel with `spokes` spokes: hub 0, rim 1..=spokes.
/// Spokes come first, then rim edges.
pub fn wheel(spokes: usize) -> Result<Matroid, CatalogError> {
    if spokes < 3 {
        return Err(CatalogError::InvalidParams(format!("a wheel needs at least 3 spokes, got {spokes}")));
    }
    let mut edges: Vec<(usize, usize)> = (1..=spokes).map(|v| (0, v)).collect();
    edges.extend((1..=spokes).map(|v| (v, v % spokes + 1)));
    catalog::graphic(spokes + 1, &edges)
}

/// Relabels by a permutation drawn from `seed`.
pub fn relabel(m: &Matroid, seed: u64) -> Matroid {
    let mut perm: Vec<usize> = (0..m.ground_size()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    m.permute(&perm).expect("shuffle is a permutation")
}

fn basepoint(spec: &str, m: &Matroid, token: &str) -> Result<usize, SpecError> {
    if let Some(e) = m.ground().index_of(token) {
        return Ok(e);
    }
    let digits = token.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    digits
        .parse::<usize>()
        .ok()
        .filter(|&e| e < m.ground_size())
        .ok_or_else(|| bad(spec, format!("no element {token:?}")))
}

pub fn parse_spec(spec: &str) -> Result<Matroid, SpecError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("dual:") {
        return Ok(parse_spec(rest)?.dual());
    }
    if let Some(rest) = spec.strip_prefix("relabel:") {
        let (seed, inner) = rest.split_once(':').ok_or_else(|| bad(spec, "expected relabel:SEED:spec"))?;
        let seed = seed.parse::<u64>().map_err(|_| bad(spec, "seed is not a number"))?;
        return Ok(relabel(&parse_spec(inner)?, seed));
    }
    if let Some(rest) = spec.strip_prefix("twosum:") {
        let (pair, points) = rest.rsplit_once('@').ok_or_else(|| bad(spec, "missing @basepoints"))?;
        let (left, right) = pair.split_once('+').ok_or_else(|| bad(spec, "expected two summands joined by +"))?;
        let (x, y) = points.split_once(',').ok_or_else(|| bad(spec, "expected two basepoints"))?;
        let (m1, m2) = (parse_spec(left)?, parse_spec(right)?);
        let (e1, e2) = (basepoint(spec, &m1, x.trim())?, basepoint(spec, &m2, y.trim())?);
        return Ok(two_sum(&m1, e1, &m2, e2)?);
    }
    let (name, params) = match spec.split_once(':') {
        Some((name, params)) => (name, numbers(spec, params)?),
        None => (spec, Vec::new()),
    };
    if name == "wheel" {
        return match params[..] {
            [k] => Ok(wheel(k)?),
            _ => Err(bad(spec, "wheel takes one parameter")),
        };
    }
    Ok(catalog::catalog(name, &params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use locked_matroid_core::catalog::uniform;

    #[test]
    fn plain_names() {
        assert_eq!(parse_spec("vamos").unwrap().bases().len(), 65);
        assert_eq!(parse_spec("uniform:2,4").unwrap(), uniform(2, 4).unwrap());
        assert_eq!(parse_spec("dual:uniform:1,3").unwrap(), uniform(2, 3).unwrap());
        assert!(matches!(parse_spec("nonsense"), Err(SpecError::Catalog(CatalogError::UnknownName(_)))));
        assert!(matches!(parse_spec("uniform:2,x"), Err(SpecError::Syntax { .. })));
    }

    #[test]
    fn two_sum_spec() {
        let m = parse_spec("twosum:uniform:2,4+uniform:2,4@e3,f0").unwrap();
        assert_eq!((m.ground_size(), m.rank()), (6, 3));
        let direct = two_sum(&uniform(2, 4).unwrap(), 3, &uniform(2, 4).unwrap(), 0).unwrap();
        assert_eq!(m, direct);
        assert!(parse_spec("twosum:mk4+mk4@a,z").is_err());
        assert!(parse_spec("twosum:mk4+mk4").is_err());
    }

    #[test]
    fn wheels() {
        let w = parse_spec("wheel:4").unwrap();
        assert_eq!((w.ground_size(), w.rank()), (8, 4));
        assert!(w.is_connected());
        // W3 is M(K4)
        let w3 = wheel(3).unwrap();
        assert_eq!(w3.bases().len(), 16);
        assert!(wheel(2).is_err());
    }

    #[test]
    fn relabel_is_seeded() {
        let a = parse_spec("relabel:7:mk4").unwrap();
        assert_eq!(a, parse_spec("relabel:7:mk4").unwrap());
        assert_eq!(a.bases().len(), 16);
    }
}
