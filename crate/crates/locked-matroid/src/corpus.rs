//! The seeded test corpus: small uniforms, the named matroids, a wheel,
//! 2-sums of uniforms, duals and relabelings. Every entry is named by a
//! spec that rebuilds it.

use locked_matroid_core::Matroid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spec::parse_spec;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Largest ground set among uniform entries.
pub const MAX_UNIFORM_SIZE: usize = 8;

/// Largest ground set among 2-sums.
pub const MAX_TWO_SUM_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
}

impl CorpusEntry {
    fn from_spec(spec: String) -> Self {
        let matroid = parse_spec(&spec).expect("corpus specs are valid");
        CorpusEntry { name: spec, matroid }
    }
}

/// Specs of three 2-sums of connected uniform matroids.
pub fn two_sum_specs(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut out = Vec::new();
    while out.len() < 3 {
        let n1 = rng.gen_range(3..=6);
        let n2 = rng.gen_range(3..=(MAX_TWO_SUM_SIZE + 2 - n1).min(6));
        let r1 = rng.gen_range(1..n1);
        let r2 = rng.gen_range(1..n2);
        let e1 = rng.gen_range(0..n1);
        let e2 = rng.gen_range(0..n2);
        let spec = format!("twosum:uniform:{r1},{n1}+uniform:{r2},{n2}@e{e1},f{e2}");
        if !out.contains(&spec) {
            out.push(spec);
        }
    }
    out
}

pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::new();
    for n in 2..=MAX_UNIFORM_SIZE {
        for r in 1..n {
            specs.push(format!("uniform:{r},{n}"));
        }
    }
    let mut structured: Vec<String> = ["mk4", "whirl3", "q6", "p6", "vamos", "wheel:4"].map(String::from).to_vec();
    structured.extend(two_sum_specs(&mut rng));
    specs.extend(structured.iter().cloned());
    specs.extend(structured.iter().map(|s| format!("dual:{s}")));
    for s in structured.iter().take(7) {
        specs.push(format!("relabel:{}:{s}", rng.gen::<u32>()));
    }
    specs.into_iter().map(CorpusEntry::from_spec).collect()
}

/// Index pairs `(i, j)`, `i < j`, of entries with equal ground set size.
pub fn same_size_pairs(entries: &[CorpusEntry]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].matroid.ground_size() == entries[j].matroid.ground_size() {
                out.push((i, j));
            }
        }
    }
    out
}
