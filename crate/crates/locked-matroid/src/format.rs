//! Text formats: matroid files, locked-structure dumps and DOT export.

use std::fmt::Write as _;

use locked_matroid_core::lattice::{LabeledDag, VertexLabel};
use locked_matroid_core::locked::LockedStructure;
use locked_matroid_core::matroid::GroundSet;
use locked_matroid_core::{Matroid, MatroidError, Subset};

/// Version tag written at the top of every report.
pub const FORMAT_HEADER: &str = "# format: 1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

impl NamedMatroid {
    pub fn new(name: impl Into<String>, matroid: Matroid) -> Self {
        NamedMatroid { name: name.into(), matroid }
    }
}

/// Canonical file text: header lines, then one `basis` line per basis in
/// canonical order.
pub fn write_matroid(name: &str, m: &Matroid) -> String {
    let ground = m.ground();
    let mut out = String::new();
    writeln!(out, "matroid {name}").unwrap();
    writeln!(out, "elements {}", ground.names().join(",")).unwrap();
    for b in m.bases() {
        out.push_str("basis");
        for e in b.iter() {
            out.push(' ');
            out.push_str(ground.name(e));
        }
        out.push('\n');
    }
    out
}

/// Parses a matroid file; basis lines may come in any order.
pub fn read_matroid(text: &str) -> Result<NamedMatroid, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, first) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let name = first
        .strip_prefix("matroid ")
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .ok_or_else(|| syntax(1, "expected `matroid <name>`"))?;
    let (_, second) = lines.next().ok_or_else(|| syntax(2, "missing `elements` line"))?;
    let names = second.strip_prefix("elements ").ok_or_else(|| syntax(2, "expected `elements <names>`"))?;
    let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
    let ground = GroundSet::named(names)?;
    let mut bases = Vec::new();
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() != Some("basis") {
            return Err(syntax(no, "expected `basis <names>`"));
        }
        let mut set = Subset::EMPTY;
        for w in words {
            let e = ground.index_of(w).ok_or_else(|| syntax(no, format!("unknown element {w:?}")))?;
            if set.contains(e) {
                return Err(syntax(no, format!("element {w:?} repeated")));
            }
            set = set.with(e);
        }
        bases.push(set);
    }
    let matroid = Matroid::from_bases_named(ground, bases)?;
    Ok(NamedMatroid { name: name.to_string(), matroid })
}

/// `{a,b,d}` using element names.
pub fn set_text(ground: &GroundSet, x: Subset) -> String {
    let names: Vec<&str> = x.iter().map(|e| ground.name(e)).collect();
    format!("{{{}}}", names.join(","))
}

/// Locked-structure report with `P:`, `S:` and `L:` sections.
pub fn write_locked_structure(name: &str, ground: &GroundSet, s: &LockedStructure) -> String {
    let mut out = String::new();
    writeln!(out, "{FORMAT_HEADER}").unwrap();
    writeln!(out, "matroid {name}").unwrap();
    writeln!(out, "elements {} rank {} locked {}", s.ground_size, s.rank, s.locked_number()).unwrap();
    for (title, family) in [("P:", &s.parallel), ("S:", &s.coparallel), ("L:", &s.locked)] {
        writeln!(out, "{title}").unwrap();
        for &x in family.iter() {
            let rank = s.rho(x).expect("structured sets carry a rank");
            writeln!(out, "  {} rank={rank}", set_text(ground, x)).unwrap();
        }
    }
    out
}

fn label_text(label: VertexLabel) -> String {
    match label {
        VertexLabel::Pair(c, r) => format!("({c},{r})"),
        VertexLabel::Single(m) => format!("{m}"),
    }
}

/// Graphviz text, vertices in lattice order.
pub fn lattice_dot(name: &str, ground: &GroundSet, d: &LabeledDag) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "'")).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for v in 0..d.vertex_count() {
        let set = d.provenance(v).map(|x| set_text(ground, x)).unwrap_or_default();
        writeln!(out, "  v{v} [label=\"{}\", tooltip=\"{} {set}\"];", label_text(d.label(v)), d.level(v).as_str())
            .unwrap();
    }
    for &(u, v) in d.arcs() {
        writeln!(out, "  v{u} -> v{v};").unwrap();
    }
    out.push_str("}\n");
    out
}
