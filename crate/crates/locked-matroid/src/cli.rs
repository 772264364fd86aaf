//! The `locked-matroid` command line.
//!
//! Exit codes: 0 on success, 1 when `iso` or `selfdual` answers no (or
//! two methods disagree), 2 on usage and input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use locked_matroid_core::axioms::{extract, validate, Derivations};
use locked_matroid_core::iso::{Clock, IsoEngine, IsoReport, LatticeRoute, Method};
use locked_matroid_core::lattice::{augmented_lattice, reduced_lattice, series_encode, LabeledDag};
use locked_matroid_core::locked::{k_locked_decision, locked_structure, LockedCount};
use locked_matroid_core::polytope::{self, build_p, PolytopeError, RationalPoint, RowTag};
use locked_matroid_core::simplex::LpError;
use locked_matroid_core::Matroid;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{corpus, DEFAULT_SEED};
use crate::format::{lattice_dot, read_matroid, set_text, write_matroid, NamedMatroid, FORMAT_HEADER};
use crate::spec::parse_spec;

/// Wall-clock nanoseconds since construction.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn new() -> Self {
        InstantClock(Instant::now())
    }
}

impl Default for InstantClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for InstantClock {
    fn now_nanos(&self) -> u64 {
        self.0.elapsed().as_nanos() as u64
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "locked-matroid",
    version,
    about = "Locked subsets, locked lattices and bases polytopes of small matroids"
)]
struct Cli {
    /// Seed for every random choice of this run
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsoMethod {
    Bruteforce,
    Lattice,
    L0,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SelfDualMethod {
    Lattice,
    Bruteforce,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Labeled,
    Series,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a matroid file from a spec such as `uniform:2,4` or `dual:vamos`
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Name written in the file header (defaults to the spec)
        #[arg(long)]
        name: Option<String>,
    },
    /// Print the locked structure
    Locked {
        file: PathBuf,
        /// Also run the k-locked test with threshold ceil(c * |E|^k)
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Print the augmented or reduced locked lattice
    Lattice {
        file: PathBuf,
        #[arg(long, conflicts_with = "reduced")]
        augmented: bool,
        #[arg(long)]
        reduced: bool,
        /// Graphviz output
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether two matroids are isomorphic
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "lattice")]
        method: IsoMethod,
        #[arg(long, value_enum, default_value = "labeled")]
        route: Route,
    },
    /// Decide whether a matroid is isomorphic to its dual
    Selfdual {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lattice")]
        method: SelfDualMethod,
    },
    /// Locked-system axioms
    Axioms {
        #[command(subcommand)]
        action: AxiomsAction,
    },
    /// Bases polytope checks
    Polytope {
        #[command(subcommand)]
        action: PolytopeAction,
    },
    /// Sizes (and optionally timings) over the corpus
    Bench {
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Subcommand)]
enum AxiomsAction {
    /// Validate the locked system of a matroid file
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum PolytopeAction {
    /// Compare the polytope against bases, the greedy algorithm and the rank inequalities
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        weights: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Print every LP optimum and pivot count
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs the tool on `argv` (program name first).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            code
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn load(path: &Path) -> Result<NamedMatroid, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    read_matroid(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn header(seed: Option<u64>) -> String {
    match seed {
        Some(s) => format!("{FORMAT_HEADER}\n# seed: {s}\n"),
        None => format!("{FORMAT_HEADER}\n"),
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { spec, output, name } => {
            let m = parse_spec(&spec)?;
            let text = write_matroid(name.as_deref().unwrap_or(&spec), &m);
            match output {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok((String::new(), 0))
                }
                None => Ok((text, 0)),
            }
        }
        Command::Locked { file, k, c } => locked(&load(&file)?, k, &c),
        Command::Lattice { file, augmented, reduced: _, dot } => lattice(&load(&file)?, augmented, dot),
        Command::Iso { first, second, method, route } => iso(&load(&first)?, &load(&second)?, method, route),
        Command::Selfdual { file, method } => selfdual(&load(&file)?, method),
        Command::Axioms { action: AxiomsAction::Check { file } } => axioms(&load(&file)?),
        Command::Polytope { action: PolytopeAction::Verify { file, weights, samples, trace } } => {
            polytope_verify(&load(&file)?, cli.seed, weights, samples, trace)
        }
        Command::Bench { timings } => bench(cli.seed, timings),
    }
}

fn parse_ratio(text: &str) -> Result<Ratio<u64>, Failure> {
    let bad = || Failure::Usage(format!("--c expects a positive fraction like 3/2, got {text:?}"));
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let d: u64 = d.trim().parse().map_err(|_| bad())?;
    if n == 0 || d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

fn locked(nm: &NamedMatroid, k: Option<u32>, c: &str) -> Outcome {
    let m = &nm.matroid;
    let s = locked_structure(m)?;
    let mut text = crate::format::write_locked_structure(&nm.name, m.ground(), &s);
    if let Some(k) = k {
        let v = k_locked_decision(m, k, parse_ratio(c)?)?;
        let count = match v.locked_count {
            LockedCount::Exactly(n) => n.to_string(),
            LockedCount::Exceeded => format!("more than {}", v.threshold),
        };
        writeln!(text, "k-locked k={k} threshold={} count={count} verdict={}", v.threshold, v.is_k_locked())?;
    }
    Ok((text, 0))
}

fn lattice_text(nm: &NamedMatroid, kind: &str, d: &LabeledDag) -> String {
    let mut text = header(None);
    let ground = nm.matroid.ground();
    writeln!(text, "lattice {kind} {}", nm.name).unwrap();
    writeln!(text, "vertices {} arcs {}", d.vertex_count(), d.arcs().len()).unwrap();
    for v in 0..d.vertex_count() {
        let label = match d.label(v) {
            locked_matroid_core::lattice::VertexLabel::Pair(c, r) => format!("({c},{r})"),
            locked_matroid_core::lattice::VertexLabel::Single(m) => m.to_string(),
        };
        let set = d.provenance(v).map(|x| set_text(ground, x)).unwrap_or_default();
        writeln!(text, "v{v} {} {set} label={label}", d.level(v).as_str()).unwrap();
    }
    for &(u, v) in d.arcs() {
        writeln!(text, "v{u} -> v{v}").unwrap();
    }
    text
}

fn lattice(nm: &NamedMatroid, augmented: bool, dot: bool) -> Outcome {
    let s = locked_structure(&nm.matroid)?;
    let (kind, d) = if augmented { ("augmented", augmented_lattice(&s)) } else { ("reduced", reduced_lattice(&s)) };
    let text = if dot { lattice_dot(&nm.name, nm.matroid.ground(), &d) } else { lattice_text(nm, kind, &d) };
    Ok((text, 0))
}

fn route_of(route: Route) -> LatticeRoute {
    match route {
        Route::Labeled => LatticeRoute::Labeled,
        Route::Series => LatticeRoute::SeriesArc,
    }
}

fn describe(text: &mut String, report: &IsoReport, first: &Matroid, second: &Matroid) {
    writeln!(text, "method {} answer {}", report.method.as_str(), report.answer).unwrap();
    if let Some((a, b)) = report.locked_counts {
        writeln!(text, "locked {a} {b}").unwrap();
    }
    if let Some(ops) = report.operations {
        writeln!(text, "operations {ops}").unwrap();
    }
    if let Some(w) = &report.witness {
        let pairs: Vec<String> = w
            .iter()
            .enumerate()
            .map(|(e, &t)| format!("{}->{}", first.ground().name(e), second.ground().name(t)))
            .collect();
        writeln!(text, "witness {}", pairs.join(" ")).unwrap();
    }
}

fn verdict(text: &mut String, yes: &str, no: &str, answers: &[(&str, bool)]) -> i32 {
    let all_yes = answers.iter().all(|a| a.1);
    let all_no = answers.iter().all(|a| !a.1);
    let detail = if answers.len() > 1 {
        let names: Vec<&str> = answers.iter().map(|a| a.0).collect();
        if all_yes || all_no {
            format!(" ({}={})", names.join("="), all_yes)
        } else {
            let parts: Vec<String> = answers.iter().map(|(n, a)| format!("{n}={a}")).collect();
            format!(" ({})", parts.join(" "))
        }
    } else {
        String::new()
    };
    if all_yes {
        writeln!(text, "{yes}{detail}").unwrap();
        0
    } else if all_no {
        writeln!(text, "{no}{detail}").unwrap();
        1
    } else {
        writeln!(text, "methods disagree{detail}").unwrap();
        1
    }
}

fn iso(a: &NamedMatroid, b: &NamedMatroid, method: IsoMethod, route: Route) -> Outcome {
    let engine = IsoEngine::new().route(route_of(route));
    let mut reports = Vec::new();
    if matches!(method, IsoMethod::Bruteforce | IsoMethod::Both) {
        reports.push(("bruteforce", engine.bruteforce(&a.matroid, &b.matroid)?));
    }
    if matches!(method, IsoMethod::Lattice | IsoMethod::Both) {
        reports.push(("lattice", engine.lattice(&a.matroid, &b.matroid)?));
    }
    if method == IsoMethod::L0 {
        reports.push(("l0", engine.zero_locked(&a.matroid, &b.matroid)?));
    }
    let mut text = header(None);
    let answers: Vec<(&str, bool)> = reports.iter().map(|(n, r)| (*n, r.answer)).collect();
    let code = verdict(&mut text, "isomorphic", "not isomorphic", &answers);
    writeln!(text, "first {}\nsecond {}", a.name, b.name)?;
    for (_, r) in &reports {
        describe(&mut text, r, &a.matroid, &b.matroid);
    }
    Ok((text, code))
}

fn selfdual(nm: &NamedMatroid, method: SelfDualMethod) -> Outcome {
    let engine = IsoEngine::new();
    let dual = nm.matroid.dual();
    let mut reports = Vec::new();
    if matches!(method, SelfDualMethod::Bruteforce | SelfDualMethod::Both) {
        reports.push(("bruteforce", engine.self_dual(&nm.matroid, Method::Bruteforce)?));
    }
    if matches!(method, SelfDualMethod::Lattice | SelfDualMethod::Both) {
        reports.push(("lattice", engine.self_dual(&nm.matroid, Method::Lattice)?));
    }
    let mut text = header(None);
    let answers: Vec<(&str, bool)> = reports.iter().map(|(n, r)| (*n, r.answer)).collect();
    let code = verdict(&mut text, "self-dual", "not self-dual", &answers);
    writeln!(text, "matroid {}", nm.name)?;
    for (_, r) in &reports {
        describe(&mut text, r, &nm.matroid, &dual);
    }
    Ok((text, code))
}

fn axioms(nm: &NamedMatroid) -> Outcome {
    let m = &nm.matroid;
    let sys = extract(m)?;
    let report = validate(&sys, m)?;
    let mut text = header(None);
    writeln!(text, "matroid {}", nm.name)?;
    writeln!(text, "violations {}", report.violations.len())?;
    for v in &report.violations {
        let sets: Vec<String> = v.witnesses.iter().map(|&x| set_text(m.ground(), x)).collect();
        writeln!(text, "{} {}: {}", v.axiom, sets.join(" "), v.text)?;
    }
    let d = Derivations::new(&sys)?;
    let outside: Vec<_> = m.ground_set().submasks().filter(|&x| !sys.is_structured(x)).collect();
    let mut mismatches = Vec::new();
    for &x in &outside {
        let derived = d.derive(x).map(|r| r.rank).ok();
        let actual = m.rank_of(x)?;
        if derived != Some(actual) {
            mismatches.push((x, derived, actual));
        }
    }
    let agree = outside.len() - mismatches.len();
    writeln!(text, "derived ranks {agree} of {} agree", outside.len())?;
    for (x, derived, actual) in mismatches {
        let derived = derived.map_or_else(|| "none".to_string(), |v| v.to_string());
        writeln!(text, "rank {}: derived {derived}, actual {actual}", set_text(m.ground(), x))?;
    }
    let code = if report.is_valid() && agree == outside.len() { 0 } else { 1 };
    Ok((text, code))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ok(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn polytope_verify(nm: &NamedMatroid, seed: u64, weights: usize, samples: usize, trace: bool) -> Outcome {
    let m = &nm.matroid;
    let n = m.ground_size();
    let s = locked_structure(m)?;
    let sys = build_p(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = header(Some(seed));
    writeln!(text, "matroid {}", nm.name)?;
    let count = |tag: RowTag| sys.rows.iter().filter(|r| r.tag == tag).count();
    writeln!(
        text,
        "rows {} (eq1 {}, parallel {}, coparallel {}, locked {})",
        sys.rows.len(),
        count(RowTag::Rank),
        count(RowTag::Parallel),
        count(RowTag::Coparallel),
        count(RowTag::Locked)
    )?;

    let vertices = polytope::zero_one_vertices(&sys, m.rank());
    writeln!(text, "zero-one points equal bases: {}", ok(vertices.as_slice() == m.bases()))?;

    let mut lp_ok = true;
    for i in 0..weights {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        let lp = polytope::lp_maximize(&sys, &w)?;
        let (best, _) = polytope::greedy_max_basis(m, &w);
        lp_ok &= lp.optimum == int(best);
        if trace {
            writeln!(text, "lp {i} weights {w:?} optimum {} greedy {best} pivots {}", lp.optimum, lp.pivots)?;
        }
    }
    writeln!(text, "lp optimum equals greedy on {weights} weight vectors: {}", ok(lp_ok))?;

    let mut member_ok = true;
    for _ in 0..samples {
        let den: i64 = rng.gen_range(1..=64);
        let mut x: Vec<BigRational> =
            (0..n).map(|_| BigRational::new(rng.gen_range(0..=den).into(), den.into())).collect();
        let shift = (int(m.rank() as i64) - x.iter().sum::<BigRational>()) / int(n as i64);
        for v in x.iter_mut() {
            *v += &shift;
        }
        let x = RationalPoint(x);
        member_ok &= polytope::member(&sys, &x)?.inside == polytope::member_q(m, &x)?;
    }
    writeln!(text, "membership agrees with rank inequalities on {samples} points: {}", ok(member_ok))?;

    let mut box_ok = true;
    let mut unbounded = Vec::new();
    for e in 0..n {
        let mut w = vec![0i64; n];
        w[e] = 1;
        let range =
            polytope::lp_maximize_unboxed(&sys, &w).and_then(|hi| Ok((hi, polytope::lp_minimize_unboxed(&sys, &w)?)));
        match range {
            Ok((hi, lo)) => box_ok &= hi <= int(1) && lo >= int(0),
            Err(PolytopeError::Lp(LpError::Unbounded)) => {
                box_ok = false;
                unbounded.push(m.ground().name(e));
            }
            Err(err) => return Err(err.into()),
        }
    }
    writeln!(text, "coordinates within [0,1]: {}", ok(box_ok))?;
    if !unbounded.is_empty() {
        writeln!(text, "unbounded coordinates: {}", unbounded.join(" "))?;
    }
    let all_ok = vertices.as_slice() == m.bases() && lp_ok && member_ok && box_ok;
    Ok((text, if all_ok { 0 } else { 1 }))
}

fn bench(seed: u64, timings: bool) -> Outcome {
    let mut text = header(Some(seed));
    writeln!(text, "name elements rank bases locked lattice-vertices series-vertices")?;
    for entry in corpus(seed) {
        let start = Instant::now();
        let m = &entry.matroid;
        let s = locked_structure(m)?;
        let d = reduced_lattice(&s);
        let series = series_encode(&d)?;
        write!(
            text,
            "{} {} {} {} {} {} {}",
            entry.name,
            m.ground_size(),
            m.rank(),
            m.bases().len(),
            s.locked_number(),
            d.vertex_count(),
            series.vertex_count()
        )?;
        if timings {
            write!(text, " {}us", start.elapsed().as_micros())?;
        }
        text.push('\n');
    }
    Ok((text, 0))
}
