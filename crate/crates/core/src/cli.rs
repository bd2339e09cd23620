//! Command-line front end. Exit codes: 0 success, 1 counterexample found,
//! 2 usage or cap error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coxeter::{CartanType, CoxWord, CoxeterSystem};
use crate::error::{Error, Result};
use crate::pdlattice::{self, SweepOrder};
use crate::perm::{Permutation, DEFAULT_CAP};
use crate::pipedream::{self, PipeDream};
use crate::report::Report;
use crate::subword::scan::{self, ScanConfig, Target};
use crate::subword::{Facet, SubwordComplex};

/// Environment variable overriding the default cap.
pub const CAP_ENV: &str = "PIPEDREAMS_CAP";

#[derive(Parser, Debug)]
#[command(name = "pipedreams", version, about = "Pipe dreams, weak order congruences and subword complexes")]
pub struct Cli {
    /// Bound on enumerated objects (default from PIPEDREAMS_CAP, else 1000000).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Ascii,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pipe dreams of a permutation.
    #[command(subcommand)]
    Pd(PdCommand),
    /// Finite Coxeter groups.
    #[command(subcommand)]
    Cox(CoxCommand),
    /// Subword complexes.
    #[command(subcommand)]
    Sc(ScCommand),
}

#[derive(Args, Debug)]
pub struct OmegaArg {
    /// Permutation in one-line notation, e.g. 1324 or 0,2,1,3.
    #[arg(long)]
    pub omega: String,
}

#[derive(Subcommand, Debug)]
pub enum PdCommand {
    Enumerate {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long)]
        acyclic: bool,
        #[arg(long)]
        count: bool,
    },
    Flipgraph {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long)]
        acyclic: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Greedy {
        #[command(flatten)]
        omega: OmegaArg,
        /// The antigreedy pipe dream instead.
        #[arg(long)]
        anti: bool,
    },
    Insert {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long)]
        pi: String,
    },
    Sweep {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long)]
        pi: String,
        /// Sweep columns west to east instead of rows bottom to top.
        #[arg(long)]
        columns: bool,
    },
    Classes {
        #[command(flatten)]
        omega: OmegaArg,
    },
    Quotient {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Verify {
        #[arg(value_enum)]
        what: PdCheck,
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdCheck {
    TheoremA,
    Nu,
    Canopy,
    Rewrite,
    Algorithms,
}

#[derive(Args, Debug)]
pub struct TypeArg {
    /// Type tag: A3, B3, D4, H3, I2(5), ...
    #[arg(long = "type")]
    pub cartan_type: String,
    /// Allow E6-E8, F4 and H4.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Subcommand, Debug)]
pub enum CoxCommand {
    Group {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Roots {
        #[command(flatten)]
        ty: TypeArg,
    },
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Comma-separated 1-based letters.
    #[arg(long)]
    pub word: String,
    /// Element: word, `w0`, `e`, or a permutation in type A.
    #[arg(long)]
    pub omega: String,
}

#[derive(Subcommand, Debug)]
pub enum ScCommand {
    Facets {
        #[command(flatten)]
        sc: ComplexArgs,
        #[arg(long)]
        acyclic: bool,
    },
    Extensions {
        #[command(flatten)]
        sc: ComplexArgs,
        #[arg(long)]
        facet: String,
    },
    Sweep {
        #[command(flatten)]
        sc: ComplexArgs,
        #[arg(long)]
        pi: String,
    },
    Quotient {
        #[command(flatten)]
        sc: ComplexArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Verify {
        #[arg(value_enum)]
        what: ScCheck,
        #[command(flatten)]
        ty: TypeArg,
        /// Check a single word; otherwise every word up to --max-len.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    Scan {
        #[arg(value_enum)]
        what: ScanTarget,
        #[command(flatten)]
        ty: TypeArg,
        /// Defaults to the length of the longest element.
        #[arg(long)]
        max_len: Option<usize>,
        /// Sample this many random alternating words instead.
        #[arg(long)]
        samples: Option<usize>,
        /// Skip words up to and including this one.
        #[arg(long)]
        resume_from: Option<String>,
        /// Required for types with more than 48 elements.
        #[arg(long)]
        large_scan: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScCheck {
    ThmB,
    ThmC,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanTarget {
    ConjA,
    ConjB,
    Both,
}

enum Outcome {
    Done,
    Counterexample,
}

#[derive(Serialize)]
struct FlipGraphJson<'a> {
    vertices: &'a [PipeDream],
    arcs: &'a [(usize, usize)],
}

#[derive(Serialize)]
struct ClassJson<'a> {
    dream: &'a PipeDream,
    class: Vec<String>,
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("json output")
}

fn default_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_CAP)
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.kind(), e.to_string())
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Counterexample) => 1,
        Err(Error::Io(std::io::ErrorKind::BrokenPipe, _)) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<Outcome> {
    let cap = cli.cap.unwrap_or_else(default_cap);
    if cap == 0 {
        return Err(Error::Precondition("cap must be positive".to_string()));
    }
    match &cli.command {
        Command::Pd(c) => pd(c, cli.format, cap, out),
        Command::Cox(c) => cox(c, cli.format, cap, out),
        Command::Sc(c) => sc(c, cli, cap, out, err),
    }
}

fn perm(s: &str) -> Result<Permutation> {
    s.parse()
}

fn write_dream(p: &PipeDream, format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", p.to_json()),
        Format::Ascii | Format::Text => writeln!(out, "{}", p.to_ascii()),
    }
    .map_err(io)
}

fn write_dot(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(io)?;
    }
    Ok(())
}

fn emit_report(report: &Report, out: &mut impl Write) -> Result<bool> {
    if !report.pass() {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    }
    Ok(report.pass())
}

fn pd(c: &PdCommand, format: Format, cap: usize, out: &mut impl Write) -> Result<Outcome> {
    match c {
        PdCommand::Enumerate { omega, acyclic, count } => {
            let dreams = pipedream::enumerate(&perm(&omega.omega)?, *acyclic, cap)?;
            if *count {
                writeln!(out, "{}", dreams.len()).map_err(io)?;
            } else {
                for p in &dreams {
                    write_dream(p, format, out)?;
                }
            }
        }
        PdCommand::Flipgraph { omega, acyclic, dot } => {
            let g = pipedream::increasing_flip_graph(&perm(&omega.omega)?, *acyclic, cap)?;
            writeln!(out, "{}", to_json(&FlipGraphJson { vertices: &g.vertices, arcs: &g.arcs })).map_err(io)?;
            write_dot(dot, &g.to_dot()?)?;
        }
        PdCommand::Greedy { omega, anti } => {
            let w = perm(&omega.omega)?;
            let p = if *anti { pipedream::antigreedy(&w) } else { pipedream::greedy(&w) };
            write_dream(&p, format, out)?;
        }
        PdCommand::Insert { omega, pi } => {
            write_dream(&pdlattice::insert(&perm(pi)?, &perm(&omega.omega)?)?, format, out)?;
        }
        PdCommand::Sweep { omega, pi, columns } => {
            let order = if *columns { SweepOrder::Columns } else { SweepOrder::Rows };
            write_dream(&pdlattice::sweep_in_order(&perm(pi)?, &perm(&omega.omega)?, order)?, format, out)?;
        }
        PdCommand::Classes { omega } => {
            let part = pdlattice::congruence_partition(&perm(&omega.omega)?, cap)?;
            for (d, block) in part.dreams.iter().zip(&part.blocks) {
                let class: Vec<String> = block.iter().map(|&x| part.interval.element(x).to_string()).collect();
                writeln!(out, "{}", to_json(&ClassJson { dream: d, class })).map_err(io)?;
            }
        }
        PdCommand::Quotient { omega, dot } => {
            let w = perm(&omega.omega)?;
            let report = pdlattice::verify_theorem_a(&w, cap)?;
            writeln!(out, "{}", report.to_json()).map_err(io)?;
            if !report.pass() {
                return Ok(Outcome::Counterexample);
            }
            let part = pdlattice::congruence_partition(&w, cap)?;
            let q = part.interval.quotient(&part.blocks)?;
            write_dot(dot, &q.to_dot(|&b| part.dreams[b].to_ascii().trim_end().replace('\n', "/")))?;
        }
        PdCommand::Verify { what, n } => {
            if *n == 0 {
                return Err(Error::Precondition("--n must be positive".to_string()));
            }
            let mut failures = 0;
            let all = Permutation::all(*n);
            for w in &all {
                let pass = match what {
                    PdCheck::TheoremA => emit_report(&pdlattice::verify_theorem_a(w, cap)?, out)?,
                    PdCheck::Canopy => emit_report(&pdlattice::verify_canopy(w, cap)?, out)?,
                    PdCheck::Rewrite => emit_report(&pdlattice::verify_rewrite(w, cap)?, out)?,
                    PdCheck::Algorithms => emit_report(&pdlattice::verify_algorithms(w, cap)?, out)?,
                    PdCheck::Nu => {
                        let acyclic = pdlattice::nu_acyclicity(w, cap)?;
                        let ok = acyclic == w.is_dominant();
                        if !ok {
                            let cyclic = pdlattice::nu_cyclic_witness(w, cap)?.map(|p| p.to_json_value());
                            writeln!(out, "{}", json!({"omega": w, "all_acyclic": acyclic, "dominant": w.is_dominant(), "cyclic": cyclic}))
                                .map_err(io)?;
                        }
                        ok
                    }
                };
                failures += usize::from(!pass);
            }
            writeln!(out, "checked {} permutations of size {n}: {failures} failures", all.len()).map_err(io)?;
            if failures > 0 {
                return Ok(Outcome::Counterexample);
            }
        }
    }
    Ok(Outcome::Done)
}

fn system(ty: &TypeArg) -> Result<Arc<CoxeterSystem>> {
    CoxeterSystem::from_tag(&ty.cartan_type, ty.allow_large)
}

fn cox(c: &CoxCommand, format: Format, cap: usize, out: &mut impl Write) -> Result<Outcome> {
    match c {
        CoxCommand::Group { ty, dot } => {
            let sys = system(ty)?;
            let g = sys.group(cap)?;
            let lattice = g.weak_order().is_lattice().is_lattice;
            let value = json!({
                "type": sys.cartan_type().to_string(),
                "order": g.len(),
                "positive_roots": sys.positive_count(),
                "longest": sys.format_element(&sys.longest_element()),
                "weak_order_is_lattice": lattice,
            });
            if format == Format::Json {
                writeln!(out, "{value}").map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{}: |W| = {}, |Phi+| = {}, w0 = {}, weak order lattice: {}",
                    sys.cartan_type(),
                    g.len(),
                    sys.positive_count(),
                    sys.format_element(&sys.longest_element()),
                    lattice
                )
                .map_err(io)?;
            }
            write_dot(dot, &g.weak_order().to_dot(|&i| sys.format_element(g.element(i))))?;
        }
        CoxCommand::Roots { ty } => {
            let sys = system(ty)?;
            for b in 0..sys.positive_count() {
                let coords: Vec<String> = sys.root(b).iter().map(|x| x.to_string()).collect();
                if format == Format::Json {
                    writeln!(out, "{}", json!(coords)).map_err(io)?;
                } else {
                    writeln!(out, "({})", coords.join(", ")).map_err(io)?;
                }
            }
        }
    }
    Ok(Outcome::Done)
}

fn complex(args: &ComplexArgs) -> Result<SubwordComplex> {
    let sys = system(&args.ty)?;
    let word = CoxWord::parse(&args.word)?;
    let omega = sys.parse_element(&args.omega)?;
    SubwordComplex::new(sys, word, omega)
}

fn requires_large_scan(t: CartanType) -> bool {
    t.is_large() || matches!(t, CartanType::H3 | CartanType::D(_)) || t.rank() > 3
}

fn sc(c: &ScCommand, cli: &Cli, cap: usize, out: &mut impl Write, err: &mut impl Write) -> Result<Outcome> {
    let format = cli.format;
    match c {
        ScCommand::Facets { sc, acyclic } => {
            let cx = complex(sc)?;
            let a = cx.analyze(cap)?;
            for (f, facet) in a.facets.iter().enumerate() {
                if *acyclic && !a.is_acyclic(f) {
                    continue;
                }
                if format == Format::Json {
                    let line = json!({
                        "facet": facet,
                        "acyclic": a.is_acyclic(f),
                        "strongly_acyclic": a.is_strongly_acyclic(f),
                    });
                    writeln!(out, "{line}").map_err(io)?;
                } else {
                    let tag = if a.is_strongly_acyclic(f) {
                        " strongly acyclic"
                    } else if a.is_acyclic(f) {
                        " acyclic"
                    } else {
                        ""
                    };
                    writeln!(out, "{facet}{tag}").map_err(io)?;
                }
            }
        }
        ScCommand::Extensions { sc, facet } => {
            let cx = complex(sc)?;
            let facet: Facet = facet.parse()?;
            let g = cx.system().group(cap)?;
            for x in cx.linear_extensions(facet, &g)? {
                writeln!(out, "{}", cx.system().format_element(g.element(x))).map_err(io)?;
            }
        }
        ScCommand::Sweep { sc, pi } => {
            let cx = complex(sc)?;
            let pi = cx.system().parse_element(pi)?;
            writeln!(out, "{}", cx.sweep(&pi)?).map_err(io)?;
        }
        ScCommand::Quotient { sc, dot } => {
            let cx = complex(sc)?;
            let a = cx.analyze(cap)?;
            let part = a.equivalence_partition();
            for (facet, block) in part.facets.iter().zip(&part.blocks) {
                let class: Vec<String> =
                    block.iter().map(|&x| cx.system().format_element(a.group.element(*part.poset.element(x)))).collect();
                writeln!(out, "{}", json!({"facet": facet, "class": class})).map_err(io)?;
            }
            match part.poset.quotient(&part.blocks) {
                Ok(q) => write_dot(dot, &q.to_dot(|&b| part.facets[b].to_string()))?,
                Err(e) => {
                    writeln!(out, "{}", json!({"congruence": false, "reason": e.to_string()})).map_err(io)?;
                    return Ok(Outcome::Counterexample);
                }
            }
        }
        ScCommand::Verify { what, ty, word, omega, max_len } => {
            let sys = system(ty)?;
            let complexes: Vec<SubwordComplex> = match (word, omega) {
                (Some(w), Some(o)) => vec![SubwordComplex::new(sys.clone(), CoxWord::parse(w)?, sys.parse_element(o)?)?],
                (None, None) => {
                    let g = sys.group(cap)?;
                    let mut v = Vec::new();
                    for q in scan::all_words(sys.rank(), *max_len) {
                        for w in g.elements() {
                            if sys.contains_reduced_word(&q.0, w) {
                                v.push(SubwordComplex::new(sys.clone(), q.clone(), w.clone())?);
                            }
                        }
                    }
                    v
                }
                _ => return Err(Error::Precondition("give both --word and --omega, or neither".to_string())),
            };
            let mut failures = 0;
            let mut checked = 0;
            for cx in &complexes {
                let a = cx.analyze(cap)?;
                let report = match what {
                    ScCheck::ThmB => a.verify_thm_b(),
                    ScCheck::ThmC => {
                        if !sys.is_sorting(cx.word())? {
                            if word.is_some() {
                                return Err(Error::NotSorting);
                            }
                            continue;
                        }
                        a.verify_thm_c()?
                    }
                };
                checked += 1;
                if !emit_report(&report, out)? {
                    failures += 1;
                }
            }
            writeln!(out, "checked {checked} complexes: {failures} failures").map_err(io)?;
            if failures > 0 {
                return Ok(Outcome::Counterexample);
            }
        }
        ScCommand::Scan { what, ty, max_len, samples, resume_from, large_scan } => {
            let t: CartanType = ty.cartan_type.parse()?;
            if requires_large_scan(t) && !large_scan {
                return Err(Error::Precondition(format!("{t} scans need --large-scan")));
            }
            let sys = CoxeterSystem::new(t, ty.allow_large || *large_scan)?;
            let mut config = ScanConfig::new(max_len.unwrap_or_else(|| sys.positive_count()));
            config.target = match what {
                ScanTarget::ConjA => Target::A,
                ScanTarget::ConjB => Target::B,
                ScanTarget::Both => Target::Both,
            };
            config.samples = *samples;
            config.seed = cli.seed;
            config.cap = cap;
            config.resume_from = resume_from.as_deref().map(CoxWord::parse).transpose()?;
            let summary = scan::run(&sys, &config, out)?;
            writeln!(err, "{}", summary.statement()).map_err(io)?;
            if summary.failures > 0 {
                return Ok(Outcome::Counterexample);
            }
        }
    }
    Ok(Outcome::Done)
}
