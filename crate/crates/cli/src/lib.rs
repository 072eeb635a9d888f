//! `raag-kit`: command-line access to the word, cube, overlap, bound and
//! curvature tools of `raag-core`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde_json::json;

use raag_core::bounds::{scl_lower_bound_with_cap, verify_certificate};
use raag_core::cube::DEFAULT_HULL_CAP;
use raag_core::graph::EXACT_VERTEX_CAP;
use raag_core::overlap::{search_prop_noov_violation, verify_key_lemma, DEFAULT_N_MAX, DEFAULT_REPS_CAP};
use raag_core::rational::format_rational;
use raag_core::{
    AngledComplex, ColoringMode, DefiningGraph, Error, LowerBound, OverlapMode, Raag, UniversalCover, Word,
};

pub const CAPS_ENV: &str = "RAAG_KIT_CAPS";

#[derive(Parser, Debug)]
#[command(name = "raag-kit", version, about = "Right-angled Artin group toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a word
    Nf { graph: PathBuf, word: String },
    /// Cyclically reduced core and conjugator
    Cyc { graph: PathBuf, word: String },
    /// Decide whether two words are equal in the group
    Eq { graph: PathBuf, w1: String, w2: String },
    /// Chromatic number of the defining graph
    Chromatic {
        graph: PathBuf,
        #[arg(long)]
        heuristic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lower bound on scl with a checkable certificate
    SclBound {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        heuristic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Inverse-overlap check over all cyclic representatives of g^n
    VerifyOverlap {
        graph: PathBuf,
        word: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long)]
        reps_cap: Option<usize>,
        #[arg(long, default_value = "disjoint")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// Half-space calculus on the universal cover
    #[command(subcommand)]
    Cube(CubeCommand),
    /// Curvature totals of an angled 2-complex
    GaussBonnet {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CubeCommand {
    /// Half-spaces separating two vertices
    Interval {
        graph: PathBuf,
        x: String,
        y: String,
        #[command(flatten)]
        opts: CubeOpts,
    },
    /// Median of three vertices
    Median {
        graph: PathBuf,
        x: String,
        y: String,
        z: String,
        #[command(flatten)]
        opts: CubeOpts,
    },
    /// Randomized search for forbidden special-action configurations
    Axioms {
        graph: PathBuf,
        #[command(flatten)]
        opts: CubeOpts,
    },
    /// Midpoints of longest chains in sampled intervals
    Chains {
        graph: PathBuf,
        #[command(flatten)]
        opts: CubeOpts,
    },
    /// Search for translates of the axis of g landing reversed in A_g^+
    Noov {
        graph: PathBuf,
        g: String,
        #[command(flatten)]
        opts: CubeOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CubeOpts {
    #[arg(long)]
    pub radius: Option<usize>,
    /// sample count; `noov` is exhaustive when omitted
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub hull_cap: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

/// Enumeration caps; `RAAG_KIT_CAPS` overrides the defaults, flags override both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub reps_cap: usize,
    pub hull_cap: usize,
    pub exact_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { reps_cap: DEFAULT_REPS_CAP, hull_cap: DEFAULT_HULL_CAP, exact_cap: EXACT_VERTEX_CAP }
    }
}

impl Caps {
    /// Parses `key=N` pairs separated by commas, e.g. `reps-cap=10000,hull-cap=500`.
    pub fn from_env_value(text: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| format!("{CAPS_ENV}: expected key=N, got `{item}`"))?;
            let value: usize =
                value.trim().parse().map_err(|_| format!("{CAPS_ENV}: `{}` is not a count", value.trim()))?;
            match key.trim() {
                "reps-cap" => caps.reps_cap = value,
                "hull-cap" => caps.hull_cap = value,
                "exact-cap" => caps.exact_cap = value,
                other => return Err(format!("{CAPS_ENV}: unknown cap `{other}`")),
            }
        }
        Ok(caps)
    }
}

enum Failure {
    /// A check ran and found a violation; output already written.
    Check,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs one invocation. `caps_env` is the value of `RAAG_KIT_CAPS`, if set.
pub fn run<I, T>(args: I, caps_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let synopsis = synopsis(&cli.command);
    let caps = match caps_env.map(Caps::from_env_value).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}\n\n{synopsis}");
            return 2;
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli.command, caps, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{synopsis}");
            2
        }
    }
}

fn synopsis(command: &Command) -> String {
    let mut root = Cli::command();
    let path: Vec<&str> = match command {
        Command::Nf { .. } => vec!["nf"],
        Command::Cyc { .. } => vec!["cyc"],
        Command::Eq { .. } => vec!["eq"],
        Command::Chromatic { .. } => vec!["chromatic"],
        Command::SclBound { .. } => vec!["scl-bound"],
        Command::VerifyOverlap { .. } => vec!["verify-overlap"],
        Command::GaussBonnet { .. } => vec!["gauss-bonnet"],
        Command::Cube(c) => vec![
            "cube",
            match c {
                CubeCommand::Interval { .. } => "interval",
                CubeCommand::Median { .. } => "median",
                CubeCommand::Axioms { .. } => "axioms",
                CubeCommand::Chains { .. } => "chains",
                CubeCommand::Noov { .. } => "noov",
            },
        ],
    };
    root.build();
    let mut cmd = &mut root;
    for name in path {
        cmd = cmd.find_subcommand_mut(name).expect("known subcommand");
    }
    cmd.render_usage().to_string()
}

fn load_raag(path: &Path) -> Result<Raag, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let graph = DefiningGraph::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Raag::new(graph))
}

fn parse(raag: &Raag, text: &str) -> Result<Word, Failure> {
    Ok(raag.parse_word(text)?)
}

/// Pretty JSON with sorted keys, so re-serializing parsed output is a no-op.
fn to_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn dispatch(command: &Command, caps: Caps, out: &mut String) -> Outcome {
    match command {
        Command::Nf { graph, word } => {
            let raag = load_raag(graph)?;
            let w = parse(&raag, word)?;
            writeln!(out, "{}", raag.format_word(&raag.normal_form(&w))).ok();
            Ok(())
        }
        Command::Cyc { graph, word } => {
            let raag = load_raag(graph)?;
            let w = parse(&raag, word)?;
            let (core, conj) = raag.cyclically_reduce(&w);
            writeln!(out, "core: {}", raag.format_word(&raag.normal_form(&core))).ok();
            writeln!(out, "conjugator: {}", raag.format_word(&raag.normal_form(&conj))).ok();
            writeln!(out, "length: {}", core.len()).ok();
            Ok(())
        }
        Command::Eq { graph, w1, w2 } => {
            let raag = load_raag(graph)?;
            let (u, v) = (parse(&raag, w1)?, parse(&raag, w2)?);
            if raag.equal(&u, &v) {
                writeln!(out, "equal").ok();
                Ok(())
            } else {
                writeln!(out, "not equal").ok();
                Err(Failure::Check)
            }
        }
        Command::Chromatic { graph, heuristic, json } => chromatic(graph, *heuristic, *json, caps, out),
        Command::SclBound { graph, word, heuristic, json } => scl_bound(graph, word, *heuristic, *json, caps, out),
        Command::VerifyOverlap { graph, word, n_max, reps_cap, mode, json } => {
            let mode: OverlapMode = mode.parse()?;
            let raag = load_raag(graph)?;
            let g = parse(&raag, word)?;
            let reports = verify_key_lemma(&raag, &g, *n_max, reps_cap.unwrap_or(caps.reps_cap), mode)?;
            if *json {
                writeln!(out, "{}", to_json(&reports)).ok();
            } else {
                for r in &reports {
                    writeln!(out, "n: {}", r.n).ok();
                    writeln!(out, "  representatives_checked: {}", r.representatives_checked).ok();
                    writeln!(out, "  exhaustive: {}", r.exhaustive).ok();
                    writeln!(out, "  max_overlap_length: {}", r.max_overlap_length).ok();
                    if let Some(w) = &r.witness {
                        writeln!(
                            out,
                            "  witness: u = {} at {}, inverse at {}, in {}",
                            w.u, w.position_u, w.position_inverse, w.representative
                        )
                        .ok();
                    }
                    writeln!(out, "  bound: {}", format_rational(&r.bound)).ok();
                    writeln!(out, "  violated: {}", r.violated).ok();
                }
            }
            if reports.iter().any(|r| r.violated) {
                return Err(Failure::Check);
            }
            Ok(())
        }
        Command::Cube(c) => cube(c, caps, out),
        Command::GaussBonnet { complex, json } => {
            let text =
                std::fs::read_to_string(complex).map_err(|e| Failure::Usage(format!("{}: {e}", complex.display())))?;
            let cx = AngledComplex::from_json(&text)?;
            let chi = cx.euler_characteristic();
            let total = cx.total_curvature();
            let residual = cx.gauss_bonnet_residual();
            if *json {
                let v = json!({
                    "euler_characteristic": chi,
                    "total_curvature": format_rational(&total),
                    "residual": format_rational(&residual),
                    "boundary_edges": cx.boundary_edges(),
                });
                writeln!(out, "{}", to_json(&v)).ok();
            } else {
                writeln!(out, "euler_characteristic: {chi}").ok();
                writeln!(out, "total_curvature: {} pi", format_rational(&total)).ok();
                writeln!(out, "2 pi chi: {} pi", 2 * chi).ok();
                writeln!(out, "residual: {}", format_rational(&residual)).ok();
            }
            if *residual.numer() != 0 {
                return Err(Failure::Check);
            }
            Ok(())
        }
    }
}

fn chromatic(graph: &Path, heuristic: bool, json: bool, caps: Caps, out: &mut String) -> Outcome {
    let raag = load_raag(graph)?;
    let g = raag.graph();
    let mode = if heuristic { ColoringMode::Heuristic } else { ColoringMode::Exact };
    let res = g.chromatic_number_with_cap(mode, caps.exact_cap)?;
    let clique = match &res.lower_bound {
        Some(LowerBound::Clique(c)) => Some(c.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>()),
        _ => None,
    };
    if json {
        let v = json!({
            "num_colors": res.num_colors,
            "exact": res.exact,
            "coloring": res.coloring,
            "lower_bound": res.lower_bound,
        });
        writeln!(out, "{}", to_json(&v)).ok();
    } else {
        let how = match (&res.lower_bound, res.exact) {
            (_, false) => "upper bound".to_string(),
            (Some(LowerBound::Clique(_)), true) => format!("exact, clique {}", clique.unwrap_or_default().join(" ")),
            _ => "exact, exhaustive".to_string(),
        };
        writeln!(out, "chromatic number: {} ({how})", res.num_colors).ok();
        let assignment: Vec<String> =
            res.coloring.assignment.iter().enumerate().map(|(v, c)| format!("{}={c}", g.name(v))).collect();
        writeln!(out, "coloring: {}", assignment.join(" ")).ok();
    }
    Ok(())
}

fn scl_bound(graph: &Path, word: &str, heuristic: bool, json: bool, caps: Caps, out: &mut String) -> Outcome {
    let raag = load_raag(graph)?;
    let g = parse(&raag, word)?;
    let mode = if heuristic { ColoringMode::Heuristic } else { ColoringMode::Exact };
    let cert = scl_lower_bound_with_cap(&raag, &g, mode, caps.exact_cap)?;
    let verdict = verify_certificate(&cert);
    let opt = |r: &Option<raag_core::Rational>| r.as_ref().map_or("none".to_string(), format_rational);
    if json {
        writeln!(out, "{}", to_json(&cert)).ok();
    } else {
        writeln!(out, "element: {}", cert.element).ok();
        writeln!(out, "bound: {}", cert.bound.as_ref().map_or("infinite".to_string(), format_rational)).ok();
        writeln!(out, "route: {}", cert.route).ok();
        if let Some(d) = cert.decisive {
            writeln!(out, "decisive: {d}").ok();
        }
        if let Some(c) = &cert.coloring {
            let exact = if cert.chromatic_exact { "exact" } else { "heuristic" };
            writeln!(out, "coloring: {} colors ({exact})", c.num_colors).ok();
        }
        writeln!(out, "coloring_bound: {}", opt(&cert.coloring_bound)).ok();
        writeln!(out, "triangle_free: {}", cert.triangle_free_witness).ok();
        writeln!(out, "triangle_free_bound: {}", opt(&cert.triangle_free_bound)).ok();
        let mut refs = String::new();
        for r in &cert.references {
            let _ = write!(refs, " {}={}", r.name, format_rational(&r.value));
        }
        writeln!(out, "references:{refs}").ok();
        match &verdict {
            Ok(()) => writeln!(out, "certificate: verified").ok(),
            Err(e) => writeln!(out, "certificate: {e}").ok(),
        };
    }
    verdict.map_err(|_| Failure::Check)
}

fn cube(command: &CubeCommand, caps: Caps, out: &mut String) -> Outcome {
    let (graph, opts) = match command {
        CubeCommand::Interval { graph, opts, .. }
        | CubeCommand::Median { graph, opts, .. }
        | CubeCommand::Axioms { graph, opts }
        | CubeCommand::Chains { graph, opts }
        | CubeCommand::Noov { graph, opts, .. } => (graph, opts),
    };
    let raag = load_raag(graph)?;
    let cover = UniversalCover::new(raag.clone()).with_hull_cap(opts.hull_cap.unwrap_or(caps.hull_cap));
    let radius = opts.radius.unwrap_or(3);
    let passed = match command {
        CubeCommand::Interval { x, y, .. } => {
            let (x, y) = (cover.vertex(&parse(&raag, x)?), cover.vertex(&parse(&raag, y)?));
            let hs: Vec<String> = cover.interval(&x, &y).sorted().iter().map(|h| h.render(&raag)).collect();
            if opts.json {
                writeln!(out, "{}", to_json(&hs)).ok();
            } else {
                writeln!(out, "distance: {}", hs.len()).ok();
                for h in &hs {
                    writeln!(out, "{h}").ok();
                }
            }
            true
        }
        CubeCommand::Median { x, y, z, .. } => {
            let v: Vec<_> = [x, y, z].iter().map(|t| parse(&raag, t).map(|w| cover.vertex(&w))).collect::<Result<_, _>>()?;
            let m = cover.median(&v[0], &v[1], &v[2]);
            let text = raag.format_word(m.word());
            if opts.json {
                writeln!(out, "{}", to_json(&json!({ "median": text }))).ok();
            } else {
                writeln!(out, "{text}").ok();
            }
            true
        }
        CubeCommand::Axioms { .. } => {
            let report = cover.check_special_axioms(opts.samples.unwrap_or(1000), radius, opts.seed)?;
            if opts.json {
                writeln!(out, "{}", to_json(&report)).ok();
            } else {
                writeln!(out, "samples: {}", report.samples).ok();
                writeln!(
                    out,
                    "checked: s1 {} s2 {} s3 {} s4 {}",
                    report.s1_checked, report.s2_checked, report.s3_checked, report.s4_checked
                )
                .ok();
                write_violations(out, &report.violations);
            }
            report.passed()
        }
        CubeCommand::Chains { .. } => {
            let report = cover.check_max_chains(opts.samples.unwrap_or(200), radius, opts.seed)?;
            if opts.json {
                writeln!(out, "{}", to_json(&report)).ok();
            } else {
                writeln!(out, "intervals: {}", report.intervals).ok();
                writeln!(out, "nested_pairs: {}", report.nested_pairs).ok();
                writeln!(out, "chains: {}", report.chains).ok();
                writeln!(out, "midpoint_pairs: {}", report.midpoint_pairs).ok();
                writeln!(out, "crossing_midpoints: {}", report.crossing_midpoints).ok();
                write_violations(out, &report.violations);
            }
            report.passed()
        }
        CubeCommand::Noov { g, .. } => {
            let g = parse(&raag, g)?;
            let report = search_prop_noov_violation(&cover, &g, radius, opts.samples, opts.seed)?;
            if opts.json {
                writeln!(out, "{}", to_json(&report)).ok();
            } else {
                writeln!(out, "g: {}", report.g).ok();
                writeln!(out, "pairs: {}", report.pairs).ok();
                writeln!(out, "elements: {}", report.elements).ok();
                writeln!(out, "triples: {}", report.triples).ok();
                writeln!(out, "violations: {}", report.violations.len()).ok();
                for v in &report.violations {
                    writeln!(out, "  f = {}, x = {}, y = {}", v.f, v.x, v.y).ok();
                }
            }
            report.passed()
        }
    };
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn write_violations(out: &mut String, violations: &[raag_core::cube::Violation]) {
    writeln!(out, "violations: {}", violations.len()).ok();
    for v in violations {
        writeln!(out, "  {} f = {}: {}", v.check, v.element, v.halfspaces.join(" ")).ok();
    }
}
