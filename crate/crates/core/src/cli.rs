//! The `fid` command line.
//!
//! Exit codes: 0 success, 1 verification failed, 2 input error, 3 resource
//! cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::equivalences::{base_decomposition, classes_of, decomposition_bounds, sim_classes};
use crate::error::{Error, Result};
use crate::games::{distinguishing_rank_alt, identification_rank};
use crate::invariants::{bound_report, gen_gm, gen_mfmg, invariant_report};
use crate::logic::{parse_formula, Formula};
use crate::structures::{
    are_isomorphic, enumerate_structures, parse_structure, write_structure, EnumerationOptions, Structure, Vocabulary,
};
use crate::synthesis::{synthesize, Method};
use crate::verification::{audit_corpus, verify_defines_up_to, verify_identifies, RivalClass, VerificationVerdict};
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fid",
    version,
    about = "Invariants, identifying formulas and Ehrenfeucht games for finite structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sweeps; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive)]
    pub workers: usize,
    #[command(flatten)]
    pub caps: Caps,
}

#[derive(Debug, Args)]
pub struct Caps {
    /// Largest order for the exact δ sweep.
    #[arg(long, global = true, default_value_t = 16, value_parser = positive)]
    pub delta_exact_max: usize,
    /// Largest order accepted by canonical labelling.
    #[arg(long, global = true, default_value_t = 8, value_parser = positive)]
    pub canon_max: usize,
    /// Maximum node count of a synthesized formula.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = positive)]
    pub node_ceiling: usize,
    /// Round cap for game solving (default `max(n, n') + 1`).
    #[arg(long, global = true, value_parser = positive)]
    pub game_round_cap: Option<usize>,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            delta_exact_max: self.delta_exact_max,
            canon_max: self.canon_max,
            node_ceiling: self.node_ceiling,
            game_round_cap: self.game_round_cap,
        }
    }
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Rivals {
    All,
    Graphs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, base layers and bound checks of a structure.
    Analyze { file: PathBuf },
    /// The base decomposition of a structure.
    Base { file: PathBuf },
    /// Synthesize an identifying sentence.
    Synth {
        file: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        /// Write the formula here instead of standard out.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a sentence identifies a structure by exhaustive enumeration.
    Verify {
        file: PathBuf,
        formula: PathBuf,
        /// `order` or `upto:N`.
        #[arg(long, default_value = "order", value_parser = parse_scope)]
        scope: ScopeArg,
        /// Rival class; graphs for graph inputs, all structures otherwise.
        #[arg(long, value_enum)]
        rivals: Option<Rivals>,
    },
    /// Solve the Ehrenfeucht game on two structures.
    Game {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        alternations: Option<usize>,
        #[arg(long, value_parser = positive)]
        max_rounds: Option<usize>,
    },
    /// Identification rank against every rival of the same order.
    Rank {
        file: PathBuf,
        #[arg(long)]
        alternations: Option<usize>,
        #[arg(long, value_enum)]
        rivals: Option<Rivals>,
    },
    /// List isomorphism-class representatives.
    Enumerate {
        #[arg(long)]
        vocab: String,
        #[arg(long, value_parser = positive)]
        order: usize,
        #[arg(long)]
        graphs: bool,
    },
    /// Generate a fixture structure.
    Gen {
        #[command(subcommand)]
        which: GenKind,
    },
    /// Invariants, synthesis and verification over a whole corpus.
    Audit {
        #[arg(long)]
        vocab: String,
        #[arg(long, value_parser = positive)]
        order: usize,
        #[arg(long)]
        graphs: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// A graph with `m` similarity classes of size `m`.
    Gm {
        #[arg(value_parser = positive)]
        m: usize,
    },
    /// The pair `mF + mG`, `mF + (m+1)G`.
    Mfmg {
        #[arg(value_parser = positive)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug)]
pub enum ScopeArg {
    Order,
    UpTo(usize),
}

fn parse_scope(s: &str) -> std::result::Result<ScopeArg, String> {
    match s {
        "order" => Ok(ScopeArg::Order),
        _ => match s.strip_prefix("upto:").map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Ok(ScopeArg::UpTo(n)),
            _ => Err(format!("expected `order` or `upto:N`, got `{s}`")),
        },
    }
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(Report { text, json, code }) => {
            if cli.json {
                println!("{json}");
            } else {
                print!("{text}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

struct Report {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: impl Serialize) -> Result<Report> {
        let json = serde_json::to_value(json).map_err(|e| Error::Invariant(e.to_string()))?;
        Ok(Report { text, json, code: EXIT_OK })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<Structure> {
    parse_structure(&read(path)?)
}

fn load_formula(path: &Path) -> Result<Formula> {
    parse_formula(read(path)?.trim())
}

fn set(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn partition(classes: &[Vec<usize>]) -> String {
    classes.iter().map(|c| set(c)).collect::<Vec<_>>().join(" ")
}

fn rival_class(m: &Structure, r: Option<Rivals>) -> RivalClass {
    match r {
        Some(Rivals::All) => RivalClass::All,
        Some(Rivals::Graphs) => RivalClass::Graphs,
        None => RivalClass::for_structure(m),
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Analyze { file } => analyze(&load_structure(file)?, &limits),
        Command::Base { file } => base(&load_structure(file)?),
        Command::Synth { file, method, output } => synth(&load_structure(file)?, *method, output.as_deref(), &limits),
        Command::Verify { file, formula, scope, rivals } => {
            let m = load_structure(file)?;
            let phi = load_formula(formula)?;
            phi.validate(m.vocab())?;
            let class = rival_class(&m, *rivals);
            let v = match scope {
                ScopeArg::Order => verify_identifies(&m, &phi, class, &limits)?,
                ScopeArg::UpTo(k) => verify_defines_up_to(&m, &phi, *k, class)?,
            };
            verify_report(v)
        }
        Command::Game { a, b, alternations, max_rounds } => {
            let (m, m2) = (load_structure(a)?, load_structure(b)?);
            let cap = max_rounds.or(limits.game_round_cap).unwrap_or(m.order().max(m2.order()) + 1);
            let isomorphic = m.order() == m2.order() && are_isomorphic(&m, &m2);
            let value = distinguishing_rank_alt(&m, &m2, *alternations, Some(cap))?;
            let text = match (value, isomorphic) {
                (Some(v), _) => format!("{v}\n"),
                (None, true) => "isomorphic: Duplicator wins every game\n".into(),
                (None, false) => return Err(Error::CapExceeded(format!("Spoiler needs more than {cap} rounds"))),
            };
            Report::ok(
                text,
                serde_json::json!({ "value": value, "alternations": alternations, "isomorphic": isomorphic, "cap": cap }),
            )
        }
        Command::Rank { file, alternations, rivals } => {
            let m = load_structure(file)?;
            let r = identification_rank(&m, *alternations, rival_class(&m, *rivals), &limits)?;
            let mut text = format!("{}\nrivals checked: {}\n", r.value, r.rivals_checked);
            if let Some(w) = &r.witness {
                let _ = write!(text, "hardest rival:\n{}", write_structure(w));
            }
            let witness = r.witness.as_ref().map(write_structure);
            Report::ok(
                text,
                serde_json::json!({ "value": r.value, "rivalsChecked": r.rivals_checked, "witness": witness }),
            )
        }
        Command::Enumerate { vocab, order, graphs } => {
            let vocab = Vocabulary::parse(vocab)?;
            let opts = EnumerationOptions { graph_mode: *graphs, ..Default::default() };
            let all = enumerate_structures(&vocab, *order, &opts)?;
            let texts: Vec<String> = all.iter().map(write_structure).collect();
            let mut text = String::new();
            for (i, t) in texts.iter().enumerate() {
                let _ = write!(text, "# {}\n{t}\n", i + 1);
            }
            let _ = writeln!(text, "# total {}", texts.len());
            Report::ok(text, serde_json::json!({ "count": texts.len(), "structures": texts }))
        }
        Command::Gen { which } => match which {
            GenKind::Gm { m } => {
                let g = write_structure(&gen_gm(*m)?);
                Report::ok(g.clone(), serde_json::json!({ "structure": g }))
            }
            GenKind::Mfmg { m } => {
                let (a, b) = gen_mfmg(*m)?;
                let (a, b) = (write_structure(&a), write_structure(&b));
                Report::ok(format!("{a}---\n{b}"), serde_json::json!({ "first": a, "second": b }))
            }
        },
        Command::Audit { vocab, order, graphs } => {
            let vocab = Vocabulary::parse(vocab)?;
            let report = audit_corpus(&vocab, *order, *graphs, &limits)?;
            let mut text = String::from("canon n k sigma delta rho method quantifiers universals bound verified\n");
            for r in &report.records {
                let _ = writeln!(
                    text,
                    "{} {} {} {} {}{} {} {} {} {} {} {}",
                    r.canon,
                    r.n,
                    r.k,
                    r.sigma,
                    r.delta,
                    if r.delta_exact { "" } else { "+" },
                    r.rho,
                    r.method,
                    r.total_quantifiers,
                    r.universals,
                    r.bound,
                    r.verified
                );
            }
            let _ = writeln!(
                text,
                "min max(delta, sigma): {} ({} witnesses)",
                report.min_lambda,
                report.min_lambda_witnesses.len()
            );
            for v in &report.violations {
                let _ = writeln!(text, "violation: {v}");
            }
            let code = if report.violations.is_empty() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let mut out = Report::ok(text, &report)?;
            out.code = code;
            Ok(out)
        }
    }
}

fn analyze(m: &Structure, limits: &Limits) -> Result<Report> {
    let inv = invariant_report(m, limits.delta_exact_max)?;
    let bounds = bound_report(m, limits.delta_exact_max)?;
    let d = base_decomposition(m)?;
    let mut text = String::new();
    let _ = writeln!(text, "order: {}", inv.n);
    let _ = writeln!(text, "max arity: {}", inv.k);
    let _ = writeln!(text, "similarity classes: {}", partition(sim_classes(m).classes()));
    let _ = writeln!(text, "sigma: {} (class {})", inv.sigma, set(&inv.sigma_class));
    match (inv.delta_exact, &inv.delta_witness_x) {
        (Some(dv), Some(x)) => {
            let _ = writeln!(text, "delta: {dv} (X = {})", set(x));
        }
        _ => {
            let _ = writeln!(text, "delta: >= {} (exact sweep skipped)", inv.delta_lower);
        }
    }
    let _ = writeln!(text, "rho: {} (B = {}, fineness {})", inv.rho, set(&inv.rho_base), inv.fineness);
    write_layers(&mut text, &d);
    let _ = writeln!(text, "game bound: {:.3}", bounds.game_bound);
    let _ = writeln!(
        text,
        "prenex budget: {:.3} ({})",
        bounds.prenex_bound,
        if bounds.prenex_bound_strict { "strict" } else { "inclusive" }
    );
    let _ = writeln!(text, "structural checks: {}", if bounds.structural_checks_pass() { "pass" } else { "fail" });
    Report::ok(text, serde_json::json!({ "invariants": inv, "bounds": bounds, "decomposition": layers_json(&d) }))
}

fn write_layers(text: &mut String, d: &crate::equivalences::BaseDecomposition) {
    for (i, x) in d.x.iter().enumerate() {
        let _ = writeln!(text, "X_{}: {}", i + 1, set(x));
    }
    for (i, y) in d.y.iter().enumerate() {
        let _ = writeln!(text, "Y_{}: {}", i + 1, set(y));
    }
    let _ = writeln!(text, "Z: {}", set(&d.z));
}

fn layers_json(d: &crate::equivalences::BaseDecomposition) -> serde_json::Value {
    serde_json::json!({ "x": d.x, "y": d.y, "z": d.z, "k": d.k, "base": d.base() })
}

fn base(m: &Structure) -> Result<Report> {
    let d = base_decomposition(m)?;
    let db = decomposition_bounds(m, &d);
    let mut text = String::new();
    write_layers(&mut text, &d);
    if d.base().len() < m.order() {
        let classes = classes_of(m, d.base(), None)?;
        let _ = writeln!(text, "classes outside the base: {}", partition(classes.classes()));
    }
    let _ = writeln!(text, "class count: {} >= {}", db.class_count_lhs, db.class_count_rhs);
    let _ = writeln!(text, "balance: {:.3} vs {:.3}", db.balance_lhs, db.balance_rhs);
    let mut json = layers_json(&d);
    json["bounds"] = serde_json::to_value(&db).map_err(|e| Error::Invariant(e.to_string()))?;
    Report::ok(text, json)
}

fn synth(m: &Structure, method: Method, output: Option<&Path>, limits: &Limits) -> Result<Report> {
    let r = synthesize(m, method, limits)?;
    let formula = r.formula.to_string();
    let summary = format!(
        "route {}, {} quantifiers ({} existential, {} universal), bound {}\n",
        r.route, r.metrics.quantifiers, r.metrics.existential, r.metrics.universal, r.claimed_bound
    );
    // Without `-o` standard out carries only the formula, so it can be redirected to a file.
    let text = match output {
        Some(path) => {
            fs::write(path, format!("{formula}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            summary
        }
        None => {
            eprint!("{summary}");
            format!("{formula}\n")
        }
    };
    Report::ok(text, &r)
}

fn verify_report(v: VerificationVerdict) -> Result<Report> {
    let mut text = String::new();
    let code = if v.passed() {
        let _ = writeln!(text, "pass: {} rivals checked", v.rivals_checked);
        EXIT_OK
    } else {
        let _ = writeln!(text, "fail: {} rivals checked", v.rivals_checked);
        if let Some(c) = &v.counterexample {
            let _ = write!(text, "counterexample:\n{}", write_structure(c));
        }
        EXIT_VERIFY_FAILED
    };
    let mut out = Report::ok(text, &v)?;
    out.code = code;
    Ok(out)
}
