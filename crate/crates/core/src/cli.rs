//! The `tga` command line: argument definitions, dispatch, and the mapping
//! of errors to exit codes. Results are JSON lines on stdout.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checks::{case_rng, run_suite};
use crate::engine::{
    eval_linear_stats, eval_presentation_stats, eval_zh, independent_set_presentation, linearize, presentation_from_json,
    presentation_semiring, presentation_to_json, synthesize_presentation, EngineError, Presentation, SynthOptions,
};
use crate::expr::{as_linear, eval_expr, generate, parse, serialize, CwExpr, ExprError, Family, FamilySpec};
use crate::graphs::{read_graph, ColoredGraph, GraphError, GraphOp};
use crate::hankel::{build_hankel, guard_cap, rank_report, HankelError};
use crate::params::{independent_set_count, read_target, Param, ParamError, UltimatelyPeriodicSet, ZeroReport};
use crate::semiring::linalg::RowAlgebra;
use crate::semiring::{MinPlus, Nat, Rat, Semiring, TropicalValue};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_RECOLOR: i32 = 4;
pub const EXIT_CHECK: i32 = 5;
pub const EXIT_UNSUPPORTED: i32 = 6;
pub const EXIT_IO: i32 = 7;
pub const EXIT_INVALID: i32 = 8;

#[derive(Debug, Parser)]
#[command(name = "tga", version, about = "Graph parameters on clique-width expressions via finite presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemiringChoice {
    Maxplus,
    Minplus,
    Nat,
    Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpChoice {
    Glue,
    Join,
    Union,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// mis, count, omega, fA, gAr or zH.
    #[arg(long, default_value = "mis")]
    pub param: String,
    /// Ultimately periodic set, e.g. `{1,3}` or `{1,2}+2@2`.
    #[arg(long = "A", default_value = "{1}")]
    pub a: String,
    #[arg(long, default_value_t = 0)]
    pub k0: usize,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Weighted target graph file for zH.
    #[arg(long = "H")]
    pub h: Option<PathBuf>,
    /// Report the embedded integer 0 instead of the semiring zero when the
    /// fA/gAr predicate fails.
    #[arg(long)]
    pub embedded_zero: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a parameter on an expression from a finite presentation.
    Eval {
        #[arg(long)]
        expr: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum, default_value = "maxplus")]
        semiring: SemiringChoice,
        /// Presentation file to use instead of a built-in one.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Color count (defaults to the largest color used).
        #[arg(long)]
        k: Option<usize>,
        /// Evaluate the linear word with curried step matrices.
        #[arg(long)]
        linear: bool,
    },
    /// Evaluate a parameter by exhaustive search.
    Brute {
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        graph: Option<PathBuf>,
        #[arg(long)]
        expr: Option<PathBuf>,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum, default_value = "maxplus")]
        semiring: SemiringChoice,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Rank report for a truncated Hankel matrix.
    Hankel {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum, default_value = "glue")]
        op: OpChoice,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        sizes: Vec<usize>,
        /// Largest graph size built (defaults to the largest of `--sizes`).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "maxplus")]
        semiring: SemiringChoice,
    },
    /// Synthesize a max-plus presentation from a Hankel truncation.
    Synth {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Validation expressions.
        #[arg(long)]
        expr: Vec<PathBuf>,
        /// Number of random cographs (up to 8 vertices) added to the pool.
        #[arg(long, default_value_t = 0)]
        pool: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fail when a representation is not solvable.
        #[arg(long)]
        strict: bool,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Write an expression for a graph family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Second part size for complete_bipartite.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// A failed command: a category, its exit code and a one-line message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: &'static str,
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, code: i32, message: impl Into<String>) -> Self {
        CliError { kind, code, message: message.into() }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.kind, "code": self.code, "message": self.message}).to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Guard { .. } => CliError::new("guard", EXIT_GUARD, e.to_string()),
            GraphError::Format { .. } => CliError::new("parse", EXIT_PARSE, e.to_string()),
            _ => CliError::new("invalid", EXIT_INVALID, e.to_string()),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse(p) => CliError::new("parse", EXIT_PARSE, p.to_string()),
            ExprError::Graph(g) => g.into(),
            ExprError::Family(_) => CliError::new("usage", EXIT_PARSE, e.to_string()),
            ExprError::NotATree(_) => CliError::new("invalid", EXIT_INVALID, e.to_string()),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::Guard { .. } => CliError::new("guard", EXIT_GUARD, e.to_string()),
            ParamError::Graph(g) => g.into(),
            ParamError::Format { .. } | ParamError::SetSyntax(_) => CliError::new("parse", EXIT_PARSE, e.to_string()),
            ParamError::Carrier { .. } => CliError::new("unsupported", EXIT_UNSUPPORTED, e.to_string()),
            _ => CliError::new("invalid", EXIT_INVALID, e.to_string()),
        }
    }
}

impl From<HankelError> for CliError {
    fn from(e: HankelError) -> Self {
        match e {
            HankelError::Graph(g) => g.into(),
            HankelError::Param(p) => p.into(),
            _ => CliError::new("usage", EXIT_PARSE, e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Guard { .. } => CliError::new("guard", EXIT_GUARD, e.to_string()),
            EngineError::UnsupportedRecolor(_) => CliError::new("unsupported_recoloring", EXIT_RECOLOR, e.to_string()),
            EngineError::Format(_) => CliError::new("parse", EXIT_PARSE, e.to_string()),
            EngineError::Expr(x) => x.into(),
            EngineError::Param(p) => p.into(),
            EngineError::Hankel(h) => h.into(),
            _ => CliError::new("unsupported", EXIT_UNSUPPORTED, e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new("io", EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::new("io", EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_expr(path: &Path) -> Result<CwExpr, CliError> {
    parse(&read(path)?).map_err(|e| CliError::new("parse", EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn build_param(args: &ParamArgs) -> Result<Param, CliError> {
    let report = if args.embedded_zero { ZeroReport::EmbeddedInteger } else { ZeroReport::SemiringZero };
    let set = || args.a.parse::<UltimatelyPeriodicSet>().map_err(CliError::from);
    Ok(match args.param.as_str() {
        "mis" | "alpha" => Param::Alpha,
        "omega" => Param::Omega,
        "fA" => Param::FA { k0: args.k0, a: set()?, report },
        "gAr" => Param::GAr { r: args.r, a: set()?, report },
        "zH" => {
            let path = args.h.as_ref().ok_or_else(|| CliError::new("usage", EXIT_PARSE, "zH needs --H <target file>"))?;
            Param::ZH(read_target(&read(path)?)?)
        }
        other => return Err(CliError::new("usage", EXIT_PARSE, format!("unknown parameter `{other}`"))),
    })
}

/// Runs one command and returns its stdout lines.
pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    match &cli.command {
        Command::Eval { expr, param, semiring, presentation, k, linear } => {
            let e = read_expr(expr)?;
            let k = k.unwrap_or_else(|| e.max_color().max(1));
            let line = match (presentation, param.param.as_str()) {
                (Some(path), _) => {
                    let text = read(path)?;
                    match presentation_semiring(&text)?.as_str() {
                        "maxplus" => eval_with(&e, &presentation_from_json::<TropicalValue>(&text)?, *linear)?,
                        "minplus" => eval_with(&e, &presentation_from_json::<MinPlus>(&text)?, *linear)?,
                        "nat" => eval_with(&e, &presentation_from_json::<Nat>(&text)?, *linear)?,
                        "rat" => eval_with(&e, &presentation_from_json::<Rat>(&text)?, *linear)?,
                        other => return Err(CliError::new("parse", EXIT_PARSE, format!("unsupported semiring `{other}`"))),
                    }
                }
                (None, "mis" | "alpha") => {
                    let alphabet: Vec<_> = e.recolor_alphabet().into_iter().collect();
                    match semiring {
                        SemiringChoice::Maxplus => eval_with(&e, &independent_set_presentation::<TropicalValue>(k, &alphabet)?, *linear)?,
                        SemiringChoice::Minplus => eval_with(&e, &independent_set_presentation::<MinPlus>(k, &alphabet)?, *linear)?,
                        SemiringChoice::Nat => eval_with(&e, &independent_set_presentation::<Nat>(k, &alphabet)?, *linear)?,
                        SemiringChoice::Rat => eval_with(&e, &independent_set_presentation::<Rat>(k, &alphabet)?, *linear)?,
                    }
                }
                (None, "count") => {
                    let alphabet: Vec<_> = e.recolor_alphabet().into_iter().collect();
                    eval_with(&e, &independent_set_presentation::<Nat>(k, &alphabet)?, *linear)?
                }
                (None, "zH") => {
                    let Param::ZH(h) = build_param(param)? else { unreachable!() };
                    let value = eval_zh(&e, &h)?;
                    json!({"value": value.to_string(), "nodes": e.len(), "ops": null}).to_string()
                }
                (None, other) => {
                    return Err(CliError::new(
                        "unsupported",
                        EXIT_UNSUPPORTED,
                        format!("no built-in presentation for `{other}`; pass --presentation"),
                    ))
                }
            };
            Ok(vec![line])
        }
        Command::Brute { graph, expr, param, semiring, k } => {
            let g = match (graph, expr) {
                (Some(path), _) => read_graph(&read(path)?)?,
                (None, Some(path)) => {
                    let e = read_expr(path)?;
                    eval_expr(&e, k.unwrap_or_else(|| e.max_color().max(1)))?
                }
                (None, None) => return Err(CliError::new("usage", EXIT_PARSE, "brute needs --graph or --expr")),
            };
            let value = if param.param == "count" {
                independent_set_count(&g)?.to_string()
            } else {
                let p = build_param(param)?;
                match semiring {
                    SemiringChoice::Maxplus => p.eval::<TropicalValue>(&g)?.to_string(),
                    SemiringChoice::Minplus => p.eval::<MinPlus>(&g)?.to_string(),
                    SemiringChoice::Nat => p.eval::<Nat>(&g)?.to_string(),
                    SemiringChoice::Rat => p.eval::<Rat>(&g)?.to_string(),
                }
            };
            Ok(vec![json!({"param": param.param, "value": value, "n": g.n()}).to_string()])
        }
        Command::Hankel { param, op, i, j, k, sizes, max_n, semiring } => {
            let p = build_param(param)?;
            let op = match op {
                OpChoice::Glue => GraphOp::Glue,
                OpChoice::Union => GraphOp::Union,
                OpChoice::Join => GraphOp::Join(*i, *j),
            };
            let max_n = max_n.or_else(|| sizes.iter().copied().max()).unwrap_or(0);
            let report = match semiring {
                SemiringChoice::Maxplus => hankel_json::<TropicalValue>(&p, &op, *k, max_n, sizes)?,
                SemiringChoice::Minplus => hankel_json::<MinPlus>(&p, &op, *k, max_n, sizes)?,
                SemiringChoice::Nat => hankel_json::<Nat>(&p, &op, *k, max_n, sizes)?,
                SemiringChoice::Rat => hankel_json::<Rat>(&p, &op, *k, max_n, sizes)?,
            };
            Ok(vec![report])
        }
        Command::Synth { param, k, max_n, expr, pool, seed, strict, out } => {
            let p = build_param(param)?;
            let mut exprs = expr.iter().map(|path| read_expr(path)).collect::<Result<Vec<_>, _>>()?;
            for c in 0..*pool as u64 {
                let s = rand::Rng::gen::<u64>(&mut case_rng(*seed, 0, c));
                exprs.push(generate(&FamilySpec::cograph(1 + (c as usize % 8), s))?);
            }
            let opts = SynthOptions { k: *k, max_n: *max_n, cap: guard_cap(), strict: *strict };
            let (pres, diag) = synthesize_presentation(|g: &ColoredGraph| p.eval::<TropicalValue>(g), opts, &exprs)?;
            if !diag.all_solvable() {
                eprintln!("warning: {} representations not solvable at max_n = {max_n}", diag.unsolved.len());
            }
            let mut lines = Vec::new();
            let text = presentation_to_json(&pres);
            match out {
                Some(path) => write(path, &text)?,
                None => lines.push(text),
            }
            lines.push(serde_json::to_string(&diag).expect("diagnostics serialize"));
            Ok(lines)
        }
        Command::Gen { family, n, m, seed, out } => {
            let fam: Family = family.parse()?;
            let spec = match fam {
                Family::CompleteBipartite => FamilySpec::bipartite(*n, m.unwrap_or(*n)),
                Family::CographRandom => FamilySpec::cograph(*n, *seed),
                f => FamilySpec::new(f, *n),
            };
            let e = generate(&spec)?;
            let text = serialize(&e) + "\n";
            match out {
                Some(path) => {
                    write(path, &text)?;
                    Ok(vec![json!({"out": path.display().to_string(), "family": fam.name(), "vertices": spec.vertex_count(), "nodes": e.len()}).to_string()])
                }
                None => Ok(vec![text.trim_end().to_string()]),
            }
        }
        Command::Check { suite, seed, cases } => {
            let outcomes = run_suite(suite, *seed, *cases).map_err(|m| CliError::new("usage", EXIT_PARSE, m))?;
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.property.as_str()).collect();
            let lines: Vec<String> = outcomes.iter().map(|o| serde_json::to_string(o).expect("outcome serializes")).collect();
            if failed.is_empty() {
                Ok(lines)
            } else {
                for l in &lines {
                    println!("{l}");
                }
                Err(CliError::new("check_failed", EXIT_CHECK, format!("failing properties: {}", failed.join(", "))))
            }
        }
    }
}

fn eval_with<S: Semiring>(e: &CwExpr, p: &Presentation<S>, linear: bool) -> Result<String, CliError> {
    let (value, stats) = if linear {
        let w = as_linear(e).ok_or_else(|| CliError::new("unsupported", EXIT_UNSUPPORTED, "expression is not linear"))?;
        eval_linear_stats(&w, &linearize(p))?
    } else {
        eval_presentation_stats(e, p)?
    };
    Ok(json!({"value": value.to_string(), "nodes": stats.nodes, "ops": stats.ops}).to_string())
}

fn hankel_json<S: RowAlgebra>(p: &Param, op: &GraphOp, k: usize, max_n: usize, sizes: &[usize]) -> Result<String, CliError> {
    let h = build_hankel::<S>(p, op, k, max_n, guard_cap())?;
    Ok(rank_report(&h, sizes)?.to_json())
}
