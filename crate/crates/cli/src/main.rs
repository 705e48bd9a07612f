//! `bqt`: build chain representations of weighted posets, check their relations
//! exactly, and compare the structures built from them.

mod commands;
mod poset_expr;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(bqt_core::Error),
}

impl From<bqt_core::Error> for Failure {
    fn from(e: bqt_core::Error) -> Self {
        Failure::Lib(e)
    }
}

/// A finished check: the JSON report, a short human summary and the verdict.
pub struct Outcome {
    pub report: Value,
    pub lines: Vec<String>,
    pub passed: bool,
}

#[derive(Parser, Debug)]
#[command(name = "bqt", version, about = "Calibrated chain representations of weighted posets", after_help = poset_expr::GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a poset and its excellence check.
    Poset(Common),
    /// List the good chains level by level.
    Chains(Common),
    /// Build an edge function and optionally check it.
    Edge(EdgeArgs),
    /// Dump the representation matrices.
    Rep(Common),
    /// Check monodromy, every relation family and calibration.
    Verify(VerifyArgs),
    /// Build the dual representation and check the duality isomorphism.
    Dual(Common),
    /// Build the product of two posets and its edge function.
    Product(ProductArgs),
    /// Build the homomorphism induced by a content-preserving poset map.
    Hom(HomArgs),
    /// Recover the poset from the representation matrices.
    Reconstruct(ReconstructArgs),
    /// Check that the symmetric-function operators commute.
    Sym(SymArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PosetOpts {
    /// Poset expression (see the grammar below).
    #[arg(long)]
    pub poset: String,
    #[arg(long)]
    pub max_boxes: Option<usize>,
    #[arg(long)]
    pub max_rows: Option<usize>,
    #[arg(long)]
    pub max_cols: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// First weight of a bare `linear` poset.
    #[arg(long)]
    pub x0: Option<String>,
    /// Multiply every weight and content by this expression.
    #[arg(long)]
    pub twist: Option<String>,
    /// Number of symbolic parameters a1..aR expressions may use.
    #[arg(long)]
    pub params: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[command(flatten)]
    pub poset: PosetOpts,
    /// Highest level to build (default: the longest chain).
    #[arg(long)]
    pub levels: Option<usize>,
    /// Seed of the spanning forest used to synthesize the edge function.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the closed-form edge function instead of synthesizing one.
    #[arg(long)]
    pub closed_form: bool,
    /// Multiply the edge value on this cover by q.
    #[arg(long)]
    pub corrupt_edge: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct EdgeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub check_monodromy: bool,
    /// Recover the coboundary to the edge function synthesized from this seed
    /// and check the induced intertwiner.
    #[arg(long)]
    pub compare_seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also check every coideal and this many random submodule closures.
    #[arg(long)]
    pub submodules: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[command(flatten)]
    pub common: Common,
    /// The second factor.
    #[arg(long)]
    pub with: String,
    /// ψ for the first factor, in a7 (y) and a8 (u); default the standard ψ.
    #[arg(long)]
    pub psi1: Option<String>,
    #[arg(long)]
    pub psi2: Option<String>,
    /// Value of M_ψ at the root of the first factor, in a8 (u); default 1.
    #[arg(long)]
    pub base1: Option<String>,
    #[arg(long)]
    pub base2: Option<String>,
    /// Highest level of the tensor dimension check.
    #[arg(long, default_value_t = 3)]
    pub tensor_levels: usize,
}

#[derive(Args, Debug)]
pub struct HomArgs {
    #[command(flatten)]
    pub common: Common,
    /// The target poset; elements are matched by their contents.
    #[arg(long)]
    pub target: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Corruption {
    DMinus,
    Spectrum,
    Completeness,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub common: Common,
    /// Damage the calibrated data before reconstructing.
    #[arg(long, value_enum)]
    pub corrupt: Option<Corruption>,
}

#[derive(Args, Debug)]
pub struct SymArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 3)]
    pub i_max: usize,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Poset(c) | Command::Chains(c) | Command::Rep(c) | Command::Dual(c) => c,
            Command::Edge(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Product(a) => &a.common,
            Command::Hom(a) => &a.common,
            Command::Reconstruct(a) => &a.common,
            Command::Sym(a) => &a.common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Poset(_) => "poset",
            Command::Chains(_) => "chains",
            Command::Edge(_) => "edge",
            Command::Rep(_) => "rep",
            Command::Verify(_) => "verify",
            Command::Dual(_) => "dual",
            Command::Product(_) => "product",
            Command::Hom(_) => "hom",
            Command::Reconstruct(_) => "reconstruct",
            Command::Sym(_) => "sym",
        }
    }

    fn run(&self) -> Result<Outcome, Failure> {
        match self {
            Command::Poset(c) => commands::poset(c),
            Command::Chains(c) => commands::chains(c),
            Command::Edge(a) => commands::edge(a),
            Command::Rep(c) => commands::rep(c),
            Command::Verify(a) => commands::verify(a),
            Command::Dual(c) => commands::dual(c),
            Command::Product(a) => commands::product(a),
            Command::Hom(a) => commands::hom(a),
            Command::Reconstruct(a) => commands::reconstruct(a),
            Command::Sym(a) => commands::sym(a),
        }
    }
}

fn usage_exit(msg: &str) -> ExitCode {
    eprintln!("error: {msg}\n\n{}", poset_expr::GRAMMAR);
    ExitCode::from(2)
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BQT_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or(format!("BQT_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(common: &Common, outcome: &Outcome) -> std::io::Result<()> {
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("reports serialize"),
        Format::Pretty => outcome.lines.join("\n"),
    };
    match &common.out {
        Some(path) => fs::write(path, text + "\n"),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("\n{}", poset_expr::GRAMMAR);
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = configure_threads() {
        return usage_exit(&msg);
    }
    let outcome = match cli.command.run() {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => return usage_exit(&msg),
        Err(Failure::Lib(e)) => Outcome {
            report: serde_json::json!({ "command": cli.command.name(), "passed": false, "error": e.to_string() }),
            lines: vec![format!("{}: error: {e}", cli.command.name())],
            passed: false,
        },
    };
    if let Err(e) = emit(cli.command.common(), &outcome) {
        eprintln!("error: cannot write the report: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
