//! `entcard`: evaluate entropy and cardinality inequalities from JSON inputs.
//!
//! Every invocation prints one JSON document. Exit status is 0 when a check
//! holds (or for purely informational commands), 1 when it is violated, 2 on
//! bad input or an infeasible request, and 3 when a check is inconclusive.

mod commands;
mod demo;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entcard_core::{BigUint, EvalConfig, LogBase, Side};
use output::{render, Format};

#[derive(Parser)]
#[command(name = "entcard", version, about = "Exact checks for entropy and sumset inequalities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Absolute tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    pub tolerance: f64,
    /// Logarithm base: 2 or e.
    #[arg(long, global = true, default_value = "2")]
    pub base: LogBase,
    /// Largest set that may be enumerated explicitly.
    #[arg(long, global = true, default_value = "1000000", value_parser = positive_biguint)]
    pub limit: BigUint,
    /// Seed for commands that draw random instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl Global {
    pub fn eval(&self) -> EvalConfig {
        EvalConfig { tolerance: self.tolerance, base: self.base }
    }
}

fn positive_f64(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{text}` is not a positive number")),
    }
}

fn positive_biguint(text: &str) -> Result<BigUint, String> {
    match text.parse::<BigUint>() {
        Ok(v) if v >= BigUint::from(1u8) => Ok(v),
        _ => Err(format!("`{text}` is not a positive integer")),
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Shannon entropy of a distribution.
    Entropy {
        #[arg(long)]
        dist: PathBuf,
    },
    /// Law of f(X).
    Pushforward {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Smallest k making k p(x) integral, and whether a given k qualifies.
    Suitable {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Nearest distribution with a bounded common denominator.
    Rationalize {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        max_denominator: u64,
    },
    /// Ruzsa sets of a distribution.
    Ruzsa {
        #[command(subcommand)]
        op: RuzsaOp,
    },
    /// Coordinate projection of a set or distribution.
    Project {
        #[arg(long, conflicts_with = "dist", required_unless_present = "dist")]
        set: Option<PathBuf>,
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Comma-separated 1-based coordinates, e.g. `1,3`.
        #[arg(long)]
        indices: String,
    },
    /// Average conditional slice size `|A_T | A_S|`.
    Condsize {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "")]
        s: String,
    },
    /// Conditional entropy `H(X_S | X_C)`.
    Condentropy {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "")]
        c: String,
    },
    /// Fractional covers.
    Cover {
        #[command(subcommand)]
        op: CoverOp,
    },
    /// Inequality checks.
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
    /// Witness constructions.
    Witness {
        #[command(subcommand)]
        op: WitnessOp,
    },
    /// Loomis-Whitney and Han side by side on a random set in {0,1,2}^3.
    Demo {
        /// Use this point set instead of a random one.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        kmax: u64,
    },
}

#[derive(Args)]
pub struct RuzsaArgs {
    #[arg(long)]
    pub dist: PathBuf,
    /// Defaults to the smallest suitable k.
    #[arg(long)]
    pub k: Option<u64>,
}

#[derive(Subcommand)]
pub enum RuzsaOp {
    /// Closed-form size of R_k(X).
    Size(RuzsaArgs),
    /// Every element of R_k(X) in lexicographic order.
    Enum(RuzsaArgs),
    /// Checks f^k(R_k(X)) = R_k(f(X)) by enumeration.
    Commute {
        #[command(flatten)]
        ruzsa: RuzsaArgs,
        #[arg(long)]
        map: PathBuf,
    },
    /// A preimage in R_k(X) of a vector of R_k(f(X)).
    Lift {
        #[command(flatten)]
        ruzsa: RuzsaArgs,
        #[arg(long)]
        map: PathBuf,
        /// Inline JSON array of elements, or a file holding one.
        #[arg(long)]
        y: String,
    },
    /// Exact method-of-types bounds on |R_k(X)|.
    Bound(RuzsaArgs),
    /// log|R_k(X)|/k against H(X).
    Converge {
        #[arg(long)]
        dist: PathBuf,
        /// Comma-separated k values; defaults to suitable k up to --kmax.
        #[arg(long)]
        ks: Option<String>,
        #[arg(long, default_value_t = 60)]
        kmax: u64,
    },
}

#[derive(Subcommand)]
pub enum CoverOp {
    /// Fractional cover check, or uniform k-cover check with --k.
    Check {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Minimum fractional cover over the given members.
    Min {
        #[arg(long)]
        cover: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum CheckOp {
    /// H(f(X)) <= sum a_i H(f_i(X)).
    Entropy {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// |f(A)| <= prod |f_i(A)|^a_i.
    Cardinality {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Shearer's inequality for a uniform k-cover.
    Shearer {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        /// Defaults to `sets` for point sets and `entropy` for distributions.
        #[arg(long, value_parser = parse_side)]
        side: Option<Side>,
    },
    /// Conditional projection inequality for a fractional cover.
    Projection {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_side)]
        side: Option<Side>,
    },
    /// Set-side inequality on Ruzsa sets of X at every suitable k <= kmax.
    Lemma1 {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        kmax: u64,
        /// Also count image sets by enumeration, within --limit.
        #[arg(long)]
        cross_check: bool,
    },
}

#[derive(Subcommand)]
pub enum WitnessOp {
    /// Distribution on A whose image under f is uniform on f(A).
    Lemma2 {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

fn parse_side(text: &str) -> Result<Side, String> {
    match text {
        "sets" => Ok(Side::Sets),
        "entropy" => Ok(Side::Entropy),
        _ => Err(format!("`{text}` is not a side; use `sets` or `entropy`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match commands::run(&cli) {
        Ok(outcome) => {
            println!("{}", render(&outcome.doc, format));
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let doc = serde_json::json!({"error": format!("{e:#}")});
            println!("{}", render(&doc, format));
            ExitCode::from(2)
        }
    }
}
