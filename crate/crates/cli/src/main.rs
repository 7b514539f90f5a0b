//! `cyltor`: torsion invariants of homology cylinders from the command line.
//!
//! Every run prints one JSON report that embeds the argument vector it was
//! produced from. Exit status is 0 on success, 1 on usage or input errors,
//! and 2 when the input is well formed but mathematically rejected.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cyltor_core::equivalence::{Mode, DEFAULT_DEPTH};
use cyltor_core::mahler::{DEFAULT_SAMPLES, DEFAULT_SEED};
use cyltor_core::SurfaceSignature;

use crate::report::{Failure, Report};

#[derive(Debug, Parser)]
#[command(name = "cyltor", version, about = "Torsion invariants of homology cylinders")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Surface as `g,n`; required wherever polynomials are parsed.
    #[arg(long, global = true, value_parser = parse_surface)]
    pub surface: Option<SurfaceSignature>,
    /// Factor comparison: `sim` (up to Aut*(H) and units) or `unit`.
    #[arg(long, global = true, default_value = "sim")]
    pub mode: Mode,
    /// Word length bound for the Aut*(H) search.
    #[arg(long, global = true, env = "CYLTOR_DEPTH", default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Torus sample count for Mahler estimates.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducible factorization of p (or p/den).
    Factor(Fraction),
    /// Psi_lambda(p) for a self-dual irreducible lambda.
    Psi {
        #[command(flatten)]
        p: Fraction,
        #[arg(long)]
        lambda: String,
    },
    /// Theta_mu(p) for an irreducible mu that is not self-dual.
    Theta {
        #[command(flatten)]
        p: Fraction,
        #[arg(long)]
        mu: String,
    },
    /// All nonzero Psi and Theta components of p.
    Profile(Fraction),
    /// Membership of p in the norm subgroup {±h·q·q̄}.
    NormTest(Fraction),
    /// Mahler measure of p.
    Mahler {
        #[arg(long)]
        p: String,
        /// `auto`, `roots`, or `torus-qmc`.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Tries to prove p and q inequivalent, or to find φ with p ≐ φ(q).
    Distinguish {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Torsion of a handlebody presentation from its attaching words.
    Fox {
        #[arg(long)]
        rank: usize,
        /// Comma-separated words, e.g. "a^2(ab^-1)^3, b(ab^-1)^3".
        #[arg(long)]
        words: String,
    },
    /// The pretzel cylinder M(r,s,t) over the pair of pants.
    #[command(allow_negative_numbers = true)]
    Pretzel { r: i64, s: i64, t: i64 },
    /// Triples (x+d, x+e, -x) with d·e = 1 + x² for an odd prime x.
    PretzelSearch { x: i64 },
    /// The cylinder M(a) over the surface of genus g with two boundary components.
    Ma {
        a: usize,
        #[arg(long, default_value_t = 1)]
        genus: usize,
    },
    /// Stacks two cylinders given as descriptor files.
    Stack { first: String, second: String },
    /// Inverse of a cylinder in the semidirect product.
    Invert { cylinder: String },
    /// Glues boundary component c of the first cylinder to c' of the second.
    Glue {
        first: String,
        second: String,
        #[arg(long)]
        c: usize,
        #[arg(long = "cprime")]
        c_prime: usize,
    },
    /// Ties a knot with the given Alexander polynomial along a curve.
    TieKnot {
        cylinder: String,
        #[arg(long)]
        alexander: String,
        /// Curve class as a monomial, e.g. "x1*y1".
        #[arg(long)]
        at: String,
    },
    /// The mapping cylinder (φ, 1) of a matrix in Aut*(H).
    MappingClass {
        /// Matrix rows as JSON, e.g. "[[1,0,0],[0,1,1],[0,0,1]]".
        #[arg(long)]
        phi: String,
    },
}

#[derive(Debug, Args)]
pub struct Fraction {
    #[arg(long)]
    pub p: String,
    /// Optional denominator.
    #[arg(long)]
    pub den: Option<String>,
}

fn parse_surface(s: &str) -> Result<SurfaceSignature, String> {
    let (g, n) = s
        .split_once(',')
        .ok_or_else(|| format!("expected g,n, got `{s}`"))?;
    let g = g.trim().parse().map_err(|_| format!("bad genus `{g}`"))?;
    let n = n.trim().parse().map_err(|_| format!("bad boundary count `{n}`"))?;
    Ok(SurfaceSignature::new(g, n))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report::new(&argv, &cli.global);
    let outcome = commands::run(&cli, &mut report);
    let code = match outcome {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            let code = failure.exit_code();
            report.fail(failure);
            code
        }
    };
    println!("{}", report.render(cli.global.pretty));
    ExitCode::from(code)
}

pub(crate) type CliResult<T> = Result<T, Failure>;
