//! `goppadist`: build Goppa and BCH codes, run the support-ratio criterion,
//! and reproduce parameter tables with exact verification.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goppa_core::linalg::DEFAULT_BUDGET;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "goppadist", version, about = "Exact minimum-distance tools for Goppa and BCH codes")]
pub struct Cli {
    /// Emit the report as JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Codeword enumeration budget (overrides GOPPA_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Embed parity-check and generator matrices in the report.
    #[arg(long, global = true)]
    pub emit_matrices: bool,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite field towers.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Polynomials over a field.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Goppa codes.
    #[command(subcommand)]
    Goppa(GoppaCmd),
    /// Primitive narrow-sense BCH codes.
    #[command(subcommand)]
    Bch(BchCmd),
    /// Support-ratio criterion and locator certificates.
    #[command(subcommand)]
    Criterion(CriterionCmd),
    /// Code families and parameter tables.
    #[command(subcommand)]
    Family(FamilyCmd),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArg {
    /// Field spec `p^s:m[:modulus=c0,c1,...]`.
    #[arg(long)]
    pub field: String,
}

#[derive(Subcommand, Debug)]
pub enum FieldCmd {
    /// Modulus, primitive element and basis of a field tower.
    Info {
        #[command(flatten)]
        field: FieldArg,
        /// List every element with its logarithm.
        #[arg(long)]
        elements: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Irreducibility over the prime field.
    Irreducible {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
    },
    /// Roots in the top field.
    Roots {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    Exhaustive,
    Witness,
}

#[derive(Subcommand, Debug)]
pub enum GoppaCmd {
    /// Build Γ_q(L, G) and compute its parameters.
    Build {
        #[command(flatten)]
        field: FieldArg,
        /// Goppa polynomial G.
        #[arg(long)]
        poly: String,
        /// `full`, or support elements separated by `;`.
        #[arg(long, default_value = "full")]
        support: String,
    },
    /// Check Γ(L, N(g)) = Γ(L, N(g)/g).
    WildCheck {
        #[command(flatten)]
        field: FieldArg,
        /// The polynomial g.
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "full")]
        support: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BchCmd {
    /// Build C(q, q^m - 1, δ, 1).
    Build {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: usize,
    },
    /// Map Goppa support indices (support α^i) to BCH coordinates.
    MapWord {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        /// Comma-separated Goppa coordinates.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
    },
    /// Cyclotomic cosets of q modulo n.
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CriterionCmd {
    /// Decide whether t+1 support points carry a weight-(t+1) codeword.
    Check {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
        /// t+1 elements separated by `;`.
        #[arg(long)]
        support: String,
    },
    /// Certificate for a locator polynomial M.
    Mpoly {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
    },
    /// Sample locator tuples and check R_j = -S_j.
    Locators {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyParams {
    /// Field spec; alternatively give --q and --m.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub delta: Option<usize>,
    /// Constant A for xt_plus_A.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Polynomial g for the wild family.
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Build one family member and certify its distance.
    Run {
        /// wild, xt_plus_A, fractional, binary_9_15, pary_2p2, norm_bch, qt_plus_1
        tag: String,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, value_enum, default_value = "witness")]
        verify_distance: Verify,
    },
    Table2(TableArgs),
    Table3(TableArgs),
    Table4(TableArgs),
    Table5(TableArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// Only rows with n at most this.
    #[arg(long)]
    pub max_length: Option<usize>,
}

pub struct Options {
    pub json: bool,
    pub budget: u64,
    pub seed: u64,
    pub emit_matrices: bool,
    pub timing: bool,
}

fn budget_from(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("GOPPA_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| format!("GOPPA_BUDGET={v:?} is not an integer")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let budget = match budget_from(cli.budget) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let opts = Options { json: cli.json, budget, seed: cli.seed, emit_matrices: cli.emit_matrices, timing: cli.timing };
    let command = argv[1..].join(" ");
    let start = std::time::Instant::now();
    match commands::run(&cli.command, command, &opts) {
        Ok(mut report) => {
            if opts.timing {
                report.put("timing_ms", start.elapsed().as_millis() as u64);
            }
            emit(&report, &opts);
            ExitCode::from(report.status.exit_code())
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Verification(report)) => {
            emit(&report, &opts);
            ExitCode::from(1)
        }
    }
}

fn emit(report: &Report, opts: &Options) {
    if opts.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report serializes"));
    } else {
        print!("{}", report.to_text());
    }
}
