//! `codim` — series expansion, oracle cross-checks, coefficientwise bound
//! verification, and growth diagnostics on the command line.
//!
//! Every invocation emits exactly one machine-readable record (JSON by
//! default, CSV with `--format csv`) and exits 0 on ok, 1 on violation,
//! 2 on error. There is no configuration beyond the flags: identical
//! invocations produce byte-identical output.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "codim", version, about = "Exact codimension series, word oracles, and growth diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the record to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the complexity function of a catalog variety.
    Series {
        /// Variety name: assoc | comm | lie | poisson | nilp:<s> | metab |
        /// cbm:char2 | cbm:char0 | w:<s> | tower-q:<m> | tower-r:<m> |
        /// indecomp-q:<m> | indecomp-r:<m>.
        #[arg(long)]
        variety: String,
        /// Truncation order N (coefficients a_0..a_N).
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Cross-check a brute-force word count against the catalog series.
    Oracle {
        #[arg(long, value_enum)]
        check: OracleCheck,
        /// Tower index m (required for qm, rm, tilde-q, tilde-r).
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n_max: usize,
        /// Override the brute-force degree cap.
        #[arg(long)]
        force: bool,
    },
    /// Verify a coefficientwise bound lhs ⪯ rhs.
    Bound {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Growth diagnostics in log space.
    Asym {
        #[command(subcommand)]
        diagnostic: AsymCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleCheck {
    /// All m-Lie indecomposable words vs indecomp-q:<m>.
    Qm,
    /// Regular m-Lie indecomposable words vs indecomp-r:<m>.
    Rm,
    /// Relaxed tower products vs tower-q:<m>.
    TildeQ,
    /// Relaxed tower products vs tower-r:<m>.
    TildeR,
    /// Kuzmin elements vs n(n-3)/2.
    Kuzmin,
    /// Free-Poisson multilinear basis vs n!.
    PoissonBasis,
    /// Centre-by-metabelian codimensions vs oracle-built counts.
    Cbm,
}

impl OracleCheck {
    fn name(self) -> &'static str {
        match self {
            OracleCheck::Qm => "qm",
            OracleCheck::Rm => "rm",
            OracleCheck::TildeQ => "tilde-q",
            OracleCheck::TildeR => "tilde-r",
            OracleCheck::Kuzmin => "kuzmin",
            OracleCheck::PoissonBasis => "poisson-basis",
            OracleCheck::Cbm => "cbm",
        }
    }
}

#[derive(Subcommand)]
pub enum AsymCommand {
    /// ln of the subfactorial scale function Ψ^q_α(n).
    Psi {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: u64,
    },
    /// Coefficient diagnostic s_n = a_n^{λ/n}·ln^{(q-2)} n over a window.
    Sher {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Closed-form tower ratio ln^{(m-1)}(q̃_m(r))/r.
    Tower {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: f64,
    },
    /// Log-space margins of a codimension sequence against the scale
    /// n!/(ln^{(m-2)} n)^n.
    UpperRatio {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let record = match &cli.command {
        Command::Series { variety, order } => commands::run_series(variety, *order),
        Command::Oracle { check, m, n_max, force } => {
            commands::run_oracle(*check, *m, *n_max, *force)
        }
        Command::Bound { lhs, rhs, order } => commands::run_bound(lhs, rhs, *order),
        Command::Asym { diagnostic } => commands::run_asym(diagnostic),
    };
    if let Err(io_error) = record.write_to(cli.format, cli.output.as_deref()) {
        eprintln!("failed to write output: {io_error}");
        return ExitCode::from(2);
    }
    ExitCode::from(record.status.exit_code())
}
