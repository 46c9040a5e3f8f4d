//! `zsindex`: index of zero-sum sequences over `Z_n`.
//!
//! Exit status: 0 on success, 1 when a counterexample or violation is found,
//! 2 on malformed input, bad flags or I/O failure.

mod commands;
mod output;

use clap::{Parser, Subcommand};

use commands::{AuditArgs, CertifyArgs, EnumerateArgs, FindArgs, SeqArgs, SweepArgs};

#[derive(Debug, Parser)]
#[command(
    name = "zsindex",
    version,
    about = "Index of zero-sum sequences over Z_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index, witness unit, zero-sum and minimality flags of a sequence.
    Index(SeqArgs),
    /// Run the certificate waterfall on a minimal zero-sum quadruple.
    Certify(CertifyArgs),
    /// The (e, c, b, a) normal form of a minimal zero-sum quadruple.
    Normalize(SeqArgs),
    /// The gcd pattern of a sequence.
    Classify(SeqArgs),
    /// List minimal zero-sum quadruples mod n.
    Enumerate(EnumerateArgs),
    /// Verify every minimal zero-sum quadruple over a range of moduli.
    Sweep(SweepArgs),
    /// Check the Ω intervals of A1 normal forms with a > 2e.
    Audit(AuditArgs),
    /// Least quadruple with index at least a threshold.
    FindCounterexample(FindArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Index(a) => commands::cmd_index(a),
        Command::Certify(a) => commands::cmd_certify(a),
        Command::Normalize(a) => commands::cmd_normalize(a),
        Command::Classify(a) => commands::cmd_classify(a),
        Command::Enumerate(a) => commands::cmd_enumerate(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Audit(a) => commands::cmd_audit(a),
        Command::FindCounterexample(a) => commands::cmd_find(a),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("zsindex: {e}");
            2
        }
    };
    std::process::exit(code);
}
