//! `bloch`: dispersion polynomials, Q-expansions, irreducibility analysis,
//! numeric verification and exports for periodic graph operators.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Common;

/// Exit codes: 0 success, 1 failed check or I/O error, 2 invalid input,
/// 3 size cap exceeded, 10 inconclusive analysis.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Self { code: 2, message }
    }
    pub fn invalid(message: String) -> Self {
        Self { code: 2, message }
    }
    pub fn io(message: String) -> Self {
        Self { code: 1, message }
    }
    pub fn check(message: String) -> Self {
        Self { code: 1, message }
    }
}

impl From<bloch_core::Error> for Failure {
    fn from(e: bloch_core::Error) -> Self {
        let code = match e {
            bloch_core::Error::SizeCap { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "bloch", version, about = "Dispersion polynomials and irreducibility certificates for periodic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print D(z, λ), its support and Newton polytope.
    Dispersion(Common),
    /// Build the Q-expansion and print D_Q.
    Expand(Common),
    /// Decide (ir)reducibility of D_Q and write a certificate.
    Analyze(Common),
    /// Check numeric identities: product formula, Hermitian symbols, dilation.
    Verify(Common),
    /// Write the Newton polytope (JSON, OFF) and a spectrum CSV.
    Export(Common),
    /// Replay a certificate file.
    Replay {
        path: std::path::PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dispersion(c) => commands::dispersion(c),
        Command::Expand(c) => commands::expand(c),
        Command::Analyze(c) => commands::analyze(c),
        Command::Verify(c) => commands::verify(c),
        Command::Export(c) => commands::export(c),
        Command::Replay { path } => commands::replay(path),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
