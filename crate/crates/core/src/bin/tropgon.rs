use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tropgon::cli;

#[derive(Parser)]
#[command(name = "tropgon", version, about = "Divisors, linear systems and gonality witnesses on tropical curves")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate every object in the files.
    Validate { files: Vec<PathBuf> },
    /// Print the principal divisor of a function.
    Div {
        files: Vec<PathBuf>,
        #[arg(long)]
        func: String,
    },
    /// Build and certify a harmonic morphism witness from a system.
    Construct {
        files: Vec<PathBuf>,
        #[arg(long)]
        system: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
    /// Check a witness bundle.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, default_value = "pi")]
        pi: String,
        #[arg(long, default_value = "phi")]
        phi: String,
    },
    /// Recover a linear system from a witness bundle.
    FromWitness {
        files: Vec<PathBuf>,
        #[arg(long, default_value = "pi")]
        pi: String,
        #[arg(long, default_value = "phi")]
        phi: String,
        /// Point of the target tree; defaults to the image of the first vertex.
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Go around system -> witness -> system, or witness -> system -> witness.
    Roundtrip {
        files: Vec<PathBuf>,
        #[arg(long)]
        system: Option<String>,
        #[arg(long, default_value = "pi")]
        pi: String,
        #[arg(long, default_value = "phi")]
        phi: String,
    },
}

fn main() -> ExitCode {
    let outcome = match Args::parse().cmd {
        Cmd::Validate { files } => cli::validate(&files),
        Cmd::Div { files, func } => cli::div(&files, &func),
        Cmd::Construct { files, system, out, certificate, quiet } => {
            cli::construct(&cli::ConstructArgs { paths: files, system, out, certificate, quiet })
        }
        Cmd::Verify { files, pi, phi } => cli::verify(&files, &pi, &phi),
        Cmd::FromWitness { files, pi, phi, point, out } => {
            cli::from_witness(&cli::FromWitnessArgs { paths: files, pi, phi, point, out })
        }
        Cmd::Roundtrip { files, system, pi, phi } => cli::roundtrip(&cli::RoundtripArgs { paths: files, system, pi, phi }),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
