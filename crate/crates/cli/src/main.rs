use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use koszulator::{emit_certificate, Certificate, parse_session_with, run_command, Overrides};

/// Exact homological algebra over graded quotient rings, with checkable
/// JSON certificates.
#[derive(Parser, Debug)]
#[command(name = "koszulator", version)]
struct Cli {
    /// One of: gb, resolve, homology, depth, cm-check, koszul-cover, reduce,
    /// realize, roundtrip, k0, hom-vanish, hom-compare, transport.
    command: String,
    /// Names of session objects the command acts on.
    args: Vec<String>,
    #[arg(long)]
    session: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget_degree: Option<i64>,
    #[arg(long)]
    budget_steps: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.session) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.session.display());
            return ExitCode::from(2);
        }
    };
    let ov = Overrides { seed: cli.seed, budget_degree: cli.budget_degree, budget_steps: cli.budget_steps };
    let session = match parse_session_with(&text, ov) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", cli.session.display());
            return ExitCode::from(2);
        }
    };
    let cert = match run_command(&session, &cli.command, &cli.args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(out) = &cli.out {
        if let Err(e) = emit_certificate(&cert, out) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = summary(&cert);
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn summary(cert: &Certificate) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{} {}", cert.command.join(" "), if cert.passed() { "ok" } else { "FAILED" })?;
    for (k, v) in &cert.verdicts {
        writeln!(out, "  {k}: {}", if *v { "yes" } else { "NO" })?;
    }
    writeln!(out, "  inputs {}", &cert.inputs_digest[..16])
}
