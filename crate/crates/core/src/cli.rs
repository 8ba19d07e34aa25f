//! Command-line harness.
//!
//! Exit codes: 0 when every line passes, 1 when any line fails or stays
//! inconclusive, 2 for invalid input or a usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::moduli::{
    betti_space, construct_space, invariants_space, predict_space, verify_flatness, verify_space, ModuliSpec, Space,
    Windows,
};
use crate::par::Execution;
use crate::polyalg::CoefficientField;
use crate::report::VerificationReport;

#[derive(Parser, Debug)]
#[command(name = "nilmoduli", version, about = "Verify moduli of strongly nilpotent 2x2 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the ideal and check its presentation.
    Construct(Opts),
    /// Dimension, Hilbert series and multiplicity.
    Invariants(Opts),
    /// Graded Betti numbers by Koszul homology.
    Betti(Opts),
    /// Betti table and singularity verdicts predicted from bundles on P^1.
    Predict(Opts),
    /// Run the full pipeline for a space.
    Verify(Opts),
    /// Compare the fibers over Q and F_p (space C, odd prime p).
    Flatness(Opts),
    /// Write the generators in plain text.
    Export(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, value_parser = parse_space)]
    space: Space,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long)]
    max_hom: Option<usize>,
    #[arg(long)]
    max_deg: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the generators here (construct, export).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Disable the thread pool.
    #[arg(long)]
    sequential: bool,
}

fn parse_space(s: &str) -> std::result::Result<Space, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Opts {
    fn spec(&self) -> Result<ModuliSpec> {
        ModuliSpec::new(self.space, self.r, CoefficientField::new(self.characteristic)?)
    }

    fn windows(&self) -> Windows {
        Windows { max_hom: self.max_hom, max_deg: self.max_deg }
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

/// Run with `argv` (including the program name), printing to stdout.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_to(argv, &mut lock)
}

pub fn run_to<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let (report, opts, text) = match command {
        Command::Construct(o) => {
            let (report, text) = construct_space(o.spec()?, "construct")?;
            (report, o, Some(text))
        }
        Command::Export(o) => {
            let (report, text) = construct_space(o.spec()?, "export")?;
            (report, o, Some(text))
        }
        Command::Invariants(o) => (invariants_space(o.spec()?, o.exec())?, o, None),
        Command::Betti(o) => (betti_space(o.spec()?, o.windows(), o.exec())?, o, None),
        Command::Predict(o) => {
            o.spec()?;
            (predict_space(o.space, o.r)?, o, None)
        }
        Command::Verify(o) => (verify_space(o.spec()?, o.windows(), o.exec())?, o, None),
        Command::Flatness(o) => (verify_flatness(o.space, o.r, o.characteristic, o.exec())?.to_report(), o, None),
    };
    emit(&report, &opts, text.as_deref(), out)?;
    Ok(report.exit_code())
}

fn emit(report: &VerificationReport, opts: &Opts, text: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("output: {e}"));
    if let Some(text) = text {
        match &opts.out {
            Some(path) => std::fs::write(path, text).map_err(io)?,
            None => out.write_all(text.as_bytes()).map_err(io)?,
        }
    }
    write!(out, "{report}").map_err(io)?;
    if let Some(path) = &opts.json {
        std::fs::write(path, report.to_json()).map_err(io)?;
    }
    Ok(())
}
