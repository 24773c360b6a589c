mod commands;
mod report;
mod scenario;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::Settings;
use report::Report;

#[derive(Parser)]
#[command(
    name = "dqgm",
    about = "Scenario-driven calculator for multipliers of discrete quantum groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a JSON scenario file
    #[arg(long)]
    scenario: std::path::PathBuf,
    /// Maximum number of window expansions for scanning commands
    #[arg(long, default_value_t = 4)]
    window_budget: usize,
    /// Consecutive stable expansions required before a scan stabilizes
    #[arg(long, default_value_t = 2)]
    patience: usize,
    /// Reconstruction tolerance for factorizations
    #[arg(long, default_value_t = 1e-7)]
    tolerance: f64,
    /// Seed for randomized verification samples
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the two multiplicative-structure maps on a window
    VerifyAxioms(CommonArgs),
    /// Check left invariance of the Haar functional on sample elements
    VerifyInvariance(CommonArgs),
    /// Convolve two reduced functionals
    Convolve(CommonArgs),
    /// Solve for the counit of convolution, if one exists
    DualUnit(CommonArgs),
    /// Apply a slice map to a tensor multiplier
    Slice(CommonArgs),
    /// Scan the slice-space dimension of a tensor multiplier
    SliceDim(CommonArgs),
    /// Factor a tensor multiplier into finitely many simple tensors
    Factor(CommonArgs),
    /// Decide (window-relatively) whether a multiplier is almost periodic
    AlmostPeriodic(CommonArgs),
    /// Check nondegeneracy of the algebra product on a window
    CheckNondegenerate(CommonArgs),
}

impl Command {
    fn split(&self) -> (&'static str, &CommonArgs) {
        match self {
            Command::VerifyAxioms(a) => ("verify-axioms", a),
            Command::VerifyInvariance(a) => ("verify-invariance", a),
            Command::Convolve(a) => ("convolve", a),
            Command::DualUnit(a) => ("dual-unit", a),
            Command::Slice(a) => ("slice", a),
            Command::SliceDim(a) => ("slice-dim", a),
            Command::Factor(a) => ("factor", a),
            Command::AlmostPeriodic(a) => ("almost-periodic", a),
            Command::CheckNondegenerate(a) => ("check-nondegenerate", a),
        }
    }
}

fn emit(report: &Report, out: Option<&std::path::Path>) -> i32 {
    let text = serde_json::to_string_pretty(report).expect("report serialization");
    println!("{text}");
    if let Some(path) = out {
        let write = std::fs::File::create(path)
            .and_then(|mut f| writeln!(f, "{text}"));
        if let Err(e) = write {
            eprintln!("failed to write report to {}: {e}", path.display());
            return commands::EXIT_ERROR;
        }
    }
    commands::EXIT_OK
}

fn main() {
    let cli = Cli::parse();
    let (name, args) = cli.command.split();
    let started = Instant::now();

    let text = match std::fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => {
            let mut r = Report::error(name, "unknown", format!(
                "cannot read scenario {}: {e}",
                args.scenario.display()
            ));
            r.timing_ms = started.elapsed().as_millis() as u64;
            emit(&r, args.out.as_deref());
            std::process::exit(commands::EXIT_ERROR);
        }
    };

    let scenario = match scenario::load(&text) {
        Ok(s) => s,
        Err(e) => {
            let mut r = Report::error(name, "unknown", e.to_string());
            r.timing_ms = started.elapsed().as_millis() as u64;
            emit(&r, args.out.as_deref());
            std::process::exit(commands::EXIT_ERROR);
        }
    };

    let settings = Settings {
        window_budget: args.window_budget,
        patience: args.patience,
        tolerance: args.tolerance,
        seed: args.seed,
    };
    let (mut report, code) = commands::run(name, &scenario, &settings);
    report.timing_ms = started.elapsed().as_millis() as u64;
    let emit_code = emit(&report, args.out.as_deref());
    std::process::exit(if code == commands::EXIT_OK { emit_code } else { code });
}
