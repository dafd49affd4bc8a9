use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use projtc::cli::{
    parse_spec, run, run_corpus, CorpusOutcome, Report, RunOptions, SpecFile, DEFAULT_MAX_DIM,
};

/// Bounds on the parametrized topological complexity of projective bundles.
#[derive(Parser)]
#[command(name = "projtc", version)]
struct Cli {
    /// Emit a flat JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse bundles whose fibre product has dimension above this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bound interval, running only the checks the file requests.
    Compute { file: PathBuf },
    /// Compute and run every applicable consistency check.
    Check { file: PathBuf },
    /// Run the bundled examples and compare against their expected values.
    Corpus,
}

fn load(path: &Path) -> Result<SpecFile, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })?;
    parse_spec(&text).map_err(|e| {
        eprintln!("{}:{e}", path.display());
        ExitCode::from(1)
    })
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn single(path: &Path, all_checks: bool, cli: &Cli) -> ExitCode {
    let file = match load(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let checks = if all_checks {
        RunOptions::all_checks(file.bundle.rank())
    } else {
        file.checks.clone()
    };
    let options = RunOptions {
        checks,
        max_dim: cli.max_dim,
    };
    match run(&file.bundle, &options) {
        Ok(report) => {
            emit(&report, cli.json);
            if report.failed_checks().next().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn corpus(cli: &Cli) -> ExitCode {
    let results = run_corpus(cli.max_dim);
    let mut worst = 0u8;
    let mut json = serde_json::Map::new();
    for (name, outcome) in &results {
        let verdict = if outcome.passed() { "ok" } else { "FAIL" };
        if cli.json {
            json.insert(name.to_string(), verdict.into());
        } else {
            match outcome {
                CorpusOutcome::Checked { report, mismatches } => {
                    println!("{verdict:<4} {name:<24} {}", report.interval);
                    for m in mismatches {
                        println!(
                            "       {}: expected {}, got {}",
                            m.key,
                            m.expected,
                            m.actual.as_deref().unwrap_or("(missing)")
                        );
                    }
                    for c in report.failed_checks() {
                        println!("       check {} failed", c.check);
                    }
                }
                CorpusOutcome::Parse(e) => println!("{verdict:<4} {name:<24} parse error {e}"),
                CorpusOutcome::Run(e) => println!("{verdict:<4} {name:<24} {e}"),
            }
        }
        let code = match outcome {
            _ if outcome.passed() => 0,
            CorpusOutcome::Parse(_) => 1,
            CorpusOutcome::Run(e) => e.exit_code() as u8,
            CorpusOutcome::Checked { .. } => 2,
        };
        worst = worst.max(code);
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("string keys")
        );
    } else {
        let passed = results.iter().filter(|(_, o)| o.passed()).count();
        println!("{passed}/{} examples passed", results.len());
    }
    ExitCode::from(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Compute { file } => single(file, false, &cli),
        Command::Check { file } => single(file, true, &cli),
        Command::Corpus => corpus(&cli),
    }
}
