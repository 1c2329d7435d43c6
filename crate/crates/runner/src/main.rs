use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use skewbench::cli::{Cli, Command, RunArgs, SEED_ENV};
use skewbench::presets::PRESETS;
use skewbench::{run_experiment, Result};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Presets => {
            for p in &PRESETS {
                println!("{:<22} {}", p.name, p.description);
            }
            Ok(true)
        }
        Command::Run(args) => run(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every cell succeeded.
fn run(args: &RunArgs) -> Result<bool> {
    let env_seed = std::env::var(SEED_ENV).ok();
    let config = args.to_config(env_seed.as_deref())?;
    let out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(out);
    let total = config.cells();
    let mut done = 0;
    let mut write_error = None;
    eprintln!("{}: {} cells, config {}", config.name, total, config.hash());
    let rows = run_experiment(&config, |row| {
        done += 1;
        eprintln!(
            "[{done}/{total}] {} threads={} repeat={} {:.0} ops/s {}",
            row.structure,
            row.threads,
            row.repeat,
            row.throughput,
            if row.is_ok() { "ok".to_string() } else { format!("FAILED: {}", row.error) }
        );
        if write_error.is_none() {
            if let Err(e) = writer.serialize(row).and_then(|_| Ok(writer.flush()?)) {
                write_error = Some(e);
            }
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    Ok(rows.iter().all(|r| r.is_ok()))
}
