use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use ergolab::{execute, validate, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "ergolab",
    version,
    about = "Seeded experiments on special flows and cylindrical cascades"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write report.json plus CSV traces.
    Run {
        config: PathBuf,
        /// Overrides the configured output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Overrides the sampling seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List every violated constraint of a configuration.
    Validate { config: PathBuf },
}

fn load(path: &PathBuf) -> anyhow::Result<ExperimentConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ExperimentConfig::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> anyhow::Result<ExitCode> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            output_dir,
            seed,
        } => {
            let mut cfg = load(&config)?;
            if let Some(seed) = seed {
                match cfg.sampling.as_mut() {
                    Some(s) => s.seed = seed,
                    None => {
                        anyhow::bail!("--seed given but the configuration has no sampling block")
                    }
                }
            }
            if let Some(dir) = output_dir {
                cfg.output = Some(dir);
            }
            let dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from("."));
            let report = execute(&cfg, Some(&dir))?;
            let s = &report.summary;
            println!(
                "{}: {}/{} samples succeeded ({}); report in {}",
                serde_json::to_value(cfg.experiment)?
                    .as_str()
                    .unwrap_or_default(),
                s.successes,
                s.samples,
                s.success_rule,
                dir.join("report.json").display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { config } => {
            let cfg = load(&config)?;
            let v = validate(&cfg);
            for w in &v.warnings {
                println!("warning: {w}");
            }
            if v.is_valid() {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                for m in &v.violations {
                    println!("violation: {m}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
