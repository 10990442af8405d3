//! Batch benchmark front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 capacity/size guard
//! exceeded, 4 runtime failure.

use clap::{Args, Parser, Subcommand};
use qevolab::bench::{
    config_from_value, load_config, run_bench, run_oracle, summary_json, write_outputs,
    AlgorithmId, ConfigOverrides, ProblemSpec,
};
use qevolab::Error;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qevolab",
    version,
    about = "Deterministic benchmarks for quantum-inspired heuristics and Grover-based search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark configuration (flags override config keys)
    Run(RunArgs),
    /// Run a configuration once per value of a swept parameter
    Sweep(SweepArgs),
    /// Print the exact oracle value for a problem file
    Oracle {
        #[arg(long)]
        problem: PathBuf,
    },
    /// List algorithm ids and the problem kinds they accept
    List,
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algorithm id (qiga|gqa|qea|qse|qiea|rqga|grovermax)
    #[arg(long)]
    algo: Option<String>,
    /// Problem instance file
    #[arg(long)]
    problem: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    generations: Option<usize>,
    /// Output file (trace CSV or full JSON document, per --format)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Success means a relative gap to the oracle of at most 1 - this
    #[arg(long)]
    success_threshold: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON configuration file
    #[arg(long)]
    config: PathBuf,
    /// Swept parameter as key=v1,v2,...
    #[arg(long)]
    param: String,
    /// Output file for the JSON array of summaries (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) => 2,
                Error::Capacity(_) | Error::Size(_) => 3,
                _ => 4,
            })
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(args) => {
            let overrides = ConfigOverrides {
                algorithm: args.algo,
                problem: args.problem,
                seed: args.seed,
                trials: args.trials,
                generations: args.generations,
                output: args.out,
                format: args.format,
                success_threshold: args.success_threshold,
            };
            let config = load_config(args.config.as_deref(), &overrides)?;
            let outcome = run_bench(&config)?;
            write_outputs(&outcome, &config)?;
            println!("{}", summary_json(&outcome.summary));
            Ok(())
        }
        Command::Sweep(args) => {
            let (key, values) = parse_sweep(&args.param)?;
            let text = std::fs::read_to_string(&args.config).map_err(|e| {
                Error::Config(format!("cannot read config {}: {e}", args.config.display()))
            })?;
            let base: Value = serde_json::from_str(&text).map_err(|e| {
                Error::Config(format!("config {} is malformed: {e}", args.config.display()))
            })?;
            let mut results = Vec::new();
            for value in values {
                let mut patched = base.clone();
                patched
                    .as_object_mut()
                    .ok_or_else(|| Error::Config("config must be a JSON object".into()))?
                    .entry("params")
                    .or_insert_with(|| json!({}))
                    .as_object_mut()
                    .ok_or_else(|| Error::Config("params must be a JSON object".into()))?
                    .insert(key.clone(), value.clone());
                // sweeps never write per-value trace files
                let mut config = config_from_value(patched, &ConfigOverrides::default())?;
                config.output = None;
                let outcome = run_bench(&config)?;
                results.push(json!({
                    "param": key,
                    "value": value,
                    "summary": outcome.summary,
                }));
            }
            let rendered = serde_json::to_string_pretty(&Value::Array(results))
                .expect("summaries serialize");
            match args.out {
                Some(path) => std::fs::write(path, rendered)?,
                None => println!("{rendered}"),
            }
            Ok(())
        }
        Command::Oracle { problem } => {
            let spec = ProblemSpec::load(&problem)?;
            let report = run_oracle(&spec)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(())
        }
        Command::List => {
            for id in AlgorithmId::all() {
                let kinds: Vec<&str> = id
                    .compatible_kinds()
                    .iter()
                    .map(|k| k.as_str())
                    .collect();
                println!("{}: {}", id.as_str(), kinds.join(", "));
            }
            Ok(())
        }
    }
}

/// Parses `key=v1,v2,...`; values become JSON scalars (number, bool or
/// string, first parse that fits).
fn parse_sweep(spec: &str) -> Result<(String, Vec<Value>), Error> {
    let (key, list) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("sweep spec {spec:?} is not key=v1,v2,...")))?;
    if key.is_empty() || list.is_empty() {
        return Err(Error::Config(format!(
            "sweep spec {spec:?} is not key=v1,v2,..."
        )));
    }
    let values = list
        .split(',')
        .map(|raw| {
            if let Ok(i) = raw.parse::<i64>() {
                json!(i)
            } else if let Ok(f) = raw.parse::<f64>() {
                json!(f)
            } else if let Ok(b) = raw.parse::<bool>() {
                json!(b)
            } else {
                json!(raw)
            }
        })
        .collect();
    Ok((key.to_string(), values))
}
