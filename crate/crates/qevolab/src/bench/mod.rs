//! Deterministic benchmark harness: configuration, seeded multi-trial
//! execution, oracle lookups and CSV/JSON emission.

mod config;
mod runner;

pub use config::{
    config_from_value, load_config, AlgoParams, AlgorithmId, BenchConfig, ConfigOverrides,
    GroverRunParams, OutputFormat, ProblemKind, ProblemSpec,
};
pub use runner::{
    outcome_json, run_bench, run_oracle, summary_json, trace_csv, write_outputs, BenchOutcome,
    BenchSummary, OracleReport, CSV_HEADER, SCHEMA_VERSION,
};
