//! Seeded multi-trial execution, oracle computation, summary statistics
//! and result emission.
//!
//! Trial `t` runs with seed `config.seed + t`, so trials are individually
//! reproducible. Records are emitted in trial order and a fixed
//! configuration always produces byte-identical CSV and JSON output.
//!
//! All fitness values follow the crate-wide maximization convention:
//! TSP entries (including the oracle value) are negated tour lengths.

use super::config::{AlgoParams, BenchConfig, GroverRunParams, OutputFormat, ProblemSpec};
use crate::error::{Error, Result};
use crate::gqa::run_gqa;
use crate::grover::{find_maximum, rqga, GroverBudget};
use crate::problems::{
    f6, knapsack_oracle_dp, tsp_oracle_bruteforce, KnapsackProblem, KnapsackRegisterProblem,
};
use crate::qea::run_qea;
use crate::qiea::run_qiea;
use crate::qiga::run_qiga;
use crate::qse::{run_qse, run_qse_tsp};
use crate::rng::Rng;
use crate::run::{GenerationStats, Individual, RunRecord};
use serde::Serialize;
use std::fmt::Write as _;

/// Exact CSV header of trace files.
pub const CSV_HEADER: &str =
    "schema_version,algo,problem,trial,seed,generation,best_fitness,mean_fitness,evals";

/// Current schema version of CSV traces and summary JSON.
pub const SCHEMA_VERSION: u32 = 1;

/// Exact optimum of a problem, with the method that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// Optimum in maximization-fitness units (negated length for TSP).
    pub value: f64,
    pub method: &'static str,
}

/// Computes the exact optimum for a problem within the desk-scale
/// guards (knapsack DP, TSP brute force with n <= 10, F6 analytic,
/// table scan).
pub fn run_oracle(problem: &ProblemSpec) -> Result<OracleReport> {
    match problem {
        ProblemSpec::Knapsack(inst) => Ok(OracleReport {
            value: knapsack_oracle_dp(inst)? as f64,
            method: "dp",
        }),
        ProblemSpec::Tsp(inst) => {
            let (_, length) = tsp_oracle_bruteforce(inst)?;
            Ok(OracleReport {
                value: -length,
                method: "bruteforce",
            })
        }
        // sin(0) = 0 forces the printed formula to 0.5 + 0.5 at the origin
        ProblemSpec::F6(_) => {
            debug_assert_eq!(f6(0.0, 0.0), 1.0);
            Ok(OracleReport {
                value: 1.0,
                method: "analytic",
            })
        }
        ProblemSpec::Table(table) => Ok(OracleReport {
            value: *table.iter().max().expect("validated nonempty") as f64,
            method: "scan",
        }),
    }
}

/// Aggregate statistics over the trials of one benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub schema_version: u32,
    pub algo: String,
    pub problem: String,
    pub trials: u64,
    /// Best final fitness over all trials.
    pub best: f64,
    /// Mean of the per-trial final fitness values.
    pub mean: f64,
    /// Population standard deviation of the per-trial final fitness.
    pub std: f64,
    /// Fraction of trials within `1 - success_threshold` of the oracle;
    /// null when no oracle is available for the problem size.
    pub success_rate: Option<f64>,
    pub oracle_value: Option<f64>,
    pub oracle_method: Option<&'static str>,
    pub total_evals: u64,
    /// Total Grover iterations over all trials; null for the classical
    /// algorithms.
    pub grover_iterations: Option<u64>,
}

/// Everything a benchmark run produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchOutcome {
    pub schema_version: u32,
    pub summary: BenchSummary,
    pub records: Vec<RunRecord>,
}

struct TrialResult {
    record: RunRecord,
    grover_iterations: Option<u64>,
}

fn attach_trial(error: Error, trial: u64) -> Error {
    let tag = |msg: String| format!("trial {trial}: {msg}");
    match error {
        Error::InvalidArgument(m) => Error::InvalidArgument(tag(m)),
        Error::Config(m) => Error::Config(tag(m)),
        Error::Capacity(m) => Error::Capacity(tag(m)),
        Error::Size(m) => Error::Size(tag(m)),
        Error::Range(m) => Error::Range(tag(m)),
        Error::State(m) => Error::State(tag(m)),
        Error::Domain(m) => Error::Domain(tag(m)),
        Error::Io(e) => Error::Io(e),
    }
}

fn grover_budget(individual_bits: usize, params: &GroverRunParams) -> GroverBudget {
    let sqrt_dim = ((1u64 << individual_bits) as f64).sqrt();
    GroverBudget {
        growth: params.growth,
        max_total_iterations: (params.budget_multiplier * sqrt_dim).ceil() as u64,
        round_cap: sqrt_dim,
    }
}

fn bits_of_index(index: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (index >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Turns a threshold trace into per-generation rows. The evals column
/// carries the run's total oracle queries.
fn threshold_trace_record(
    seed: u64,
    thresholds: &[u64],
    oracle_queries: u64,
    best: Individual,
    best_fitness: f64,
) -> RunRecord {
    let trace = thresholds
        .iter()
        .enumerate()
        .map(|(i, &value)| GenerationStats {
            generation: i,
            best_fitness: value as f64,
            mean_fitness: value as f64,
            evaluations: oracle_queries,
        })
        .collect();
    RunRecord {
        seed,
        trace,
        best,
        best_fitness,
    }
}

fn run_trial(config: &BenchConfig, trial: u64) -> Result<TrialResult> {
    let seed = config.seed.wrapping_add(trial);
    let mut rng = Rng::new(seed);
    match (&config.params, &config.problem) {
        (AlgoParams::Qiga(p), ProblemSpec::Tsp(inst)) => Ok(TrialResult {
            record: run_qiga(inst, p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Gqa(p), ProblemSpec::Knapsack(inst)) => Ok(TrialResult {
            record: run_gqa(&KnapsackProblem::new(inst.clone()), p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Qea(p), ProblemSpec::Knapsack(inst)) => Ok(TrialResult {
            record: run_qea(&KnapsackProblem::new(inst.clone()), p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Qse(p), ProblemSpec::Knapsack(inst)) => Ok(TrialResult {
            record: run_qse(&KnapsackProblem::new(inst.clone()), p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Qse(p), ProblemSpec::Tsp(inst)) => Ok(TrialResult {
            record: run_qse_tsp(inst, p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Qiea(p), ProblemSpec::F6(domain)) => Ok(TrialResult {
            record: run_qiea(&crate::problems::F6Problem::new(*domain), p, &mut rng)?,
            grover_iterations: None,
        }),
        (AlgoParams::Grover(p), ProblemSpec::Knapsack(inst)) => {
            let problem = KnapsackRegisterProblem::new(inst.clone(), p.fitness_bits)?;
            let budget = grover_budget(inst.items(), p);
            let result = rqga(&problem, &budget, &mut rng)?;
            let best = Individual::bits(&problem.selection_of(result.best_individual));
            Ok(TrialResult {
                record: threshold_trace_record(
                    seed,
                    &result.threshold_trace,
                    result.stats.oracle_queries,
                    best,
                    result.best_fitness as f64,
                ),
                grover_iterations: Some(result.stats.grover_iterations),
            })
        }
        (AlgoParams::Grover(p), ProblemSpec::Table(table)) => {
            let len = table.len() as u64;
            let bits = (64 - (len - 1).leading_zeros() as usize).max(1);
            let budget = grover_budget(bits, p);
            let outcome = find_maximum(table, &budget, &mut rng)?;
            let best = Individual::Bits(bits_of_index(outcome.index, bits));
            Ok(TrialResult {
                record: threshold_trace_record(
                    seed,
                    &outcome.threshold_trace,
                    outcome.stats.oracle_queries,
                    best,
                    outcome.value as f64,
                ),
                grover_iterations: Some(outcome.stats.grover_iterations),
            })
        }
        _ => Err(Error::Config(format!(
            "algorithm {} cannot run on problem {}",
            config.algorithm.as_str(),
            config.problem.kind().as_str()
        ))),
    }
}

/// Runs every trial of a configuration and assembles the summary.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    let mut records = Vec::with_capacity(config.trials as usize);
    let mut grover_total: Option<u64> = None;
    for trial in 0..config.trials {
        let result = run_trial(config, trial).map_err(|e| attach_trial(e, trial))?;
        if let Some(iterations) = result.grover_iterations {
            *grover_total.get_or_insert(0) += iterations;
        }
        records.push(result.record);
    }

    let finals: Vec<f64> = records.iter().map(|r| r.best_fitness).collect();
    let best = finals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = finals.iter().sum::<f64>() / finals.len() as f64;
    let variance = finals.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / finals.len() as f64;

    // oracle guards (DP table size, brute-force city count) make the
    // oracle optional: report null rather than failing the run
    let oracle = match run_oracle(&config.problem) {
        Ok(report) => Some(report),
        Err(Error::Capacity(_)) | Err(Error::Size(_)) => None,
        Err(e) => return Err(e),
    };
    let success_rate = oracle.as_ref().map(|o| {
        let allowed_gap = (1.0 - config.success_threshold) * o.value.abs();
        let successes = finals.iter().filter(|&&f| o.value - f <= allowed_gap).count();
        successes as f64 / finals.len() as f64
    });

    let summary = BenchSummary {
        schema_version: SCHEMA_VERSION,
        algo: config.algorithm.as_str().to_string(),
        problem: config.problem.label(),
        trials: config.trials,
        best,
        mean,
        std: variance.sqrt(),
        success_rate,
        oracle_value: oracle.as_ref().map(|o| o.value),
        oracle_method: oracle.as_ref().map(|o| o.method),
        total_evals: records.iter().map(|r| r.total_evaluations()).sum(),
        grover_iterations: grover_total,
    };
    Ok(BenchOutcome {
        schema_version: SCHEMA_VERSION,
        summary,
        records,
    })
}

/// Renders the per-generation trace CSV (exact schema, trial order).
pub fn trace_csv(outcome: &BenchOutcome, config: &BenchConfig) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let algo = config.algorithm.as_str();
    let problem = config.problem.label();
    for (trial, record) in outcome.records.iter().enumerate() {
        for row in &record.trace {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                SCHEMA_VERSION,
                algo,
                problem,
                trial,
                record.seed,
                row.generation,
                row.best_fitness,
                row.mean_fitness,
                row.evaluations
            )
            .expect("writing to a string cannot fail");
        }
    }
    out
}

/// Renders the summary as pretty JSON (stable key order).
pub fn summary_json(summary: &BenchSummary) -> String {
    serde_json::to_string_pretty(summary).expect("summary serializes")
}

/// Renders the full outcome (summary plus all traces) as pretty JSON.
pub fn outcome_json(outcome: &BenchOutcome) -> String {
    serde_json::to_string_pretty(outcome).expect("outcome serializes")
}

/// Writes the configured output file, if any: the trace CSV under
/// `format = csv`, the full JSON document under `format = json`.
pub fn write_outputs(outcome: &BenchOutcome, config: &BenchConfig) -> Result<()> {
    if let Some(path) = &config.output {
        let payload = match config.format {
            OutputFormat::Csv => trace_csv(outcome, config),
            OutputFormat::Json => outcome_json(outcome),
        };
        std::fs::write(path, payload)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::config::{config_from_value, ConfigOverrides};
    use super::*;
    use serde_json::json;

    fn knapsack_config(trials: u64) -> BenchConfig {
        config_from_value(
            json!({
                "algorithm": "gqa",
                "problem": {"weights":[2,3,4],"profits":[3,4,5],"capacity":5},
                "seed": 1,
                "trials": trials,
                "generations": 50
            }),
            &ConfigOverrides::default(),
        )
        .unwrap()
    }

    #[test]
    fn oracle_reports() {
        let f6 = ProblemSpec::from_value(&json!({"lower":[-100.0,-100.0],"upper":[100.0,100.0]}))
            .unwrap();
        let report = run_oracle(&f6).unwrap();
        assert_eq!(report.value, 1.0);
        assert_eq!(report.method, "analytic");

        let knap =
            ProblemSpec::from_value(&json!({"weights":[2,3,4],"profits":[3,4,5],"capacity":5}))
                .unwrap();
        let report = run_oracle(&knap).unwrap();
        assert_eq!(report.value, 7.0);
        assert_eq!(report.method, "dp");

        let big_tsp = {
            let n = 11;
            let mut d = vec![vec![1.0; n]; n];
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = 0.0;
            }
            ProblemSpec::from_value(&json!({ "distances": d })).unwrap()
        };
        assert!(matches!(run_oracle(&big_tsp), Err(Error::Size(_))));
    }

    #[test]
    fn single_trial_summary_degenerates() {
        let outcome = run_bench(&knapsack_config(1)).unwrap();
        assert_eq!(outcome.summary.best, outcome.summary.mean);
        assert_eq!(outcome.summary.std, 0.0);
        assert_eq!(outcome.summary.trials, 1);
        assert_eq!(outcome.summary.grover_iterations, None);
    }

    #[test]
    fn reruns_are_byte_identical() {
        let config = knapsack_config(3);
        let a = run_bench(&config).unwrap();
        let b = run_bench(&config).unwrap();
        assert_eq!(trace_csv(&a, &config), trace_csv(&b, &config));
        assert_eq!(outcome_json(&a), outcome_json(&b));
        assert_eq!(summary_json(&a.summary), summary_json(&b.summary));
    }

    #[test]
    fn success_rate_recomputes_from_records() {
        let config = knapsack_config(30);
        let outcome = run_bench(&config).unwrap();
        let oracle = run_oracle(&config.problem).unwrap();
        let threshold = 0.95;
        let recomputed = outcome
            .records
            .iter()
            .filter(|r| oracle.value - r.best_fitness <= (1.0 - threshold) * oracle.value.abs())
            .count() as f64
            / outcome.records.len() as f64;
        assert_eq!(outcome.summary.success_rate, Some(recomputed));
    }

    #[test]
    fn csv_schema_and_contiguous_generations() {
        let config = knapsack_config(2);
        let outcome = run_bench(&config).unwrap();
        let csv = trace_csv(&outcome, &config);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let mut expected_gen = 0usize;
        let mut current_trial = 0u64;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 9);
            assert_eq!(fields[0], "1");
            assert_eq!(fields[1], "gqa");
            let trial: u64 = fields[3].parse().unwrap();
            if trial != current_trial {
                current_trial = trial;
                expected_gen = 0;
            }
            let generation: usize = fields[5].parse().unwrap();
            assert_eq!(generation, expected_gen);
            expected_gen += 1;
        }
    }

    #[test]
    fn summary_json_has_exact_keys_in_order() {
        let config = knapsack_config(1);
        let outcome = run_bench(&config).unwrap();
        let text = summary_json(&outcome.summary);
        let keys: Vec<&str> = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix('"'))
            .filter_map(|l| l.split('"').next())
            .collect();
        assert_eq!(
            keys,
            vec![
                "schema_version",
                "algo",
                "problem",
                "trials",
                "best",
                "mean",
                "std",
                "success_rate",
                "oracle_value",
                "oracle_method",
                "total_evals",
                "grover_iterations"
            ]
        );
    }

    #[test]
    fn rqga_trials_report_grover_iterations() {
        let config = config_from_value(
            json!({
                "algorithm": "rqga",
                "problem": {"weights":[2,3,4,5],"profits":[3,4,5,6],"capacity":7},
                "seed": 3,
                "trials": 2,
                "params": {"fitness_bits": 6}
            }),
            &ConfigOverrides::default(),
        )
        .unwrap();
        let outcome = run_bench(&config).unwrap();
        assert!(outcome.summary.grover_iterations.is_some());
        assert_eq!(outcome.summary.oracle_method, Some("dp"));
        // threshold traces strictly increase, and rows carry them
        for record in &outcome.records {
            assert!(record.best_is_monotone());
        }
    }

    #[test]
    fn trial_errors_carry_the_trial_index() {
        let err = attach_trial(Error::State("boom".into()), 4);
        assert!(err.to_string().contains("trial 4"));
    }
}
