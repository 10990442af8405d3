//! Benchmark configuration: algorithm ids, problem specs, per-algorithm
//! parameters, and loading with flag overrides.
//!
//! Configurations are JSON objects. The `problem` key holds either a
//! path to an instance file or the instance inline; the instance kind is
//! inferred from its keys (`weights`/`profits`/`capacity` for knapsack,
//! `distances` for TSP, `lower`/`upper` for an F6 domain, a bare integer
//! array for a maximum-finding table). Command-line flags override file
//! keys. Every key is validated; unknown algorithm ids, incompatible
//! problems and malformed files all fail with a config error naming the
//! offender.

use crate::error::{Error, Result};
use crate::gqa::GqaParams;
use crate::problems::{F6Domain, KnapsackInstance, TspInstance};
use crate::qea::QeaParams;
use crate::qiea::QieaParams;
use crate::qiga::QigaParams;
use crate::qse::QseParams;
use serde::Deserialize;
use serde_json::Value;
use std::path::{Path, PathBuf};

/// Algorithm identifiers exposed by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmId {
    Qiga,
    Gqa,
    Qea,
    Qse,
    Qiea,
    Rqga,
    Grovermax,
}

impl AlgorithmId {
    pub fn all() -> [AlgorithmId; 7] {
        use AlgorithmId::*;
        [Qiga, Gqa, Qea, Qse, Qiea, Rqga, Grovermax]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::Qiga => "qiga",
            AlgorithmId::Gqa => "gqa",
            AlgorithmId::Qea => "qea",
            AlgorithmId::Qse => "qse",
            AlgorithmId::Qiea => "qiea",
            AlgorithmId::Rqga => "rqga",
            AlgorithmId::Grovermax => "grovermax",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "qiga" => Ok(AlgorithmId::Qiga),
            "gqa" => Ok(AlgorithmId::Gqa),
            "qea" => Ok(AlgorithmId::Qea),
            "qse" => Ok(AlgorithmId::Qse),
            "qiea" => Ok(AlgorithmId::Qiea),
            "rqga" => Ok(AlgorithmId::Rqga),
            "grovermax" => Ok(AlgorithmId::Grovermax),
            other => Err(Error::Config(format!("unknown algorithm id {other:?}"))),
        }
    }

    /// Problem kinds this algorithm accepts.
    pub fn compatible_kinds(&self) -> &'static [ProblemKind] {
        match self {
            AlgorithmId::Qiga => &[ProblemKind::Tsp],
            AlgorithmId::Gqa | AlgorithmId::Qea => &[ProblemKind::Knapsack],
            AlgorithmId::Qse => &[ProblemKind::Knapsack, ProblemKind::Tsp],
            AlgorithmId::Qiea => &[ProblemKind::F6],
            AlgorithmId::Rqga => &[ProblemKind::Knapsack],
            AlgorithmId::Grovermax => &[ProblemKind::Table],
        }
    }
}

/// Problem families the harness understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Knapsack,
    Tsp,
    F6,
    Table,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::Tsp => "tsp",
            ProblemKind::F6 => "f6",
            ProblemKind::Table => "table",
        }
    }
}

/// A loaded, validated problem instance.
#[derive(Debug, Clone)]
pub enum ProblemSpec {
    Knapsack(KnapsackInstance),
    Tsp(TspInstance),
    F6(F6Domain),
    Table(Vec<u64>),
}

impl ProblemSpec {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemSpec::Knapsack(_) => ProblemKind::Knapsack,
            ProblemSpec::Tsp(_) => ProblemKind::Tsp,
            ProblemSpec::F6(_) => ProblemKind::F6,
            ProblemSpec::Table(_) => ProblemKind::Table,
        }
    }

    /// Short label used in result files.
    pub fn label(&self) -> String {
        match self {
            ProblemSpec::Knapsack(k) => format!("knapsack(n={})", k.items()),
            ProblemSpec::Tsp(t) => format!("tsp(n={})", t.cities()),
            ProblemSpec::F6(_) => "f6".to_string(),
            ProblemSpec::Table(t) => format!("table(n={})", t.len()),
        }
    }

    /// Parses an instance from JSON, inferring its kind from the shape.
    pub fn from_value(value: &Value) -> Result<Self> {
        if value.is_array() {
            let table: Vec<u64> = serde_json::from_value(value.clone())
                .map_err(|e| Error::Config(format!("bad table problem: {e}")))?;
            if table.is_empty() {
                return Err(Error::Config("table problem is empty".into()));
            }
            return Ok(ProblemSpec::Table(table));
        }
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Config("problem must be an object or an array".into()))?;
        if obj.contains_key("weights") {
            let inst: KnapsackInstance = serde_json::from_value(value.clone())
                .map_err(|e| Error::Config(format!("bad knapsack problem: {e}")))?;
            Ok(ProblemSpec::Knapsack(inst))
        } else if obj.contains_key("distances") {
            let inst: TspInstance = serde_json::from_value(value.clone())
                .map_err(|e| Error::Config(format!("bad tsp problem: {e}")))?;
            Ok(ProblemSpec::Tsp(inst))
        } else if obj.contains_key("lower") {
            let domain: F6Domain = serde_json::from_value(value.clone())
                .map_err(|e| Error::Config(format!("bad f6 domain: {e}")))?;
            Ok(ProblemSpec::F6(domain))
        } else {
            Err(Error::Config(
                "problem object has none of the known keys (weights/distances/lower)".into(),
            ))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read problem file {}: {e}", path.display()))
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| {
            Error::Config(format!("problem file {} is not JSON: {e}", path.display()))
        })?;
        Self::from_value(&value)
    }
}

/// Trace/record output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown output format {other:?} (expected csv or json)"
            ))),
        }
    }
}

/// Schedule parameters for the Grover-based algorithms.
#[derive(Debug, Clone)]
pub struct GroverRunParams {
    pub growth: f64,
    /// Total-iteration budget as a multiple of `sqrt(2^N)`.
    pub budget_multiplier: f64,
    /// Fitness register width for rqga.
    pub fitness_bits: usize,
}

impl Default for GroverRunParams {
    fn default() -> Self {
        Self {
            growth: 1.2,
            budget_multiplier: 30.0,
            fitness_bits: 10,
        }
    }
}

/// Typed per-algorithm parameters.
#[derive(Debug, Clone)]
pub enum AlgoParams {
    Qiga(QigaParams),
    Gqa(GqaParams),
    Qea(QeaParams),
    Qse(QseParams),
    Qiea(QieaParams),
    Grover(GroverRunParams),
}

macro_rules! raw_params {
    ($name:ident { $($field:ident: $ty:ty),* $(,)? }) => {
        #[derive(Debug, Default, Deserialize)]
        #[serde(deny_unknown_fields)]
        struct $name {
            $( $field: Option<$ty>, )*
        }
    };
}

raw_params!(RawQiga { universes: usize, population: usize, mutation_rate: f64, elitism: usize });
raw_params!(RawGqa { population: usize, delta_theta: f64, repair: bool });
raw_params!(RawQea { alpha: f64, noise: f64, population: usize });
raw_params!(RawQse { c1: f64, c2: f64, v_max: f64, swarm_size: usize });
raw_params!(RawQiea {
    pulses: usize,
    population: usize,
    lambda: f64,
    min_width: f64,
    fixed_exponent: bool
});
raw_params!(RawGrover { growth: f64, budget_multiplier: f64, fitness_bits: usize });

fn parse_params(algorithm: AlgorithmId, value: Value, generations: usize) -> Result<AlgoParams> {
    let bad = |e: serde_json::Error| Error::Config(format!("bad params: {e}"));
    Ok(match algorithm {
        AlgorithmId::Qiga => {
            let raw: RawQiga = serde_json::from_value(value).map_err(bad)?;
            let d = QigaParams::default();
            AlgoParams::Qiga(QigaParams {
                universes: raw.universes.unwrap_or(d.universes),
                population: raw.population.unwrap_or(d.population),
                mutation_rate: raw.mutation_rate.unwrap_or(d.mutation_rate),
                elitism: raw.elitism.unwrap_or(d.elitism),
                generations,
            })
        }
        AlgorithmId::Gqa => {
            let raw: RawGqa = serde_json::from_value(value).map_err(bad)?;
            let d = GqaParams::default();
            AlgoParams::Gqa(GqaParams {
                population: raw.population.unwrap_or(d.population),
                delta_theta: raw.delta_theta.unwrap_or(d.delta_theta),
                repair: raw.repair.unwrap_or(d.repair),
                generations,
            })
        }
        AlgorithmId::Qea => {
            let raw: RawQea = serde_json::from_value(value).map_err(bad)?;
            let d = QeaParams::default();
            AlgoParams::Qea(QeaParams {
                alpha: raw.alpha.unwrap_or(d.alpha),
                noise: raw.noise.unwrap_or(d.noise),
                population: raw.population.unwrap_or(d.population),
                generations,
            })
        }
        AlgorithmId::Qse => {
            let raw: RawQse = serde_json::from_value(value).map_err(bad)?;
            let d = QseParams::default();
            AlgoParams::Qse(QseParams {
                c1: raw.c1.unwrap_or(d.c1),
                c2: raw.c2.unwrap_or(d.c2),
                v_max: raw.v_max.unwrap_or(d.v_max),
                swarm_size: raw.swarm_size.unwrap_or(d.swarm_size),
                generations,
            })
        }
        AlgorithmId::Qiea => {
            let raw: RawQiea = serde_json::from_value(value).map_err(bad)?;
            let d = QieaParams::default();
            AlgoParams::Qiea(QieaParams {
                pulses: raw.pulses.unwrap_or(d.pulses),
                population: raw.population.unwrap_or(d.population),
                lambda: raw.lambda.unwrap_or(d.lambda),
                min_width: raw.min_width.unwrap_or(d.min_width),
                fixed_exponent: raw.fixed_exponent.unwrap_or(d.fixed_exponent),
                generations,
            })
        }
        AlgorithmId::Rqga | AlgorithmId::Grovermax => {
            let raw: RawGrover = serde_json::from_value(value).map_err(bad)?;
            let d = GroverRunParams::default();
            AlgoParams::Grover(GroverRunParams {
                growth: raw.growth.unwrap_or(d.growth),
                budget_multiplier: raw.budget_multiplier.unwrap_or(d.budget_multiplier),
                fitness_bits: raw.fitness_bits.unwrap_or(d.fitness_bits),
            })
        }
    })
}

/// Fully validated benchmark configuration.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithm: AlgorithmId,
    pub problem: ProblemSpec,
    pub seed: u64,
    pub trials: u64,
    pub generations: usize,
    /// Success means a relative gap to the oracle of at most
    /// `1 - success_threshold`.
    pub success_threshold: f64,
    pub params: AlgoParams,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub algorithm: Option<String>,
    pub problem: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub generations: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub success_threshold: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algorithm: Option<String>,
    problem: Option<Value>,
    seed: Option<u64>,
    trials: Option<u64>,
    generations: Option<usize>,
    success_threshold: Option<f64>,
    params: Option<Value>,
    output: Option<String>,
    format: Option<String>,
}

/// Loads a configuration from an optional file plus overrides.
/// Relative problem paths resolve against the config file's directory.
pub fn load_config(path: Option<&Path>, overrides: &ConfigOverrides) -> Result<BenchConfig> {
    let (raw, base_dir) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
            let raw: RawConfig = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("config {} is malformed: {e}", p.display())))?;
            let dir = p.parent().unwrap_or(Path::new(".")).to_path_buf();
            (raw, dir)
        }
        None => (RawConfig::default(), PathBuf::from(".")),
    };
    build_config(raw, base_dir, overrides)
}

/// Loads a configuration from an in-memory JSON value (used by sweeps).
pub fn config_from_value(value: Value, overrides: &ConfigOverrides) -> Result<BenchConfig> {
    let raw: RawConfig = serde_json::from_value(value)
        .map_err(|e| Error::Config(format!("config is malformed: {e}")))?;
    build_config(raw, PathBuf::from("."), overrides)
}

fn build_config(
    raw: RawConfig,
    base_dir: PathBuf,
    overrides: &ConfigOverrides,
) -> Result<BenchConfig> {
    let algorithm_name = overrides
        .algorithm
        .clone()
        .or(raw.algorithm)
        .ok_or_else(|| Error::Config("no algorithm given (key `algorithm`)".into()))?;
    let algorithm = AlgorithmId::parse(&algorithm_name)?;

    let problem = if let Some(path) = &overrides.problem {
        ProblemSpec::load(path)?
    } else {
        match raw.problem {
            Some(Value::String(rel)) => {
                let mut p = base_dir.clone();
                p.push(&rel);
                ProblemSpec::load(&p)?
            }
            Some(inline) => ProblemSpec::from_value(&inline)?,
            None => return Err(Error::Config("no problem given (key `problem`)".into())),
        }
    };

    if !algorithm.compatible_kinds().contains(&problem.kind()) {
        return Err(Error::Config(format!(
            "incompatible problem: algorithm {} needs {}, got {}",
            algorithm.as_str(),
            algorithm
                .compatible_kinds()
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(" or "),
            problem.kind().as_str()
        )));
    }

    let trials = overrides.trials.or(raw.trials).unwrap_or(1);
    if trials < 1 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let generations = overrides.generations.or(raw.generations).unwrap_or(500);
    let success_threshold = overrides
        .success_threshold
        .or(raw.success_threshold)
        .unwrap_or(0.95);
    if !(0.0..=1.0).contains(&success_threshold) {
        return Err(Error::Config(
            "success_threshold must lie in [0, 1]".into(),
        ));
    }

    let params = parse_params(
        algorithm,
        raw.params.unwrap_or(Value::Object(Default::default())),
        generations,
    )?;
    validate_params(&params, &problem)?;

    let output = overrides
        .output
        .clone()
        .or_else(|| raw.output.map(PathBuf::from));
    let format = match overrides.format.clone().or(raw.format) {
        Some(f) => OutputFormat::parse(&f)?,
        None => OutputFormat::Csv,
    };

    Ok(BenchConfig {
        algorithm,
        problem,
        seed: overrides.seed.or(raw.seed).unwrap_or(0),
        trials,
        generations,
        success_threshold,
        params,
        output,
        format,
    })
}

fn validate_params(params: &AlgoParams, problem: &ProblemSpec) -> Result<()> {
    let cfg = |e: Error| Error::Config(e.to_string());
    match params {
        AlgoParams::Qiga(p) => p.validate().map_err(cfg)?,
        AlgoParams::Gqa(p) => p.validate().map_err(cfg)?,
        AlgoParams::Qea(p) => p.validate().map_err(cfg)?,
        AlgoParams::Qse(p) => p.validate().map_err(cfg)?,
        AlgoParams::Qiea(p) => p.validate().map_err(cfg)?,
        AlgoParams::Grover(p) => {
            if p.growth <= 1.0 {
                return Err(Error::Config("growth must exceed 1".into()));
            }
            if p.budget_multiplier <= 0.0 {
                return Err(Error::Config("budget_multiplier must be positive".into()));
            }
            if let ProblemSpec::Knapsack(inst) = problem {
                if p.fitness_bits < 1 || inst.items() + p.fitness_bits > crate::qsim::MAX_QUBITS {
                    return Err(Error::Config(format!(
                        "register pair needs {}+{} qubits, limit is {}",
                        inst.items(),
                        p.fitness_bits,
                        crate::qsim::MAX_QUBITS
                    )));
                }
            }
        }
    }
    Ok(())
}
