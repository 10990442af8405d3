//! Run bookkeeping shared by every algorithm: termination conditions and
//! per-generation traces.
//!
//! Fitness convention: every recorded fitness is "higher is better".
//! Minimization problems (TSP tour length) record the negated objective,
//! so the best-so-far series of any run with elitism or best-so-far
//! storage is monotone nondecreasing.

use crate::error::{Error, Result};
use crate::qubit::BitString;
use serde::Serialize;

/// When to stop a generational loop.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminationCondition {
    pub max_generations: usize,
    pub target_fitness: Option<f64>,
    pub stall_generations: Option<usize>,
}

impl TerminationCondition {
    pub fn new(
        max_generations: usize,
        target_fitness: Option<f64>,
        stall_generations: Option<usize>,
    ) -> Result<Self> {
        if max_generations < 1 {
            return Err(Error::InvalidArgument(
                "max_generations must be at least 1".into(),
            ));
        }
        Ok(Self {
            max_generations,
            target_fitness,
            stall_generations,
        })
    }

    /// Plain generation cap with no target or stall rule.
    pub fn generations(max_generations: usize) -> Result<Self> {
        Self::new(max_generations, None, None)
    }

    /// True once the loop that has completed `generations_done`
    /// generations should stop. `stalled_for` counts generations since
    /// the best fitness last improved.
    pub fn should_stop(&self, generations_done: usize, best: f64, stalled_for: usize) -> bool {
        if generations_done >= self.max_generations {
            return true;
        }
        if let Some(target) = self.target_fitness {
            if best >= target {
                return true;
            }
        }
        if let Some(stall) = self.stall_generations {
            if stalled_for >= stall {
                return true;
            }
        }
        false
    }
}

/// One row of a run trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    /// Best-so-far fitness (monotone nondecreasing).
    pub best_fitness: f64,
    /// Mean fitness of the individuals evaluated this generation.
    pub mean_fitness: f64,
    /// Cumulative evaluation count.
    pub evaluations: u64,
}

/// Best solution found by a run, in whichever genotype the algorithm uses.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Individual {
    Bits(String),
    Permutation(Vec<usize>),
    RealVector(Vec<f64>),
}

impl Individual {
    pub fn bits(b: &BitString) -> Self {
        Individual::Bits(b.to_string())
    }
}

/// Complete record of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub seed: u64,
    pub trace: Vec<GenerationStats>,
    pub best: Individual,
    pub best_fitness: f64,
}

impl RunRecord {
    /// Final cumulative evaluation count.
    pub fn total_evaluations(&self) -> u64 {
        self.trace.last().map_or(0, |g| g.evaluations)
    }

    /// True when the best-fitness series never decreases.
    pub fn best_is_monotone(&self) -> bool {
        self.trace
            .windows(2)
            .all(|w| w[1].best_fitness >= w[0].best_fitness)
    }
}

/// Incrementally builds a [`RunRecord`], enforcing the best-so-far
/// monotonicity as rows are appended.
#[derive(Debug)]
pub struct TraceBuilder {
    seed: u64,
    rows: Vec<GenerationStats>,
    evaluations: u64,
    best_fitness: f64,
}

impl TraceBuilder {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rows: Vec::new(),
            evaluations: 0,
            best_fitness: f64::NEG_INFINITY,
        }
    }

    /// Records one generation. `best` must already be the best-so-far
    /// value; `mean` is this generation's population mean.
    pub fn push(&mut self, best: f64, mean: f64, new_evaluations: u64) {
        debug_assert!(best >= self.best_fitness, "best-so-far regressed");
        self.best_fitness = best;
        self.evaluations += new_evaluations;
        self.rows.push(GenerationStats {
            generation: self.rows.len(),
            best_fitness: best,
            mean_fitness: mean,
            evaluations: self.evaluations,
        });
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn generations_recorded(&self) -> usize {
        self.rows.len()
    }

    pub fn finish(self, best: Individual, best_fitness: f64) -> RunRecord {
        RunRecord {
            seed: self.seed,
            trace: self.rows,
            best,
            best_fitness,
        }
    }
}
