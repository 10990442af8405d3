//! Grover search with unknown marked counts, quantum maximum finding and
//! the reduced quantum genetic algorithm, instrumented with iteration
//! counters so the square-root scaling claim can be measured.
//!
//! The number of marked states is never known in advance here, so every
//! search uses the randomized exponential schedule: draw an iteration
//! count `j` uniformly below a growing estimate, prepare the uniform
//! state from scratch, run `j` Grover iterations, measure, and verify
//! the outcome classically. The estimate grows by a factor of 6/5 per
//! failed round and is capped at `sqrt(2^N)`.
//!
//! States are never copied between rounds (the statevector type cannot
//! be cloned); every round re-prepares the register pair, which is the
//! honest reading of measurement collapse for these algorithms.

use crate::error::{Error, Result};
use crate::problems::RegisterFitness;
use crate::qsim::{Register, RegisterLayout, StateVector};
use crate::rng::Rng;

/// Iteration budget of one unknown-count search.
#[derive(Debug, Clone)]
pub struct GroverBudget {
    /// Growth factor of the iteration-count estimate; must exceed 1.
    pub growth: f64,
    /// Total Grover iterations allowed per search.
    pub max_total_iterations: u64,
    /// Cap on the iteration-count estimate (per round).
    pub round_cap: f64,
}

impl GroverBudget {
    /// Default schedule for an `N`-qubit individual register: growth
    /// 6/5, per-round cap `sqrt(2^N)`, total budget `30 sqrt(2^N)`.
    pub fn for_individual_bits(individual_bits: usize) -> Self {
        let sqrt_dim = ((1u64 << individual_bits) as f64).sqrt();
        Self {
            growth: 1.2,
            max_total_iterations: (30.0 * sqrt_dim).ceil() as u64,
            round_cap: sqrt_dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.growth <= 1.0 {
            return Err(Error::InvalidArgument("growth must exceed 1".into()));
        }
        if self.round_cap < 1.0 {
            return Err(Error::InvalidArgument("round_cap must be >= 1".into()));
        }
        Ok(())
    }
}

/// Iteration and query counters accumulated by a search.
///
/// `grover_iterations` counts Grover iterations (one phase-oracle
/// application each); `oracle_queries` adds one classical verification
/// per measurement round on top.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub grover_iterations: u64,
    pub oracle_queries: u64,
    pub rounds: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.grover_iterations += other.grover_iterations;
        self.oracle_queries += other.oracle_queries;
        self.rounds += other.rounds;
    }
}

/// Runs the randomized schedule until `accept` passes or the iteration
/// budget is exhausted. `mark_once` applies one Grover iteration for the
/// search predicate.
fn run_schedule(
    layout: RegisterLayout,
    budget: &GroverBudget,
    rng: &mut Rng,
    mark_once: &dyn Fn(&mut StateVector) -> Result<()>,
    accept: &dyn Fn(u64) -> bool,
    stats: &mut SearchStats,
) -> Result<Option<u64>> {
    budget.validate()?;
    let mut estimate = 1.0f64;
    let mut remaining = budget.max_total_iterations;
    loop {
        let drawn = rng.next_index(estimate.ceil() as usize) as u64;
        let iterations = drawn.min(remaining);
        let mut state = StateVector::uniform(layout);
        for _ in 0..iterations {
            mark_once(&mut state)?;
        }
        let outcome = state.measure_register(Register::Individual, rng);
        stats.grover_iterations += iterations;
        stats.oracle_queries += iterations + 1; // +1 classical verification
        stats.rounds += 1;
        remaining -= iterations;
        if accept(outcome) {
            return Ok(Some(outcome));
        }
        if remaining == 0 {
            return Ok(None);
        }
        estimate = (estimate * budget.growth).min(budget.round_cap);
    }
}

/// Grover search for any index satisfying `g`, marked-count unknown.
/// Returns the found index (guaranteed to satisfy `g`) or `None` once
/// the budget is spent.
pub fn grover_unknown(
    g: &dyn Fn(u64) -> bool,
    layout: RegisterLayout,
    budget: &GroverBudget,
    rng: &mut Rng,
) -> Result<(Option<u64>, SearchStats)> {
    let mut stats = SearchStats::default();
    let indicator = |u: u64| g(u) as u64;
    let found = run_schedule(
        layout,
        budget,
        rng,
        &|state| state.grover_iteration(&indicator, 0),
        &|u| g(u),
        &mut stats,
    )?;
    if let Some(u) = found {
        assert!(g(u), "schedule returned an unverified index");
    }
    Ok((found, stats))
}

/// Result of a maximum-finding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxOutcome {
    /// Index of the maximum (subject to the search budget).
    pub index: u64,
    /// Value at `index`.
    pub value: u64,
    /// Threshold values over the run, strictly increasing.
    pub threshold_trace: Vec<u64>,
    pub stats: SearchStats,
}

/// Threshold-raising maximum search over an unsorted table: start from a
/// random index, repeatedly Grover-search for an index with a strictly
/// larger value, and stop when a search round comes back empty.
pub fn find_maximum(table: &[u64], budget: &GroverBudget, rng: &mut Rng) -> Result<MaxOutcome> {
    if table.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot search an empty table".into(),
        ));
    }
    let len = table.len() as u64;
    let individual_bits = (64 - (len - 1).leading_zeros() as usize).max(1);
    let layout = RegisterLayout::new(individual_bits, 1)?;

    let mut k = rng.next_index(table.len()) as u64;
    let mut trace = vec![table[k as usize]];
    let mut stats = SearchStats::default();
    loop {
        let threshold = table[k as usize];
        let g = move |x: u64| x < len && table[x as usize] > threshold;
        let (found, round_stats) = grover_unknown(&g, layout, budget, rng)?;
        stats.absorb(round_stats);
        match found {
            Some(x) => {
                k = x;
                trace.push(table[k as usize]);
            }
            None => break,
        }
    }
    Ok(MaxOutcome {
        index: k,
        value: table[k as usize],
        threshold_trace: trace,
        stats,
    })
}

/// Result of an RQGA run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RqgaResult {
    /// Best individual found, as an index into `{0,1}^N`.
    pub best_individual: u64,
    /// Register fitness of `best_individual`; equals
    /// `problem.scaled_fitness(best_individual)` exactly.
    pub best_fitness: u64,
    /// Threshold values over the run, strictly increasing.
    pub threshold_trace: Vec<u64>,
    pub stats: SearchStats,
}

/// Reduced quantum genetic algorithm: genetic search collapsed into
/// fitness-threshold maximum finding over the register pair.
///
/// The threshold starts at the fitness of one uniformly random
/// individual (the literal printed initialization range `[2^(M+1),
/// 2^(M+2) - 1]` exceeds every representable M-bit fitness, so the first
/// oracle would mark nothing; the random-index start used by the
/// maximum-finding algorithm replaces it). Each round prepares the pair
/// registers, embeds the fitness, Grover-searches for fitness above the
/// threshold and verifies the measured candidate classically before
/// raising the threshold. A final search marks fitness equal to the
/// threshold and measures the individual register to recover a
/// maximizing individual.
pub fn rqga(
    problem: &impl RegisterFitness,
    budget: &GroverBudget,
    rng: &mut Rng,
) -> Result<RqgaResult> {
    let layout = RegisterLayout::new(problem.individual_bits(), problem.fitness_bits())?;
    let fitness = |u: u64| problem.scaled_fitness(u);

    let mut best = rng.next_index(layout.individual_dim() as usize) as u64;
    let mut max = fitness(best);
    let mut trace = vec![max];
    let mut stats = SearchStats::default();

    loop {
        let threshold = max;
        let found = run_schedule(
            layout,
            budget,
            rng,
            &|state| state.grover_iteration(&fitness, threshold),
            &|u| fitness(u) > threshold,
            &mut stats,
        )?;
        match found {
            Some(u) => {
                best = u;
                max = fitness(u);
                trace.push(max);
            }
            None => break,
        }
    }

    // recover an individual attaining the final threshold (step 5: the
    // fitness register holds the maximum, measure the individual side)
    let target = max;
    let found = run_schedule(
        layout,
        budget,
        rng,
        &|state| state.grover_iteration_matching(&fitness, target),
        &|u| fitness(u) == target,
        &mut stats,
    )?;
    if let Some(u) = found {
        best = u;
    }

    debug_assert_eq!(fitness(best), max);
    Ok(RqgaResult {
        best_individual: best,
        best_fitness: max,
        threshold_trace: trace,
        stats,
    })
}

/// Least-squares slope of `log(mean grover iterations)` against
/// `log(size)`. Requires at least 3 distinct sizes with at least 50
/// runs each.
pub fn query_scaling_slope(samples: &[(u64, Vec<u64>)]) -> Result<f64> {
    let mut sizes: Vec<u64> = samples.iter().map(|(s, _)| *s).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 distinct sizes, got {}",
            sizes.len()
        )));
    }
    let mut points = Vec::with_capacity(samples.len());
    for (size, runs) in samples {
        if runs.len() < 50 {
            return Err(Error::InvalidArgument(format!(
                "size {size} has only {} runs (need 50)",
                runs.len()
            )));
        }
        let mean = runs.iter().sum::<u64>() as f64 / runs.len() as f64;
        if mean <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "size {size} has zero mean iteration count"
            )));
        }
        points.push(((*size as f64).ln(), mean.ln()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in points {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    Ok(cov / var)
}
