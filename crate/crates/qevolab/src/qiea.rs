//! Estimation-of-distribution search with rectangular-pulse models.
//!
//! Each real variable carries a probability density made of `N`
//! rectangular pulses. Every pulse holds area exactly `1/N`, so the
//! total area under the density is always 1 (the superposition
//! constraint). Note the plain height rule "1 / (domain length / N)"
//! with full-domain widths would give each pulse area 1 and a total of
//! `N`; normalizing per-pulse area to `1/N` is the reading that
//! satisfies the total-area constraint, and is what this module
//! implements.
//!
//! Per generation: sample a population from the current pulses, evaluate,
//! then for each pulse roulette-select `m = n/N` individuals, move the
//! pulse center to their mean value, and shrink the width to the
//! contraction schedule
//!
//! ```text
//! sigma(t) = (u - l)^((1 - t/T)^lambda) - 1
//! ```
//!
//! The printed form of this schedule uses the exponent `(1 - 1/T)^lambda`,
//! which never changes over a run; the time-varying `t/T` reading is the
//! default here because the schedule is described as a per-generation
//! contraction, and `sigma(T) = 0` exactly under it. The constant
//! exponent remains available behind [`QieaParams::fixed_exponent`].

use crate::error::{Error, Result};
use crate::problems::F6Problem;
use crate::rng::Rng;
use crate::run::{Individual, RunRecord, TraceBuilder};

/// Tolerance on pulse-area bookkeeping.
pub const AREA_TOLERANCE: f64 = 1e-9;

/// One rectangular pulse: uniform density of the given width around the
/// center, carrying area `height * width = 1/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub center: f64,
    pub width: f64,
    pub height: f64,
}

impl Pulse {
    pub fn area(&self) -> f64 {
        self.height * self.width
    }
}

/// Probability model of one real variable: `N` pulses over `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableDistribution {
    pulses: Vec<Pulse>,
    lower: f64,
    upper: f64,
}

impl VariableDistribution {
    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// Sum of pulse areas; 1 within [`AREA_TOLERANCE`] by construction.
    pub fn total_area(&self) -> f64 {
        self.pulses.iter().map(Pulse::area).sum()
    }
}

/// QIEA parameters.
#[derive(Debug, Clone)]
pub struct QieaParams {
    /// Pulses per variable.
    pub pulses: usize,
    /// Individuals sampled per generation; must be a multiple of `pulses`.
    pub population: usize,
    /// Contraction shape lambda.
    pub lambda: f64,
    pub generations: usize,
    /// Width floor, in problem units. Defaults to `(u - l) * 1e-3`
    /// when zero is supplied to [`run_qiea`].
    pub min_width: f64,
    /// Use the literal time-independent contraction exponent
    /// `(1 - 1/T)^lambda` instead of `(1 - t/T)^lambda`.
    pub fixed_exponent: bool,
}

impl Default for QieaParams {
    fn default() -> Self {
        Self {
            pulses: 5,
            population: 100,
            lambda: 1.0,
            generations: 200,
            min_width: 0.0,
            fixed_exponent: false,
        }
    }
}

impl QieaParams {
    pub fn validate(&self) -> Result<()> {
        if self.pulses < 1 {
            return Err(Error::InvalidArgument("need at least one pulse".into()));
        }
        if self.population == 0 || self.population % self.pulses != 0 {
            return Err(Error::InvalidArgument(format!(
                "population {} must be a positive multiple of the pulse count {}",
                self.population, self.pulses
            )));
        }
        if self.lambda <= 0.0 {
            return Err(Error::InvalidArgument("lambda must be positive".into()));
        }
        if self.min_width < 0.0 {
            return Err(Error::InvalidArgument("min_width must be >= 0".into()));
        }
        Ok(())
    }
}

/// Fresh distribution: `N` pulses centered at the midpoints of `N` equal
/// segments of `[l, u]`, each with full-domain width `u - l` and height
/// `1 / (N (u - l))`.
pub fn init_distribution(lower: f64, upper: f64, pulses: usize) -> Result<VariableDistribution> {
    if !(lower < upper) {
        return Err(Error::InvalidArgument(format!(
            "domain [{lower}, {upper}] is empty"
        )));
    }
    if pulses < 1 {
        return Err(Error::InvalidArgument("need at least one pulse".into()));
    }
    let span = upper - lower;
    let height = 1.0 / (pulses as f64 * span);
    let dist = VariableDistribution {
        pulses: (0..pulses)
            .map(|i| Pulse {
                center: lower + (i as f64 + 0.5) * span / pulses as f64,
                width: span,
                height,
            })
            .collect(),
        lower,
        upper,
    };
    debug_assert!((dist.total_area() - 1.0).abs() <= AREA_TOLERANCE);
    Ok(dist)
}

/// Draws one value: pick a pulse (uniformly, since areas are equal),
/// then a uniform position inside it, clipped to the domain. Consumes
/// exactly two uniform draws.
pub fn sample(dist: &VariableDistribution, rng: &mut Rng) -> f64 {
    let pulse = &dist.pulses[rng.next_index(dist.pulses.len())];
    let x = pulse.center + (rng.next_f64() - 0.5) * pulse.width;
    x.clamp(dist.lower, dist.upper)
}

/// Contraction schedule `sigma(t) = (u - l)^((1 - t/T)^lambda) - 1`.
///
/// Requires `u - l > 1`; otherwise the power curve fails to shrink
/// monotonically toward zero.
pub fn contraction(lower: f64, upper: f64, t: usize, total: usize, lambda: f64) -> Result<f64> {
    let span = upper - lower;
    if span <= 1.0 {
        return Err(Error::Domain(format!(
            "contraction needs a domain longer than 1, got {span}"
        )));
    }
    let progress = t as f64 / total as f64;
    Ok(span.powf((1.0 - progress).powf(lambda)) - 1.0)
}

/// Roulette-draws `m` indices proportional to fitness (one uniform draw
/// per pick, cumulative-sum lookup), falling back to uniform draws when
/// every fitness is zero.
fn roulette_indices(fitness: &[f64], m: usize, rng: &mut Rng) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(fitness.len());
    let mut total = 0.0;
    for &f in fitness {
        total += f;
        cumulative.push(total);
    }
    if total <= 0.0 {
        return (0..m).map(|_| rng.next_index(fitness.len())).collect();
    }
    (0..m)
        .map(|_| {
            let target = rng.next_f64() * total;
            cumulative
                .partition_point(|&c| c < target)
                .min(fitness.len() - 1)
        })
        .collect()
}

/// One model update: every pulse re-centers on the mean of `m = n/N`
/// roulette-selected individuals and shrinks to `max(sigma(t), w_min)`,
/// height recomputed to keep its area at `1/N`. Fitness values must be
/// nonnegative.
pub fn update_distribution(
    dist: &mut VariableDistribution,
    population: &[(f64, f64)],
    t: usize,
    params: &QieaParams,
    rng: &mut Rng,
) -> Result<()> {
    if population.len() != params.population {
        return Err(Error::InvalidArgument(format!(
            "expected population of {}, got {}",
            params.population,
            population.len()
        )));
    }
    if population.iter().any(|&(_, f)| f < 0.0) {
        return Err(Error::InvalidArgument(
            "roulette update needs nonnegative fitness".into(),
        ));
    }
    let m = params.population / params.pulses;
    let fitness: Vec<f64> = population.iter().map(|&(_, f)| f).collect();
    let sigma_t = if params.fixed_exponent {
        // literal schedule: exponent fixed at (1 - 1/T)^lambda
        contraction(dist.lower, dist.upper, 1, params.generations.max(1), params.lambda)?
    } else {
        contraction(dist.lower, dist.upper, t, params.generations.max(1), params.lambda)?
    };
    let width = sigma_t.max(params.min_width);
    let n = params.pulses as f64;
    for pulse in dist.pulses.iter_mut() {
        let chosen = roulette_indices(&fitness, m, rng);
        let mean = chosen.iter().map(|&i| population[i].0).sum::<f64>() / m as f64;
        pulse.center = mean;
        pulse.width = width;
        pulse.height = 1.0 / (n * width);
    }
    debug_assert!((dist.total_area() - 1.0).abs() <= AREA_TOLERANCE);
    Ok(())
}

/// Runs QIEA on the F6 problem (two variables).
pub fn run_qiea(problem: &F6Problem, params: &QieaParams, rng: &mut Rng) -> Result<RunRecord> {
    params.validate()?;
    let seed = rng.seed();
    let domain = problem.domain;
    let mut dists = [
        init_distribution(domain.lower(0), domain.upper(0), params.pulses)?,
        init_distribution(domain.lower(1), domain.upper(1), params.pulses)?,
    ];
    let min_widths = [
        effective_min_width(params.min_width, domain.lower(0), domain.upper(0)),
        effective_min_width(params.min_width, domain.lower(1), domain.upper(1)),
    ];

    let mut best: Option<((f64, f64), f64)> = None;
    let mut trace = TraceBuilder::new(seed);

    for t in 0..=params.generations {
        // sample and evaluate this generation's population
        let mut xs = Vec::with_capacity(params.population);
        let mut ys = Vec::with_capacity(params.population);
        let mut sum = 0.0;
        for _ in 0..params.population {
            let x = sample(&dists[0], rng);
            let y = sample(&dists[1], rng);
            let fitness = problem.evaluate(x, y);
            sum += fitness;
            if best.as_ref().is_none_or(|&(_, f)| fitness > f) {
                best = Some(((x, y), fitness));
            }
            xs.push((x, fitness));
            ys.push((y, fitness));
        }
        trace.push(
            best.as_ref().unwrap().1,
            sum / params.population as f64,
            params.population as u64,
        );
        if t == params.generations {
            break;
        }
        for (dist, (pop, w_min)) in dists
            .iter_mut()
            .zip([(&xs, min_widths[0]), (&ys, min_widths[1])])
        {
            let local = QieaParams {
                min_width: w_min,
                ..params.clone()
            };
            update_distribution(dist, pop, t + 1, &local, rng)?;
        }
    }

    let ((x, y), fitness) = best.unwrap();
    Ok(trace.finish(Individual::RealVector(vec![x, y]), fitness))
}

fn effective_min_width(requested: f64, lower: f64, upper: f64) -> f64 {
    if requested > 0.0 {
        requested
    } else {
        (upper - lower) * 1e-3
    }
}
