//! Guide-chromosome evolutionary algorithm.
//!
//! The probabilistic model is a per-locus probability vector. Each
//! generation a population of bit strings is sampled from it, recombined
//! along the population diagonals, and the vector is pulled toward the
//! best string seen so far:
//!
//! ```text
//! q_guide_i = alpha * p_i + (1 - alpha) * (1 - p_i)
//! q_i(t+1)  = clamp(q_guide_i + b * gauss(), 0, 1)
//! ```
//!
//! The gaussian term is the mutation operator; its dynamics resemble a
//! particle swarm pulled by a single attractor.

use crate::error::{Error, Result};
use crate::problems::BinaryFitness;
use crate::qubit::BitString;
use crate::rng::Rng;
use crate::run::{Individual, RunRecord, TraceBuilder};

/// Per-locus probability of sampling bit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GuideChromosome {
    q: Vec<f64>,
}

impl GuideChromosome {
    /// Uniform guide: every locus at probability 1/2.
    pub fn uniform(len: usize) -> Self {
        Self { q: vec![0.5; len] }
    }

    pub fn from_probabilities(q: Vec<f64>) -> Result<Self> {
        if q.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidArgument(
                "guide probabilities must lie in [0,1]".into(),
            ));
        }
        Ok(Self { q })
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.q
    }

    /// Samples one bit string, one uniform draw per locus in order.
    pub fn sample(&self, rng: &mut Rng) -> BitString {
        BitString::new(self.q.iter().map(|&p| rng.next_f64() < p).collect())
    }
}

/// QEA parameters.
#[derive(Debug, Clone)]
pub struct QeaParams {
    /// Blend toward the current best string; must lie in (0.5, 1].
    pub alpha: f64,
    /// Gaussian noise scale of the guide update.
    pub noise: f64,
    /// Strings sampled per generation.
    pub population: usize,
    pub generations: usize,
}

impl Default for QeaParams {
    fn default() -> Self {
        Self {
            alpha: 0.9,
            noise: 0.05,
            population: 20,
            generations: 100,
        }
    }
}

impl QeaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.5 && self.alpha <= 1.0) {
            return Err(Error::InvalidArgument("alpha must lie in (0.5, 1]".into()));
        }
        if self.noise < 0.0 {
            return Err(Error::InvalidArgument("noise must be nonnegative".into()));
        }
        if self.population < 1 {
            return Err(Error::InvalidArgument("population must be >= 1".into()));
        }
        Ok(())
    }
}

/// Blends the current best string into a guide:
/// `q_i = alpha * p_i + (1 - alpha) * (1 - p_i)`.
pub fn qea_guide(current_best: &BitString, alpha: f64) -> GuideChromosome {
    GuideChromosome {
        q: current_best
            .bits()
            .iter()
            .map(|&bit| {
                let p = bit as u8 as f64;
                alpha * p + (1.0 - alpha) * (1.0 - p)
            })
            .collect(),
    }
}

/// Perturbs a guide with gaussian noise and clamps every entry to [0,1]:
/// `q_i(t+1) = clamp(q_i + b * gauss(), 0, 1)`.
pub fn qea_update(guide: &GuideChromosome, noise: f64, rng: &mut Rng) -> GuideChromosome {
    GuideChromosome {
        q: guide
            .q
            .iter()
            .map(|&p| {
                if noise == 0.0 {
                    p
                } else {
                    (p + noise * rng.next_gauss()).clamp(0.0, 1.0)
                }
            })
            .collect(),
    }
}

/// Diagonal recombination of a sampled population: offspring `i` takes
/// gene `j` (1-based) from row `(i + j - 1) mod popsize`. Binary genes
/// need no duplicate handling.
pub fn qea_diagonal_crossover(population: &[BitString]) -> Vec<BitString> {
    let rows = population.len();
    if rows == 0 {
        return Vec::new();
    }
    let len = population[0].len();
    debug_assert!(population.iter().all(|s| s.len() == len));
    (0..rows)
        .map(|i| {
            BitString::new(
                (0..len)
                    .map(|j| population[(i + j) % rows].get(j))
                    .collect(),
            )
        })
        .collect()
}

/// Runs QEA against a binary fitness function.
pub fn run_qea(
    problem: &impl BinaryFitness,
    params: &QeaParams,
    rng: &mut Rng,
) -> Result<RunRecord> {
    params.validate()?;
    let len = problem.genotype_len();
    let seed = rng.seed();
    let mut guide = GuideChromosome::uniform(len);
    let mut best: Option<(BitString, f64)> = None;
    let mut trace = TraceBuilder::new(seed);

    let run_generation = |guide: &GuideChromosome,
                              best: &mut Option<(BitString, f64)>,
                              rng: &mut Rng| {
        let sampled: Vec<BitString> = (0..params.population).map(|_| guide.sample(rng)).collect();
        let offspring = qea_diagonal_crossover(&sampled);
        let mut sum = 0.0;
        let mut count = 0u64;
        for bits in sampled.into_iter().chain(offspring) {
            let fitness = problem.evaluate(&bits);
            sum += fitness;
            count += 1;
            if best.as_ref().is_none_or(|(_, f)| fitness > *f) {
                *best = Some((bits, fitness));
            }
        }
        (sum / count as f64, count)
    };

    let (mean, evals) = run_generation(&guide, &mut best, rng);
    trace.push(best.as_ref().unwrap().1, mean, evals);

    for _ in 0..params.generations {
        let blended = qea_guide(&best.as_ref().unwrap().0, params.alpha);
        guide = qea_update(&blended, params.noise, rng);
        let (mean, evals) = run_generation(&guide, &mut best, rng);
        trace.push(best.as_ref().unwrap().1, mean, evals);
    }

    let (bits, fitness) = best.unwrap();
    Ok(trace.finish(Individual::bits(&bits), fitness))
}
