//! Genetic quantum algorithm over qubit chromosomes.
//!
//! The population is a set of qubit chromosomes, all initialized to the
//! uniform superposition. Each generation the chromosomes are observed
//! into classical strings, the strings are evaluated, and every gene
//! whose observed bit disagrees with the stored best solution is rotated
//! a fixed step toward that best bit. There is no crossover and no
//! mutation. The loop follows the published pseudocode order: observe,
//! evaluate, update the qubit population toward the previous best, then
//! store the generation's best.
//!
//! A note on feasibility for a quantum machine is deliberately absent
//! from this module: observation here is classical sampling of an
//! explicitly stored probabilistic genotype. A measurement-faithful
//! treatment lives in [`crate::qsim`] and [`crate::grover`].

use crate::error::{Error, Result};
use crate::problems::BinaryFitness;
use crate::qubit::{observe, rotate, BitString, QubitChromosome, QubitGene};
use crate::rng::Rng;
use crate::run::{Individual, RunRecord, TraceBuilder};

/// Fraction of `pi/2` the gene angle is kept away from the absorbing
/// states 0 and `pi/2`.
const ANGLE_MARGIN: f64 = 0.001;

/// GQA parameters.
#[derive(Debug, Clone)]
pub struct GqaParams {
    /// Number of qubit chromosomes.
    pub population: usize,
    /// Rotation step toward the stored best, in radians.
    pub delta_theta: f64,
    pub generations: usize,
    /// Apply the problem's repair operator before evaluation.
    pub repair: bool,
}

impl Default for GqaParams {
    fn default() -> Self {
        Self {
            population: 10,
            delta_theta: 0.01 * std::f64::consts::PI,
            generations: 500,
            repair: true,
        }
    }
}

impl GqaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 1 {
            return Err(Error::InvalidArgument("population must be >= 1".into()));
        }
        if !(self.delta_theta > 0.0 && self.delta_theta < std::f64::consts::FRAC_PI_4)
            && self.delta_theta != 0.0
        {
            return Err(Error::InvalidArgument(
                "delta_theta must lie in (0, pi/4), or be 0 for a frozen population".into(),
            ));
        }
        Ok(())
    }
}

/// Population state: qubit chromosomes plus the stored best solution.
#[derive(Debug, Clone)]
pub struct GqaState {
    pub chromosomes: Vec<QubitChromosome>,
    pub best: BitString,
    pub best_fitness: f64,
}

/// Fresh state with every gene in the uniform superposition
/// `(1/sqrt(2), 1/sqrt(2))`. The best slot is filled by the first
/// observation of the run.
pub fn init_gqa(population: usize, genotype_len: usize) -> GqaState {
    GqaState {
        chromosomes: vec![QubitChromosome::balanced(genotype_len); population],
        best: BitString::zeros(genotype_len),
        best_fitness: f64::NEG_INFINITY,
    }
}

/// Rotates every locus where the observed bit differs from the best
/// string by `delta_theta` toward the best bit, provided the best
/// fitness is at least the observed fitness. Gene angles are clamped to
/// `[0.001 pi/2, 0.999 pi/2]` so no locus freezes permanently.
pub fn update_rotation(
    chromosome: &mut QubitChromosome,
    observed: &BitString,
    best: &BitString,
    observed_fitness: f64,
    best_fitness: f64,
    delta_theta: f64,
) {
    debug_assert_eq!(chromosome.len(), observed.len());
    debug_assert_eq!(chromosome.len(), best.len());
    if best_fitness < observed_fitness {
        return;
    }
    let lo = ANGLE_MARGIN * std::f64::consts::FRAC_PI_2;
    let hi = (1.0 - ANGLE_MARGIN) * std::f64::consts::FRAC_PI_2;
    for i in 0..chromosome.len() {
        if observed.get(i) == best.get(i) {
            continue;
        }
        let step = if best.get(i) { delta_theta } else { -delta_theta };
        let turned = rotate(chromosome.gene(i), step);
        let angle = turned.angle();
        let gene = if angle < lo {
            QubitGene::from_angle(lo)
        } else if angle > hi {
            QubitGene::from_angle(hi)
        } else {
            turned
        };
        chromosome.set_gene(i, gene);
    }
}

/// Runs GQA against a binary fitness function.
pub fn run_gqa(
    problem: &impl BinaryFitness,
    params: &GqaParams,
    rng: &mut Rng,
) -> Result<RunRecord> {
    params.validate()?;
    let len = problem.genotype_len();
    let seed = rng.seed();
    let mut state = init_gqa(params.population, len);
    let mut trace = TraceBuilder::new(seed);

    let evaluate_generation = |state: &mut GqaState, rng: &mut Rng, update: bool| {
        let mut observations = Vec::with_capacity(state.chromosomes.len());
        let mut sum = 0.0;
        for chromosome in &state.chromosomes {
            let mut bits = observe(chromosome, rng);
            if params.repair {
                problem.repair(&mut bits);
            }
            let fitness = problem.evaluate(&bits);
            sum += fitness;
            observations.push((bits, fitness));
        }
        if update {
            for (chromosome, (bits, fitness)) in
                state.chromosomes.iter_mut().zip(&observations)
            {
                update_rotation(
                    chromosome,
                    bits,
                    &state.best,
                    *fitness,
                    state.best_fitness,
                    params.delta_theta,
                );
            }
        }
        for (bits, fitness) in observations {
            if fitness > state.best_fitness {
                state.best_fitness = fitness;
                state.best = bits;
            }
        }
        sum / state.chromosomes.len() as f64
    };

    // generation 0: observe, evaluate, store best (no update yet)
    let mean = evaluate_generation(&mut state, rng, false);
    trace.push(state.best_fitness, mean, params.population as u64);

    for _ in 0..params.generations {
        let mean = evaluate_generation(&mut state, rng, true);
        trace.push(state.best_fitness, mean, params.population as u64);
    }

    let best_fitness = state.best_fitness;
    Ok(trace.finish(Individual::bits(&state.best), best_fitness))
}
