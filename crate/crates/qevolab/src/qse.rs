//! Quantum swarm: particle swarm optimization over qubit angles.
//!
//! Each particle's position is a vector of angles `theta in [0, pi/2]`,
//! one per locus, carrying the observation semantics of the qubit
//! genotype: a locus observes bit 1 with probability `sin^2 theta`. The
//! velocity update is the plain two-attractor form
//!
//! ```text
//! v(t+1) = v(t) + c1 * rand() * (pbest - present) + c2 * rand() * (gbest - present)
//! present(t+1) = present(t) + v(t+1)
//! ```
//!
//! with independent uniform draws per component, velocity clamped to
//! `±v_max` and positions clamped back into `[0, pi/2]`. No inertia
//! weight and no constriction factor.
//!
//! Binary problems observe a bit string from `sin^2 theta` each
//! generation; TSP uses the `sin^2 theta` values directly as random keys
//! and decodes them into a tour (fitness is the negated tour length).

use crate::error::{Error, Result};
use crate::problems::{decode_random_keys, tsp_length, BinaryFitness, TspInstance};
use crate::qubit::BitString;
use crate::rng::Rng;
use crate::run::{Individual, RunRecord, TraceBuilder};
use std::f64::consts::FRAC_PI_2;

/// One swarm member.
#[derive(Debug, Clone)]
pub struct Particle {
    /// Current angle vector, each component in `[0, pi/2]`.
    pub present: Vec<f64>,
    pub velocity: Vec<f64>,
    /// Best position this particle has evaluated, with its fitness.
    pub pbest: Vec<f64>,
    pub pbest_fitness: f64,
}

impl Particle {
    fn new(present: Vec<f64>) -> Self {
        let dims = present.len();
        Self {
            pbest: present.clone(),
            present,
            velocity: vec![0.0; dims],
            pbest_fitness: f64::NEG_INFINITY,
        }
    }
}

/// QSE parameters.
#[derive(Debug, Clone)]
pub struct QseParams {
    /// Cognitive acceleration constant.
    pub c1: f64,
    /// Social acceleration constant.
    pub c2: f64,
    /// Velocity clamp.
    pub v_max: f64,
    pub swarm_size: usize,
    pub generations: usize,
}

impl Default for QseParams {
    fn default() -> Self {
        Self {
            c1: 2.0,
            c2: 2.0,
            v_max: std::f64::consts::PI / 8.0,
            swarm_size: 20,
            generations: 500,
        }
    }
}

impl QseParams {
    pub fn validate(&self) -> Result<()> {
        if self.c1 < 0.0 || self.c2 < 0.0 {
            return Err(Error::InvalidArgument("c1 and c2 must be >= 0".into()));
        }
        if self.v_max <= 0.0 {
            return Err(Error::InvalidArgument("v_max must be positive".into()));
        }
        if self.swarm_size < 1 {
            return Err(Error::InvalidArgument("swarm must have a particle".into()));
        }
        Ok(())
    }
}

/// One velocity-and-position update. Consumes exactly two uniform draws
/// per component (the `c1` and `c2` terms), in component order.
pub fn qse_step(particle: &mut Particle, gbest: &[f64], params: &QseParams, rng: &mut Rng) {
    debug_assert_eq!(particle.present.len(), gbest.len());
    for i in 0..particle.present.len() {
        let r1 = rng.next_f64();
        let r2 = rng.next_f64();
        let v = particle.velocity[i]
            + params.c1 * r1 * (particle.pbest[i] - particle.present[i])
            + params.c2 * r2 * (gbest[i] - particle.present[i]);
        let v = v.clamp(-params.v_max, params.v_max);
        particle.velocity[i] = v;
        particle.present[i] = (particle.present[i] + v).clamp(0.0, FRAC_PI_2);
    }
}

fn run_swarm(
    dims: usize,
    params: &QseParams,
    rng: &mut Rng,
    mut evaluate: impl FnMut(&[f64], &mut Rng) -> f64,
) -> (Vec<f64>, f64, TraceBuilder) {
    let seed = rng.seed();
    // positions start uniform over [0, pi/2] (one draw per component in
    // particle order) with zero velocity
    let mut swarm: Vec<Particle> = (0..params.swarm_size)
        .map(|_| Particle::new((0..dims).map(|_| rng.next_f64() * FRAC_PI_2).collect()))
        .collect();
    let mut gbest: Vec<f64> = swarm[0].present.clone();
    let mut gbest_fitness = f64::NEG_INFINITY;
    let mut trace = TraceBuilder::new(seed);

    let mut evaluate_swarm = |swarm: &mut [Particle],
                              gbest: &mut Vec<f64>,
                              gbest_fitness: &mut f64,
                              rng: &mut Rng| {
        let mut sum = 0.0;
        for particle in swarm.iter_mut() {
            let fitness = evaluate(&particle.present, rng);
            sum += fitness;
            if fitness > particle.pbest_fitness {
                particle.pbest_fitness = fitness;
                particle.pbest = particle.present.clone();
            }
            if fitness > *gbest_fitness {
                *gbest_fitness = fitness;
                *gbest = particle.present.clone();
            }
        }
        sum / swarm.len() as f64
    };

    let mean = evaluate_swarm(&mut swarm, &mut gbest, &mut gbest_fitness, rng);
    trace.push(gbest_fitness, mean, params.swarm_size as u64);

    for _ in 0..params.generations {
        for particle in swarm.iter_mut() {
            qse_step(particle, &gbest, params, rng);
        }
        let mean = evaluate_swarm(&mut swarm, &mut gbest, &mut gbest_fitness, rng);
        trace.push(gbest_fitness, mean, params.swarm_size as u64);
    }

    (gbest, gbest_fitness, trace)
}

/// Observes a bit string from an angle vector: bit `i` is 1 with
/// probability `sin^2 theta_i`, one uniform draw per locus.
pub fn observe_angles(angles: &[f64], rng: &mut Rng) -> BitString {
    BitString::new(
        angles
            .iter()
            .map(|&t| rng.next_f64() < t.sin().powi(2))
            .collect(),
    )
}

/// Runs QSE against a binary fitness function.
pub fn run_qse(
    problem: &impl BinaryFitness,
    params: &QseParams,
    rng: &mut Rng,
) -> Result<RunRecord> {
    params.validate()?;
    let mut best_bits: Option<(BitString, f64)> = None;
    let (_, gbest_fitness, trace) =
        run_swarm(problem.genotype_len(), params, rng, |angles, rng| {
            let bits = observe_angles(angles, rng);
            let fitness = problem.evaluate(&bits);
            if best_bits.as_ref().is_none_or(|(_, f)| fitness > *f) {
                best_bits = Some((bits, fitness));
            }
            fitness
        });
    let (bits, fitness) = best_bits.unwrap();
    debug_assert_eq!(fitness, gbest_fitness);
    Ok(trace.finish(Individual::bits(&bits), fitness))
}

/// Runs QSE on a TSP instance: one angle per city, `sin^2 theta` as
/// random keys. Recorded fitness is `-tour_length`.
pub fn run_qse_tsp(inst: &TspInstance, params: &QseParams, rng: &mut Rng) -> Result<RunRecord> {
    params.validate()?;
    let (gbest, gbest_fitness, trace) = run_swarm(inst.cities(), params, rng, |angles, _| {
        let keys: Vec<f64> = angles.iter().map(|&t| t.sin().powi(2)).collect();
        let tour = decode_random_keys(&keys);
        -tsp_length(inst, &tour).expect("random keys decode to permutations")
    });
    let keys: Vec<f64> = gbest.iter().map(|&t| t.sin().powi(2)).collect();
    let tour = decode_random_keys(&keys);
    Ok(trace.finish(Individual::Permutation(tour), gbest_fitness))
}
