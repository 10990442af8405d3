//! Dense statevector simulation of the individual/fitness register pair.
//!
//! A state holds `2^(N+M)` complex amplitudes over an `N`-qubit
//! individual register entangled with an `M`-qubit fitness register.
//! Basis index layout: `index = u * 2^M + f` with `u` the individual
//! (high bits) and `f` the fitness value (low bits). The layout is fixed
//! so oracles and tests can be bit-exact.
//!
//! The Grover step used for fitness search composes
//!
//! 1. the fitness embedding `|u>|t> -> |u>|t XOR f(u)>`,
//! 2. a phase oracle negating basis states whose fitness value exceeds
//!    the threshold,
//! 3. the same embedding again (uncompute), and
//! 4. the diffusion operator `2|s><s| - I` on the individual register.
//!
//! Uncomputing before diffusion returns the fitness register to |0>, so
//! the composite acts on the individual register exactly like a textbook
//! Grover iteration with the predicate `f(u) > threshold`. Diffusing
//! while still entangled would leave the valid manifold; the oracle
//! tests compare the composite against the explicitly constructed Grover
//! operator to pin this down.
//!
//! `StateVector` deliberately implements neither `Clone` nor `Copy`:
//! search procedures re-prepare states instead of duplicating them,
//! mirroring the no-cloning constraint of the hardware they model.

use crate::error::{Error, Result};
use crate::rng::Rng;
use num_complex::Complex64;

/// Maximum total qubits (individual + fitness).
pub const MAX_QUBITS: usize = 24;

/// Norm drift allowed per operation.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Residual amplitude mass tolerated outside the fitness-zero manifold
/// when the diffusion operator requires a disentangled fitness register.
pub const DISENTANGLE_TOLERANCE: f64 = 1e-9;

/// Widths of the individual and fitness registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    individual_bits: usize,
    fitness_bits: usize,
}

impl RegisterLayout {
    pub fn new(individual_bits: usize, fitness_bits: usize) -> Result<Self> {
        if individual_bits < 1 || fitness_bits < 1 {
            return Err(Error::InvalidArgument(
                "both registers need at least one qubit".into(),
            ));
        }
        if individual_bits + fitness_bits > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "{individual_bits}+{fitness_bits} qubits exceed the {MAX_QUBITS}-qubit guard"
            )));
        }
        Ok(Self {
            individual_bits,
            fitness_bits,
        })
    }

    pub fn individual_bits(&self) -> usize {
        self.individual_bits
    }

    pub fn fitness_bits(&self) -> usize {
        self.fitness_bits
    }

    /// Number of individual basis states, `2^N`.
    pub fn individual_dim(&self) -> u64 {
        1 << self.individual_bits
    }

    /// Number of fitness basis states, `2^M`.
    pub fn fitness_dim(&self) -> u64 {
        1 << self.fitness_bits
    }

    pub fn total_dim(&self) -> u64 {
        1 << (self.individual_bits + self.fitness_bits)
    }
}

/// Which register to measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Register {
    Individual,
    Fitness,
}

/// Dense register-pair state.
#[derive(Debug)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The preparation of the search: amplitude `1/sqrt(2^N)` on every
    /// `|u>|0>`, zero elsewhere.
    pub fn uniform(layout: RegisterLayout) -> Self {
        let mut amps = vec![Complex64::ZERO; layout.total_dim() as usize];
        let a = 1.0 / (layout.individual_dim() as f64).sqrt();
        let fdim = layout.fitness_dim() as usize;
        for u in 0..layout.individual_dim() as usize {
            amps[u * fdim] = Complex64::new(a, 0.0);
        }
        Self { layout, amps }
    }

    /// Basis state `|u>|f>`.
    pub fn basis(layout: RegisterLayout, u: u64, fitness: u64) -> Result<Self> {
        if u >= layout.individual_dim() || fitness >= layout.fitness_dim() {
            return Err(Error::Range(format!(
                "basis state ({u}, {fitness}) outside register range"
            )));
        }
        let mut amps = vec![Complex64::ZERO; layout.total_dim() as usize];
        amps[(u * layout.fitness_dim() + fitness) as usize] = Complex64::ONE;
        Ok(Self { layout, amps })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, u: u64, fitness: u64) -> Complex64 {
        self.amps[(u * self.layout.fitness_dim() + fitness) as usize]
    }

    /// Total squared amplitude; 1 within tolerance after any operation.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Marginal probability of measuring `u` on the individual register.
    pub fn probability_of_individual(&self, u: u64) -> f64 {
        let fdim = self.layout.fitness_dim() as usize;
        let base = u as usize * fdim;
        self.amps[base..base + fdim]
            .iter()
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Applies the fitness embedding `|u>|t> -> |u>|t XOR f(u)>`. A
    /// basis permutation, hence unitary; applying it twice restores the
    /// original state.
    pub fn apply_fitness_xor(&mut self, f: &dyn Fn(u64) -> u64) -> Result<()> {
        let fdim = self.layout.fitness_dim();
        for u in 0..self.layout.individual_dim() {
            let image = f(u);
            if image >= fdim {
                return Err(Error::Range(format!(
                    "fitness {image} of individual {u} does not fit {} bits",
                    self.layout.fitness_bits
                )));
            }
            if image == 0 {
                continue;
            }
            let base = (u * fdim) as usize;
            for t in 0..fdim {
                let xored = t ^ image;
                if t < xored {
                    self.amps.swap(base + t as usize, base + xored as usize);
                }
            }
        }
        Ok(())
    }

    /// Negates the amplitude of every basis state `(u, fitness)` the
    /// predicate selects.
    pub fn apply_phase_oracle(&mut self, predicate: &dyn Fn(u64, u64) -> bool) {
        let fdim = self.layout.fitness_dim();
        for u in 0..self.layout.individual_dim() {
            let base = (u * fdim) as usize;
            for t in 0..fdim {
                if predicate(u, t) {
                    self.amps[base + t as usize] = -self.amps[base + t as usize];
                }
            }
        }
    }

    /// Residual probability mass outside the fitness-zero manifold.
    fn entangled_mass(&self) -> f64 {
        let fdim = self.layout.fitness_dim() as usize;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i % fdim != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Applies `(2|s><s| - I) (x) I`: the inversion about the mean on the
    /// individual register, identity on the fitness register. Requires
    /// the fitness register to be in the all-zero product state, i.e.
    /// amplitude mass outside fitness = 0 at most 1e-9.
    pub fn apply_diffusion_individual(&mut self) -> Result<()> {
        let mass = self.entangled_mass();
        if mass > DISENTANGLE_TOLERANCE {
            return Err(Error::State(format!(
                "fitness register is entangled (mass {mass:.3e} outside |0>)"
            )));
        }
        let udim = self.layout.individual_dim() as usize;
        let fdim = self.layout.fitness_dim() as usize;
        for t in 0..fdim {
            let mut sum = Complex64::ZERO;
            for u in 0..udim {
                sum += self.amps[u * fdim + t];
            }
            let twice_mean = sum * Complex64::new(2.0 / udim as f64, 0.0);
            for u in 0..udim {
                let a = &mut self.amps[u * fdim + t];
                *a = twice_mean - *a;
            }
        }
        Ok(())
    }

    /// One Grover iteration marking individuals with `f(u) > threshold`:
    /// embed, flip phases, uncompute, diffuse. Requires (and restores) a
    /// fitness register in |0>.
    pub fn grover_iteration(&mut self, f: &dyn Fn(u64) -> u64, threshold: u64) -> Result<()> {
        self.apply_fitness_xor(f)?;
        self.apply_phase_oracle(&|_, fitness| fitness > threshold);
        self.apply_fitness_xor(f)?;
        self.apply_diffusion_individual()
    }

    /// Grover iteration marking individuals with `f(u) == target`; used
    /// to recover a maximizing individual once the maximum value is known.
    pub fn grover_iteration_matching(&mut self, f: &dyn Fn(u64) -> u64, target: u64) -> Result<()> {
        self.apply_fitness_xor(f)?;
        self.apply_phase_oracle(&|_, fitness| fitness == target);
        self.apply_fitness_xor(f)?;
        self.apply_diffusion_individual()
    }

    /// Measures one register: samples an outcome from its marginal
    /// distribution, projects the state onto the outcome subspace and
    /// renormalizes. The superposition over the measured register is
    /// gone afterwards; re-prepare rather than copy to search again.
    pub fn measure_register(&mut self, which: Register, rng: &mut Rng) -> u64 {
        let udim = self.layout.individual_dim();
        let fdim = self.layout.fitness_dim();
        let outcomes = match which {
            Register::Individual => udim,
            Register::Fitness => fdim,
        };
        // marginal distribution of the chosen register
        let mut marginal = vec![0.0f64; outcomes as usize];
        for u in 0..udim {
            for t in 0..fdim {
                let p = self.amps[(u * fdim + t) as usize].norm_sqr();
                match which {
                    Register::Individual => marginal[u as usize] += p,
                    Register::Fitness => marginal[t as usize] += p,
                }
            }
        }
        // sample the outcome from one uniform draw
        let mut target = rng.next_f64() * marginal.iter().sum::<f64>();
        let mut outcome = outcomes - 1;
        for (i, &p) in marginal.iter().enumerate() {
            target -= p;
            if target <= 0.0 {
                outcome = i as u64;
                break;
            }
        }
        // collapse onto the outcome subspace and renormalize
        let keep = marginal[outcome as usize].sqrt();
        for u in 0..udim {
            for t in 0..fdim {
                let idx = (u * fdim + t) as usize;
                let matches = match which {
                    Register::Individual => u == outcome,
                    Register::Fitness => t == outcome,
                };
                if matches {
                    self.amps[idx] /= keep;
                } else {
                    self.amps[idx] = Complex64::ZERO;
                }
            }
        }
        outcome
    }
}
