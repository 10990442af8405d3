//! Benchmark problems with exact desk-scale oracles.
//!
//! Three problem families are built in: the 0-1 knapsack (binary
//! genotype, dynamic-programming oracle), the symmetric TSP (permutation
//! genotype, brute-force oracle) and the F6 function (two real variables,
//! analytic optimum). Each instance type validates on construction and is
//! immutable afterwards.

mod decode;
mod f6;
mod knapsack;
mod onemax;
mod tsp;

pub use decode::{decode_bits_to_real, decode_random_keys};
pub use f6::{f6, F6Domain, F6Problem};
pub use knapsack::{
    knapsack_fitness, knapsack_oracle_dp, knapsack_repair, KnapsackInstance, KnapsackProblem,
    KnapsackRegisterProblem,
};
pub use onemax::OneMax;
pub use tsp::{tsp_length, tsp_oracle_bruteforce, TspInstance};

use crate::qubit::BitString;

/// Decode-and-evaluate mapping from a binary genotype to a real fitness.
/// Higher is better. Evaluation must be deterministic.
pub trait BinaryFitness {
    /// Required bit-string length.
    fn genotype_len(&self) -> usize;

    /// Fitness of a string of exactly `genotype_len()` bits.
    fn evaluate(&self, bits: &BitString) -> f64;

    /// Optional in-place feasibility repair; identity by default.
    fn repair(&self, _bits: &mut BitString) {}
}

/// Integer-scaled fitness over `N`-bit individuals, the image
/// `f: {0,1}^N -> [0, 2^M)` loaded into the quantum fitness register.
pub trait RegisterFitness {
    /// Width N of the individual register.
    fn individual_bits(&self) -> usize;

    /// Width M of the fitness register.
    fn fitness_bits(&self) -> usize;

    /// Scaled fitness of individual `u`; must fit in `fitness_bits()` bits.
    fn scaled_fitness(&self, u: u64) -> u64;
}

/// Integer scaling for the quantum fitness register:
/// `round(f * (2^M - 1) / f_max_bound)`.
///
/// When the supplied bound already fits the register (`f_max_bound <=
/// 2^M - 1`) the bound is widened to `2^M - 1`, which makes the map the
/// identity and keeps desk-scale comparisons against exact oracles
/// lossless. The map is strictly monotone in `f` either way.
pub fn scale_to_register(f: u64, f_max_bound: u64, fitness_bits: usize) -> u64 {
    let top = (1u64 << fitness_bits) - 1;
    let bound = f_max_bound.max(top).max(1);
    (((f as u128) * (top as u128) + (bound as u128) / 2) / (bound as u128)) as u64
}
