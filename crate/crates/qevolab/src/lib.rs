//! Side-by-side laboratory for quantum-inspired evolutionary heuristics
//! and Grover-based search, at desk scale and fully deterministic.
//!
//! Two families live here. The quantum-inspired heuristics run on
//! classical probabilistic genotypes:
//!
//! * [`qiga`] — many-universes GA with interference crossover (TSP),
//! * [`gqa`] — qubit chromosomes with rotation-gate updates (binary),
//! * [`qea`] — guide-chromosome EDA with diagonal crossover (binary),
//! * [`qse`] — particle swarm over qubit angles (binary and TSP),
//! * [`qiea`] — rectangular-pulse EDA for continuous variables (F6).
//!
//! The "true" quantum algorithms run on a dense statevector simulator
//! with an explicit individual/fitness register pair:
//!
//! * [`qsim`] — the register-pair statevector engine,
//! * [`grover`] — unknown-count Grover search, maximum finding, RQGA.
//!
//! [`problems`] supplies the benchmark problems together with exact
//! desk-scale oracles (knapsack DP, TSP brute force, F6 analytic), and
//! [`bench`] drives seeded multi-trial experiments with CSV/JSON output.
//! Every run is reproducible: all randomness flows through [`rng::Rng`],
//! and a fixed configuration yields byte-identical result files.

pub mod bench;
pub mod error;
pub mod gqa;
pub mod grover;
pub mod problems;
pub mod qea;
pub mod qiea;
pub mod qiga;
pub mod qse;
pub mod qsim;
pub mod qubit;
pub mod rng;
pub mod run;

pub use error::{Error, Result};
pub use rng::Rng;
