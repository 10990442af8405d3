//! Probabilistic qubit genotypes: amplitude pairs, chromosomes and
//! observation.
//!
//! A [`QubitGene`] is a real amplitude pair `(alpha, beta)` with
//! `alpha^2 + beta^2 = 1`. Observation convention: a locus collapses to
//! bit 1 with probability `beta^2` (and to bit 0 with `alpha^2`). Real
//! amplitudes suffice for the rotation-gate updates used here; the full
//! complex statevector lives in [`crate::qsim`].

use crate::error::{Error, Result};
use crate::rng::Rng;
use std::fmt;

/// Tolerance on `alpha^2 + beta^2 - 1` for gene construction and rotation.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// One locus of a probabilistic genotype: amplitudes `(alpha, beta)`
/// over the basis states |0> and |1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitGene {
    alpha: f64,
    beta: f64,
}

impl QubitGene {
    /// Builds a gene, checking normalization to within [`NORM_TOLERANCE`].
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let norm = alpha * alpha + beta * beta;
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "qubit gene not normalized: alpha^2+beta^2 = {norm}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Gene at angle `theta`: `(cos theta, sin theta)`. Always normalized.
    pub fn from_angle(theta: f64) -> Self {
        Self {
            alpha: theta.cos(),
            beta: theta.sin(),
        }
    }

    /// The uniform superposition `(1/sqrt(2), 1/sqrt(2))`.
    pub fn balanced() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: h, beta: h }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Probability of observing bit 1.
    pub fn prob_one(&self) -> f64 {
        self.beta * self.beta
    }

    /// Amplitude angle `atan2(beta, alpha)`.
    pub fn angle(&self) -> f64 {
        self.beta.atan2(self.alpha)
    }

    /// Deviation of `alpha^2 + beta^2` from 1.
    pub fn norm_error(&self) -> f64 {
        (self.alpha * self.alpha + self.beta * self.beta - 1.0).abs()
    }
}

/// Applies the rotation gate: `(alpha', beta') =
/// (alpha cos t - beta sin t, alpha sin t + beta cos t)`.
pub fn rotate(gene: QubitGene, theta: f64) -> QubitGene {
    let (sin, cos) = theta.sin_cos();
    QubitGene {
        alpha: gene.alpha * cos - gene.beta * sin,
        beta: gene.alpha * sin + gene.beta * cos,
    }
}

/// Fixed-length string of qubit genes.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitChromosome {
    genes: Vec<QubitGene>,
}

impl QubitChromosome {
    pub fn new(genes: Vec<QubitGene>) -> Self {
        Self { genes }
    }

    /// Chromosome of `len` balanced genes (the uniform superposition).
    pub fn balanced(len: usize) -> Self {
        Self {
            genes: vec![QubitGene::balanced(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn genes(&self) -> &[QubitGene] {
        &self.genes
    }

    pub fn gene(&self, i: usize) -> QubitGene {
        self.genes[i]
    }

    pub fn set_gene(&mut self, i: usize, gene: QubitGene) {
        self.genes[i] = gene;
    }

    /// Largest per-gene normalization error.
    pub fn max_norm_error(&self) -> f64 {
        self.genes
            .iter()
            .map(|g| g.norm_error())
            .fold(0.0, f64::max)
    }
}

/// Samples a classical string from a chromosome. Bit `i` is 1 with
/// probability `beta_i^2`; exactly one uniform draw is consumed per
/// locus, in locus order.
pub fn observe(chromosome: &QubitChromosome, rng: &mut Rng) -> BitString {
    let bits = chromosome
        .genes
        .iter()
        .map(|g| rng.next_f64() < g.prob_one())
        .collect();
    BitString::new(bits)
}

/// Classical bit string produced by observation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    /// Parses a string of '0'/'1' characters, most significant first.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bit string may contain only 0/1, found {other:?}"
                    )))
                }
            }
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of 1 bits.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}
