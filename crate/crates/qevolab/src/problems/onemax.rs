//! OneMax, the classic binary diagnostic: fitness is the number of ones.

use super::BinaryFitness;
use crate::qubit::BitString;

/// OneMax over `len` bits. Optimum is the all-ones string with fitness `len`.
#[derive(Debug, Clone, Copy)]
pub struct OneMax {
    pub len: usize,
}

impl OneMax {
    pub fn new(len: usize) -> Self {
        Self { len }
    }
}

impl BinaryFitness for OneMax {
    fn genotype_len(&self) -> usize {
        self.len
    }

    fn evaluate(&self, bits: &BitString) -> f64 {
        bits.ones() as f64
    }
}
