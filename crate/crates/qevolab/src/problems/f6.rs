//! The F6 objective and its two-dimensional box domain.

use crate::error::{Error, Result};
use serde::Deserialize;

/// F6 evaluated exactly as printed in the source it comes from:
///
/// ```text
/// f6(x, y) = 0.5 - ((sin sqrt(x^2+y^2))^2 - 0.5) / (1 + 0.001 (x^2+y^2)^2)
/// ```
///
/// Note the squared sum-of-squares in the denominator; the classical
/// Schaffer F6 uses `(1 + 0.001 (x^2+y^2))^2` instead. The maximum is
/// 1.0 at the origin either way.
pub fn f6(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    0.5 - (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2 * r2)
}

/// Axis-aligned box domain for the two F6 variables.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawDomain")]
pub struct F6Domain {
    lower: [f64; 2],
    upper: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    lower: [f64; 2],
    upper: [f64; 2],
}

impl TryFrom<RawDomain> for F6Domain {
    type Error = Error;
    fn try_from(raw: RawDomain) -> Result<Self> {
        F6Domain::new(raw.lower, raw.upper)
    }
}

impl F6Domain {
    pub fn new(lower: [f64; 2], upper: [f64; 2]) -> Result<Self> {
        for axis in 0..2 {
            if !(lower[axis] < upper[axis]) {
                return Err(Error::InvalidArgument(format!(
                    "domain axis {axis}: lower {} must be below upper {}",
                    lower[axis], upper[axis]
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The default benchmark domain `[-100, 100]^2`.
    pub fn standard() -> Self {
        Self {
            lower: [-100.0, -100.0],
            upper: [100.0, 100.0],
        }
    }

    pub fn lower(&self, axis: usize) -> f64 {
        self.lower[axis]
    }

    pub fn upper(&self, axis: usize) -> f64 {
        self.upper[axis]
    }
}

/// F6 over a box domain, packaged for the benchmark harness.
#[derive(Debug, Clone, Copy)]
pub struct F6Problem {
    pub domain: F6Domain,
}

impl F6Problem {
    pub fn new(domain: F6Domain) -> Self {
        Self { domain }
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        f6(x, y)
    }
}
