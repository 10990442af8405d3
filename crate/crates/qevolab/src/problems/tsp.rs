//! Symmetric TSP: instance type, closed-tour length and the brute-force
//! oracle.

use crate::error::{Error, Result};
use serde::Deserialize;

/// Symmetric TSP instance over a full distance matrix.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawTsp")]
pub struct TspInstance {
    distances: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTsp {
    distances: Vec<Vec<f64>>,
}

impl TryFrom<RawTsp> for TspInstance {
    type Error = Error;
    fn try_from(raw: RawTsp) -> Result<Self> {
        TspInstance::new(raw.distances)
    }
}

impl TspInstance {
    pub fn new(distances: Vec<Vec<f64>>) -> Result<Self> {
        let n = distances.len();
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "tsp needs at least 3 cities, got {n}"
            )));
        }
        for (i, row) in distances.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "distance row {i} has length {} in a {n}-city instance",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "distance [{i}][{j}] = {d} must be finite and nonnegative"
                    )));
                }
                if (d - distances[j][i]).abs() > 1e-9 {
                    return Err(Error::InvalidArgument(format!(
                        "distance matrix is not symmetric at [{i}][{j}]"
                    )));
                }
            }
            if row[i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry [{i}][{i}] must be zero"
                )));
            }
        }
        Ok(Self { distances })
    }

    /// Cities on a planar grid with Euclidean distances.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let n = points.len();
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let dx = points[i].0 - points[j].0;
                let dy = points[i].1 - points[j].1;
                d[i][j] = (dx * dx + dy * dy).sqrt();
            }
        }
        Self::new(d)
    }

    pub fn cities(&self) -> usize {
        self.distances.len()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.distances[a][b]
    }
}

/// Length of the closed cycle visiting the cities in `tour` order,
/// including the return edge.
pub fn tsp_length(inst: &TspInstance, tour: &[usize]) -> Result<f64> {
    let n = inst.cities();
    if tour.len() != n {
        return Err(Error::InvalidArgument(format!(
            "tour has {} cities, instance has {n}",
            tour.len()
        )));
    }
    let mut seen = vec![false; n];
    for &c in tour {
        if c >= n || seen[c] {
            return Err(Error::InvalidArgument(format!(
                "tour is not a permutation of 0..{n}"
            )));
        }
        seen[c] = true;
    }
    let mut total = 0.0;
    for i in 0..n {
        total += inst.distance(tour[i], tour[(i + 1) % n]);
    }
    Ok(total)
}

/// Exact optimum by enumerating all `(n-1)!/2` distinct closed tours
/// with city 0 fixed. Guarded to `n <= 10`.
pub fn tsp_oracle_bruteforce(inst: &TspInstance) -> Result<(Vec<usize>, f64)> {
    let n = inst.cities();
    if n > 10 {
        return Err(Error::Size(format!(
            "brute-force oracle limited to 10 cities, got {n}"
        )));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best_tour = Vec::new();
    let mut best_len = f64::INFINITY;
    permute(&mut rest, 0, &mut |suffix| {
        // Each cycle appears twice as a directed tour; keep one
        // orientation by requiring the first city after 0 to be the
        // smaller endpoint.
        if suffix[0] > suffix[suffix.len() - 1] {
            return;
        }
        let mut tour = Vec::with_capacity(n);
        tour.push(0);
        tour.extend_from_slice(suffix);
        let len = tsp_length(inst, &tour).expect("generated tours are permutations");
        if len < best_len {
            best_len = len;
            best_tour = tour;
        }
    });
    Ok((best_tour, best_len))
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
