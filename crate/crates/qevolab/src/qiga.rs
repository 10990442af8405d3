//! Many-universes genetic algorithm for permutation problems.
//!
//! Each universe holds its own population of tours. Offspring are built
//! by the interference crossover: genes are collected by walking the
//! diagonals of a matrix with one parent per universe, and a gene that
//! would duplicate an already-placed city is skipped rightward (with
//! wraparound) inside its own parent row until an unused city appears.
//!
//! Recorded fitness is the negated tour length, so best-so-far traces
//! are monotone nondecreasing like every other algorithm here.

use crate::error::{Error, Result};
use crate::problems::{tsp_length, TspInstance};
use crate::rng::Rng;
use crate::run::{Individual, RunRecord, TraceBuilder};

/// QIGA parameters.
#[derive(Debug, Clone)]
pub struct QigaParams {
    /// Number of universes (parent rows for the diagonal walk).
    pub universes: usize,
    /// Population per universe.
    pub population: usize,
    /// Per-offspring probability of one swap mutation.
    pub mutation_rate: f64,
    /// Members of each universe kept from the previous generation.
    pub elitism: usize,
    pub generations: usize,
}

impl Default for QigaParams {
    fn default() -> Self {
        Self {
            universes: 4,
            population: 20,
            mutation_rate: 0.2,
            elitism: 2,
            generations: 200,
        }
    }
}

impl QigaParams {
    pub fn validate(&self) -> Result<()> {
        if self.universes < 2 {
            return Err(Error::InvalidArgument("need at least 2 universes".into()));
        }
        if self.population < 2 {
            return Err(Error::InvalidArgument(
                "need at least 2 chromosomes per universe".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidArgument(
                "mutation_rate must lie in [0,1]".into(),
            ));
        }
        if self.elitism >= self.population {
            return Err(Error::InvalidArgument(
                "elitism must leave room for offspring".into(),
            ));
        }
        Ok(())
    }
}

/// Builds one offspring by walking the diagonals of the parent matrix.
///
/// Gene `j` (1-based) is drawn from parent `(start_row + j - 1) mod U` at
/// position `j`; duplicates are skipped rightward within that parent,
/// wrapping at the end of the row.
pub fn interference_crossover(parents: &[Vec<usize>], start_row: usize) -> Result<Vec<usize>> {
    let universes = parents.len();
    if universes == 0 {
        return Err(Error::InvalidArgument("no parents supplied".into()));
    }
    let n = parents[0].len();
    if parents.iter().any(|p| p.len() != n) {
        return Err(Error::InvalidArgument(
            "parents must all have the same length".into(),
        ));
    }
    if start_row >= universes {
        return Err(Error::InvalidArgument(format!(
            "start_row {start_row} out of range for {universes} universes"
        )));
    }
    let mut used = vec![false; n];
    let mut offspring = Vec::with_capacity(n);
    for j in 0..n {
        let row = &parents[(start_row + j) % universes];
        let mut pos = j;
        let mut steps = 0;
        while used[row[pos]] {
            pos = (pos + 1) % n;
            steps += 1;
            assert!(steps <= n, "parent row is not a permutation");
        }
        used[row[pos]] = true;
        offspring.push(row[pos]);
    }
    Ok(offspring)
}

/// Roulette selection weighted by inverse tour length.
pub fn select_parent<'a>(
    population: &'a [Vec<usize>],
    inst: &TspInstance,
    rng: &mut Rng,
) -> &'a Vec<usize> {
    assert!(!population.is_empty());
    let weights: Vec<f64> = population
        .iter()
        .map(|tour| 1.0 / tsp_length(inst, tour).expect("population holds valid tours").max(f64::MIN_POSITIVE))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut target = rng.next_f64() * total;
    for (tour, w) in population.iter().zip(&weights) {
        target -= w;
        if target <= 0.0 {
            return tour;
        }
    }
    population.last().unwrap()
}

/// With probability `rate`, swaps two distinct positions.
pub fn swap_mutation(perm: &mut [usize], rate: f64, rng: &mut Rng) {
    if perm.len() < 2 || !rng.next_bool(rate) {
        return;
    }
    let a = rng.next_index(perm.len());
    let mut b = rng.next_index(perm.len() - 1);
    if b >= a {
        b += 1;
    }
    perm.swap(a, b);
}

/// Runs QIGA on a TSP instance. Recorded fitness is `-tour_length`.
pub fn run_qiga(inst: &TspInstance, params: &QigaParams, rng: &mut Rng) -> Result<RunRecord> {
    params.validate()?;
    let n = inst.cities();
    let seed = rng.seed();

    // one random population per universe
    let mut universes: Vec<Vec<Vec<usize>>> = (0..params.universes)
        .map(|_| {
            (0..params.population)
                .map(|_| rng.next_permutation(n))
                .collect()
        })
        .collect();

    let length_of = |tour: &[usize]| tsp_length(inst, tour).expect("tours stay valid");
    let mut best_tour = universes[0][0].clone();
    let mut best_len = length_of(&best_tour);
    let mut trace = TraceBuilder::new(seed);

    let record_generation =
        |universes: &[Vec<Vec<usize>>], best_len: f64, trace: &mut TraceBuilder| {
            let mut sum = 0.0;
            let mut count = 0u64;
            for universe in universes {
                for tour in universe {
                    sum -= length_of(tour);
                    count += 1;
                }
            }
            trace.push(-best_len, sum / count as f64, count);
        };

    for universe in &universes {
        for tour in universe {
            let len = length_of(tour);
            if len < best_len {
                best_len = len;
                best_tour = tour.clone();
            }
        }
    }
    record_generation(&universes, best_len, &mut trace);

    for _ in 0..params.generations {
        // one roulette parent per universe forms the crossover matrix
        let parents: Vec<Vec<usize>> = universes
            .iter()
            .map(|u| select_parent(u, inst, rng).clone())
            .collect();

        for universe in universes.iter_mut() {
            // elites survive; the rest of the next generation is bred
            let mut ranked = universe.clone();
            ranked.sort_by(|a, b| length_of(a).total_cmp(&length_of(b)));
            ranked.truncate(params.elitism);

            let mut next = ranked;
            for o in 0..params.population - next.len() {
                let mut child = interference_crossover(&parents, o % params.universes)?;
                swap_mutation(&mut child, params.mutation_rate, rng);
                next.push(child);
            }
            *universe = next;
        }

        for universe in &universes {
            for tour in universe {
                let len = length_of(tour);
                if len < best_len {
                    best_len = len;
                    best_tour = tour.clone();
                }
            }
        }
        record_generation(&universes, best_len, &mut trace);
    }

    Ok(trace.finish(Individual::Permutation(best_tour), -best_len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::tsp_oracle_bruteforce;

    #[test]
    fn crossover_of_identical_parents_is_identity() {
        let c = vec![3, 1, 0, 2];
        let parents = vec![c.clone(), c.clone(), c.clone()];
        for start in 0..3 {
            assert_eq!(interference_crossover(&parents, start).unwrap(), c);
        }
    }

    #[test]
    fn crossover_skip_rule_hand_trace() {
        // A=0 B=1 C=2 D=3: ABCD x BADC from row 0 gives ADCB
        let parents = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]];
        let child = interference_crossover(&parents, 0).unwrap();
        assert_eq!(child, vec![0, 3, 2, 1]);
    }

    #[test]
    fn crossover_two_element_wraparound() {
        let parents = vec![vec![0, 1], vec![1, 0]];
        let child = interference_crossover(&parents, 0).unwrap();
        assert_eq!(child, vec![0, 1]);
    }

    #[test]
    fn crossover_rejects_mismatched_lengths() {
        let parents = vec![vec![0, 1, 2], vec![0, 1]];
        assert!(interference_crossover(&parents, 0).is_err());
    }

    #[test]
    fn crossover_always_yields_permutations() {
        let mut rng = Rng::new(211);
        for _ in 0..10_000 {
            let universes = 2 + rng.next_index(4);
            let n = 2 + rng.next_index(9);
            let parents: Vec<Vec<usize>> =
                (0..universes).map(|_| rng.next_permutation(n)).collect();
            let start = rng.next_index(universes);
            let child = interference_crossover(&parents, start).unwrap();
            let mut seen = vec![false; n];
            for &c in &child {
                assert!(!seen[c]);
                seen[c] = true;
            }
        }
    }

    fn unit_square() -> TspInstance {
        TspInstance::from_points(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn selection_single_member() {
        let inst = unit_square();
        let pop = vec![vec![0, 1, 2, 3]];
        let mut rng = Rng::new(1);
        assert_eq!(select_parent(&pop, &inst, &mut rng), &pop[0]);
    }

    #[test]
    fn selection_prefers_short_tours() {
        // tour a avoids the 2.5e8 edge (length 2.5); tour b crosses it
        let inst = TspInstance::new(vec![
            vec![0.0, 0.25, 1.0, 2.5e8],
            vec![0.25, 0.0, 0.25, 1.0],
            vec![1.0, 0.25, 0.0, 0.25],
            vec![2.5e8, 1.0, 0.25, 0.0],
        ])
        .unwrap();
        let a = vec![1, 0, 2, 3];
        let b = vec![0, 1, 2, 3];
        let pop = vec![a.clone(), b];
        let mut rng = Rng::new(311);
        let mut first = 0;
        for _ in 0..10_000 {
            if select_parent(&pop, &inst, &mut rng) == &a {
                first += 1;
            }
        }
        // roulette weight ratio ~ 1e8: the long tour is essentially never picked
        assert!(first >= 9_990, "short tour picked {first}/10000");
    }

    #[test]
    fn selection_uniform_on_equal_lengths() {
        let inst = unit_square();
        // rotations of the same cycle: equal lengths
        let pop = vec![
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ];
        let mut rng = Rng::new(313);
        let mut counts = [0u32; 4];
        let trials = 10_000;
        for _ in 0..trials {
            let chosen = select_parent(&pop, &inst, &mut rng);
            let idx = pop.iter().position(|p| p == chosen).unwrap();
            counts[idx] += 1;
        }
        // chi^2 with 3 degrees of freedom: mean 3, sd sqrt(6)
        let expected = trials as f64 / 4.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 3.0 + 3.0 * 6.0f64.sqrt(), "chi2 {chi2}");
    }

    #[test]
    fn mutation_rate_zero_is_identity() {
        let mut rng = Rng::new(317);
        let mut perm = vec![0, 1, 2, 3, 4];
        swap_mutation(&mut perm, 0.0, &mut rng);
        assert_eq!(perm, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn mutation_rate_one_on_pair_swaps() {
        let mut rng = Rng::new(331);
        let mut perm = vec![0, 1];
        swap_mutation(&mut perm, 1.0, &mut rng);
        assert_eq!(perm, vec![1, 0]);
    }

    #[test]
    fn mutation_frequency_matches_rate() {
        let mut rng = Rng::new(337);
        let mut mutated = 0;
        let trials = 10_000;
        for _ in 0..trials {
            let mut perm = vec![0, 1, 2, 3, 4, 5];
            swap_mutation(&mut perm, 0.5, &mut rng);
            if perm != vec![0, 1, 2, 3, 4, 5] {
                mutated += 1;
            }
        }
        let freq = mutated as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.015, "freq {freq}");
    }

    #[test]
    fn zero_generations_returns_initial_best() {
        let inst = unit_square();
        let params = QigaParams {
            generations: 0,
            ..QigaParams::default()
        };
        let record = run_qiga(&inst, &params, &mut Rng::new(11)).unwrap();
        assert_eq!(record.trace.len(), 1);
        // the reported best must equal the best of the recorded initial generation
        assert_eq!(record.best_fitness, record.trace[0].best_fitness);
    }

    #[test]
    fn four_city_square_reaches_oracle_optimum() {
        let inst = unit_square();
        let (_, opt) = tsp_oracle_bruteforce(&inst).unwrap();
        let params = QigaParams {
            universes: 3,
            population: 10,
            mutation_rate: 0.2,
            elitism: 2,
            generations: 50,
        };
        let mut hits = 0;
        for seed in 0..10 {
            let record = run_qiga(&inst, &params, &mut Rng::new(seed)).unwrap();
            if (-record.best_fitness - opt).abs() < 1e-9 {
                hits += 1;
            }
        }
        assert!(hits >= 9, "optimum found in {hits}/10 seeds");
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let inst = unit_square();
        let params = QigaParams::default();
        let a = run_qiga(&inst, &params, &mut Rng::new(555)).unwrap();
        let b = run_qiga(&inst, &params, &mut Rng::new(555)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn best_so_far_is_monotone() {
        let inst = unit_square();
        let record = run_qiga(&inst, &QigaParams::default(), &mut Rng::new(7)).unwrap();
        assert!(record.best_is_monotone());
    }
}
