//! 0-1 knapsack: instance type, fitness, ratio-greedy repair and the
//! exact dynamic-programming oracle.

use super::{scale_to_register, BinaryFitness, RegisterFitness};
use crate::error::{Error, Result};
use crate::qubit::BitString;
use serde::Deserialize;

/// Immutable 0-1 knapsack instance.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawKnapsack")]
pub struct KnapsackInstance {
    weights: Vec<u64>,
    profits: Vec<u64>,
    capacity: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKnapsack {
    weights: Vec<u64>,
    profits: Vec<u64>,
    capacity: u64,
}

impl TryFrom<RawKnapsack> for KnapsackInstance {
    type Error = Error;
    fn try_from(raw: RawKnapsack) -> Result<Self> {
        KnapsackInstance::new(raw.weights, raw.profits, raw.capacity)
    }
}

impl KnapsackInstance {
    pub fn new(weights: Vec<u64>, profits: Vec<u64>, capacity: u64) -> Result<Self> {
        if weights.is_empty() || weights.len() != profits.len() {
            return Err(Error::InvalidArgument(format!(
                "knapsack needs equal, nonzero item counts (got {} weights, {} profits)",
                weights.len(),
                profits.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) || profits.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(
                "knapsack weights and profits must be positive".into(),
            ));
        }
        Ok(Self {
            weights,
            profits,
            capacity,
        })
    }

    pub fn items(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn total_profit(&self) -> u64 {
        self.profits.iter().sum()
    }

    fn check_len(&self, selection: &BitString) -> Result<()> {
        if selection.len() != self.items() {
            return Err(Error::InvalidArgument(format!(
                "selection length {} does not match item count {}",
                selection.len(),
                self.items()
            )));
        }
        Ok(())
    }
}

/// Total profit of a selection, or 0 when the total weight exceeds the
/// capacity (death penalty).
pub fn knapsack_fitness(inst: &KnapsackInstance, selection: &BitString) -> Result<u64> {
    inst.check_len(selection)?;
    let mut weight = 0u64;
    let mut profit = 0u64;
    for i in 0..inst.items() {
        if selection.get(i) {
            weight += inst.weights[i];
            profit += inst.profits[i];
        }
    }
    Ok(if weight <= inst.capacity { profit } else { 0 })
}

/// Drops selected items in increasing profit/weight ratio (ties broken
/// by lower index) until the selection fits. Feasible input comes back
/// unchanged.
pub fn knapsack_repair(inst: &KnapsackInstance, selection: &BitString) -> Result<BitString> {
    inst.check_len(selection)?;
    let mut out = selection.clone();
    let mut weight: u64 = (0..inst.items())
        .filter(|&i| out.get(i))
        .map(|i| inst.weights[i])
        .sum();
    if weight <= inst.capacity {
        return Ok(out);
    }
    // Selected items, worst ratio first. p1/w1 < p2/w2 compared as
    // p1*w2 < p2*w1 to stay in exact integer arithmetic.
    let mut order: Vec<usize> = (0..inst.items()).filter(|&i| out.get(i)).collect();
    order.sort_by(|&a, &b| {
        let lhs = inst.profits[a] as u128 * inst.weights[b] as u128;
        let rhs = inst.profits[b] as u128 * inst.weights[a] as u128;
        lhs.cmp(&rhs).then(a.cmp(&b))
    });
    for i in order {
        if weight <= inst.capacity {
            break;
        }
        out.set(i, false);
        weight -= inst.weights[i];
    }
    Ok(out)
}

/// Exact optimum by dynamic programming over capacity. Guarded to
/// `items * capacity <= 10^7`.
pub fn knapsack_oracle_dp(inst: &KnapsackInstance) -> Result<u64> {
    let cells = inst.items() as u64 * inst.capacity;
    if cells > 10_000_000 {
        return Err(Error::Capacity(format!(
            "dp table would need {cells} cells (limit 10^7)"
        )));
    }
    let cap = inst.capacity as usize;
    let mut best = vec![0u64; cap + 1];
    for i in 0..inst.items() {
        let w = inst.weights[i] as usize;
        let p = inst.profits[i];
        if w > cap {
            continue;
        }
        for c in (w..=cap).rev() {
            best[c] = best[c].max(best[c - w] + p);
        }
    }
    Ok(best[cap])
}

/// Knapsack as a binary fitness function with death penalty and
/// ratio-greedy repair.
#[derive(Debug, Clone)]
pub struct KnapsackProblem {
    instance: KnapsackInstance,
}

impl KnapsackProblem {
    pub fn new(instance: KnapsackInstance) -> Self {
        Self { instance }
    }

    pub fn instance(&self) -> &KnapsackInstance {
        &self.instance
    }
}

impl BinaryFitness for KnapsackProblem {
    fn genotype_len(&self) -> usize {
        self.instance.items()
    }

    fn evaluate(&self, bits: &BitString) -> f64 {
        knapsack_fitness(&self.instance, bits).expect("selection length checked by caller") as f64
    }

    fn repair(&self, bits: &mut BitString) {
        *bits = knapsack_repair(&self.instance, bits).expect("selection length checked by caller");
    }
}

/// Knapsack mapped onto the quantum register pair: bit `i` of the
/// individual index selects item `i`, and profits are scaled into the
/// `M`-bit fitness register.
#[derive(Debug, Clone)]
pub struct KnapsackRegisterProblem {
    instance: KnapsackInstance,
    fitness_bits: usize,
}

impl KnapsackRegisterProblem {
    pub fn new(instance: KnapsackInstance, fitness_bits: usize) -> Result<Self> {
        if instance.items() > 63 {
            return Err(Error::Capacity(
                "register encoding supports at most 63 items".into(),
            ));
        }
        Ok(Self {
            instance,
            fitness_bits,
        })
    }

    pub fn instance(&self) -> &KnapsackInstance {
        &self.instance
    }

    /// Raw (unscaled) profit of individual `u`.
    pub fn raw_fitness(&self, u: u64) -> u64 {
        let mut weight = 0u64;
        let mut profit = 0u64;
        for i in 0..self.instance.items() {
            if (u >> i) & 1 == 1 {
                weight += self.instance.weights[i];
                profit += self.instance.profits[i];
            }
        }
        if weight <= self.instance.capacity {
            profit
        } else {
            0
        }
    }

    /// Item selection encoded by individual `u`, item order preserved.
    pub fn selection_of(&self, u: u64) -> BitString {
        BitString::new((0..self.instance.items()).map(|i| (u >> i) & 1 == 1).collect())
    }
}

impl RegisterFitness for KnapsackRegisterProblem {
    fn individual_bits(&self) -> usize {
        self.instance.items()
    }

    fn fitness_bits(&self) -> usize {
        self.fitness_bits
    }

    fn scaled_fitness(&self, u: u64) -> u64 {
        scale_to_register(
            self.raw_fitness(u),
            self.instance.total_profit(),
            self.fitness_bits,
        )
    }
}
