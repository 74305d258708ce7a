//! Exact complexity accounting for both solver stages.
//!
//! `classical_cost` predicts the number of table entries the preprocessing
//! stage materializes; `quantum_cost` predicts the ledger total of an exact
//! hybrid run, mirroring its per-invocation accrual in arbitrary precision.
//! The growth exponents strip the polynomial factors (endpoint loop, boosting
//! repetitions, pivot multiplicities, integer rounding) so the exponential
//! rate both stages balance at is visible at finite `n`: what remains is the
//! product of the split-space binomials under their square roots on the
//! search side, and the binomial sum on the table side.

use crate::plan::{middle_first, middle_second, plan_levels, LevelPlan};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact binomial coefficient; 0 when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i; // every prefix is itself a binomial, so this divides exactly
    }
    acc
}

/// Smallest integer whose square is at least `x`.
pub fn ceil_sqrt(x: &BigUint) -> BigUint {
    if x.is_zero() {
        BigUint::zero()
    } else {
        (x - 1u32).sqrt() + 1u32
    }
}

fn split_space(m: usize, r: usize) -> BigUint {
    binomial(m as u64, r as u64) * r
}

fn charge(m: usize, r: usize) -> BigUint {
    ceil_sqrt(&split_space(m, r))
}

/// Table entries for every subset size `1..=threshold`: each size-`i` subset
/// stores one entry per ordered endpoint pair, `i * i` of them (one for the
/// singleton).
pub fn classical_cost_with_threshold(n: usize, threshold: usize) -> BigUint {
    let mut total = BigUint::zero();
    for i in 1..=threshold.min(n) {
        total += binomial(n as u64, i as u64) * (i * i);
    }
    total
}

/// Entry count at the threshold the plan for `(n, alpha)` requires.
pub fn classical_cost(n: usize, alpha: f64) -> BigUint {
    let plan = plan_levels(n, alpha);
    classical_cost_with_threshold(n, plan.leaf_threshold)
}

/// Predicted ledger of an exact hybrid run, split by level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumCost {
    pub nested: BigUint,
    pub middle: BigUint,
    pub final_level: BigUint,
    /// Degenerate plan: the solver falls back to the classical table, and the
    /// cost reported here is that table's entry count instead of a ledger.
    pub fallback: bool,
}

impl QuantumCost {
    pub fn total(&self) -> BigUint {
        &self.nested + &self.middle + &self.final_level
    }
}

/// Ledger prediction under the default repetition schedule (2n inner, 1 final).
pub fn quantum_cost(n: usize, alpha: f64) -> QuantumCost {
    let plan = plan_levels(n, alpha);
    let reps_inner = 2 * n as u64;
    quantum_cost_for_plan(&plan, reps_inner, 1)
}

/// Ledger prediction with explicit repetition factors.
pub fn quantum_cost_with_reps(n: usize, alpha: f64, reps_inner: u64, reps_final: u64) -> QuantumCost {
    quantum_cost_for_plan(&plan_levels(n, alpha), reps_inner.max(1), reps_final.max(1))
}

fn quantum_cost_for_plan(plan: &LevelPlan, reps_inner: u64, reps_final: u64) -> QuantumCost {
    if plan.fallback {
        return QuantumCost {
            nested: BigUint::zero(),
            middle: BigUint::zero(),
            final_level: classical_cost_with_threshold(plan.n, plan.n),
            fallback: true,
        };
    }
    let n = plan.n;
    let pairs = BigUint::from(n as u64) * n as u64;

    // Queries of one outermost search; every one of them runs both boosted
    // middle searches, each of whose queries runs both boosted innermost
    // searches. The endpoint loop multiplies everything by n^2.
    let final_queries = BigUint::from(reps_final) * charge(n, plan.final_first);
    let mut middle = BigUint::zero();
    let mut nested = BigUint::zero();
    for s_mid in plan.middle_inputs() {
        let middle_queries = &final_queries * reps_inner * charge(s_mid, middle_first(s_mid));
        for s_nest in [middle_first(s_mid), middle_second(s_mid)] {
            nested += &middle_queries * reps_inner * charge(s_nest, plan.nested_first(s_nest));
        }
        middle += middle_queries;
    }
    QuantumCost {
        nested: nested * &pairs,
        middle: middle * &pairs,
        final_level: final_queries * &pairs,
        fallback: false,
    }
}

/// log2 of a positive integer, accurate to the f64 mantissa.
fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_u64().expect("fits") as f64).log2()
    } else {
        let top = (x >> (bits - 64)).to_u64().expect("64 bits");
        (top as f64).log2() + (bits - 64) as f64
    }
}

/// log2(2^a + 2^b).
fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// Growth exponent of the search side: `log2(core) / n` where the core keeps
/// only the square-rooted split binomials of the three levels.
pub fn quantum_growth_exponent(n: usize, alpha: f64) -> f64 {
    let plan = plan_levels(n, alpha);
    assert!(!plan.fallback, "growth is about the non-degenerate recursion");
    let half_log = |m: usize, r: usize| log2_biguint(&binomial(m as u64, r as u64)) / 2.0;

    let mut bracket: Option<f64> = None;
    for s_mid in plan.middle_inputs() {
        let nested_sum = log2_add(
            half_log(middle_first(s_mid), plan.nested_first(middle_first(s_mid))),
            half_log(middle_second(s_mid), plan.nested_first(middle_second(s_mid))),
        );
        let branch = half_log(s_mid, middle_first(s_mid)) + nested_sum;
        bracket = Some(match bracket {
            None => branch,
            Some(b) => log2_add(b, branch),
        });
    }
    (half_log(n, plan.final_first) + bracket.expect("two branches")) / n as f64
}

/// Growth exponent of the table side: `log2(sum of C(n, i) for i up to the
/// plan threshold) / n`.
pub fn classical_growth_exponent(n: usize, alpha: f64) -> f64 {
    let plan = plan_levels(n, alpha);
    let mut sum = BigUint::zero();
    for i in 1..=plan.leaf_threshold.min(n) {
        sum += binomial(n as u64, i as u64);
    }
    log2_biguint(&sum) / n as f64
}

/// Exponent gap below which the two stages count as balanced.
pub const BALANCE_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct CostReport {
    pub n: usize,
    pub alpha: f64,
    pub classical_entries: BigUint,
    pub quantum_charged: BigUint,
    pub classical_exponent: f64,
    pub quantum_exponent: f64,
    pub balanced: bool,
    pub fallback: bool,
}

/// Reports for n = 8, 16, 32, ... up to and including `n_max`.
pub fn balance_report(n_max: usize, alpha: f64) -> Vec<CostReport> {
    assert!(n_max >= 8);
    let mut ns = Vec::new();
    let mut n = 8;
    while n < n_max {
        ns.push(n);
        n *= 2;
    }
    ns.push(n_max);
    ns.iter()
        .map(|&n| {
            let q = quantum_cost(n, alpha);
            let classical_exponent = classical_growth_exponent(n, alpha);
            let quantum_exponent = quantum_growth_exponent(n, alpha);
            CostReport {
                n,
                alpha,
                classical_entries: classical_cost(n, alpha),
                quantum_charged: q.total(),
                classical_exponent,
                quantum_exponent,
                balanced: (classical_exponent - quantum_exponent).abs() < BALANCE_TOLERANCE,
                fallback: q.fallback,
            }
        })
        .collect()
}
