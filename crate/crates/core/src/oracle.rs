//! Exhaustive ground truth and independent solution checking.

use crate::hybrid::{Solution, SolveError, SolveMode};
use crate::instance::{preprocess, Instance};
use crate::overlap::{build_graph, superstring_from_path, OverlapGraph, Path};
use crate::qmax::QueryLedger;
use crate::weight::Weight;

/// Permutation enumeration becomes unreasonable past this size.
pub const ORACLE_MAX_N: usize = 10;

/// Try every vertex order, assemble each superstring, return the shortest
/// (lexicographically smallest string among equal lengths).
pub fn brute_force(inst: &Instance) -> Result<Solution, SolveError> {
    let n = inst.n();
    if n > ORACLE_MAX_N {
        return Err(SolveError::OracleLimit);
    }
    let g = build_graph(inst);
    let mut best: Option<(Weight, String, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    enumerate(inst, &g, &mut order, 0, Weight::ZERO, &mut best);
    let (weight, superstring, vertices) = best.expect("n >= 1");
    Ok(Solution {
        mode: SolveMode::Brute,
        path: Path::new(vertices).expect("permutation is simple"),
        weight,
        superstring,
        ledger: QueryLedger::new(),
        table_entries: 0,
        used_fallback: false,
    })
}

fn enumerate(
    inst: &Instance,
    g: &OverlapGraph,
    order: &mut Vec<usize>,
    used: u64,
    weight: Weight,
    best: &mut Option<(Weight, String, Vec<usize>)>,
) {
    let n = inst.n();
    if order.len() == n {
        let compose = |o: &[usize]| {
            superstring_from_path(&Path::new(o.to_vec()).unwrap(), g, inst).unwrap()
        };
        match best {
            None => *best = Some((weight, compose(order), order.clone())),
            Some((bw, bs, _)) => {
                // Higher weight means shorter superstring; on ties prefer the
                // lexicographically smaller string.
                if weight > *bw {
                    *best = Some((weight, compose(order), order.clone()));
                } else if weight == *bw {
                    let s = compose(order);
                    if s < *bs {
                        *best = Some((weight, s, order.clone()));
                    }
                }
            }
        }
        return;
    }
    for v in 0..n {
        if used >> v & 1 == 1 {
            continue;
        }
        let step = match order.last() {
            Some(&prev) => g.edge_weight(prev, v),
            None => Weight::ZERO,
        };
        order.push(v);
        enumerate(inst, g, order, used | 1 << v, weight + step, best);
        order.pop();
    }
}

/// Independent checks on a solution against the original (pre-filtering) input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every original string occurs in the superstring.
    pub all_contained: bool,
    /// Superstring length equals the filtered instance's total length minus
    /// the claimed weight.
    pub length_identity: bool,
    /// The path visits distinct, in-range vertices of the filtered instance.
    pub is_simple_path: bool,
    /// Length matches a supplied oracle optimum, when one was supplied.
    pub optimal: Option<bool>,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        self.all_contained
            && self.length_identity
            && self.is_simple_path
            && self.optimal.unwrap_or(true)
    }
}

/// Check containment, the length identity, and path simplicity.
pub fn verify(sol: &Solution, original: &[String]) -> VerifyReport {
    let all_contained = original.iter().all(|s| sol.superstring.contains(&s[..]));

    let (length_identity, is_simple_path) = match preprocess(original) {
        Ok(p) => {
            let filtered_total = p.instance.total_len();
            let length_identity = sol
                .weight
                .value()
                .is_some_and(|w| {
                    w >= 0 && sol.superstring.len() as i64 == filtered_total as i64 - w
                });
            let vs = sol.path.vertices();
            let mut seen = vec![false; p.instance.n()];
            let simple = vs.iter().all(|&v| {
                v < p.instance.n() && !std::mem::replace(&mut seen[v], true)
            });
            (length_identity, simple)
        }
        Err(_) => (false, false),
    };

    VerifyReport { all_contained, length_identity, is_simple_path, optimal: None }
}

/// [`verify`] plus an optimality check against a known optimal length.
pub fn verify_with_optimum(sol: &Solution, original: &[String], optimal_len: usize) -> VerifyReport {
    let mut report = verify(sol, original);
    report.optimal = Some(sol.length() == optimal_len);
    report
}
