//! Subset dynamic programming over the overlap graph.
//!
//! The table memoizes, for every vertex set `S` up to a size threshold and
//! every ordered endpoint pair in `S`, the best weight of a simple path that
//! visits exactly `S` from the first endpoint to the second, together with a
//! predecessor link for path reconstruction. Filling every set size up to `n`
//! is the classical Held-Karp solver; stopping at a smaller threshold is the
//! preprocessing stage the hybrid solver's leaf lookups run against.

use crate::overlap::{OverlapGraph, Path};
use crate::subset::{binom, rank_subset, ColexCombinations, SubsetMask};
use crate::weight::Weight;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DpError {
    #[error("endpoint outside subset")]
    EndpointOutsideSubset,
    #[error("table too shallow: need subsets of size {needed}, materialized up to {threshold}")]
    TableTooShallow { needed: usize, threshold: usize },
    #[error("infeasible path requested")]
    InfeasiblePath,
}

const NEG_INF_I32: i32 = i32::MIN;
const NO_PRED: u8 = u8::MAX;

struct Layer {
    weights: Vec<i32>,
    preds: Vec<u8>,
}

/// Memo of best path weights keyed by `(subset, start, end)`, materialized
/// densely for every subset size `1..=threshold`.
pub struct DpTable {
    n: usize,
    threshold: usize,
    layers: Vec<Layer>,
}

impl DpTable {
    /// Fill the table bottom-up for all subsets of size at most `threshold`.
    ///
    /// Size-1 entries are 0 by definition; a size-`i` entry maximizes over the
    /// last edge into the end vertex (ties keep the smallest predecessor).
    pub fn build(g: &OverlapGraph, threshold: usize) -> DpTable {
        let n = g.n();
        assert!((1..=n).contains(&threshold), "threshold in 1..=n");
        let full = SubsetMask::full(n);

        let mut layers: Vec<Layer> = Vec::with_capacity(threshold);
        for size in 1..=threshold {
            let subsets = binom(n, size);
            let len = usize::try_from(subsets * (size * size) as u128)
                .expect("table size fits in memory addressing");
            let mut layer =
                Layer { weights: vec![NEG_INF_I32; len], preds: vec![NO_PRED; len] };

            let stride = size * size;
            let mut combos = ColexCombinations::new(full, size);
            let mut rank = 0usize;
            while let Some(set) = combos.next_mask() {
                let members = set.to_vec();
                let base = rank * stride;
                if size == 1 {
                    layer.weights[base] = 0;
                } else {
                    let prev: &Layer = &layers[size - 2];
                    let prev_stride = (size - 1) * (size - 1);
                    for (pos_u, &u) in members.iter().enumerate() {
                        let minus = set.without(u);
                        let minus_rank = usize::try_from(
                            rank_subset(minus, full).expect("subset of full"),
                        )
                        .unwrap();
                        let minus_members = minus.to_vec();
                        for (pos_v, &v) in members.iter().enumerate() {
                            if v == u {
                                continue; // no simple path on >=2 vertices returns to its start
                            }
                            let pos_v_minus = pos_v - usize::from(pos_v > pos_u);
                            let mut best = NEG_INF_I32;
                            let mut best_pred = NO_PRED;
                            for (pos_y, &y) in minus_members.iter().enumerate() {
                                let sub = prev.weights
                                    [minus_rank * prev_stride + pos_v_minus * (size - 1) + pos_y];
                                if sub == NEG_INF_I32 {
                                    continue;
                                }
                                let cand = sub + g.overlap(y, u) as i32;
                                if cand > best {
                                    best = cand;
                                    best_pred = y as u8;
                                }
                            }
                            let at = base + pos_v * size + pos_u;
                            layer.weights[at] = best;
                            layer.preds[at] = best_pred;
                        }
                    }
                }
                rank += 1;
            }
            layers.push(layer);
        }
        DpTable { n, threshold, layers }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Number of materialized `(subset, start, end)` entries.
    pub fn entry_count(&self) -> u128 {
        self.layers.iter().map(|l| l.weights.len() as u128).sum()
    }

    fn slot(&self, s: SubsetMask, a: usize, b: usize) -> usize {
        let size = s.len();
        let full = SubsetMask::full(self.n);
        let rank = usize::try_from(rank_subset(s, full).expect("subset of full")).unwrap();
        rank * size * size + s.position_of(a) * size + s.position_of(b)
    }

    /// Raw weight read by subset rank and endpoint positions; the caller
    /// guarantees the size layer is materialized and positions are in range.
    pub(crate) fn read_by_rank(&self, size: usize, rank: usize, pos_a: usize, pos_b: usize) -> i64 {
        debug_assert!(size >= 1 && size <= self.threshold);
        let w = self.layers[size - 1].weights[(rank * size + pos_a) * size + pos_b];
        if w == NEG_INF_I32 {
            i64::MIN
        } else {
            w as i64
        }
    }

    /// Best-weight lookup with sentinel semantics: endpoints outside `s`
    /// denote an infeasible combination and read as negative infinity.
    pub fn lookup(&self, s: SubsetMask, a: usize, b: usize) -> Result<Weight, DpError> {
        let size = s.len();
        if size > self.threshold {
            return Err(DpError::TableTooShallow { needed: size, threshold: self.threshold });
        }
        if size == 0 || !s.contains(a) || !s.contains(b) {
            return Ok(Weight::NEG_INF);
        }
        let w = self.layers[size - 1].weights[self.slot(s, a, b)];
        Ok(if w == NEG_INF_I32 { Weight::NEG_INF } else { Weight::finite(w as i64) })
    }

    /// Best weight of a simple path visiting exactly `s` from `v` to `u`.
    /// Unlike [`lookup`](Self::lookup), endpoints outside `s` are an error.
    pub fn best_path_weight(&self, s: SubsetMask, v: usize, u: usize) -> Result<Weight, DpError> {
        if !s.contains(v) || !s.contains(u) {
            return Err(DpError::EndpointOutsideSubset);
        }
        self.lookup(s, v, u)
    }

    fn pred(&self, s: SubsetMask, v: usize, u: usize) -> Option<usize> {
        let p = self.layers[s.len() - 1].preds[self.slot(s, v, u)];
        (p != NO_PRED).then_some(p as usize)
    }

    /// Witness path for a finite entry, rebuilt by walking predecessor links
    /// back to the singleton base case.
    pub fn reconstruct_path(&self, s: SubsetMask, v: usize, u: usize) -> Result<Path, DpError> {
        if !s.contains(v) || !s.contains(u) {
            return Err(DpError::EndpointOutsideSubset);
        }
        if !self.lookup(s, v, u)?.is_finite() {
            return Err(DpError::InfeasiblePath);
        }
        let mut rev = Vec::with_capacity(s.len());
        let mut cur_set = s;
        let mut cur = u;
        rev.push(cur);
        while cur_set.len() > 1 {
            let y = self.pred(cur_set, v, cur).ok_or(DpError::InfeasiblePath)?;
            cur_set = cur_set.without(cur);
            cur = y;
            rev.push(cur);
        }
        debug_assert_eq!(cur, v);
        rev.reverse();
        Ok(Path::new(rev).expect("predecessor chain repeats a vertex"))
    }

    /// Maximum of `weight(S', v, y) + weight((S \ S') + y, y, u)` over all
    /// `S'` of size `first_size` inside `s` and pivots `y` in `S'`.
    /// Infeasible combinations drop out through the sentinel; equals
    /// `best_path_weight(s, v, u)` whenever both endpoints lie in `s`.
    pub fn max_over_splits(
        &self,
        s: SubsetMask,
        v: usize,
        u: usize,
        first_size: usize,
    ) -> Result<Weight, DpError> {
        assert!((1..=s.len()).contains(&first_size), "split size in 1..=|s|");
        let mut best = Weight::NEG_INF;
        let mut combos = ColexCombinations::new(s, first_size);
        while let Some(first) = combos.next_mask() {
            let rest = s.difference(first);
            for y in first.iter() {
                let left = self.lookup(first, v, y)?;
                let right = self.lookup(rest.with(y), y, u)?;
                best = best.max(left + right);
            }
        }
        Ok(best)
    }
}

/// Exact classical solution: the overall best Hamiltonian path, found by
/// filling the full table and maximizing over endpoint pairs (ties keep the
/// smallest `(start, end)`).
pub fn held_karp(g: &OverlapGraph) -> (Path, Weight, DpTable) {
    let n = g.n();
    let table = DpTable::build(g, n);
    let full = SubsetMask::full(n);
    let mut best = Weight::NEG_INF;
    let mut best_pair = (0, 0);
    for v in 0..n {
        for u in 0..n {
            let w = table.lookup(full, v, u).expect("full table");
            if w > best {
                best = w;
                best_pair = (v, u);
            }
        }
    }
    let path = table
        .reconstruct_path(full, best_pair.0, best_pair.1)
        .expect("complete graph always has a Hamiltonian path");
    (path, best, table)
}
