//! Bit-set vertex subsets and combinadic (colex) ranking of fixed-size subsets.
//!
//! Subsets are single `u64` words, which caps instances at 63 vertices; the
//! subset DP over 2^n states is unreachable long before that. Ranking is
//! colexicographic: `rank(S) = sum over the t-th smallest position c_t of
//! C(c_t, t)`, so enumerating subsets in colex order walks ranks 0,1,2,...

use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

pub const MAX_VERTICES: usize = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("subset index {index} out of range for C({m},{r}) = {count}")]
    IndexOutOfRange { index: u128, m: usize, r: usize, count: u128 },
    #[error("not a subset of the base set")]
    NotASubset,
}

/// Set of vertex indices in `0..=63`, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> SubsetMask {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SubsetMask(if n == 0 { 0 } else { (1u64 << n) - 1 })
    }

    pub fn singleton(v: usize) -> SubsetMask {
        assert!(v < MAX_VERTICES);
        SubsetMask(1 << v)
    }

    pub fn from_bits(bits: u64) -> SubsetMask {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> SubsetMask {
        assert!(v < MAX_VERTICES);
        SubsetMask(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> SubsetMask {
        SubsetMask(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of members smaller than `v` (the position of `v` when `v` is a member).
    pub fn position_of(self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }

    /// The `i`-th smallest member.
    pub fn nth(self, i: usize) -> usize {
        let mut bits = self.0;
        for _ in 0..i {
            bits &= bits - 1;
        }
        debug_assert!(bits != 0, "nth past end of subset");
        bits.trailing_zeros() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(SubsetMask::EMPTY, |m, v| m.with(v))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

const TABLE_DIM: usize = MAX_VERTICES + 2;

fn binomial_table() -> &'static Vec<[u128; TABLE_DIM]> {
    static TABLE: OnceLock<Vec<[u128; TABLE_DIM]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u128; TABLE_DIM]; TABLE_DIM];
        for m in 0..TABLE_DIM {
            t[m][0] = 1;
            for r in 1..=m {
                t[m][r] = t[m - 1][r - 1] + t[m - 1][r];
            }
        }
        t
    })
}

/// C(m, r), exact; 0 when r > m. Covers every size a 63-vertex instance can need.
pub fn binom(m: usize, r: usize) -> u128 {
    if r > m {
        return 0;
    }
    debug_assert!(m < TABLE_DIM);
    binomial_table()[m][r]
}

/// Size of the flattened `(subset, pivot)` search space: C(m, r) * r.
pub fn split_space_size(m: usize, r: usize) -> u128 {
    binom(m, r) * r as u128
}

/// Colex rank of `s` among the |s|-subsets of `base`.
pub fn rank_subset(s: SubsetMask, base: SubsetMask) -> Result<u128, SubsetError> {
    if !s.is_subset_of(base) {
        return Err(SubsetError::NotASubset);
    }
    let mut rank = 0u128;
    for (t, v) in s.iter().enumerate() {
        rank += binom(base.position_of(v), t + 1);
    }
    Ok(rank)
}

/// The `index`-th r-subset of `base` in colex order; inverse of [`rank_subset`].
pub fn unrank_subset(
    index: u128,
    m: usize,
    r: usize,
    base: SubsetMask,
) -> Result<SubsetMask, SubsetError> {
    debug_assert_eq!(base.len(), m);
    let count = binom(m, r);
    if index >= count {
        return Err(SubsetError::IndexOutOfRange { index, m, r, count });
    }
    // Greedy combinadic decomposition, largest position first.
    let mut rest = index;
    let mut out = SubsetMask::EMPTY;
    let mut hi = m;
    for t in (1..=r).rev() {
        // Largest position c < hi with C(c, t) <= rest.
        let mut c = t - 1;
        while c + 1 < hi && binom(c + 1, t) <= rest {
            c += 1;
        }
        rest -= binom(c, t);
        out = out.with(base.nth(c));
        hi = c;
    }
    debug_assert_eq!(rest, 0);
    Ok(out)
}

/// Decode a flat `(subset, pivot)` index: the pivot position varies fastest.
/// Returns the subset together with the pivot vertex, a member of the subset.
pub fn split_unrank(
    index: u128,
    m: usize,
    r: usize,
    base: SubsetMask,
) -> Result<(SubsetMask, usize), SubsetError> {
    let total = split_space_size(m, r);
    if index >= total {
        return Err(SubsetError::IndexOutOfRange { index, m, r, count: total });
    }
    let subset = unrank_subset(index / r as u128, m, r, base)?;
    let pivot = subset.nth((index % r as u128) as usize);
    Ok((subset, pivot))
}

/// In-place colex successor over position arrays; yields subsets of `base`
/// of size `r` in rank order 0,1,2,... starting from the first combination.
pub struct ColexCombinations {
    base_members: Vec<usize>,
    positions: Vec<usize>,
    started: bool,
    done: bool,
}

impl ColexCombinations {
    pub fn new(base: SubsetMask, r: usize) -> ColexCombinations {
        let base_members = base.to_vec();
        let done = r > base_members.len();
        ColexCombinations { base_members, positions: (0..r).collect(), started: false, done }
    }

    /// Advance to the next combination; returns the current one as a mask.
    pub fn next_mask(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        if self.started {
            let r = self.positions.len();
            let m = self.base_members.len();
            let mut t = 0;
            while t < r {
                let limit = if t + 1 < r { self.positions[t + 1] } else { m };
                if self.positions[t] + 1 < limit {
                    self.positions[t] += 1;
                    for (i, p) in self.positions[..t].iter_mut().enumerate() {
                        *p = i;
                    }
                    break;
                }
                t += 1;
            }
            if t == r {
                self.done = true;
                return None;
            }
        }
        self.started = true;
        Some(self.positions.iter().map(|&p| self.base_members[p]).collect())
    }

    /// Positions (within the base) of the combination last returned.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}
