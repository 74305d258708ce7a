//! Split sizing for the three-level nested search.
//!
//! Each level searches over pairs `(S', y)` where `S'` is a fixed-size subset
//! of the level's vertex set and `y` a pivot inside it; the second half of the
//! split is `(S \ S') + y`, which shares the pivot vertex and is therefore one
//! larger than the plain complement. The plan records true segment sizes so
//! every lookup stays well-defined for all `n`, not just multiples of four.

/// Fraction parameter balancing the table-filling stage against the nested
/// searches; the sizing below reproduces the halving/quartering splits with
/// leaf segments of roughly `(1 - alpha)` times the quarter size.
pub const DEFAULT_ALPHA: f64 = 0.055;

/// Smallest instance the three-level recursion is meaningful for.
pub const MIN_RECURSION_N: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct LevelPlan {
    pub n: usize,
    pub alpha: f64,
    /// First-segment size of the outermost split (`floor(n/2)`).
    pub final_first: usize,
    /// Second segment of the outermost split (`n - final_first + 1`).
    pub final_second: usize,
    /// Largest leaf segment anywhere in the plan; the table must be filled to
    /// at least this subset size before the searches run.
    pub leaf_threshold: usize,
    /// Set when the recursion degenerates and the solver should fall back to
    /// the full classical table.
    pub fallback: bool,
}

/// First-segment size when a middle-level set of size `s` is split in half.
pub fn middle_first(s: usize) -> usize {
    s / 2
}

/// Second segment of the middle split; shares the pivot, hence the +1.
pub fn middle_second(s: usize) -> usize {
    s - middle_first(s) + 1
}

impl LevelPlan {
    /// First-segment size of the innermost split of a size-`s` set.
    pub fn nested_first(&self, s: usize) -> usize {
        (((1.0 - self.alpha) * s as f64).floor() as usize).max(1)
    }

    /// Second segment of the innermost split; shares the pivot.
    pub fn nested_second(&self, s: usize) -> usize {
        s - self.nested_first(s) + 1
    }

    /// The two set sizes the middle level operates on.
    pub fn middle_inputs(&self) -> [usize; 2] {
        [self.final_first, self.final_second]
    }

    /// Set sizes handed to the innermost level, deduplicated and ascending.
    pub fn nested_inputs(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .middle_inputs()
            .into_iter()
            .flat_map(|s| [middle_first(s), middle_second(s)])
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    /// All leaf segment sizes produced by the plan.
    pub fn leaf_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .nested_inputs()
            .into_iter()
            .flat_map(|s| [self.nested_first(s), self.nested_second(s)])
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }
}

/// Compute the split plan for an `n`-vertex instance.
///
/// Below [`MIN_RECURSION_N`] the plan is marked degenerate: the fallback runs
/// the full classical table, so the threshold is `n` itself.
pub fn plan_levels(n: usize, alpha: f64) -> LevelPlan {
    assert!(n >= 1, "at least one vertex");
    assert!(alpha > 0.0 && alpha < 1.0, "alpha in (0,1)");
    let final_first = n / 2;
    let final_second = n - final_first + 1;
    let mut plan = LevelPlan {
        n,
        alpha,
        final_first,
        final_second,
        leaf_threshold: n,
        fallback: true,
    };
    if n < MIN_RECURSION_N {
        return plan;
    }
    let leaf_threshold = plan.leaf_sizes().into_iter().max().expect("leaves exist");
    plan.leaf_threshold = leaf_threshold;
    plan.fallback = leaf_threshold >= n;
    if plan.fallback {
        plan.leaf_threshold = n;
    }
    plan
}
