//! Simulated Durr-Hoyer maximum finding with exact query accounting.
//!
//! The simulator finds the true argmax by a classical scan; what it *charges*
//! to the ledger is the quantum query cost, `ceil(sqrt(N))` per invocation.
//! The two are kept deliberately separate: evaluation count is a simulation
//! artifact, the ledger is the cost model under test. In noisy mode each
//! invocation fails with the configured probability and returns a uniformly
//! random strictly-suboptimal index instead of the argmax.

use crate::weight::Weight;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QMaxError {
    #[error("empty search space")]
    EmptySearchSpace,
}

/// Which of the three search levels a charge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Nested,
    Middle,
    Final,
}

/// Exact tallies of charged quantum queries (per level) and of DP-table reads
/// made while evaluating candidates. Counters only grow.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryLedger {
    nested: u128,
    middle: u128,
    last: u128,
    classical_lookups: u128,
}

impl QueryLedger {
    pub fn new() -> QueryLedger {
        QueryLedger::default()
    }

    pub fn charge(&mut self, level: Level, amount: u128) {
        let slot = match level {
            Level::Nested => &mut self.nested,
            Level::Middle => &mut self.middle,
            Level::Final => &mut self.last,
        };
        *slot = slot.checked_add(amount).expect("ledger overflow");
    }

    pub fn add_classical_lookups(&mut self, amount: u128) {
        self.classical_lookups =
            self.classical_lookups.checked_add(amount).expect("ledger overflow");
    }

    pub fn level(&self, level: Level) -> u128 {
        match level {
            Level::Nested => self.nested,
            Level::Middle => self.middle,
            Level::Final => self.last,
        }
    }

    pub fn quantum_queries(&self) -> u128 {
        self.nested + self.middle + self.last
    }

    pub fn classical_lookups(&self) -> u128 {
        self.classical_lookups
    }

    pub fn merge(&mut self, other: &QueryLedger) {
        self.charge(Level::Nested, other.nested);
        self.charge(Level::Middle, other.middle);
        self.charge(Level::Final, other.last);
        self.add_classical_lookups(other.classical_lookups);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMaxMode {
    Exact,
    Noisy,
}

/// Simulation settings. `fail_prob` and `seed` only matter in noisy mode.
#[derive(Debug, Clone)]
pub struct QMaxConfig {
    pub mode: QMaxMode,
    pub fail_prob: f64,
    pub seed: u64,
    /// Override for the repetition count of the boosted inner levels
    /// (default schedule: 2n).
    pub boost_reps: Option<u64>,
    /// Repetitions of the outermost search (default 1; no boosting).
    pub boost_final: Option<u64>,
}

impl Default for QMaxConfig {
    fn default() -> QMaxConfig {
        QMaxConfig { mode: QMaxMode::Exact, fail_prob: 0.1, seed: 0, boost_reps: None, boost_final: None }
    }
}

impl QMaxConfig {
    pub fn exact() -> QMaxConfig {
        QMaxConfig::default()
    }

    pub fn noisy(fail_prob: f64, seed: u64) -> QMaxConfig {
        QMaxConfig { mode: QMaxMode::Noisy, fail_prob, seed, ..QMaxConfig::default() }
    }

    /// Boosting schedule for the inner levels on an n-vertex instance.
    pub fn inner_reps(&self, n: usize) -> u64 {
        self.boost_reps.unwrap_or(2 * n as u64).max(1)
    }

    pub fn final_reps(&self) -> u64 {
        self.boost_final.unwrap_or(1).max(1)
    }
}

/// Queries charged per invocation over a space of `n` candidates.
pub fn charge_units(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        (n - 1).isqrt() + 1
    }
}

/// True argmax by linear scan, smallest index among ties.
pub(crate) fn scan_argmax<F>(space: u64, mut eval: F) -> (u64, Weight)
where
    F: FnMut(u64) -> Weight,
{
    let mut best_idx = 0;
    let mut best = eval(0);
    for i in 1..space {
        let v = eval(i);
        if v > best {
            best = v;
            best_idx = i;
        }
    }
    (best_idx, best)
}

/// One simulated invocation over precomputed candidate values.
/// On failure, returns a uniformly random index whose value is strictly below
/// the maximum; when no such index exists the argmax is returned regardless.
fn pick<R: Rng>(
    values: &[Weight],
    argmax: (u64, Weight),
    cfg: &QMaxConfig,
    rng: &mut R,
) -> (u64, Weight) {
    if cfg.mode == QMaxMode::Exact || !rng.random_bool(cfg.fail_prob) {
        return argmax;
    }
    let suboptimal = values.iter().filter(|&&v| v < argmax.1).count();
    if suboptimal == 0 {
        return argmax;
    }
    let target = rng.random_range(0..suboptimal);
    let idx = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < argmax.1)
        .nth(target)
        .map(|(i, _)| i)
        .expect("counted above");
    (idx as u64, values[idx])
}

/// Boosted run without ledger writes; used where charges are accounted
/// structurally by the caller. Candidates are evaluated once and shared by
/// all repetitions.
pub(crate) fn run_boosted_uncharged<F, R>(
    space: u64,
    mut eval: F,
    reps: u64,
    cfg: &QMaxConfig,
    rng: &mut R,
) -> Result<(u64, Weight), QMaxError>
where
    F: FnMut(u64) -> Weight,
    R: Rng,
{
    if space == 0 {
        return Err(QMaxError::EmptySearchSpace);
    }
    if cfg.mode == QMaxMode::Exact {
        return Ok(scan_argmax(space, eval));
    }
    let values: Vec<Weight> = (0..space).map(&mut eval).collect();
    let argmax = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, &v)| (i as u64, v))
        .expect("non-empty");
    let mut best = pick(&values, argmax, cfg, rng);
    for _ in 1..reps {
        let run = pick(&values, argmax, cfg, rng);
        if run.1 > best.1 || (run.1 == best.1 && run.0 < best.0) {
            best = run;
        }
    }
    Ok(best)
}

/// One maximum-finding invocation; charges `charge_units(space)` to `level`.
pub fn qmax<F, R>(
    space: u64,
    eval: F,
    cfg: &QMaxConfig,
    rng: &mut R,
    ledger: &mut QueryLedger,
    level: Level,
) -> Result<(u64, Weight), QMaxError>
where
    F: FnMut(u64) -> Weight,
    R: Rng,
{
    boosted_qmax(space, eval, 1, cfg, rng, ledger, level)
}

/// `reps` boosted invocations, keeping the best result (smallest index among
/// equal values). Charges `reps * charge_units(space)`; in exact mode the scan
/// runs once and the repetitions are accounting only.
pub fn boosted_qmax<F, R>(
    space: u64,
    eval: F,
    reps: u64,
    cfg: &QMaxConfig,
    rng: &mut R,
    ledger: &mut QueryLedger,
    level: Level,
) -> Result<(u64, Weight), QMaxError>
where
    F: FnMut(u64) -> Weight,
    R: Rng,
{
    assert!(reps >= 1, "at least one repetition");
    let result = run_boosted_uncharged(space, eval, reps, cfg, rng)?;
    ledger.charge(level, reps as u128 * charge_units(space) as u128);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn charge_is_ceil_sqrt() {
        for (n, c) in [(1u64, 1u64), (2, 2), (100, 10), (5544, 75)] {
            assert_eq!(charge_units(n), c, "N={n}");
        }
        for n in 1..=1_000_000u64 {
            let c = charge_units(n);
            assert!(c * c >= n && (c - 1) * (c - 1) < n, "N={n} c={c}");
        }
    }

    #[test]
    fn exact_examples() {
        let cfg = QMaxConfig::exact();
        let mut ledger = QueryLedger::new();
        let mut r = rng(0);

        let (i, v) =
            qmax(1, |_| Weight::finite(7), &cfg, &mut r, &mut ledger, Level::Final).unwrap();
        assert_eq!((i, v), (0, Weight::finite(7)));
        assert_eq!(ledger.quantum_queries(), 1);

        let (i, v) = qmax(
            100,
            |x| Weight::finite(x as i64),
            &cfg,
            &mut r,
            &mut ledger,
            Level::Final,
        )
        .unwrap();
        assert_eq!((i, v), (99, Weight::finite(99)));
        assert_eq!(ledger.quantum_queries(), 11);

        let vals = [3i64, 1, 4, 1, 5];
        let (i, v) = qmax(
            5,
            |x| Weight::finite(vals[x as usize]),
            &cfg,
            &mut r,
            &mut ledger,
            Level::Nested,
        )
        .unwrap();
        assert_eq!((i, v), (4, Weight::finite(5)));
        assert_eq!(ledger.level(Level::Nested), 3);
    }

    #[test]
    fn exact_matches_scan_on_random_spaces() {
        use rand::Rng as _;
        let cfg = QMaxConfig::exact();
        let mut r = rng(42);
        for _ in 0..200 {
            let n = r.random_range(1..=64u64);
            let values: Vec<i64> = (0..n).map(|_| r.random_range(-10..10)).collect();
            let mut ledger = QueryLedger::new();
            let (idx, val) = qmax(
                n,
                |i| Weight::finite(values[i as usize]),
                &cfg,
                &mut r,
                &mut ledger,
                Level::Final,
            )
            .unwrap();
            let expect_val = *values.iter().max().unwrap();
            let expect_idx = values.iter().position(|&v| v == expect_val).unwrap() as u64;
            assert_eq!((idx, val), (expect_idx, Weight::finite(expect_val)));
        }
    }

    #[test]
    fn boosted_exact_charges_reps() {
        let cfg = QMaxConfig::exact();
        let mut ledger = QueryLedger::new();
        let mut r = rng(0);
        let (i, v) = boosted_qmax(
            100,
            |x| Weight::finite(x as i64),
            16,
            &cfg,
            &mut r,
            &mut ledger,
            Level::Middle,
        )
        .unwrap();
        assert_eq!((i, v), (99, Weight::finite(99)));
        assert_eq!(ledger.level(Level::Middle), 160);
    }

    #[test]
    fn forced_failure_is_always_wrong() {
        let cfg = QMaxConfig::noisy(1.0, 0);
        let mut r = rng(5);
        let mut ledger = QueryLedger::new();
        for _ in 0..50 {
            let (i, v) = boosted_qmax(
                4,
                |x| Weight::finite(x as i64),
                3,
                &cfg,
                &mut r,
                &mut ledger,
                Level::Final,
            )
            .unwrap();
            assert_ne!(i, 3);
            assert!(v < Weight::finite(3));
        }
    }

    #[test]
    fn forced_failure_on_constant_space_still_succeeds() {
        let cfg = QMaxConfig::noisy(1.0, 0);
        let mut r = rng(5);
        let mut ledger = QueryLedger::new();
        let (i, v) =
            qmax(6, |_| Weight::finite(2), &cfg, &mut r, &mut ledger, Level::Final).unwrap();
        assert_eq!((i, v), (0, Weight::finite(2)));
    }

    #[test]
    fn noisy_single_success_rate_matches_fail_prob() {
        let fail_prob = 0.3;
        let trials = 2000u32;
        let cfg = QMaxConfig::noisy(fail_prob, 0);
        let mut r = rng(99);
        let mut ledger = QueryLedger::new();
        let mut hits = 0u32;
        for _ in 0..trials {
            let (_, v) = qmax(
                50,
                |x| Weight::finite(x as i64),
                &cfg,
                &mut r,
                &mut ledger,
                Level::Final,
            )
            .unwrap();
            if v == Weight::finite(49) {
                hits += 1;
            }
        }
        let freq = f64::from(hits) / f64::from(trials);
        let slack = 4.0 * (0.25 / f64::from(trials)).sqrt();
        assert!(
            (freq - (1.0 - fail_prob)).abs() <= slack,
            "freq {freq} outside {slack} of {}",
            1.0 - fail_prob
        );
    }

    #[test]
    fn boosted_noisy_rarely_fails() {
        // fail 0.1, reps 16: failure probability 1e-16.
        let cfg = QMaxConfig::noisy(0.1, 0);
        let mut r = rng(1);
        let mut ledger = QueryLedger::new();
        let mut ok = 0;
        for _ in 0..200 {
            let (i, v) = boosted_qmax(
                64,
                |x| Weight::finite((x as i64) % 17),
                16,
                &cfg,
                &mut r,
                &mut ledger,
                Level::Middle,
            )
            .unwrap();
            if v == Weight::finite(16) && i == 16 {
                ok += 1;
            }
        }
        assert!(ok >= 199, "boosted success {ok}/200");
    }

    #[test]
    fn empty_space_is_an_error() {
        let cfg = QMaxConfig::exact();
        let mut ledger = QueryLedger::new();
        let mut r = rng(0);
        assert_eq!(
            qmax(0, |_| Weight::ZERO, &cfg, &mut r, &mut ledger, Level::Final),
            Err(QMaxError::EmptySearchSpace)
        );
    }

    #[test]
    fn ledger_merge_adds() {
        let mut a = QueryLedger::new();
        a.charge(Level::Nested, 5);
        a.add_classical_lookups(2);
        let mut b = QueryLedger::new();
        b.charge(Level::Nested, 7);
        b.charge(Level::Final, 1);
        a.merge(&b);
        assert_eq!(a.level(Level::Nested), 12);
        assert_eq!(a.quantum_queries(), 13);
        assert_eq!(a.classical_lookups(), 2);
    }
}
