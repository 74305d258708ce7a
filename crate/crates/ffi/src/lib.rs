//! C ABI over the shortest-superstring solvers.
//!
//! Callers hand in NUL-terminated strings, get back an opaque `SspSolution`
//! handle, and read results through accessors; every entry point returns a
//! status code and never unwinds across the boundary. The header is generated
//! into `include/ssp.h` at build time.

use libc::{c_char, size_t};
use ssp_core::qmax::Level;
use ssp_core::{preprocess, solve, Preprocessed, QMaxConfig, QMaxMode, Solution, SolveError, SolveMode};
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of an API call.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SspStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input strings were rejected (empty set, empty string, bad encoding).
    InvalidInput = 2,
    /// The instance exceeds the selected solver's size limit.
    TooLarge = 3,
    /// Unexpected internal failure.
    Internal = 4,
}

/// Solver selection for [`SspOptions`].
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SspMode {
    Classical = 0,
    Hybrid = 1,
    Brute = 2,
}

/// Ledger level selector for `ssp_solution_level_queries`.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SspLevel {
    Nested = 0,
    Middle = 1,
    Final = 2,
}

/// Solve settings; initialize with `ssp_options_init` and override fields.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SspOptions {
    /// One of the `SspMode` values.
    pub mode: i32,
    /// Split parameter of the hybrid plan, in (0, 1).
    pub alpha: f64,
    /// Nonzero injects per-invocation search failures.
    pub noisy: u8,
    /// Failure probability of a single search invocation, in [0, 1].
    pub fail_prob: f64,
    /// Seed for the noisy search stream.
    pub seed: u64,
    /// Repetitions of the boosted inner search levels; 0 keeps the 2n schedule.
    pub boost_reps: u64,
}

impl SspOptions {
    fn defaults() -> SspOptions {
        SspOptions {
            mode: SspMode::Classical as i32,
            alpha: ssp_core::DEFAULT_ALPHA,
            noisy: 0,
            fail_prob: 0.1,
            seed: 0,
            boost_reps: 0,
        }
    }
}

/// Opaque solve result; free with `ssp_solution_free`.
pub struct SspSolution {
    superstring: CString,
    /// Path as 0-based indices into the caller's original string order.
    path: Vec<usize>,
    filtered: Vec<usize>,
    weight: i64,
    quantum: [u64; 3],
    classical_entries: u64,
    used_fallback: bool,
}

fn saturating_u64(x: u128) -> u64 {
    u64::try_from(x).unwrap_or(u64::MAX)
}

fn build_handle(sol: &Solution, pre: &Preprocessed) -> Option<SspSolution> {
    let superstring = CString::new(sol.superstring.clone()).ok()?;
    Some(SspSolution {
        superstring,
        path: sol.path.vertices().iter().map(|&v| pre.survivor_originals[v]).collect(),
        filtered: pre.filtered(),
        weight: sol.weight.value()?,
        quantum: [
            saturating_u64(sol.ledger.level(Level::Nested)),
            saturating_u64(sol.ledger.level(Level::Middle)),
            saturating_u64(sol.ledger.level(Level::Final)),
        ],
        classical_entries: saturating_u64(sol.table_entries),
        used_fallback: sol.used_fallback,
    })
}

/// Fill `options` with defaults (classical mode, alpha 0.055, exact search).
///
/// # Safety
/// `options` must be null or point to writable `SspOptions` storage.
#[no_mangle]
pub unsafe extern "C" fn ssp_options_init(options: *mut SspOptions) -> SspStatus {
    if options.is_null() {
        return SspStatus::NullArgument;
    }
    unsafe { *options = SspOptions::defaults() };
    SspStatus::Ok
}

/// Solve the shortest-superstring instance given by `count` NUL-terminated
/// strings. On success stores a handle in `*out_solution`.
///
/// # Safety
/// `strings` must point to `count` valid NUL-terminated strings and
/// `out_solution` to writable storage; `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn ssp_solve(
    strings: *const *const c_char,
    count: size_t,
    options: *const SspOptions,
    out_solution: *mut *mut SspSolution,
) -> SspStatus {
    if strings.is_null() || out_solution.is_null() {
        return SspStatus::NullArgument;
    }
    unsafe { *out_solution = ptr::null_mut() };

    let opts = if options.is_null() { SspOptions::defaults() } else { unsafe { *options } };
    let mode = match opts.mode {
        x if x == SspMode::Classical as i32 => SolveMode::Classical,
        x if x == SspMode::Hybrid as i32 => SolveMode::Hybrid,
        x if x == SspMode::Brute as i32 => SolveMode::Brute,
        _ => return SspStatus::InvalidInput,
    };
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) || !(0.0..=1.0).contains(&opts.fail_prob) {
        return SspStatus::InvalidInput;
    }

    let mut raw = Vec::with_capacity(count);
    for i in 0..count {
        let p = unsafe { *strings.add(i) };
        if p.is_null() {
            return SspStatus::NullArgument;
        }
        match unsafe { CStr::from_ptr(p) }.to_str() {
            Ok(s) => raw.push(s.to_string()),
            Err(_) => return SspStatus::InvalidInput,
        }
    }

    let cfg = QMaxConfig {
        mode: if opts.noisy != 0 { QMaxMode::Noisy } else { QMaxMode::Exact },
        fail_prob: opts.fail_prob,
        seed: opts.seed,
        boost_reps: (opts.boost_reps != 0).then_some(opts.boost_reps),
        boost_final: None,
    };

    let result = catch_unwind(AssertUnwindSafe(|| -> Result<SspSolution, SspStatus> {
        let pre = preprocess(&raw).map_err(|_| SspStatus::InvalidInput)?;
        let sol = solve(&pre.instance, mode, &cfg, opts.alpha).map_err(|e| match e {
            SolveError::TooLarge { .. } | SolveError::OracleLimit => SspStatus::TooLarge,
            SolveError::TotalLengthTooLarge => SspStatus::InvalidInput,
            _ => SspStatus::Internal,
        })?;
        build_handle(&sol, &pre).ok_or(SspStatus::Internal)
    }));

    match result {
        Ok(Ok(handle)) => {
            unsafe { *out_solution = Box::into_raw(Box::new(handle)) };
            SspStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => SspStatus::Internal,
    }
}

/// Free a solution handle. Null is a no-op.
///
/// # Safety
/// `solution` must be null or a pointer previously returned by `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_free(solution: *mut SspSolution) {
    if !solution.is_null() {
        drop(unsafe { Box::from_raw(solution) });
    }
}

unsafe fn handle<'a>(solution: *const SspSolution) -> Option<&'a SspSolution> {
    unsafe { solution.as_ref() }
}

/// The superstring as a NUL-terminated string, owned by the handle.
/// Returns null for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_superstring(solution: *const SspSolution) -> *const c_char {
    match unsafe { handle(solution) } {
        Some(h) => h.superstring.as_ptr(),
        None => ptr::null(),
    }
}

/// Superstring length in bytes; 0 for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_length(solution: *const SspSolution) -> size_t {
    unsafe { handle(solution) }.map_or(0, |h| h.superstring.as_bytes().len())
}

/// Total overlap weight of the returned path; -1 for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_weight(solution: *const SspSolution) -> i64 {
    unsafe { handle(solution) }.map_or(-1, |h| h.weight)
}

/// Number of vertices on the path (surviving strings after filtering).
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_path_len(solution: *const SspSolution) -> size_t {
    unsafe { handle(solution) }.map_or(0, |h| h.path.len())
}

/// The `i`-th path vertex as a 0-based index into the caller's original
/// string order; -1 when out of range.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_path_vertex(
    solution: *const SspSolution,
    i: size_t,
) -> i32 {
    unsafe { handle(solution) }
        .and_then(|h| h.path.get(i))
        .map_or(-1, |&v| i32::try_from(v).unwrap_or(-1))
}

/// Number of original strings dropped by duplicate/containment filtering.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_filtered_len(solution: *const SspSolution) -> size_t {
    unsafe { handle(solution) }.map_or(0, |h| h.filtered.len())
}

/// The `i`-th filtered original index; -1 when out of range.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_filtered_index(
    solution: *const SspSolution,
    i: size_t,
) -> i32 {
    unsafe { handle(solution) }
        .and_then(|h| h.filtered.get(i))
        .map_or(-1, |&v| i32::try_from(v).unwrap_or(-1))
}

/// Total charged quantum queries (saturating at u64).
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_quantum_queries(solution: *const SspSolution) -> u64 {
    unsafe { handle(solution) }
        .map_or(0, |h| h.quantum.iter().fold(0u64, |a, &b| a.saturating_add(b)))
}

/// Charged queries of one level (`SspLevel` values); 0 for other arguments.
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_level_queries(
    solution: *const SspSolution,
    level: i32,
) -> u64 {
    match (unsafe { handle(solution) }, level) {
        (Some(h), 0..=2) => h.quantum[level as usize],
        _ => 0,
    }
}

/// DP-table entries materialized by the solve (0 for brute mode).
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_classical_entries(solution: *const SspSolution) -> u64 {
    unsafe { handle(solution) }.map_or(0, |h| h.classical_entries)
}

/// Nonzero when a hybrid solve resolved classically (instance below the
/// recursion's minimum size).
///
/// # Safety
/// `solution` must be null or a live handle from `ssp_solve`.
#[no_mangle]
pub unsafe extern "C" fn ssp_solution_used_fallback(solution: *const SspSolution) -> u8 {
    unsafe { handle(solution) }.map_or(0, |h| u8::from(h.used_fallback))
}

/// Human-readable name of a status code.
#[no_mangle]
pub extern "C" fn ssp_status_name(status: i32) -> *const c_char {
    let name: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null argument\0",
        2 => b"invalid input\0",
        3 => b"instance too large\0",
        4 => b"internal error\0",
        _ => b"unknown status\0",
    };
    name.as_ptr().cast()
}
