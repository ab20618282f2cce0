//! C ABI for `mutspace`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`MsStatus`] and writes its result
//!   through an out-pointer. On failure the out-pointer is left untouched
//!   and [`ms_last_error`] describes the problem.
//! * Matrices are opaque handles owned by the caller and released with
//!   their `_free` function. Strings returned through `char **` are owned by
//!   the caller and released with [`ms_string_free`].
//! * Input strings are NUL-terminated UTF-8. Optional inputs may be NULL.
//! * Handles may be shared between threads for reading; the last-error
//!   message is per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mutspace::diffcore::Policy;
use mutspace::lattice::build_pdl;
use mutspace::mbfl::{rank_statements, FaultLocalizationInput, Method};
use mutspace::mutlang::{
    behavior_matrix, check_inputs, mutate_all, parse, spec_from_json, tests_from_json, ExecOptions,
    Operator,
};
use mutspace::progspace::ProgramSpace;
use mutspace::subsumption::{build_dmsg, max_minimal_size, minimal_mutant_set, KillMatrix};
use mutspace::{BehaviorMatrix, Differentiator, Error, ProgramId, Role};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: syntax, schema, unknown ids, policies or metrics.
    InvalidInput = 3,
    /// A program with a required role is missing or has the wrong role.
    Role = 4,
    /// The explicit lattice would exceed its dimension limit.
    Capacity = 5,
    /// The result does not fit the requested integer type.
    Overflow = 6,
    /// An internal error; please report it.
    Internal = 7,
}

/// A behavior matrix: programs by tests, each cell a behavior token.
pub struct MsBehaviorMatrix(BehaviorMatrix);

/// A boolean tests-by-mutants kill matrix.
pub struct MsKillMatrix(KillMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> MsStatus {
    match e {
        Error::MissingRole(_) | Error::WrongRole { .. } => MsStatus::Role,
        Error::Capacity { .. } => MsStatus::Capacity,
        _ => MsStatus::InvalidInput,
    }
}

struct Fail(MsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            MsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: panic in mutspace");
            MsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(MsStatus::NullArgument, format!("`{name}` is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            MsStatus::InvalidUtf8,
            format!("`{name}` is not valid UTF-8"),
        )
    })
}

unsafe fn opt_str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, name).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| Fail(MsStatus::NullArgument, format!("`{name}` is NULL")))
}

fn check_out<T>(out: *mut T) -> FfiResult<()> {
    if out.is_null() {
        Err(Fail(
            MsStatus::NullArgument,
            "output pointer is NULL".into(),
        ))
    } else {
        Ok(())
    }
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Fail(MsStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn differentiator(policy: *const c_char, epsilon: f64) -> FfiResult<Differentiator> {
    let name = opt_str_arg(policy, "policy")?.unwrap_or("output");
    let eps = (!epsilon.is_nan()).then_some(epsilon);
    Ok(Differentiator::from_policy(Policy::parse(name, eps)?))
}

/// Message describing the last failure on this thread; empty after a
/// success. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a behavior matrix from its JSON interchange form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_behavior_matrix_from_json(
    json: *const c_char,
    out: *mut *mut MsBehaviorMatrix,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let bm = BehaviorMatrix::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(MsBehaviorMatrix(bm)));
        Ok(())
    })
}

/// Executes `source` and its mutants on a JSON test suite. `spec_json`
/// (expected outputs) and `operators` (for example `"AOR,ROR"`; all when
/// NULL) are optional.
///
/// # Safety
/// String arguments must be NUL-terminated or NULL where optional; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_behavior_matrix_from_program(
    source: *const c_char,
    tests_json: *const c_char,
    spec_json: *const c_char,
    operators: *const c_char,
    budget: u64,
    tracing: bool,
    out: *mut *mut MsBehaviorMatrix,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let program = parse(str_arg(source, "source")?)?;
        let tests = tests_from_json(str_arg(tests_json, "tests_json")?)?;
        check_inputs(&program, &tests)?;
        let spec = opt_str_arg(spec_json, "spec_json")?
            .map(spec_from_json)
            .transpose()?;
        let operators = match opt_str_arg(operators, "operators")? {
            Some(list) => Operator::parse_list(list)?,
            None => Operator::ALL.to_vec(),
        };
        let mutants = mutate_all(&program, &operators);
        let options = ExecOptions { budget, tracing };
        let bm = behavior_matrix(&program, &mutants, &tests, options, spec.as_ref())?;
        *out = Box::into_raw(Box::new(MsBehaviorMatrix(bm)));
        Ok(())
    })
}

/// Serializes a behavior matrix to JSON.
///
/// # Safety
/// `bm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_behavior_matrix_to_json(
    bm: *const MsBehaviorMatrix,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, handle(bm, "bm")?.0.to_json())
    })
}

/// # Safety
/// `bm` must be NULL or a live handle, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ms_behavior_matrix_free(bm: *mut MsBehaviorMatrix) {
    if !bm.is_null() {
        drop(Box::from_raw(bm));
    }
}

/// Parses a kill matrix CSV (`test,m1,...` header, one 0/1 row per test).
///
/// # Safety
/// `csv` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_kill_matrix_from_csv(
    csv: *const c_char,
    out: *mut *mut MsKillMatrix,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let km = KillMatrix::from_csv(str_arg(csv, "csv")?)?;
        *out = Box::into_raw(Box::new(MsKillMatrix(km)));
        Ok(())
    })
}

/// Derives the kill matrix of every mutant row relative to `origin` (the
/// `original` row when NULL) under a differentiator policy (`output` when
/// NULL). `epsilon` is used by the `numeric` policy; pass NaN for none.
///
/// # Safety
/// `bm` must be a live handle; strings NUL-terminated or NULL; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ms_kill_matrix_from_behavior(
    bm: *const MsBehaviorMatrix,
    origin: *const c_char,
    policy: *const c_char,
    epsilon: f64,
    out: *mut *mut MsKillMatrix,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let bm = &handle(bm, "bm")?.0;
        let d = differentiator(policy, epsilon)?;
        let origin = match opt_str_arg(origin, "origin")? {
            Some(o) => ProgramId::from(o),
            None => bm
                .with_role(Role::Original)
                .ok_or(Error::MissingRole("original"))?
                .clone(),
        };
        let space = ProgramSpace::over_all_tests(bm, origin, d)?;
        let km = KillMatrix::from_space(&space, &bm.mutants())?;
        *out = Box::into_raw(Box::new(MsKillMatrix(km)));
        Ok(())
    })
}

/// # Safety
/// `km` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_kill_matrix_to_csv(
    km: *const MsKillMatrix,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, handle(km, "km")?.0.to_csv())
    })
}

/// # Safety
/// `km` must be NULL or a live handle, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ms_kill_matrix_free(km: *mut MsKillMatrix) {
    if !km.is_null() {
        drop(Box::from_raw(km));
    }
}

/// Whether mutant `mx` dynamically subsumes `my`.
///
/// # Safety
/// `km` must be a live handle; ids NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_kill_matrix_subsumes(
    km: *const MsKillMatrix,
    mx: *const c_char,
    my: *const c_char,
    out: *mut bool,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let km = &handle(km, "km")?.0;
        *out = mutspace::subsumption::dynamically_subsumes(
            km,
            str_arg(mx, "mx")?,
            str_arg(my, "my")?,
        )?;
        Ok(())
    })
}

/// Minimal mutant set as JSON: `{"minimal", "roots", "live",
/// "reductionRatio"}`.
///
/// # Safety
/// `km` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_minimal_set_json(
    km: *const MsKillMatrix,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, minimal_mutant_set(&handle(km, "km")?.0).to_json())
    })
}

/// The subsumption graph of a kill matrix in DOT.
///
/// # Safety
/// `km` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_dmsg_dot(km: *const MsKillMatrix, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, build_dmsg(&handle(km, "km")?.0).to_dot())
    })
}

/// The unannotated `n`-dimensional deviance lattice in DOT.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_pdl_dot(n: usize, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, build_pdl(n)?.to_dot())
    })
}

/// Upper bound on the minimal mutant set size for `n` tests, as a
/// `uint64_t`. Returns `MS_STATUS_OVERFLOW` when it does not fit; use
/// [`ms_max_minimal_size_decimal`] then.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_max_minimal_size(n: u64, out: *mut u64) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let bound = max_minimal_size(n);
        *out = u64::try_from(&bound).map_err(|_| {
            Fail(
                MsStatus::Overflow,
                format!("C({n}, {}) = {bound} exceeds 64 bits", n / 2),
            )
        })?;
        Ok(())
    })
}

/// [`ms_max_minimal_size`] as a decimal string of any length.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_max_minimal_size_decimal(n: u64, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        check_out(out)?;
        put_string(out, max_minimal_size(n).to_string())
    })
}

/// Suspiciousness report JSON for every mutant row. `method` is `fix`,
/// `flt-ochiai` or `flt-jaccard`; each mutant is ranked as its own
/// location. The matrix needs `spec` and `original` rows.
///
/// # Safety
/// `bm` must be a live handle; strings NUL-terminated or NULL where
/// optional; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_mbfl_report_json(
    bm: *const MsBehaviorMatrix,
    method: *const c_char,
    policy: *const c_char,
    epsilon: f64,
    out: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        check_out(out)?;
        let bm = &handle(bm, "bm")?.0;
        let method = Method::parse(str_arg(method, "method")?)?;
        let d = differentiator(policy, epsilon)?;
        let mutants = bm
            .mutants()
            .into_iter()
            .map(|m| {
                let loc = m.to_string();
                (m, Some(loc))
            })
            .collect();
        let input = FaultLocalizationInput::new(bm, mutants, bm.tests().clone(), d)?;
        put_string(out, rank_statements(&input, method)?.to_json())
    })
}
