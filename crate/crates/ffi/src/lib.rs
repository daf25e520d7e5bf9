//! C ABI for hecke-lab.
//!
//! Every fallible function returns an [`HlStatus`] and writes its results
//! through out-pointers. On failure a message is kept per thread and can be
//! fetched with [`hl_last_error_message`]. Tables and period vectors cross
//! the boundary as opaque handles that must be released with their `_free`
//! function. Strings returned by the library are owned by the caller and
//! released with [`hl_string_free`].
//!
//! Matrix entries cross the boundary as `int64_t`. Results that do not fit
//! report [`HlStatus::Overflow`]; the JSON functions carry exact values.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use hecke_lab::cosets::CosetTable;
use hecke_lab::formal::{lewis_check_function, Beta, CheckMode, PeriodVector, Representation, Seed};
use hecke_lab::gl2::{coset_key, hnf_decompose, membership, GroupSpec, Mat2};
use hecke_lab::hecke::{detect_eigenvalue, h_hat_coset_sum, t_tilde_apply};
use hecke_lab::json::{
    coset_sum_to_json, farey_to_json, formal_sum_to_json, parse_rational, table_to_json, to_canonical_string,
    weights_to_json,
};
use hecke_lab::stern::{farey_path, psi_total, psi_vector};
use hecke_lab::suite::{run_suite, SuiteConfig};
use hecke_lab::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Invalid arguments or configuration.
    Usage = 2,
    /// Arguments outside the domain of the operation.
    Domain = 3,
    /// Malformed text input.
    Parse = 4,
    /// A result entry does not fit in int64_t.
    Overflow = 5,
    /// An internal invariant failed.
    Internal = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// A 2×2 integer matrix (a b; c d).
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HlMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Canonical key of the left coset Γ₀(n)·g: the P¹ class of the bottom row
/// of the SL(2,Z) factor and the Hermite factor.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HlCosetKey {
    pub level: u64,
    pub class_c: u64,
    pub class_d: u64,
    pub hnf: HlMat2,
}

/// One row of an index table.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HlIndexEntry {
    pub c: u64,
    pub b: u64,
    pub d: u64,
    /// Upper triangular representative A_i.
    pub a_mat: HlMat2,
    /// SL(2,Z) representative R_i.
    pub r_mat: HlMat2,
    /// Image of this ordinal under the bijection hₙ.
    pub h: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlSeed {
    /// z ↦ 1/z, weight one only.
    InverseZ = 0,
    /// z ↦ 1 − z^(−2β).
    Eisenstein = 1,
    /// z ↦ 1, never a solution.
    Constant = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlCheckMode {
    Exact = 0,
    Sampled = 1,
    Float = 2,
}

/// Opaque handle to the index table of a level.
pub struct HlIndexTable {
    inner: Arc<CosetTable>,
}

/// Opaque handle to a vector of formal sums together with its seed and
/// weight.
pub struct HlPeriodVector {
    inner: PeriodVector,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("NULs were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(HlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Usage(_) => HlStatus::Usage,
            Error::Domain(_) | Error::Singular(_) | Error::Pole { .. } => HlStatus::Domain,
            Error::Parse(_) => HlStatus::Parse,
            _ => HlStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn null(what: &str) -> Failure {
    Failure(HlStatus::NullPointer, format!("{what} must not be NULL"))
}

/// Runs `body`, converting errors and panics into a status and last error.
fn guard(body: impl FnOnce() -> Outcome) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            HlStatus::Panic
        }
    }
}

/// Writes `value` through `out`.
///
/// # Safety
/// `out` must be NULL or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, what: &str, value: T) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn mat_in(m: HlMat2) -> Mat2 {
    Mat2::new(m.a, m.b, m.c, m.d)
}

fn mat_out(m: &Mat2) -> Result<HlMat2, Failure> {
    m.to_i64()
        .map(|[a, b, c, d]| HlMat2 { a, b, c, d })
        .ok_or_else(|| Failure(HlStatus::Overflow, format!("matrix {m} does not fit in int64_t")))
}

fn string_out(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(HlStatus::Internal, "string contains NUL".into()))
}

fn positive(n: u64, what: &str) -> Result<u64, Failure> {
    if n == 0 {
        return Err(Failure(HlStatus::Usage, format!("{what} must be positive")));
    }
    Ok(n)
}

fn seed_in(s: HlSeed) -> Seed {
    match s {
        HlSeed::InverseZ => Seed::InverseZ,
        HlSeed::Eisenstein => Seed::Eisenstein,
        HlSeed::Constant => Seed::Constant,
    }
}

fn mode_in(m: HlCheckMode) -> CheckMode {
    match m {
        HlCheckMode::Exact => CheckMode::Exact,
        HlCheckMode::Sampled => CheckMode::Sampled,
        HlCheckMode::Float => CheckMode::Float,
    }
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL if the last call
/// succeeded. The caller frees the result with [`hl_string_free`].
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Splits a matrix of positive determinant as g = γ·A with γ ∈ SL(2,Z) and
/// A = (a b; 0 d), a ≥ 1, 0 ≤ b < d.
///
/// # Safety
/// `gamma` and `upper` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_hnf_decompose(g: HlMat2, gamma: *mut HlMat2, upper: *mut HlMat2) -> HlStatus {
    guard(|| {
        if gamma.is_null() || upper.is_null() {
            return Err(null("output matrix"));
        }
        let (x, a) = hnf_decompose(&mat_in(g))?;
        let (x, a) = (mat_out(&x)?, mat_out(&a)?);
        write_out(gamma, "gamma", x)?;
        write_out(upper, "upper", a)
    })
}

/// Canonical key of the left coset Γ₀(n)·g for a matrix of positive
/// determinant. Two matrices lie in the same coset iff their keys are equal.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_coset_key(n: u64, g: HlMat2, out: *mut HlCosetKey) -> HlStatus {
    guard(|| {
        let key = coset_key(positive(n, "level")?, &mat_in(g))?;
        let value =
            HlCosetKey { level: key.level, class_c: key.class.0, class_d: key.class.1, hnf: mat_out(&key.hnf)? };
        write_out(out, "out", value)
    })
}

/// Whether g lies in Γ₀(n).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_in_gamma0(n: u64, g: HlMat2, out: *mut bool) -> HlStatus {
    guard(|| {
        let spec = GroupSpec::gamma0(positive(n, "level")?)?;
        write_out(out, "out", membership(&mat_in(g), spec))
    })
}

/// Builds (or fetches from the cache) the index table of level n.
///
/// # Safety
/// `out` must be valid for a write. Release the handle with
/// [`hl_index_table_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_index_table_new(n: u64, out: *mut *mut HlIndexTable) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = CosetTable::get(positive(n, "level")?)?;
        write_out(out, "out", Box::into_raw(Box::new(HlIndexTable { inner })))
    })
}

/// Number of entries μₙ, or 0 for a NULL handle.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_index_table_len(t: *const HlIndexTable) -> usize {
    t.as_ref().map_or(0, |t| t.inner.len())
}

/// Copies entry `i` of the table.
///
/// # Safety
/// `t` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_index_table_entry(t: *const HlIndexTable, i: usize, out: *mut HlIndexEntry) -> HlStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("table"))?.inner;
        let e = t
            .entries
            .get(i)
            .ok_or_else(|| Failure(HlStatus::Usage, format!("ordinal {i} out of range for {} entries", t.len())))?;
        let value =
            HlIndexEntry { c: e.c, b: e.b, d: e.d, a_mat: mat_out(&e.a_mat)?, r_mat: mat_out(&e.r)?, h: t.h[i] };
        write_out(out, "out", value)
    })
}

/// Canonical JSON export of the table.
///
/// # Safety
/// `t` must be a live handle and `out` valid for a write. Free the string
/// with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_index_table_to_json(t: *const HlIndexTable, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("table"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, "out", string_out(to_canonical_string(&table_to_json(&t.inner)))?)
    })
}

/// Releases a table handle. NULL is ignored.
///
/// # Safety
/// `t` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_index_table_free(t: *mut HlIndexTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The ψ solution of level n on the given seed and integer weight β.
///
/// # Safety
/// `out` must be valid for a write. Release the handle with
/// [`hl_period_vector_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_psi_vector_new(n: u64, seed: HlSeed, beta: u32, out: *mut *mut HlPeriodVector) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let n = positive(n, "level")?;
        if beta == 0 {
            return Err(Failure(HlStatus::Domain, "beta must be a positive integer".into()));
        }
        if seed == HlSeed::InverseZ && beta != 1 {
            return Err(Failure(HlStatus::Domain, "the seed 1/z needs beta = 1".into()));
        }
        let inner = PeriodVector::new(n, seed_in(seed), Beta::Int(beta), psi_vector(n)?);
        write_out(out, "out", Box::into_raw(Box::new(HlPeriodVector { inner })))
    })
}

/// Level of the vector, or 0 for a NULL handle.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_period_vector_level(v: *const HlPeriodVector) -> u64 {
    v.as_ref().map_or(0, |v| v.inner.n)
}

/// Number of components, or 0 for a NULL handle.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_period_vector_len(v: *const HlPeriodVector) -> usize {
    v.as_ref().map_or(0, |v| v.inner.weights.len())
}

/// Applies T̃ₙ,ₘ to a vector of level n, giving a new vector of level n.
///
/// # Safety
/// `v` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_t_tilde_apply(v: *const HlPeriodVector, m: u64, out: *mut *mut HlPeriodVector) -> HlStatus {
    guard(|| {
        let v = &v.as_ref().ok_or_else(|| null("vector"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = t_tilde_apply(v.n, positive(m, "m")?, v)?;
        write_out(out, "out", Box::into_raw(Box::new(HlPeriodVector { inner })))
    })
}

/// Checks the three-term equation for every component under ρ̃ and writes
/// whether all components pass.
///
/// # Safety
/// `v` must be a live handle and `passed` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_period_vector_check_three_term(
    v: *const HlPeriodVector,
    mode: HlCheckMode,
    passed: *mut bool,
) -> HlStatus {
    guard(|| {
        let v = &v.as_ref().ok_or_else(|| null("vector"))?.inner;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let report = lewis_check_function(v, Representation::RhoTilde, mode_in(mode))?;
        write_out(passed, "passed", report.passed())
    })
}

/// Writes λ as a decimal string "p/q" or "p" if `output` = λ·`input`
/// componentwise, and NULL otherwise.
///
/// # Safety
/// Both handles must be live and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_detect_eigenvalue(
    input: *const HlPeriodVector,
    output: *const HlPeriodVector,
    out: *mut *mut c_char,
) -> HlStatus {
    guard(|| {
        let input = &input.as_ref().ok_or_else(|| null("input"))?.inner;
        let output = &output.as_ref().ok_or_else(|| null("output"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        let value = match detect_eigenvalue(input, output)? {
            Some(l) => string_out(l.to_string())?,
            None => std::ptr::null_mut(),
        };
        write_out(out, "out", value)
    })
}

/// Canonical JSON export of the vector.
///
/// # Safety
/// `v` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_period_vector_to_json(v: *const HlPeriodVector, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let v = &v.as_ref().ok_or_else(|| null("vector"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, "out", string_out(to_canonical_string(&weights_to_json(v)))?)
    })
}

/// Releases a vector handle. NULL is ignored.
///
/// # Safety
/// `v` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_period_vector_free(v: *mut HlPeriodVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Canonical JSON of the total orbit sum ψ of level n.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_psi_total_json(n: u64, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let w = psi_total(positive(n, "level")?)?;
        write_out(out, "out", string_out(to_canonical_string(&formal_sum_to_json(&w)))?)
    })
}

/// Canonical JSON of the Farey path of num/den ∈ [0, 1).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_farey_path_json(num: i64, den: i64, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if den == 0 {
            return Err(Failure(HlStatus::Domain, "denominator must be nonzero".into()));
        }
        let q = parse_rational(&format!("{num}/{den}"))?;
        write_out(out, "out", string_out(to_canonical_string(&farey_to_json(&farey_path(&q)?)))?)
    })
}

/// Canonical JSON of Ĥₙ,ₘ as a multiset of left cosets of Γ₀(n).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hl_coset_sum_json(n: u64, m: u64, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = h_hat_coset_sum(positive(n, "level")?, positive(m, "m")?)?;
        write_out(out, "out", string_out(to_canonical_string(&coset_sum_to_json(&s)))?)
    })
}

/// Runs the verification suite. `config_json` is a JSON object with the
/// keys of the report's `config` echo; missing keys take their defaults and
/// NULL means the default config. Writes the JSON report and whether every
/// check passed. A suite that runs but has failing checks still returns
/// [`HlStatus::Ok`] with `passed` set to false.
///
/// # Safety
/// `config_json` must be NULL or a NUL-terminated UTF-8 string; `report`
/// and `passed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_run_suite_json(
    config_json: *const c_char,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> HlStatus {
    guard(|| {
        if report.is_null() || passed.is_null() {
            return Err(null("output"));
        }
        let cfg = if config_json.is_null() {
            SuiteConfig::default()
        } else {
            let text = CStr::from_ptr(config_json)
                .to_str()
                .map_err(|_| Failure(HlStatus::Parse, "config is not valid UTF-8".into()))?;
            let value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| Failure(HlStatus::Parse, format!("config is not JSON: {e}")))?;
            SuiteConfig::from_json(&value)?
        };
        let r = run_suite(&cfg)?;
        let text = string_out(to_canonical_string(&r.to_json()))?;
        write_out(passed, "passed", r.passed())?;
        write_out(report, "report", text)
    })
}
