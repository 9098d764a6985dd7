//! C interface to `lcrit`.
//!
//! Every fallible function returns an [`LcritStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`lcrit_last_error_message`]. Handles are opaque and must be
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use lcrit::criterion::{self, Vanishing};
use lcrit::oracle::{self, CurveRegistry, LVerdict, OracleConfig};
use lcrit::quadforms::enumerate_forms;
use lcrit::{Error, FormSet, RationalPoint};

/// Result codes. The numeric values match the command-line exit codes where
/// both exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcritStatus {
    Ok = 0,
    Internal = 1,
    Precondition = 2,
    NullPointer = 4,
    InvalidString = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcritLVerdict {
    Zero = 0,
    Nonzero = 1,
    Indeterminate = 2,
}

/// Curve and eta-quotient data used by the L-value estimate.
pub struct LcritContext {
    registry: CurveRegistry,
}

/// Forms enumerated for one `(N, Δ, x)`.
pub struct LcritFormSet {
    set: FormSet,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcritForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcritFValue {
    pub value: i64,
    pub count: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcritVerdict {
    pub level: u32,
    pub d: i64,
    pub f_x1: i64,
    pub f_x2: i64,
    pub count_x1: u64,
    pub count_x2: u64,
    /// `L(E_D, 1) = 0`.
    pub vanishes: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcritParity {
    pub count: u64,
    pub odd: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LcritLValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
    pub conductor: u64,
    pub verdict: LcritLVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: LcritStatus, msg: impl Into<String>) -> LcritStatus {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> LcritStatus {
    let status = if e.is_precondition() {
        LcritStatus::Precondition
    } else {
        LcritStatus::Internal
    };
    fail(status, e.to_string())
}

/// Run `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), LcritStatus>) -> LcritStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LcritStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(LcritStatus::Panic, "panic inside lcrit"),
    }
}

fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, LcritStatus> {
    // SAFETY: callers pass either null or a pointer to writable storage for T
    unsafe { out.as_mut() }.ok_or_else(|| fail(LcritStatus::NullPointer, "null output pointer"))
}

fn point(p: i64, q: i64) -> Result<RationalPoint, LcritStatus> {
    RationalPoint::new(p, q).map_err(from_error)
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lcrit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn lcrit_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Context with the built-in curve data. Never null.
#[no_mangle]
pub extern "C" fn lcrit_context_new() -> *mut LcritContext {
    Box::into_raw(Box::new(LcritContext {
        registry: CurveRegistry::builtin(),
    }))
}

/// Context with curve data read from `level-NN.json` files in `dir`.
///
/// # Safety
/// `dir` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_context_from_dir(
    dir: *const c_char,
    out: *mut *mut LcritContext,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        if dir.is_null() {
            return Err(fail(LcritStatus::NullPointer, "null directory"));
        }
        // SAFETY: non-null and nul-terminated per the contract above
        let dir = unsafe { CStr::from_ptr(dir) }
            .to_str()
            .map_err(|e| fail(LcritStatus::InvalidString, e.to_string()))?;
        let registry = CurveRegistry::load_dir(Path::new(dir)).map_err(from_error)?;
        *out = Box::into_raw(Box::new(LcritContext { registry }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from `lcrit_context_new`/`lcrit_context_from_dir` and not
/// have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lcrit_context_free(ctx: *mut LcritContext) {
    if !ctx.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Kronecker symbol `(a/n)`.
#[no_mangle]
pub extern "C" fn lcrit_kronecker(a: i64, n: i64) -> i32 {
    lcrit::arith::kronecker(a, n)
}

/// `F_{0,N,D,D₀}(p/q)` and the number of forms summed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_f_sum(
    level: u64,
    d0: i64,
    d: i64,
    p: i64,
    q: i64,
    out: *mut LcritFValue,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let e = criterion::f_sum(level, d0, d, point(p, q)?).map_err(from_error)?;
        *out = LcritFValue {
            value: e.value,
            count: e.count,
        };
        Ok(())
    })
}

fn verdict_to_c(v: &criterion::VanishingVerdict) -> LcritVerdict {
    LcritVerdict {
        level: v.level,
        d: v.d,
        f_x1: v.f_x1,
        f_x2: v.f_x2,
        count_x1: v.count_x1,
        count_x2: v.count_x2,
        vanishes: v.outcome == Vanishing::LVanishes,
    }
}

/// Decide `L(E_D, 1) = 0` at a dimension-one level.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_vanishing_verdict(
    level: u32,
    d: i64,
    out: *mut LcritVerdict,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let v = criterion::vanishing_verdict(level, d).map_err(from_error)?;
        *out = verdict_to_c(&v);
        Ok(())
    })
}

/// Congruent-number test for `n ≡ 3 (mod 8)`; `vanishes` set means `n` is
/// congruent assuming BSD, unset means provably not congruent.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_congruent(n: i64, out: *mut LcritVerdict) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let v = criterion::congruent_verdict(n).map_err(from_error)?;
        *out = verdict_to_c(&v.basis);
        Ok(())
    })
}

/// Rational points on `x³ + n·y² = 432` for `n ≡ 1 (mod 3)`; `vanishes` set
/// means infinitely many assuming BSD, unset means finitely many.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_cubes(n: i64, out: *mut LcritVerdict) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let v = criterion::cubes_verdict(n).map_err(from_error)?;
        *out = verdict_to_c(&v.basis);
        Ok(())
    })
}

/// Parity of `#S_{32,3p}(1/3)` for a prime `p ≡ 3 (mod 8)`. An odd count
/// proves `p` is not congruent.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_parity(p: i64, out: *mut LcritParity) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let r = criterion::parity_test(p).map_err(from_error)?;
        *out = LcritParity {
            count: r.count,
            odd: r.odd,
        };
        Ok(())
    })
}

/// Truncated-series estimate of `L(E_D, 1)`. `terms = 0` picks the default
/// truncation.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_l_value(
    ctx: *const LcritContext,
    level: u32,
    d: i64,
    terms: usize,
    out: *mut LcritLValue,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        // SAFETY: live context per the contract above
        let ctx = unsafe { ctx.as_ref() }
            .ok_or_else(|| fail(LcritStatus::NullPointer, "null context"))?;
        let config = OracleConfig {
            terms: (terms > 0).then_some(terms),
            ..Default::default()
        };
        let e = oracle::estimate_l_value(&ctx.registry, level, d, &config).map_err(from_error)?;
        *out = LcritLValue {
            value: e.value,
            tail_bound: e.tail_bound,
            terms_used: e.terms_used,
            conductor: e.conductor,
            verdict: match e.verdict {
                LVerdict::Zero => LcritLVerdict::Zero,
                LVerdict::Nonzero => LcritLVerdict::Nonzero,
                LVerdict::Indeterminate => LcritLVerdict::Indeterminate,
            },
        };
        Ok(())
    })
}

/// Forms `[a, b, c]` of discriminant `delta` with `a < 0`, `level | a` and
/// positive value at `p/q`, in lexicographic order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_enumerate_forms(
    level: u64,
    delta: i64,
    p: i64,
    q: i64,
    out: *mut *mut LcritFormSet,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        let set = enumerate_forms(level, delta, point(p, q)?).map_err(from_error)?;
        *out = Box::into_raw(Box::new(LcritFormSet { set }));
        Ok(())
    })
}

/// Number of forms in the set; 0 for null.
///
/// # Safety
/// `set` must be null or a live form set.
#[no_mangle]
pub unsafe extern "C" fn lcrit_formset_len(set: *const LcritFormSet) -> usize {
    // SAFETY: null or live per the contract above
    unsafe { set.as_ref() }.map_or(0, |s| s.set.len())
}

/// Copy form `index` into `out`.
///
/// # Safety
/// `set` must be a live form set and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcrit_formset_get(
    set: *const LcritFormSet,
    index: usize,
    out: *mut LcritForm,
) -> LcritStatus {
    guard(|| {
        let out = out_ref(out)?;
        // SAFETY: live form set per the contract above
        let set = unsafe { set.as_ref() }
            .ok_or_else(|| fail(LcritStatus::NullPointer, "null form set"))?;
        let f = set.set.forms.get(index).ok_or_else(|| {
            fail(
                LcritStatus::Precondition,
                format!("index {index} out of range for {} forms", set.set.len()),
            )
        })?;
        *out = LcritForm {
            a: f.a,
            b: f.b,
            c: f.c,
        };
        Ok(())
    })
}

/// # Safety
/// `set` must come from `lcrit_enumerate_forms` and not have been freed.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lcrit_formset_free(set: *mut LcritFormSet) {
    if !set.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate
        drop(unsafe { Box::from_raw(set) });
    }
}
