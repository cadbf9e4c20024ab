//! C ABI over the solenoid library.
//!
//! Conventions: a `SolContext` is an opaque handle holding the prime set and
//! snowflake exponents; values cross the boundary as NUL-terminated strings
//! in the library's exact text formats (rationals as `num/den`, points as
//! `;`-separated coordinates); every function returns a [`SolStatus`];
//! strings written to out-parameters are owned by the caller and released
//! with [`sol_string_free`]; on failure [`sol_last_error`] describes the
//! problem for the current thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use solenoid_core::action::{self, SMatrix, TorusPoint};
use solenoid_core::circle::{self, Character, Level};
use solenoid_core::error::Error;
use solenoid_core::geometry::{Exponents, SPoint};
use solenoid_core::measure;
use solenoid_core::padic::{crt_solve, parse_rational, PrimeSet, Valuation};
use solenoid_core::solenoid::{self, SolenoidPoint};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolStatus {
    Ok = 0,
    /// Malformed or out-of-domain input.
    InvalidInput = 2,
    /// A resource guard tripped (orbit bit limit).
    ResourceLimit = 3,
    /// A required pointer argument was NULL.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An internal invariant failed; the library state is still usable.
    Panic = 6,
}

/// Opaque evaluation context: the prime set and snowflake exponents.
pub struct SolContext {
    primes: PrimeSet,
    exponents: Exponents,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn lib_error(err: Error) -> SolStatus {
    let status = if err.is_resource() {
        SolStatus::ResourceLimit
    } else {
        SolStatus::InvalidInput
    };
    set_error(err.to_string());
    status
}

fn guard(f: impl FnOnce() -> SolStatus) -> SolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".into());
            SolStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char) -> Result<&'a str, SolStatus> {
    if ptr.is_null() {
        set_error("NULL string argument".into());
        return Err(SolStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        SolStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> SolStatus {
    if out.is_null() {
        set_error("NULL output pointer".into());
        return SolStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(s) => {
            *out = s.into_raw();
            SolStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL".into());
            SolStatus::Panic
        }
    }
}

unsafe fn context_arg<'a>(ctx: *const SolContext) -> Result<&'a SolContext, SolStatus> {
    if ctx.is_null() {
        set_error("NULL context".into());
        return Err(SolStatus::NullPointer);
    }
    Ok(&*ctx)
}

fn point_json(x: &SolenoidPoint) -> String {
    format!(r#"{{"rep":"{}","shift":"{}"}}"#, x.rep(), x.shift())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn sol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn sol_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Release a string returned through an out-parameter.
///
/// # Safety
/// `s` must be a pointer previously returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn sol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create a context from `n_primes` strictly increasing primes and optional
/// comma-separated snowflake exponents (NULL or empty means all ones).
/// Returns NULL on invalid input (see [`sol_last_error`]).
///
/// # Safety
/// `primes` must point to `n_primes` readable `uint64_t` values.
#[no_mangle]
pub unsafe extern "C" fn sol_context_new(
    primes: *const u64,
    n_primes: usize,
    exponents: *const c_char,
) -> *mut SolContext {
    let result = catch_unwind(AssertUnwindSafe(|| {
        clear_error();
        if primes.is_null() {
            set_error("NULL primes pointer".into());
            return ptr::null_mut();
        }
        let primes = std::slice::from_raw_parts(primes, n_primes).to_vec();
        let primes = match PrimeSet::new(primes) {
            Ok(p) => p,
            Err(err) => {
                set_error(err.to_string());
                return ptr::null_mut();
            }
        };
        let exponents = if exponents.is_null() {
            Exponents::ones(primes.len())
        } else {
            match str_arg(exponents) {
                Ok("") => Exponents::ones(primes.len()),
                Ok(text) => match Exponents::parse(text) {
                    Ok(e) if e.len() == primes.len() => e,
                    Ok(e) => {
                        set_error(format!(
                            "expected {} exponents, got {}",
                            primes.len(),
                            e.len()
                        ));
                        return ptr::null_mut();
                    }
                    Err(err) => {
                        set_error(err.to_string());
                        return ptr::null_mut();
                    }
                },
                Err(_) => return ptr::null_mut(),
            }
        };
        Box::into_raw(Box::new(SolContext { primes, exponents }))
    }));
    result.unwrap_or_else(|_| {
        set_error("internal panic".into());
        ptr::null_mut()
    })
}

/// Release a context.
///
/// # Safety
/// `ctx` must come from [`sol_context_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sol_context_free(ctx: *mut SolContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

unsafe fn parse_point(ctx: &SolContext, text: *const c_char) -> Result<SPoint, SolStatus> {
    let text = str_arg(text)?;
    SPoint::parse(text, &ctx.primes).map_err(lib_error)
}

unsafe fn parse_torus(ctx: &SolContext, text: *const c_char) -> Result<TorusPoint, SolStatus> {
    let text = str_arg(text)?;
    let components = text
        .split('|')
        .map(|part| {
            SPoint::parse(part, &ctx.primes).map(|p| solenoid::reduce(&p))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(lib_error)?;
    TorusPoint::new(components).map_err(lib_error)
}

/// Snowflake distance between two ambient points, as exact text.
///
/// # Safety
/// All pointers must be valid; `out` receives a caller-owned string.
#[no_mangle]
pub unsafe extern "C" fn sol_dist(
    ctx: *const SolContext,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let (a, b) = match (parse_point(ctx, a), parse_point(ctx, b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match a.snowflake_dist(&b, &ctx.exponents) {
            Ok(d) => write_string(out, d.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// Quotient (solenoid) distance between the cosets of two points.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_quotient_dist(
    ctx: *const SolContext,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let (a, b) = match (parse_point(ctx, a), parse_point(ctx, b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match solenoid::quotient_dist(&a, &b, &ctx.exponents) {
            Ok(d) => write_string(out, d.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// Canonical representative and audit shift as JSON
/// `{"rep":"...","shift":"..."}`.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_reduce(
    ctx: *const SolContext,
    point: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match parse_point(ctx, point) {
            Ok(p) => write_string(out, point_json(&solenoid::reduce(&p))),
            Err(s) => s,
        }
    })
}

/// Coset equality of two ambient points.
///
/// # Safety
/// As for [`sol_dist`]; `out` must point to a writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn sol_coset_eq(
    ctx: *const SolContext,
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("NULL output pointer".into());
            return SolStatus::NullPointer;
        }
        let (a, b) = match (parse_point(ctx, a), parse_point(ctx, b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match solenoid::coset_eq(&a, &b) {
            Ok(eq) => {
                *out = eq;
                SolStatus::Ok
            }
            Err(err) => lib_error(err),
        }
    })
}

/// Hausdorff dimension for the context's exponents, as exact text.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_hausdorff_dim(
    ctx: *const SolContext,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match measure::hausdorff_dimension(&ctx.primes, &ctx.exponents) {
            Ok(d) => write_string(out, d.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// Exact Haar measure of a closed metric ball of radius `rho`.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_ball_measure(
    ctx: *const SolContext,
    rho: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let rho = match str_arg(rho).and_then(|t| parse_rational(t).map_err(lib_error)) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match measure::ball_measure(&rho, &ctx.primes, &ctx.exponents) {
            Ok(m) => write_string(out, m.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// Measure-scaling factor of coordinatewise multiplication by a point.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_mu_scaling(
    ctx: *const SolContext,
    point: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match parse_point(ctx, point).and_then(|p| measure::scaling_factor(&p).map_err(lib_error))
        {
            Ok(mu) => write_string(out, mu.to_string()),
            Err(s) => s,
        }
    })
}

/// Covering number of the fundamental box at radius `rho` (exact count as
/// text) plus the log-ratio dimension estimate.
///
/// # Safety
/// As for [`sol_dist`]; `out_estimate` must point to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn sol_box_count(
    ctx: *const SolContext,
    rho: *const c_char,
    out_count: *mut *mut c_char,
    out_estimate: *mut f64,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out_estimate.is_null() {
            set_error("NULL output pointer".into());
            return SolStatus::NullPointer;
        }
        let rho = match str_arg(rho).and_then(|t| parse_rational(t).map_err(lib_error)) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match measure::box_count(&rho, &ctx.primes, &ctx.exponents) {
            Ok((count, estimate)) => {
                *out_estimate = estimate;
                write_string(out_count, count.to_string())
            }
            Err(err) => lib_error(err),
        }
    })
}

/// Seeded Haar-uniform sample of the fundamental domain, as JSON
/// `{"rep":"...","shift":"0"}`; identical seeds give identical bytes.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_sample_haar(
    ctx: *const SolContext,
    depth: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match measure::sample_haar(&ctx.primes, depth, seed) {
            Ok(x) => write_string(out, point_json(&x)),
            Err(err) => lib_error(err),
        }
    })
}

/// Exact character phase in `[0, 1)` at comma-separated `levels` and integer
/// frequency, evaluated on the coset of `point`.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_char_eval(
    ctx: *const SolContext,
    levels: *const c_char,
    frequency: i64,
    point: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let level = match str_arg(levels)
            .and_then(|t| Level::parse(t, &ctx.primes).map_err(lib_error))
        {
            Ok(l) => l,
            Err(s) => return s,
        };
        let x = match parse_point(ctx, point) {
            Ok(p) => solenoid::reduce(&p),
            Err(s) => return s,
        };
        match Character::new(level, frequency).eval(&x) {
            Ok(phase) => write_string(out, phase.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// Real-line approximation of the coset of `point` to tolerance `eps`, as
/// JSON `{"s":"...","level":"...","distance":"..."}`.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_line_approximation(
    ctx: *const SolContext,
    point: *const c_char,
    eps: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let target = match parse_point(ctx, point) {
            Ok(p) => solenoid::reduce(&p),
            Err(s) => return s,
        };
        let eps = match str_arg(eps).and_then(|t| parse_rational(t).map_err(lib_error)) {
            Ok(e) => e,
            Err(s) => return s,
        };
        match circle::line_approximation(&target, &eps, &ctx.exponents) {
            Ok(w) => write_string(
                out,
                format!(
                    r#"{{"s":"{}","level":"{}","distance":"{}"}}"#,
                    w.s, w.level, w.distance
                ),
            ),
            Err(err) => lib_error(err),
        }
    })
}

/// Determinant classification of a matrix (rows `;`-separated, entries
/// `,`-separated), as JSON `{"det":"...","class":"..."}`.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_classify(
    ctx: *const SolContext,
    matrix: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match str_arg(matrix).and_then(|t| SMatrix::parse(t, &ctx.primes).map_err(lib_error)) {
            Ok(t) => write_string(
                out,
                format!(r#"{{"det":"{}","class":"{}"}}"#, t.det(), t.classify()),
            ),
            Err(s) => s,
        }
    })
}

/// Iterate a matrix action on a torus point (components `|`-separated), as a
/// JSON array of `{"step":...,"component":...,"rep":"..."}` rows. Returns
/// `SOL_STATUS_RESOURCE_LIMIT` if an iterate exceeds `bit_limit` total bits
/// (pass 0 for the built-in default).
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_orbit(
    ctx: *const SolContext,
    matrix: *const c_char,
    point: *const c_char,
    steps: usize,
    bit_limit: u64,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let ctx = match context_arg(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let t = match str_arg(matrix).and_then(|t| SMatrix::parse(t, &ctx.primes).map_err(lib_error))
        {
            Ok(t) => t,
            Err(s) => return s,
        };
        let x = match parse_torus(ctx, point) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let limit = if bit_limit == 0 {
            action::DEFAULT_ORBIT_BIT_LIMIT
        } else {
            bit_limit
        };
        match action::orbit(&t, &x, steps, limit) {
            Ok(points) => {
                let rows: Vec<String> = points
                    .iter()
                    .enumerate()
                    .flat_map(|(step, p)| {
                        p.components().iter().enumerate().map(move |(c, comp)| {
                            format!(
                                r#"{{"step":{step},"component":{c},"rep":"{}"}}"#,
                                comp.rep()
                            )
                        })
                    })
                    .collect();
                write_string(out, format!("[{}]", rows.join(",")))
            }
            Err(err) => lib_error(err),
        }
    })
}

/// Chinese remainder solve for `;`-separated `residue,modulus` pairs, as
/// exact text.
///
/// # Safety
/// As for [`sol_dist`].
#[no_mangle]
pub unsafe extern "C" fn sol_crt_solve(
    pairs: *const c_char,
    out: *mut *mut c_char,
) -> SolStatus {
    guard(|| {
        clear_error();
        let text = match str_arg(pairs) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let mut congruences = Vec::new();
        for pair in text.split(';') {
            let mut it = pair.split(',').map(str::trim);
            let (z, m) = match (it.next(), it.next(), it.next()) {
                (Some(z), Some(m), None) => (z, m),
                _ => {
                    set_error(format!("cannot parse residue,modulus pair from {pair:?}"));
                    return SolStatus::InvalidInput;
                }
            };
            let parse = |t: &str| {
                t.parse::<BigInt>().map_err(|_| {
                    set_error(format!("cannot parse integer from {t:?}"));
                    SolStatus::InvalidInput
                })
            };
            match (parse(z), parse(m)) {
                (Ok(z), Ok(m)) => congruences.push((z, m)),
                (Err(s), _) | (_, Err(s)) => return s,
            }
        }
        match crt_solve(&congruences) {
            Ok(z) => write_string(out, z.to_string()),
            Err(err) => lib_error(err),
        }
    })
}

/// p-adic valuation of a rational: writes whether it is infinite (the value
/// is zero) and, if finite, the exponent.
///
/// # Safety
/// As for [`sol_dist`]; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sol_valuation(
    x: *const c_char,
    p: u64,
    out_is_infinite: *mut bool,
    out_value: *mut i64,
) -> SolStatus {
    guard(|| {
        clear_error();
        if out_is_infinite.is_null() || out_value.is_null() {
            set_error("NULL output pointer".into());
            return SolStatus::NullPointer;
        }
        let x = match str_arg(x).and_then(|t| parse_rational(t).map_err(lib_error)) {
            Ok(x) => x,
            Err(s) => return s,
        };
        match solenoid_core::padic::valuation(&x, p) {
            Ok(Valuation::Infinite) => {
                *out_is_infinite = true;
                *out_value = 0;
                SolStatus::Ok
            }
            Ok(Valuation::Finite(v)) => {
                *out_is_infinite = false;
                *out_value = v;
                SolStatus::Ok
            }
            Err(err) => lib_error(err),
        }
    })
}
