//! C ABI over the exact backend of `ballmap`.
//!
//! Objects are opaque handles released with the matching `*_free`.
//! Functions return a [`BallmapStatus`]; on failure the message is kept
//! per thread and read with [`ballmap_last_error`]. Strings returned
//! through `char **` out-parameters are released with
//! [`ballmap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ballmap::autgroup::json::{automorphism_from_json, group_from_json, kernel_class_to_json};
use ballmap::autgroup::{classify_cyclic_kernel, BallAutomorphism, FiniteUnitaryGroup, KernelTag};
use ballmap::hermitian::{is_proper_poly, Properness};
use ballmap::invariance::json::{membership_to_json, torus_to_json};
use ballmap::invariance::{diagonal_fixing_group, gamma_membership, hf_group, torus_invariance_group};
use ballmap::polymap::json::{map_from_json, map_to_json};
use ballmap::polymap::{tensor_power, whitney, PolyMap};
use ballmap::scalar::RadScalar;
use ballmap::Error;
use serde_json::Value;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallmapStatus {
    Ok = 0,
    /// The answer is a mathematical negative (not proper, not a member, ...).
    Negative = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    InvalidArgument = 5,
    Unsupported = 6,
    CapExceeded = 7,
    Internal = 8,
}

/// Polynomial map with exact coefficients.
pub struct BallmapMap(PolyMap<RadScalar>);

/// Finite unitary group, closed under multiplication.
pub struct BallmapGroup(FiniteUnitaryGroup<RadScalar>);

/// Automorphism of the unit ball.
pub struct BallmapAutomorphism(BallAutomorphism<RadScalar>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BallmapStatus {
    match e {
        Error::Parse(_) => BallmapStatus::Parse,
        Error::UnsupportedScalar(_) | Error::UnsupportedInverse => BallmapStatus::Unsupported,
        Error::CapExceeded(_) => BallmapStatus::CapExceeded,
        _ => BallmapStatus::InvalidArgument,
    }
}

type FfiResult<T> = Result<T, (BallmapStatus, String)>;

fn lift<T>(r: ballmap::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn guard(f: impl FnOnce() -> FfiResult<BallmapStatus>) -> BallmapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BallmapStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err((BallmapStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (BallmapStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn read_json(s: *const c_char) -> FfiResult<Value> {
    serde_json::from_str(read_str(s)?).map_err(|e| (BallmapStatus::Parse, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref()
        .ok_or_else(|| (BallmapStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err((BallmapStatus::NullPointer, "null out-pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err((BallmapStatus::NullPointer, "null out-pointer".into()));
    }
    *out = CString::new(s)
        .map_err(|_| (BallmapStatus::Internal, "string contains nul".into()))?
        .into_raw();
    Ok(())
}

unsafe fn put_int(out: *mut c_int, v: bool) -> FfiResult<()> {
    if out.is_null() {
        return Err((BallmapStatus::NullPointer, "null out-pointer".into()));
    }
    *out = c_int::from(v);
    Ok(())
}

/// Last error message on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn ballmap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ballmap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ballmap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_from_json(json: *const c_char, out: *mut *mut BallmapMap) -> BallmapStatus {
    guard(|| {
        let f = lift(map_from_json::<RadScalar>(&read_json(json)?))?;
        put(out, BallmapMap(f))?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_tensor_power(n: usize, m: u32, out: *mut *mut BallmapMap) -> BallmapStatus {
    guard(|| {
        put(out, BallmapMap(lift(tensor_power(n, m))?))?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_whitney(out: *mut *mut BallmapMap) -> BallmapStatus {
    guard(|| {
        put(out, BallmapMap(whitney()))?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_to_json(map: *const BallmapMap, out: *mut *mut c_char) -> BallmapStatus {
    guard(|| {
        put_string(out, map_to_json(&handle(map)?.0).to_string())?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `map` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_free(map: *mut BallmapMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Writes 1 to `proper` when the map sends the sphere into the sphere.
///
/// # Safety
/// `map` must be a live handle; `proper` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_is_proper(map: *const BallmapMap, proper: *mut c_int) -> BallmapStatus {
    guard(|| {
        let p = match is_proper_poly(&handle(map)?.0) {
            Ok(Properness::Proper(c)) => c.verified,
            Ok(Properness::NotProper { .. }) | Err(Error::ConstantMap) => false,
            Err(e) => return Err((status_of(&e), e.to_string())),
        };
        put_int(proper, p)?;
        Ok(BallmapStatus::Ok)
    })
}

/// Number of free parameters `k` of `H_f ≅ U(k)`.
///
/// # Safety
/// `map` must be a live handle; `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_hf_dimension(map: *const BallmapMap, k: *mut usize) -> BallmapStatus {
    guard(|| {
        let h = lift(hf_group(&handle(map)?.0))?;
        if k.is_null() {
            return Err((BallmapStatus::NullPointer, "null out-pointer".into()));
        }
        *k = h.k;
        Ok(BallmapStatus::Ok)
    })
}

/// Diagonal invariance group as torus JSON. With `fixing` nonzero, the
/// diagonal fixing group instead.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_map_torus_json(
    map: *const BallmapMap,
    fixing: c_int,
    out: *mut *mut c_char,
) -> BallmapStatus {
    guard(|| {
        let f = &handle(map)?.0;
        let t = if fixing != 0 {
            lift(diagonal_fixing_group(f))?
        } else {
            lift(torus_invariance_group(f))?
        };
        put_string(out, torus_to_json(&t).to_string())?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_automorphism_from_json(
    json: *const c_char,
    out: *mut *mut BallmapAutomorphism,
) -> BallmapStatus {
    guard(|| {
        let a = lift(automorphism_from_json::<RadScalar>(&read_json(json)?))?;
        put(out, BallmapAutomorphism(a))?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `a` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballmap_automorphism_free(a: *mut BallmapAutomorphism) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Decides `γ ∈ Γ_f`. Returns `Negative` when it is not a member; the
/// report JSON is written in both cases when `report` is not NULL.
///
/// # Safety
/// Handles must be live; `report` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_gamma_membership(
    map: *const BallmapMap,
    gamma: *const BallmapAutomorphism,
    report: *mut *mut c_char,
) -> BallmapStatus {
    guard(|| {
        let m = lift(gamma_membership(&handle(map)?.0, &handle(gamma)?.0))?;
        if !report.is_null() {
            put_string(report, membership_to_json(&m).to_string())?;
        }
        Ok(if m.is_member() { BallmapStatus::Ok } else { BallmapStatus::Negative })
    })
}

/// Closes the generators of a group file under multiplication.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_group_from_json(
    json: *const c_char,
    cap: usize,
    out: *mut *mut BallmapGroup,
) -> BallmapStatus {
    guard(|| {
        let g = lift(group_from_json::<RadScalar>(&read_json(json)?, cap))?;
        put(out, BallmapGroup(g))?;
        Ok(BallmapStatus::Ok)
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ballmap_group_order(g: *const BallmapGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ballmap_group_free(g: *mut BallmapGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Classification JSON of a cyclic group; `Negative` for `NotInList`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_classify_kernel(g: *const BallmapGroup, out: *mut *mut c_char) -> BallmapStatus {
    guard(|| {
        let k = lift(classify_cyclic_kernel(&handle(g)?.0))?;
        put_string(out, kernel_class_to_json(&k).to_string())?;
        Ok(if k.tag == KernelTag::NotInList { BallmapStatus::Negative } else { BallmapStatus::Ok })
    })
}

/// Runs one command-line invocation (`argv[0]` is the program name) and
/// returns its exit code; the JSON report is written to `report`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballmap_run(argc: usize, argv: *const *const c_char, report: *mut *mut c_char) -> c_int {
    let args: FfiResult<Vec<String>> = (|| {
        if argv.is_null() && argc > 0 {
            return Err((BallmapStatus::NullPointer, "null argv".into()));
        }
        (0..argc).map(|i| read_str(*argv.add(i)).map(str::to_owned)).collect()
    })();
    let args = match args {
        Ok(a) => a,
        Err((_, msg)) => {
            set_error(&msg);
            return 2;
        }
    };
    let result = catch_unwind(|| {
        let mut buf = Vec::new();
        let code = ballmap::cli::run(args, &mut buf);
        (code, String::from_utf8_lossy(&buf).into_owned())
    });
    match result {
        Ok((code, text)) => match put_string(report, text) {
            Ok(()) => code,
            Err((_, msg)) => {
                set_error(&msg);
                2
            }
        },
        Err(_) => {
            set_error("internal panic");
            3
        }
    }
}
