//! C interface to `virapath`.
//!
//! Every fallible call returns a [`VpStatus`] and writes its result through
//! an out-pointer. On failure the message is kept per thread and can be
//! read with [`vp_last_error`]. Handles are opaque and owned by the caller;
//! release them with the matching `*_free`. Strings returned by the library
//! must be released with [`vp_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use virapath::characters::{char_bosonic, char_fermionic};
use virapath::exactq::ExactRational;
use virapath::particle_moves::{apply_move, rigging, Dir};
use virapath::path_comb::{char_paths_total, is_admissible, path_degree, RiggedPath, DEFAULT_L_CAP};
use virapath::{Error, ModelParams, QSeries};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidModel = 2,
    OutOfRange = 3,
    MalformedPath = 4,
    Inadmissible = 5,
    Parse = 6,
    /// The requested move is not defined on the path.
    Undefined = 7,
    /// A value does not fit the C type it is returned in.
    Overflow = 8,
    CapReached = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VpMethod {
    Bosonic = 0,
    Fermionic = 1,
    Paths = 2,
}

pub struct VpModel(ModelParams);
pub struct VpSeries(QSeries);
pub struct VpPath(RiggedPath);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: VpStatus, msg: impl Into<String>) -> VpStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> VpStatus {
    match e {
        Error::InvalidModel(_) => VpStatus::InvalidModel,
        Error::OutOfRange(_) | Error::Truncation(_) => VpStatus::OutOfRange,
        Error::MalformedPath(_) => VpStatus::MalformedPath,
        Error::Inadmissible(_) | Error::InadmissibleExponents(_) => VpStatus::Inadmissible,
        Error::Parse(_) => VpStatus::Parse,
        Error::CapReached(_) => VpStatus::CapReached,
        Error::Internal(_) => VpStatus::Internal,
    }
}

fn from_error(e: Error) -> VpStatus {
    fail(status_of(&e), e.to_string())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Stores `value` behind `out`.
///
/// # Safety
/// `out` must be null or valid for a write.
unsafe fn emit<T>(out: *mut T, value: T) -> VpStatus {
    if out.is_null() {
        return fail(VpStatus::NullPointer, "null output pointer");
    }
    out.write(value);
    VpStatus::Ok
}

/// # Safety
/// `p` must be null or point to a live value of type `T`.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, VpStatus> {
    p.as_ref().ok_or_else(|| fail(VpStatus::NullPointer, format!("null {what}")))
}

fn rational(num: i64, den: i64) -> Result<ExactRational, VpStatus> {
    if den == 0 {
        return Err(fail(VpStatus::OutOfRange, "zero denominator"));
    }
    Ok(ExactRational::ratio(num, den))
}

fn split_rational(x: &ExactRational) -> Result<(i64, i64), VpStatus> {
    let overflow = || fail(VpStatus::Overflow, format!("{x} does not fit in 64 bits"));
    let num = i64::try_from(x.numer()).map_err(|_| overflow())?;
    let den = i64::try_from(x.denom()).map_err(|_| overflow())?;
    Ok((num, den))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// The message of the last failed call on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_model_new(p: i64, pp: i64, out: *mut *mut VpModel) -> VpStatus {
    let m = tri!(ModelParams::new(p, pp).map_err(from_error));
    emit(out, Box::into_raw(Box::new(VpModel(m))))
}

/// # Safety
/// `m` must be null or a handle from [`vp_model_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vp_model_free(m: *mut VpModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `Delta_{r,s}` as a fraction.
///
/// # Safety
/// `m` must be a live model; `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn vp_conformal_dim(
    m: *const VpModel,
    r: i64,
    s: i64,
    num: *mut i64,
    den: *mut i64,
) -> VpStatus {
    let m = tri!(deref(m, "model"));
    let d = tri!(m.0.conformal_dim(r, s).map_err(from_error));
    let (a, b) = tri!(split_rational(&d));
    if num.is_null() || den.is_null() {
        return fail(VpStatus::NullPointer, "null output pointer");
    }
    num.write(a);
    den.write(b);
    VpStatus::Ok
}

/// `chi_{r,1}` truncated at `trunc_num / trunc_den`. The path method sums
/// over lengths and fails with `CapReached` if the default length cap binds.
///
/// # Safety
/// `m` must be a live model and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_character(
    m: *const VpModel,
    method: VpMethod,
    r: i64,
    trunc_num: i64,
    trunc_den: i64,
    out: *mut *mut VpSeries,
) -> VpStatus {
    let m = tri!(deref(m, "model"));
    let n = tri!(rational(trunc_num, trunc_den));
    let series = match method {
        VpMethod::Bosonic => tri!(char_bosonic(&m.0, r, 1, &n).map_err(from_error)),
        VpMethod::Fermionic => tri!(char_fermionic(&m.0, r, &n).map_err(from_error)),
        VpMethod::Paths => {
            if !(1..m.0.p()).contains(&r) {
                return fail(VpStatus::OutOfRange, format!("r = {r} outside 1..{}", m.0.p()));
            }
            let c = char_paths_total(&m.0, r, &n, DEFAULT_L_CAP);
            if c.cap_reached {
                return fail(VpStatus::CapReached, format!("length cap {DEFAULT_L_CAP} reached"));
            }
            c.series
        }
    };
    emit(out, Box::into_raw(Box::new(VpSeries(series))))
}

/// # Safety
/// `s` must be null or a handle from [`vp_character`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vp_series_free(s: *mut VpSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The coefficient of `q^(num/den)`. Fails with `OutOfRange` above the
/// truncation and `Overflow` if it does not fit in 64 bits.
///
/// # Safety
/// `s` must be a live series and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_series_coeff(s: *const VpSeries, num: i64, den: i64, out: *mut i64) -> VpStatus {
    let s = tri!(deref(s, "series"));
    let e = tri!(rational(num, den));
    let Some(c) = s.0.coeff(&e) else {
        return fail(VpStatus::OutOfRange, format!("q^{e} lies above the truncation"));
    };
    let c = tri!(i64::try_from(&c).map_err(|_| fail(VpStatus::Overflow, format!("coefficient {c} too large"))));
    emit(out, c)
}

/// The series as text, e.g. `1 + q^2 + O(q^(4))`. Null on failure.
///
/// # Safety
/// `s` must be a live series.
#[no_mangle]
pub unsafe extern "C" fn vp_series_to_string(s: *const VpSeries) -> *mut c_char {
    match deref(s, "series") {
        Ok(s) => into_c_string(s.0.to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// The series as a JSON object with exact string coefficients. Null on failure.
///
/// # Safety
/// `s` must be a live series.
#[no_mangle]
pub unsafe extern "C" fn vp_series_to_json(s: *const VpSeries) -> *mut c_char {
    let Ok(s) = deref(s, "series") else {
        return ptr::null_mut();
    };
    match serde_json::to_string(&s.0.to_json()) {
        Ok(j) => into_c_string(j),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Parses `r_L,...,r_0;sigma_{L-1},...,sigma_0`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_path_parse(text: *const c_char, out: *mut *mut VpPath) -> VpStatus {
    if text.is_null() {
        return fail(VpStatus::NullPointer, "null path text");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return fail(VpStatus::Parse, "path text is not UTF-8");
    };
    let p: RiggedPath = tri!(text.parse().map_err(from_error));
    emit(out, Box::into_raw(Box::new(VpPath(p))))
}

/// # Safety
/// `p` must be null or a path handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vp_path_free(p: *mut VpPath) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live path.
#[no_mangle]
pub unsafe extern "C" fn vp_path_to_string(p: *const VpPath) -> *mut c_char {
    match deref(p, "path") {
        Ok(p) => into_c_string(p.0.to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// The length `L`.
///
/// # Safety
/// `p` must be a live path and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_path_len(p: *const VpPath, out: *mut usize) -> VpStatus {
    let p = tri!(deref(p, "path"));
    emit(out, p.0.len())
}

/// # Safety
/// `m` and `p` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_path_is_admissible(m: *const VpModel, p: *const VpPath, out: *mut bool) -> VpStatus {
    let m = tri!(deref(m, "model"));
    let p = tri!(deref(p, "path"));
    emit(out, is_admissible(&m.0, &p.0))
}

/// The degree `d(P)` as a fraction; fails on inadmissible paths.
///
/// # Safety
/// `m` and `p` must be live handles; `num` and `den` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn vp_path_degree(
    m: *const VpModel,
    p: *const VpPath,
    num: *mut i64,
    den: *mut i64,
) -> VpStatus {
    let m = tri!(deref(m, "model"));
    let p = tri!(deref(p, "path"));
    let d = tri!(path_degree(&m.0, &p.0).map_err(from_error));
    let (a, b) = tri!(split_rational(&d));
    if num.is_null() || den.is_null() {
        return fail(VpStatus::NullPointer, "null output pointer");
    }
    num.write(a);
    den.write(b);
    VpStatus::Ok
}

/// Applies `M^+_j` (`dir > 0`) or `M^-_j` (`dir < 0`). Returns `Undefined`
/// and leaves `out` untouched if the move is not defined on the path.
///
/// # Safety
/// `m` and `p` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn vp_path_move(
    m: *const VpModel,
    p: *const VpPath,
    j: usize,
    dir: i32,
    out: *mut *mut VpPath,
) -> VpStatus {
    let m = tri!(deref(m, "model"));
    let p = tri!(deref(p, "path"));
    let dir = match dir.signum() {
        1 => Dir::Plus,
        -1 => Dir::Minus,
        _ => return fail(VpStatus::OutOfRange, "direction must be nonzero"),
    };
    match tri!(apply_move(&m.0, &p.0, j, dir).map_err(from_error)) {
        Some(next) => emit(out, Box::into_raw(Box::new(VpPath(next)))),
        None => fail(VpStatus::Undefined, format!("M_{j} undefined on {}", p.0)),
    }
}

/// The rigging `lambda(P)` as a JSON array, largest part first. Null on failure.
///
/// # Safety
/// `m` and `p` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn vp_path_rigging_json(m: *const VpModel, p: *const VpPath) -> *mut c_char {
    let (Ok(m), Ok(p)) = (deref(m, "model"), deref(p, "path")) else {
        return ptr::null_mut();
    };
    match rigging(&m.0, &p.0) {
        Ok(lam) => into_c_string(serde_json::to_string(&lam).unwrap_or_default()),
        Err(e) => {
            from_error(e);
            ptr::null_mut()
        }
    }
}
