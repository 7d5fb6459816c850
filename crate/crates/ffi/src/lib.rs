//! C ABI over the shortcode engine.
//!
//! Objects are opaque handles created by `sc_*_new`-style calls and released
//! with the matching `sc_*_free`. Every fallible call returns an
//! [`ScStatus`]; on failure `sc_last_error()` describes the error for the
//! calling thread. Strings returned through out-parameters are owned by the
//! caller and released with `sc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use shortcode::code::{lambda_t_w, weight_distribution, LinearCode, Limits, WeightDistribution};
use shortcode::construct::{build_code, positions_in, special_elements, SpecialT};
use shortcode::gf::{Field, FieldElement, FieldSpec};
use shortcode::predict::{table_wd, TableTag};
use shortcode::report::{from_json, to_json, CodeJson, WdJson};
use shortcode::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    Arithmetic = 5,
    GateUnsatisfied = 6,
    CapExceeded = 7,
    BudgetExceeded = 8,
    InvalidArgument = 9,
    Overflow = 10,
    Panic = 11,
}

/// A finite field GF(p^m).
pub struct ScField(Field);

/// A linear code over GF(p).
pub struct ScCode(LinearCode);

/// A weight distribution with its code parameters.
pub struct ScWeights(WdJson, WeightDistribution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ScStatus {
    match e {
        Error::RejectsNonPrimeP(_) | Error::RejectsReducibleModulus(..) | Error::InvalidModulus(_) => {
            ScStatus::InvalidField
        }
        Error::InversionOfZero
        | Error::UndefinedForEvenCharacteristic
        | Error::ZeroInput
        | Error::CubesAreAllOfGFq(_)
        | Error::NonUniqueSolution(_) => ScStatus::Arithmetic,
        Error::CapExceeded { .. } => ScStatus::CapExceeded,
        Error::BudgetExceeded { .. } => ScStatus::BudgetExceeded,
        Error::GateUnsatisfied(_)
        | Error::NegativeCount { .. }
        | Error::MassMismatch { .. }
        | Error::NonIntegralCount(_)
        | Error::DegenerateT(_)
        | Error::NotBent { .. }
        | Error::DualNonzero(_)
        | Error::SubfieldAbsent(..) => ScStatus::GateUnsatisfied,
        Error::Parse(_) => ScStatus::Parse,
        Error::IndexOutOfRange { .. }
        | Error::SingularSystem(_)
        | Error::InconsistentMoments(_)
        | Error::DimensionMismatch(_) => ScStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status and a message.
fn guard(f: impl FnOnce() -> Result<(), (ScStatus, String)>) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ScStatus::Panic
        }
    }
}

fn lib<T>(r: shortcode::Result<T>) -> Result<T, (ScStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ScStatus, String) {
    (ScStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, (ScStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (ScStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, (ScStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (ScStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (ScStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|_| (ScStatus::InvalidArgument, "string contains NUL".to_string()))?
        .into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// Builds GF(p^m) from a spec such as `p=2,m=5` or `p=2,m=5,mod=100101`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_field_new(spec: *const c_char, out: *mut *mut ScField) -> ScStatus {
    guard(|| {
        let spec: FieldSpec = lib(str_arg(spec, "spec")?.parse())?;
        put(out, ScField(lib(Field::new(&spec))?))
    })
}

/// # Safety
/// `f` must come from `sc_field_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sc_field_free(f: *mut ScField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Field order q, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_field_order(f: *const ScField) -> u32 {
    f.as_ref().map_or(0, |f| f.0.q())
}

/// Element operations on indices `sum c_i p^i`. `op` is 0 for addition,
/// 1 for multiplication, 2 for division `a / b`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_field_op(f: *const ScField, op: u32, a: u32, b: u32, out: *mut u32) -> ScStatus {
    guard(|| {
        let f = &obj(f, "field")?.0;
        let a = lib(f.element(a))?;
        let b = lib(f.element(b))?;
        let r: FieldElement = match op {
            0 => f.add(a, b),
            1 => f.mul(a, b),
            2 => lib(f.div(a, b))?,
            _ => return Err((ScStatus::InvalidArgument, format!("unknown op {op}"))),
        };
        *out.as_mut().ok_or_else(|| null("out"))? = r.index();
        Ok(())
    })
}

/// Absolute trace of element `a`, in `0..p`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_field_trace(f: *const ScField, a: u32, out: *mut u32) -> ScStatus {
    guard(|| {
        let f = &obj(f, "field")?.0;
        let a = lib(f.element(a))?;
        *out.as_mut().ok_or_else(|| null("out"))? = f.trace(a);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Codes
// ---------------------------------------------------------------------------

/// Builds the code of a monomial from a spec such as `apn:p=2,m=5,e=1` or
/// `pn:p=3,m=3,s=2`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_code_build(spec: *const c_char, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        let spec = lib(str_arg(spec, "spec")?.parse())?;
        put(out, ScCode(lib(build_code(&spec))?))
    })
}

/// Reads a code from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_code_from_json(json: *const c_char, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        let j: CodeJson = lib(from_json(str_arg(json, "json")?))?;
        put(out, ScCode(lib(j.to_code())?))
    })
}

/// Writes the JSON form of a code; release with `sc_string_free`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_code_to_json(c: *const ScCode, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, to_json(&CodeJson::from_code(&obj(c, "code")?.0))))
}

/// # Safety
/// `c` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sc_code_free(c: *mut ScCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Length n, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_code_length(c: *const ScCode) -> usize {
    c.as_ref().map_or(0, |c| c.0.n())
}

/// Dimension k, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_code_dimension(c: *const ScCode) -> usize {
    c.as_ref().map_or(0, |c| c.0.k())
}

unsafe fn resolve_t(code: &LinearCode, t: *const c_char) -> Result<shortcode::code::CoordSet, (ScStatus, String)> {
    let t: SpecialT = lib(str_arg(t, "t")?.parse())?;
    let spec = code
        .field_spec()
        .ok_or_else(|| (ScStatus::InvalidArgument, "code has no field".to_string()))?;
    let fld = lib(Field::new(spec))?;
    lib(positions_in(code, &lib(special_elements(&fld, &t))?))
}

/// Shortens on the coordinates named by `t` (`GF(p)`, `GF(4)`, or a list
/// such as `0,1,alpha^3`).
///
/// # Safety
/// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_shorten(c: *const ScCode, t: *const c_char, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        let code = &obj(c, "code")?.0;
        let set = resolve_t(code, t)?;
        put(out, ScCode(lib(code.shorten(&set))?))
    })
}

/// Punctures on the coordinates named by `t`.
///
/// # Safety
/// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_puncture(c: *const ScCode, t: *const c_char, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        let code = &obj(c, "code")?.0;
        let set = resolve_t(code, t)?;
        put(out, ScCode(lib(code.puncture(&set))?))
    })
}

/// Dual code.
///
/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_dual(c: *const ScCode, out: *mut *mut ScCode) -> ScStatus {
    guard(|| put(out, ScCode(obj(c, "code")?.0.dual())))
}

/// Number of weight-`w` supports containing the coordinates named by `t`,
/// in the code (`in_dual` false) or its dual.
///
/// # Safety
/// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_lambda(
    c: *const ScCode,
    t: *const c_char,
    w: usize,
    in_dual: bool,
    out: *mut u64,
) -> ScStatus {
    guard(|| {
        let code = &obj(c, "code")?.0;
        let set = resolve_t(code, t)?;
        let l = lib(lambda_t_w(code, &set, w, in_dual, &Limits::default()))?;
        *out.as_mut().ok_or_else(|| null("out"))? = l;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Weight distributions
// ---------------------------------------------------------------------------

/// Enumerates the code's weight distribution (cap from `SHORTCODE_CAP`).
///
/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_weights(c: *const ScCode, out: *mut *mut ScWeights) -> ScStatus {
    guard(|| {
        let code = &obj(c, "code")?.0;
        let wd = lib(weight_distribution(code, &Limits::default()))?;
        put(out, ScWeights(WdJson::new(code.p(), code.k(), &wd), wd))
    })
}

/// Closed-form distribution of a table (`tab1` .. `tab16`, `gf4`).
/// `lambda` is used only when `has_lambda` is true.
///
/// # Safety
/// `table` must be a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_predict(
    table: *const c_char,
    p: u32,
    m: u32,
    lambda: i64,
    has_lambda: bool,
    out: *mut *mut ScWeights,
) -> ScStatus {
    guard(|| {
        let tag: TableTag = lib(str_arg(table, "table")?.parse())?;
        let pred = lib(table_wd(tag, p, m, has_lambda.then_some(lambda)))?;
        put(out, ScWeights(WdJson::from_prediction(&pred), pred.to_weight_distribution()))
    })
}

/// # Safety
/// `w` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sc_weights_free(w: *mut ScWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Code length n of the distribution, or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_weights_length(w: *const ScWeights) -> usize {
    w.as_ref().map_or(0, |w| w.1.n())
}

/// Number of codewords of weight `weight`; `Overflow` if it exceeds 64 bits.
///
/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_weights_count(w: *const ScWeights, weight: usize, out: *mut u64) -> ScStatus {
    guard(|| {
        let wd = &obj(w, "weights")?.1;
        let c = u64::try_from(wd.get(weight))
            .map_err(|_| (ScStatus::Overflow, format!("count at weight {weight} exceeds 64 bits")))?;
        *out.as_mut().ok_or_else(|| null("out"))? = c;
        Ok(())
    })
}

/// True when both distributions have the same length and counts.
///
/// # Safety
/// Both must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn sc_weights_equal(a: *const ScWeights, b: *const ScWeights) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.1 == b.1,
        _ => false,
    }
}

/// JSON form with decimal-string counts; release with `sc_string_free`.
///
/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sc_weights_to_json(w: *const ScWeights, out: *mut *mut c_char) -> ScStatus {
    guard(|| put_string(out, to_json(&obj(w, "weights")?.0)))
}
