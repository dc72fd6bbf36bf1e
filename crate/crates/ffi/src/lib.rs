//! C ABI over `hgpforge`.
//!
//! Codes are opaque `HgpCode` handles created by the `hgp_code_from_*`
//! functions and released with [`hgp_code_free`]. Every fallible function
//! returns an [`HgpStatus`]; on failure [`hgp_last_error_message`] describes
//! the most recent error on the calling thread.

use hgpforge::correctability::{is_correctable, Region};
use hgpforge::css::{brute_distance, kunneth_parameters, CssCode};
use hgpforge::{io, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Contract = 4,
    LevelOutOfRange = 5,
    SearchInfeasible = 6,
    Undefined = 7,
    Failed = 8,
    Panic = 9,
}

/// Opaque code handle.
pub struct HgpCode {
    code: CssCode,
}

/// Closed-form product parameters; distances are 0 when undefined.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HgpKunneth {
    pub n: usize,
    pub k: usize,
    pub d_x: usize,
    pub d_z: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HgpStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => HgpStatus::Parse,
        Error::Contract { .. } | Error::UnsupportedDimension(_) => HgpStatus::Contract,
        Error::LevelOutOfRange { .. } => HgpStatus::LevelOutOfRange,
        Error::SearchInfeasible(_) | Error::RegionTooLarge { .. } => HgpStatus::SearchInfeasible,
        Error::DistanceUndefined | Error::NoLogicalOperators | Error::NoProductStructure => HgpStatus::Undefined,
        _ => HgpStatus::Failed,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (HgpStatus, String)>) -> HgpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            HgpStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HgpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HgpStatus, String) {
    (HgpStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HgpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HgpStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn code_arg<'a>(p: *const HgpCode) -> Result<&'a CssCode, (HgpStatus, String)> {
    p.as_ref().map(|h| &h.code).ok_or_else(|| null("code"))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (HgpStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hgp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hgp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the product of `nseeds` seed matrices (plain-text matrix format)
/// and assembles the code with qubits on `level`.
///
/// # Safety
/// `seeds` must point to `nseeds` NUL-terminated strings and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_from_seeds(
    seeds: *const *const c_char,
    nseeds: usize,
    level: usize,
    out: *mut *mut HgpCode,
) -> HgpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if seeds.is_null() {
            return Err(null("seeds"));
        }
        let texts = (0..nseeds)
            .map(|i| str_arg(*seeds.add(i), "seed").map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        let mats = io::parse_seeds(&texts).map_err(lib_err)?;
        let code = io::build_code(&mats, level).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HgpCode { code }));
        Ok(())
    })
}

/// Loads a code bundle JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_from_bundle(json: *const c_char, out: *mut *mut HgpCode) -> HgpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let code = io::parse_bundle(str_arg(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HgpCode { code }));
        Ok(())
    })
}

/// Releases a handle; NULL is ignored.
///
/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_free(code: *mut HgpCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of physical and logical qubits.
///
/// # Safety
/// `code` must be a live handle; `n` and `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_params(code: *const HgpCode, n: *mut usize, k: *mut usize) -> HgpStatus {
    guard(|| {
        let c = code_arg(code)?;
        *out_arg(n, "n")? = c.n();
        *out_arg(k, "k")? = c.k();
        Ok(())
    })
}

/// Closed-form parameters of a product code.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_kunneth(code: *const HgpCode, out: *mut HgpKunneth) -> HgpStatus {
    guard(|| {
        let c = code_arg(code)?;
        let out = out_arg(out, "out")?;
        let (pc, level) = match (c.complex(), c.level()) {
            (Some(pc), Some(l)) => (pc, l),
            _ => return Err(lib_err(Error::NoProductStructure)),
        };
        let p = kunneth_parameters(pc, level).map_err(lib_err)?;
        *out = HgpKunneth { n: p.n, k: p.k, d_x: p.d_x.unwrap_or(0), d_z: p.d_z.unwrap_or(0) };
        Ok(())
    })
}

/// Exact X and Z distances by exhaustive search.
///
/// # Safety
/// `code` must be a live handle; `d_x` and `d_z` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_distance(code: *const HgpCode, d_x: *mut usize, d_z: *mut usize) -> HgpStatus {
    guard(|| {
        let c = code_arg(code)?;
        let d_x = out_arg(d_x, "d_x")?;
        let d_z = out_arg(d_z, "d_z")?;
        let d = brute_distance(c).map_err(lib_err)?;
        *d_x = d.d_x;
        *d_z = d.d_z;
        Ok(())
    })
}

/// Whether the region of `len` qubit indices supports no nontrivial logical.
///
/// # Safety
/// `code` must be a live handle, `qubits` must point to `len` values (or be
/// NULL when `len` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_is_correctable(
    code: *const HgpCode,
    qubits: *const usize,
    len: usize,
    out: *mut bool,
) -> HgpStatus {
    guard(|| {
        let c = code_arg(code)?;
        let out = out_arg(out, "out")?;
        let q: &[usize] = if len == 0 {
            &[]
        } else if qubits.is_null() {
            return Err(null("qubits"));
        } else {
            std::slice::from_raw_parts(qubits, len)
        };
        let region = Region::new(q.iter().copied(), c.n()).map_err(lib_err)?;
        *out = is_correctable(c, &region).map_err(lib_err)?.correctable;
        Ok(())
    })
}

/// Serialises the code as bundle JSON; free the string with [`hgp_string_free`].
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hgp_code_bundle_json(code: *const HgpCode, out: *mut *mut c_char) -> HgpStatus {
    guard(|| {
        let c = code_arg(code)?;
        let out = out_arg(out, "out")?;
        let text = io::bundle_of(c).and_then(|b| io::canonical_json(&b)).map_err(lib_err)?;
        *out = CString::new(text).map_err(|e| (HgpStatus::Failed, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hgp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
