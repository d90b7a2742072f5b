//! C ABI over the hcmu library.
//!
//! Data sets cross the boundary as opaque `HcmuDataSet` handles. Every call
//! returns an `HcmuStatus`; on failure `hcmu_last_error` describes the most
//! recent error on the calling thread. Strings handed out by the library must
//! be released with `hcmu_string_free`, handles with `hcmu_dataset_free`.

use hcmu::builder::{build_one_cone, BuildError};
use hcmu::constraints::{check_existence, AngleVector, Case, ConstraintError, Existence};
use hcmu::dataset::DataSet;
use hcmu::io::{load_str, save, IoError};
use hcmu::moduli::dimension_crosscheck;
use hcmu::rational::parse_q_list;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Opaque handle to a validated data set.
pub struct HcmuDataSet(DataSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcmuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    InvalidInput = 5,
    EmptySpace = 6,
    Inadmissible = 7,
    Internal = 8,
}

/// Result of an existence check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcmuExistence {
    Empty = 0,
    CaseA1 = 1,
    CaseA2 = 2,
    CaseA3 = 3,
    CaseB = 4,
    Football = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: HcmuStatus, message: impl ToString) -> HcmuStatus {
    set_error(&message.to_string());
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> HcmuStatus) -> HcmuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HcmuStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HcmuStatus> {
    if p.is_null() {
        return Err(fail(HcmuStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HcmuStatus::InvalidUtf8, "string is not UTF-8"))
}

fn build_status(e: BuildError) -> HcmuStatus {
    let status = match &e {
        BuildError::EmptySpace | BuildError::NotCoprime => HcmuStatus::EmptySpace,
        BuildError::Inadmissible(_) => HcmuStatus::Inadmissible,
        BuildError::Internal(_) => HcmuStatus::Internal,
        _ => HcmuStatus::InvalidInput,
    };
    fail(status, e)
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hcmu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hcmu_dataset_from_json(
    json: *const c_char,
    out: *mut *mut HcmuDataSet,
) -> HcmuStatus {
    guard(|| {
        if out.is_null() {
            return fail(HcmuStatus::NullArgument, "null output");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match load_str(text) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(HcmuDataSet(d)));
                HcmuStatus::Ok
            }
            Err(e @ IoError::Validation { .. }) => fail(HcmuStatus::ValidationError, e),
            Err(e) => fail(HcmuStatus::ParseError, e),
        }
    })
}

/// Canonical JSON text; release with `hcmu_string_free`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hcmu_dataset_to_json(
    d: *const HcmuDataSet,
    out: *mut *mut c_char,
) -> HcmuStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(HcmuStatus::NullArgument, "null argument");
        }
        match CString::new(save(&(*d).0)) {
            Ok(s) => {
                *out = s.into_raw();
                HcmuStatus::Ok
            }
            Err(e) => fail(HcmuStatus::Internal, e),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hcmu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hcmu_dataset_free(d: *mut HcmuDataSet) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Genus and vertex, arc and face counts. Any output pointer may be null.
///
/// # Safety
/// `d` must be a live handle; non-null outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn hcmu_dataset_counts(
    d: *const HcmuDataSet,
    genus: *mut u32,
    vertices: *mut usize,
    arcs: *mut usize,
    faces: *mut usize,
) -> HcmuStatus {
    if d.is_null() {
        return fail(HcmuStatus::NullArgument, "null handle");
    }
    let d = &(*d).0;
    let a = d.angulation();
    if !genus.is_null() {
        *genus = d.genus();
    }
    if !vertices.is_null() {
        *vertices = a.num_vertices();
    }
    if !arcs.is_null() {
        *arcs = a.num_arcs();
    }
    if !faces.is_null() {
        *faces = a.num_faces();
    }
    HcmuStatus::Ok
}

/// Existence for a genus and a comma-separated list of rational angles.
///
/// # Safety
/// `angles` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hcmu_check_existence(
    genus: u32,
    angles: *const c_char,
    out: *mut HcmuExistence,
) -> HcmuStatus {
    guard(|| {
        if out.is_null() {
            return fail(HcmuStatus::NullArgument, "null output");
        }
        let text = match read_str(angles) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let alpha = match parse_q_list(text)
            .map_err(|e| e.to_string())
            .and_then(|l| AngleVector::new(l).map_err(|e: ConstraintError| e.to_string()))
        {
            Ok(a) => a,
            Err(e) => return fail(HcmuStatus::InvalidInput, e),
        };
        match check_existence(genus, &alpha) {
            Ok(e) => {
                *out = match e {
                    Existence::Empty => HcmuExistence::Empty,
                    Existence::Nonempty(Case::A1) => HcmuExistence::CaseA1,
                    Existence::Nonempty(Case::A2) => HcmuExistence::CaseA2,
                    Existence::Nonempty(Case::A3) => HcmuExistence::CaseA3,
                    Existence::Nonempty(Case::B) => HcmuExistence::CaseB,
                    Existence::Nonempty(Case::Football) => HcmuExistence::Football,
                };
                HcmuStatus::Ok
            }
            Err(e) => fail(HcmuStatus::InvalidInput, e),
        }
    })
}

/// Surface with one saddle, `p` smooth maxima and `q` smooth minima.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hcmu_build_one_cone(
    genus: u32,
    p: u64,
    q: u64,
    out: *mut *mut HcmuDataSet,
) -> HcmuStatus {
    guard(|| {
        if out.is_null() {
            return fail(HcmuStatus::NullArgument, "null output");
        }
        *out = ptr::null_mut();
        match build_one_cone(genus, p, q) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(HcmuDataSet(d)));
                HcmuStatus::Ok
            }
            Err(e) => build_status(e),
        }
    })
}

/// Parameter count of the data set, checked against the dimension formula.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hcmu_dimension_crosscheck(
    d: *const HcmuDataSet,
    out: *mut u64,
) -> HcmuStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return fail(HcmuStatus::NullArgument, "null argument");
        }
        match dimension_crosscheck(&(*d).0) {
            Ok(n) => {
                *out = n;
                HcmuStatus::Ok
            }
            Err(e) => fail(HcmuStatus::Internal, e),
        }
    })
}
