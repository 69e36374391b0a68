//! C ABI over the qplane engine.
//!
//! Objects cross the boundary as opaque handles created by `qp_*_new`-style
//! constructors and released with the matching `qp_*_free`. Every fallible call
//! returns a [`QpStatus`]; on failure the message is kept per thread and can be
//! read with [`qp_last_error`]. Reports come back as NUL-terminated JSON that the
//! caller releases with [`qp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qplane::algebra::Quasigroup;
use qplane::embed::{decide_frame_points_with, decide_frame_with, decide_lift_with, decide_planar, SweepOptions};
use qplane::plane::{plane_from_ternary, Plane};
use qplane::ternary::TernaryRing;
use qplane::{io, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    /// The decision procedure answered no.
    Negative = 1,
    InvalidInput = 2,
    ParseError = 3,
    Precondition = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpEmbedMode {
    Frame = 0,
    FramePoints = 1,
    Lift = 2,
    Planar = 3,
}

/// Opaque quasigroup handle.
pub struct QpQuasigroup(Quasigroup);

/// Opaque projective plane handle.
pub struct QpPlane(Plane);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(e: Error) -> QpStatus {
    let status = match e {
        Error::Input(_) => QpStatus::InvalidInput,
        Error::Parse { .. } => QpStatus::ParseError,
        Error::Precondition(_) => QpStatus::Precondition,
        Error::Internal(_) => QpStatus::Internal,
    };
    set_error(e.to_string());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<QpStatus, QpStatus>) -> QpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside qplane");
            QpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, QpStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(QpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QpStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, QpStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        QpStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<QpStatus, QpStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QpStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(QpStatus::Ok)
}

unsafe fn put_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), QpStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QpStatus::NullPointer);
    }
    *out = CString::new(value.to_string()).expect("json has no NUL").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a Latin square in .lsq format.
///
/// # Safety
/// `lsq` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_quasigroup_from_lsq(lsq: *const c_char, out: *mut *mut QpQuasigroup) -> QpStatus {
    guard(|| {
        let f = io::parse_lsq(text(lsq)?).map_err(fail)?;
        put(out, QpQuasigroup(f.quasigroup))
    })
}

/// Order of the quasigroup, 0 for NULL.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_quasigroup_order(q: *const QpQuasigroup) -> usize {
    q.as_ref().map_or(0, |q| q.0.order())
}

/// # Safety
/// `q` must be NULL or a handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qp_quasigroup_free(q: *mut QpQuasigroup) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Builds PG(2, q) for a prime power q up to 16.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_plane_from_field(q: usize, out: *mut *mut QpPlane) -> QpStatus {
    guard(|| {
        let (p, k) = qplane::gf::prime_power(q).ok_or_else(|| fail(Error::Input(format!("{q} is not a prime power"))))?;
        let ring = TernaryRing::from_field(p, k).map_err(fail)?;
        put(out, QpPlane(plane_from_ternary(&ring).map_err(fail)?))
    })
}

/// Parses a plane in .pln format.
///
/// # Safety
/// `pln` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_plane_from_pln(pln: *const c_char, out: *mut *mut QpPlane) -> QpStatus {
    guard(|| {
        let p = io::parse_pln(text(pln)?).map_err(fail)?;
        put(out, QpPlane(p))
    })
}

/// Order n of the plane, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qp_plane_order(p: *const QpPlane) -> usize {
    p.as_ref().map_or(0, |p| p.0.order())
}

/// # Safety
/// `p` must be NULL or a handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qp_plane_free(p: *mut QpPlane) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Decides whether the expansion matroid of `q` embeds in `p` in the given
/// mode. Returns `Ok` for yes and `Negative` for no; in both cases `*report`
/// receives the JSON witnesses (free with [`qp_string_free`]).
///
/// # Safety
/// Handles must be live and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_embed(
    q: *const QpQuasigroup,
    p: *const QpPlane,
    mode: QpEmbedMode,
    all: bool,
    jobs: usize,
    report: *mut *mut c_char,
) -> QpStatus {
    guard(|| {
        let q = &handle(q)?.0;
        let p = &handle(p)?.0;
        let opts = SweepOptions { jobs: jobs.max(1), all };
        let (value, yes) = match mode {
            QpEmbedMode::Frame => witnesses(decide_frame_with(q, p, &opts))?,
            QpEmbedMode::FramePoints => witnesses(decide_frame_points_with(q, p, &opts))?,
            QpEmbedMode::Lift => witnesses(decide_lift_with(q, p, &opts))?,
            QpEmbedMode::Planar => {
                let r = decide_planar(q, p, &opts).map_err(fail)?;
                let yes = r.points_in_plane || r.points_in_dual;
                (serde_json::to_value(&r).expect("serializable"), yes)
            }
        };
        put_json(report, &value)?;
        Ok(if yes { QpStatus::Ok } else { QpStatus::Negative })
    })
}

fn witnesses<T: serde::Serialize>(r: qplane::Result<Vec<T>>) -> Result<(serde_json::Value, bool), QpStatus> {
    let ws = r.map_err(fail)?;
    Ok((serde_json::to_value(&ws).expect("serializable"), !ws.is_empty()))
}

/// Thickens a .bg3 biased graph; `*report` receives JSON with the expansion,
/// the inclusion map, γ and the bound.
///
/// # Safety
/// `bg3` must be a NUL-terminated string and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_thicken(bg3: *const c_char, report: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let g = io::parse_bg3(text(bg3)?).map_err(fail)?;
        let r = qplane::thicken::thicken(&g).map_err(fail)?;
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["expansion_bg3"] = serde_json::Value::String(io::write_bg3(&r.expansion));
        put_json(report, &v)?;
        Ok(QpStatus::Ok)
    })
}
