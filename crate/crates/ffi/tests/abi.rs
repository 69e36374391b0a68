use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qplane_ffi::*;

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { qp_string_free(s) };
    v
}

#[test]
fn lift_of_z2_in_fano_plane() {
    let mut q = ptr::null_mut();
    let mut p = ptr::null_mut();
    let z2 = CString::new("2\n0 1\n1 0\n").unwrap();
    unsafe {
        assert_eq!(qp_quasigroup_from_lsq(z2.as_ptr(), &mut q), QpStatus::Ok);
        assert_eq!(qp_plane_from_field(2, &mut p), QpStatus::Ok);
        assert_eq!(qp_quasigroup_order(q), 2);
        assert_eq!(qp_plane_order(p), 2);

        let mut report = ptr::null_mut();
        assert_eq!(qp_embed(q, p, QpEmbedMode::Lift, false, 1, &mut report), QpStatus::Ok);
        let v = take(report);
        assert_eq!(v[0]["images"].as_array().unwrap().len(), 7);
        assert_eq!(v[0]["verified"], true);

        // Z2 is not a subgroup of the multiplicative group of GF(2)
        assert_eq!(qp_embed(q, p, QpEmbedMode::FramePoints, true, 1, &mut report), QpStatus::Negative);
        assert_eq!(take(report), serde_json::json!([]));

        qp_quasigroup_free(q);
        qp_plane_free(p);
    }
}

#[test]
fn bad_field_and_plane_inputs() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qp_plane_from_field(6, &mut p), QpStatus::InvalidInput);
        assert!(!qp_last_error().is_null());
        let junk = CString::new("7 7\n0 1 2\n").unwrap();
        assert_ne!(qp_plane_from_pln(junk.as_ptr(), &mut p), QpStatus::Ok);
        assert!(p.is_null());
    }
}

#[test]
fn thicken_reports_gamma() {
    let g = CString::new("2 2 1\n1 0 0\nT 0 0 0\n").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { qp_thicken(g.as_ptr(), &mut report) }, QpStatus::Ok);
    let v = take(report);
    assert!(v["gamma"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    assert!(v["expansion_bg3"].as_str().unwrap().starts_with(&format!("{0} {0} {0}", v["gamma"])));
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(qp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qplane.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["qp_embed", "qp_thicken", "qp_last_error", "qp_string_free", "QP_STATUS_NEGATIVE"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(&src, "#include \"qplane.h\"\nint main(void) { QpQuasigroup *q = 0; return (int)qp_quasigroup_order(q); }\n").unwrap();
    let status = match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping the compile check");
            return;
        }
    };
    assert!(status.success());
}
