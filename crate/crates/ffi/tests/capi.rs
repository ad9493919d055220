use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use virapath_ffi::*;

unsafe fn take(s: *mut std::os::raw::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    vp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let e = vp_last_error();
    assert!(!e.is_null());
    CStr::from_ptr(e).to_str().unwrap().to_owned()
}

unsafe fn model(p: i64, pp: i64) -> *mut VpModel {
    let mut m = ptr::null_mut();
    assert_eq!(vp_model_new(p, pp, &mut m), VpStatus::Ok);
    m
}

unsafe fn path(text: &str) -> *mut VpPath {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(vp_path_parse(c.as_ptr(), &mut p), VpStatus::Ok);
    p
}

#[test]
fn model_errors_carry_messages() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(vp_model_new(4, 6, &mut m), VpStatus::InvalidModel);
        assert!(m.is_null());
        assert!(last_error().contains("gcd"));
        assert_eq!(vp_model_new(3, 4, ptr::null_mut()), VpStatus::NullPointer);
    }
}

#[test]
fn characters_agree_across_methods() {
    unsafe {
        let m = model(3, 5);
        let mut num = 0;
        let mut den = 0;
        assert_eq!(vp_conformal_dim(m, 2, 1, &mut num, &mut den), VpStatus::Ok);
        assert_eq!((num, den), (3, 4));
        let mut texts = Vec::new();
        for method in [VpMethod::Bosonic, VpMethod::Fermionic, VpMethod::Paths] {
            let mut s = ptr::null_mut();
            assert_eq!(vp_character(m, method, 2, 23, 4, &mut s), VpStatus::Ok);
            let mut c = -1;
            assert_eq!(vp_series_coeff(s, 3, 4, &mut c), VpStatus::Ok);
            assert_eq!(c, 1);
            assert_eq!(vp_series_coeff(s, 100, 1, &mut c), VpStatus::OutOfRange);
            texts.push(take(vp_series_to_string(s)));
            let json: serde_json::Value = serde_json::from_str(&take(vp_series_to_json(s))).unwrap();
            assert_eq!(json["trunc"], "23/4");
            vp_series_free(s);
        }
        assert!(texts.windows(2).all(|w| w[0] == w[1]), "{texts:?}");
        let mut s = ptr::null_mut();
        assert_eq!(vp_character(m, VpMethod::Paths, 3, 4, 1, &mut s), VpStatus::OutOfRange);
        assert_eq!(vp_character(m, VpMethod::Bosonic, 1, 4, 0, &mut s), VpStatus::OutOfRange);
        vp_model_free(m);
    }
}

#[test]
fn paths_degrees_and_moves() {
    unsafe {
        let m = model(3, 7);
        let p = path("1,2,1;0,0");
        assert_eq!(take(vp_path_to_string(p)), "1,2,1;0,0");
        let mut len = 0;
        assert_eq!(vp_path_len(p, &mut len), VpStatus::Ok);
        assert_eq!(len, 2);
        let mut ok = false;
        assert_eq!(vp_path_is_admissible(m, p, &mut ok), VpStatus::Ok);
        assert!(ok);
        let (mut num, mut den) = (0, 0);
        assert_eq!(vp_path_degree(m, p, &mut num, &mut den), VpStatus::Ok);
        assert_eq!((num, den), (2, 1));
        assert_eq!(take(vp_path_rigging_json(m, p)), "[0]");

        let mut next = ptr::null_mut();
        assert_eq!(vp_path_move(m, p, 1, 1, &mut next), VpStatus::Ok);
        assert_eq!(take(vp_path_to_string(next)), "1,2,1;1,0");
        assert_eq!(vp_path_degree(m, next, &mut num, &mut den), VpStatus::Ok);
        assert_eq!((num, den), (3, 1));
        assert_eq!(take(vp_path_rigging_json(m, next)), "[1]");

        let mut none = ptr::null_mut();
        assert_eq!(vp_path_move(m, p, 1, -1, &mut none), VpStatus::Undefined);
        assert!(none.is_null());
        assert_eq!(vp_path_move(m, p, 1, 0, &mut none), VpStatus::OutOfRange);
        vp_path_free(next);
        vp_path_free(p);
        vp_model_free(m);
    }
}

#[test]
fn bad_paths_are_rejected() {
    unsafe {
        let mut p = ptr::null_mut();
        let text = CString::new("1,3,1;0,0").unwrap();
        assert_eq!(vp_path_parse(text.as_ptr(), &mut p), VpStatus::MalformedPath);
        let junk = CString::new("1,2;x").unwrap();
        assert_eq!(vp_path_parse(junk.as_ptr(), &mut p), VpStatus::MalformedPath);
        assert_eq!(vp_path_parse(ptr::null(), &mut p), VpStatus::NullPointer);

        let m = model(3, 7);
        let bad = path("1,2,1;0,-1");
        let (mut num, mut den) = (0, 0);
        assert_eq!(vp_path_degree(m, bad, &mut num, &mut den), VpStatus::Inadmissible);
        assert!(vp_path_rigging_json(m, bad).is_null());
        assert!(last_error().contains("inadmissible"));
        vp_path_free(bad);
        vp_model_free(m);
        vp_path_free(ptr::null_mut());
        vp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/virapath.h");
    assert!(header.exists());
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-Wall", "-Werror"]).arg(&header).output() else {
        eprintln!("no C compiler on PATH; header left unchecked");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
