use std::ffi::{c_char, CStr, CString};
use std::ptr;

use rittforge_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    rf_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = rf_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn poly(expr: &str) -> *mut RfPoly {
    let mut p = ptr::null_mut();
    assert_eq!(rf_poly_parse(cstr(expr).as_ptr(), &mut p), RfStatus::Ok);
    p
}

#[test]
fn poly_round_trip_and_compose() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(rf_poly_from_json(cstr(r#"{"coeffs":["1","0","1"]}"#).as_ptr(), &mut p), RfStatus::Ok);
        assert!(rf_last_error().is_null());
        let mut s = ptr::null_mut();
        assert_eq!(rf_poly_to_json(p, &mut s), RfStatus::Ok);
        assert_eq!(take(s), r#"{"coeffs":["1/1","0/1","1/1"]}"#);

        let q = poly("z^3");
        let mut pq = ptr::null_mut();
        assert_eq!(rf_poly_compose(p, q, &mut pq), RfStatus::Ok);
        let mut d = 0usize;
        assert_eq!(rf_poly_degree(pq, &mut d), RfStatus::Ok);
        assert_eq!(d, 6);

        let mut s = ptr::null_mut();
        assert_eq!(rf_decompose(pq, &mut s), RfStatus::Ok);
        assert!(take(s).contains(r#""degree_multiset":[2,3]"#));
        for h in [p, q, pq] {
            rf_poly_free(h);
        }
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(rf_poly_from_json(cstr("{").as_ptr(), &mut p), RfStatus::Parse);
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(rf_poly_from_json(ptr::null(), &mut p), RfStatus::NullPointer);
        assert_eq!(rf_poly_parse(c"\xff".as_ptr(), &mut p), RfStatus::InvalidUtf8);

        let line = poly("z+1");
        let mut s = ptr::null_mut();
        assert_eq!(rf_decompose(line, &mut s), RfStatus::Domain);
        assert!(last_error().contains("degree"));
        assert_eq!(rf_poly_degree(line, ptr::null_mut()), RfStatus::NullPointer);

        let mut g = ptr::null_mut();
        assert_eq!(rf_julia_render(line, 0.0, 0.0, 4.0, 0, &mut g), RfStatus::Budget);
        let mut pass = 0;
        assert_eq!(rf_check_run(0, 1, &mut pass), RfStatus::Domain);
        rf_poly_free(line);
        rf_poly_free(ptr::null_mut());
        rf_string_free(ptr::null_mut());
    }
}

#[test]
fn biequiv() {
    unsafe {
        let p = poly("z^2");
        let q = poly("(z+1)^2");
        let r = poly("z^4+z");
        let s4 = poly("z^4");
        let mut found = -1;
        let mut s = ptr::null_mut();
        assert_eq!(rf_affine_biequiv(p, q, &mut found, &mut s), RfStatus::Ok);
        assert_eq!(found, 1);
        let w: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(w["B"], serde_json::json!({"a": "1/1", "b": "1/1"}));
        let mut s = ptr::null_mut();
        assert_eq!(rf_affine_biequiv(r, s4, &mut found, &mut s), RfStatus::Ok);
        assert_eq!(found, 0);
        assert_eq!(take(s), "null");
        for h in [p, q, r, s4] {
            rf_poly_free(h);
        }
    }
}

#[test]
fn hcorr_compose() {
    unsafe {
        let mut k1 = ptr::null_mut();
        let mut k2 = ptr::null_mut();
        assert_eq!(rf_hcorr_from_json(cstr(r#"{"coeffs_in_W":[{"coeffs":["0","0","-1"]},"1"]}"#).as_ptr(), &mut k1), RfStatus::Ok);
        assert_eq!(rf_hcorr_from_json(cstr(r#"{"coeffs_in_W":[{"coeffs":["-1","-1"]},"1"]}"#).as_ptr(), &mut k2), RfStatus::Ok);
        let mut k = ptr::null_mut();
        assert_eq!(rf_hcorr_compose(k2, k1, false, &mut k), RfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(rf_hcorr_to_json(k, &mut s), RfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["coeffs_in_W"][0]["num"]["coeffs"], serde_json::json!(["-1/1", "0/1", "-1/1"]));
        let mut bad = ptr::null_mut();
        assert_eq!(rf_hcorr_from_json(cstr(r#"{"coeffs_in_W":["1"]}"#).as_ptr(), &mut bad), RfStatus::Parse);
        for h in [k1, k2, k] {
            rf_hcorr_free(h);
        }
    }
}

#[test]
fn render_codes() {
    unsafe {
        let p = poly("z^2");
        let mut g = ptr::null_mut();
        assert_eq!(rf_julia_render(p, 0.0, 0.0, 4.0, 16, &mut g), RfStatus::Ok);
        let (mut nx, mut ny) = (0, 0);
        assert_eq!(rf_grid_size(g, &mut nx, &mut ny), RfStatus::Ok);
        assert_eq!((nx, ny), (16, 16));
        let mut buf = vec![1u8; nx * ny];
        assert_eq!(rf_grid_codes(g, buf.as_mut_ptr(), buf.len() - 1), RfStatus::Domain);
        assert_eq!(rf_grid_codes(g, buf.as_mut_ptr(), buf.len()), RfStatus::Ok);
        assert!(buf.iter().all(|b| [0, 85, 170, 255].contains(b)));
        assert_eq!(buf[0], 255);
        assert_eq!(buf[8 * 16 + 8], 170);
        rf_grid_free(g);
        rf_poly_free(p);
    }
}

#[test]
fn check_runs() {
    unsafe {
        let mut pass = -1;
        assert_eq!(rf_check_run(2, 20_240_611, &mut pass), RfStatus::Ok);
        assert_eq!(pass, 1);
    }
}

/// The generated header is valid C and declares every exported symbol.
#[test]
fn header_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/rittforge.h")).unwrap();
    for sym in [
        "rf_last_error", "rf_string_free", "rf_poly_from_json", "rf_poly_parse", "rf_poly_to_json",
        "rf_poly_degree", "rf_poly_compose", "rf_poly_free", "rf_decompose", "rf_affine_biequiv",
        "rf_hcorr_from_json", "rf_hcorr_to_json", "rf_hcorr_compose", "rf_hcorr_free",
        "rf_julia_render", "rf_grid_size", "rf_grid_codes", "rf_grid_free", "rf_check_run",
    ] {
        assert!(header.contains(&format!("{sym}(")), "{sym} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(dir.join("include/rittforge.h"))
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}

/// A C program built against the header and the static library runs.
#[test]
fn c_program_links() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let Some(lib) = exe.ancestors().map(|d| d.join("librittforge_ffi.a")).find(|p| p.exists()) else {
        eprintln!("static library not built; skipping");
        return;
    };
    let bin = std::env::temp_dir().join(format!("rittforge-smoke-{}", std::process::id()));
    let Ok(status) = std::process::Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    std::fs::remove_file(&bin).ok();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
