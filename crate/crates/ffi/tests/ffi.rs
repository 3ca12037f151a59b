use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use ballmap_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ballmap_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ballmap_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn map_round_trip_and_properness() {
    unsafe {
        let mut w: *mut BallmapMap = ptr::null_mut();
        assert_eq!(ballmap_map_whitney(&mut w), BallmapStatus::Ok);
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ballmap_map_to_json(w, &mut json), BallmapStatus::Ok);
        let text = CString::new(take(json)).unwrap();
        let mut back: *mut BallmapMap = ptr::null_mut();
        assert_eq!(ballmap_map_from_json(text.as_ptr(), &mut back), BallmapStatus::Ok);
        let mut proper: c_int = -1;
        assert_eq!(ballmap_map_is_proper(back, &mut proper), BallmapStatus::Ok);
        assert_eq!(proper, 1);
        let mut k = usize::MAX;
        assert_eq!(ballmap_map_hf_dimension(back, &mut k), BallmapStatus::Ok);
        assert_eq!(k, 0);
        ballmap_map_free(w);
        ballmap_map_free(back);
    }
}

#[test]
fn non_proper_map() {
    let half = CString::new(r#"{"n":2,"N":2,"terms":[{"alpha":[1,0],"coeff":["1/2",0]},{"alpha":[0,1],"coeff":[0,1]}]}"#).unwrap();
    unsafe {
        let mut f: *mut BallmapMap = ptr::null_mut();
        assert_eq!(ballmap_map_from_json(half.as_ptr(), &mut f), BallmapStatus::Ok);
        let mut proper: c_int = -1;
        assert_eq!(ballmap_map_is_proper(f, &mut proper), BallmapStatus::Ok);
        assert_eq!(proper, 0);
        ballmap_map_free(f);
    }
}

#[test]
fn fixing_group_of_tensor_cube() {
    unsafe {
        let mut t: *mut BallmapMap = ptr::null_mut();
        assert_eq!(ballmap_map_tensor_power(2, 3, &mut t), BallmapStatus::Ok);
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ballmap_map_torus_json(t, 1, &mut json), BallmapStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["finite_generators"][0]["turns"], serde_json::json!(["1/3", "1/3"]));
        ballmap_map_free(t);
    }
}

#[test]
fn membership_and_negative_status() {
    let swap = CString::new(r#"{"dim":2,"matrix":[[0,1],[1,0]]}"#).unwrap();
    unsafe {
        let mut w: *mut BallmapMap = ptr::null_mut();
        ballmap_map_whitney(&mut w);
        let mut g: *mut BallmapAutomorphism = ptr::null_mut();
        assert_eq!(ballmap_automorphism_from_json(swap.as_ptr(), &mut g), BallmapStatus::Ok);
        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(ballmap_gamma_membership(w, g, &mut report), BallmapStatus::Negative);
        assert!(take(report).contains("\"member\":false"));
        ballmap_automorphism_free(g);
        ballmap_map_free(w);
    }
}

#[test]
fn classify_order_seven() {
    let z = |k: usize| {
        let mut c = vec!["\"0\""; k + 1];
        c[k] = "\"1\"";
        format!(r#"{{"order":7,"terms":[{{"rad":1,"coeffs":[{}]}}]}}"#, c.join(","))
    };
    let text = format!(
        r#"{{"dim":3,"generators":[[[{},0,0],[0,{},0],[0,0,{}]]]}}"#,
        z(1),
        z(2),
        z(4)
    );
    let json = CString::new(text).unwrap();
    unsafe {
        let mut g: *mut BallmapGroup = ptr::null_mut();
        assert_eq!(ballmap_group_from_json(json.as_ptr(), 1000, &mut g), BallmapStatus::Ok);
        assert_eq!(ballmap_group_order(g), 7);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(ballmap_classify_kernel(g, &mut out), BallmapStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["tag"], "TypeIII");
        ballmap_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("{not json").unwrap();
    unsafe {
        let mut f: *mut BallmapMap = ptr::null_mut();
        assert_eq!(ballmap_map_from_json(bad.as_ptr(), &mut f), BallmapStatus::Parse);
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(ballmap_map_from_json(ptr::null(), &mut f), BallmapStatus::NullPointer);
        assert_eq!(ballmap_map_is_proper(ptr::null(), ptr::null_mut()), BallmapStatus::NullPointer);
        assert_eq!(ballmap_map_tensor_power(0, 2, &mut f), BallmapStatus::InvalidArgument);
        ballmap_map_free(ptr::null_mut());
        ballmap_string_free(ptr::null_mut());
    }
}

#[test]
fn cli_entry_point() {
    let args: Vec<CString> = ["ballmap", "--no-timestamp", "solve-monomial", "--n", "2", "--exponents", "2,0;0,2"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let mut report: *mut c_char = ptr::null_mut();
    let code = unsafe { ballmap_run(ptrs.len(), ptrs.as_ptr(), &mut report) };
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["payload"]["outcome"], "infeasible");
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ballmap_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/ballmap.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["ballmap_map_from_json", "ballmap_run", "ballmap_last_error", "BALLMAP_STATUS_NEGATIVE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    if let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
