use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sasaki_ffi::*;
use serde_json::Value;

fn join(base: &str, l1: u64, l2: u64, w1: u64, w2: u64) -> Result<*mut SasakiJoin, (SasakiStatus, String)> {
    let base = CString::new(base).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { sasaki_join_new(base.as_ptr(), l1, l2, w1, w2, &mut out) };
    if status == SasakiStatus::Ok {
        assert!(sasaki_last_error().is_null());
        Ok(out)
    } else {
        assert!(out.is_null());
        Err((status, last_error()))
    }
}

fn last_error() -> String {
    let p = sasaki_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take_json(p: *mut c_char) -> Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { sasaki_string_free(p) };
    v
}

#[test]
fn three_rays_for_l2_thirteen() {
    let j = join("CP2", 1, 13, 2, 3).unwrap();
    let (mut w1, mut w2) = (0, 0);
    assert_eq!(unsafe { sasaki_join_weights(j, &mut w1, &mut w2) }, SasakiStatus::Ok);
    assert_eq!((w1, w2), (3, 2));

    let mut count = 0;
    assert_eq!(unsafe { sasaki_csc_ray_count(j, &mut count) }, SasakiStatus::Ok);
    assert_eq!(count, 3);

    let mut len = 0;
    let status = unsafe { sasaki_csc_ray_slopes(j, ptr::null_mut(), 0, &mut len) };
    assert_eq!((status, len), (SasakiStatus::InvalidArgument, 3));
    let mut buf = vec![0.0; len];
    assert_eq!(unsafe { sasaki_csc_ray_slopes(j, buf.as_mut_ptr(), buf.len(), &mut len) }, SasakiStatus::Ok);
    assert!(buf.windows(2).all(|w| w[0] < w[1]) && buf[0] > 0.0);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sasaki_csc_rays_json(j, &mut out) }, SasakiStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["ray_count"], 3);
    assert_eq!(v["rays"].as_array().unwrap().len(), 3);

    assert_eq!(unsafe { sasaki_join_json(j, &mut out) }, SasakiStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["l2"], 13);
    assert!(v["invariants"].is_object());
    unsafe { sasaki_join_free(j) };
}

#[test]
fn se_ray_and_obstruction() {
    let j = join("CP1", 1, 13, 21, 5).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sasaki_se_ray_json(j, &mut out) }, SasakiStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["b"], serde_json::json!({"num": "5", "den": "7"}));
    unsafe { sasaki_join_free(j) };

    let j = join("CP2", 1, 13, 3, 2).unwrap();
    let status = unsafe { sasaki_se_ray_json(j, &mut out) };
    assert_eq!(status, SasakiStatus::InvalidInput);
    assert!(last_error().contains("c1 obstruction"));
    unsafe { sasaki_join_free(j) };
}

#[test]
fn rejected_inputs_set_status_and_message() {
    let (status, msg) = join("CP2", 1, 3, 3, 2).unwrap_err();
    assert_eq!(status, SasakiStatus::InvalidInput);
    assert!(msg.contains("gcd(l2, l1·w1·w2) = 3"), "{msg}");
    let (status, msg) = join("RP2", 1, 13, 3, 2).unwrap_err();
    assert_eq!(status, SasakiStatus::InvalidInput);
    assert!(msg.contains("unknown preset"), "{msg}");

    let mut out = ptr::null_mut();
    let status = unsafe { sasaki_join_new(ptr::null(), 1, 13, 3, 2, &mut out) };
    assert_eq!(status, SasakiStatus::InvalidArgument);
    let mut count = 0;
    assert_eq!(unsafe { sasaki_csc_ray_count(ptr::null(), &mut count) }, SasakiStatus::InvalidArgument);
    assert!(last_error().contains("null"));

    unsafe {
        sasaki_join_free(ptr::null_mut());
        sasaki_string_free(ptr::null_mut());
    }
}

#[test]
fn run_json_matches_cli() {
    let args: Vec<CString> = ["ypq", "--p", "13", "--q", "8"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut code) = (ptr::null_mut(), -1);
    assert_eq!(unsafe { sasaki_run_json(ptrs.len(), ptrs.as_ptr(), &mut out, &mut code) }, SasakiStatus::Ok);
    assert_eq!(code, 0);
    let v = take_json(out);
    assert_eq!(v["result"]["w"], serde_json::json!([21, 5]));

    let args: Vec<CString> = ["validate", "--l1", "1", "--l2", "3", "--w", "3,2"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { sasaki_run_json(ptrs.len(), ptrs.as_ptr(), &mut out, &mut code) }, SasakiStatus::Ok);
    assert_eq!(code, 2);
    let v = take_json(out);
    assert!(v["result"]["error"].as_str().unwrap().contains("gcd"));

    let args = [CString::new("nonsense").unwrap()];
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let status = unsafe { sasaki_run_json(1, ptrs.as_ptr(), &mut out, &mut code) };
    assert_eq!((status, code), (SasakiStatus::InvalidInput, 2));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(sasaki_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
