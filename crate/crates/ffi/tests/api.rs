use std::ffi::{CStr, CString};
use std::ptr;

use monogamy_ffi::*;

fn last_error() -> String {
    let p = mono_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

struct Handle(*mut MonoState);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { mono_state_free(self.0) }
    }
}

fn make(f: impl FnOnce(*mut *mut MonoState) -> MonoStatus) -> Handle {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), MonoStatus::Ok);
    assert!(!out.is_null());
    Handle(out)
}

fn scalar(f: impl FnOnce(*mut f64) -> MonoStatus) -> f64 {
    let mut v = f64::NAN;
    assert_eq!(f(&mut v), MonoStatus::Ok);
    v
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { mono_string_free(p) };
    s
}

#[test]
fn ghz_tangles() {
    let g = make(|o| unsafe { mono_state_ghz(3, o) });
    let side = [0usize];
    assert!((scalar(|o| unsafe { mono_pure_tangle(g.0, side.as_ptr(), 1, o) }) - 1.0).abs() < 1e-12);
    assert!((scalar(|o| unsafe { mono_tau1(g.0, o) }) - 1.0).abs() < 1e-12);
    assert!(scalar(|o| unsafe { mono_tau2(g.0, o) }).abs() < 1e-12);
    let mut n = 0usize;
    assert_eq!(unsafe { mono_state_parties(g.0, &mut n) }, MonoStatus::Ok);
    assert_eq!(n, 3);
}

#[test]
fn bell_pair_measures() {
    let b = make(|o| unsafe { mono_state_bell(MonoBell::PhiMinus, o) });
    assert!((scalar(|o| unsafe { mono_two_qubit_tangle(b.0, o) }) - 1.0).abs() < 1e-12);
    assert!((scalar(|o| unsafe { mono_concurrence(b.0, o) }) - 1.0).abs() < 1e-12);
    assert!((scalar(|o| unsafe { mono_eof_two_qubit(b.0, o) }) - 1.0).abs() < 1e-12);
    assert!(scalar(|o| unsafe { mono_entropy(b.0, MonoEntropy::VonNeumann, 0.0, o) }).abs() < 1e-9);
    let keep = [0usize];
    let a = make(|o| unsafe { mono_state_reduce(b.0, keep.as_ptr(), 1, o) });
    assert!((scalar(|o| unsafe { mono_entropy(a.0, MonoEntropy::VonNeumann, 0.0, o) }) - 1.0).abs() < 1e-12);
    assert!((scalar(|o| unsafe { mono_entropy(a.0, MonoEntropy::Renyi, 2.0, o) }) - 1.0).abs() < 1e-12);
    assert!((scalar(|o| unsafe { mono_squashed_bound(b.0, 2, 1, o) }) - 1.0).abs() < 1e-9);
}

#[test]
fn json_round_trip() {
    let dims = [2usize, 3];
    let m = make(|o| unsafe { mono_state_ginibre(dims.as_ptr(), 2, 3, 9, o) });
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { mono_state_to_json(m.0, &mut text) }, MonoStatus::Ok);
    let json = take_string(text);
    let c = CString::new(json.clone()).unwrap();
    let back = make(|o| unsafe { mono_state_from_json(c.as_ptr(), o) });
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { mono_state_to_json(back.0, &mut again) }, MonoStatus::Ok);
    assert_eq!(take_string(again), json);
    let mut pure = -1;
    assert_eq!(unsafe { mono_state_is_pure(back.0, &mut pure) }, MonoStatus::Ok);
    assert_eq!(pure, 0);
}

#[test]
fn report_json() {
    let dims = [2usize, 2, 2];
    let psi = make(|o| unsafe { mono_state_haar(dims.as_ptr(), 3, 4, o) });
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { mono_monogamy_report(psi.0, 1, 0, &mut text) }, MonoStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(text)).unwrap();
    assert_eq!(v["focus"], 1);
    assert_eq!(v["satisfied"], true);
}

#[test]
fn errors_set_status_and_message() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mono_state_ghz(0, &mut out) }, MonoStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { mono_state_ghz(3, ptr::null_mut()) }, MonoStatus::NullPointer);
    let mut v = 0.0;
    assert_eq!(unsafe { mono_tau1(ptr::null(), &mut v) }, MonoStatus::NullPointer);
    assert!(last_error().contains("state"));

    let g = make(|o| unsafe { mono_state_ghz(3, o) });
    assert_eq!(unsafe { mono_two_qubit_tangle(g.0, &mut v) }, MonoStatus::DimensionMismatch);
    let side = [5usize];
    assert_eq!(unsafe { mono_pure_tangle(g.0, side.as_ptr(), 1, &mut v) }, MonoStatus::InvalidCut);

    let bad = CString::new("{\"kind\": \"pure\"}").unwrap();
    assert_eq!(unsafe { mono_state_from_json(bad.as_ptr(), &mut out) }, MonoStatus::Format);
    assert_eq!(unsafe { mono_entropy(g.0, MonoEntropy::Renyi, -1.0, &mut v) }, MonoStatus::InvalidArgument);
}

#[test]
fn freeing_null_is_a_no_op() {
    unsafe {
        mono_state_free(ptr::null_mut());
        mono_string_free(ptr::null_mut());
    }
}
