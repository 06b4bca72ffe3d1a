use std::ffi::{CStr, CString};
use std::ptr;

use kappa_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kappa_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn spec_run_and_inspect() {
    unsafe {
        let mut b = ptr::null_mut();
        let spec = c("n=2\nmetric=[[0,1],[1,0]]\ndeformation=weyl\nlayer=group\n");
        assert_eq!(kappa_builder_from_spec(spec.as_ptr(), &mut b), KappaStatus::Ok);
        assert_eq!(kappa_builder_set(b, c("samples").as_ptr(), c("2").as_ptr()), KappaStatus::Ok);
        assert_eq!(kappa_builder_set(b, c("order").as_ptr(), c("2").as_ptr()), KappaStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(kappa_run(b, &mut r), KappaStatus::Ok);
        assert_eq!(kappa_report_passed(r), 1);
        assert_eq!(kappa_report_exit_code(r), 0);
        let count = kappa_report_check_count(r);
        assert!(count > 5);
        let (mut name, mut status) = (ptr::null(), -1);
        assert_eq!(kappa_report_check(r, 0, &mut name, &mut status), KappaStatus::Ok);
        assert!(CStr::from_ptr(name).to_str().unwrap().starts_with("group."));
        assert_eq!(status, 0);
        assert_eq!(kappa_report_check(r, count, &mut name, &mut status), KappaStatus::OutOfRange);
        let body = CStr::from_ptr(kappa_report_body_json(r)).to_str().unwrap();
        assert!(body.contains("\"schema_version\": 1"));
        assert!(!body.contains("unix_time"));
        assert!(CStr::from_ptr(kappa_report_json(r)).to_str().unwrap().contains("unix_time"));
        kappa_report_free(r);
        kappa_builder_free(b);
    }
}

#[test]
fn failing_run_reports_exit_one() {
    unsafe {
        let b = kappa_builder_new();
        for (k, v) in [("metric", "minkowski"), ("n", "2"), ("deformation", "weyl"), ("layer", "group"), ("samples", "0"), ("order", "2")] {
            assert_eq!(kappa_builder_set(b, c(k).as_ptr(), c(v).as_ptr()), KappaStatus::Ok);
        }
        let mut r = ptr::null_mut();
        assert_eq!(kappa_run(b, &mut r), KappaStatus::Ok);
        assert_eq!(kappa_report_passed(r), 0);
        assert_eq!(kappa_report_exit_code(r), 1);
        kappa_report_free(r);
        kappa_builder_free(b);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(kappa_builder_from_spec(c("n=2\nbogus=1").as_ptr(), &mut b), KappaStatus::Parse);
        assert!(b.is_null());
        assert!(last_error().contains("line 2"));

        assert_eq!(kappa_builder_from_spec(c("metric=[[1,0],[0,0]]").as_ptr(), &mut b), KappaStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(kappa_run(b, &mut r), KappaStatus::SingularMetric);
        assert!(r.is_null());
        assert_eq!(last_error(), "metric is singular");
        kappa_builder_free(b);

        assert_eq!(kappa_builder_from_spec(c("metric=[[1,2],[3,4]]").as_ptr(), &mut b), KappaStatus::Ok);
        assert_eq!(kappa_run(b, &mut r), KappaStatus::NonSymmetricMetric);
        assert_eq!(kappa_builder_set(b, c("metric").as_ptr(), c("minkowski").as_ptr()), KappaStatus::Ok);
        assert_eq!(kappa_builder_set(b, c("n").as_ptr(), c("40").as_ptr()), KappaStatus::Ok);
        assert_eq!(kappa_run(b, &mut r), KappaStatus::Limit);
        assert_eq!(kappa_builder_set(b, c("colour").as_ptr(), c("red").as_ptr()), KappaStatus::Config);
        assert_eq!(kappa_builder_set(b, ptr::null(), c("red").as_ptr()), KappaStatus::NullArgument);
        kappa_builder_free(b);

        assert_eq!(kappa_run(ptr::null(), &mut r), KappaStatus::NullArgument);
        assert_eq!(kappa_report_passed(ptr::null()), 0);
        assert!(kappa_report_json(ptr::null()).is_null());
        kappa_builder_free(ptr::null_mut());
        kappa_report_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kappa.h")).unwrap();
    for sym in [
        "kappa_last_error",
        "kappa_builder_new",
        "kappa_builder_from_spec",
        "kappa_builder_set",
        "kappa_builder_free",
        "kappa_run",
        "kappa_report_passed",
        "kappa_report_exit_code",
        "kappa_report_check_count",
        "kappa_report_check",
        "kappa_report_json",
        "kappa_report_body_json",
        "kappa_report_free",
        "typedef struct KappaBuilder KappaBuilder",
        "KAPPA_STATUS_SINGULAR_METRIC = 5",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
