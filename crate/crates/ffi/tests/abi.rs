use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use shortcode_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sc_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn shorten_and_enumerate() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(sc_code_build(c("apn:p=2,m=5,e=1").as_ptr(), &mut code), ScStatus::Ok);
        assert_eq!((sc_code_length(code), sc_code_dimension(code)), (32, 11));
        let mut short = ptr::null_mut();
        assert_eq!(sc_code_shorten(code, c("T=alpha^1").as_ptr(), &mut short), ScStatus::Ok);
        let mut wd = ptr::null_mut();
        assert_eq!(sc_code_weights(short, &mut wd), ScStatus::Ok);
        let mut n = 0u64;
        for (w, want) in [(12, 310), (16, 527), (20, 186)] {
            assert_eq!(sc_weights_count(wd, w, &mut n), ScStatus::Ok);
            assert_eq!(n, want);
        }
        let mut pred = ptr::null_mut();
        assert_eq!(sc_predict(c("tab3").as_ptr(), 2, 5, 0, false, &mut pred), ScStatus::Ok);
        assert!(sc_weights_equal(wd, pred));
        sc_weights_free(pred);
        sc_weights_free(wd);
        sc_code_free(short);
        sc_code_free(code);
    }
}

#[test]
fn json_round_trip_and_dual() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(sc_code_build(c("pn:p=3,m=2,s=2").as_ptr(), &mut code), ScStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(sc_code_to_json(code, &mut json), ScStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(sc_code_from_json(json, &mut back), ScStatus::Ok);
        assert_eq!(sc_code_dimension(back), sc_code_dimension(code));
        sc_string_free(json);
        let mut dual = ptr::null_mut();
        assert_eq!(sc_code_dual(back, &mut dual), ScStatus::Ok);
        assert_eq!(sc_code_dimension(dual), 9 - 5);
        let mut l = 0u64;
        assert_eq!(sc_code_lambda(code, c("0,1").as_ptr(), 6, true, &mut l), ScStatus::Ok);
        sc_code_free(dual);
        sc_code_free(back);
        sc_code_free(code);
    }
}

#[test]
fn field_arithmetic() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sc_field_new(c("p=2,m=4,mod=10011").as_ptr(), &mut f), ScStatus::Ok);
        assert_eq!(sc_field_order(f), 16);
        let mut r = 0u32;
        // alpha * alpha^3 = alpha^4 = alpha + 1 under x^4 + x + 1.
        assert_eq!(sc_field_op(f, 1, 2, 8, &mut r), ScStatus::Ok);
        assert_eq!(r, 3);
        assert_eq!(sc_field_op(f, 2, 1, 0, &mut r), ScStatus::Arithmetic);
        assert!(last_error().contains("zero"));
        assert_eq!(sc_field_trace(f, 1, &mut r), ScStatus::Ok);
        assert_eq!(r, 0);
        sc_field_free(f);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(sc_code_build(ptr::null(), &mut code), ScStatus::NullPointer);
        assert_eq!(sc_code_build(c("apn:p=2,m=5").as_ptr(), &mut code), ScStatus::Parse);
        assert!(!last_error().is_empty());
        let mut f = ptr::null_mut();
        assert_eq!(sc_field_new(c("p=4,m=2").as_ptr(), &mut f), ScStatus::InvalidField);
        let mut wd = ptr::null_mut();
        assert_eq!(sc_predict(c("tab10").as_ptr(), 2, 4, 0, false, &mut wd), ScStatus::GateUnsatisfied);
        assert_eq!(sc_predict(c("tab99").as_ptr(), 2, 4, 0, false, &mut wd), ScStatus::Parse);
        assert_eq!(sc_weights_length(ptr::null()), 0);
    }
}

/// Compiles a C program against the generated header and the static
/// library, when a C compiler and the archive are available.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("shortcode.h").exists(), "header not generated");
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let archive = profile_dir.join("libshortcode_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", archive.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "shortcode.h"
int main(void) {
    ScCode *code = NULL, *short_code = NULL;
    ScWeights *wd = NULL;
    uint64_t n = 0;
    if (sc_code_build("apn:p=2,m=5,e=1", &code) != SC_STATUS_OK) return 1;
    if (sc_code_shorten(code, "T=alpha^1", &short_code) != SC_STATUS_OK) return 2;
    if (sc_code_weights(short_code, &wd) != SC_STATUS_OK) return 3;
    if (sc_weights_count(wd, 16, &n) != SC_STATUS_OK || n != 527) return 4;
    if (sc_code_build("bogus", &code) != SC_STATUS_PARSE) return 5;
    printf("%s\n", sc_last_error());
    sc_weights_free(wd);
    sc_code_free(short_code);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
}
