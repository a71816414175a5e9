use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use prefcons_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = prefcons_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn frame(semantics: &str, atoms: &str) -> *mut PrefconsFrame {
    let mut out = ptr::null_mut();
    let status = unsafe { prefcons_frame_new(c(semantics).as_ptr(), c(atoms).as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, PrefconsStatus::Ok);
    out
}

fn relation(frame: *const PrefconsFrame, structure: Option<&str>, discriminative: bool) -> *mut PrefconsRelation {
    let text = structure.map(c);
    let mut out = ptr::null_mut();
    let sp = text.as_ref().map_or(ptr::null(), |t| t.as_ptr());
    let status = unsafe { prefcons_relation_new(frame, sp, discriminative, &mut out) };
    assert_eq!(status, PrefconsStatus::Ok, "{}", last_error());
    out
}

fn entails(rel: *const PrefconsRelation, gamma: &str, alpha: &str) -> bool {
    let mut out = false;
    let status = unsafe { prefcons_entails(rel, c(gamma).as_ptr(), c(alpha).as_ptr(), &mut out) };
    assert_eq!(status, PrefconsStatus::Ok, "{}", last_error());
    out
}

const NIXON: &str = include_str!("../../core/tests/data/nixon_classical.pref");

#[test]
fn frame_sizes() {
    let f = frame("j3", "p,q");
    unsafe {
        assert_eq!(prefcons_frame_valuations(f), 9);
        assert_eq!(prefcons_frame_universe_size(f), 84);
        assert_eq!(prefcons_frame_definable_size(f), 48);
        assert!(prefcons_frame_is_exhaustive(f));
        prefcons_frame_free(f);
        assert_eq!(prefcons_frame_valuations(ptr::null()), 0);
    }
}

#[test]
fn nixon_classical_queries() {
    let f = frame("classical", "p,q,r");
    let rel = relation(f, Some(NIXON), false);
    unsafe { prefcons_frame_free(f) };
    assert!(entails(rel, "r", "!p"));
    assert!(!entails(rel, "r\np", "!p"));
    assert!(entails(rel, "q", "p"));
    assert!(!entails(rel, "q\n!p", "p"));
    assert!(entails(rel, "q\nr", "p & !p"));
    unsafe { prefcons_relation_free(rel) };
}

#[test]
fn consequences_and_check_reports() {
    let f = frame("classical", "p,q,r");
    let rel = relation(f, Some(NIXON), false);
    let mut list = ptr::null_mut();
    let status = unsafe { prefcons_consequences(rel, c("r").as_ptr(), &mut list) };
    assert_eq!(status, PrefconsStatus::Ok);
    let text = unsafe { CStr::from_ptr(list) }.to_str().unwrap().to_owned();
    unsafe { prefcons_string_free(list) };
    assert!(text.lines().any(|l| l == "!p"), "{text}");

    let mut pass = false;
    let mut report = ptr::null_mut();
    let status = unsafe { prefcons_check(rel, c("c0..c3").as_ptr(), &mut pass, &mut report) };
    assert_eq!(status, PrefconsStatus::Ok);
    assert!(pass);
    let kv = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { prefcons_string_free(report) };
    assert!(kv.ends_with("check.pass=true\n"), "{kv}");

    let status = unsafe { prefcons_check(rel, c("c0..c12").as_ptr(), &mut pass, ptr::null_mut()) };
    assert_eq!(status, PrefconsStatus::Ok);
    assert!(!pass);
    unsafe {
        prefcons_relation_free(rel);
        prefcons_frame_free(f);
    }
}

#[test]
fn discriminative_relation_rejects_contradictions() {
    let f = frame("four", "p");
    let rel = relation(f, None, true);
    assert!(!entails(rel, "p\n!p", "p"));
    unsafe {
        prefcons_relation_free(rel);
        prefcons_frame_free(f);
    }
}

#[test]
fn verify_through_ffi() {
    let mut pass = false;
    let mut report = ptr::null_mut();
    let status =
        unsafe { prefcons_verify(c("repClaSyn").as_ptr(), ptr::null(), ptr::null(), 10, 0, &mut pass, &mut report) };
    assert_eq!(status, PrefconsStatus::Ok);
    assert!(pass);
    let kv = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { prefcons_string_free(report) };
    assert!(kv.lines().all(|l| l.starts_with("verify.")), "{kv}");
}

#[test]
fn errors_set_status_and_message() {
    let mut out = ptr::null_mut();
    let status = unsafe { prefcons_frame_new(c("k3").as_ptr(), c("p").as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, PrefconsStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("k3"));

    let status = unsafe { prefcons_frame_new(ptr::null(), c("p").as_ptr(), ptr::null(), &mut out) };
    assert_eq!(status, PrefconsStatus::NullPointer);

    let status = unsafe { prefcons_frame_new(c("classical").as_ptr(), c("p").as_ptr(), c("p &").as_ptr(), &mut out) };
    assert_eq!(status, PrefconsStatus::Syntax);

    let f = frame("classical", "p");
    assert!(prefcons_last_error().is_null());
    let rel = relation(f, None, false);
    let mut holds = false;
    let status = unsafe { prefcons_entails(rel, c("p").as_ptr(), c("q").as_ptr(), &mut holds) };
    assert_eq!(status, PrefconsStatus::InvalidInput);
    let status = unsafe { prefcons_entails(ptr::null(), c("p").as_ptr(), c("p").as_ptr(), &mut holds) };
    assert_eq!(status, PrefconsStatus::NullPointer);
    let mut pass = false;
    let status = unsafe { prefcons_check(rel, c("c99").as_ptr(), &mut pass, ptr::null_mut()) };
    assert_eq!(status, PrefconsStatus::InvalidInput);
    let bad = [0xffu8, 0];
    let status = unsafe { prefcons_entails(rel, bad.as_ptr().cast(), c("p").as_ptr(), &mut holds) };
    assert_eq!(status, PrefconsStatus::InvalidUtf8);
    unsafe {
        prefcons_relation_free(rel);
        prefcons_frame_free(f);
        prefcons_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/prefcons.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct PrefconsFrame PrefconsFrame;"));
}

#[test]
fn c_program_links_against_static_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libprefcons_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = profile_dir.join("prefcons_ffi_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
