use std::ffi::{c_char, CStr, CString};
use std::ptr;

use chronogram_ffi::*;

fn last_error() -> String {
    let p = chronogram_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { chronogram_string_free(s) };
    out
}

#[test]
fn cosine_statuses() {
    let mut out = 0.0;
    let u = [1.0, 1.0, 0.0];
    let v = [1.0, 0.0, 1.0];
    unsafe {
        assert_eq!(chronogram_cosine(u.as_ptr(), v.as_ptr(), 3, &mut out), ChronogramStatus::Ok);
        assert_eq!(out, 0.5);
        assert_eq!(chronogram_cosine(ptr::null(), v.as_ptr(), 3, &mut out), ChronogramStatus::NullArgument);
        assert_eq!(chronogram_cosine(u.as_ptr(), v.as_ptr(), 0, &mut out), ChronogramStatus::ZeroVector);
    }
}

#[test]
fn corpus_handle() {
    let text = CString::new("id\tyear\tjournal\ttitle\tauthors\nA1\t1955\tSCIENCE\tCitation indexes\tGarfield, E.\n").unwrap();
    let mut corpus = ptr::null_mut();
    unsafe {
        assert_eq!(chronogram_corpus_parse(text.as_ptr(), ChronogramFormat::Tsv, &mut corpus), ChronogramStatus::Ok);
        assert_eq!(chronogram_corpus_len(corpus), 1);
        let mut json = ptr::null_mut();
        assert_eq!(chronogram_corpus_record_json(corpus, 0, &mut json), ChronogramStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["authors"][0], "GARFIELD E");
        assert_eq!(v["year"], 1955);
        assert_eq!(chronogram_corpus_record_json(corpus, 1, &mut json), ChronogramStatus::OutOfRange);
        chronogram_corpus_free(corpus);
        chronogram_corpus_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    let bytes = [0x41u8, 0xff, 0];
    let mut corpus = ptr::null_mut();
    let s = unsafe { chronogram_corpus_parse(bytes.as_ptr().cast(), ChronogramFormat::FieldTagged, &mut corpus) };
    assert_eq!(s, ChronogramStatus::InvalidUtf8);
    assert!(corpus.is_null());
    assert!(last_error().contains("UTF-8"));
}

#[test]
fn run_reports_pipeline_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let set = |cfg, k: &str, v: &str| {
        let (k, v) = (CString::new(k).unwrap(), CString::new(v).unwrap());
        unsafe { chronogram_config_set(cfg, k.as_ptr(), v.as_ptr()) }
    };
    let mut cfg = ptr::null_mut();
    unsafe {
        assert_eq!(chronogram_config_new(&mut cfg), ChronogramStatus::Ok);
    }
    let out = dir.path().join("out");
    assert_eq!(set(cfg, "out", out.to_str().unwrap()), ChronogramStatus::Ok);
    assert_eq!(set(cfg, "input", dir.path().join("missing.txt").to_str().unwrap()), ChronogramStatus::Ok);
    let mut manifest = ptr::null_mut();
    unsafe {
        assert_eq!(chronogram_run(cfg, &mut manifest), ChronogramStatus::ConfigError);
        assert!(!out.exists());

        std::fs::write(dir.path().join("bad.txt"), "AU X\nPY abc\nER\nEF\n").unwrap();
        assert_eq!(set(cfg, "input", dir.path().join("bad.txt").to_str().unwrap()), ChronogramStatus::Ok);
        assert_eq!(chronogram_run(cfg, &mut manifest), ChronogramStatus::MalformedRecord);
        assert!(last_error().contains("line 2"));

        chronogram_config_free(cfg);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/chronogram.h");
    for name in [
        "chronogram_last_error",
        "chronogram_version",
        "chronogram_string_free",
        "chronogram_cosine",
        "chronogram_config_new",
        "chronogram_config_free",
        "chronogram_config_set",
        "chronogram_run",
        "chronogram_manifest_free",
        "chronogram_manifest_window_count",
        "chronogram_manifest_json",
        "chronogram_corpus_parse",
        "chronogram_corpus_load",
        "chronogram_corpus_free",
        "chronogram_corpus_len",
        "chronogram_corpus_record_json",
        "typedef struct ChronogramConfig ChronogramConfig;",
        "typedef struct ChronogramCorpus ChronogramCorpus;",
        "typedef struct ChronogramManifest ChronogramManifest;",
        "CHRONOGRAM_STATUS_MALFORMED_RECORD = 1",
        "CHRONOGRAM_STATUS_CONFIG_ERROR = 2",
        "CHRONOGRAM_STATUS_IO_ERROR = 3",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
