//! C ABI over the chronogram pipeline.
//!
//! Every function returns a [`ChronogramStatus`]; on failure a message is
//! available from [`chronogram_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`chronogram_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use chronogram::ingest::{parse_field_tagged, parse_tsv, BiblioRecord, IngestError};
use chronogram::pipeline::{run_pipeline, PipelineError, RunConfig, RunManifest};
use chronogram::simnet::{cosine, SimError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChronogramStatus {
    Ok = 0,
    MalformedRecord = 1,
    ConfigError = 2,
    IoError = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    ZeroVector = 6,
    DimensionMismatch = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChronogramFormat {
    FieldTagged = 0,
    Tsv = 1,
}

/// Opaque run configuration.
pub struct ChronogramConfig {
    inner: RunConfig,
}

/// Opaque parsed record set.
pub struct ChronogramCorpus {
    records: Vec<BiblioRecord>,
}

/// Opaque result of a completed run.
pub struct ChronogramManifest {
    inner: RunManifest,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: ChronogramStatus, msg: impl Into<String>) -> ChronogramStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ChronogramStatus) -> ChronogramStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(ChronogramStatus::Panic, "internal panic"),
    }
}

fn pipeline_status(e: &PipelineError) -> ChronogramStatus {
    match e {
        PipelineError::Malformed(_) => ChronogramStatus::MalformedRecord,
        PipelineError::Config(_) => ChronogramStatus::ConfigError,
        PipelineError::Output { .. } => ChronogramStatus::IoError,
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, ChronogramStatus> {
    if p.is_null() {
        return Err(fail(ChronogramStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ChronogramStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn chronogram_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn chronogram_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn chronogram_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Cosine similarity of two length-`n` vectors.
///
/// # Safety
/// `u` and `v` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_cosine(u: *const f64, v: *const f64, n: usize, out: *mut f64) -> ChronogramStatus {
    guard(|| {
        if u.is_null() || v.is_null() || out.is_null() {
            return fail(ChronogramStatus::NullArgument, "null argument");
        }
        let (u, v) = (std::slice::from_raw_parts(u, n), std::slice::from_raw_parts(v, n));
        match cosine(u, v) {
            Ok(c) => {
                *out = c;
                ChronogramStatus::Ok
            }
            Err(e @ SimError::ZeroVector) => fail(ChronogramStatus::ZeroVector, e.to_string()),
            Err(e @ SimError::DimensionMismatch { .. }) => fail(ChronogramStatus::DimensionMismatch, e.to_string()),
        }
    })
}

/// New configuration holding the default parameters.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_config_new(out: *mut *mut ChronogramConfig) -> ChronogramStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        *out = Box::into_raw(Box::new(ChronogramConfig {
            inner: RunConfig::default(),
        }));
        ChronogramStatus::Ok
    })
}

/// # Safety
/// `config` must come from `chronogram_config_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn chronogram_config_free(config: *mut ChronogramConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Set one option by its command-line name without dashes, e.g.
/// `("window-length", "5")`, `("input", "records.txt")`,
/// `("exclude-journal", "CURRENT CONTENTS")` (accumulates).
///
/// # Safety
/// `config` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn chronogram_config_set(
    config: *mut ChronogramConfig,
    key: *const c_char,
    value: *const c_char,
) -> ChronogramStatus {
    guard(|| {
        let Some(config) = config.as_mut() else {
            return fail(ChronogramStatus::NullArgument, "config is null");
        };
        let key = match str_arg(key, "key") {
            Ok(k) => k,
            Err(s) => return s,
        };
        let value = match str_arg(value, "value") {
            Ok(v) => v,
            Err(s) => return s,
        };
        match config.inner.apply(key, value) {
            Ok(()) => ChronogramStatus::Ok,
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// Run the full pipeline, writing outputs into the configured directory.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_run(
    config: *const ChronogramConfig,
    out: *mut *mut ChronogramManifest,
) -> ChronogramStatus {
    guard(|| {
        let Some(config) = config.as_ref() else {
            return fail(ChronogramStatus::NullArgument, "config is null");
        };
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        match run_pipeline(&config.inner) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(ChronogramManifest { inner: m }));
                ChronogramStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `manifest` must come from `chronogram_run` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn chronogram_manifest_free(manifest: *mut ChronogramManifest) {
    if !manifest.is_null() {
        drop(Box::from_raw(manifest));
    }
}

/// Number of time windows in the run.
///
/// # Safety
/// `manifest` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn chronogram_manifest_window_count(manifest: *const ChronogramManifest) -> usize {
    manifest.as_ref().map_or(0, |m| m.inner.windows.len())
}

/// The run manifest as JSON; free with `chronogram_string_free`.
///
/// # Safety
/// `manifest` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_manifest_json(
    manifest: *const ChronogramManifest,
    out: *mut *mut c_char,
) -> ChronogramStatus {
    guard(|| {
        let Some(m) = manifest.as_ref() else {
            return fail(ChronogramStatus::NullArgument, "manifest is null");
        };
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        *out = into_c_string(m.inner.to_json());
        ChronogramStatus::Ok
    })
}

/// Parse records from NUL-terminated text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_corpus_parse(
    text: *const c_char,
    format: ChronogramFormat,
    out: *mut *mut ChronogramCorpus,
) -> ChronogramStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        let text = match str_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = match format {
            ChronogramFormat::FieldTagged => parse_field_tagged(text),
            ChronogramFormat::Tsv => parse_tsv(text),
        };
        match parsed {
            Ok(records) => {
                *out = Box::into_raw(Box::new(ChronogramCorpus { records }));
                ChronogramStatus::Ok
            }
            Err(e @ IngestError::InvalidYearRange { .. }) => fail(ChronogramStatus::ConfigError, e.to_string()),
            Err(e) => fail(ChronogramStatus::MalformedRecord, e.to_string()),
        }
    })
}

/// Parse a record file, choosing the format from its extension.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_corpus_load(path: *const c_char, out: *mut *mut ChronogramCorpus) -> ChronogramStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        let path = match str_arg(path, "path") {
            Ok(p) => Path::new(p),
            Err(s) => return s,
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(ChronogramStatus::IoError, format!("cannot read {}: {e}", path.display())),
        };
        match chronogram::ingest::parse_records(path, &text) {
            Ok(records) => {
                *out = Box::into_raw(Box::new(ChronogramCorpus { records }));
                ChronogramStatus::Ok
            }
            Err(e) => fail(ChronogramStatus::MalformedRecord, e.to_string()),
        }
    })
}

/// # Safety
/// `corpus` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn chronogram_corpus_free(corpus: *mut ChronogramCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Number of records.
///
/// # Safety
/// `corpus` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn chronogram_corpus_len(corpus: *const ChronogramCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.records.len())
}

/// Record `index` as JSON (`id`, `authors`, `title`, `journal`, `year`);
/// free with `chronogram_string_free`.
///
/// # Safety
/// `corpus` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chronogram_corpus_record_json(
    corpus: *const ChronogramCorpus,
    index: usize,
    out: *mut *mut c_char,
) -> ChronogramStatus {
    guard(|| {
        let Some(c) = corpus.as_ref() else {
            return fail(ChronogramStatus::NullArgument, "corpus is null");
        };
        if out.is_null() {
            return fail(ChronogramStatus::NullArgument, "out is null");
        }
        let Some(r) = c.records.get(index) else {
            return fail(
                ChronogramStatus::OutOfRange,
                format!("record {index} out of range (len {})", c.records.len()),
            );
        };
        *out = into_c_string(serde_json::to_string(r).expect("record serializes"));
        ChronogramStatus::Ok
    })
}
