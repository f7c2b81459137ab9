//! C ABI over the linepin library.
//!
//! Callers hand in JSON documents (see the core crate's document format),
//! get back status codes and NUL-terminated JSON strings. Every returned
//! string is released with [`linepin_string_free`]; parsed documents are
//! released with [`linepin_doc_free`]. All entry points are panic-safe.

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use linepin::classify::classify_ortho_pinning;
use linepin::doc::{polytope_report_json, verdict_json, Document};
use linepin::generators::{generate, Generated};
use linepin::linespace::orthogonalize_family;
use linepin::pinning::{decide_pinning, minimize_pinning};
use linepin::polytopes::{decide_polytope_pinning, minimize_polytope_pinning};
use linepin::Error;

/// Result of a call. Anything but Ok leaves output pointers null.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinepinStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArg = 1,
    /// An input string was not valid UTF-8.
    Utf8 = 2,
    /// The document or an argument could not be parsed.
    Parse = 3,
    /// The input does not satisfy a precondition of the operation.
    Precondition = 4,
    /// Internal failure; should not happen.
    Internal = 5,
}

/// Opaque handle to a parsed document.
pub struct LinepinDoc {
    inner: Document,
}

fn status_of(e: &Error) -> LinepinStatus {
    match e {
        Error::Parse(_) => LinepinStatus::Parse,
        _ => LinepinStatus::Precondition,
    }
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> LinepinStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LinepinStatus::Ok
        }
        Err(_) => LinepinStatus::Internal,
    }
}

unsafe fn run_to_string(
    doc: *const LinepinDoc,
    out: *mut *mut c_char,
    f: impl FnOnce(&Document) -> linepin::Result<String>,
) -> LinepinStatus {
    if doc.is_null() || out.is_null() {
        return LinepinStatus::NullArg;
    }
    *out = std::ptr::null_mut();
    let d = &(*doc).inner;
    match catch_unwind(AssertUnwindSafe(|| f(d))) {
        Ok(Ok(s)) => write_out(out, s),
        Ok(Err(e)) => status_of(&e),
        Err(_) => LinepinStatus::Internal,
    }
}

fn one_family_only(doc: &Document) -> linepin::Result<()> {
    if !doc.constraints.is_empty() && !doc.polytopes.is_empty() {
        return Err(Error::Parse(
            "document has both constraints and polytopes; provide one".into(),
        ));
    }
    Ok(())
}

fn kept_json(kept: &[usize]) -> String {
    let inner: Vec<String> = kept.iter().map(|i| i.to_string()).collect();
    format!("{{\"kept\":[{}]}}", inner.join(","))
}

/// Parses a JSON document into a handle stored in `*out`.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn linepin_doc_parse(
    text: *const c_char,
    out: *mut *mut LinepinDoc,
) -> LinepinStatus {
    if text.is_null() || out.is_null() {
        return LinepinStatus::NullArg;
    }
    *out = std::ptr::null_mut();
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return LinepinStatus::Utf8,
    };
    match catch_unwind(|| Document::parse(s)) {
        Ok(Ok(doc)) => {
            *out = Box::into_raw(Box::new(LinepinDoc { inner: doc }));
            LinepinStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => LinepinStatus::Internal,
    }
}

/// Releases a document handle. Null is a no-op.
///
/// # Safety
/// `doc` must have come from [`linepin_doc_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn linepin_doc_free(doc: *mut LinepinDoc) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Decides pinning for the document's family and writes the verdict JSON
/// to `*out_json`.
///
/// # Safety
/// `doc` must be a live handle and `out_json` writable for one pointer.
#[no_mangle]
pub unsafe extern "C" fn linepin_check(
    doc: *const LinepinDoc,
    out_json: *mut *mut c_char,
) -> LinepinStatus {
    run_to_string(doc, out_json, |d| {
        one_family_only(d)?;
        if !d.polytopes.is_empty() {
            Ok(polytope_report_json(&decide_polytope_pinning(&d.polytope_family()?)?))
        } else {
            Ok(verdict_json(&decide_pinning(&d.constraint_family()?)?))
        }
    })
}

/// Reduces the document's family to an irreducible pinning subfamily and
/// writes {"kept":[...]} with the surviving indices.
///
/// # Safety
/// As for [`linepin_check`].
#[no_mangle]
pub unsafe extern "C" fn linepin_minimize(
    doc: *const LinepinDoc,
    out_json: *mut *mut c_char,
) -> LinepinStatus {
    run_to_string(doc, out_json, |d| {
        one_family_only(d)?;
        let kept = if !d.polytopes.is_empty() {
            minimize_polytope_pinning(&d.polytope_family()?)?
        } else {
            minimize_pinning(&d.constraint_family()?)?
        };
        Ok(kept_json(&kept))
    })
}

/// Names the minimal orthogonal pinning class of the document's constraint
/// family, as {"class":"..."}.
///
/// # Safety
/// As for [`linepin_check`].
#[no_mangle]
pub unsafe extern "C" fn linepin_classify(
    doc: *const LinepinDoc,
    out_json: *mut *mut c_char,
) -> LinepinStatus {
    run_to_string(doc, out_json, |d| {
        let class = classify_ortho_pinning(&d.constraint_family()?)?;
        Ok(format!("{{\"class\":\"{}\"}}", class.label()))
    })
}

/// Replaces each constraint by its orthogonal companion and writes the
/// resulting document JSON.
///
/// # Safety
/// As for [`linepin_check`].
#[no_mangle]
pub unsafe extern "C" fn linepin_orthogonalize(
    doc: *const LinepinDoc,
    out_json: *mut *mut c_char,
) -> LinepinStatus {
    run_to_string(doc, out_json, |d| {
        let family = orthogonalize_family(&d.constraint_family()?);
        Ok(Document::with_constraints(&family).to_json())
    })
}

/// Emits a named example family as document JSON. Pass a negative `n`
/// when the family takes no size parameter.
///
/// # Safety
/// `name` must point to a NUL-terminated string and `out_json` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn linepin_generate(
    name: *const c_char,
    n: c_int,
    out_json: *mut *mut c_char,
) -> LinepinStatus {
    if name.is_null() || out_json.is_null() {
        return LinepinStatus::NullArg;
    }
    *out_json = std::ptr::null_mut();
    let name = match CStr::from_ptr(name).to_str() {
        Ok(s) => s,
        Err(_) => return LinepinStatus::Utf8,
    };
    let n = if n < 0 { None } else { Some(n as usize) };
    match catch_unwind(|| generate(name, n)) {
        Ok(Ok(Generated::Constraints(family))) => {
            write_out(out_json, Document::with_constraints(&family).to_json())
        }
        Ok(Ok(Generated::Polytopes(bodies))) => {
            write_out(out_json, Document::with_polytopes(&bodies).to_json())
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => LinepinStatus::Internal,
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn linepin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn linepin_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}
