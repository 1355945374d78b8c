//! C ABI over `ctree`.
//!
//! Every fallible function returns a [`CtreeStatus`]; on failure the message
//! is available from [`ctree_last_error_message`] on the same thread.
//! Strings handed out by the library are freed with [`ctree_string_free`],
//! handles with their own `_free` function. Output pointers are set to null
//! before any work is done.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ctree::cli::{run_script, EXIT_PARSE};
use ctree::oracle::check_document;
use ctree::{format_prob, intervene, parse_unchecked, to_dot, validate_axioms, BeliefState, RandomVariable};
use num_traits::ToPrimitive;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtreeStatus {
    Ok = 0,
    ParseError = 1,
    AxiomFailure = 2,
    UpdateError = 3,
    CheckFailure = 4,
    InvalidArgument = 5,
    NullPointer = 6,
    Panic = 7,
}

/// A parsed document. Its space may violate the axioms; see
/// [`ctree_document_validate`].
pub struct CtreeDocument {
    inner: ctree::CtreeDocument,
}

/// Beliefs over one document's space after a sequence of updates.
pub struct CtreeBelief {
    doc: ctree::CtreeDocument,
    state: BeliefState,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CtreeStatus, String);

type Outcome = Result<(), Failure>;

fn fail<T>(status: CtreeStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "\\0")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Outcome) -> CtreeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CtreeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal panic: {msg}"));
            CtreeStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(CtreeStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(CtreeStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .map_or_else(|| fail(CtreeStatus::NullPointer, format!("{what} is null")), Ok)
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .map_or_else(|| fail(CtreeStatus::NullPointer, format!("{what} is null")), Ok)
}

unsafe fn clear<T>(out: *mut *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return fail(CtreeStatus::NullPointer, format!("{what} is null"));
    }
    *out = ptr::null_mut();
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "\\0"))
        .expect("nul bytes replaced")
        .into_raw()
}

fn require_axioms(doc: &ctree::CtreeDocument) -> Outcome {
    let report = validate_axioms(&doc.space);
    let first = report.failures().next().map(|(axiom, e)| format!("{axiom}: {e}"));
    match first {
        None => Ok(()),
        Some(msg) => fail(CtreeStatus::AxiomFailure, msg),
    }
}

fn variable<'d>(doc: &'d ctree::CtreeDocument, name: &str) -> Result<&'d RandomVariable, Failure> {
    doc.variable(name).map_or_else(
        || fail(CtreeStatus::InvalidArgument, format!("unknown variable `{name}`")),
        Ok,
    )
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ctree_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ctree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.ctree` text. Axiom violations are not errors here.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_parse(text: *const c_char, out: *mut *mut CtreeDocument) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let src = self::text(text, "text")?;
        let inner = parse_unchecked(src).or_else(|e| fail(CtreeStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(CtreeDocument { inner }));
        Ok(())
    })
}

/// # Safety
/// `doc` must come from [`ctree_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_free(doc: *mut CtreeDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Canonical text of the document.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_serialize(doc: *const CtreeDocument, out: *mut *mut c_char) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let doc = handle(doc, "doc")?;
        *out = to_c(doc.inner.to_text());
        Ok(())
    })
}

/// Checks the axioms. Returns `AXIOM_FAILURE` if any fails; the per-axiom
/// report is written to `report` either way when it is not null.
///
/// # Safety
/// `doc` must be a live handle; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_validate(doc: *const CtreeDocument, report: *mut *mut c_char) -> CtreeStatus {
    guard(|| {
        if !report.is_null() {
            *report = ptr::null_mut();
        }
        let doc = handle(doc, "doc")?;
        let r = validate_axioms(&doc.inner.space);
        if !report.is_null() {
            *report = to_c(r.to_string());
        }
        require_axioms(&doc.inner)
    })
}

/// DOT rendering. With `intervention` set to `VAR=VALUE` the intervention
/// on that value is drawn and its event highlighted; pass null for a plain
/// tree.
///
/// # Safety
/// `doc` must be a live handle; `intervention` may be null; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_to_dot(
    doc: *const CtreeDocument,
    intervention: *const c_char,
    out: *mut *mut c_char,
) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let doc = &handle(doc, "doc")?.inner;
        require_axioms(doc)?;
        if intervention.is_null() {
            *out = to_c(to_dot(&doc.space, None, None));
            return Ok(());
        }
        let spec = text(intervention, "intervention")?;
        let Some((v, x)) = spec.split_once('=') else {
            return fail(
                CtreeStatus::InvalidArgument,
                format!("expected VAR=VALUE, found `{spec}`"),
            );
        };
        let a = variable(doc, v)?
            .preimage(&doc.space, x)
            .or_else(|e| fail(CtreeStatus::InvalidArgument, e.to_string()))?;
        let r = intervene(&doc.space, &a).or_else(|e| fail(CtreeStatus::UpdateError, e.to_string()))?;
        *out = to_c(to_dot(&doc.space, Some(&r), Some(&a)));
        Ok(())
    })
}

/// Runs the brute-force checks. Returns `CHECK_FAILURE` if any fails; the
/// report lines go to `report` when it is not null.
///
/// # Safety
/// `doc` must be a live handle; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_check(doc: *const CtreeDocument, report: *mut *mut c_char) -> CtreeStatus {
    guard(|| {
        if !report.is_null() {
            *report = ptr::null_mut();
        }
        let doc = &handle(doc, "doc")?.inner;
        require_axioms(doc)?;
        let reports = check_document(doc);
        if !report.is_null() {
            *report = to_c(reports.iter().map(|r| format!("{r}\n")).collect());
        }
        match reports.iter().find(|r| !r.passed()) {
            None => Ok(()),
            Some(r) => fail(CtreeStatus::CheckFailure, r.to_string()),
        }
    })
}

/// Runs a query script (the same steps as `ctree query`) and returns what
/// it prints.
///
/// # Safety
/// `doc` must be a live handle; `script` a nul-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_document_query(
    doc: *const CtreeDocument,
    script: *const c_char,
    out: *mut *mut c_char,
) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let doc = &handle(doc, "doc")?.inner;
        let script = text(script, "script")?;
        require_axioms(doc)?;
        match run_script(doc, script) {
            Ok(s) => {
                *out = to_c(s);
                Ok(())
            }
            Err(e) if e.code == EXIT_PARSE => fail(CtreeStatus::InvalidArgument, e.message),
            Err(e) => fail(CtreeStatus::UpdateError, e.message),
        }
    })
}

/// Prior beliefs over the document's space. The belief keeps its own copy
/// of the document.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_new(doc: *const CtreeDocument, out: *mut *mut CtreeBelief) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let doc = &handle(doc, "doc")?.inner;
        require_axioms(doc)?;
        *out = Box::into_raw(Box::new(CtreeBelief {
            doc: doc.clone(),
            state: BeliefState::new(doc.space.clone()),
        }));
        Ok(())
    })
}

/// # Safety
/// `belief` must come from [`ctree_belief_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_free(belief: *mut CtreeBelief) {
    if !belief.is_null() {
        drop(Box::from_raw(belief));
    }
}

unsafe fn update(belief: *mut CtreeBelief, var: *const c_char, value: *const c_char, act: bool) -> CtreeStatus {
    guard(|| {
        let b = handle_mut(belief, "belief")?;
        let (v, x) = (text(var, "variable")?, text(value, "value")?);
        let rv = variable(&b.doc, v)?;
        if !rv.codomain().iter().any(|c| c == x) {
            return fail(
                CtreeStatus::InvalidArgument,
                format!("variable `{v}` has no value `{x}`"),
            );
        }
        let next = if act {
            b.state.act(rv, x)
        } else {
            b.state.observe(rv, x)
        };
        b.state = next.or_else(|e| fail(CtreeStatus::UpdateError, e.to_string()))?;
        Ok(())
    })
}

/// Conditions on `var = value`. On failure the belief is unchanged.
///
/// # Safety
/// `belief` must be a live handle; `var` and `value` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_observe(
    belief: *mut CtreeBelief,
    var: *const c_char,
    value: *const c_char,
) -> CtreeStatus {
    update(belief, var, value, false)
}

/// Intervenes to make `var = value` certain. On failure the belief is
/// unchanged.
///
/// # Safety
/// `belief` must be a live handle; `var` and `value` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_act(
    belief: *mut CtreeBelief,
    var: *const c_char,
    value: *const c_char,
) -> CtreeStatus {
    update(belief, var, value, true)
}

/// Posterior of `var` as `var value num/den` lines.
///
/// # Safety
/// `belief` must be a live handle; `var` a nul-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_posterior(
    belief: *const CtreeBelief,
    var: *const c_char,
    out: *mut *mut c_char,
) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        let b = handle(belief, "belief")?;
        let rv = variable(&b.doc, text(var, "variable")?)?;
        let d = b
            .state
            .posterior(rv)
            .or_else(|e| fail(CtreeStatus::UpdateError, e.to_string()))?;
        *out = to_c(d.to_string());
        Ok(())
    })
}

unsafe fn probability(b: *const CtreeBelief, var: *const c_char, value: *const c_char) -> Result<ctree::Prob, Failure> {
    let b = handle(b, "belief")?;
    let (v, x) = (text(var, "variable")?, text(value, "value")?);
    let rv = variable(&b.doc, v)?;
    let d = b
        .state
        .posterior(rv)
        .or_else(|e| fail(CtreeStatus::UpdateError, e.to_string()))?;
    d.get(x).cloned().map_or_else(
        || {
            fail(
                CtreeStatus::InvalidArgument,
                format!("variable `{v}` has no value `{x}`"),
            )
        },
        Ok,
    )
}

/// Exact posterior probability of `var = value` as `num/den`.
///
/// # Safety
/// `belief` must be a live handle; `var` and `value` nul-terminated strings;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_probability(
    belief: *const CtreeBelief,
    var: *const c_char,
    value: *const c_char,
    out: *mut *mut c_char,
) -> CtreeStatus {
    guard(|| {
        clear(out, "out")?;
        *out = to_c(format_prob(&probability(belief, var, value)?));
        Ok(())
    })
}

/// Posterior probability of `var = value`, rounded to a double.
///
/// # Safety
/// `belief` must be a live handle; `var` and `value` nul-terminated strings;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctree_belief_probability_f64(
    belief: *const CtreeBelief,
    var: *const c_char,
    value: *const c_char,
    out: *mut f64,
) -> CtreeStatus {
    guard(|| {
        if out.is_null() {
            return fail(CtreeStatus::NullPointer, "out is null");
        }
        *out = f64::NAN;
        let p = probability(belief, var, value)?;
        *out = p.to_f64().unwrap_or(f64::NAN);
        Ok(())
    })
}
