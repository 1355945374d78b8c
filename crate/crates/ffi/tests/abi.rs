use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ctree_ffi::*;

const URN: &str = include_str!("../../core/corpus/urn.ctree");
const BAROMETER: &str = include_str!("../../core/corpus/barometer.ctree");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ctree_string_free(s);
    out
}

fn last_error() -> String {
    let p = ctree_last_error_message();
    assert!(!p.is_null(), "no error message");
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn parse(text: &str) -> *mut CtreeDocument {
    let mut doc = ptr::null_mut();
    assert_eq!(ctree_document_parse(c(text).as_ptr(), &mut doc), CtreeStatus::Ok);
    doc
}

#[test]
fn parse_serialize_round_trip() {
    unsafe {
        let doc = parse(URN);
        let mut text = ptr::null_mut();
        assert_eq!(ctree_document_serialize(doc, &mut text), CtreeStatus::Ok);
        let text = take(text);
        assert!(text.starts_with("ctree v1\n"));
        let again = parse(&text);
        let mut text2 = ptr::null_mut();
        assert_eq!(ctree_document_serialize(again, &mut text2), CtreeStatus::Ok);
        assert_eq!(take(text2), text);
        ctree_document_free(doc);
        ctree_document_free(again);
    }
}

#[test]
fn parse_errors_carry_positions() {
    unsafe {
        let mut doc = ptr::dangling_mut::<CtreeDocument>();
        let status = ctree_document_parse(c("ctree v1\noutcome a\nroot r\nleaf r outcome=(a\n").as_ptr(), &mut doc);
        assert_eq!(status, CtreeStatus::ParseError);
        assert!(doc.is_null());
        assert!(last_error().starts_with("line 4, column 16"), "{}", last_error());
    }
}

#[test]
fn validate_reports_axiom_failures() {
    unsafe {
        let doc = parse("ctree v1\noutcome a\noutcome b\nroot r\nleaf x outcome=a\nleaf y outcome=b\nedge r -> x p=1/2\nedge r -> y p=1/3\n");
        let mut report = ptr::null_mut();
        assert_eq!(ctree_document_validate(doc, &mut report), CtreeStatus::AxiomFailure);
        assert!(take(report).contains("FAIL     C3"));
        assert!(last_error().contains("sum to 5/6"));
        let mut belief = ptr::null_mut();
        assert_eq!(ctree_belief_new(doc, &mut belief), CtreeStatus::AxiomFailure);
        assert!(belief.is_null());
        ctree_document_free(doc);

        let doc = parse(URN);
        assert_eq!(ctree_document_validate(doc, ptr::null_mut()), CtreeStatus::Ok);
        assert!(ctree_last_error_message().is_null());
        ctree_document_free(doc);
    }
}

#[test]
fn beliefs() {
    unsafe {
        let doc = parse(URN);
        let mut b = ptr::null_mut();
        assert_eq!(ctree_belief_new(doc, &mut b), CtreeStatus::Ok);
        // The belief owns a copy; the document can go first.
        ctree_document_free(doc);
        let (pick, swap) = (c("Pick"), c("Swap"));
        assert_eq!(ctree_belief_act(b, pick.as_ptr(), c("left").as_ptr()), CtreeStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(
            ctree_belief_probability(b, swap.as_ptr(), c("yes").as_ptr(), &mut p),
            CtreeStatus::Ok
        );
        assert_eq!(take(p), "1/2");
        assert_eq!(
            ctree_belief_observe(b, c("Colour").as_ptr(), c("black").as_ptr()),
            CtreeStatus::Ok
        );
        let mut x = 0.0;
        assert_eq!(
            ctree_belief_probability_f64(b, swap.as_ptr(), c("yes").as_ptr(), &mut x),
            CtreeStatus::Ok
        );
        assert_eq!(x, 0.25);
        let mut post = ptr::null_mut();
        assert_eq!(ctree_belief_posterior(b, swap.as_ptr(), &mut post), CtreeStatus::Ok);
        assert_eq!(take(post), "Swap no 3/4\nSwap yes 1/4\n");

        // Failed updates leave the belief alone.
        assert_eq!(
            ctree_belief_observe(b, pick.as_ptr(), c("right").as_ptr()),
            CtreeStatus::UpdateError
        );
        assert!(last_error().contains("probability zero"), "{}", last_error());
        assert_eq!(
            ctree_belief_observe(b, pick.as_ptr(), c("up").as_ptr()),
            CtreeStatus::InvalidArgument
        );
        assert_eq!(
            ctree_belief_act(b, c("Nope").as_ptr(), c("x").as_ptr()),
            CtreeStatus::InvalidArgument
        );
        assert!(last_error().contains("unknown variable `Nope`"));
        assert_eq!(
            ctree_belief_probability_f64(b, swap.as_ptr(), c("yes").as_ptr(), &mut x),
            CtreeStatus::Ok
        );
        assert_eq!(x, 0.25);
        ctree_belief_free(b);
    }
}

#[test]
fn query_dot_and_check() {
    unsafe {
        let doc = parse(BAROMETER);
        let mut out = ptr::null_mut();
        let script = c("act B=low; observe W=rainy; posterior H");
        assert_eq!(ctree_document_query(doc, script.as_ptr(), &mut out), CtreeStatus::Ok);
        assert_eq!(take(out), "H 1 2/3\nH 2 1/3\n");
        assert_eq!(
            ctree_document_query(doc, c("jump").as_ptr(), &mut out),
            CtreeStatus::InvalidArgument
        );
        assert!(out.is_null());

        assert_eq!(
            ctree_document_to_dot(doc, c("B=low").as_ptr(), &mut out),
            CtreeStatus::Ok
        );
        assert_eq!(take(out).matches("dashed").count(), 3);
        assert_eq!(ctree_document_to_dot(doc, ptr::null(), &mut out), CtreeStatus::Ok);
        assert!(!take(out).contains("dashed"));
        assert_eq!(
            ctree_document_to_dot(doc, c("B").as_ptr(), &mut out),
            CtreeStatus::InvalidArgument
        );

        let mut report = ptr::null_mut();
        assert_eq!(ctree_document_check(doc, &mut report), CtreeStatus::Ok);
        assert!(take(report).starts_with("pass representation theorem"));
        ctree_document_free(doc);
    }
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(ctree_document_parse(ptr::null(), &mut doc), CtreeStatus::NullPointer);
        assert_eq!(last_error(), "text is null");
        assert_eq!(
            ctree_document_parse(c("ctree v1").as_ptr(), ptr::null_mut()),
            CtreeStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            ctree_document_parse(bad.as_ptr().cast(), &mut doc),
            CtreeStatus::InvalidArgument
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            ctree_document_serialize(ptr::null(), &mut out),
            CtreeStatus::NullPointer
        );
        assert_eq!(
            ctree_belief_act(ptr::null_mut(), c("a").as_ptr(), c("b").as_ptr()),
            CtreeStatus::NullPointer
        );
        ctree_document_free(ptr::null_mut());
        ctree_belief_free(ptr::null_mut());
        ctree_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(ctree_document_parse(c("").as_ptr(), &mut doc), CtreeStatus::ParseError);
        std::thread::spawn(|| assert!(ctree_last_error_message().is_null()))
            .join()
            .unwrap();
        assert!(last_error().contains("header"));
    }
}
