use ctree::oracle::{check_parse, mutate, random_document, seeded, GenParams};
use ctree::{corpus, parse};
use proptest::prelude::*;

#[test]
fn corpus_round_trips() {
    for (name, text) in corpus::ALL {
        let doc = corpus::load(text);
        let canonical = doc.to_text();
        let again = parse(&canonical).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(again, doc, "{name}");
        assert_eq!(again.to_text(), canonical, "{name}");
    }
}

#[test]
fn random_documents_round_trip() {
    let mut rng = seeded(7);
    let params = GenParams::default();
    for i in 0..200 {
        let doc = random_document(&mut rng, &params);
        let text = doc.to_text();
        let again = parse(&text).unwrap_or_else(|e| panic!("document {i}: {e}\n{text}"));
        assert_eq!(again, doc, "document {i}");
    }
}

#[test]
fn mutated_corpus_is_handled() {
    let mut rng = seeded(11);
    for round in 0..1000 {
        let (name, text) = corpus::ALL[round % corpus::ALL.len()];
        let mut t = text.to_string();
        for _ in 0..1 + round % 3 {
            t = mutate(&mut rng, &t);
        }
        check_parse(&t).unwrap_or_else(|e| panic!("{name} mutation {round}: {e}\n{t}"));
    }
}

#[test]
fn error_positions() {
    let e = parse("ctree v1\noutcome a\nroot r\nleaf r outcome=a\nedge r -> q p=1\n").unwrap_err();
    assert_eq!((e.line, e.column), (5, 11));
    let sums = "ctree v1\noutcome a\noutcome b\nroot r\nleaf x outcome=a\nleaf y outcome=b\nedge r -> x p=1/2\nedge r -> y p=1/3\n";
    let e = parse(sums).unwrap_err();
    assert_eq!((e.line, e.column), (7, 6));
    assert!(e.to_string().contains("sum to 5/6"), "{e}");
    assert!(ctree::parse_unchecked(sums).is_ok());
    let e = parse("ctree v2\n").unwrap_err();
    assert_eq!(e.line, 1);
    let e = parse("").unwrap_err();
    assert_eq!(e.line, 1);
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,200}") {
        prop_assert!(check_parse(&text).is_ok());
    }

    #[test]
    fn header_plus_noise_never_panics(body in "[a-z0-9 =/{},()#>\n-]{0,200}") {
        let text = format!("ctree v1\n{body}");
        if let Err(e) = check_parse(&text) {
            return Err(TestCaseError::fail(e));
        }
    }
}
