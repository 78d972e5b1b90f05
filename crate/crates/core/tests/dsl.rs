use proptest::prelude::*;
use unireal::testing::Gen;
use unireal::{parse_document, parse_function, render_document, Error, Span};

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let doc = Gen::new(seed).document();
        let text = render_document(&doc);
        let back = parse_document(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render_document(&back), text);
    }
}

fn span_of(src: &str) -> Span {
    let e = parse_document(src).expect_err(src);
    assert!(e.is_input_error(), "{e:?}");
    e.span().unwrap_or_else(|| panic!("no span for {e:?}"))
}

#[test]
fn malformed_corpus_reports_spans() {
    let cases: &[(&str, (usize, usize))] = &[
        ("function f\npiece (0, 2): x\npiece (1, 3): 1\n", (3, 1)),
        ("function f\npiece (-inf, 0]: x\npiece [0, 1): 2\n", (3, 1)),
        ("function f\npiece [-inf, 0): x\n", (2, 7)),
        ("function f\npiece (0, +inf]: 1\n", (2, 7)),
        ("function f\npiece { 0, 1): 1\n", (2, 7)),
        ("function f\npiece (0, 1: 1\n", (2, 7)),
        ("set a\ninterval [1, 0]\n", (2, 10)),
        ("set a\ninterval (0, 1}\n", (2, 10)),
        ("function f\npoint 0: bogus\n", (2, 10)),
    ];
    for (src, (line, _)) in cases {
        let s = span_of(src);
        assert_eq!(s.line, *line, "{src:?} -> {s:?}");
    }
}

#[test]
fn overlap_and_infinite_endpoint_spans_are_exact() {
    assert_eq!(span_of("function f\npiece (0, 2): x\npiece (1, 3): 1\n"), Span { line: 3, column: 1 });
    let e = parse_function("function f\npiece [-inf, 0): x\n").unwrap_err();
    assert!(matches!(e, Error::Semantic { .. }));
}
