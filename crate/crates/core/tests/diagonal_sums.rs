use transaudit_core::features::{
    classify_calls, detect_features, extract_functions, CallHistogram, Tier,
};
use transaudit_core::lex::{lex, normalize_stream, reconstruct, LexOptions, TokenKind};
use transaudit_core::metrics::loc_proxy;
use transaudit_core::{Corpus, ElementaryCatalog, IngestFormat, SourceLanguage};

const JAVA: &str = include_str!("fixtures/diagonal_sums.java");
const CPP: &str = include_str!("fixtures/diagonal_sums.cpp");
const PYTHON: &str = include_str!("fixtures/diagonal_sums.py");

fn plain(source: &str, lang: SourceLanguage) -> Corpus {
    Corpus::from_text(source, lang, &IngestFormat::PlainSource, "diagonal_sums")
}

/// Lines `from..=to` (1-based) of a listing.
fn lines(source: &str, from: usize, to: usize) -> String {
    source
        .lines()
        .skip(from - 1)
        .take(to - from + 1)
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn listings_round_trip() {
    for (src, lang) in [
        (JAVA, SourceLanguage::Java),
        (CPP, SourceLanguage::Cpp),
        (PYTHON, SourceLanguage::Python),
    ] {
        let lexed = lex(src, lang, LexOptions::default());
        assert!(reconstruct(&lexed.tokens, src), "{lang}");
        assert!(lexed.errors.is_empty(), "{lang}: {:?}", lexed.errors);
    }
}

#[test]
fn java_and_cpp_bodies_are_identical() {
    let java = lex(
        &lines(JAVA, 2, 7),
        SourceLanguage::Java,
        LexOptions::default(),
    );
    let cpp = lex(
        &lines(CPP, 2, 7),
        SourceLanguage::Cpp,
        LexOptions::default(),
    );
    assert_eq!(
        normalize_stream(&java.tokens),
        normalize_stream(&cpp.tokens)
    );
    // Hand count per line: 9, 15, 15, 16, 24, 1.
    assert_eq!(java.tokens.len(), 80);
}

#[test]
fn headers_and_output_differ() {
    let java = lex(
        &lines(JAVA, 1, 1),
        SourceLanguage::Java,
        LexOptions::default(),
    );
    let cpp = lex(
        &lines(CPP, 1, 1),
        SourceLanguage::Cpp,
        LexOptions::default(),
    );
    assert_ne!(
        normalize_stream(&java.tokens),
        normalize_stream(&cpp.tokens)
    );
}

#[test]
fn java_listing_is_elementary_with_two_library_calls() {
    let corpus = plain(JAVA, SourceLanguage::Java);
    let example = &corpus.examples[0];
    let catalog = ElementaryCatalog::default();
    let profile = detect_features(example, &catalog);
    assert_eq!(profile.tier, Tier::Elementary, "{:?}", profile.evidence);
    assert!(profile.elementary_only);
    let defs = extract_functions(example).defs;
    assert_eq!(defs.len(), 1);
    assert_eq!(defs[0].name, "printDiagonalSums");
    assert_eq!(defs[0].parameter_count, 2);
    assert_eq!(
        classify_calls(example, &defs, &catalog),
        CallHistogram {
            library: 2,
            ..CallHistogram::default()
        }
    );
}

#[test]
fn cpp_and_python_listings_are_elementary() {
    let catalog = ElementaryCatalog::default();
    for (src, lang) in [(CPP, SourceLanguage::Cpp), (PYTHON, SourceLanguage::Python)] {
        let corpus = plain(src, lang);
        let profile = detect_features(&corpus.examples[0], &catalog);
        assert_eq!(
            profile.tier,
            Tier::Elementary,
            "{lang}: {:?}",
            profile.evidence
        );
        assert_eq!(
            profile.call_histogram.self_recursive + profile.call_histogram.user_cross,
            0
        );
    }
}

#[test]
fn semicolon_proxy_matches_hand_count() {
    // Hand count per line: 1, 2, 2, 1, 1, then one per output statement.
    assert_eq!(loc_proxy(&plain(JAVA, SourceLanguage::Java).examples[0]), 9);
    assert_eq!(loc_proxy(&plain(CPP, SourceLanguage::Cpp).examples[0]), 9);
    assert_eq!(JAVA.matches(';').count(), 9);
}

#[test]
fn python_proxy_counts_line_breaks() {
    let corpus = plain(PYTHON, SourceLanguage::Python);
    assert_eq!(
        loc_proxy(&corpus.examples[0]),
        PYTHON.matches('\n').count() as u64 - 1
    );
    let lexed = lex(PYTHON, SourceLanguage::Python, LexOptions::default());
    let newlines = lexed
        .tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Newline)
        .count();
    assert_eq!(newlines, 11);
}
