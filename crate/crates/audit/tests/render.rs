use std::collections::BTreeSet;
use std::path::Path;

use transaudit::render;
use transaudit_core::report::{build_report, diff, AuditOptions, AuditReport};
use transaudit_core::{
    Corpus, ElementaryCatalog, IngestFormat, Markers, SourceLanguage, SymbolSpec,
};

fn sample(file: &str, lang: SourceLanguage) -> AuditReport {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(file);
    let text = std::fs::read_to_string(path).unwrap();
    let format = IngestFormat::TokenizedLines {
        title_separator: Some("|".into()),
        markers: Markers::default(),
    };
    let corpus = Corpus::from_text(&text, lang, &format, file);
    let options = AuditOptions {
        raw_substring: true,
        ..AuditOptions::default()
    };
    build_report(
        &corpus,
        &SymbolSpec::default(),
        &ElementaryCatalog::default(),
        &options,
    )
}

fn reports() -> Vec<AuditReport> {
    vec![
        sample("sample_java.txt", SourceLanguage::Java),
        sample("sample_cpp.txt", SourceLanguage::Cpp),
        sample("sample_python.txt", SourceLanguage::Python),
    ]
}

fn json_integers(v: &serde_json::Value, out: &mut BTreeSet<i64>) {
    match v {
        serde_json::Value::Number(n) => {
            out.extend(n.as_i64());
        }
        serde_json::Value::Object(m) => m.values().for_each(|x| json_integers(x, out)),
        serde_json::Value::Array(a) => a.iter().for_each(|x| json_integers(x, out)),
        _ => {}
    }
}

#[test]
fn json_round_trips_and_is_stable() {
    for r in reports() {
        let text = render::json(&r);
        let back: AuditReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(render::json(&back), text);
        assert!(text.ends_with("}\n"));
    }
}

#[test]
fn csv_numbers_all_appear_in_json() {
    for r in reports() {
        let mut known = BTreeSet::new();
        json_integers(&serde_json::to_value(&r).unwrap(), &mut known);
        let text = render::csv(&render::report_rows(&r));
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(reader.headers().unwrap(), vec!["section", "key", "value"]);
        for record in reader.records() {
            let record = record.unwrap();
            let value = &record[2];
            // Means are printed as exact fractions of two JSON integers.
            for part in value.split('/') {
                if let Ok(n) = part.parse::<i64>() {
                    assert!(
                        known.contains(&n),
                        "{} {} = {n} is not in the JSON",
                        &record[0],
                        &record[1]
                    );
                }
            }
        }
    }
}

#[test]
fn csv_quotes_every_field() {
    let text = render::csv(&render::report_rows(&reports()[0]));
    for line in text.lines() {
        assert!(line.starts_with('"') && line.ends_with('"'), "{line}");
    }
    assert!(text.contains("\"count\",\";\",\"36\""));
}

#[test]
fn markdown_numbers_match_the_report() {
    let r = &reports()[0];
    let md = render::report_markdown(r);
    assert!(md.contains(&format!("| Programs | {} |", r.example_count)));
    assert!(md.contains(&format!("| ; | {} |", r.occurrence_table.get(";"))));
    assert!(md.contains(&format!("| for | {} |", r.occurrence_table.get("for"))));
    assert!(md.contains("## Violations\n\nNone."));
    let tiers = render::tier_markdown_doc(&r.tier_histogram);
    assert!(tiers.contains(&format!("| total | {} |", r.tier_histogram.total())));
}

#[test]
fn markdown_escapes_pipes_in_symbol_names() {
    use transaudit_core::TokenKind;
    let corpus = Corpus::from_text(
        "a || b || c",
        SourceLanguage::Java,
        &IngestFormat::PlainSource,
        "pipes",
    );
    let spec = SymbolSpec::single("||", &[TokenKind::Operator]);
    let r = build_report(
        &corpus,
        &spec,
        &ElementaryCatalog::default(),
        &AuditOptions::default(),
    );
    assert!(render::table_markdown(&r.occurrence_table).contains("| \\|\\| | 2 |"));
}

#[test]
fn empty_report_keeps_every_section() {
    let corpus = Corpus::from_text(
        "",
        SourceLanguage::Java,
        &IngestFormat::PlainSource,
        "empty",
    );
    let spec = SymbolSpec::default();
    let r = build_report(
        &corpus,
        &spec,
        &ElementaryCatalog::default(),
        &AuditOptions::default(),
    );
    let text = render::csv(&render::report_rows(&r));
    assert!(text.starts_with("\"section\",\"key\",\"value\"\n"));
    let counts = text.lines().filter(|l| l.starts_with("\"count\"")).count();
    assert_eq!(counts, spec.symbols.len());
    assert!(!text.contains("\"loc\",\"mean\""));
    assert!(render::report_markdown(&r).contains("mean n/a"));
}

#[test]
fn diff_renders_negated_against_swapped_inputs() {
    let (a, b) = (&reports()[0], &reports()[1]);
    let forward = diff(a, b).unwrap();
    let backward = diff(b, a).unwrap();
    assert_eq!(forward.negated(), backward);
    let rows = render::diff_rows(&forward);
    assert!(rows
        .iter()
        .any(|(s, k, v)| s == "meta" && k == "example_count" && v == "-5"));
}
