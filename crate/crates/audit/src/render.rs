//! JSON, CSV and Markdown output.
//!
//! JSON is the lossless form: keys are sorted and numbers are plain
//! integers, so the same report always renders to the same bytes. CSV and
//! Markdown are flattened views of the same values.

use std::fmt::Write as _;

use serde::Serialize;
use transaudit_core::report::{call_entries, AuditReport, DiffReport};
use transaudit_core::{OccurrenceTable, Tier, TierHistogram};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Markdown,
}

/// Pretty JSON with lexicographically sorted keys and a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    // Going through `Value` sorts every map, struct fields included.
    let value = serde_json::to_value(value).expect("report types always serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
    out.push('\n');
    out
}

type Row = (String, String, String);

fn row(section: &str, key: impl ToString, value: impl ToString) -> Row {
    (section.into(), key.to_string(), value.to_string())
}

/// Comma-separated, every field quoted, with a header row.
pub fn csv(rows: &[Row]) -> String {
    let mut writer = ::csv::WriterBuilder::new()
        .quote_style(::csv::QuoteStyle::Always)
        .from_writer(Vec::new());
    writer
        .write_record(["section", "key", "value"])
        .expect("in-memory write");
    for (s, k, v) in rows {
        writer.write_record([s, k, v]).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv of utf-8 is utf-8")
}

fn table_rows(section: &str, table: &OccurrenceTable, rows: &mut Vec<Row>) {
    for name in &table.order {
        rows.push(row(section, name, table.get(name)));
    }
}

fn tier_rows(h: &TierHistogram, rows: &mut Vec<Row>) {
    for tier in Tier::ALL {
        rows.push(row("tier", tier, h.get(tier)));
    }
}

pub fn report_rows(r: &AuditReport) -> Vec<Row> {
    let mut rows = vec![
        row("meta", "corpus_id", &r.corpus_id),
        row("meta", "language", r.language),
        row("meta", "example_count", r.example_count),
        row("meta", "physical_lines", r.physical_lines),
        row("meta", "skipped_blank_lines", r.skipped_blank_lines),
        row("meta", "catalog_fingerprint", &r.catalog_fingerprint),
        row(
            "meta",
            "symbol_spec_fingerprint",
            &r.symbol_spec_fingerprint,
        ),
    ];
    table_rows("count", &r.occurrence_table, &mut rows);
    if let Some(raw) = &r.raw_occurrence_table {
        table_rows("raw_count", raw, &mut rows);
    }
    rows.push(row("loc", "total", r.loc_stats.total));
    if let Some(mean) = r.loc_stats.mean {
        rows.push(row(
            "loc",
            "mean",
            format!("{}/{}", mean.numerator, mean.denominator),
        ));
    }
    tier_rows(&r.tier_histogram, &mut rows);
    for (kind, n) in call_entries(&r.call_histogram_total) {
        rows.push(row("call", kind, n));
    }
    for (tag, n) in &r.feature_counts {
        rows.push(row("feature", format!("{tag:?}"), n));
    }
    rows.push(row("casting", "high_confidence", r.casting.high_confidence));
    rows.push(row("casting", "low_confidence", r.casting.low_confidence));
    rows.push(row("class", "definition_count", r.class_definition_count));
    for flag in &r.absence_flags {
        rows.push(row("absence", &flag.symbol, flag.observed_count));
    }
    for (name, n) in &r.unresolved_callees {
        rows.push(row("unresolved", name, n));
    }
    rows.push(row("diagnostics", "count", r.diagnostics.len()));
    rows
}

pub fn table_csv_rows(t: &OccurrenceTable) -> Vec<Row> {
    let mut rows = vec![
        row("meta", "corpus_id", &t.corpus_id),
        row("meta", "mode", t.mode),
        row("meta", "example_count", t.example_count),
    ];
    table_rows("count", t, &mut rows);
    rows
}

pub fn tier_csv_rows(h: &TierHistogram) -> Vec<Row> {
    let mut rows = Vec::new();
    tier_rows(h, &mut rows);
    rows
}

pub fn diff_rows(d: &DiffReport) -> Vec<Row> {
    let mut rows = vec![
        row("meta", "left_id", &d.left_id),
        row("meta", "right_id", &d.right_id),
        row("meta", "example_count", d.example_count),
        row("loc", "total", d.loc_total),
        row("class", "definition_count", d.class_definition_count),
    ];
    for (section, map) in [
        ("count", &d.counts),
        ("tier", &d.tiers),
        ("call", &d.calls),
        ("feature", &d.features),
        ("absence", &d.absence),
    ] {
        rows.extend(map.iter().map(|(k, v)| row(section, k, v)));
    }
    rows
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

/// Symbols on the left, words on the right, `Programs` on top, in the same
/// shape as the published census.
fn occurrence_markdown(out: &mut String, t: &OccurrenceTable) {
    let is_word = |name: &str| name.chars().any(|c| c.is_alphanumeric() || c == '_');
    let mut symbols: Vec<(String, u64)> = vec![("Programs".into(), t.example_count)];
    symbols.extend(
        t.order
            .iter()
            .filter(|n| !is_word(n))
            .map(|n| (n.clone(), t.get(n))),
    );
    let words: Vec<(String, u64)> = t
        .order
        .iter()
        .filter(|n| is_word(n))
        .map(|n| (n.clone(), t.get(n)))
        .collect();
    out.push_str("| Symbol | Occurrences | | Reserved word | Occurrences |\n");
    out.push_str("|---|---:|---|---|---:|\n");
    for i in 0..symbols.len().max(words.len()) {
        let pair = |v: &[(String, u64)]| {
            v.get(i).map_or_else(
                || (String::new(), String::new()),
                |(n, c)| (cell(n), c.to_string()),
            )
        };
        let ((s, sc), (w, wc)) = (pair(&symbols), pair(&words));
        let _ = writeln!(out, "| {s} | {sc} | | {w} | {wc} |");
    }
}

fn tier_markdown(out: &mut String, h: &TierHistogram) {
    out.push_str("| Tier | Examples |\n|---|---:|\n");
    for tier in Tier::ALL {
        let _ = writeln!(out, "| {tier} | {} |", h.get(tier));
    }
    let _ = writeln!(out, "| total | {} |", h.total());
}

pub fn report_markdown(r: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Audit of `{}` ({})\n", r.corpus_id, r.language);
    out.push_str("## Violations\n\n");
    if r.has_violations() {
        for flag in r.violations() {
            let _ = writeln!(
                out,
                "- **`{}`** expected absent, found {}",
                flag.symbol, flag.observed_count
            );
        }
        if !r.class_locations.is_empty() {
            let lines: Vec<String> = r
                .class_locations
                .iter()
                .map(|c| c.line.to_string())
                .collect();
            let _ = writeln!(out, "- `class` lines: {}", lines.join(", "));
        }
    } else {
        out.push_str("None.\n");
    }
    let _ = writeln!(
        out,
        "\n{} examples from {} physical lines ({} blank).\n",
        r.example_count, r.physical_lines, r.skipped_blank_lines
    );
    let _ = writeln!(out, "## Occurrences ({})\n", r.occurrence_table.mode);
    occurrence_markdown(&mut out, &r.occurrence_table);
    if let Some(raw) = &r.raw_occurrence_table {
        let _ = writeln!(out, "\n## Occurrences ({})\n", raw.mode);
        occurrence_markdown(&mut out, raw);
    }
    out.push_str("\n## Lines of code\n\n");
    let mean = r.loc_stats.mean.map_or_else(
        || "n/a".to_string(),
        |m| format!("{} ({}/{})", m.to_decimal(1), m.numerator, m.denominator),
    );
    let _ = writeln!(out, "Total {}, mean {mean}.", r.loc_stats.total);
    out.push_str("\n## Tiers\n\n");
    tier_markdown(&mut out, &r.tier_histogram);
    out.push_str("\n## Call sites\n\n| Kind | Count |\n|---|---:|\n");
    for (kind, n) in call_entries(&r.call_histogram_total) {
        let _ = writeln!(out, "| {kind} | {n} |");
    }
    out.push_str("\n## Sophisticated features\n\n| Feature | Examples |\n|---|---:|\n");
    for (tag, n) in &r.feature_counts {
        let _ = writeln!(out, "| {tag:?} | {n} |");
    }
    let _ = writeln!(
        out,
        "\nCasting: {} high confidence, {} low confidence.",
        r.casting.high_confidence, r.casting.low_confidence
    );
    out.push_str("\n## Absence flags\n\n| Symbol | Expected absent | Observed | Violation |\n|---|---|---:|---|\n");
    for f in &r.absence_flags {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            cell(&f.symbol),
            f.expected_absent,
            f.observed_count,
            f.violation
        );
    }
    let _ = writeln!(out, "\nClass definitions: {}.", r.class_definition_count);
    out.push_str("\n## Cross calls for review\n\n");
    if r.user_cross_calls.is_empty() {
        out.push_str("None.\n");
    }
    for c in &r.user_cross_calls {
        let caller = c.caller.as_deref().unwrap_or("?");
        let _ = writeln!(
            out,
            "- example {} (line {}): `{caller}` calls `{}`",
            c.example_index, c.line, c.callee
        );
    }
    if !r.unresolved_callees.is_empty() {
        out.push_str("\n## Unresolved callees\n\n| Callee | Sites |\n|---|---:|\n");
        for (name, n) in &r.unresolved_callees {
            let _ = writeln!(out, "| {} | {n} |", cell(name));
        }
    }
    let _ = writeln!(
        out,
        "\n## Diagnostics\n\n{} diagnostics.",
        r.diagnostics.len()
    );
    for d in &r.diagnostics {
        let _ = writeln!(out, "- {d}");
    }
    let _ = writeln!(
        out,
        "\nCatalog `{}`, symbol spec `{}`.",
        r.catalog_fingerprint, r.symbol_spec_fingerprint
    );
    out
}

pub fn table_markdown(t: &OccurrenceTable) -> String {
    let mut out = format!("# Occurrences in `{}` ({})\n\n", t.corpus_id, t.mode);
    occurrence_markdown(&mut out, t);
    if t.examples_with_lex_errors > 0 {
        let _ = writeln!(
            out,
            "\n{} examples had lex errors.",
            t.examples_with_lex_errors
        );
    }
    out
}

pub fn tier_markdown_doc(h: &TierHistogram) -> String {
    let mut out = String::from("# Tiers\n\n");
    tier_markdown(&mut out, h);
    out
}

pub fn diff_markdown(d: &DiffReport) -> String {
    let mut out = format!("# Diff `{}` → `{}`\n\n", d.left_id, d.right_id);
    let _ = writeln!(out, "| Metric | Delta |\n|---|---:|");
    let _ = writeln!(out, "| examples | {} |", d.example_count);
    let _ = writeln!(out, "| loc total | {} |", d.loc_total);
    let _ = writeln!(out, "| class definitions | {} |", d.class_definition_count);
    for (section, map) in [
        ("count", &d.counts),
        ("tier", &d.tiers),
        ("call", &d.calls),
        ("feature", &d.features),
        ("absence", &d.absence),
    ] {
        for (k, v) in map {
            let _ = writeln!(out, "| {section} {} | {v} |", cell(k));
        }
    }
    out
}
