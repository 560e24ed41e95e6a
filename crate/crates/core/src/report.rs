//! Corpus-level audit reports and report diffs.
//!
//! Analysis is split in two so callers can parallelize: [`analyze_example`]
//! is pure per example, and [`assemble`] folds the per-example results in
//! corpus order. [`build_report`] does both sequentially.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Example};
use crate::features::{
    class_locations, classify_call_sites, detect_in_tokens, extract_from_tokens, strip_comments,
    CallHistogram, CallSiteKind, ClassLocation, Confidence, ElementaryCatalog, FeatureProfile,
    FeatureTag, Tier, TierHistogram,
};
use crate::language::SourceLanguage;
use crate::lex::{lex, LexOptions, TokenKind};
use crate::metrics::{
    lex_diagnostic, loc_from_tokens, CountMode, LocStats, OccurrenceTable, SymbolSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOptions {
    /// Also count raw substrings alongside the token-aware table.
    pub raw_substring: bool,
    /// Reserved words expected to be absent; each becomes an absence flag.
    pub expected_absent: Vec<String>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            raw_substring: false,
            expected_absent: ["class", "interface", "abstract", "extends", "implements"]
                .map(String::from)
                .to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCall {
    pub example_index: usize,
    pub line: usize,
    pub caller: Option<String>,
    pub callee: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsenceFlag {
    pub symbol: String,
    pub expected_absent: bool,
    pub observed_count: u64,
    pub violation: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CastingCounts {
    pub high_confidence: u64,
    pub low_confidence: u64,
}

/// Everything learned from one example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleAnalysis {
    pub counts: Vec<u64>,
    pub raw_counts: Option<Vec<u64>>,
    pub loc: u64,
    pub profile: FeatureProfile,
    pub cross_calls: Vec<CrossCall>,
    pub unresolved: Vec<String>,
    pub class_locations: Vec<ClassLocation>,
    /// Keyword-token counts for each expected-absent word, in option order.
    pub absent_counts: Vec<u64>,
    pub diagnostics: Vec<String>,
    pub lex_errors: bool,
}

pub fn analyze_example(
    example: &Example,
    spec: &SymbolSpec,
    catalog: &ElementaryCatalog,
    options: &AuditOptions,
) -> ExampleAnalysis {
    let lexed = lex(&example.source, example.language, LexOptions::default());
    let mut diagnostics = Vec::new();
    if !lexed.errors.is_empty() {
        diagnostics.push(lex_diagnostic(example, &lexed.errors));
    }
    let counts = spec.count_tokens(&lexed.tokens);
    let raw_counts = options
        .raw_substring
        .then(|| spec.count_raw(&example.source));
    let loc = loc_from_tokens(example.language, &example.source, &lexed.tokens);
    let classes: Vec<ClassLocation> = class_locations(example, &lexed.tokens).collect();
    let absent_counts = options
        .expected_absent
        .iter()
        .map(|w| {
            lexed
                .tokens
                .iter()
                .filter(|t| t.is(TokenKind::Keyword, w))
                .count() as u64
        })
        .collect();

    let code = strip_comments(lexed.tokens);
    let extraction = extract_from_tokens(&code, example.language);
    for d in &extraction.diagnostics {
        diagnostics.push(format!(
            "example {} (line {}): {d}",
            example.index, example.line
        ));
    }
    let sites = classify_call_sites(&code, &extraction.defs, catalog);
    let profile = detect_in_tokens(
        example.index,
        example.language,
        &code,
        &extraction.defs,
        &sites,
        catalog,
    );
    let cross_calls = sites
        .iter()
        .filter(|s| s.kind == CallSiteKind::UserCross)
        .map(|s| CrossCall {
            example_index: example.index,
            line: example.line + s.line as usize - 1,
            caller: s.caller.clone(),
            callee: s.callee.clone(),
        })
        .collect();
    let unresolved = sites
        .iter()
        .filter(|s| s.kind == CallSiteKind::Unresolved)
        .map(|s| s.callee.clone())
        .collect();
    ExampleAnalysis {
        counts,
        raw_counts,
        loc,
        profile,
        cross_calls,
        unresolved,
        class_locations: classes,
        absent_counts,
        lex_errors: !lexed.errors.is_empty(),
        diagnostics,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub corpus_id: String,
    pub language: SourceLanguage,
    pub example_count: u64,
    pub physical_lines: u64,
    pub skipped_blank_lines: u64,
    pub occurrence_table: OccurrenceTable,
    pub raw_occurrence_table: Option<OccurrenceTable>,
    pub loc_stats: LocStats,
    pub tier_histogram: TierHistogram,
    /// Number of examples showing each sophisticated feature.
    pub feature_counts: BTreeMap<FeatureTag, u64>,
    pub casting: CastingCounts,
    pub call_histogram_total: CallHistogram,
    /// Calls from one user-defined function to another, for manual review.
    pub user_cross_calls: Vec<CrossCall>,
    pub unresolved_callees: BTreeMap<String, u64>,
    pub class_definition_count: u64,
    pub class_locations: Vec<ClassLocation>,
    pub absence_flags: Vec<AbsenceFlag>,
    pub catalog: ElementaryCatalog,
    pub catalog_fingerprint: String,
    pub symbol_spec_fingerprint: String,
    pub diagnostics: Vec<String>,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &AbsenceFlag> {
        self.absence_flags.iter().filter(|f| f.violation)
    }

    pub fn has_violations(&self) -> bool {
        self.violations().next().is_some()
    }

    /// Numeric sum of two reports over the same spec and catalog, as if the
    /// right corpus had been appended to the left one.
    pub fn merge(&self, other: &AuditReport) -> AuditReport {
        let mut out = self.clone();
        out.example_count += other.example_count;
        out.physical_lines += other.physical_lines;
        out.skipped_blank_lines += other.skipped_blank_lines;
        out.occurrence_table.merge(&other.occurrence_table);
        if let (Some(a), Some(b)) = (&mut out.raw_occurrence_table, &other.raw_occurrence_table) {
            a.merge(b);
        }
        out.loc_stats = self.loc_stats.merge(&other.loc_stats);
        out.tier_histogram.merge(&other.tier_histogram);
        for (tag, n) in &other.feature_counts {
            *out.feature_counts.entry(*tag).or_insert(0) += n;
        }
        out.casting.high_confidence += other.casting.high_confidence;
        out.casting.low_confidence += other.casting.low_confidence;
        out.call_histogram_total.merge(&other.call_histogram_total);
        let shift = self.example_count as usize;
        let line_shift = self.physical_lines as usize;
        out.user_cross_calls
            .extend(other.user_cross_calls.iter().map(|c| CrossCall {
                example_index: c.example_index + shift,
                line: c.line + line_shift,
                ..c.clone()
            }));
        for (name, n) in &other.unresolved_callees {
            *out.unresolved_callees.entry(name.clone()).or_insert(0) += n;
        }
        out.class_definition_count += other.class_definition_count;
        out.class_locations
            .extend(other.class_locations.iter().map(|c| ClassLocation {
                example_index: c.example_index + shift,
                line: c.line + line_shift,
            }));
        for flag in &mut out.absence_flags {
            if let Some(o) = other.absence_flags.iter().find(|f| f.symbol == flag.symbol) {
                flag.observed_count += o.observed_count;
                flag.violation = flag.expected_absent && flag.observed_count > 0;
            }
        }
        out.diagnostics.extend(other.diagnostics.iter().cloned());
        out
    }
}

/// Fold per-example analyses (in corpus order) into a report.
pub fn assemble(
    corpus: &Corpus,
    spec: &SymbolSpec,
    catalog: &ElementaryCatalog,
    options: &AuditOptions,
    analyses: &[ExampleAnalysis],
) -> AuditReport {
    let id = &corpus.origin.id;
    let mut table = OccurrenceTable::zero(id, spec, CountMode::TokenAware);
    let mut raw = options
        .raw_substring
        .then(|| OccurrenceTable::zero(id, spec, CountMode::RawSubstring));
    let mut tiers = TierHistogram::default();
    let mut feature_counts: BTreeMap<FeatureTag, u64> =
        FeatureTag::ALL.iter().map(|t| (*t, 0)).collect();
    let mut casting = CastingCounts::default();
    let mut calls = CallHistogram::default();
    let mut cross = Vec::new();
    let mut unresolved = BTreeMap::new();
    let mut classes = Vec::new();
    let mut absent = alloc::vec![0u64; options.expected_absent.len()];
    let mut diagnostics = corpus.diagnostics.clone();
    for a in analyses {
        table.add_example(&a.counts);
        if a.lex_errors {
            table.examples_with_lex_errors += 1;
        }
        if let (Some(raw), Some(counts)) = (&mut raw, &a.raw_counts) {
            raw.add_example(counts);
        }
        tiers.add(a.profile.tier);
        for tag in &a.profile.sophisticated_features {
            *feature_counts.entry(*tag).or_insert(0) += 1;
        }
        match a.profile.casting_confidence {
            Some(Confidence::High) => casting.high_confidence += 1,
            Some(Confidence::Low) => casting.low_confidence += 1,
            None => {}
        }
        calls.merge(&a.profile.call_histogram);
        cross.extend(a.cross_calls.iter().cloned());
        for name in &a.unresolved {
            *unresolved.entry(name.clone()).or_insert(0) += 1;
        }
        classes.extend(a.class_locations.iter().cloned());
        for (slot, n) in absent.iter_mut().zip(&a.absent_counts) {
            *slot += n;
        }
        diagnostics.extend(a.diagnostics.iter().cloned());
    }
    table.diagnostics = analyses
        .iter()
        .filter(|a| a.lex_errors)
        .filter_map(|a| a.diagnostics.first().cloned())
        .collect();
    for (open, close, a, b) in table.bracket_imbalances() {
        diagnostics.push(format!("bracket imbalance: `{open}` {a} vs `{close}` {b}"));
    }
    let class_definition_count = classes.len() as u64;
    let absence_flags = options
        .expected_absent
        .iter()
        .zip(absent)
        .map(|(symbol, observed)| {
            let observed_count = if symbol == "class" {
                class_definition_count
            } else {
                observed
            };
            AbsenceFlag {
                symbol: symbol.clone(),
                expected_absent: true,
                observed_count,
                violation: observed_count > 0,
            }
        })
        .collect();
    AuditReport {
        corpus_id: id.clone(),
        language: corpus.language,
        example_count: analyses.len() as u64,
        physical_lines: corpus.origin.physical_lines as u64,
        skipped_blank_lines: corpus.origin.skipped_blank_lines as u64,
        occurrence_table: table,
        raw_occurrence_table: raw,
        loc_stats: LocStats::from_counts(analyses.iter().map(|a| a.loc).collect()),
        tier_histogram: tiers,
        feature_counts,
        casting,
        call_histogram_total: calls,
        user_cross_calls: cross,
        unresolved_callees: unresolved,
        class_definition_count,
        class_locations: classes,
        absence_flags,
        catalog: catalog.clone(),
        catalog_fingerprint: catalog.fingerprint(),
        symbol_spec_fingerprint: spec.fingerprint(),
        diagnostics,
    }
}

pub fn build_report(
    corpus: &Corpus,
    spec: &SymbolSpec,
    catalog: &ElementaryCatalog,
    options: &AuditOptions,
) -> AuditReport {
    let analyses: Vec<ExampleAnalysis> = corpus
        .examples
        .iter()
        .map(|e| analyze_example(e, spec, catalog, options))
        .collect();
    assemble(corpus, spec, catalog, options, &analyses)
}

/// Signed `right - left` deltas for every numeric metric in either report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub left_id: String,
    pub right_id: String,
    pub example_count: i64,
    pub counts: BTreeMap<String, i64>,
    pub tiers: BTreeMap<String, i64>,
    pub calls: BTreeMap<String, i64>,
    pub features: BTreeMap<String, i64>,
    pub loc_total: i64,
    pub class_definition_count: i64,
    pub absence: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("symbol spec fingerprints differ: left {left}, right {right}")]
pub struct FingerprintMismatch {
    pub left: String,
    pub right: String,
}

fn delta(left: u64, right: u64) -> i64 {
    right as i64 - left as i64
}

fn map_delta(
    out: &mut BTreeMap<String, i64>,
    left: impl IntoIterator<Item = (String, u64)>,
    right: impl IntoIterator<Item = (String, u64)>,
) {
    for (k, v) in left {
        *out.entry(k).or_insert(0) -= v as i64;
    }
    for (k, v) in right {
        *out.entry(k).or_insert(0) += v as i64;
    }
}

/// `(name, count)` pairs in a fixed order, for flat renderings.
pub fn call_entries(h: &CallHistogram) -> [(String, u64); 4] {
    [
        ("self_recursive".to_string(), h.self_recursive),
        ("user_cross".to_string(), h.user_cross),
        ("library".to_string(), h.library),
        ("unresolved".to_string(), h.unresolved),
    ]
}

fn tier_entries(h: &TierHistogram) -> Vec<(String, u64)> {
    Tier::ALL
        .iter()
        .map(|t| (t.to_string(), h.get(*t)))
        .collect()
}

fn feature_entries(m: &BTreeMap<FeatureTag, u64>) -> Vec<(String, u64)> {
    m.iter().map(|(t, n)| (format!("{t:?}"), *n)).collect()
}

fn absence_entries(flags: &[AbsenceFlag]) -> Vec<(String, u64)> {
    flags
        .iter()
        .map(|f| (f.symbol.clone(), f.observed_count))
        .collect()
}

pub fn diff(left: &AuditReport, right: &AuditReport) -> Result<DiffReport, FingerprintMismatch> {
    if left.symbol_spec_fingerprint != right.symbol_spec_fingerprint {
        return Err(FingerprintMismatch {
            left: left.symbol_spec_fingerprint.clone(),
            right: right.symbol_spec_fingerprint.clone(),
        });
    }
    let mut out = DiffReport {
        left_id: left.corpus_id.clone(),
        right_id: right.corpus_id.clone(),
        example_count: delta(left.example_count, right.example_count),
        loc_total: delta(left.loc_stats.total, right.loc_stats.total),
        class_definition_count: delta(left.class_definition_count, right.class_definition_count),
        ..DiffReport::default()
    };
    let counts = |r: &AuditReport| {
        r.occurrence_table
            .counts
            .clone()
            .into_iter()
            .collect::<Vec<_>>()
    };
    map_delta(&mut out.counts, counts(left), counts(right));
    map_delta(
        &mut out.tiers,
        tier_entries(&left.tier_histogram),
        tier_entries(&right.tier_histogram),
    );
    map_delta(
        &mut out.calls,
        call_entries(&left.call_histogram_total),
        call_entries(&right.call_histogram_total),
    );
    map_delta(
        &mut out.features,
        feature_entries(&left.feature_counts),
        feature_entries(&right.feature_counts),
    );
    map_delta(
        &mut out.absence,
        absence_entries(&left.absence_flags),
        absence_entries(&right.absence_flags),
    );
    Ok(out)
}

impl DiffReport {
    pub fn is_zero(&self) -> bool {
        self.example_count == 0
            && self.loc_total == 0
            && self.class_definition_count == 0
            && [
                &self.counts,
                &self.tiers,
                &self.calls,
                &self.features,
                &self.absence,
            ]
            .iter()
            .all(|m| m.values().all(|v| *v == 0))
    }

    /// The diff with sides swapped.
    pub fn negated(&self) -> DiffReport {
        let neg = |m: &BTreeMap<String, i64>| m.iter().map(|(k, v)| (k.clone(), -v)).collect();
        DiffReport {
            left_id: self.right_id.clone(),
            right_id: self.left_id.clone(),
            example_count: -self.example_count,
            counts: neg(&self.counts),
            tiers: neg(&self.tiers),
            calls: neg(&self.calls),
            features: neg(&self.features),
            loc_total: -self.loc_total,
            class_definition_count: -self.class_definition_count,
            absence: neg(&self.absence),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::IngestFormat;

    fn report(text: &str, id: &str) -> AuditReport {
        let corpus = Corpus::from_text(text, SourceLanguage::Java, &IngestFormat::tokenized(), id);
        build_report(
            &corpus,
            &SymbolSpec::default(),
            &ElementaryCatalog::default(),
            &AuditOptions::default(),
        )
    }

    const A: &str = "int f ( int n ) { return n <= 1 ? 1 : n * f ( n - 1 ) ; }\nint g ( int [ ] a ) { Arrays . sort ( a ) ; return a [ 0 ] ; }\n";
    const B: &str = "int h ( int x ) { return k ( x ) ; } int k ( int y ) { return Math . abs ( y ) ; }\n\nvoid p ( ) { System . out . println ( \"class\" ) ; }\n";

    #[test]
    fn empty_corpus_report_is_zero() {
        let r = report("", "empty");
        assert_eq!(r.example_count, 0);
        assert_eq!(r.tier_histogram.total(), 0);
        assert_eq!(r.loc_stats.total, 0);
        assert!(r.occurrence_table.counts.values().all(|&n| n == 0));
        assert!(!r.has_violations());
    }

    #[test]
    fn concatenation_equals_merge() {
        let (a, b) = (report(A, "x"), report(B, "x"));
        let both = report(&alloc::format!("{A}{B}"), "x");
        assert_eq!(a.merge(&b), both);
    }

    #[test]
    fn cross_calls_and_absence() {
        let r = report(B, "b");
        assert_eq!(r.call_histogram_total.user_cross, 1);
        assert_eq!(r.user_cross_calls[0].callee, "k");
        assert_eq!(r.user_cross_calls[0].caller.as_deref(), Some("h"));
        assert_eq!(r.class_definition_count, 0);
        let r = report("class Foo { }\n", "c");
        assert_eq!(r.class_definition_count, 1);
        assert!(r.violations().any(|f| f.symbol == "class"));
    }

    #[test]
    fn diff_identities() {
        let (a, b) = (report(A, "a"), report(B, "b"));
        assert!(diff(&a, &a).unwrap().is_zero());
        let ab = diff(&a, &b).unwrap();
        assert_eq!(diff(&b, &a).unwrap(), ab.negated());
        let empty = report("", "e");
        let d = diff(&empty, &a).unwrap();
        assert_eq!(d.example_count, 2);
        assert_eq!(d.counts[";"], a.occurrence_table.get(";") as i64);
    }

    #[test]
    fn diff_rejects_other_specs() {
        let a = report(A, "a");
        let mut b = a.clone();
        b.symbol_spec_fingerprint = "0000000000000000".into();
        let err = diff(&a, &b).unwrap_err();
        assert!(alloc::format!("{err}").contains("0000000000000000"));
    }
}
