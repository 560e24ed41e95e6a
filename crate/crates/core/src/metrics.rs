//! Symbol and reserved-word occurrence tables, and line-of-code proxies.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Example};
use crate::fingerprint::fnv1a_hex;
use crate::language::SourceLanguage;
use crate::lex::{lex, LexOptions, Token, TokenKind};

/// One countable row: a lexeme and the token kinds it may match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub name: String,
    pub kinds: Vec<TokenKind>,
}

impl SymbolEntry {
    fn new(name: &str, kinds: &[TokenKind]) -> Self {
        let mut kinds = kinds.to_vec();
        kinds.sort();
        kinds.dedup();
        Self {
            name: name.into(),
            kinds,
        }
    }

    /// Rows made only of operators and punctuation go in the symbol column.
    pub fn is_symbol(&self) -> bool {
        self.kinds
            .iter()
            .all(|k| matches!(k, TokenKind::Operator | TokenKind::Punct))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub symbols: Vec<SymbolEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: expected `<name> <Kind>[,<Kind>...]`")]
    Malformed { line: usize },
    #[error("line {line}: unknown token kind `{kind}`")]
    UnknownKind { line: usize, kind: String },
    #[error("line {line}: duplicate symbol `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("symbol `{0}` has no token kinds")]
    NoKinds(String),
}

use TokenKind::{Identifier, Keyword, Operator, Punct};

/// The symbol column of the Java test-set census, in table order.
const CENSUS_SYMBOLS: &[(&str, TokenKind)] = &[
    (";", Punct),
    ("{", Punct),
    ("}", Punct),
    ("[", Punct),
    ("]", Punct),
    ("(", Punct),
    (")", Punct),
    ("+", Operator),
    ("-", Operator),
    ("*", Operator),
    ("/", Operator),
    ("++", Operator),
    ("--", Operator),
];

/// The reserved-word column. Several are library identifiers rather than
/// Java keywords, and `repeat`/`bool` are not Java words at all.
const CENSUS_WORDS: &[&str] = &[
    "for", "if", "else", "while", "repeat", "return", "switch", "case", "break", "continue", "try",
    "int", "double", "float", "char", "bool", "Integer", "String", "sort", "equals",
];

impl Default for SymbolSpec {
    fn default() -> Self {
        let mut symbols: Vec<SymbolEntry> = CENSUS_SYMBOLS
            .iter()
            .map(|(name, kind)| SymbolEntry::new(name, &[*kind]))
            .collect();
        symbols.extend(
            CENSUS_WORDS
                .iter()
                .map(|name| SymbolEntry::new(name, &[Keyword, Identifier])),
        );
        Self { symbols }
    }
}

/// `#` followed by exactly one valid kind list declares the `#` symbol;
/// any other line starting with `#` is a comment.
fn is_hash_entry(line: &str) -> bool {
    let parts: Vec<&str> = line.split_whitespace().collect();
    matches!(parts.as_slice(), ["#", kinds] if kinds.split(',').all(|k| TokenKind::from_name(k).is_some()))
}

impl SymbolSpec {
    pub fn new(symbols: Vec<SymbolEntry>) -> Result<Self, SpecError> {
        let mut seen = BTreeMap::new();
        for (i, entry) in symbols.iter().enumerate() {
            if entry.kinds.is_empty() {
                return Err(SpecError::NoKinds(entry.name.clone()));
            }
            if seen.insert(entry.name.clone(), ()).is_some() {
                return Err(SpecError::Duplicate {
                    line: i + 1,
                    name: entry.name.clone(),
                });
            }
        }
        Ok(Self { symbols })
    }

    pub fn single(name: &str, kinds: &[TokenKind]) -> Self {
        Self {
            symbols: alloc::vec![SymbolEntry::new(name, kinds)],
        }
    }

    /// Parse the plain-text form: one `<name> <Kind>[,<Kind>...]` per line;
    /// blank lines and lines starting with `#` are ignored, except `# <Kinds>`
    /// which declares the `#` symbol itself.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut symbols = Vec::new();
        let mut names = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim();
            if line.is_empty() || (line.starts_with('#') && !is_hash_entry(line)) {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(name), Some(kinds), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(SpecError::Malformed { line: line_no });
            };
            let mut parsed = Vec::new();
            for kind in kinds.split(',').filter(|k| !k.is_empty()) {
                parsed.push(
                    TokenKind::from_name(kind).ok_or_else(|| SpecError::UnknownKind {
                        line: line_no,
                        kind: kind.into(),
                    })?,
                );
            }
            if parsed.is_empty() {
                return Err(SpecError::NoKinds(name.into()));
            }
            if names.insert(String::from(name), ()).is_some() {
                return Err(SpecError::Duplicate {
                    line: line_no,
                    name: name.into(),
                });
            }
            symbols.push(SymbolEntry::new(name, &parsed));
        }
        Ok(Self { symbols })
    }

    /// Inverse of [`SymbolSpec::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.symbols {
            let kinds: Vec<&str> = entry.kinds.iter().map(|k| k.name()).collect();
            out.push_str(&format!("{} {}\n", entry.name, kinds.join(",")));
        }
        out
    }

    pub fn fingerprint(&self) -> String {
        fnv1a_hex(self.to_text().as_bytes())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|e| e.name.as_str())
    }

    /// Per-entry counts over one token stream, in spec order.
    pub fn count_tokens(&self, tokens: &[Token]) -> Vec<u64> {
        self.symbols
            .iter()
            .map(|entry| {
                tokens
                    .iter()
                    .filter(|t| t.lexeme == entry.name && entry.kinds.contains(&t.kind))
                    .count() as u64
            })
            .collect()
    }

    /// Per-entry non-overlapping substring counts over raw text, in spec order.
    pub fn count_raw(&self, text: &str) -> Vec<u64> {
        self.symbols
            .iter()
            .map(|entry| text.matches(entry.name.as_str()).count() as u64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    /// Count tokens; literal contents and comments never contribute.
    #[default]
    TokenAware,
    /// Count substrings of the source text, literals and comments included.
    RawSubstring,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TokenAware => "token-aware",
            Self::RawSubstring => "raw-substring",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceTable {
    pub corpus_id: String,
    pub mode: CountMode,
    pub example_count: u64,
    pub counts: BTreeMap<String, u64>,
    /// Spec order, for rendering.
    pub order: Vec<String>,
    /// Number of examples that produced at least one lex error.
    pub examples_with_lex_errors: u64,
    pub diagnostics: Vec<String>,
}

impl OccurrenceTable {
    pub fn zero(corpus_id: &str, spec: &SymbolSpec, mode: CountMode) -> Self {
        Self {
            corpus_id: corpus_id.into(),
            mode,
            example_count: 0,
            counts: spec.names().map(|n| (String::from(n), 0)).collect(),
            order: spec.names().map(String::from).collect(),
            examples_with_lex_errors: 0,
            diagnostics: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> u64 {
        self.counts.get(name).copied().unwrap_or(0)
    }

    /// Fold one example's per-entry counts (in spec order) into the table.
    pub fn add_example(&mut self, counts: &[u64]) {
        self.example_count += 1;
        for (name, n) in self.order.iter().zip(counts) {
            *self.counts.entry(name.clone()).or_insert(0) += n;
        }
    }

    /// Entrywise sum; commutative and associative on the numeric fields.
    pub fn merge(&mut self, other: &OccurrenceTable) {
        self.example_count += other.example_count;
        self.examples_with_lex_errors += other.examples_with_lex_errors;
        for (name, n) in &other.counts {
            *self.counts.entry(name.clone()).or_insert(0) += n;
        }
        for name in &other.order {
            if !self.order.contains(name) {
                self.order.push(name.clone());
            }
        }
        self.diagnostics.extend(other.diagnostics.iter().cloned());
    }

    /// `(open, close, open_count, close_count)` for every bracket pair whose
    /// counts differ.
    pub fn bracket_imbalances(&self) -> Vec<(&'static str, &'static str, u64, u64)> {
        [("{", "}"), ("[", "]"), ("(", ")")]
            .into_iter()
            .filter_map(|(open, close)| {
                let (a, b) = (self.counts.get(open)?, self.counts.get(close)?);
                (a != b).then_some((open, close, *a, *b))
            })
            .collect()
    }
}

/// Count every spec entry over a corpus.
pub fn count_symbols(corpus: &Corpus, spec: &SymbolSpec, mode: CountMode) -> OccurrenceTable {
    let mut table = OccurrenceTable::zero(&corpus.origin.id, spec, mode);
    for example in &corpus.examples {
        match mode {
            CountMode::TokenAware => {
                let lexed = lex(&example.source, example.language, LexOptions::default());
                if !lexed.errors.is_empty() {
                    table.examples_with_lex_errors += 1;
                    table
                        .diagnostics
                        .push(lex_diagnostic(example, &lexed.errors));
                }
                table.add_example(&spec.count_tokens(&lexed.tokens));
            }
            CountMode::RawSubstring => table.add_example(&spec.count_raw(&example.source)),
        }
    }
    table
}

pub(crate) fn lex_diagnostic(example: &Example, errors: &[crate::lex::LexError]) -> String {
    let first = &errors[0];
    format!(
        "example {} (line {}): {} lex error(s), first at {}:{} {:?}",
        example.index,
        example.line,
        errors.len(),
        first.line,
        first.column,
        first.kind
    )
}

/// An exact non-negative fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub numerator: u64,
    pub denominator: u64,
}

impl Rational {
    /// `None` when `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Option<Self> {
        if denominator == 0 {
            return None;
        }
        let g = gcd(numerator, denominator);
        Some(Self {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Rounded half-up to `places` decimal places, without going through floats.
    pub fn to_decimal(self, places: u32) -> String {
        let scale = 10u128.pow(places);
        let n = u128::from(self.numerator) * scale * 2 + u128::from(self.denominator);
        let scaled = n / (2 * u128::from(self.denominator));
        let (int, frac) = (scaled / scale, scaled % scale);
        if places == 0 {
            format!("{int}")
        } else {
            format!("{int}.{frac:0width$}", width = places as usize)
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(1))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocStats {
    pub per_example: Vec<u64>,
    pub total: u64,
    /// `total / per_example.len()`; absent for an empty corpus.
    pub mean: Option<Rational>,
}

impl LocStats {
    pub fn from_counts(per_example: Vec<u64>) -> Self {
        let total = per_example.iter().sum();
        let mean = Rational::new(total, per_example.len() as u64);
        Self {
            per_example,
            total,
            mean,
        }
    }

    pub fn merge(&self, other: &LocStats) -> LocStats {
        let mut per_example = self.per_example.clone();
        per_example.extend_from_slice(&other.per_example);
        Self::from_counts(per_example)
    }
}

/// Semicolon tokens for Java and C++; physical line breaks for Python.
pub fn loc_proxy(example: &Example) -> u64 {
    match example.language {
        SourceLanguage::Python => python_line_breaks(&example.source),
        _ => {
            let lexed = lex(&example.source, example.language, LexOptions::default());
            loc_from_tokens(example.language, &example.source, &lexed.tokens)
        }
    }
}

pub(crate) fn loc_from_tokens(language: SourceLanguage, source: &str, tokens: &[Token]) -> u64 {
    match language {
        SourceLanguage::Python => python_line_breaks(source),
        _ => tokens.iter().filter(|t| t.is_punct(";")).count() as u64,
    }
}

fn python_line_breaks(source: &str) -> u64 {
    source.bytes().filter(|&b| b == b'\n').count() as u64
}

pub fn corpus_loc_stats(corpus: &Corpus) -> LocStats {
    LocStats::from_counts(corpus.examples.iter().map(loc_proxy).collect())
}
