//! Language-feature classification: function extraction, call-site
//! resolution, sophisticated-feature detectors and tier assignment.

mod calls;
mod catalog;
mod detect;
mod functions;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Example};
use crate::lex::{lex, LexOptions, Token, TokenKind};

pub use calls::{classify_call_sites, CallSite};
pub use catalog::ElementaryCatalog;
pub use detect::detect_in_tokens;
pub use functions::{extract_from_tokens, Extraction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDef {
    pub name: String,
    /// First token of the header (modifiers or return type).
    pub start: usize,
    pub name_index: usize,
    /// Last token of the body: the closing brace, or for Python the token
    /// that ends the indented block.
    pub end: usize,
    pub parameter_count: usize,
}

impl FunctionDef {
    pub fn contains(&self, index: usize) -> bool {
        (self.start..=self.end).contains(&index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CallSiteKind {
    SelfRecursive,
    UserCross,
    Library,
    Unresolved,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallHistogram {
    pub self_recursive: u64,
    pub user_cross: u64,
    pub library: u64,
    pub unresolved: u64,
}

impl CallHistogram {
    pub fn get(&self, kind: CallSiteKind) -> u64 {
        match kind {
            CallSiteKind::SelfRecursive => self.self_recursive,
            CallSiteKind::UserCross => self.user_cross,
            CallSiteKind::Library => self.library,
            CallSiteKind::Unresolved => self.unresolved,
        }
    }

    pub fn add(&mut self, kind: CallSiteKind, n: u64) {
        match kind {
            CallSiteKind::SelfRecursive => self.self_recursive += n,
            CallSiteKind::UserCross => self.user_cross += n,
            CallSiteKind::Library => self.library += n,
            CallSiteKind::Unresolved => self.unresolved += n,
        }
    }

    pub fn merge(&mut self, other: &CallHistogram) {
        self.self_recursive += other.self_recursive;
        self.user_cross += other.user_cross;
        self.library += other.library;
        self.unresolved += other.unresolved;
    }

    pub fn total(&self) -> u64 {
        self.self_recursive + self.user_cross + self.library + self.unresolved
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureTag {
    ControlExtra,
    Bitwise,
    BuiltinMethods,
    WrapperClassStatics,
    LibraryGenerics,
    Casting,
    ExceptionHandling,
    ClassDefinition,
    Other,
}

impl FeatureTag {
    pub const ALL: [FeatureTag; 9] = [
        Self::ControlExtra,
        Self::Bitwise,
        Self::BuiltinMethods,
        Self::WrapperClassStatics,
        Self::LibraryGenerics,
        Self::Casting,
        Self::ExceptionHandling,
        Self::ClassDefinition,
        Self::Other,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    Elementary,
    ElementaryPlusMath,
    ElementaryPlusRecursion,
    ElementaryPlusMathAndRecursion,
    Sophisticated,
}

impl Tier {
    pub const ALL: [Tier; 5] = [
        Self::Elementary,
        Self::ElementaryPlusMath,
        Self::ElementaryPlusRecursion,
        Self::ElementaryPlusMathAndRecursion,
        Self::Sophisticated,
    ];

    /// Distance from plain elementary code; adding features never lowers it.
    pub fn rank(self) -> u8 {
        match self {
            Self::Elementary => 0,
            Self::ElementaryPlusMath | Self::ElementaryPlusRecursion => 1,
            Self::ElementaryPlusMathAndRecursion => 2,
            Self::Sophisticated => 3,
        }
    }

    pub fn assign(math: bool, recursion: bool, sophisticated: bool) -> Self {
        match (sophisticated, math, recursion) {
            (true, _, _) => Self::Sophisticated,
            (false, false, false) => Self::Elementary,
            (false, true, false) => Self::ElementaryPlusMath,
            (false, false, true) => Self::ElementaryPlusRecursion,
            (false, true, true) => Self::ElementaryPlusMathAndRecursion,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Elementary => "elementary",
            Self::ElementaryPlusMath => "elementary+math",
            Self::ElementaryPlusRecursion => "elementary+recursion",
            Self::ElementaryPlusMathAndRecursion => "elementary+math+recursion",
            Self::Sophisticated => "sophisticated",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TierHistogram {
    pub elementary: u64,
    pub elementary_plus_math: u64,
    pub elementary_plus_recursion: u64,
    pub elementary_plus_math_and_recursion: u64,
    pub sophisticated: u64,
}

impl TierHistogram {
    pub fn from_counts(counts: [u64; 5]) -> Self {
        let [elementary, elementary_plus_math, elementary_plus_recursion, elementary_plus_math_and_recursion, sophisticated] =
            counts;
        Self {
            elementary,
            elementary_plus_math,
            elementary_plus_recursion,
            elementary_plus_math_and_recursion,
            sophisticated,
        }
    }

    pub fn counts(&self) -> [u64; 5] {
        Tier::ALL.map(|t| self.get(t))
    }

    pub fn get(&self, tier: Tier) -> u64 {
        match tier {
            Tier::Elementary => self.elementary,
            Tier::ElementaryPlusMath => self.elementary_plus_math,
            Tier::ElementaryPlusRecursion => self.elementary_plus_recursion,
            Tier::ElementaryPlusMathAndRecursion => self.elementary_plus_math_and_recursion,
            Tier::Sophisticated => self.sophisticated,
        }
    }

    pub fn add(&mut self, tier: Tier) {
        let slot = match tier {
            Tier::Elementary => &mut self.elementary,
            Tier::ElementaryPlusMath => &mut self.elementary_plus_math,
            Tier::ElementaryPlusRecursion => &mut self.elementary_plus_recursion,
            Tier::ElementaryPlusMathAndRecursion => &mut self.elementary_plus_math_and_recursion,
            Tier::Sophisticated => &mut self.sophisticated,
        };
        *slot += 1;
    }

    pub fn merge(&mut self, other: &TierHistogram) {
        let sum = core::array::from_fn(|i| self.counts()[i] + other.counts()[i]);
        *self = Self::from_counts(sum);
    }

    pub fn total(&self) -> u64 {
        self.counts().iter().sum()
    }
}

/// How sure the casting detector is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Confidence {
    /// A class name in parentheses before an operand; could be a parenthesized
    /// constant.
    Low,
    /// A primitive type keyword or a C++ `*_cast`.
    High,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureProfile {
    pub example_index: usize,
    pub elementary_only: bool,
    pub uses_math_library: bool,
    pub uses_recursion: bool,
    pub sophisticated_features: BTreeSet<FeatureTag>,
    pub call_histogram: CallHistogram,
    pub tier: Tier,
    pub casting_confidence: Option<Confidence>,
    /// The first lexeme that triggered each tag, for manual review.
    pub evidence: BTreeMap<FeatureTag, String>,
}

/// Lex an example and drop comments, keeping Python layout tokens.
pub fn code_tokens(example: &Example) -> Vec<Token> {
    let lexed = lex(&example.source, example.language, LexOptions::default());
    strip_comments(lexed.tokens)
}

pub(crate) fn strip_comments(tokens: Vec<Token>) -> Vec<Token> {
    tokens
        .into_iter()
        .filter(|t| t.kind != TokenKind::Comment)
        .collect()
}

pub fn extract_functions(example: &Example) -> Extraction {
    extract_from_tokens(&code_tokens(example), example.language)
}

pub fn classify_calls(
    example: &Example,
    defs: &[FunctionDef],
    catalog: &ElementaryCatalog,
) -> CallHistogram {
    let tokens = code_tokens(example);
    let mut histogram = CallHistogram::default();
    for site in classify_call_sites(&tokens, defs, catalog) {
        histogram.add(site.kind, 1);
    }
    histogram
}

pub fn detect_features(example: &Example, catalog: &ElementaryCatalog) -> FeatureProfile {
    let tokens = code_tokens(example);
    let defs = extract_from_tokens(&tokens, example.language).defs;
    let sites = classify_call_sites(&tokens, &defs, catalog);
    detect_in_tokens(
        example.index,
        example.language,
        &tokens,
        &defs,
        &sites,
        catalog,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLocation {
    pub example_index: usize,
    /// 1-based physical line in the corpus file.
    pub line: usize,
}

/// Every `class` keyword token in the corpus; literals and comments excluded.
pub fn detect_class_definitions(corpus: &Corpus) -> (u64, Vec<ClassLocation>) {
    let mut locations = Vec::new();
    for example in &corpus.examples {
        let lexed = lex(&example.source, example.language, LexOptions::default());
        locations.extend(class_locations(example, &lexed.tokens));
    }
    (locations.len() as u64, locations)
}

pub(crate) fn class_locations<'a>(
    example: &'a Example,
    tokens: &'a [Token],
) -> impl Iterator<Item = ClassLocation> + 'a {
    tokens
        .iter()
        .filter(|t| t.is(TokenKind::Keyword, "class"))
        .map(move |t| ClassLocation {
            example_index: example.index,
            line: example.line + t.line as usize - 1,
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("--first {requested} exceeds the corpus size {available}")]
pub struct FirstNTooLarge {
    pub requested: usize,
    pub available: usize,
}

/// Tally tiers over the first `first_n` examples, or all of them.
pub fn tier_histogram(
    corpus: &Corpus,
    catalog: &ElementaryCatalog,
    first_n: Option<usize>,
) -> Result<TierHistogram, FirstNTooLarge> {
    let n = limit(corpus.len(), first_n)?;
    let mut histogram = TierHistogram::default();
    for example in &corpus.examples[..n] {
        histogram.add(detect_features(example, catalog).tier);
    }
    Ok(histogram)
}

pub(crate) fn limit(available: usize, first_n: Option<usize>) -> Result<usize, FirstNTooLarge> {
    match first_n {
        Some(requested) if requested > available => Err(FirstNTooLarge {
            requested,
            available,
        }),
        Some(requested) => Ok(requested),
        None => Ok(available),
    }
}
