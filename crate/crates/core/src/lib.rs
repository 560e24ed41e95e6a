//! Audit the language features exercised by a program-translation test set.
//!
//! This crate is `no_std` (it needs `alloc`). It holds the pure parts of the
//! pipeline: the corpus model and detokenizer, a literal- and comment-aware
//! lexer for Java, C++ and Python, symbol and LOC metrics, feature and call
//! classification, and report assembly. File IO, config files, rendering and
//! the command line live in the `transaudit` crate.

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod features;
mod fingerprint;
pub mod language;
pub mod lex;
pub mod metrics;
pub mod report;

pub use corpus::{Corpus, Example, IngestFormat, Markers, Origin};
pub use features::{
    CallHistogram, CallSiteKind, ElementaryCatalog, FeatureProfile, FeatureTag, FunctionDef, Tier,
    TierHistogram,
};
pub use language::SourceLanguage;
pub use lex::{lex, LexOptions, Lexed, Token, TokenKind};
pub use metrics::{CountMode, LocStats, OccurrenceTable, SymbolSpec};
pub use report::{AuditReport, DiffReport};
