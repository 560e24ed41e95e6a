//! Corpus data model, title splitting and detokenization of the
//! one-function-per-line dataset format.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::language::SourceLanguage;

/// Structural marker spellings used by tokenized Python lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Markers {
    pub newline: String,
    pub indent: String,
    pub dedent: String,
}

impl Default for Markers {
    fn default() -> Self {
        Self {
            newline: "NEW_LINE".into(),
            indent: "INDENT".into(),
            dedent: "DEDENT".into(),
        }
    }
}

/// Spaces emitted per indentation level when rendering tokenized Python.
pub const INDENT_WIDTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IngestFormat {
    /// One example per physical line, tokens separated by spaces.
    TokenizedLines {
        title_separator: Option<String>,
        markers: Markers,
    },
    /// The whole input is a single example of ordinary source text.
    PlainSource,
}

impl IngestFormat {
    pub fn tokenized() -> Self {
        Self::TokenizedLines {
            title_separator: None,
            markers: Markers::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    /// 0-based ordinal among the non-blank lines of the file.
    pub index: usize,
    /// 1-based physical line the example came from.
    pub line: usize,
    pub title: Option<String>,
    pub raw: String,
    pub source: String,
    pub language: SourceLanguage,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    pub id: String,
    pub physical_lines: usize,
    pub skipped_blank_lines: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub language: SourceLanguage,
    pub examples: Vec<Example>,
    pub origin: Origin,
    /// Structural problems met while detokenizing; the affected examples are
    /// kept with a clamped rendering.
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DetokenizeError {
    #[error("example {example}: dedent below indentation level zero at token {token}")]
    DedentUnderflow { example: usize, token: usize },
}

/// Split a dataset line into an optional title and the code body.
///
/// The title is everything before the first occurrence of `separator`; both
/// halves are trimmed. An empty separator disables splitting.
pub fn split_title<'a>(raw: &'a str, separator: &str) -> (Option<&'a str>, &'a str) {
    if separator.is_empty() {
        return (None, raw);
    }
    match raw.find(separator) {
        Some(at) => (Some(raw[..at].trim()), raw[at + separator.len()..].trim()),
        None => (None, raw),
    }
}

/// Turn one tokenized line into source text.
///
/// Java and C++ lines come back unchanged apart from a trailing carriage
/// return. Python marker tokens become newlines and four-space indentation;
/// all other text, spacing included, is kept as is, so rendering an already
/// rendered example changes nothing. `example` is only used to label errors.
pub fn detokenize(
    raw: &str,
    language: SourceLanguage,
    markers: &Markers,
    example: usize,
) -> Result<String, DetokenizeError> {
    render(raw, language, markers, example, true)
}

/// Like [`detokenize`] but clamps dedent underflow at level zero.
pub fn detokenize_lenient(raw: &str, language: SourceLanguage, markers: &Markers) -> String {
    render(raw, language, markers, 0, false).unwrap_or_default()
}

fn render(
    raw: &str,
    language: SourceLanguage,
    markers: &Markers,
    example: usize,
    strict: bool,
) -> Result<String, DetokenizeError> {
    let raw = raw.strip_suffix('\r').unwrap_or(raw);
    if language != SourceLanguage::Python {
        return Ok(raw.into());
    }
    let mut out = String::with_capacity(raw.len());
    let mut depth = 0usize;
    let mut i = 0usize;
    // Already-rendered text may span lines; each keeps its own spacing.
    for (n, physical) in raw.split('\n').enumerate() {
        if n > 0 {
            out.push('\n');
        }
        let mut at_line_start = true;
        for piece in physical.split(' ') {
            if piece == markers.newline {
                out.push('\n');
                at_line_start = true;
            } else if piece == markers.indent {
                depth += 1;
            } else if piece == markers.dedent {
                if depth == 0 {
                    if strict {
                        return Err(DetokenizeError::DedentUnderflow { example, token: i });
                    }
                } else {
                    depth -= 1;
                }
            } else {
                if at_line_start {
                    out.extend(core::iter::repeat_n(' ', depth * INDENT_WIDTH));
                    at_line_start = false;
                } else {
                    out.push(' ');
                }
                out.push_str(piece);
            }
            if !piece.is_empty() {
                i += 1;
            }
        }
    }
    Ok(out)
}

impl Corpus {
    pub fn empty(language: SourceLanguage, id: &str) -> Self {
        Self {
            language,
            examples: Vec::new(),
            origin: Origin {
                id: id.into(),
                ..Origin::default()
            },
            diagnostics: Vec::new(),
        }
    }

    /// Build a corpus from already-decoded physical lines.
    pub fn from_lines<'a, I>(
        lines: I,
        language: SourceLanguage,
        format: &IngestFormat,
        id: &str,
    ) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut corpus = Self::empty(language, id);
        match format {
            IngestFormat::TokenizedLines {
                title_separator,
                markers,
            } => {
                for (n, line) in lines.into_iter().enumerate() {
                    corpus.origin.physical_lines += 1;
                    let line = line.strip_suffix('\r').unwrap_or(line);
                    if line.trim().is_empty() {
                        corpus.origin.skipped_blank_lines += 1;
                        continue;
                    }
                    let index = corpus.examples.len();
                    let (title, body) = split_title(line, title_separator.as_deref().unwrap_or(""));
                    let source = match detokenize(body, language, markers, index) {
                        Ok(source) => source,
                        Err(err) => {
                            corpus
                                .diagnostics
                                .push(alloc::format!("line {}: {err}", n + 1));
                            detokenize_lenient(body, language, markers)
                        }
                    };
                    corpus.examples.push(Example {
                        index,
                        line: n + 1,
                        title: title.map(Into::into),
                        raw: line.into(),
                        source,
                        language,
                    });
                }
            }
            IngestFormat::PlainSource => {
                let lines: Vec<&str> = lines.into_iter().collect();
                corpus.origin.physical_lines = lines.len();
                let text = lines.join("\n");
                if text.trim().is_empty() {
                    corpus.origin.skipped_blank_lines = lines.len();
                } else {
                    corpus.examples.push(Example {
                        index: 0,
                        line: 1,
                        title: None,
                        raw: text.clone(),
                        source: text,
                        language,
                    });
                }
            }
        }
        corpus
    }

    pub fn from_text(
        text: &str,
        language: SourceLanguage,
        format: &IngestFormat,
        id: &str,
    ) -> Self {
        Self::from_lines(physical_lines(text), language, format, id)
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Append another corpus of the same language, renumbering its examples.
    pub fn extend(&mut self, other: Corpus) {
        let offset = self.examples.len();
        let line_offset = self.origin.physical_lines;
        for mut example in other.examples {
            example.index += offset;
            example.line += line_offset;
            self.examples.push(example);
        }
        self.origin.physical_lines += other.origin.physical_lines;
        self.origin.skipped_blank_lines += other.origin.skipped_blank_lines;
        if !other.origin.id.is_empty() {
            if !self.origin.id.is_empty() {
                self.origin.id.push('+');
            }
            self.origin.id.push_str(&other.origin.id);
        }
        self.diagnostics.extend(other.diagnostics);
    }
}

/// Lines of a text file; a trailing newline does not start another line.
pub fn physical_lines(text: &str) -> impl Iterator<Item = &str> {
    text.split_inclusive('\n')
        .map(|l| l.strip_suffix('\n').unwrap_or(l))
}
