//! A hand-written maximal-munch lexer for Java, C++ and Python.
//!
//! Literals and comments each become a single token, so nothing inside them
//! is ever counted as a keyword or symbol. Python indentation is turned into
//! zero-width `Indent`/`Dedent` tokens and every physical line break outside
//! a literal becomes a `Newline` token.

mod tables;

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::language::SourceLanguage;

pub use tables::{is_keyword, keywords, operators};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TokenKind {
    Keyword,
    Identifier,
    IntLiteral,
    FloatLiteral,
    StringLiteral,
    CharLiteral,
    Comment,
    Operator,
    Punct,
    Newline,
    Indent,
    Dedent,
    /// Unterminated literal or comment, or a character outside the language.
    Error,
}

impl TokenKind {
    pub const ALL: [TokenKind; 13] = [
        Self::Keyword,
        Self::Identifier,
        Self::IntLiteral,
        Self::FloatLiteral,
        Self::StringLiteral,
        Self::CharLiteral,
        Self::Comment,
        Self::Operator,
        Self::Punct,
        Self::Newline,
        Self::Indent,
        Self::Dedent,
        Self::Error,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Keyword => "Keyword",
            Self::Identifier => "Identifier",
            Self::IntLiteral => "IntLiteral",
            Self::FloatLiteral => "FloatLiteral",
            Self::StringLiteral => "StringLiteral",
            Self::CharLiteral => "CharLiteral",
            Self::Comment => "Comment",
            Self::Operator => "Operator",
            Self::Punct => "Punct",
            Self::Newline => "Newline",
            Self::Indent => "Indent",
            Self::Dedent => "Dedent",
            Self::Error => "Error",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(name))
    }

    /// Zero-width tokens that do not cover any source text.
    pub fn is_synthetic(self) -> bool {
        matches!(self, Self::Indent | Self::Dedent)
    }

    pub fn is_literal(self) -> bool {
        matches!(
            self,
            Self::IntLiteral | Self::FloatLiteral | Self::StringLiteral | Self::CharLiteral
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 1-based line.
    pub line: u32,
    /// 1-based column, counted in characters.
    pub column: u32,
    /// Byte offset into the lexed text. Zero-width tokens sit at the start of
    /// the first real token on their line.
    pub offset: usize,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_punct(&self, lexeme: &str) -> bool {
        self.is(TokenKind::Punct, lexeme)
    }

    pub fn is_op(&self, lexeme: &str) -> bool {
        self.is(TokenKind::Operator, lexeme)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexOptions {
    pub keep_comments: bool,
    /// When false, literal lexemes are cut down to their delimiters.
    pub keep_literal_contents: bool,
}

impl Default for LexOptions {
    fn default() -> Self {
        Self {
            keep_comments: true,
            keep_literal_contents: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LexErrorKind {
    UnterminatedString,
    UnterminatedChar,
    UnterminatedComment,
    UnexpectedChar(char),
    InconsistentDedent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{line}:{column}: {kind:?}")]
pub struct LexError {
    pub kind: LexErrorKind,
    pub line: u32,
    pub column: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub errors: Vec<LexError>,
}

/// Tokenize `source`. Never fails; problems are reported in `errors` and the
/// offending text becomes an `Error` token.
pub fn lex(source: &str, language: SourceLanguage, options: LexOptions) -> Lexed {
    let mut lexer = Lexer::new(source, language);
    lexer.run();
    let Lexer { tokens, errors, .. } = lexer;
    let tokens = tokens
        .into_iter()
        .filter(|t| options.keep_comments || t.kind != TokenKind::Comment)
        .map(|mut t| {
            if !options.keep_literal_contents && t.kind.is_literal() {
                t.lexeme = strip_literal(&t.lexeme, t.kind);
            }
            t
        })
        .collect();
    Lexed { tokens, errors }
}

fn strip_literal(lexeme: &str, kind: TokenKind) -> String {
    match kind {
        TokenKind::StringLiteral => "\"\"".into(),
        TokenKind::CharLiteral => "''".into(),
        TokenKind::IntLiteral => "0".into(),
        TokenKind::FloatLiteral => "0.0".into(),
        _ => lexeme.into(),
    }
}

/// True iff the tokens, laid back at their recorded offsets with only
/// whitespace between them, reproduce `original` exactly.
pub fn reconstruct(tokens: &[Token], original: &str) -> bool {
    let mut cursor = 0usize;
    for token in tokens.iter().filter(|t| !t.kind.is_synthetic()) {
        let Some(gap) = original.get(cursor..token.offset) else {
            return false;
        };
        // A splice's backslash sits in the gap; its newline is a token.
        let gap = match gap.strip_suffix('\\') {
            Some(rest) if token.lexeme.starts_with('\n') => rest,
            _ => gap,
        };
        if !is_blank(gap) {
            return false;
        }
        let end = token.offset + token.lexeme.len();
        if original.get(token.offset..end) != Some(token.lexeme.as_str()) {
            return false;
        }
        cursor = end;
    }
    is_blank(&original[cursor..])
}

fn is_blank(gap: &str) -> bool {
    gap.chars().all(char::is_whitespace)
}

/// Drop comments and positions so streams can be compared by `(kind, lexeme)`
/// alone.
pub fn normalize_stream(tokens: &[Token]) -> Vec<(TokenKind, String)> {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::Comment)
        .map(|t| (t.kind, t.lexeme.clone()))
        .collect()
}

struct Lexer<'a> {
    src: &'a str,
    language: SourceLanguage,
    pos: usize,
    line: u32,
    column: u32,
    tokens: Vec<Token>,
    errors: Vec<LexError>,
    // Python layout state.
    indents: Vec<usize>,
    bracket_depth: usize,
    at_line_start: bool,
    continuation: bool,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, language: SourceLanguage) -> Self {
        Self {
            src,
            language,
            pos: 0,
            line: 1,
            column: 1,
            tokens: Vec::new(),
            errors: Vec::new(),
            indents: alloc::vec![0],
            bracket_depth: 0,
            at_line_start: true,
            continuation: false,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn bump_bytes(&mut self, n: usize) {
        let target = self.pos + n;
        while self.pos < target {
            self.bump();
        }
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: u32, column: u32) {
        self.tokens.push(Token {
            kind,
            lexeme: self.src[start..self.pos].into(),
            line,
            column,
            offset: start,
        });
    }

    fn error(&mut self, kind: LexErrorKind, line: u32, column: u32) {
        self.errors.push(LexError { kind, line, column });
    }

    fn python(&self) -> bool {
        self.language == SourceLanguage::Python
    }

    fn run(&mut self) {
        while let Some(c) = self.peek() {
            if self.python() && self.at_line_start {
                self.layout();
                if self.peek().is_none() {
                    break;
                }
                continue;
            }
            let (start, line, column) = (self.pos, self.line, self.column);
            match c {
                '\n' => {
                    self.bump();
                    if self.python() {
                        self.push(TokenKind::Newline, start, line, column);
                        self.at_line_start = !self.continuation && self.bracket_depth == 0;
                        self.continuation = false;
                    }
                }
                '\\' if self.python() && self.peek_at(1) == Some('\n') => {
                    self.bump();
                    self.continuation = true;
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '/' if !self.python() && self.peek_at(1) == Some('/') => self.line_comment(),
                '#' if self.python() => self.line_comment(),
                '/' if !self.python() && self.peek_at(1) == Some('*') => self.block_comment(),
                c if c.is_ascii_digit() => self.number(),
                '.' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => self.number(),
                c if is_ident_start(c, self.language) => self.word(),
                '"' => self.quoted('"'),
                '\'' if self.python() => self.quoted('\''),
                '\'' => self.char_literal(),
                _ => self.symbol(),
            }
        }
        if self.python() {
            let (line, column) = (self.line, self.column);
            while self.indents.len() > 1 {
                self.indents.pop();
                self.synthetic(TokenKind::Dedent, line, column);
            }
        }
    }

    fn synthetic(&mut self, kind: TokenKind, line: u32, column: u32) {
        let lexeme = if kind == TokenKind::Indent {
            "INDENT"
        } else {
            "DEDENT"
        };
        self.tokens.push(Token {
            kind,
            lexeme: lexeme.into(),
            line,
            column,
            offset: self.pos,
        });
    }

    /// Measure indentation at the start of a logical Python line.
    fn layout(&mut self) {
        let mut width = 0usize;
        while let Some(c) = self.peek() {
            match c {
                ' ' => width += 1,
                '\t' => width = (width / 8 + 1) * 8,
                '\x0c' | '\r' => {}
                _ => break,
            }
            self.bump();
        }
        self.at_line_start = false;
        match self.peek() {
            // Blank and comment-only lines do not affect indentation.
            None | Some('\n') | Some('#') => return,
            _ => {}
        }
        let (line, column) = (self.line, self.column);
        let current = *self.indents.last().unwrap_or(&0);
        if width > current {
            self.indents.push(width);
            self.synthetic(TokenKind::Indent, line, column);
        } else if width < current {
            while self.indents.len() > 1 && *self.indents.last().unwrap_or(&0) > width {
                self.indents.pop();
                self.synthetic(TokenKind::Dedent, line, column);
            }
            if *self.indents.last().unwrap_or(&0) != width {
                self.error(LexErrorKind::InconsistentDedent, line, column);
                self.indents.push(width);
            }
        }
    }

    fn line_comment(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        while self.peek().is_some_and(|c| c != '\n') {
            self.bump();
        }
        self.push(TokenKind::Comment, start, line, column);
    }

    fn block_comment(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        match self.rest()[2..].find("*/") {
            Some(at) => {
                self.bump_bytes(at + 4);
                self.push(TokenKind::Comment, start, line, column);
            }
            None => self.unterminated(LexErrorKind::UnterminatedComment, start, line, column),
        }
    }

    /// Consume the rest of the line as an `Error` token.
    fn unterminated(&mut self, kind: LexErrorKind, start: usize, line: u32, column: u32) {
        while self.peek().is_some_and(|c| c != '\n') {
            self.bump();
        }
        let end = self.src[start..self.pos].trim_end().len() + start;
        // Keep trailing blanks out of the token so round-tripping still works.
        let trailing = self.pos - end;
        self.pos = end;
        self.column -= self.src[end..end + trailing].chars().count() as u32;
        self.push(TokenKind::Error, start, line, column);
        self.error(kind, line, column);
    }

    fn number(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        let mut float = false;
        let radix_prefix = self.peek() == Some('0')
            && matches!(self.peek_at(1), Some('x' | 'X' | 'b' | 'B' | 'o' | 'O'));
        if radix_prefix {
            self.bump();
            self.bump();
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_hexdigit() || c == '_' || self.digit_separator(c))
            {
                self.bump();
            }
        } else {
            self.digits();
            let next = self.peek_at(1);
            let fraction = next.is_some_and(|c| c.is_ascii_digit())
                || !next.is_some_and(|c| c == '.' || is_ident_start(c, self.language));
            if self.peek() == Some('.') && fraction {
                float = true;
                self.bump();
                self.digits();
            }
            if matches!(self.peek(), Some('e' | 'E'))
                && (self.peek_at(1).is_some_and(|c| c.is_ascii_digit())
                    || matches!(self.peek_at(1), Some('+' | '-'))
                        && self.peek_at(2).is_some_and(|c| c.is_ascii_digit()))
            {
                float = true;
                self.bump();
                if matches!(self.peek(), Some('+' | '-')) {
                    self.bump();
                }
                self.digits();
            }
        }
        // Type suffixes: L, f, d, u, ul, j ...
        while let Some(c) = self.peek() {
            match c {
                'f' | 'F' | 'd' | 'D' if !radix_prefix => {
                    float = true;
                    self.bump();
                }
                'j' | 'J' if self.python() => {
                    float = true;
                    self.bump();
                }
                'l' | 'L' | 'u' | 'U' => {
                    self.bump();
                }
                _ => break,
            }
        }
        let kind = if float {
            TokenKind::FloatLiteral
        } else {
            TokenKind::IntLiteral
        };
        self.push(kind, start, line, column);
    }

    fn digit_separator(&self, c: char) -> bool {
        c == '\''
            && self.language == SourceLanguage::Cpp
            && self.peek_at(1).is_some_and(|d| d.is_ascii_hexdigit())
    }

    fn digits(&mut self) {
        while let Some(c) = self.peek() {
            let underscore = c == '_' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit());
            if c.is_ascii_digit() || underscore || self.digit_separator(c) {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn word(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        while self
            .peek()
            .is_some_and(|c| is_ident_continue(c, self.language))
        {
            self.bump();
        }
        let word = &self.src[start..self.pos];
        // String prefixes: Python r"..", b'..', f"..."; C++ L"..", u8"..", R"(..)".
        if let Some(q) = self.peek().filter(|&q| q == '"' || q == '\'') {
            let prefix = match self.language {
                SourceLanguage::Python => is_python_prefix(word),
                SourceLanguage::Cpp => matches!(
                    word,
                    "L" | "u" | "U" | "u8" | "R" | "LR" | "uR" | "UR" | "u8R"
                ),
                SourceLanguage::Java => false,
            };
            if prefix {
                if self.language == SourceLanguage::Cpp && word.ends_with('R') && q == '"' {
                    return self.cpp_raw_string(start, line, column);
                }
                if self.language == SourceLanguage::Cpp && q == '\'' {
                    return self.char_literal_from(start, line, column);
                }
                return self.quoted_from(q, start, line, column);
            }
        }
        let kind = if is_keyword(self.language, word) {
            TokenKind::Keyword
        } else {
            TokenKind::Identifier
        };
        self.push(kind, start, line, column);
    }

    fn quoted(&mut self, quote: char) {
        let (start, line, column) = (self.pos, self.line, self.column);
        self.quoted_from(quote, start, line, column);
    }

    fn quoted_from(&mut self, quote: char, start: usize, line: u32, column: u32) {
        let triple = (self.python() || self.language == SourceLanguage::Java && quote == '"')
            && self.peek_at(1) == Some(quote)
            && self.peek_at(2) == Some(quote);
        if triple {
            let delim: String = core::iter::repeat_n(quote, 3).collect();
            let body = &self.rest()[3..];
            match find_unescaped(body, &delim) {
                Some(at) => {
                    self.bump_bytes(3 + at + 3);
                    self.push(TokenKind::StringLiteral, start, line, column);
                }
                None => self.unterminated(LexErrorKind::UnterminatedString, start, line, column),
            }
            return;
        }
        self.bump();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return self.unterminated(
                        LexErrorKind::UnterminatedString,
                        start,
                        line,
                        column,
                    );
                }
                Some('\\') => {
                    self.bump();
                    if self.peek() != Some('\n') {
                        self.bump();
                    }
                }
                Some(c) if c == quote => {
                    self.bump();
                    break;
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        self.push(TokenKind::StringLiteral, start, line, column);
    }

    fn cpp_raw_string(&mut self, start: usize, line: u32, column: u32) {
        // R"delim( ... )delim"
        let rest = self.rest();
        let open = rest[1..].find('(').map(|i| i + 1);
        let Some(open) = open.filter(|&i| !rest[1..i].contains(['\n', ')', '\\', ' '])) else {
            return self.unterminated(LexErrorKind::UnterminatedString, start, line, column);
        };
        let mut close = String::from(")");
        close.push_str(&rest[1..open]);
        close.push('"');
        match rest[open..].find(&close) {
            Some(at) => {
                self.bump_bytes(open + at + close.len());
                self.push(TokenKind::StringLiteral, start, line, column);
            }
            None => self.unterminated(LexErrorKind::UnterminatedString, start, line, column),
        }
    }

    fn char_literal(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        self.char_literal_from(start, line, column);
    }

    fn char_literal_from(&mut self, start: usize, line: u32, column: u32) {
        self.bump();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return self.unterminated(LexErrorKind::UnterminatedChar, start, line, column);
                }
                Some('\\') => {
                    self.bump();
                    self.bump();
                }
                Some('\'') => {
                    self.bump();
                    break;
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        self.push(TokenKind::CharLiteral, start, line, column);
    }

    fn symbol(&mut self) {
        let (start, line, column) = (self.pos, self.line, self.column);
        let rest = self.rest();
        if let Some(op) = operators(self.language)
            .iter()
            .find(|op| rest.starts_with(**op))
        {
            self.bump_bytes(op.len());
            return self.push(TokenKind::Operator, start, line, column);
        }
        let c = self.peek().unwrap_or_default();
        self.bump();
        if tables::is_punct(self.language, c) {
            if self.python() {
                match c {
                    '(' | '[' | '{' => self.bracket_depth += 1,
                    ')' | ']' | '}' => self.bracket_depth = self.bracket_depth.saturating_sub(1),
                    _ => {}
                }
            }
            self.push(TokenKind::Punct, start, line, column);
        } else {
            self.push(TokenKind::Error, start, line, column);
            self.error(LexErrorKind::UnexpectedChar(c), line, column);
        }
    }
}

fn is_ident_start(c: char, language: SourceLanguage) -> bool {
    c == '_' || c.is_alphabetic() || c == '$' && language != SourceLanguage::Python
}

fn is_ident_continue(c: char, language: SourceLanguage) -> bool {
    c == '_' || c.is_alphanumeric() || c == '$' && language != SourceLanguage::Python
}

fn is_python_prefix(word: &str) -> bool {
    word.len() <= 2
        && word
            .chars()
            .all(|c| matches!(c.to_ascii_lowercase(), 'r' | 'b' | 'u' | 'f'))
        && !word.is_empty()
}

/// Position of `delim` in `text`, skipping backslash escapes.
fn find_unescaped(text: &str, delim: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'\\' {
            i += 2;
            continue;
        }
        if bytes[i..].starts_with(delim.as_bytes()) {
            return Some(i);
        }
        i += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn kinds(src: &str, lang: SourceLanguage) -> Vec<(TokenKind, String)> {
        normalize_stream(&lex(src, lang, LexOptions::default()).tokens)
    }

    fn t(kind: TokenKind, s: &str) -> (TokenKind, String) {
        (kind, s.into())
    }

    #[test]
    fn maximal_munch_increment() {
        use TokenKind::*;
        assert_eq!(
            kinds("i ++ ;", SourceLanguage::Java),
            vec![t(Identifier, "i"), t(Operator, "++"), t(Punct, ";")]
        );
        assert_eq!(
            kinds("a+=b>>>=2", SourceLanguage::Java),
            vec![
                t(Identifier, "a"),
                t(Operator, "+="),
                t(Identifier, "b"),
                t(Operator, ">>>="),
                t(IntLiteral, "2")
            ]
        );
    }

    #[test]
    fn keyword_inside_literal_is_not_a_keyword() {
        let toks = kinds(r#"x = "for";"#, SourceLanguage::Java);
        assert!(toks.iter().all(|(k, _)| *k != TokenKind::Keyword));
        assert!(toks.contains(&t(TokenKind::StringLiteral, "\"for\"")));
    }

    #[test]
    fn println_with_string_literal() {
        let toks = kinds(
            r#"System.out.println("Principal_Diagonal: " + principal);"#,
            SourceLanguage::Java,
        );
        let strings = toks
            .iter()
            .filter(|(k, _)| *k == TokenKind::StringLiteral)
            .count();
        let plus = toks
            .iter()
            .filter(|(k, s)| *k == TokenKind::Operator && s == "+")
            .count();
        assert_eq!((strings, plus), (1, 1));
    }

    #[test]
    fn comments_are_single_tokens() {
        let lexed = lex(
            "a /* if for */ b // while\nc",
            SourceLanguage::Java,
            LexOptions::default(),
        );
        let comments: Vec<_> = lexed
            .tokens
            .iter()
            .filter(|t| t.kind == TokenKind::Comment)
            .collect();
        assert_eq!(comments.len(), 2);
        assert_eq!(comments[0].lexeme, "/* if for */");
        assert!(lexed.errors.is_empty());
        let without = lex(
            "a /* x */ b",
            SourceLanguage::Java,
            LexOptions {
                keep_comments: false,
                ..LexOptions::default()
            },
        );
        assert_eq!(without.tokens.len(), 2);
    }

    #[test]
    fn unterminated_string_consumes_rest_of_line() {
        let lexed = lex(
            "s = \"abc ;\nint x ;",
            SourceLanguage::Java,
            LexOptions::default(),
        );
        assert_eq!(lexed.errors.len(), 1);
        assert_eq!(lexed.errors[0].kind, LexErrorKind::UnterminatedString);
        assert_eq!((lexed.errors[0].line, lexed.errors[0].column), (1, 5));
        let tail: Vec<_> = lexed
            .tokens
            .iter()
            .skip(3)
            .map(|t| t.lexeme.as_str())
            .collect();
        assert_eq!(tail, ["int", "x", ";"]);
        assert!(reconstruct(&lexed.tokens, "s = \"abc ;\nint x ;"));
    }

    #[test]
    fn unterminated_block_comment() {
        let src = "a /* never closed   \nb";
        let lexed = lex(src, SourceLanguage::Cpp, LexOptions::default());
        assert_eq!(lexed.errors[0].kind, LexErrorKind::UnterminatedComment);
        assert_eq!(lexed.tokens.last().unwrap().lexeme, "b");
        assert!(reconstruct(&lexed.tokens, src));
    }

    #[test]
    fn char_literals_and_numbers() {
        use TokenKind::*;
        assert_eq!(
            kinds(
                "c = '\\'' ; d = 1.5e3f ; n = 0xFF_L ; m = 10L ; k = .5",
                SourceLanguage::Java
            )
            .into_iter()
            .filter(|(k, _)| k.is_literal())
            .collect::<Vec<_>>(),
            vec![
                t(CharLiteral, "'\\''"),
                t(FloatLiteral, "1.5e3f"),
                t(IntLiteral, "0xFF_L"),
                t(IntLiteral, "10L"),
                t(FloatLiteral, ".5")
            ]
        );
        assert_eq!(
            kinds("a[1].length", SourceLanguage::Java)[2],
            t(IntLiteral, "1")
        );
        assert_eq!(
            kinds("x = 1'000'000 ;", SourceLanguage::Cpp)[2],
            t(IntLiteral, "1'000'000")
        );
    }

    #[test]
    fn cpp_literal_prefixes() {
        use TokenKind::*;
        let toks = kinds(
            r#"auto s = R"x(a "quoted" )" b)x"; wchar_t c = L'z';"#,
            SourceLanguage::Cpp,
        );
        assert!(toks.contains(&t(StringLiteral, r#"R"x(a "quoted" )" b)x""#)));
        assert!(toks.contains(&t(CharLiteral, "L'z'")));
    }

    #[test]
    fn python_layout_tokens() {
        use TokenKind::*;
        let src = "def f(n):\n    if n:\n        return 1\n\n    # note\n    return 0\n";
        let lexed = lex(src, SourceLanguage::Python, LexOptions::default());
        assert!(lexed.errors.is_empty());
        let layout: Vec<_> = lexed
            .tokens
            .iter()
            .filter(|t| matches!(t.kind, Indent | Dedent | Newline))
            .map(|t| t.kind)
            .collect();
        assert_eq!(
            layout,
            vec![
                Newline, Indent, Newline, Indent, Newline, Newline, Newline, Dedent, Newline,
                Dedent
            ]
        );
        let newlines = lexed.tokens.iter().filter(|t| t.kind == Newline).count();
        assert_eq!(newlines, src.matches('\n').count());
        assert!(reconstruct(&lexed.tokens, src));
    }

    #[test]
    fn python_strings() {
        use TokenKind::*;
        let toks = kinds("s = f'{x}' + '''a\nb''' + r\"\\d\"", SourceLanguage::Python);
        let strings: Vec<_> = toks
            .into_iter()
            .filter(|(k, _)| *k == StringLiteral)
            .map(|(_, s)| s)
            .collect();
        assert_eq!(strings, ["f'{x}'", "'''a\nb'''", "r\"\\d\""]);
    }

    #[test]
    fn reconstruct_detects_perturbation() {
        let src = "int x = 1 ;";
        let mut tokens = lex(src, SourceLanguage::Java, LexOptions::default()).tokens;
        assert!(reconstruct(&tokens, src));
        tokens[1].lexeme = "y".into();
        assert!(!reconstruct(&tokens, src));
        assert!(reconstruct(&[], ""));
    }

    #[test]
    fn literal_contents_can_be_dropped() {
        let lexed = lex(
            r#"s = "hello" ;"#,
            SourceLanguage::Java,
            LexOptions {
                keep_literal_contents: false,
                ..LexOptions::default()
            },
        );
        assert_eq!(lexed.tokens[2].lexeme, "\"\"");
    }

    #[test]
    fn unexpected_characters_are_errors() {
        let lexed = lex("a ` b", SourceLanguage::Java, LexOptions::default());
        assert_eq!(lexed.errors[0].kind, LexErrorKind::UnexpectedChar('`'));
        assert_eq!(lexed.tokens.len(), 3);
    }

    #[test]
    fn indentation_only_differences_normalize_equal() {
        let a = "int f(int x) {\n  return x;\n}";
        let b = "int f(int x)\n{\n        return x;\n   }";
        assert_eq!(
            kinds(a, SourceLanguage::Java),
            kinds(b, SourceLanguage::Java)
        );
        assert!(kinds("// a\n/* b */", SourceLanguage::Java).is_empty());
    }
}
