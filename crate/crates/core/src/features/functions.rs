use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::FunctionDef;
use crate::language::SourceLanguage;
use crate::lex::{Token, TokenKind};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub defs: Vec<FunctionDef>,
    pub diagnostics: Vec<String>,
}

/// Keywords that may directly precede a function name in a header.
const HEADER_KEYWORDS: &[&str] = &[
    "void",
    "int",
    "long",
    "short",
    "byte",
    "char",
    "float",
    "double",
    "boolean",
    "bool",
    "unsigned",
    "signed",
    "auto",
    "public",
    "private",
    "protected",
    "static",
    "final",
    "inline",
    "virtual",
    "synchronized",
    "abstract",
    "native",
    "constexpr",
    "explicit",
];

/// Keywords allowed between `)` and `{` of a header.
const TRAILING_KEYWORDS: &[&str] = &["const", "noexcept", "throws", "override", "final"];

const SCOPE_KEYWORDS: &[&str] = &["class", "interface", "enum", "struct", "namespace", "union"];

/// Find every top-level function or method definition, in source order.
/// Methods directly inside class bodies count; functions nested in other
/// function bodies do not.
pub fn extract_from_tokens(tokens: &[Token], language: SourceLanguage) -> Extraction {
    match language {
        SourceLanguage::Python => extract_python(tokens),
        _ => extract_braced(tokens),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    Class,
    Block,
}

/// Index of the token closing the bracket opened at `open`.
pub(crate) fn matching(tokens: &[Token], open: usize, left: &str, right: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, t) in tokens.iter().enumerate().skip(open) {
        if t.is_punct(left) {
            depth += 1;
        } else if t.is_punct(right) {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

fn count_params(params: &[Token]) -> usize {
    if params.is_empty() || params.len() == 1 && params[0].is(TokenKind::Keyword, "void") {
        return 0;
    }
    let mut depth = 0i32;
    let mut count = 0;
    let mut segment_has_tokens = false;
    for t in params {
        match (t.kind, t.lexeme.as_str()) {
            (TokenKind::Punct, "(" | "[" | "{") | (TokenKind::Operator, "<") => depth += 1,
            (TokenKind::Punct, ")" | "]" | "}") | (TokenKind::Operator, ">") => depth -= 1,
            (TokenKind::Operator, ">>") => depth -= 2,
            (TokenKind::Punct, ",") if depth <= 0 => {
                if segment_has_tokens {
                    count += 1;
                }
                segment_has_tokens = false;
                continue;
            }
            _ => {}
        }
        if !matches!(
            t.kind,
            TokenKind::Newline | TokenKind::Indent | TokenKind::Dedent
        ) {
            segment_has_tokens = true;
        }
    }
    count + usize::from(segment_has_tokens)
}

fn may_precede_name(t: &Token) -> bool {
    match t.kind {
        TokenKind::Identifier => true,
        TokenKind::Keyword => HEADER_KEYWORDS.contains(&t.lexeme.as_str()),
        TokenKind::Operator => matches!(t.lexeme.as_str(), ">" | ">>" | ">>>" | "*" | "&" | "&&"),
        TokenKind::Punct => t.lexeme == "]",
        _ => false,
    }
}

fn is_boundary(t: &Token) -> bool {
    t.is_punct(";") || t.is_punct("{") || t.is_punct("}")
}

/// Match `name ( params ) [trailing keywords/names] {` at `i`. Returns the
/// indices of `)` and `{`.
fn braced_header(tokens: &[Token], i: usize) -> Option<(usize, usize)> {
    if tokens[i].kind != TokenKind::Identifier || i == 0 || !may_precede_name(&tokens[i - 1]) {
        return None;
    }
    if !tokens.get(i + 1)?.is_punct("(") {
        return None;
    }
    let close = matching(tokens, i + 1, "(", ")")?;
    let mut j = close + 1;
    let mut after_throws = false;
    loop {
        let t = tokens.get(j)?;
        if t.is_punct("{") {
            return Some((close, j));
        }
        let allowed = match t.kind {
            TokenKind::Keyword => {
                after_throws |= t.lexeme == "throws";
                TRAILING_KEYWORDS.contains(&t.lexeme.as_str())
            }
            TokenKind::Identifier | TokenKind::Punct if after_throws => {
                t.kind == TokenKind::Identifier || t.lexeme == "," || t.lexeme == "."
            }
            _ => false,
        };
        if !allowed {
            return None;
        }
        j += 1;
    }
}

fn header_start(tokens: &[Token], name: usize) -> usize {
    let mut start = name;
    while start > 0 && !is_boundary(&tokens[start - 1]) {
        start -= 1;
    }
    start
}

fn opens_type_scope(tokens: &[Token], brace: usize) -> bool {
    tokens[..brace]
        .iter()
        .rev()
        .take_while(|t| !is_boundary(t))
        .any(|t| t.kind == TokenKind::Keyword && SCOPE_KEYWORDS.contains(&t.lexeme.as_str()))
}

fn extract_braced(tokens: &[Token]) -> Extraction {
    let mut out = Extraction::default();
    let mut scopes: Vec<Scope> = Vec::new();
    let mut open_defs: Vec<(usize, usize)> = Vec::new(); // (def index, scope depth)
    let mut pending_body: Option<usize> = None;
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.is_punct("{") {
            if pending_body.take().is_some() {
                open_defs.push((out.defs.len() - 1, scopes.len()));
                scopes.push(Scope::Block);
            } else if opens_type_scope(tokens, i) {
                scopes.push(Scope::Class);
            } else {
                scopes.push(Scope::Block);
            }
        } else if t.is_punct("}") {
            if scopes.pop().is_none() {
                out.diagnostics
                    .push(format!("unmatched `}}` at {}:{}", t.line, t.column));
            }
            if let Some(&(def, depth)) = open_defs.last() {
                if depth == scopes.len() {
                    out.defs[def].end = i;
                    open_defs.pop();
                }
            }
        } else if pending_body.is_none() && scopes.iter().all(|s| *s == Scope::Class) {
            if let Some((close, brace)) = braced_header(tokens, i) {
                out.defs.push(FunctionDef {
                    name: t.lexeme.clone(),
                    start: header_start(tokens, i),
                    name_index: i,
                    end: tokens.len() - 1,
                    parameter_count: count_params(&tokens[i + 2..close]),
                });
                pending_body = Some(brace);
                i = brace;
                continue;
            }
        }
        i += 1;
    }
    for (def, _) in open_defs {
        let d = &out.defs[def];
        out.diagnostics
            .push(format!("body of `{}` is not closed", d.name));
    }
    if !scopes.is_empty() {
        out.diagnostics
            .push(format!("{} unclosed `{{`", scopes.len()));
    }
    out
}

fn extract_python(tokens: &[Token]) -> Extraction {
    let mut out = Extraction::default();
    for (i, t) in tokens.iter().enumerate() {
        if !t.is(TokenKind::Keyword, "def") || out.defs.iter().any(|d| d.contains(i)) {
            continue;
        }
        let (Some(name), Some(paren)) = (tokens.get(i + 1), tokens.get(i + 2)) else {
            continue;
        };
        if name.kind != TokenKind::Identifier || !paren.is_punct("(") {
            continue;
        }
        let Some(close) = matching(tokens, i + 2, "(", ")") else {
            out.diagnostics
                .push(format!("unclosed parameter list of `{}`", name.lexeme));
            break;
        };
        let colon = tokens[close..]
            .iter()
            .position(|t| t.is_punct(":") || t.kind == TokenKind::Newline)
            .map(|p| close + p)
            .filter(|&c| tokens[c].is_punct(":"));
        let end = match colon {
            Some(colon) => python_body_end(tokens, colon),
            None => {
                out.diagnostics
                    .push(format!("header of `{}` has no `:`", name.lexeme));
                close
            }
        };
        out.defs.push(FunctionDef {
            name: name.lexeme.clone(),
            start: i,
            name_index: i + 1,
            end,
            parameter_count: count_params(&tokens[i + 3..close]),
        });
    }
    out
}

/// The `Dedent` closing an indented body, or the `Newline` ending a one-line
/// body.
fn python_body_end(tokens: &[Token], colon: usize) -> usize {
    let last = tokens.len() - 1;
    let block = tokens
        .get(colon + 1)
        .is_some_and(|t| t.kind == TokenKind::Newline)
        && tokens
            .get(colon + 2)
            .is_some_and(|t| t.kind == TokenKind::Indent);
    if block {
        let mut depth = 0usize;
        for (j, t) in tokens.iter().enumerate().skip(colon + 2) {
            match t.kind {
                TokenKind::Indent => depth += 1,
                TokenKind::Dedent => {
                    depth -= 1;
                    if depth == 0 {
                        return j;
                    }
                }
                _ => {}
            }
        }
        last
    } else {
        tokens[colon..]
            .iter()
            .position(|t| t.kind == TokenKind::Newline)
            .map_or(last, |p| colon + p)
    }
}
