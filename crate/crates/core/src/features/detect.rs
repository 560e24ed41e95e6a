use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    CallHistogram, CallSite, CallSiteKind, Confidence, ElementaryCatalog, FeatureProfile,
    FeatureTag, FunctionDef, Tier,
};
use crate::language::SourceLanguage;
use crate::lex::{Token, TokenKind};

const BITWISE: &[&str] = &[
    "&", "|", "^", "~", "<<", ">>", ">>>", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

const CAST_KEYWORDS: &[&str] = &[
    "int", "long", "short", "byte", "char", "float", "double", "boolean", "bool", "unsigned",
    "signed",
];

const CPP_CASTS: &[&str] = &[
    "static_cast",
    "dynamic_cast",
    "reinterpret_cast",
    "const_cast",
];

const GENERIC_ARG_KEYWORDS: &[&str] = &[
    "int", "long", "short", "byte", "char", "float", "double", "boolean", "bool", "void",
    "unsigned", "signed", "const", "extends", "super",
];

const CPP_STREAMS: &[&str] = &["cout", "cin", "cerr", "clog"];

struct Detector<'a> {
    tokens: &'a [Token],
    language: SourceLanguage,
    catalog: &'a ElementaryCatalog,
    defs: &'a [FunctionDef],
    tags: BTreeSet<FeatureTag>,
    evidence: BTreeMap<FeatureTag, String>,
    math: bool,
    cast: Option<Confidence>,
    generic_inner: Vec<bool>,
    stream: Vec<bool>,
}

/// Classify one example's comment-free token stream.
pub fn detect_in_tokens(
    example_index: usize,
    language: SourceLanguage,
    tokens: &[Token],
    defs: &[FunctionDef],
    sites: &[CallSite],
    catalog: &ElementaryCatalog,
) -> FeatureProfile {
    let mut d = Detector {
        tokens,
        language,
        catalog,
        defs,
        tags: BTreeSet::new(),
        evidence: BTreeMap::new(),
        math: false,
        cast: None,
        generic_inner: vec![false; tokens.len()],
        stream: vec![false; tokens.len()],
    };
    if language.is_c_family() {
        d.mark_generics();
        d.detect_casts();
    }
    if language == SourceLanguage::Cpp {
        d.mark_streams();
    }
    d.scan();

    let mut call_histogram = CallHistogram::default();
    for site in sites {
        call_histogram.add(site.kind, 1);
    }
    let uses_recursion = call_histogram.get(CallSiteKind::SelfRecursive) > 0;
    let tier = Tier::assign(d.math, uses_recursion, !d.tags.is_empty());
    FeatureProfile {
        example_index,
        elementary_only: tier == Tier::Elementary,
        uses_math_library: d.math,
        uses_recursion,
        sophisticated_features: d.tags,
        call_histogram,
        tier,
        casting_confidence: d.cast,
        evidence: d.evidence,
    }
}

fn is_operand(t: &Token) -> bool {
    t.kind == TokenKind::Identifier || t.kind.is_literal() || t.is_punct(")") || t.is_punct("]")
}

fn looks_like_type_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(char::is_uppercase) && chars.any(char::is_lowercase)
}

impl Detector<'_> {
    fn flag(&mut self, tag: FeatureTag, at: usize) {
        self.tags.insert(tag);
        self.evidence.entry(tag).or_insert_with(|| {
            alloc::format!("{} (line {})", self.tokens[at].lexeme, self.tokens[at].line)
        });
    }

    fn tok(&self, i: usize) -> Option<&Token> {
        self.tokens.get(i)
    }

    fn scan(&mut self) {
        let mut i = 0;
        while i < self.tokens.len() {
            if self.generic_inner[i] {
                i += 1;
                continue;
            }
            let t = &self.tokens[i];
            match t.kind {
                TokenKind::Keyword => self.keyword(i),
                TokenKind::Identifier => {
                    i = self.chain(i);
                    continue;
                }
                TokenKind::Operator => self.operator(i),
                TokenKind::Punct
                    if t.lexeme == "."
                        && self
                            .tok(i + 1)
                            .is_some_and(|n| n.kind == TokenKind::Identifier) =>
                {
                    let (members, next, is_call) = self.collect_chain(i + 1);
                    self.members(&members, is_call);
                    i = next;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
    }

    /// Number of `[ ]` pairs directly after `i`.
    fn array_rank(&self, i: usize) -> usize {
        let mut rank = 0;
        let mut j = i + 1;
        while self.tok(j).is_some_and(|t| t.is_punct("["))
            && self.tok(j + 1).is_some_and(|t| t.is_punct("]"))
        {
            rank += 1;
            j += 2;
        }
        rank
    }

    fn elementary_type(&mut self, i: usize) {
        if self.array_rank(i) > self.catalog.max_array_rank {
            self.flag(FeatureTag::Other, i);
        }
    }

    fn keyword(&mut self, i: usize) {
        let word = self.tokens[i].lexeme.as_str();
        let c = self.catalog;
        let mut matched = false;
        if c.is_class_word(word) {
            self.flag(FeatureTag::ClassDefinition, i);
            matched = true;
        }
        if c.is_exception_word(word) {
            self.flag(FeatureTag::ExceptionHandling, i);
            matched = true;
        }
        if c.is_extra_control(word) {
            self.flag(FeatureTag::ControlExtra, i);
            matched = true;
        }
        if matched {
            return;
        }
        if CPP_CASTS.contains(&word) {
            self.flag(FeatureTag::Casting, i);
            self.cast = Some(Confidence::High);
        } else if word == "new" {
            self.new_expression(i);
        } else if c.is_type(word) {
            self.elementary_type(i);
        } else if !c.is_elementary_keyword(word) {
            self.flag(FeatureTag::Other, i);
        }
    }

    /// `new T[n]` for an elementary `T` is an array allocation; library
    /// classes are flagged when their name is visited.
    fn new_expression(&mut self, i: usize) {
        let Some(next) = self.tok(i + 1) else { return };
        let elementary_array = matches!(next.kind, TokenKind::Keyword | TokenKind::Identifier)
            && self.catalog.is_type(&next.lexeme)
            && self.tok(i + 2).is_some_and(|t| t.is_punct("["));
        let library =
            next.kind == TokenKind::Identifier && self.catalog.is_generic_class(&next.lexeme);
        if !elementary_array && !library {
            self.flag(FeatureTag::Other, i);
        }
    }

    /// `a.b.c` / `a::b` starting at `i`: the member names, the index after
    /// the chain, and whether the chain is called.
    fn collect_chain(&self, i: usize) -> (Vec<usize>, usize, bool) {
        let mut members = vec![i];
        let mut j = i;
        while self
            .tok(j + 1)
            .is_some_and(|t| t.is_punct(".") || t.is_op("::"))
            && self
                .tok(j + 2)
                .is_some_and(|t| t.kind == TokenKind::Identifier)
        {
            j += 2;
            members.push(j);
        }
        let is_call = self.tok(j + 1).is_some_and(|t| t.is_punct("("));
        (members, j + 1, is_call)
    }

    fn chain(&mut self, i: usize) -> usize {
        let (members, next, is_call) = self.collect_chain(i);
        let qualified_by_expr =
            i > 0 && (self.tokens[i - 1].is_punct(".") || self.tokens[i - 1].is_op("::"));
        if qualified_by_expr {
            self.members(&members, is_call);
        } else if members.len() == 1 {
            self.single(i, is_call);
        } else {
            self.qualified(&members, is_call);
        }
        next
    }

    fn single(&mut self, i: usize, is_call: bool) {
        let c = self.catalog;
        let name = self.tokens[i].lexeme.as_str();
        if is_call {
            if self.defs.iter().any(|d| d.name == name) || c.is_io(name) || c.is_function(name) {
                return;
            }
            if c.is_math_function(name) {
                self.math = true;
            } else if c.is_generic_class(name) {
                self.flag(FeatureTag::LibraryGenerics, i);
            } else if c.is_builtin(name) || c.is_wrapper(name) {
                self.flag(FeatureTag::BuiltinMethods, i);
            }
            return;
        }
        if c.is_generic_class(name) {
            self.flag(FeatureTag::LibraryGenerics, i);
        } else if c.is_type(name) {
            self.elementary_type(i);
        } else if c.is_io(name) {
        } else if looks_like_type_name(name) && self.declares_with(i) {
            self.flag(FeatureTag::Other, i);
        }
    }

    /// `T x`, `T[] x` or `T<..> x`: the identifier at `i` is used as a type.
    fn declares_with(&self, i: usize) -> bool {
        let mut j = i + 1 + 2 * self.array_rank(i);
        while self.generic_inner.get(j).copied().unwrap_or(false) {
            j += 1;
        }
        self.tok(j).is_some_and(|t| t.kind == TokenKind::Identifier)
    }

    fn qualified(&mut self, members: &[usize], is_call: bool) {
        let c = self.catalog;
        let path: Vec<&str> = members
            .iter()
            .map(|&m| self.tokens[m].lexeme.as_str())
            .collect();
        if c.is_io(&path.join(".")) {
            return;
        }
        let (root, at) = (path[0], members[0]);
        if root == "std" {
            let last = members[members.len() - 1];
            return self.single(last, is_call);
        }
        if c.is_math_receiver(root) {
            self.math = true;
        } else if c.is_wrapper(root) {
            self.flag(FeatureTag::WrapperClassStatics, at);
        } else if c.is_generic_class(root) {
            self.flag(FeatureTag::LibraryGenerics, at);
        } else if root == "System" {
            self.flag(FeatureTag::BuiltinMethods, at);
        } else {
            self.members(&members[1..], is_call);
        }
    }

    /// Member accesses on a value: elementary members are fine, other
    /// method calls are built-ins, other fields mean user data structures.
    fn members(&mut self, members: &[usize], is_call: bool) {
        for (k, &m) in members.iter().enumerate() {
            let last = k + 1 == members.len();
            if self.catalog.is_method(&self.tokens[m].lexeme) {
                continue;
            }
            if last && is_call {
                self.flag(FeatureTag::BuiltinMethods, m);
            } else {
                self.flag(FeatureTag::Other, m);
            }
        }
    }

    fn operator(&mut self, i: usize) {
        let op = self.tokens[i].lexeme.as_str();
        if BITWISE.contains(&op) {
            if self.stream[i] && matches!(op, "<<" | ">>") {
                return;
            }
            if op == "&" && self.language == SourceLanguage::Cpp {
                if self.reference_declarator(i) {
                    return;
                }
                if !self.tokens[..i].last().is_some_and(is_operand) {
                    // Address-of.
                    return self.flag(FeatureTag::Other, i);
                }
            }
            return self.flag(FeatureTag::Bitwise, i);
        }
        if self.catalog.is_operator(op) || op == "::" {
            return;
        }
        self.flag(FeatureTag::Other, i);
    }

    /// C++ `T &name` in a declaration or parameter list.
    fn reference_declarator(&self, i: usize) -> bool {
        let (Some(prev), Some(next), Some(after)) = (
            i.checked_sub(1).and_then(|p| self.tok(p)),
            self.tok(i + 1),
            self.tok(i + 2),
        ) else {
            return false;
        };
        if next.kind != TokenKind::Identifier
            || !matches!(after.lexeme.as_str(), "," | ")" | "=" | ";" | "[")
        {
            return false;
        }
        if prev.kind == TokenKind::Keyword {
            return prev.lexeme != "return";
        }
        let in_params = self.defs.iter().any(|d| {
            let body = self.tokens[d.name_index..]
                .iter()
                .position(|t| t.is_punct("{"))
                .map(|p| d.name_index + p);
            d.name_index < i && body.is_some_and(|b| i < b)
        });
        in_params && (prev.kind == TokenKind::Identifier || self.generic_inner[i - 1])
    }

    /// Mark `Name < ... >` argument lists so their angle brackets are not
    /// read as comparisons or shifts.
    fn mark_generics(&mut self) {
        let mut i = 0;
        while i + 1 < self.tokens.len() {
            let is_root =
                self.tokens[i].kind == TokenKind::Identifier && self.tokens[i + 1].is_op("<");
            if let Some(end) = is_root.then(|| self.generic_end(i + 1)).flatten() {
                for j in i + 1..=end {
                    self.generic_inner[j] = true;
                    let t = &self.tokens[j];
                    if t.kind == TokenKind::Identifier && self.catalog.is_generic_class(&t.lexeme) {
                        self.flag(FeatureTag::LibraryGenerics, j);
                    }
                }
                if self.catalog.is_generic_class(&self.tokens[i].lexeme) {
                    self.flag(FeatureTag::LibraryGenerics, i);
                } else if !self.catalog.is_wrapper(&self.tokens[i].lexeme) {
                    self.flag(FeatureTag::Other, i);
                }
                i = end + 1;
            } else {
                i += 1;
            }
        }
    }

    fn generic_end(&self, open: usize) -> Option<usize> {
        let mut depth = 0i32;
        for (j, t) in self.tokens.iter().enumerate().skip(open) {
            match (t.kind, t.lexeme.as_str()) {
                (TokenKind::Operator, "<") => depth += 1,
                (TokenKind::Operator, ">") => depth -= 1,
                (TokenKind::Operator, ">>") => depth -= 2,
                (TokenKind::Operator, ">>>") => depth -= 3,
                (TokenKind::Identifier | TokenKind::IntLiteral, _) => {}
                (TokenKind::Keyword, w) if GENERIC_ARG_KEYWORDS.contains(&w) => {}
                (TokenKind::Punct, "," | "." | "[" | "]") => {}
                (TokenKind::Operator, "?" | "::" | "*" | "&") => {}
                _ => return None,
            }
            if depth == 0 {
                return Some(j);
            }
            if depth < 0 {
                return None;
            }
        }
        None
    }

    /// `( type ) operand`, plus C++ functional casts `int ( x )`.
    fn detect_casts(&mut self) {
        for i in 0..self.tokens.len() {
            let t = &self.tokens[i];
            if self.language == SourceLanguage::Cpp
                && t.kind == TokenKind::Keyword
                && CAST_KEYWORDS.contains(&t.lexeme.as_str())
                && self.tok(i + 1).is_some_and(|n| n.is_punct("("))
                && !self.tokens[..i]
                    .last()
                    .is_some_and(|p| p.kind == TokenKind::Keyword)
            {
                self.mark_cast(i, Confidence::High);
                continue;
            }
            if !t.is_punct("(") {
                continue;
            }
            if let Some(prev) = i.checked_sub(1).map(|p| &self.tokens[p]) {
                let call_like = prev.kind == TokenKind::Identifier
                    || matches!(
                        prev.lexeme.as_str(),
                        "sizeof" | "alignof" | "typeid" | "decltype"
                    );
                if call_like {
                    continue;
                }
            }
            let mut j = i + 1;
            let mut confidence = None;
            while self.tok(j).is_some_and(|t| {
                t.kind == TokenKind::Keyword && CAST_KEYWORDS.contains(&t.lexeme.as_str())
            }) {
                confidence = Some(Confidence::High);
                j += 1;
            }
            if confidence.is_none() {
                let Some(t) = self.tok(j) else { continue };
                let class = t.kind == TokenKind::Identifier
                    && (self.catalog.is_wrapper(&t.lexeme)
                        || self.catalog.is_generic_class(&t.lexeme)
                        || self.catalog.is_type(&t.lexeme));
                if !class {
                    continue;
                }
                confidence = Some(Confidence::Low);
                j += 1;
            }
            while self.tok(j).is_some_and(|t| t.is_punct("["))
                && self.tok(j + 1).is_some_and(|t| t.is_punct("]"))
            {
                j += 2;
            }
            while self.tok(j).is_some_and(|t| t.is_op("*")) {
                j += 1;
            }
            if !self.tok(j).is_some_and(|t| t.is_punct(")")) {
                continue;
            }
            let Some(operand) = self.tok(j + 1) else {
                continue;
            };
            let high = confidence == Some(Confidence::High);
            let follows = operand.kind == TokenKind::Identifier
                || operand.is_punct("(")
                || high
                    && (operand.kind.is_literal()
                        || operand.is_op("-")
                        || operand.is(TokenKind::Keyword, "this"));
            if follows {
                self.mark_cast(i, confidence.unwrap_or(Confidence::Low));
            }
        }
    }

    fn mark_cast(&mut self, at: usize, confidence: Confidence) {
        self.flag(FeatureTag::Casting, at);
        self.cast = self.cast.max(Some(confidence));
    }

    /// Statements that mention a C++ stream use `<<`/`>>` for IO.
    fn mark_streams(&mut self) {
        let mut start = 0;
        for end in 0..=self.tokens.len() {
            let boundary = end == self.tokens.len() || {
                let t = &self.tokens[end];
                t.is_punct(";") || t.is_punct("{") || t.is_punct("}")
            };
            if !boundary {
                continue;
            }
            let segment = &self.tokens[start..end];
            if segment.iter().any(|t| {
                t.kind == TokenKind::Identifier && CPP_STREAMS.contains(&t.lexeme.as_str())
            }) {
                self.stream[start..end].fill(true);
            }
            start = end + 1;
        }
    }
}
