use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{CallSiteKind, ElementaryCatalog, FunctionDef};
use crate::lex::{Token, TokenKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallSite {
    /// Index of the callee identifier in the token stream.
    pub index: usize,
    pub callee: String,
    /// Innermost enclosing definition, if any.
    pub caller: Option<String>,
    pub kind: CallSiteKind,
    pub line: u32,
}

/// Every `identifier (` that is not a definition header, classified.
///
/// Qualified callees (after `.` or `::`) are library calls. Otherwise the
/// callee is matched against the enclosing definition, then the other
/// definitions of the same example, then the catalog's library names.
pub fn classify_call_sites(
    tokens: &[Token],
    defs: &[FunctionDef],
    catalog: &ElementaryCatalog,
) -> Vec<CallSite> {
    let mut sites = Vec::new();
    for (i, pair) in tokens.windows(2).enumerate() {
        let (callee, paren) = (&pair[0], &pair[1]);
        if callee.kind != TokenKind::Identifier || !paren.is_punct("(") {
            continue;
        }
        if defs.iter().any(|d| d.name_index == i) {
            continue;
        }
        let enclosing = defs
            .iter()
            .filter(|d| d.contains(i))
            .min_by_key(|d| d.end - d.start);
        let qualified = i > 0 && (tokens[i - 1].is_punct(".") || tokens[i - 1].is_op("::"));
        let name = callee.lexeme.as_str();
        let kind = if qualified {
            CallSiteKind::Library
        } else if enclosing.is_some_and(|d| d.name == name) {
            CallSiteKind::SelfRecursive
        } else if defs.iter().any(|d| d.name == name) {
            CallSiteKind::UserCross
        } else if catalog.is_known_library(name) {
            CallSiteKind::Library
        } else {
            CallSiteKind::Unresolved
        };
        sites.push(CallSite {
            index: i,
            callee: callee.lexeme.clone(),
            caller: enclosing.map(|d| d.name.clone()),
            kind,
            line: callee.line,
        });
    }
    sites
}
