//! Symbol-spec and catalog files.

use std::path::Path;

use transaudit_core::{ElementaryCatalog, SymbolSpec};

use crate::error::AuditError;

pub fn load_symbols(path: Option<&Path>) -> Result<SymbolSpec, AuditError> {
    let Some(path) = path else {
        return Ok(SymbolSpec::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
    SymbolSpec::parse(&text).map_err(|source| AuditError::Symbols {
        path: path.to_path_buf(),
        source,
    })
}

/// Catalog JSON; missing fields fall back to the defaults.
pub fn load_catalog(path: Option<&Path>) -> Result<ElementaryCatalog, AuditError> {
    let Some(path) = path else {
        return Ok(ElementaryCatalog::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| AuditError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, AuditError> {
    let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| AuditError::Json {
        path: path.to_path_buf(),
        source,
    })
}
