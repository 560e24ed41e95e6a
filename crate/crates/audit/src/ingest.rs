//! Reading corpus files from disk.

use std::path::Path;

use transaudit_core::{Corpus, IngestFormat, SourceLanguage};

use crate::error::AuditError;

/// Read one corpus file. Every line must be valid UTF-8; the first bad line
/// is reported by number.
pub fn read_corpus(
    path: &Path,
    language: SourceLanguage,
    format: &IngestFormat,
) -> Result<Corpus, AuditError> {
    let bytes = std::fs::read(path).map_err(|e| AuditError::io(path, e))?;
    let text = decode(&bytes).map_err(|line| AuditError::Encoding {
        path: path.to_path_buf(),
        line,
    })?;
    Ok(Corpus::from_text(
        text,
        language,
        format,
        &path.display().to_string(),
    ))
}

/// Read several files into one corpus, in argument order.
pub fn read_corpora(
    paths: &[impl AsRef<Path>],
    language: SourceLanguage,
    format: &IngestFormat,
) -> Result<Corpus, AuditError> {
    let mut merged: Option<Corpus> = None;
    for path in paths {
        let corpus = read_corpus(path.as_ref(), language, format)?;
        match &mut merged {
            Some(m) => m.extend(corpus),
            None => merged = Some(corpus),
        }
    }
    merged.ok_or_else(|| AuditError::Usage("no input files".into()))
}

/// The whole text, or the 1-based number of the first line that is not UTF-8.
fn decode(bytes: &[u8]) -> Result<&str, usize> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        valid.iter().filter(|b| **b == b'\n').count() + 1
    })
}
