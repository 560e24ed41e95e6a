//! Parallel analysis over a bounded worker pool.
//!
//! Examples are analyzed independently and folded in corpus order, so the
//! result never depends on the number of workers.

use rayon::prelude::*;
use transaudit_core::report::{
    analyze_example, assemble, AuditOptions, AuditReport, ExampleAnalysis,
};
use transaudit_core::{Corpus, ElementaryCatalog, SymbolSpec};

use crate::error::AuditError;

pub fn audit(
    corpus: &Corpus,
    spec: &SymbolSpec,
    catalog: &ElementaryCatalog,
    options: &AuditOptions,
    jobs: usize,
) -> Result<AuditReport, AuditError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| AuditError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let analyses: Vec<ExampleAnalysis> = pool.install(|| {
        corpus
            .examples
            .par_iter()
            .map(|e| analyze_example(e, spec, catalog, options))
            .collect()
    });
    Ok(assemble(corpus, spec, catalog, options, &analyses))
}

/// The first `n` examples, or an error if there are fewer.
pub fn truncate(corpus: &Corpus, n: Option<usize>) -> Result<Corpus, AuditError> {
    let Some(n) = n else {
        return Ok(corpus.clone());
    };
    if n > corpus.len() {
        return Err(AuditError::Usage(format!(
            "--first {n} exceeds the corpus size {}",
            corpus.len()
        )));
    }
    let mut out = corpus.clone();
    out.examples.truncate(n);
    Ok(out)
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
