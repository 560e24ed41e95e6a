//! Command-line front end for `transaudit-core`: file ingestion, config
//! loading, a parallel pipeline and report rendering.

pub mod cli;
pub mod config;
pub mod error;
pub mod ingest;
pub mod pipeline;
pub mod render;

pub use error::AuditError;
pub use render::ReportFormat;
