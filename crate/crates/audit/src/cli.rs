//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use transaudit_core::report::{diff, AuditOptions, AuditReport};
use transaudit_core::{Corpus, IngestFormat, Markers, SourceLanguage};

use crate::config::{load_catalog, load_json, load_symbols};
use crate::error::AuditError;
use crate::ingest::read_corpora;
use crate::pipeline::{self, default_jobs};
use crate::render::{self, ReportFormat};

#[derive(Debug, Parser)]
#[command(
    name = "transaudit",
    version,
    about = "Audit one-function-per-line translation test corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: occurrences, line counts, tiers, calls and absence flags.
    Audit {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also count raw substrings, literals and comments included.
        #[arg(long)]
        raw_substring: bool,
    },
    /// Occurrence table only.
    Count {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Count raw substrings instead of tokens.
        #[arg(long)]
        raw_substring: bool,
    },
    /// Tier histogram only.
    Classify {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Classify only the first N examples.
        #[arg(long, value_name = "N")]
        first: Option<usize>,
    },
    /// Signed deltas between two JSON audit reports (right minus left).
    Diff {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One example per line, tokens separated by spaces.
    TokenizedLines,
    /// Each file is one ordinary source file.
    PlainSource,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Corpus files; several files are concatenated in order.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Source language: java, cpp or python.
    #[arg(long)]
    pub lang: SourceLanguage,
    #[arg(long, value_enum, default_value_t = InputFormat::TokenizedLines)]
    pub format: InputFormat,
    /// Split a title off each line at the first occurrence of this string.
    #[arg(long, value_name = "SEP")]
    pub title_sep: Option<String>,
    /// Marker tokens of the tokenized format.
    #[arg(long, default_value = "NEW_LINE")]
    pub newline_marker: String,
    #[arg(long, default_value = "INDENT")]
    pub indent_marker: String,
    #[arg(long, default_value = "DEDENT")]
    pub dedent_marker: String,
    /// Symbol spec file, one `<name> <Kind>[,<Kind>...]` per line.
    #[arg(long, value_name = "PATH")]
    pub symbols: Option<PathBuf>,
    /// Elementary catalog JSON.
    #[arg(long, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
    /// Exit 3 on absence-flag violations or any diagnostic.
    #[arg(long)]
    pub strict: bool,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub report_format: ReportFormat,
}

impl CorpusArgs {
    fn ingest_format(&self) -> IngestFormat {
        match self.format {
            InputFormat::PlainSource => IngestFormat::PlainSource,
            InputFormat::TokenizedLines => IngestFormat::TokenizedLines {
                title_separator: self.title_sep.clone(),
                markers: Markers {
                    newline: self.newline_marker.clone(),
                    indent: self.indent_marker.clone(),
                    dedent: self.dedent_marker.clone(),
                },
            },
        }
    }

    fn read(&self) -> Result<Corpus, AuditError> {
        read_corpora(&self.inputs, self.lang, &self.ingest_format())
    }

    fn jobs(&self) -> usize {
        self.jobs.map_or_else(default_jobs, usize::from)
    }
}

/// Parse `args` (program name first), run, and return the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            // clap's first paragraph, folded onto one line.
            let rendered = e.to_string();
            let paragraph: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let joined = paragraph.join(" ");
            let message = joined.strip_prefix("error: ").unwrap_or(&joined);
            let _ = writeln!(stderr, "error[E_USAGE]: {message} (see --help)");
            return 1;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.tag());
            e.exit_code()
        }
    }
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), AuditError> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| AuditError::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| AuditError::io("<stdout>", e)),
    }
}

fn check_strict(strict: bool, report: &AuditReport) -> Result<(), AuditError> {
    if !strict {
        return Ok(());
    }
    let violations: Vec<String> = report
        .violations()
        .map(|f| format!("`{}` found {} times", f.symbol, f.observed_count))
        .collect();
    if !violations.is_empty() {
        return Err(AuditError::Strict(format!(
            "absence violated: {}",
            violations.join(", ")
        )));
    }
    check_diagnostics(strict, report)
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), AuditError> {
    match cli.command {
        Command::Audit {
            corpus,
            output,
            raw_substring,
        } => {
            let report = analyze(&corpus, raw_substring, None)?;
            let text = match output.report_format {
                ReportFormat::Json => render::json(&report),
                ReportFormat::Csv => render::csv(&render::report_rows(&report)),
                ReportFormat::Markdown => render::report_markdown(&report),
            };
            emit(&output, &text, stdout)?;
            check_strict(corpus.strict, &report)
        }
        Command::Count {
            corpus,
            output,
            raw_substring,
        } => {
            let report = analyze(&corpus, raw_substring, None)?;
            let table = match &report.raw_occurrence_table {
                Some(raw) if raw_substring => raw,
                _ => &report.occurrence_table,
            };
            let text = match output.report_format {
                ReportFormat::Json => render::json(table),
                ReportFormat::Csv => render::csv(&render::table_csv_rows(table)),
                ReportFormat::Markdown => render::table_markdown(table),
            };
            emit(&output, &text, stdout)?;
            check_diagnostics(corpus.strict, &report)
        }
        Command::Classify {
            corpus,
            output,
            first,
        } => {
            let report = analyze(&corpus, false, first)?;
            let h = &report.tier_histogram;
            let text = match output.report_format {
                ReportFormat::Json => render::json(h),
                ReportFormat::Csv => render::csv(&render::tier_csv_rows(h)),
                ReportFormat::Markdown => render::tier_markdown_doc(h),
            };
            emit(&output, &text, stdout)?;
            check_diagnostics(corpus.strict, &report)
        }
        Command::Diff {
            left,
            right,
            output,
        } => {
            let (l, r) = (read_report(&left)?, read_report(&right)?);
            let d = diff(&l, &r)?;
            let text = match output.report_format {
                ReportFormat::Json => render::json(&d),
                ReportFormat::Csv => render::csv(&render::diff_rows(&d)),
                ReportFormat::Markdown => render::diff_markdown(&d),
            };
            emit(&output, &text, stdout)
        }
    }
}

fn check_diagnostics(strict: bool, report: &AuditReport) -> Result<(), AuditError> {
    match report.diagnostics.first() {
        Some(first) if strict => Err(AuditError::Strict(format!(
            "{} diagnostics, first: {first}",
            report.diagnostics.len()
        ))),
        _ => Ok(()),
    }
}

fn read_report(path: &Path) -> Result<AuditReport, AuditError> {
    load_json(path)
}

fn analyze(
    args: &CorpusArgs,
    raw_substring: bool,
    first: Option<usize>,
) -> Result<AuditReport, AuditError> {
    let spec = load_symbols(args.symbols.as_deref())?;
    let catalog = load_catalog(args.catalog.as_deref())?;
    let corpus = pipeline::truncate(&args.read()?, first)?;
    let options = AuditOptions {
        raw_substring,
        ..AuditOptions::default()
    };
    pipeline::audit(&corpus, &spec, &catalog, &options, args.jobs())
}
