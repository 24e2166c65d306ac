//! Bibliographic ingestion: field-tagged and TSV parsers, stopword lists and
//! corpus-level filters.

mod filter;
mod stopwords;
mod tagged;
mod tsv;

use serde::Serialize;
use thiserror::Error;

pub use filter::{filter_corpus, Corpus, FilterEntry, FilterReason, YearRange};
pub use stopwords::{load_stopwords, StopwordSet, DEFAULT_STOPWORDS};
pub use tagged::{parse_field_tagged, render_field_tagged};
pub use tsv::parse_tsv;

/// Journal placeholder for records that carry no venue.
pub const NO_JOURNAL: &str = "(NONE)";

/// One publication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiblioRecord {
    pub id: String,
    pub authors: Vec<String>,
    pub title: String,
    pub journal: String,
    pub year: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("missing EF end-of-file marker")]
    MissingEndOfFile,
    #[error("invalid year range {min}..={max}")]
    InvalidYearRange { min: i32, max: i32 },
}

impl IngestError {
    pub(crate) fn malformed(line: usize, reason: impl Into<String>) -> Self {
        IngestError::MalformedRecord {
            line,
            reason: reason.into(),
        }
    }
}

/// Collapse whitespace runs to single spaces and trim.
pub fn normalize_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// "Garfield, E." -> "GARFIELD E"
pub fn normalize_author(name: &str) -> String {
    let stripped: String = name
        .chars()
        .map(|c| if c == ',' { ' ' } else { c })
        .filter(|&c| c != '.')
        .collect();
    normalize_whitespace(&stripped).to_uppercase()
}

pub fn normalize_journal(name: &str) -> String {
    normalize_whitespace(name).to_uppercase()
}

/// Parse by file extension: `.tsv` selects the TSV fallback, anything else the
/// field-tagged format.
pub fn parse_records(path: &std::path::Path, text: &str) -> Result<Vec<BiblioRecord>, IngestError> {
    let is_tsv = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("tsv"));
    if is_tsv {
        parse_tsv(text)
    } else {
        parse_field_tagged(text)
    }
}

/// Shared record validation for both parsers.
pub(crate) fn finish_record(
    line: usize,
    id: String,
    authors: Vec<String>,
    title: String,
    journal: String,
    year: i32,
) -> Result<BiblioRecord, IngestError> {
    if year <= 0 {
        return Err(IngestError::malformed(line, format!("year {year} is not positive")));
    }
    let authors: Vec<String> = authors
        .iter()
        .map(|a| normalize_author(a))
        .filter(|a| !a.is_empty())
        .collect();
    let title = normalize_whitespace(&title);
    if authors.is_empty() && title.is_empty() {
        return Err(IngestError::malformed(line, "record has neither authors nor title"));
    }
    let journal = normalize_whitespace(&journal);
    let journal = if journal.is_empty() {
        NO_JOURNAL.to_string()
    } else {
        journal
    };
    Ok(BiblioRecord {
        id,
        authors,
        title,
        journal,
        year,
    })
}
