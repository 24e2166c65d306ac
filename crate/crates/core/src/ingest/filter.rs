use std::collections::BTreeSet;

use serde::Serialize;

use super::{BiblioRecord, IngestError};

/// Inclusive year range; `min <= max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct YearRange {
    min: i32,
    max: i32,
}

impl YearRange {
    pub fn new(min: i32, max: i32) -> Result<Self, IngestError> {
        if min > max {
            return Err(IngestError::InvalidYearRange { min, max });
        }
        Ok(YearRange { min, max })
    }

    pub fn all() -> Self {
        YearRange {
            min: i32::MIN,
            max: i32::MAX,
        }
    }

    pub fn min(&self) -> i32 {
        self.min
    }

    pub fn max(&self) -> i32 {
        self.max
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.min..=self.max).contains(&year)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum FilterReason {
    ExcludedJournal { journal: String },
    OutOfRange { year: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterEntry {
    pub id: String,
    #[serde(flatten)]
    pub reason: FilterReason,
}

/// Records sorted by `(year, id)` plus where they came from and what was
/// dropped on the way.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub records: Vec<BiblioRecord>,
    pub source: String,
    pub filter_log: Vec<FilterEntry>,
}

impl Corpus {
    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn year_span(&self) -> Option<(i32, i32)> {
        let first = self.records.first()?.year;
        let last = self.records.last()?.year;
        Some((first, last))
    }
}

/// Drop records from excluded journals (case-insensitive exact match) or
/// outside `years`. Every removal is logged in input order.
pub fn filter_corpus(
    records: Vec<BiblioRecord>,
    excluded_journals: &BTreeSet<String>,
    years: YearRange,
) -> Corpus {
    let excluded: BTreeSet<String> = excluded_journals
        .iter()
        .map(|j| super::normalize_journal(j))
        .collect();
    let mut kept = Vec::with_capacity(records.len());
    let mut filter_log = Vec::new();
    for record in records {
        let journal = super::normalize_journal(&record.journal);
        if excluded.contains(&journal) {
            filter_log.push(FilterEntry {
                id: record.id,
                reason: FilterReason::ExcludedJournal {
                    journal: record.journal,
                },
            });
        } else if !years.contains(record.year) {
            filter_log.push(FilterEntry {
                id: record.id,
                reason: FilterReason::OutOfRange { year: record.year },
            });
        } else {
            kept.push(record);
        }
    }
    kept.sort_by(|a, b| (a.year, &a.id).cmp(&(b.year, &b.id)));
    Corpus {
        records: kept,
        source: String::new(),
        filter_log,
    }
}
