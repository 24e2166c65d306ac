//! Year windows and per-window documents x attributes incidence matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{normalize_author, normalize_journal, BiblioRecord, Corpus, StopwordSet, NO_JOURNAL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("year {year} precedes origin {origin}")]
    YearBeforeOrigin { year: i32, origin: i32 },
    #[error("window length must be at least 1, got {0}")]
    InvalidLength(i32),
    #[error("window {0} has no surviving documents")]
    EmptyWindow(String),
}

/// A fixed-length, inclusive span of years.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TimeWindow {
    pub index: usize,
    pub start_year: i32,
    pub end_year: i32,
    pub label: String,
}

impl TimeWindow {
    pub fn new(index: usize, start_year: i32, length: i32) -> Self {
        let end_year = start_year + length - 1;
        TimeWindow {
            index,
            start_year,
            end_year,
            label: format!("{start_year}-{end_year}"),
        }
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start_year..=self.end_year).contains(&year)
    }
}

pub fn window_of(year: i32, origin: i32, length: i32) -> Result<TimeWindow, WindowError> {
    if length < 1 {
        return Err(WindowError::InvalidLength(length));
    }
    if year < origin {
        return Err(WindowError::YearBeforeOrigin { year, origin });
    }
    let index = (year - origin) / length;
    Ok(TimeWindow::new(index as usize, origin + index * length, length))
}

/// Windows from `origin` through the window containing `last_year`.
pub fn windows_through(origin: i32, length: i32, last_year: i32) -> Result<Vec<TimeWindow>, WindowError> {
    let last = window_of(last_year, origin, length)?;
    Ok((0..=last.index)
        .map(|i| TimeWindow::new(i, origin + i as i32 * length, length))
        .collect())
}

/// Declaration order is the column order within a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Word,
    Author,
    Journal,
    Anchor,
}

impl AttributeKind {
    pub const ALL: [AttributeKind; 4] = [
        AttributeKind::Word,
        AttributeKind::Author,
        AttributeKind::Journal,
        AttributeKind::Anchor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AttributeKind::Word => "word",
            AttributeKind::Author => "author",
            AttributeKind::Journal => "journal",
            AttributeKind::Anchor => "anchor",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        AttributeKind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Whether an attribute of this kind keeps a document in the matrix.
    fn retains_document(self) -> bool {
        matches!(self, AttributeKind::Word | AttributeKind::Author)
    }
}

/// A typed network node. `(kind, label)` identifies the node in every window.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Attribute {
    pub kind: AttributeKind,
    pub label: String,
}

impl Attribute {
    pub fn new(kind: AttributeKind, label: impl Into<String>) -> Self {
        Attribute {
            kind,
            label: label.into(),
        }
    }

    pub fn word(label: impl Into<String>) -> Self {
        Self::new(AttributeKind::Word, label)
    }

    pub fn author(label: impl Into<String>) -> Self {
        Self::new(AttributeKind::Author, label)
    }

    pub fn journal(label: impl Into<String>) -> Self {
        Self::new(AttributeKind::Journal, label)
    }

    /// Inverse of `Display`: `kind:label`.
    pub fn parse_key(key: &str) -> Option<Self> {
        let (kind, label) = key.split_once(':')?;
        let kind = AttributeKind::parse(kind)?;
        (!label.is_empty()).then(|| Attribute::new(kind, label))
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.as_str(), self.label)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ExtractOptions {
    /// Keep intra-word hyphens ("co-word") instead of splitting on them.
    pub keep_hyphens: bool,
}


/// Lowercased title tokens with stopwords and one-character tokens removed.
pub fn title_words(title: &str, stopwords: &StopwordSet, opts: ExtractOptions) -> Vec<String> {
    let is_sep = |c: char| !(c.is_alphanumeric() || (opts.keep_hyphens && c == '-'));
    title
        .split(is_sep)
        .map(|t| t.trim_matches('-'))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .filter(|t| t.chars().count() >= 2 && !stopwords.contains(t))
        .collect()
}

/// Attributes of one record with multiplicities: words keep token counts,
/// each author and the journal count once.
pub fn extract_attributes(
    record: &BiblioRecord,
    stopwords: &StopwordSet,
    opts: ExtractOptions,
) -> BTreeMap<Attribute, u32> {
    let mut out = BTreeMap::new();
    for w in title_words(&record.title, stopwords, opts) {
        *out.entry(Attribute::word(w)).or_insert(0) += 1;
    }
    for a in &record.authors {
        let name = normalize_author(a);
        if !name.is_empty() {
            out.insert(Attribute::author(name), 1);
        }
    }
    let journal = normalize_journal(&record.journal);
    if !journal.is_empty() && journal != NO_JOURNAL {
        out.insert(Attribute::journal(journal), 1);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceOptions {
    /// Minimum document frequency per window.
    pub min_occ: u32,
    /// Author label added as a constant column to every surviving document.
    pub anchor: Option<String>,
    /// Store 0/1 presence instead of token counts.
    pub binarize: bool,
    pub extract: ExtractOptions,
}

impl Default for IncidenceOptions {
    fn default() -> Self {
        IncidenceOptions {
            min_occ: 2,
            anchor: None,
            binarize: false,
            extract: ExtractOptions::default(),
        }
    }
}

/// Documents (rows) x attributes (columns) for one window, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub window: TimeWindow,
    pub documents: Vec<String>,
    pub attributes: Vec<Attribute>,
    counts: Vec<u32>,
}

impl IncidenceMatrix {
    pub fn empty(window: TimeWindow) -> Self {
        IncidenceMatrix {
            window,
            documents: Vec::new(),
            attributes: Vec::new(),
            counts: Vec::new(),
        }
    }

    /// Build from explicit rows; `rows[i][j]` is the count of attribute `j`
    /// in document `i`.
    pub fn from_rows(
        window: TimeWindow,
        documents: Vec<String>,
        attributes: Vec<Attribute>,
        rows: &[Vec<u32>],
    ) -> Self {
        assert_eq!(rows.len(), documents.len(), "row count");
        let mut counts = Vec::with_capacity(documents.len() * attributes.len());
        for row in rows {
            assert_eq!(row.len(), attributes.len(), "column count");
            counts.extend_from_slice(row);
        }
        IncidenceMatrix {
            window,
            documents,
            attributes,
            counts,
        }
    }

    pub fn n_docs(&self) -> usize {
        self.documents.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, doc: usize, attr: usize) -> u32 {
        self.counts[doc * self.attributes.len() + attr]
    }

    pub fn column(&self, attr: usize) -> Vec<f64> {
        (0..self.n_docs()).map(|d| self.get(d, attr) as f64).collect()
    }

    pub fn count_kind(&self, kind: AttributeKind) -> usize {
        self.attributes.iter().filter(|a| a.kind == kind).count()
    }

    /// Tab-separated dump: header `id` then `kind:label` per column.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id");
        for a in &self.attributes {
            out.push('\t');
            out.push_str(&a.to_string());
        }
        out.push('\n');
        for (d, id) in self.documents.iter().enumerate() {
            out.push_str(id);
            for a in 0..self.n_attributes() {
                out.push('\t');
                out.push_str(&self.get(d, a).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Greatest subset of documents in which every kept document holds at least
/// one Word/Author attribute with document frequency >= `min_occ`, together
/// with the attributes that reach `min_occ` over that subset.
///
/// Dropping documents only lowers document frequencies, so iterating the
/// two filters from the full set converges to that subset.
pub fn stable_filter(
    docs: &[BTreeMap<Attribute, u32>],
    min_occ: u32,
) -> (Vec<usize>, BTreeSet<Attribute>) {
    let mut active: Vec<usize> = (0..docs.len()).collect();
    loop {
        let mut df: BTreeMap<&Attribute, u32> = BTreeMap::new();
        for &d in &active {
            for a in docs[d].keys() {
                *df.entry(a).or_insert(0) += 1;
            }
        }
        let surviving: BTreeSet<Attribute> = df
            .into_iter()
            .filter(|&(_, n)| n >= min_occ)
            .map(|(a, _)| a.clone())
            .collect();
        let next: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&d| {
                docs[d]
                    .keys()
                    .any(|a| a.kind.retains_document() && surviving.contains(a))
            })
            .collect();
        if next.len() == active.len() {
            return (active, surviving);
        }
        active = next;
    }
}

/// Incidence matrix of one window after min-occurrence filtering, empty
/// document removal (to a fixed point) and optional anchor injection.
pub fn build_incidence(
    corpus: &Corpus,
    window: &TimeWindow,
    stopwords: &StopwordSet,
    opts: &IncidenceOptions,
) -> Result<IncidenceMatrix, WindowError> {
    let anchor = opts
        .anchor
        .as_deref()
        .map(normalize_author)
        .filter(|a| !a.is_empty());

    let mut records: Vec<&BiblioRecord> = corpus
        .records
        .iter()
        .filter(|r| window.contains(r.year))
        .collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));

    let docs: Vec<BTreeMap<Attribute, u32>> = records
        .iter()
        .map(|r| {
            let mut attrs = extract_attributes(r, stopwords, opts.extract);
            // The anchor author is represented by the anchor column only.
            if let Some(anchor) = &anchor {
                attrs.remove(&Attribute::author(anchor.clone()));
            }
            attrs
        })
        .collect();

    let (active, surviving) = stable_filter(&docs, opts.min_occ.max(1));
    if active.is_empty() {
        return Err(WindowError::EmptyWindow(window.label.clone()));
    }

    let mut attributes: Vec<Attribute> = surviving.into_iter().collect();
    if let Some(anchor) = anchor {
        attributes.push(Attribute::new(AttributeKind::Anchor, anchor));
    }
    attributes.sort();

    let rows: Vec<Vec<u32>> = active
        .iter()
        .map(|&d| {
            attributes
                .iter()
                .map(|a| {
                    let n = if a.kind == AttributeKind::Anchor {
                        1
                    } else {
                        docs[d].get(a).copied().unwrap_or(0)
                    };
                    if opts.binarize {
                        n.min(1)
                    } else {
                        n
                    }
                })
                .collect()
        })
        .collect();
    let documents = active.iter().map(|&d| records[d].id.clone()).collect();
    Ok(IncidenceMatrix::from_rows(window.clone(), documents, attributes, &rows))
}
