//! ISI / Web of Science plain-text field-tagged export.
//!
//! Lines are either `XY value` (two-character tag, uppercase letter then
//! uppercase letter or digit) or continuations indented by three spaces.
//! Records end with `ER`, the file with `EF`.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{finish_record, normalize_whitespace, BiblioRecord, IngestError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Author,
    Title,
    Journal,
    Year,
    Id,
    Other,
}

enum Line<'a> {
    Blank,
    Tag(&'a str, &'a str),
    Continuation(&'a str),
}

fn classify(line: &str) -> Option<Line<'_>> {
    if line.trim().is_empty() {
        return Some(Line::Blank);
    }
    if let Some(rest) = line.strip_prefix("   ") {
        return Some(Line::Continuation(rest.trim()));
    }
    let bytes = line.as_bytes();
    if bytes.len() >= 2
        && bytes[0].is_ascii_uppercase()
        && (bytes[1].is_ascii_uppercase() || bytes[1].is_ascii_digit())
        && (bytes.len() == 2 || bytes[2] == b' ')
    {
        let value = if bytes.len() > 2 { line[3..].trim() } else { "" };
        return Some(Line::Tag(&line[..2], value));
    }
    None
}

#[derive(Default)]
struct Builder {
    start_line: usize,
    authors: Vec<String>,
    title: Vec<String>,
    journal: Vec<String>,
    year: Option<(usize, String)>,
    id: Option<String>,
}

impl Builder {
    fn push(&mut self, field: Field, value: &str, line: usize) {
        match field {
            Field::Author => {
                if !value.is_empty() {
                    self.authors.push(value.to_string());
                }
            }
            Field::Title => self.title.push(value.to_string()),
            Field::Journal => self.journal.push(value.to_string()),
            Field::Year => self.year = Some((line, value.to_string())),
            Field::Id => self.id = Some(value.to_string()),
            Field::Other => {}
        }
    }
}

fn field_of(tag: &str) -> Field {
    match tag {
        "AU" => Field::Author,
        "TI" => Field::Title,
        "SO" => Field::Journal,
        "PY" => Field::Year,
        "UT" => Field::Id,
        _ => Field::Other,
    }
}

/// Parse a field-tagged export into records, in file order.
pub fn parse_field_tagged(text: &str) -> Result<Vec<BiblioRecord>, IngestError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }

    let mut records = Vec::new();
    let mut seen_ids = HashSet::new();
    let mut current: Option<Builder> = None;
    let mut last_field: Option<Field> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let line = classify(raw)
            .ok_or_else(|| IngestError::malformed(line_no, format!("unrecognized line {raw:?}")))?;
        match line {
            Line::Blank => {}
            Line::Continuation(value) => {
                let field = last_field.ok_or_else(|| {
                    IngestError::malformed(line_no, "continuation line without a preceding tag")
                })?;
                if let Some(b) = current.as_mut() {
                    b.push(field, value, line_no);
                }
            }
            Line::Tag("EF", _) => {
                if let Some(b) = current {
                    return Err(IngestError::malformed(
                        line_no,
                        format!("record starting at line {} has no ER terminator", b.start_line),
                    ));
                }
                return Ok(records);
            }
            Line::Tag("ER", _) => {
                let b = current
                    .take()
                    .ok_or_else(|| IngestError::malformed(line_no, "ER outside of a record"))?;
                last_field = None;
                let (year_line, year_text) = b
                    .year
                    .clone()
                    .ok_or_else(|| IngestError::malformed(line_no, "record has no PY year"))?;
                let year: i32 = year_text.parse().map_err(|_| {
                    IngestError::malformed(year_line, format!("unparseable year {year_text:?}"))
                })?;
                let id = match &b.id {
                    Some(ut) if !ut.is_empty() => ut.clone(),
                    _ => format!("R{:04}", records.len() + 1),
                };
                if !seen_ids.insert(id.clone()) {
                    return Err(IngestError::malformed(line_no, format!("duplicate record id {id:?}")));
                }
                let record = finish_record(
                    line_no,
                    id,
                    b.authors,
                    b.title.join(" "),
                    b.journal.join(" "),
                    year,
                )?;
                records.push(record);
            }
            Line::Tag("FN" | "VR", _) if current.is_none() => {
                last_field = Some(Field::Other);
            }
            Line::Tag(tag, value) => {
                let field = field_of(tag);
                let b = current.get_or_insert_with(|| Builder {
                    start_line: line_no,
                    ..Builder::default()
                });
                if field == Field::Year {
                    // Validate eagerly so the error points at the PY line.
                    if value.parse::<i32>().is_err() {
                        return Err(IngestError::malformed(
                            line_no,
                            format!("unparseable year {value:?}"),
                        ));
                    }
                }
                b.push(field, value, line_no);
                last_field = Some(field);
            }
        }
    }

    match current {
        Some(b) => Err(IngestError::malformed(
            last_line,
            format!("record starting at line {} has no ER terminator", b.start_line),
        )),
        None => Err(IngestError::MissingEndOfFile),
    }
}

/// Canonical field-tagged rendering; `parse_field_tagged` inverts it.
pub fn render_field_tagged(records: &[BiblioRecord]) -> String {
    let mut out = String::from("FN chronogram export\nVR 1.0\n");
    for r in records {
        let _ = writeln!(out, "UT {}", r.id);
        for (i, a) in r.authors.iter().enumerate() {
            let tag = if i == 0 { "AU" } else { "  " };
            let _ = writeln!(out, "{tag} {a}");
        }
        if !r.title.is_empty() {
            let _ = writeln!(out, "TI {}", normalize_whitespace(&r.title));
        }
        let _ = writeln!(out, "SO {}", r.journal);
        let _ = writeln!(out, "PY {}", r.year);
        out.push_str("ER\n\n");
    }
    out.push_str("EF\n");
    out
}
