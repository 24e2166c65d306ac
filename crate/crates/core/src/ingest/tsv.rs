//! Minimal TSV fallback: `id  year  journal  title  authors` with authors
//! separated by `;`. An optional header row starting with `id` is skipped.

use std::collections::HashSet;

use super::{finish_record, BiblioRecord, IngestError};

pub fn parse_tsv(text: &str) -> Result<Vec<BiblioRecord>, IngestError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if idx == 0 && cols[0].trim().eq_ignore_ascii_case("id") {
            continue;
        }
        if cols.len() != 5 {
            return Err(IngestError::malformed(
                line_no,
                format!("expected 5 tab-separated columns, found {}", cols.len()),
            ));
        }
        let year: i32 = cols[1].trim().parse().map_err(|_| {
            IngestError::malformed(line_no, format!("unparseable year {:?}", cols[1]))
        })?;
        let id = match cols[0].trim() {
            "" => format!("R{:04}", records.len() + 1),
            id => id.to_string(),
        };
        if !seen.insert(id.clone()) {
            return Err(IngestError::malformed(line_no, format!("duplicate record id {id:?}")));
        }
        let authors = cols[4].split(';').map(str::to_string).collect();
        records.push(finish_record(
            line_no,
            id,
            authors,
            cols[3].to_string(),
            cols[2].to_string(),
            year,
        )?);
    }
    Ok(records)
}
