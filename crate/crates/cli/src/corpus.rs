//! Corpus files: CSV records `label,polynomial`, an optional header line and
//! `#` comments. A line without a comma is an unlabeled polynomial; commas
//! after the first belong to the polynomial, so coefficient lists need no
//! quoting.

use std::io::Read;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    /// 1-based line number in the source.
    pub line: usize,
    pub label: Option<String>,
    pub poly: String,
}

fn is_header(fields: &[String]) -> bool {
    fields.len() >= 2
        && fields[0].trim().eq_ignore_ascii_case("label")
        && fields[1].trim().eq_ignore_ascii_case("polynomial")
}

fn split_line(text: &str) -> Result<Vec<String>, csv::Error> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    match rdr.records().next() {
        Some(rec) => Ok(rec?.iter().map(str::to_string).collect()),
        None => Ok(Vec::new()),
    }
}

pub fn read_corpus<R: Read>(mut reader: R) -> Result<Vec<CorpusRecord>, csv::Error> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut out = Vec::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields = split_line(trimmed)?;
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if std::mem::take(&mut first) && is_header(&fields) {
            continue;
        }
        let (label, poly) = if fields.len() == 1 {
            (None, fields[0].clone())
        } else {
            let label = Some(fields[0].clone()).filter(|l| !l.is_empty());
            (label, fields[1..].join(","))
        };
        out.push(CorpusRecord { line: i + 1, label, poly });
    }
    Ok(out)
}
