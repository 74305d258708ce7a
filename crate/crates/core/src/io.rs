//! Instance file formats: plain text (one string per line) and FASTA.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty instance")]
    Empty,
    #[error("blank line at line {0}")]
    BlankLine(usize),
    #[error("non-alphanumeric character {ch:?} at line {line}")]
    BadCharacter { line: usize, ch: char },
    #[error("FASTA: sequence data before the first '>' header at line {0}")]
    DataBeforeHeader(usize),
    #[error("FASTA: record {0:?} has no sequence")]
    EmptyRecord(String),
}

fn check_chars(s: &str, line: usize) -> Result<(), FormatError> {
    match s.chars().find(|c| !c.is_ascii_alphanumeric()) {
        Some(ch) => Err(FormatError::BadCharacter { line, ch }),
        None => Ok(()),
    }
}

/// Parse the plain-text format: one `[A-Za-z0-9]+` string per line, no
/// blank lines, no header. A trailing newline is allowed.
pub fn parse_instance_text(text: &str) -> Result<Vec<String>, FormatError> {
    let mut strings = Vec::new();
    let lines: Vec<&str> = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let last_content = lines.iter().rposition(|l| !l.is_empty());
    let Some(last) = last_content else { return Err(FormatError::Empty) };
    for (i, line) in lines[..=last].iter().enumerate() {
        if line.is_empty() {
            return Err(FormatError::BlankLine(i + 1));
        }
        check_chars(line, i + 1)?;
        strings.push(line.to_string());
    }
    Ok(strings)
}

/// Serialize in the plain-text format.
pub fn write_instance_text(strings: &[String]) -> String {
    let mut out = String::new();
    for s in strings {
        out.push_str(s);
        out.push('\n');
    }
    out
}

/// One FASTA record: the identifier (first token after `>`) and the
/// concatenated sequence, normalized to uppercase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub id: String,
    pub sequence: String,
}

/// Parse FASTA: `>` lines start records (description beyond the first token
/// is ignored), sequence lines are concatenated and uppercased.
pub fn parse_fasta(text: &str) -> Result<Vec<FastaRecord>, FormatError> {
    let mut records: Vec<FastaRecord> = Vec::new();
    let mut open = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            records.push(FastaRecord { id, sequence: String::new() });
            open = true;
        } else {
            if !open {
                return Err(FormatError::DataBeforeHeader(i + 1));
            }
            check_chars(line, i + 1)?;
            records.last_mut().unwrap().sequence.push_str(&line.to_ascii_uppercase());
        }
    }
    if records.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some(r) = records.iter().find(|r| r.sequence.is_empty()) {
        return Err(FormatError::EmptyRecord(r.id.clone()));
    }
    Ok(records)
}
