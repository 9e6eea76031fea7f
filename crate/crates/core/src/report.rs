//! Report emission: stable JSON (rationals as `p/q` strings), TSV mirrors,
//! atomic writes.

use std::fs;
use std::path::Path;

use serde::ser::Serializer;
use serde::Serialize;

use crate::error::Error;
use crate::rational::{format_rational, Rational};

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Writes pretty JSON via a temp file and rename, so partial output never
/// lands under the final name.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, &text)
}

pub fn write_atomic(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Joins rows of cells into a TSV body with a trailing newline.
pub fn tsv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}
