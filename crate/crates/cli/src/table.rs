//! Reading numeric columns and key files.

use std::fs;
use std::path::Path;

use newsort_core::{Key, KeyMode, KeyVec};

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Two numeric columns of a headed CSV, by name.
pub fn read_xy(path: &Path, xcol: &str, ycol: &str) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?
        .clone();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            let have: Vec<&str> = headers.iter().collect();
            Failure(format!(
                "{}: no column `{name}` (have {})",
                path.display(),
                have.join(", ")
            ))
        })
    };
    let (xi, yi) = (column(xcol)?, column(ycol)?);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize, name: &str| -> Result<f64, Failure> {
            let v = record.get(i).unwrap_or("");
            v.parse().map_err(|_| {
                Failure(format!(
                    "{}: line {line}: `{v}` in column `{name}` is not a number",
                    path.display()
                ))
            })
        };
        xs.push(cell(xi, xcol)?);
        ys.push(cell(yi, ycol)?);
    }
    Ok((xs, ys))
}

/// A key file: an optional `key` header, then one key per line.
pub struct KeyFile {
    pub keys: KeyVec,
    pub has_header: bool,
}

pub fn read_keys(path: &Path, mode: KeyMode) -> Result<KeyFile, Failure> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut keys = KeyVec::with_capacity(mode, 0);
    let mut has_header = false;
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(idx as u64 + 1, |p| p.line());
        let value = record.get(0).unwrap_or("");
        if idx == 0 && value == "key" {
            has_header = true;
            continue;
        }
        if record.len() != 1 {
            return Err(Failure(format!("{}: line {line}: expected one column", path.display())));
        }
        let key = Key::parse(value, mode).map_err(|e| Failure(format!("{}: line {line}: {e}", path.display())))?;
        keys.push(key);
    }
    Ok(KeyFile { keys, has_header })
}

pub fn write_keys(keys: &KeyVec, header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str("key\n");
    }
    for k in keys.iter() {
        out.push_str(&k.to_string());
        out.push('\n');
    }
    out
}
