//! Resolving catalog names, files and inline JSON.

use std::path::Path;

use coordlens_core::catalog::{self, CatalogEntry};
use coordlens_core::groups::{FiniteGroup, Provenance};
use coordlens_core::logic::FiniteStructure;
use serde_json::Value;

use crate::error::CliError;

/// Treated as a path: has a separator or a `.json` suffix, or names an existing file.
fn looks_like_path(arg: &str) -> bool {
    arg.contains('/') || arg.contains('\\') || arg.ends_with(".json") || Path::new(arg).is_file()
}

pub fn read_json_file(path: &str) -> Result<Value, CliError> {
    let p = Path::new(path);
    if !p.exists() {
        return Err(CliError::FileNotFound(p.to_path_buf()));
    }
    let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(p.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

/// Inline JSON when the argument starts with `{`, otherwise a file.
pub fn json_arg(arg: &str) -> Result<Value, CliError> {
    if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map_err(|e| CliError::Parse(format!("inline JSON: {e}")))
    } else {
        read_json_file(arg)
    }
}

/// `{ "name", "labels", "table": [[..], ..] }`.
fn group_from_json(v: &Value, fallback: &str) -> Result<FiniteGroup, CliError> {
    let name = v.get("name").and_then(Value::as_str).unwrap_or(fallback);
    let rows: Vec<Vec<u32>> = serde_json::from_value(
        v.get("table").cloned().ok_or_else(|| CliError::Parse("group file needs a `table`".into()))?,
    )?;
    let n = rows.len();
    let labels: Vec<String> = match v.get("labels") {
        Some(l) => serde_json::from_value(l.clone())?,
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse("group table must be square".into()));
    }
    Ok(FiniteGroup::from_table(name, rows.concat(), labels, Provenance::Table)?)
}

pub fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if looks_like_path(arg) {
        return group_from_json(&read_json_file(arg)?, arg);
    }
    let entry = catalog::lookup(arg)?;
    entry.group().cloned().ok_or_else(|| CliError::Input(format!("`{arg}` is not a group")))
}

/// A group table file, a structure file, or any catalog entry.
pub fn load_structure(arg: &str) -> Result<(String, FiniteStructure), CliError> {
    if looks_like_path(arg) {
        let v = read_json_file(arg)?;
        if v.get("table").is_some() {
            let g = group_from_json(&v, arg)?;
            return Ok((g.name().to_string(), g.as_structure()));
        }
        return Ok((arg.to_string(), FiniteStructure::from_json(&v)?));
    }
    let entry: CatalogEntry = catalog::lookup(arg)?;
    Ok((entry.name.clone(), entry.structure()))
}

/// Splits at commas outside `()` and `[]`: `(12),(123)` has two parts,
/// `(1,2)` one.
pub fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    parts.push(cur.trim().to_string());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_coordinates() {
        assert_eq!(split_top_level("(12),(123)"), vec!["(12)", "(123)"]);
        assert_eq!(split_top_level("((1,2),e), [11;01]"), vec!["((1,2),e)", "[11;01]"]);
        assert_eq!(split_top_level("e"), vec!["e"]);
    }
}
