//! File loading and name resolution.

use std::fs;
use std::path::Path;

use idemgen::biorder::{extract_biorder, Biorder};
use idemgen::group::{normalize_presentation, GroupPresentation, NormalizedPresentation};
use idemgen::table::MulTable;
use idemgen::{Error, Result};
use serde_json::Value;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn table(path: &Path) -> Result<MulTable> {
    MulTable::from_json(&read(path)?)
}

/// A biorder file, or a table whose biorder is extracted.
pub fn biorder(path: &Path) -> Result<Biorder> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("table").is_some() {
        extract_biorder(&MulTable::from_json(&text)?)
    } else {
        Biorder::from_json(&text)
    }
}

pub fn presentation(path: &Path) -> Result<GroupPresentation> {
    GroupPresentation::from_json(&read(path)?)
}

/// A normalized presentation as is, or a plain one normalized.
pub fn normalized(path: &Path) -> Result<NormalizedPresentation> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("triples").is_some() {
        NormalizedPresentation::from_json(&text)
    } else {
        normalize_presentation(&GroupPresentation::from_json(&text)?)
    }
}

pub fn label(labels: &[String], name: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}
