use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use entcard_core::{GroundElement, IndexSet, PointSet, RationalDist, RuzsaVector, Subject};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Reads and parses a JSON file. Parse failures name the offending field
/// path together with the line and column.
pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("invalid input in {}", path.display()))
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize(de) {
        Ok(v) => Ok(v),
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                bail!("{inner}")
            }
            bail!("field `{path}`: {inner}")
        }
    }
}

/// A distribution (`"support"` key) or a point set (`"points"` key).
pub fn read_subject(path: &Path) -> Result<Subject> {
    let value: Value = read(path)?;
    let text = value.to_string();
    let key = |k: &str| value.get(k).is_some();
    let subject = if key("support") {
        Subject::Dist(parse::<RationalDist>(&text)?)
    } else if key("points") {
        Subject::Set(parse::<PointSet>(&text)?)
    } else {
        bail!("{}: expected a distribution (\"support\") or a point set (\"points\")", path.display())
    };
    Ok(subject)
}

/// Parses `1,3,4` into an index set; an empty string is the empty set.
pub fn index_set(text: &str) -> Result<IndexSet> {
    let indices = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad index `{t}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexSet::new(indices)?)
}

pub fn u64_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().with_context(|| format!("bad integer `{t}`")))
        .collect()
}

/// A vector of ground elements, given inline as JSON or as a file path.
pub fn vector(text: &str) -> Result<RuzsaVector> {
    let entries: Vec<GroundElement> = if text.trim_start().starts_with('[') {
        parse(text).context("invalid inline vector")?
    } else {
        read(Path::new(text))?
    };
    Ok(RuzsaVector(entries))
}

/// `{"support": [...], "weights": [floats]}` for the rationalize command.
#[derive(serde::Deserialize)]
pub struct WeightsInput {
    pub support: Vec<GroundElement>,
    pub weights: Vec<f64>,
}
