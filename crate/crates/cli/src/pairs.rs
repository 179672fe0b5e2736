//! Pair sources for `--pairs default|file.csv`.

use std::path::Path;

use meanlab::PositivePair;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct Row {
    x: f64,
    y: f64,
}

/// Reads a CSV file with header `x,y`.
pub fn read_pairs_csv(path: &Path) -> Result<Vec<PositivePair<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(CliError::Usage(format!(
            "{}: expected header `x,y`, got `{}`",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut pairs = Vec::new();
    for row in reader.deserialize::<Row>() {
        let row = row?;
        pairs.push(PositivePair::new(row.x, row.y)?);
    }
    if pairs.is_empty() {
        return Err(CliError::Usage(format!("{}: no pairs", path.display())));
    }
    Ok(pairs)
}

/// `default` selects `fallback`; anything else is a CSV path.
pub fn resolve_pairs(
    spec: &str,
    fallback: impl FnOnce() -> Vec<PositivePair<f64>>,
) -> Result<Vec<PositivePair<f64>>, CliError> {
    if spec == "default" {
        Ok(fallback())
    } else {
        read_pairs_csv(Path::new(spec))
    }
}
