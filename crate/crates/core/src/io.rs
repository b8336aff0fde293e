//! Reading command inputs: inline JSON literals, JSON files and CSV
//! distribution files, with errors sorted into "malformed file" and
//! "invalid content".

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::classical::Distribution;
use crate::error::Error;
use crate::quantum::DensityMatrix;

/// Why an input could not be used.
#[derive(Debug)]
pub enum InputError {
    /// The file could not be read or is not syntactically valid JSON/CSV.
    Malformed(String),
    /// The input parsed but does not describe a valid object.
    Invalid(String),
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Malformed(m) | InputError::Invalid(m) => f.write_str(m),
        }
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Raw JSON from exactly one of an inline literal or a file; `None` when
/// neither was given.
pub fn read_value(
    name: &str,
    inline: Option<&str>,
    file: Option<&Path>,
) -> Result<Option<Value>, InputError> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(InputError::Invalid(format!(
            "--{name} and --{name}-file are mutually exclusive"
        ))),
        (Some(text), None) => serde_json::from_str(text)
            .map(Some)
            .map_err(|e| InputError::Invalid(format!("--{name}: {e}"))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError::Malformed(format!("{}: {e}", path.display())))?;
            if is_csv(path) {
                return csv_distribution(&text)
                    .map(Some)
                    .map_err(|e| InputError::Malformed(format!("{}: {e}", path.display())));
            }
            serde_json::from_str(&text)
                .map(Some)
                .map_err(|e| InputError::Malformed(format!("{}: {e}", path.display())))
        }
        (None, None) => Ok(None),
    }
}

/// Like [`read_value`] but the input is mandatory.
pub fn require_value(
    name: &str,
    inline: Option<&str>,
    file: Option<&Path>,
) -> Result<Value, InputError> {
    read_value(name, inline, file)?
        .ok_or_else(|| InputError::Invalid(format!("missing --{name} or --{name}-file")))
}

/// Converts parsed JSON into a typed value; failures are content errors.
pub fn decode<T: DeserializeOwned>(name: &str, v: Value) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| InputError::Invalid(format!("{name}: {e}")))
}

/// A CSV distribution: either one or more rows of bare probabilities, or
/// `label,prob` rows (an optional `label,prob` header is skipped).
pub fn csv_distribution(text: &str) -> Result<Value, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut labels = Vec::new();
    let mut probs = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let fields: Vec<&str> = rec.iter().filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let numeric: Vec<Option<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        if numeric.iter().all(Option::is_some) {
            probs.extend(numeric.into_iter().flatten());
        } else if fields.len() == 2 && numeric[1].is_some() {
            labels.push(fields[0].to_string());
            probs.push(numeric[1].expect("checked"));
        } else if row == 0 && fields.len() == 2 {
            continue;
        } else {
            return Err(format!("row {}: expected numbers or label,prob", row + 1));
        }
    }
    if !labels.is_empty() && labels.len() != probs.len() {
        return Err("mixes labelled and unlabelled rows".into());
    }
    Ok(if labels.is_empty() {
        serde_json::json!(probs)
    } else {
        serde_json::json!({ "labels": labels, "probs": probs })
    })
}

/// A homogeneous list of points.
pub enum Points {
    Classical(Vec<Distribution>),
    Quantum(Vec<DensityMatrix>),
}

impl Points {
    pub fn len(&self) -> usize {
        match self {
            Points::Classical(p) => p.len(),
            Points::Quantum(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A JSON array of distributions (arrays or `{labels, probs}`) or of density
/// matrices (`{dim, entries}` objects).
pub fn decode_points(v: Value) -> Result<Points, InputError> {
    let items = v
        .as_array()
        .ok_or_else(|| InputError::Invalid("points: expected a JSON array".into()))?;
    let quantum = items
        .first()
        .and_then(Value::as_object)
        .is_some_and(|o| o.contains_key("entries"));
    if quantum {
        decode("points", v).map(Points::Quantum)
    } else {
        decode("points", v).map(Points::Classical)
    }
}
