use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypercover_core::json::JsonInt;
use hypercover_core::IntMatrix;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Reads a JSON artifact. Besides the bare artifact, a report produced by
/// another subcommand is accepted: its `outputs`, or `outputs.<field>`.
pub fn load<T: DeserializeOwned>(path: &Path, field: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let direct = serde_json::from_value::<T>(value.clone());
    let Err(err) = direct else {
        return direct.map_err(Into::into);
    };
    if let Some(outputs) = value.get("outputs") {
        for candidate in [Some(outputs), outputs.get(field)].into_iter().flatten() {
            if let Ok(parsed) = serde_json::from_value::<T>(candidate.clone()) {
                return Ok(parsed);
            }
        }
    }
    Err(err).with_context(|| format!("{} does not hold a valid {field}", path.display()))
}

/// Parses `"v1,v2,..."` into integers.
pub fn parse_ints(s: &str) -> Result<Vec<BigInt>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        bail!("expected comma-separated integers, got {s:?}");
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<BigInt>()
                .with_context(|| format!("{p:?} is not an integer"))
        })
        .collect()
}

/// One row per line, comma separated.
pub fn matrix_csv(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Integers in the shared interchange form.
pub fn json_ints(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| serde_json::to_value(JsonInt(x)).expect("integers serialize"))
            .collect(),
    )
}
