//! JSON input documents (schema version 1).
//!
//! A document carries exactly one payload (`length_spectrum`,
//! `eigenvalues` + `volume`, `pinching` or `schedule`) and optional
//! `policy` / `contour` overrides. Diagnostics name the first offending
//! field by path, e.g. `pinching[0]`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use spectra_core::{LengthSpectrum, PinchingSet, Schedule, SpectralData};
use thiserror::Error;

pub const SCHEMA_VERSION: u64 = 1;

const PAYLOAD_KEYS: [&str; 4] = ["length_spectrum", "eigenvalues", "pinching", "schedule"];
const KNOWN_KEYS: [&str; 8] =
    ["version", "length_spectrum", "eigenvalues", "volume", "pinching", "schedule", "policy", "contour"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("schema violation at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("multiple payloads present: {}", .0.join(", "))]
    MultiplePayload(Vec<&'static str>),
}

fn schema(path: impl Into<String>, reason: impl Into<String>) -> InputError {
    InputError::Schema { path: path.into(), reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    LengthSpectrum(LengthSpectrum),
    Spectral(SpectralData),
    Pinching(PinchingSet),
    Schedule(Schedule),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::LengthSpectrum(_) => "length_spectrum",
            Payload::Spectral(_) => "eigenvalues",
            Payload::Pinching(_) => "pinching",
            Payload::Schedule(_) => "schedule",
        }
    }
}

/// Partial [`spectra_core::TruncationPolicy`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct PolicyOverrides {
    /// Relative tolerance for series and quadratures
    #[arg(long = "rel-tol", global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance floor
    #[arg(long = "abs-tol", global = true)]
    pub abs_tol: Option<f64>,
    /// Term cap for a single series
    #[arg(long = "max-terms", global = true)]
    pub max_terms: Option<usize>,
    /// Integrand evaluation cap for one quadrature
    #[arg(long = "max-quad-evals", global = true)]
    pub max_quad_evals: Option<usize>,
}

/// Partial [`spectra_core::ContourSpec`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct ContourOverrides {
    /// Bromwich line abscissa (default 1/T)
    #[arg(long = "contour-a", global = true)]
    pub a: Option<f64>,
    /// Initial contour height
    #[arg(long = "contour-s-max", global = true)]
    pub s_max: Option<f64>,
    /// Initial node count on the contour
    #[arg(long = "contour-nodes", global = true)]
    pub n_nodes: Option<usize>,
    /// Inversion tolerance
    #[arg(long = "contour-tol", global = true)]
    pub tol: Option<f64>,
    /// Evaluation budget for one inversion
    #[arg(long = "contour-max-evals", global = true)]
    pub max_evals: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub payload: Payload,
    pub policy: PolicyOverrides,
    pub contour: ContourOverrides,
}

pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, InputError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| InputError::Malformed(e.to_string()))?;
    let Value::Object(doc) = value else {
        return Err(schema("$", "document must be a JSON object"));
    };

    match doc.get("version") {
        None => return Err(schema("version", "required")),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(_) => return Err(schema("version", format!("unsupported; expected {SCHEMA_VERSION}"))),
    }
    if let Some(key) = doc.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(schema(key.as_str(), "unknown field"));
    }

    let present: Vec<&'static str> = PAYLOAD_KEYS.iter().copied().filter(|k| doc.contains_key(*k)).collect();
    if present.len() > 1 {
        return Err(InputError::MultiplePayload(present));
    }
    if doc.contains_key("volume") && present.first() != Some(&"eigenvalues") {
        return Err(schema("volume", "only allowed with eigenvalues"));
    }
    let payload = match present.first() {
        None => return Err(schema("$", "one of length_spectrum, eigenvalues, pinching or schedule is required")),
        Some(&"length_spectrum") => Payload::LengthSpectrum(length_spectrum(&doc["length_spectrum"])?),
        Some(&"eigenvalues") => Payload::Spectral(spectral(&doc)?),
        Some(&"pinching") => Payload::Pinching(pinching(&doc["pinching"], "pinching")?),
        Some(_) => Payload::Schedule(schedule(&doc["schedule"])?),
    };

    Ok(InputDocument {
        payload,
        policy: overrides(&doc, "policy")?,
        contour: overrides(&doc, "contour")?,
    })
}

fn overrides<T: Default + for<'de> Deserialize<'de>>(doc: &Map<String, Value>, key: &str) -> Result<T, InputError> {
    match doc.get(key) {
        None => Ok(T::default()),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| schema(key, e.to_string())),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    match v {
        Value::Array(items) if !items.is_empty() => Ok(items),
        Value::Array(_) => Err(schema(path, "must not be empty")),
        _ => Err(schema(path, "expected an array")),
    }
}

fn object<'a>(v: &'a Value, path: &str, fields: &[&str]) -> Result<&'a Map<String, Value>, InputError> {
    let Value::Object(m) = v else {
        return Err(schema(path, "expected an object"));
    };
    if let Some(key) = m.keys().find(|k| !fields.contains(&k.as_str())) {
        return Err(schema(format!("{path}.{key}"), "unknown field"));
    }
    Ok(m)
}

fn number(m: &Map<String, Value>, path: &str, key: &str) -> Result<f64, InputError> {
    let path = format!("{path}.{key}");
    let v = m.get(key).ok_or_else(|| schema(&path, "required"))?;
    finite(v, &path)
}

fn finite(v: &Value, path: &str) -> Result<f64, InputError> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(schema(path, "expected a finite number")),
    }
}

fn multiplicity(m: &Map<String, Value>, path: &str) -> Result<u32, InputError> {
    let path = format!("{path}.multiplicity");
    match m.get("multiplicity") {
        None => Err(schema(&path, "required")),
        Some(v) => match v.as_u64() {
            Some(k) if k >= 1 && k <= u32::MAX as u64 => Ok(k as u32),
            _ => Err(schema(&path, "expected a positive integer")),
        },
    }
}

fn length_spectrum(v: &Value) -> Result<LengthSpectrum, InputError> {
    let mut entries = Vec::new();
    for (i, item) in array(v, "length_spectrum")?.iter().enumerate() {
        let path = format!("length_spectrum[{i}]");
        let m = object(item, &path, &["length", "multiplicity"])?;
        let length = number(m, &path, "length")?;
        if length <= 0.0 {
            return Err(schema(format!("{path}.length"), "must be > 0"));
        }
        entries.push((length, multiplicity(m, &path)?));
    }
    LengthSpectrum::new(entries).map_err(|e| schema("length_spectrum", e.to_string()))
}

fn spectral(doc: &Map<String, Value>) -> Result<SpectralData, InputError> {
    let mut entries = Vec::new();
    for (i, item) in array(&doc["eigenvalues"], "eigenvalues")?.iter().enumerate() {
        let path = format!("eigenvalues[{i}]");
        let m = object(item, &path, &["lambda", "multiplicity"])?;
        let lambda = number(m, &path, "lambda")?;
        if lambda < 0.0 {
            return Err(schema(format!("{path}.lambda"), "must be >= 0"));
        }
        entries.push((lambda, multiplicity(m, &path)?));
    }
    let volume = finite(doc.get("volume").ok_or_else(|| schema("volume", "required with eigenvalues"))?, "volume")?;
    if volume <= 0.0 {
        return Err(schema("volume", "must be > 0"));
    }
    SpectralData::new(entries, volume).map_err(|e| schema("eigenvalues", e.to_string()))
}

fn pinching(v: &Value, path: &str) -> Result<PinchingSet, InputError> {
    let mut ells = Vec::new();
    for (i, item) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let ell = finite(item, &p)?;
        if ell <= 0.0 {
            return Err(schema(p, "must be > 0"));
        }
        ells.push(ell);
    }
    PinchingSet::new(ells).map_err(|e| schema(path, e.to_string()))
}

fn schedule(v: &Value) -> Result<Schedule, InputError> {
    let Value::Object(m) = v else {
        return Err(schema("schedule", "expected an object"));
    };
    let sch = match m.get("kind").and_then(Value::as_str) {
        Some("geometric") => {
            let m = object(v, "schedule", &["kind", "start", "ratio", "count"])?;
            let count = match m.get("count").map(Value::as_u64) {
                None => return Err(schema("schedule.count", "required")),
                Some(Some(c)) => c as usize,
                Some(None) => return Err(schema("schedule.count", "expected a non-negative integer")),
            };
            Schedule::Geometric {
                start: number(m, "schedule", "start")?,
                ratio: number(m, "schedule", "ratio")?,
                count,
            }
        }
        Some("explicit") => {
            let m = object(v, "schedule", &["kind", "values"])?;
            let values = m.get("values").ok_or_else(|| schema("schedule.values", "required"))?;
            let sets = array(values, "schedule.values")?
                .iter()
                .enumerate()
                .map(|(i, item)| pinching(item, &format!("schedule.values[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Schedule::Explicit(sets)
        }
        _ => return Err(schema("schedule.kind", "expected \"geometric\" or \"explicit\"")),
    };
    sch.validate().map_err(|e| schema("schedule", e.to_string()))?;
    Ok(sch)
}
