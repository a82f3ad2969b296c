//! The JSON input document for `bounds`:
//!
//! ```json
//! { "n": 4, "m": 1, "h": [[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]],
//!   "ambient": { "kind": "constant", "c": 1 }, "ric_min": 2 }
//! ```
//!
//! `ambient` may instead be `{ "c_lower": .., "c_upper": .. }`.

use std::path::Path;

use hodgebound_core::bounds::Ambient;
use hodgebound_core::submanifold::SecondFundamentalForm;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed input document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("h has shape {found}, expected [{m}][{n}][{n}]")]
    Shape { found: String, n: usize, m: usize },
    #[error("n must be at least 1")]
    EmptyDimension,
    #[error("non-finite entry in h")]
    NonFinite,
    #[error(transparent)]
    Core(#[from] hodgebound_core::Error),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum ConstantKind {
    Constant,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
enum AmbientSpec {
    Constant {
        #[allow(dead_code)]
        kind: ConstantKind,
        c: f64,
    },
    Pinched {
        c_lower: f64,
        c_upper: f64,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: usize,
    m: usize,
    h: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    ambient: Option<AmbientSpec>,
    #[serde(default)]
    ric_min: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub second_fundamental_form: SecondFundamentalForm,
    pub ambient: Option<Ambient>,
    pub ric_min: Option<f64>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        let (n, m) = (raw.n, raw.m);
        if n == 0 {
            return Err(InputError::EmptyDimension);
        }
        let shape_ok = raw.h.len() == m
            && raw
                .h
                .iter()
                .all(|a| a.len() == n && a.iter().all(|row| row.len() == n));
        if !shape_ok {
            let inner = raw.h.first().map_or(0, Vec::len);
            let innermost = raw.h.first().and_then(|a| a.first()).map_or(0, Vec::len);
            return Err(InputError::Shape {
                found: format!("[{}][{inner}][{innermost}]", raw.h.len()),
                n,
                m,
            });
        }
        let flat: Vec<f64> = raw.h.into_iter().flatten().flatten().collect();
        if flat.iter().any(|x| !x.is_finite()) {
            return Err(InputError::NonFinite);
        }
        let second_fundamental_form = SecondFundamentalForm::new(n, m, flat)?;
        let ambient = raw.ambient.map(|a| match a {
            AmbientSpec::Constant { c, .. } => Ambient::Constant(c),
            AmbientSpec::Pinched { c_lower, c_upper } => Ambient::Pinched {
                lower: c_lower,
                upper: c_upper,
            },
        });
        Ok(Self {
            second_fundamental_form,
            ambient,
            ric_min: raw.ric_min,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}
