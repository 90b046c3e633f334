//! JSON complex files.
//!
//! ```json
//! {
//!   "name": "triangle",
//!   "ambient_dim": 2,
//!   "coordinates": { "0": [0.0, 0.0], "1": [1.0, 0.0], "2": [0.0, 1.0] },
//!   "simplices": [[0, 1, 2]],
//!   "label": "example"
//! }
//! ```
//!
//! `simplices` lists maximal simplices (any simplices are accepted; the
//! downward closure is taken). `ambient_dim`, `coordinates` and `label` are
//! optional; `ambient_dim` defaults to 3 when coordinates are given. Unknown
//! fields are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use simplex_embed_core::{Coordinates, SimplicialComplex};

use crate::error::{read_to_string, write_string, CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<BTreeMap<usize, Vec<f64>>>,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ComplexFile {
    /// Canonical file for `x`: maximal simplices in canonical order.
    pub fn from_complex(name: impl Into<String>, x: &SimplicialComplex, label: Option<String>) -> Self {
        let coords = x.coordinates();
        Self {
            name: name.into(),
            ambient_dim: coords.map(Coordinates::ambient_dim),
            coordinates: coords.map(|c| c.points().clone()),
            simplices: x.maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect(),
            label,
        }
    }

    pub fn to_complex(&self) -> simplex_embed_core::Result<SimplicialComplex> {
        let coords = match (&self.coordinates, self.ambient_dim) {
            (Some(points), dim) => {
                Some(Coordinates::new(dim.unwrap_or(Coordinates::DEFAULT_AMBIENT_DIM), points.clone())?)
            }
            (None, Some(_)) => {
                return Err(simplex_embed_core::Error::InvalidCoordinates(
                    "ambient_dim given without coordinates".into(),
                ))
            }
            (None, None) => None,
        };
        SimplicialComplex::build(&self.simplices, coords)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("complex files always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, path: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::parse(path, e.to_string()))
    }
}

/// Reads and validates a complex file.
pub fn parse_complex_file(path: &Path) -> Result<(ComplexFile, SimplicialComplex)> {
    let file = ComplexFile::from_json(&read_to_string(path)?, path)?;
    if let Some(i) = file.simplices.iter().position(|s| {
        let mut v = s.clone();
        v.sort_unstable();
        v.dedup();
        v.len() != s.len() || s.is_empty()
    }) {
        return Err(CliError::parse(path, format!("field `simplices[{i}]`: {:?} is empty or repeats a vertex", file.simplices[i])));
    }
    let x = file.to_complex().map_err(|e| CliError::parse(path, e.to_string()))?;
    Ok((file, x))
}

pub fn write_complex_file(file: &ComplexFile, path: &Path) -> Result<()> {
    write_string(path, &file.to_json())
}
