//! Dataset manifests: `{"complexes": ["a.json", "b.json"]}`, paths relative
//! to the manifest's directory. Class labels come from the complex files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use simplex_embed_core::SimplicialComplex;

use crate::complex_file::{parse_complex_file, write_complex_file, ComplexFile};
use crate::error::{read_to_string, write_string, CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub complexes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct DatasetEntry {
    pub path: PathBuf,
    pub file: ComplexFile,
    pub complex: SimplicialComplex,
}

impl DatasetEntry {
    pub fn name(&self) -> &str {
        &self.file.name
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub entries: Vec<DatasetEntry>,
}

impl Dataset {
    pub fn load(manifest_path: &Path) -> Result<Self> {
        let manifest: Manifest = serde_json::from_str(&read_to_string(manifest_path)?)
            .map_err(|e| CliError::parse(manifest_path, e.to_string()))?;
        if manifest.complexes.is_empty() {
            return Err(CliError::parse(manifest_path, "field `complexes`: dataset is empty"));
        }
        let base = manifest_path.parent().unwrap_or(Path::new("."));
        let mut entries = Vec::with_capacity(manifest.complexes.len());
        for rel in &manifest.complexes {
            let path = base.join(rel);
            let (file, complex) = parse_complex_file(&path)?;
            entries.push(DatasetEntry { path, file, complex });
        }
        let mut names: Vec<&str> = entries.iter().map(DatasetEntry::name).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::parse(manifest_path, format!("complex name `{}` is used twice", w[0])));
        }
        Ok(Self { entries })
    }

    /// A one-complex dataset read from a complex file.
    pub fn from_complex_file(path: &Path) -> Result<Self> {
        let (file, complex) = parse_complex_file(path)?;
        Ok(Self { entries: vec![DatasetEntry { path: path.to_path_buf(), file, complex }] })
    }

    pub fn from_files(files: Vec<ComplexFile>) -> Result<Self> {
        let entries = files
            .into_iter()
            .map(|file| {
                let complex = file.to_complex()?;
                Ok(DatasetEntry { path: PathBuf::from(format!("{}.json", file.name)), file, complex })
            })
            .collect::<Result<_>>()?;
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn complexes(&self) -> Vec<SimplicialComplex> {
        self.entries.iter().map(|e| e.complex.clone()).collect()
    }

    /// Labels as dense class indices in order of first appearance, or an error
    /// naming the first unlabeled complex.
    pub fn class_indices(&self) -> Result<(Vec<usize>, Vec<String>)> {
        let mut classes: Vec<String> = Vec::new();
        let mut out = Vec::with_capacity(self.len());
        for e in &self.entries {
            let label = e.file.label.as_ref().ok_or_else(|| {
                CliError::Core(simplex_embed_core::Error::MissingLabels(format!("complex `{}` has no label", e.name())))
            })?;
            let idx = classes.iter().position(|c| c == label).unwrap_or_else(|| {
                classes.push(label.clone());
                classes.len() - 1
            });
            out.push(idx);
        }
        Ok((out, classes))
    }
}

/// Writes every file plus `manifest.json` into `dir` and returns the manifest path.
pub fn write_dataset(dir: &Path, files: &[ComplexFile]) -> Result<PathBuf> {
    let mut manifest = Manifest { complexes: Vec::with_capacity(files.len()) };
    for f in files {
        let rel = format!("{}.json", f.name);
        write_complex_file(f, &dir.join(&rel))?;
        manifest.complexes.push(rel);
    }
    let path = dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifests always serialize");
    text.push('\n');
    write_string(&path, &text)?;
    Ok(path)
}
