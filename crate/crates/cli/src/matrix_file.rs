//! Plain-text coordinate matrices.
//!
//! ```text
//! # simplex-embed matrix
//! # kind: distance
//! # rows: 3
//! # cols: 3
//! # config: 5f1c…
//! 0 1 3.0
//! 0 2 7.0
//! ```
//!
//! Header lines are `# key: value`; `kind`, `rows` and `cols` are required,
//! any other keys are kept as metadata. Body lines are `row col value` for
//! the nonzero entries in row-major order; values are printed in shortest
//! round-trip form, so a write/read cycle is bit-exact.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use simplex_embed_core::{DenseMatrix, SparseMatrix};

use crate::error::{read_to_string, write_string, CliError, Result};

const MAGIC: &str = "# simplex-embed matrix";

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub kind: String,
    pub meta: BTreeMap<String, String>,
    pub matrix: DenseMatrix,
}

impl MatrixFile {
    pub fn new(kind: impl Into<String>, matrix: DenseMatrix) -> Self {
        Self { kind: kind.into(), meta: BTreeMap::new(), matrix }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn from_sparse(kind: impl Into<String>, m: &SparseMatrix) -> Self {
        Self::new(kind, m.to_dense())
    }

    pub fn config_hash(&self) -> Option<&str> {
        self.meta.get("config").map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (rows, cols) = self.matrix.shape();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "# kind: {}", self.kind);
        let _ = writeln!(out, "# rows: {rows}");
        let _ = writeln!(out, "# cols: {cols}");
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for i in 0..rows {
            for (j, &v) in self.matrix.row(i).iter().enumerate() {
                if v != 0.0 {
                    let _ = writeln!(out, "{i} {j} {v:?}");
                }
            }
        }
        out
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == MAGIC => {}
            _ => return Err(CliError::parse(path, format!("line 1: expected `{MAGIC}`"))),
        }
        let mut header = BTreeMap::new();
        let mut body = Vec::new();
        for (n, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if !body.is_empty() {
                    return Err(CliError::parse(path, format!("line {}: header after entries", n + 1)));
                }
                let (k, v) = rest
                    .split_once(':')
                    .ok_or_else(|| CliError::parse(path, format!("line {}: expected `# key: value`", n + 1)))?;
                header.insert(k.trim().to_string(), v.trim().to_string());
            } else {
                body.push((n + 1, line));
            }
        }
        let mut take = |key: &str| {
            header.remove(key).ok_or_else(|| CliError::parse(path, format!("missing header field `{key}`")))
        };
        let kind = take("kind")?;
        let dim = |v: String, key: &str| {
            v.parse::<usize>().map_err(|_| CliError::parse(path, format!("header field `{key}`: `{v}` is not a count")))
        };
        let rows = dim(take("rows")?, "rows")?;
        let cols = dim(take("cols")?, "cols")?;
        let mut matrix = DenseMatrix::zeros(rows, cols);
        for (n, line) in body {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || CliError::parse(path, format!("line {n}: expected `row col value`, got `{line}`"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let i: usize = parts[0].parse().map_err(|_| bad())?;
            let j: usize = parts[1].parse().map_err(|_| bad())?;
            let v: f64 = parts[2].parse().map_err(|_| bad())?;
            if i >= rows || j >= cols {
                return Err(CliError::parse(path, format!("line {n}: entry ({i}, {j}) outside {rows}x{cols}")));
            }
            if !v.is_finite() {
                return Err(CliError::parse(path, format!("line {n}: non-finite value")));
            }
            matrix.set(i, j, v);
        }
        Ok(Self { kind, meta: header, matrix })
    }
}

pub fn write_matrix_file(file: &MatrixFile, path: &Path) -> Result<()> {
    write_string(path, &file.to_text())
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile> {
    MatrixFile::parse(&read_to_string(path)?, path)
}

/// Reads a matrix of the expected kind.
pub fn read_matrix_kind(path: &Path, kind: &str) -> Result<MatrixFile> {
    let file = read_matrix_file(path)?;
    if file.kind != kind {
        return Err(CliError::parse(path, format!("expected a `{kind}` matrix, found `{}`", file.kind)));
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let m = DenseMatrix::from_rows(&[[0.1, 0.0, -1e-300], [1.0 / 3.0, 2.5e10, f64::MIN_POSITIVE]]).unwrap();
        let file = MatrixFile::new("embedding", m).with("config", "abc").with("complex", "t");
        let text = file.to_text();
        let back = MatrixFile::parse(&text, Path::new("m.txt")).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "# simplex-embed matrix\n# kind: d\n# rows: 2\n# cols: 2\n0 1 x\n";
        let err = MatrixFile::parse(text, Path::new("m.txt")).unwrap_err();
        assert!(err.to_string().contains("line 5"), "{err}");
        let text = "# simplex-embed matrix\n# kind: d\n# rows: 2\n# cols: 2\n3 0 1.0\n";
        assert!(MatrixFile::parse(text, Path::new("m.txt")).is_err());
        assert!(MatrixFile::parse("0 0 1\n", Path::new("m.txt")).is_err());
        let text = "# simplex-embed matrix\n# kind: d\n# rows: 2\n";
        assert!(MatrixFile::parse(text, Path::new("m.txt")).unwrap_err().to_string().contains("cols"));
    }

    #[test]
    fn empty_matrix_round_trips() {
        let file = MatrixFile::new("embedding", DenseMatrix::zeros(0, 4));
        assert_eq!(MatrixFile::parse(&file.to_text(), Path::new("m")).unwrap(), file);
    }
}
