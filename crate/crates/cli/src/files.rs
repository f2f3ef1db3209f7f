//! JSON file formats. Every number is a string holding an exact rational
//! (`"3"`, `"-2/5"`), so nothing is lost in serialization.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use weyrkit::{EigenStructure, Matrix, Partition, Rational};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            entries: render_entries(m),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        if self.entries.len() != self.rows {
            return Err(CliError::Input(format!(
                "declared {} rows but found {}",
                self.rows,
                self.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(CliError::Input(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    self.cols
                )));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    s.trim().parse::<Rational>().map_err(|e| {
                        CliError::Input(format!("entry ({}, {}) = {s:?}: {e}", i + 1, j + 1))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        if self.rows == 0 {
            return Ok(Matrix::zeros(0, self.cols));
        }
        Matrix::from_rows(rows).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Matrix, CliError> {
        let text = read(path)?;
        let file: MatrixFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        file.to_matrix()
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn save(m: &Matrix, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("serializable");
        fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredBlock {
    pub eigenvalue: String,
    pub characteristic: Vec<usize>,
}

/// User-supplied eigenvalues with their Weyr characteristics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredStructureFile {
    pub blocks: Vec<DeclaredBlock>,
}

impl DeclaredStructureFile {
    pub fn from_structure(s: &EigenStructure) -> Self {
        DeclaredStructureFile {
            blocks: s
                .blocks()
                .iter()
                .map(|(l, p)| DeclaredBlock {
                    eigenvalue: l.to_string(),
                    characteristic: p.parts().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_structure(&self) -> Result<EigenStructure, CliError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let lambda = b
                    .eigenvalue
                    .trim()
                    .parse::<Rational>()
                    .map_err(|e| CliError::Input(format!("eigenvalue {:?}: {e}", b.eigenvalue)))?;
                let p = Partition::new(b.characteristic.clone())
                    .map_err(|e| CliError::Input(format!("eigenvalue {lambda}: {e}")))?;
                Ok((lambda, p))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        EigenStructure::new(blocks).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<EigenStructure, CliError> {
        let text = read(path)?;
        let file: DeclaredStructureFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        file.to_structure()
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Entries as rational strings, row by row.
pub fn render_entries(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
