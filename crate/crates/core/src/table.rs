//! Tab-separated table reading and writing.
//!
//! All pipeline artifacts are delimiter-separated text with a header row;
//! matrices carry the transcript id in the first column and one column per
//! patient.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub const DELIMITER: char = '\t';

#[derive(Debug, Error)]
pub enum TableError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: empty table")]
    Empty { path: PathBuf },
    #[error("{path}: line {line} has {got} fields, expected {expected}")]
    RaggedRow {
        path: PathBuf,
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("{path}: non-numeric cell '{cell}' at line {line}, column {column}")]
    NonNumeric {
        path: PathBuf,
        line: usize,
        column: usize,
        cell: String,
    },
    #[error("{path}: duplicate id '{id}'")]
    DuplicateId { path: PathBuf, id: String },
    #[error("{path}: missing column '{column}'")]
    MissingColumn { path: PathBuf, column: String },
}

/// A parsed delimiter-separated table: header plus string rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub path: PathBuf,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Table, TableError> {
        let text = fs::read_to_string(path).map_err(|source| TableError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.is_empty());
        let (_, header_line) = lines.next().ok_or_else(|| TableError::Empty {
            path: path.to_path_buf(),
        })?;
        let header: Vec<String> = header_line.split(DELIMITER).map(str::to_string).collect();
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let row: Vec<String> = line.split(DELIMITER).map(str::to_string).collect();
            if row.len() != header.len() {
                return Err(TableError::RaggedRow {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    got: row.len(),
                    expected: header.len(),
                });
            }
            rows.push(row);
        }
        Ok(Table {
            path: path.to_path_buf(),
            header,
            rows,
        })
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Result<usize, TableError> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| TableError::MissingColumn {
                path: self.path.clone(),
                column: name.to_string(),
            })
    }
}

/// A numeric matrix keyed by row ids, with column ids from the header.
#[derive(Debug, Clone)]
pub struct KeyedMatrix {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    /// Row-major values, `row_ids.len() * col_ids.len()`.
    pub values: Vec<f64>,
}

impl KeyedMatrix {
    /// Read a matrix whose first column holds row ids and whose header row
    /// holds column ids.
    pub fn read(path: &Path) -> Result<KeyedMatrix, TableError> {
        let table = Table::read(path)?;
        if table.header.len() < 2 {
            return Err(TableError::Empty {
                path: path.to_path_buf(),
            });
        }
        let col_ids: Vec<String> = table.header[1..].to_vec();
        let mut row_ids = Vec::with_capacity(table.rows.len());
        let mut values = Vec::with_capacity(table.rows.len() * col_ids.len());
        let mut seen = std::collections::HashSet::new();
        for (r, row) in table.rows.iter().enumerate() {
            let id = row[0].clone();
            if !seen.insert(id.clone()) {
                return Err(TableError::DuplicateId {
                    path: path.to_path_buf(),
                    id,
                });
            }
            row_ids.push(id);
            for (c, cell) in row[1..].iter().enumerate() {
                let v: f64 = cell.parse().map_err(|_| TableError::NonNumeric {
                    path: path.to_path_buf(),
                    line: r + 2,
                    column: c + 2,
                    cell: cell.clone(),
                })?;
                values.push(v);
            }
        }
        Ok(KeyedMatrix {
            row_ids,
            col_ids,
            values,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_ids.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.col_ids.len() + col]
    }
}

/// Format a float for table output: decimal, round-trippable, stable.
pub fn fmt_value(v: f64) -> String {
    if v.is_nan() {
        "NA".to_string()
    } else {
        let mut s = String::new();
        write!(s, "{v}").unwrap();
        s
    }
}

/// Write a table with a header row, joining fields with the delimiter.
pub fn write_table<P, R>(path: P, header: &[&str], rows: R) -> Result<(), TableError>
where
    P: AsRef<Path>,
    R: IntoIterator<Item = Vec<String>>,
{
    let path = path.as_ref();
    let mut out = String::new();
    out.push_str(&header.join(&DELIMITER.to_string()));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(&DELIMITER.to_string()));
        out.push('\n');
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| TableError::Write {
            path: path.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, out).map_err(|source| TableError::Write {
        path: path.to_path_buf(),
        source,
    })
}
