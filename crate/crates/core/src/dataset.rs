//! Validated numeric data matrix with column names and optional row ids.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::stats::Sample;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("{names} column names for a matrix with {cols} columns")]
    NameCountMismatch { names: usize, cols: usize },
    #[error("{ids} row ids for a matrix with {rows} rows")]
    IdCountMismatch { ids: usize, rows: usize },
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
}

/// An n x p table of finite reals with column names and optional row ids.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    data: DMatrix<f64>,
    names: Vec<String>,
    ids: Option<Vec<String>>,
}

impl DataMatrix {
    pub fn new(
        data: DMatrix<f64>,
        names: Vec<String>,
        ids: Option<Vec<String>>,
    ) -> Result<Self, DataError> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(DataError::Empty);
        }
        if names.len() != data.ncols() {
            return Err(DataError::NameCountMismatch {
                names: names.len(),
                cols: data.ncols(),
            });
        }
        if let Some(ids) = &ids {
            if ids.len() != data.nrows() {
                return Err(DataError::IdCountMismatch {
                    ids: ids.len(),
                    rows: data.nrows(),
                });
            }
        }
        for j in 0..data.ncols() {
            for i in 0..data.nrows() {
                if !data[(i, j)].is_finite() {
                    return Err(DataError::NonFinite { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(Self { data, names, ids })
    }

    /// Rows given as slices, with generated column names `x1..xp`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DataError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(DataError::Empty);
        }
        let p = rows[0].len();
        let names = (1..=p).map(|j| format!("x{j}")).collect();
        let data = DMatrix::from_fn(rows.len(), p, |i, j| rows[i][j]);
        Self::new(data, names, None)
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }

    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    /// Column `j` as a validated sample.
    pub fn column_sample(&self, j: usize) -> Sample {
        let values: Vec<f64> = self.data.column(j).iter().copied().collect();
        // finite by construction
        Sample::new(values).expect("DataMatrix columns are finite and non-empty")
    }

    /// Display id for row `i`: the stored id, or the 1-based index.
    pub fn row_id(&self, i: usize) -> String {
        match &self.ids {
            Some(ids) => ids[i].clone(),
            None => (i + 1).to_string(),
        }
    }
}
