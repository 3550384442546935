//! Text format for decision matrices.
//!
//! ```text
//! # comment
//! delay,bandwidth,cost,jitter        <- criterion names
//! cost,benefit,cost,cost             <- directions
//! 0.3,0.2,0.2,0.3                    <- weights
//! wifi-1,40,5000,2,8                 <- alternative id + one value per criterion
//! ```

use std::path::Path;

use thiserror::Error;

use super::{validate_weights, CriterionSpec, DecisionMatrix, Direction, MadmError, WeightVector};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: invalid weights: {source}")]
    Weights {
        line: u64,
        #[source]
        source: MadmError,
    },
}

impl MatrixFileError {
    fn parse(line: u64, message: impl Into<String>) -> Self {
        MatrixFileError::Parse {
            line,
            message: message.into(),
        }
    }
}

/// A parsed matrix file: the matrix and its validated weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub matrix: DecisionMatrix,
    pub weights: WeightVector,
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<MatrixFile, MatrixFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

fn parse_number(line: u64, field: &str) -> Result<f64, MatrixFileError> {
    field
        .parse::<f64>()
        .map_err(|_| MatrixFileError::parse(line, format!("`{field}` is not a number")))
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile, MatrixFileError> {
    let records: Vec<(u64, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| (n, l.split(',').map(str::trim).collect()))
        .collect();
    let mut records = records.into_iter();
    let last_line = text.lines().count() as u64;

    let (names_line, names) = records
        .next()
        .ok_or_else(|| MatrixFileError::parse(last_line, "missing criterion names"))?;
    let m = names.len();
    if names.iter().any(|n| n.is_empty()) {
        return Err(MatrixFileError::parse(names_line, "empty criterion name"));
    }

    let (dir_line, dirs) = records
        .next()
        .ok_or_else(|| MatrixFileError::parse(last_line, "missing direction line"))?;
    if dirs.len() != m {
        return Err(MatrixFileError::parse(
            dir_line,
            format!("expected {m} directions, got {}", dirs.len()),
        ));
    }
    let criteria = names
        .iter()
        .zip(dirs.iter())
        .map(|(&name, &tok)| {
            Direction::parse(tok)
                .map(|d| CriterionSpec::new(name, d))
                .ok_or_else(|| {
                    MatrixFileError::parse(
                        dir_line,
                        format!("direction `{tok}` must be `benefit` or `cost`"),
                    )
                })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (w_line, w_rec) = records
        .next()
        .ok_or_else(|| MatrixFileError::parse(last_line, "missing weight line"))?;
    if w_rec.len() != m {
        return Err(MatrixFileError::parse(
            w_line,
            format!("expected {m} weights, got {}", w_rec.len()),
        ));
    }
    let weights = w_rec
        .iter()
        .map(|&f| parse_number(w_line, f))
        .collect::<Result<Vec<_>, _>>()?;
    validate_weights(&weights).map_err(|source| MatrixFileError::Weights {
        line: w_line,
        source,
    })?;
    let weights = WeightVector::new(weights).expect("validated above");

    let mut alternatives = Vec::new();
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for (line, rec) in records {
        if rec.len() != m + 1 {
            return Err(MatrixFileError::parse(
                line,
                format!("expected an id and {m} values, got {} fields", rec.len()),
            ));
        }
        let id = rec[0];
        if id.is_empty() {
            return Err(MatrixFileError::parse(line, "empty alternative id"));
        }
        if alternatives.iter().any(|a| a == id) {
            return Err(MatrixFileError::parse(
                line,
                format!("duplicate alternative `{id}`"),
            ));
        }
        let row = rec
            .iter()
            .skip(1)
            .map(|&f| parse_number(line, f))
            .collect::<Result<Vec<_>, _>>()?;
        alternatives.push(id.to_string());
        values.push(row);
        lines.push(line);
    }
    if alternatives.is_empty() {
        return Err(MatrixFileError::parse(last_line, "no alternatives"));
    }

    let matrix = DecisionMatrix::new(criteria, alternatives, values).map_err(|e| {
        let line = match &e {
            MadmError::NonPositiveValue { row, .. } => lines[*row],
            MadmError::DuplicateCriterion(_) | MadmError::EmptyCriterionName(_) => names_line,
            _ => 0,
        };
        MatrixFileError::parse(line, e.to_string())
    })?;
    Ok(MatrixFile { matrix, weights })
}
