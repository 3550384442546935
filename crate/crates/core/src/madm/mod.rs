//! Multi-attribute decision making: decision matrices, normalization,
//! additive (SAW) and multiplicative (WPM) scoring, ranking and the
//! relative-standard-deviation comparison between methods.
//!
//! Every type here is an immutable value and every operation is a pure
//! function of its inputs.

mod compare;
pub mod file;
mod score;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use compare::{compare_methods, rank, rsd, MethodComparison, MethodResult};
pub use score::{ideal_alternative, normalize, saw_scores, wpm_ratios, wpm_value};

/// Tolerance on `|sum(weights) - 1|`.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MadmError {
    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },
    #[error("weights sum to {0}, expected 1")]
    SumNotOne(f64),
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("dimension mismatch: expected {expected} values, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix needs at least one alternative and one criterion")]
    EmptyMatrix,
    #[error("criterion name at column {0} is empty")]
    EmptyCriterionName(usize),
    #[error("duplicate criterion name `{0}`")]
    DuplicateCriterion(String),
    #[error("duplicate alternative `{0}`")]
    DuplicateAlternative(String),
    #[error("value at ({row}, {col}) must be finite and strictly positive, got {value}")]
    NonPositiveValue { row: usize, col: usize, value: f64 },
    #[error("score {0} is not finite")]
    NonFiniteScore(usize),
    #[error("relative standard deviation needs at least two scores, got {0}")]
    TooFewScores(usize),
    #[error("relative standard deviation is undefined for a zero mean")]
    ZeroMean,
}

/// Whether larger (benefit) or smaller (cost) values are preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Benefit,
    Cost,
}

impl Direction {
    /// Parses `benefit` or `cost`, ignoring ASCII case.
    pub fn parse(token: &str) -> Option<Self> {
        if token.eq_ignore_ascii_case("benefit") {
            Some(Direction::Benefit)
        } else if token.eq_ignore_ascii_case("cost") {
            Some(Direction::Cost)
        } else {
            None
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Benefit => f.write_str("benefit"),
            Direction::Cost => f.write_str("cost"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub name: String,
    pub direction: Direction,
}

impl CriterionSpec {
    pub fn new(name: impl Into<String>, direction: Direction) -> Self {
        Self {
            name: name.into(),
            direction,
        }
    }

    pub fn benefit(name: impl Into<String>) -> Self {
        Self::new(name, Direction::Benefit)
    }

    pub fn cost(name: impl Into<String>) -> Self {
        Self::new(name, Direction::Cost)
    }
}

/// Scoring method applied to a decision matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Simple additive weighting over max/min-normalized values.
    Saw,
    /// Weighted product, reported as a ratio to the positive-ideal alternative.
    Wpm,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Saw, Method::Wpm];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Saw => f.write_str("SAW"),
            Method::Wpm => f.write_str("WPM"),
        }
    }
}

/// Alternatives × criteria grid of strictly positive, finite values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionMatrix {
    criteria: Vec<CriterionSpec>,
    alternatives: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        criteria: Vec<CriterionSpec>,
        alternatives: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, MadmError> {
        if criteria.is_empty() || alternatives.is_empty() {
            return Err(MadmError::EmptyMatrix);
        }
        let mut names = HashSet::new();
        for (j, c) in criteria.iter().enumerate() {
            if c.name.is_empty() {
                return Err(MadmError::EmptyCriterionName(j));
            }
            if !names.insert(c.name.as_str()) {
                return Err(MadmError::DuplicateCriterion(c.name.clone()));
            }
        }
        let mut ids = HashSet::new();
        for a in &alternatives {
            if !ids.insert(a.as_str()) {
                return Err(MadmError::DuplicateAlternative(a.clone()));
            }
        }
        if values.len() != alternatives.len() {
            return Err(MadmError::DimensionMismatch {
                expected: alternatives.len(),
                actual: values.len(),
            });
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(MadmError::DimensionMismatch {
                    expected: criteria.len(),
                    actual: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    return Err(MadmError::NonPositiveValue {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        Ok(Self {
            criteria,
            alternatives,
            values,
        })
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }

    /// Same values with the criterion directions replaced.
    pub fn with_directions(&self, directions: &[Direction]) -> Result<Self, MadmError> {
        if directions.len() != self.criteria.len() {
            return Err(MadmError::DimensionMismatch {
                expected: self.criteria.len(),
                actual: directions.len(),
            });
        }
        let criteria = self
            .criteria
            .iter()
            .zip(directions)
            .map(|(c, &d)| CriterionSpec::new(c.name.clone(), d))
            .collect();
        Ok(Self {
            criteria,
            alternatives: self.alternatives.clone(),
            values: self.values.clone(),
        })
    }

    /// Same matrix with column `j` multiplied by `factor`.
    pub fn scale_column(&self, j: usize, factor: f64) -> Result<Self, MadmError> {
        let values = self
            .values
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row[j] *= factor;
                row
            })
            .collect();
        Self::new(self.criteria.clone(), self.alternatives.clone(), values)
    }

    pub(crate) fn from_parts_unchecked(
        criteria: Vec<CriterionSpec>,
        alternatives: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Self {
        Self {
            criteria,
            alternatives,
            values,
        }
    }
}

/// Per-criterion importance weights; non-negative and summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, MadmError> {
        validate_weights(&weights)?;
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<(), MadmError> {
        if self.0.len() != expected {
            return Err(MadmError::DimensionMismatch {
                expected,
                actual: self.0.len(),
            });
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<f64>::deserialize(d)?;
        WeightVector::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Accepts iff every weight is finite and non-negative and the sum is
/// within [`WEIGHT_SUM_TOLERANCE`] of one.
pub fn validate_weights(weights: &[f64]) -> Result<(), MadmError> {
    if weights.is_empty() {
        return Err(MadmError::EmptyWeights);
    }
    for (index, &value) in weights.iter().enumerate() {
        if !value.is_finite() {
            return Err(MadmError::NonFiniteWeight { index });
        }
        if value < 0.0 {
            return Err(MadmError::NegativeWeight { index, value });
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(MadmError::SumNotOne(sum));
    }
    Ok(())
}

/// Scores aligned with the alternatives of the matrix they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector {
    pub alternatives: Vec<String>,
    pub scores: Vec<f64>,
}

impl ScoreVector {
    pub fn new(alternatives: Vec<String>, scores: Vec<f64>) -> Result<Self, MadmError> {
        if alternatives.len() != scores.len() {
            return Err(MadmError::DimensionMismatch {
                expected: alternatives.len(),
                actual: scores.len(),
            });
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(MadmError::NonFiniteScore(i));
        }
        Ok(Self {
            alternatives,
            scores,
        })
    }

    /// Labels the scores `A1..An`.
    pub fn numbered(scores: Vec<f64>) -> Result<Self, MadmError> {
        let ids = (1..=scores.len()).map(|i| format!("A{i}")).collect();
        Self::new(ids, scores)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, alternative: &str) -> Option<f64> {
        self.alternatives
            .iter()
            .position(|a| a == alternative)
            .map(|i| self.scores[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.alternatives
            .iter()
            .map(String::as_str)
            .zip(self.scores.iter().copied())
    }
}

/// Alternatives ordered best first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub order: Vec<String>,
    pub scores: ScoreVector,
}

impl Ranking {
    pub fn winner(&self) -> &str {
        &self.order[0]
    }
}
