//! Network selection function: maps offered (and required) QoS of candidate
//! networks to network quality values (NQV).
//!
//! Criteria always appear in the order delay, bandwidth, cost, jitter so a
//! profile's weights apply positionally.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::madm::{
    normalize, saw_scores, wpm_ratios, CriterionSpec, DecisionMatrix, Direction, MadmError, Method,
    ScoreVector, WeightVector,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SelectionError {
    #[error("no candidate networks")]
    EmptyCandidateSet,
    #[error("duplicate network id `{0}`")]
    DuplicateId(NetworkId),
    #[error("invalid QoS for `{network}`: {field} must be finite and strictly positive")]
    InvalidQos {
        network: NetworkId,
        field: &'static str,
    },
    #[error(transparent)]
    Madm(#[from] MadmError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NetworkId(pub String);

impl NetworkId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NetworkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NetworkId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

impl From<String> for NetworkId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Bandwidth, delay, jitter and monetary cost; used both for what a network
/// offers and what an application requires.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QosVector {
    pub bandwidth_kbps: f64,
    pub delay_ms: f64,
    pub jitter_ms: f64,
    pub cost: f64,
}

impl QosVector {
    pub fn new(bandwidth_kbps: f64, delay_ms: f64, jitter_ms: f64, cost: f64) -> Self {
        Self {
            bandwidth_kbps,
            delay_ms,
            jitter_ms,
            cost,
        }
    }

    /// Name of the first field that is not finite and strictly positive.
    pub fn invalid_field(&self) -> Option<&'static str> {
        [
            ("bandwidth_kbps", self.bandwidth_kbps),
            ("delay_ms", self.delay_ms),
            ("jitter_ms", self.jitter_ms),
            ("cost", self.cost),
        ]
        .into_iter()
        .find(|(_, v)| !(v.is_finite() && *v > 0.0))
        .map(|(name, _)| name)
    }

    /// Values in criterion order (delay, bandwidth, cost, jitter).
    pub fn criterion_values(&self) -> [f64; 4] {
        [
            self.delay_ms,
            self.bandwidth_kbps,
            self.cost,
            self.jitter_ms,
        ]
    }

    /// True if this (delivered) QoS misses any metric of `required`.
    pub fn violates(&self, required: &QosVector) -> bool {
        self.bandwidth_kbps < required.bandwidth_kbps
            || self.delay_ms > required.delay_ms
            || self.jitter_ms > required.jitter_ms
            || self.cost > required.cost
    }
}

pub const CRITERIA: [(&str, Direction); 4] = [
    ("delay", Direction::Cost),
    ("bandwidth", Direction::Benefit),
    ("cost", Direction::Cost),
    ("jitter", Direction::Cost),
];

pub fn criterion_specs() -> Vec<CriterionSpec> {
    CRITERIA
        .iter()
        .map(|&(n, d)| CriterionSpec::new(n, d))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApplicationClass {
    Voice,
    Video,
    Data,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub application: ApplicationClass,
    pub weights: WeightVector,
}

impl WeightProfile {
    pub fn new(
        application: ApplicationClass,
        weights: WeightVector,
    ) -> Result<Self, SelectionError> {
        weights.check_len(CRITERIA.len())?;
        Ok(Self {
            application,
            weights,
        })
    }

    /// VoIP weights over (delay, bandwidth, cost, jitter).
    pub fn voice() -> Self {
        Self {
            application: ApplicationClass::Voice,
            weights: WeightVector::new(vec![0.3, 0.2, 0.2, 0.3]).expect("sums to one"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technology {
    WiFi,
    WiMax,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateNetwork {
    pub id: NetworkId,
    pub technology: Technology,
    pub offered: QosVector,
}

impl CandidateNetwork {
    pub fn new(id: impl Into<NetworkId>, technology: Technology, offered: QosVector) -> Self {
        Self {
            id: id.into(),
            technology,
            offered,
        }
    }
}

fn check_qos(network: &NetworkId, q: &QosVector) -> Result<(), SelectionError> {
    match q.invalid_field() {
        Some(field) => Err(SelectionError::InvalidQos {
            network: network.clone(),
            field,
        }),
        None => Ok(()),
    }
}

/// One row per candidate (input order) with columns delay (cost),
/// bandwidth (benefit), cost (cost), jitter (cost).
pub fn build_matrix(candidates: &[CandidateNetwork]) -> Result<DecisionMatrix, SelectionError> {
    if candidates.is_empty() {
        return Err(SelectionError::EmptyCandidateSet);
    }
    let mut seen = HashSet::new();
    for c in candidates {
        if !seen.insert(&c.id) {
            return Err(SelectionError::DuplicateId(c.id.clone()));
        }
        check_qos(&c.id, &c.offered)?;
    }
    let matrix = DecisionMatrix::new(
        criterion_specs(),
        candidates.iter().map(|c| c.id.0.clone()).collect(),
        candidates
            .iter()
            .map(|c| c.offered.criterion_values().to_vec())
            .collect(),
    )?;
    Ok(matrix)
}

/// Scores every candidate against its peers; this is what a terminal does
/// when it holds all the offered QoS (centralized decision).
pub fn global_nqv(
    candidates: &[CandidateNetwork],
    profile: &WeightProfile,
    method: Method,
) -> Result<ScoreVector, SelectionError> {
    let matrix = build_matrix(candidates)?;
    let scores = match method {
        Method::Saw => saw_scores(&normalize(&matrix), &profile.weights)?,
        Method::Wpm => wpm_ratios(&matrix, &profile.weights)?,
    };
    Ok(scores)
}

/// Upper bound on the offered/required ratio credited to a network.
pub const RATIO_CAP: f64 = 2.0;

/// Scores one candidate against the requirement only, without reference to
/// other candidates. Each criterion ratio (oriented so that larger is better)
/// is capped at [`RATIO_CAP`] and halved into (0, 1].
pub fn reference_nqv(
    candidate: &CandidateNetwork,
    required: &QosVector,
    profile: &WeightProfile,
    method: Method,
) -> Result<f64, SelectionError> {
    check_qos(&candidate.id, &candidate.offered)?;
    check_qos(&NetworkId::new("required"), required)?;
    let offered = candidate.offered.criterion_values();
    let req = required.criterion_values();
    let ratios = CRITERIA.iter().enumerate().map(|(j, &(_, dir))| {
        let r = match dir {
            Direction::Benefit => offered[j] / req[j],
            Direction::Cost => req[j] / offered[j],
        };
        r.min(RATIO_CAP) / RATIO_CAP
    });
    let w = profile.weights.as_slice();
    let score = match method {
        Method::Saw => ratios.zip(w).map(|(r, wj)| wj * r).sum::<f64>().min(1.0),
        Method::Wpm => ratios
            .zip(w)
            .map(|(r, wj)| wj * r.ln())
            .sum::<f64>()
            .exp()
            .min(1.0),
    };
    Ok(score)
}

/// Id with the highest NQV; the first one wins a tie.
pub fn select_best(scored: &[(NetworkId, f64)]) -> Result<NetworkId, SelectionError> {
    let mut best: Option<&(NetworkId, f64)> = None;
    for entry in scored {
        match best {
            Some((_, s)) if entry.1 <= *s => {}
            _ => best = Some(entry),
        }
    }
    best.map(|(id, _)| id.clone())
        .ok_or(SelectionError::EmptyCandidateSet)
}
