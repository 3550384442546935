//! Scenario JSON document and its validated in-memory form.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::geometry::{Cell, Point, Trajectory};
use crate::madm::{validate_weights, Method, WeightVector};
use crate::schemes::{DelayParams, Scheme};
use crate::selection::{
    ApplicationClass, CandidateNetwork, NetworkId, QosVector, Technology, WeightProfile,
};
use crate::trust::TrustParams;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

impl ScenarioError {
    fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ScenarioError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub id: NetworkId,
    pub technology: Technology,
    pub center: [f64; 2],
    pub radius: f64,
    pub offered: QosVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobileSpec {
    pub required: QosVector,
    pub application: ApplicationClass,
    pub waypoints: Vec<[f64; 2]>,
    pub speed_mps: f64,
}

fn default_hysteresis() -> f64 {
    0.9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionSpec {
    pub scheme: Scheme,
    pub method: Method,
    pub weights: Vec<f64>,
    #[serde(default = "default_hysteresis")]
    pub hysteresis: f64,
}

fn default_tick() -> f64 {
    1.0
}

/// On-disk scenario layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub cells: Vec<CellSpec>,
    pub mobile: MobileSpec,
    pub decision: DecisionSpec,
    #[serde(default)]
    pub delays: DelayParams,
    #[serde(default)]
    pub trust: TrustParams,
    /// Seconds per simulation step.
    #[serde(default = "default_tick")]
    pub tick: f64,
    #[serde(default)]
    pub seed: u64,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub cells: Vec<Cell>,
    pub mt_required: QosVector,
    pub profile: WeightProfile,
    pub trajectory: Trajectory,
    pub tick: f64,
    pub scheme: Scheme,
    pub method: Method,
    pub delays: DelayParams,
    pub trust: TrustParams,
    pub hysteresis: f64,
    /// Carried for reproducibility; the simulator currently draws no random numbers.
    pub seed: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        Scenario::try_from(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn candidates(&self) -> Vec<CandidateNetwork> {
        self.cells.iter().map(|c| c.network.clone()).collect()
    }

    pub fn cell(&self, id: &NetworkId) -> Option<&Cell> {
        self.cells.iter().find(|c| &c.network.id == id)
    }

    /// Copy of this scenario running a different scheme and method.
    pub fn with_decision(&self, scheme: Scheme, method: Method) -> Self {
        Self {
            scheme,
            method,
            ..self.clone()
        }
    }
}

fn check_qos(field: &str, q: &QosVector) -> Result<(), ScenarioError> {
    match q.invalid_field() {
        Some(f) => Err(ScenarioError::invalid(
            format!("{field}.{f}"),
            "must be finite and > 0",
        )),
        None => Ok(()),
    }
}

impl TryFrom<ScenarioFile> for Scenario {
    type Error = ScenarioError;

    fn try_from(f: ScenarioFile) -> Result<Self, ScenarioError> {
        if f.cells.is_empty() {
            return Err(ScenarioError::invalid(
                "cells",
                "at least one cell is required",
            ));
        }
        let mut ids = HashSet::new();
        let mut cells = Vec::with_capacity(f.cells.len());
        for (i, c) in f.cells.into_iter().enumerate() {
            if c.id.as_str().is_empty() {
                return Err(ScenarioError::invalid(
                    format!("cells[{i}].id"),
                    "must not be empty",
                ));
            }
            if !ids.insert(c.id.clone()) {
                return Err(ScenarioError::invalid(
                    format!("cells[{i}].id"),
                    format!("duplicate id `{}`", c.id),
                ));
            }
            if !(c.radius.is_finite() && c.radius > 0.0) {
                return Err(ScenarioError::invalid(
                    format!("cells[{i}].radius"),
                    "must be > 0",
                ));
            }
            if !c.center.iter().all(|v| v.is_finite()) {
                return Err(ScenarioError::invalid(
                    format!("cells[{i}].center"),
                    "must be finite",
                ));
            }
            check_qos(&format!("cells[{i}].offered"), &c.offered)?;
            cells.push(Cell {
                network: CandidateNetwork::new(c.id, c.technology, c.offered),
                center: c.center.into(),
                radius: c.radius,
            });
        }

        let m = f.mobile;
        check_qos("mobile.required", &m.required)?;
        if m.waypoints.len() < 2 {
            return Err(ScenarioError::invalid(
                "mobile.waypoints",
                "at least two waypoints are required",
            ));
        }
        if !m.waypoints.iter().flatten().all(|v| v.is_finite()) {
            return Err(ScenarioError::invalid("mobile.waypoints", "must be finite"));
        }
        if !(m.speed_mps.is_finite() && m.speed_mps > 0.0) {
            return Err(ScenarioError::invalid("mobile.speed_mps", "must be > 0"));
        }
        if !(f.tick.is_finite() && f.tick > 0.0) {
            return Err(ScenarioError::invalid("tick", "must be > 0"));
        }

        let d = f.decision;
        validate_weights(&d.weights)
            .map_err(|e| ScenarioError::invalid("decision.weights", e.to_string()))?;
        let weights = WeightVector::new(d.weights).expect("validated above");
        let profile = WeightProfile::new(m.application, weights)
            .map_err(|e| ScenarioError::invalid("decision.weights", e.to_string()))?;
        if !(d.hysteresis > 0.0 && d.hysteresis <= 1.0) {
            return Err(ScenarioError::invalid(
                "decision.hysteresis",
                "must be in (0, 1]",
            ));
        }

        if let Some(field) = f.delays.invalid_field() {
            return Err(ScenarioError::invalid(
                format!("delays.{field}"),
                "must be finite and >= 0",
            ));
        }
        f.trust
            .validate()
            .map_err(|e| ScenarioError::invalid(format!("trust.{}", e.field()), e.to_string()))?;

        Ok(Scenario {
            cells,
            mt_required: m.required,
            profile,
            trajectory: Trajectory {
                waypoints: m.waypoints.into_iter().map(Point::from).collect(),
                speed_mps: m.speed_mps,
            },
            tick: f.tick,
            scheme: d.scheme,
            method: d.method,
            delays: f.delays,
            trust: f.trust,
            hysteresis: d.hysteresis,
            seed: f.seed,
        })
    }
}
