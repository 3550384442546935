//! Level-of-trust (LoT) bookkeeping for the trusted distributed scheme.
//!
//! A handover may only target a network whose LoT is at or above the
//! threshold. After connecting, every observation of delivered QoS moves the
//! serving network's LoT up by `delta_plus` (all requirements met) or down by
//! `delta_minus` (any requirement missed), clamped to `[0, 1]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::selection::{NetworkId, QosVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrustError {
    #[error("{field} must be in [0, 1], got {value}")]
    OutOfUnitRange { field: &'static str, value: f64 },
    #[error("{field} must be finite and > 0, got {value}")]
    NonPositiveDelta { field: &'static str, value: f64 },
}

impl TrustError {
    pub fn field(&self) -> &'static str {
        match self {
            TrustError::OutOfUnitRange { field, .. }
            | TrustError::NonPositiveDelta { field, .. } => field,
        }
    }
}

/// Tunables for the trust state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustParams {
    pub threshold: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub default_lot: f64,
}

impl Default for TrustParams {
    fn default() -> Self {
        Self {
            threshold: 0.5,
            delta_plus: 0.05,
            delta_minus: 0.1,
            default_lot: 0.5,
        }
    }
}

impl TrustParams {
    pub fn validate(&self) -> Result<(), TrustError> {
        for (field, value) in [
            ("threshold", self.threshold),
            ("default_lot", self.default_lot),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(TrustError::OutOfUnitRange { field, value });
            }
        }
        for (field, value) in [
            ("delta_plus", self.delta_plus),
            ("delta_minus", self.delta_minus),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(TrustError::NonPositiveDelta { field, value });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustState {
    params: TrustParams,
    lot: BTreeMap<NetworkId, f64>,
}

impl TrustState {
    pub fn new(params: TrustParams) -> Result<Self, TrustError> {
        params.validate()?;
        Ok(Self {
            params,
            lot: BTreeMap::new(),
        })
    }

    /// Starts from explicit LoT values for some networks.
    pub fn with_levels(
        params: TrustParams,
        levels: impl IntoIterator<Item = (NetworkId, f64)>,
    ) -> Result<Self, TrustError> {
        let mut state = Self::new(params)?;
        for (id, value) in levels {
            if !(0.0..=1.0).contains(&value) {
                return Err(TrustError::OutOfUnitRange {
                    field: "lot",
                    value,
                });
            }
            state.lot.insert(id, value);
        }
        Ok(state)
    }

    pub fn params(&self) -> &TrustParams {
        &self.params
    }

    pub fn threshold(&self) -> f64 {
        self.params.threshold
    }

    /// LoT of `network`, falling back to the default for unseen networks.
    pub fn lot(&self, network: &NetworkId) -> f64 {
        self.lot
            .get(network)
            .copied()
            .unwrap_or(self.params.default_lot)
    }

    pub fn passes(&self, network: &NetworkId) -> bool {
        self.lot(network) >= self.params.threshold
    }

    pub fn levels(&self) -> &BTreeMap<NetworkId, f64> {
        &self.lot
    }

    /// New state after observing `observed` on `network`.
    pub fn update(&self, network: &NetworkId, observed: &QosVector, required: &QosVector) -> Self {
        let old = self.lot(network);
        let new = if observed.violates(required) {
            old - self.params.delta_minus
        } else {
            old + self.params.delta_plus
        };
        let mut next = self.clone();
        next.lot.insert(network.clone(), new.clamp(0.0, 1.0));
        next
    }
}

/// Gate verdict over a ranked candidate list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GateDecision {
    /// `attempts` counts candidates examined, including the accepted one.
    Connect {
        network: NetworkId,
        attempts: usize,
    },
    Blocked {
        attempts: usize,
    },
}

impl GateDecision {
    pub fn attempts(&self) -> usize {
        match self {
            GateDecision::Connect { attempts, .. } | GateDecision::Blocked { attempts } => {
                *attempts
            }
        }
    }

    pub fn network(&self) -> Option<&NetworkId> {
        match self {
            GateDecision::Connect { network, .. } => Some(network),
            GateDecision::Blocked { .. } => None,
        }
    }
}

/// Walks `ranked` best first and connects to the first network whose LoT
/// reaches the threshold; blocks the handover if none does.
pub fn lot_gate(ranked: &[NetworkId], state: &TrustState) -> GateDecision {
    for (i, id) in ranked.iter().enumerate() {
        if state.passes(id) {
            return GateDecision::Connect {
                network: id.clone(),
                attempts: i + 1,
            };
        }
    }
    GateDecision::Blocked {
        attempts: ranked.len(),
    }
}

/// Free-function form of [`TrustState::update`].
pub fn trust_update(
    state: &TrustState,
    network: &NetworkId,
    observed: &QosVector,
    required: &QosVector,
) -> TrustState {
    state.update(network, observed, required)
}
