//! Centralized (C-VHD), distributed (D-VHD) and trusted distributed (T-DVHD)
//! handover decisions, with a processing-delay and message-count model.
//!
//! Delay model, with `N` candidates:
//!
//! * C-VHD: the terminal queries every network, then scores all of them
//!   itself: `N * (t_uplink + t_downlink) + N * t_calc_mt + t_select`.
//! * D-VHD: each network scores itself against the requirement; these runs
//!   overlap, so the cost does not grow with `N`:
//!   `t_uplink + t_calc_vn + t_downlink + t_select`.
//! * T-DVHD: D-VHD plus `t_select` for every trust-gate step after the first.
//!
//! Every scheme exchanges one request and one reply per candidate (`2N`).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::madm::{rank, Method, ScoreVector};
use crate::selection::{
    global_nqv, reference_nqv, select_best, CandidateNetwork, NetworkId, QosVector, SelectionError,
    WeightProfile,
};
use crate::trust::{lot_gate, GateDecision, TrustState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("no candidate networks")]
    EmptyCandidateSet,
    #[error(transparent)]
    Selection(SelectionError),
}

impl From<SelectionError> for SchemeError {
    fn from(e: SelectionError) -> Self {
        match e {
            SelectionError::EmptyCandidateSet => SchemeError::EmptyCandidateSet,
            other => SchemeError::Selection(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Cvhd,
    Dvhd,
    Tdvhd,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Cvhd, Scheme::Dvhd, Scheme::Tdvhd];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Cvhd => "C-VHD",
            Scheme::Dvhd => "D-VHD",
            Scheme::Tdvhd => "T-DVHD",
        })
    }
}

/// Per-step latencies in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayParams {
    #[serde(rename = "t_uplink_ms")]
    pub t_uplink: f64,
    #[serde(rename = "t_downlink_ms")]
    pub t_downlink: f64,
    #[serde(rename = "t_calc_mt_ms")]
    pub t_calc_mt: f64,
    #[serde(rename = "t_calc_vn_ms")]
    pub t_calc_vn: f64,
    #[serde(rename = "t_select_ms")]
    pub t_select: f64,
}

impl Default for DelayParams {
    fn default() -> Self {
        Self {
            t_uplink: 10.0,
            t_downlink: 10.0,
            t_calc_mt: 5.0,
            t_calc_vn: 5.0,
            t_select: 1.0,
        }
    }
}

impl DelayParams {
    /// Name of the first field that is negative or not finite.
    pub fn invalid_field(&self) -> Option<&'static str> {
        [
            ("t_uplink_ms", self.t_uplink),
            ("t_downlink_ms", self.t_downlink),
            ("t_calc_mt_ms", self.t_calc_mt),
            ("t_calc_vn_ms", self.t_calc_vn),
            ("t_select_ms", self.t_select),
        ]
        .into_iter()
        .find(|(_, v)| !(v.is_finite() && *v >= 0.0))
        .map(|(name, _)| name)
    }

    pub fn cvhd_delay(&self, n: usize) -> f64 {
        let n = n as f64;
        n * (self.t_uplink + self.t_downlink) + n * self.t_calc_mt + self.t_select
    }

    pub fn dvhd_delay(&self) -> f64 {
        self.t_uplink + self.t_calc_vn + self.t_downlink + self.t_select
    }

    pub fn tdvhd_delay(&self, gate_attempts: usize) -> f64 {
        self.dvhd_delay() + gate_attempts.saturating_sub(1) as f64 * self.t_select
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "network", rename_all = "snake_case")]
pub enum Selected {
    Network(NetworkId),
    Blocked,
}

impl Selected {
    pub fn network(&self) -> Option<&NetworkId> {
        match self {
            Selected::Network(id) => Some(id),
            Selected::Blocked => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionOutcome {
    pub scheme: Scheme,
    pub method: Method,
    pub selected: Selected,
    pub processing_delay_ms: f64,
    pub messages: usize,
    pub per_network_scores: Vec<(NetworkId, f64)>,
}

impl DecisionOutcome {
    pub fn score_vector(&self) -> ScoreVector {
        ScoreVector {
            alternatives: self
                .per_network_scores
                .iter()
                .map(|(id, _)| id.0.clone())
                .collect(),
            scores: self.per_network_scores.iter().map(|(_, s)| *s).collect(),
        }
    }
}

/// Everything a decision needs apart from the candidates and trust.
#[derive(Debug, Clone, Copy)]
pub struct DecisionContext<'a> {
    pub required: &'a QosVector,
    pub profile: &'a WeightProfile,
    pub method: Method,
    pub delays: &'a DelayParams,
}

pub fn run_cvhd(
    candidates: &[CandidateNetwork],
    ctx: DecisionContext<'_>,
) -> Result<DecisionOutcome, SchemeError> {
    if candidates.is_empty() {
        return Err(SchemeError::EmptyCandidateSet);
    }
    let scores = global_nqv(candidates, ctx.profile, ctx.method)?;
    let scored: Vec<(NetworkId, f64)> = candidates
        .iter()
        .map(|c| c.id.clone())
        .zip(scores.scores)
        .collect();
    let best = select_best(&scored)?;
    let n = candidates.len();
    Ok(DecisionOutcome {
        scheme: Scheme::Cvhd,
        method: ctx.method,
        selected: Selected::Network(best),
        processing_delay_ms: ctx.delays.cvhd_delay(n),
        messages: 2 * n,
        per_network_scores: scored,
    })
}

fn reference_scores(
    candidates: &[CandidateNetwork],
    ctx: &DecisionContext<'_>,
) -> Result<Vec<(NetworkId, f64)>, SchemeError> {
    if candidates.is_empty() {
        return Err(SchemeError::EmptyCandidateSet);
    }
    candidates
        .iter()
        .map(|c| reference_nqv(c, ctx.required, ctx.profile, ctx.method).map(|s| (c.id.clone(), s)))
        .collect::<Result<_, _>>()
        .map_err(SchemeError::from)
}

pub fn run_dvhd(
    candidates: &[CandidateNetwork],
    ctx: DecisionContext<'_>,
) -> Result<DecisionOutcome, SchemeError> {
    let scored = reference_scores(candidates, &ctx)?;
    let best = select_best(&scored)?;
    Ok(DecisionOutcome {
        scheme: Scheme::Dvhd,
        method: ctx.method,
        selected: Selected::Network(best),
        processing_delay_ms: ctx.delays.dvhd_delay(),
        messages: 2 * candidates.len(),
        per_network_scores: scored,
    })
}

/// D-VHD scoring followed by the LoT gate over the ranked candidates. The
/// trust state is read, never modified. Returns the ranked ids as well.
pub fn run_tdvhd(
    candidates: &[CandidateNetwork],
    ctx: DecisionContext<'_>,
    trust: &TrustState,
) -> Result<(DecisionOutcome, Vec<NetworkId>), SchemeError> {
    let scored = reference_scores(candidates, &ctx)?;
    let as_vector = ScoreVector {
        alternatives: scored.iter().map(|(id, _)| id.0.clone()).collect(),
        scores: scored.iter().map(|(_, s)| *s).collect(),
    };
    let ranked: Vec<NetworkId> = rank(&as_vector).order.into_iter().map(NetworkId).collect();
    let gate = lot_gate(&ranked, trust);
    let selected = match &gate {
        GateDecision::Connect { network, .. } => Selected::Network(network.clone()),
        GateDecision::Blocked { .. } => Selected::Blocked,
    };
    let outcome = DecisionOutcome {
        scheme: Scheme::Tdvhd,
        method: ctx.method,
        selected,
        processing_delay_ms: ctx.delays.tdvhd_delay(gate.attempts()),
        messages: 2 * candidates.len(),
        per_network_scores: scored,
    };
    Ok((outcome, ranked))
}

/// Runs `scheme`; `trust` is only consulted by T-DVHD.
pub fn run_scheme(
    scheme: Scheme,
    candidates: &[CandidateNetwork],
    ctx: DecisionContext<'_>,
    trust: &TrustState,
) -> Result<DecisionOutcome, SchemeError> {
    match scheme {
        Scheme::Cvhd => run_cvhd(candidates, ctx),
        Scheme::Dvhd => run_dvhd(candidates, ctx),
        Scheme::Tdvhd => run_tdvhd(candidates, ctx, trust).map(|(o, _)| o),
    }
}
