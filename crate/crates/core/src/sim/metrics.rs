use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::trace::{Event, TraceEvent};
use crate::madm::rsd;
use crate::selection::NetworkId;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SimMetrics {
    /// Connections that moved the terminal off a serving network.
    pub handovers: usize,
    pub blocked: usize,
    pub decisions: usize,
    pub no_coverage: usize,
    /// Over `DecisionMade` events; zero when there were none.
    pub mean_processing_delay_ms: f64,
    pub max_processing_delay_ms: f64,
    /// Mean RSD (percent) of candidate scores over decisions with at least two candidates.
    pub mean_decision_rsd_percent: Option<f64>,
    /// `Connected` events per target network.
    pub connections: BTreeMap<NetworkId, usize>,
    /// Networks connected to, in order.
    pub connection_sequence: Vec<NetworkId>,
    pub total_time_s: f64,
}

pub fn metrics(trace: &[TraceEvent]) -> SimMetrics {
    let mut m = SimMetrics::default();
    let mut delay_sum = 0.0;
    let mut rsd_sum = 0.0;
    let mut rsd_count = 0usize;
    for ev in trace {
        m.total_time_s = m.total_time_s.max(ev.time);
        match &ev.event {
            Event::DecisionMade { outcome } => {
                m.decisions += 1;
                delay_sum += outcome.processing_delay_ms;
                m.max_processing_delay_ms =
                    m.max_processing_delay_ms.max(outcome.processing_delay_ms);
                let scores: Vec<f64> = outcome.per_network_scores.iter().map(|(_, s)| *s).collect();
                if let Ok(r) = rsd(&scores) {
                    rsd_sum += r;
                    rsd_count += 1;
                }
            }
            Event::Connected { network, previous } => {
                if previous.is_some() {
                    m.handovers += 1;
                }
                *m.connections.entry(network.clone()).or_default() += 1;
                m.connection_sequence.push(network.clone());
            }
            Event::HandoverBlocked { .. } => m.blocked += 1,
            Event::NoCoverage { .. } => m.no_coverage += 1,
            _ => {}
        }
    }
    if m.decisions > 0 {
        m.mean_processing_delay_ms = delay_sum / m.decisions as f64;
    }
    if rsd_count > 0 {
        m.mean_decision_rsd_percent = Some(rsd_sum / rsd_count as f64);
    }
    m
}
