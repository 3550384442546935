use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use super::geometry::Point;
use crate::schemes::DecisionOutcome;
use crate::selection::NetworkId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    /// Seconds, rounded to the millisecond.
    pub time: f64,
    pub position: Point,
    #[serde(flatten)]
    pub event: Event,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Event {
    /// The set of covering cells changed.
    CoverageChange {
        cells: Vec<NetworkId>,
    },
    HandoverTriggered {
        serving: NetworkId,
        candidates: Vec<NetworkId>,
    },
    DecisionMade {
        outcome: DecisionOutcome,
    },
    Connected {
        network: NetworkId,
        previous: Option<NetworkId>,
    },
    HandoverBlocked {
        serving: Option<NetworkId>,
    },
    TrustUpdated {
        network: NetworkId,
        lot: f64,
        violated: bool,
    },
    /// The terminal lost its serving network and nothing can replace it.
    NoCoverage {
        previous: Option<NetworkId>,
    },
    /// End of the trajectory.
    Finished,
}

impl Event {
    pub fn name(&self) -> &'static str {
        match self {
            Event::CoverageChange { .. } => "CoverageChange",
            Event::HandoverTriggered { .. } => "HandoverTriggered",
            Event::DecisionMade { .. } => "DecisionMade",
            Event::Connected { .. } => "Connected",
            Event::HandoverBlocked { .. } => "HandoverBlocked",
            Event::TrustUpdated { .. } => "TrustUpdated",
            Event::NoCoverage { .. } => "NoCoverage",
            Event::Finished => "Finished",
        }
    }
}

/// Writes one JSON object per line.
pub fn write_jsonl<W: Write>(mut out: W, trace: &[TraceEvent]) -> io::Result<()> {
    for ev in trace {
        serde_json::to_writer(&mut out, ev)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn to_jsonl(trace: &[TraceEvent]) -> String {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, trace).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn read_jsonl<R: BufRead>(input: R) -> io::Result<Vec<TraceEvent>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
