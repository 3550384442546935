//! Deterministic single-terminal handover simulation.
//!
//! The terminal walks its trajectory in fixed ticks. Each tick, in order:
//!
//! 1. under T-DVHD, the serving network's LoT is updated from the QoS it
//!    delivered over the elapsed tick;
//! 2. a `CoverageChange` is emitted if the set of covering cells changed;
//! 3. an unattached terminal with coverage runs a decision (once per distinct
//!    coverage set); an attached one runs a decision when the serving cell's
//!    trigger rises, or while it stays raised if coverage changed since the
//!    last decision.

mod geometry;
mod metrics;
mod scenario;
mod trace;

pub use geometry::{coverage_at, should_trigger, Cell, Point, Trajectory};
pub use metrics::{metrics, SimMetrics};
pub use scenario::{CellSpec, DecisionSpec, MobileSpec, Scenario, ScenarioError, ScenarioFile};
pub use trace::{read_jsonl, to_jsonl, write_jsonl, Event, TraceEvent};

use crate::schemes::{run_scheme, DecisionContext, Scheme, SchemeError, Selected};
use crate::selection::{CandidateNetwork, NetworkId};
use crate::trust::TrustState;

fn round_ms(t: f64) -> f64 {
    (t * 1000.0).round() / 1000.0
}

struct Run<'a> {
    scenario: &'a Scenario,
    trust: TrustState,
    serving: Option<NetworkId>,
    trace: Vec<TraceEvent>,
    time: f64,
    position: Point,
}

impl Run<'_> {
    fn emit(&mut self, event: Event) {
        self.trace.push(TraceEvent {
            time: self.time,
            position: self.position,
            event,
        });
    }

    fn decide(&mut self, coverage: &[NetworkId]) -> Result<(), SchemeError> {
        let s = self.scenario;
        let candidates: Vec<CandidateNetwork> = coverage
            .iter()
            .filter_map(|id| s.cell(id).map(|c| c.network.clone()))
            .collect();
        let ctx = DecisionContext {
            required: &s.mt_required,
            profile: &s.profile,
            method: s.method,
            delays: &s.delays,
        };
        let outcome = run_scheme(s.scheme, &candidates, ctx, &self.trust)?;
        let selected = outcome.selected.clone();
        self.emit(Event::DecisionMade { outcome });
        match selected {
            Selected::Network(id) => {
                if self.serving.as_ref() != Some(&id) {
                    let previous = self.serving.replace(id.clone());
                    self.emit(Event::Connected {
                        network: id,
                        previous,
                    });
                }
            }
            Selected::Blocked => {
                self.emit(Event::HandoverBlocked {
                    serving: self.serving.clone(),
                });
                if let Some(current) = &self.serving {
                    if !coverage.contains(current) {
                        let previous = self.serving.take();
                        self.emit(Event::NoCoverage { previous });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Simulates the scenario and returns its trace and summary metrics.
pub fn run(scenario: &Scenario) -> Result<(Vec<TraceEvent>, SimMetrics), SchemeError> {
    let trust = TrustState::new(scenario.trust).expect("scenario trust parameters are validated");
    let mut r = Run {
        scenario,
        trust,
        serving: None,
        trace: Vec::new(),
        time: 0.0,
        position: scenario.trajectory.position_at(0.0),
    };

    let duration = scenario.trajectory.duration();
    let steps = ((duration / scenario.tick) - 1e-9).ceil().max(0.0) as u64;
    let mut prev_coverage: Option<Vec<NetworkId>> = None;
    let mut last_decision_coverage: Option<Vec<NetworkId>> = None;
    let mut prev_trigger = false;

    for k in 0..=steps {
        let t = (k as f64 * scenario.tick).min(duration);
        r.time = round_ms(t);
        r.position = scenario.trajectory.position_at(t);

        if scenario.scheme == Scheme::Tdvhd && k > 0 {
            if let Some(id) = r.serving.clone() {
                let cell = scenario.cell(&id).expect("serving network has a cell");
                let observed = cell.network.offered;
                r.trust = r.trust.update(&id, &observed, &scenario.mt_required);
                r.emit(Event::TrustUpdated {
                    lot: r.trust.lot(&id),
                    violated: observed.violates(&scenario.mt_required),
                    network: id,
                });
            }
        }

        let coverage = coverage_at(&scenario.cells, r.position);
        if prev_coverage.as_ref() != Some(&coverage) {
            r.emit(Event::CoverageChange {
                cells: coverage.clone(),
            });
        }

        match r.serving.clone() {
            None => {
                if !coverage.is_empty() && last_decision_coverage.as_ref() != Some(&coverage) {
                    last_decision_coverage = Some(coverage.clone());
                    r.decide(&coverage)?;
                }
            }
            Some(serving) => {
                let cell = scenario.cell(&serving).expect("serving network has a cell");
                let trigger = should_trigger(cell, r.position, scenario.hysteresis);
                let coverage_moved = last_decision_coverage.as_ref() != Some(&coverage);
                if trigger && (!prev_trigger || coverage_moved) {
                    r.emit(Event::HandoverTriggered {
                        serving: serving.clone(),
                        candidates: coverage.clone(),
                    });
                    last_decision_coverage = Some(coverage.clone());
                    if coverage.is_empty() {
                        r.serving = None;
                        r.emit(Event::NoCoverage {
                            previous: Some(serving),
                        });
                    } else {
                        r.decide(&coverage)?;
                    }
                }
            }
        }
        prev_trigger = match &r.serving {
            Some(id) => should_trigger(
                scenario.cell(id).expect("serving network has a cell"),
                r.position,
                scenario.hysteresis,
            ),
            None => false,
        };
        prev_coverage = Some(coverage);
    }
    r.emit(Event::Finished);

    let summary = metrics(&r.trace);
    Ok((r.trace, summary))
}
