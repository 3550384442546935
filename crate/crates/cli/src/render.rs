use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::Path;

use serde::Serialize;

use vho_core::sim::SimMetrics;

use crate::commands::{CliError, CompareReport, DecideReport};

/// ANSI styling; off when `VHO_COLOR=0` or stdout is not a terminal.
pub struct Style {
    color: bool,
}

impl Style {
    pub fn from_env() -> Self {
        let disabled = std::env::var("VHO_COLOR").is_ok_and(|v| v == "0");
        Self {
            color: !disabled && std::io::stdout().is_terminal(),
        }
    }

    pub fn plain() -> Self {
        Self { color: false }
    }

    fn bold(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn green(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[32m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Other(e.to_string()))
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |r| format!("{r:.2}%"))
}

pub fn decide_table(r: &DecideReport, style: &Style) -> String {
    let mut out = String::new();
    for m in &r.methods {
        let _ = writeln!(out, "{}", style.bold(&m.method.to_string()));
        let _ = writeln!(
            out,
            "  {:>4}  {:<16} {:>10}",
            "rank", "alternative", "score"
        );
        for (i, id) in m.ranking.order.iter().enumerate() {
            let score = m.ranking.scores.get(id).unwrap_or(f64::NAN);
            let _ = writeln!(out, "  {:>4}  {:<16} {:>10.4}", i + 1, id, score);
        }
        let _ = writeln!(out, "  order:  {}", m.ranking.order.join(" "));
        let _ = writeln!(out, "  RSD:    {}", pct(m.rsd_percent));
        let _ = writeln!(out, "  winner: {}", style.green(&m.winner));
        out.push('\n');
    }
    if let Some(best) = r.more_discriminating {
        let _ = writeln!(
            out,
            "larger RSD (more discriminating): {}",
            style.bold(&best.to_string())
        );
    }
    out
}

pub fn metrics_table(m: &SimMetrics, trace: &Path, style: &Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", style.bold("simulation summary"));
    let _ = writeln!(out, "  trace:                 {}", trace.display());
    let _ = writeln!(out, "  simulated time:        {:.3} s", m.total_time_s);
    let _ = writeln!(out, "  decisions:             {}", m.decisions);
    let _ = writeln!(out, "  handovers:             {}", m.handovers);
    let _ = writeln!(out, "  blocked handovers:     {}", m.blocked);
    let _ = writeln!(out, "  coverage losses:       {}", m.no_coverage);
    let _ = writeln!(
        out,
        "  mean processing delay: {:.3} ms",
        m.mean_processing_delay_ms
    );
    let _ = writeln!(
        out,
        "  max processing delay:  {:.3} ms",
        m.max_processing_delay_ms
    );
    let _ = writeln!(
        out,
        "  mean decision RSD:     {}",
        pct(m.mean_decision_rsd_percent)
    );
    let seq: Vec<&str> = m.connection_sequence.iter().map(|n| n.as_str()).collect();
    let _ = writeln!(out, "  connections:           {}", seq.join(" -> "));
    out
}

pub fn compare_table(r: &CompareReport, style: &Style) -> String {
    let mut out = String::new();
    let header = format!(
        "{:<7} {:<6} {:>9} {:>9} {:>8} {:>14} {:>10}  {}",
        "scheme",
        "method",
        "decisions",
        "handovers",
        "blocked",
        "mean delay ms",
        "mean RSD",
        "connections"
    );
    let _ = writeln!(out, "{}", style.bold(&header));
    for row in &r.rows {
        let seq: Vec<&str> = row.connections.iter().map(|n| n.as_str()).collect();
        let _ = writeln!(
            out,
            "{:<7} {:<6} {:>9} {:>9} {:>8} {:>14.3} {:>10}  {}",
            row.scheme.to_string(),
            row.method.to_string(),
            row.decisions,
            row.handovers,
            row.blocked,
            row.mean_processing_delay_ms,
            pct(row.mean_decision_rsd_percent),
            seq.join(" -> ")
        );
    }
    out
}
