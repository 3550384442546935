use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use vho_core::madm::file::{read_matrix_file, MatrixFileError};
use vho_core::madm::{
    normalize, saw_scores, wpm_ratios, MadmError, Method, MethodResult, ScoreVector,
};
use vho_core::schemes::{Scheme, SchemeError};
use vho_core::selection::NetworkId;
use vho_core::sim::{self, Scenario, ScenarioError, SimMetrics};

use crate::MethodArg;

/// Errors mapped onto the process exit codes: 2 parse, 3 weights, 4 scenario.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Weights(String),
    #[error("{0}")]
    Scenario(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Weights(_) => 3,
            CliError::Scenario(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl From<MatrixFileError> for CliError {
    fn from(e: MatrixFileError) -> Self {
        match e {
            MatrixFileError::Weights { .. } => CliError::Weights(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Invalid { .. } => CliError::Scenario(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<MadmError> for CliError {
    fn from(e: MadmError) -> Self {
        CliError::Other(e.to_string())
    }
}

pub enum DecideInput {
    Matrix(PathBuf),
    Scores(PathBuf),
}

/// Precomputed score vectors, one per method, over the same alternatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoresFile {
    pub alternatives: Vec<String>,
    pub scores: BTreeMap<Method, Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecideReport {
    pub source: String,
    pub methods: Vec<MethodResult>,
    /// Method with the larger RSD, when both were evaluated and both RSDs exist.
    pub more_discriminating: Option<Method>,
}

fn selected_methods(arg: MethodArg) -> Vec<Method> {
    match arg {
        MethodArg::Saw => vec![Method::Saw],
        MethodArg::Wpm => vec![Method::Wpm],
        MethodArg::Both => Method::ALL.to_vec(),
    }
}

fn load_scores(path: &Path) -> Result<ScoresFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: line {}: {e}", path.display(), e.line())))
}

pub fn decide(input: &DecideInput, method: MethodArg) -> Result<DecideReport, CliError> {
    let methods = selected_methods(method);
    let (source, results) = match input {
        DecideInput::Matrix(path) => {
            let f = read_matrix_file(path)?;
            let results = methods
                .iter()
                .map(|&m| {
                    let scores = match m {
                        Method::Saw => saw_scores(&normalize(&f.matrix), &f.weights)?,
                        Method::Wpm => wpm_ratios(&f.matrix, &f.weights)?,
                    };
                    Ok(MethodResult::from_scores(m, &scores))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (path, results)
        }
        DecideInput::Scores(path) => {
            let f = load_scores(path)?;
            let results = methods
                .iter()
                .map(|&m| {
                    let raw = f.scores.get(&m).ok_or_else(|| {
                        CliError::Parse(format!(
                            "{}: no `{}` scores",
                            path.display(),
                            m.to_string().to_lowercase()
                        ))
                    })?;
                    let scores = ScoreVector::new(f.alternatives.clone(), raw.clone())
                        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                    Ok(MethodResult::from_scores(m, &scores))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            (path, results)
        }
    };
    let more_discriminating = match results.as_slice() {
        [a, b] => match (a.rsd_percent, b.rsd_percent) {
            (Some(x), Some(y)) if x > y => Some(a.method),
            (Some(x), Some(y)) if y > x => Some(b.method),
            _ => None,
        },
        _ => None,
    };
    Ok(DecideReport {
        source: source.display().to_string(),
        methods: results,
        more_discriminating,
    })
}

pub fn simulate(scenario_path: &Path, out: &Path) -> Result<SimMetrics, CliError> {
    let scenario = Scenario::load(scenario_path)?;
    let (trace, metrics) = sim::run(&scenario)?;
    let file = File::create(out)
        .map_err(|e| CliError::Other(format!("cannot create {}: {e}", out.display())))?;
    sim::write_jsonl(BufWriter::new(file), &trace)
        .map_err(|e| CliError::Other(format!("cannot write {}: {e}", out.display())))?;
    Ok(metrics)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub scheme: Scheme,
    pub method: Method,
    pub connections: Vec<NetworkId>,
    pub handovers: usize,
    pub decisions: usize,
    pub blocked: usize,
    pub mean_processing_delay_ms: f64,
    pub mean_decision_rsd_percent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub scenario: String,
    pub rows: Vec<CompareRow>,
}

pub fn compare(scenario_path: &Path) -> Result<CompareReport, CliError> {
    let base = Scenario::load(scenario_path)?;
    let mut rows = Vec::new();
    for scheme in Scheme::ALL {
        for method in Method::ALL {
            let (_, m) = sim::run(&base.with_decision(scheme, method))?;
            rows.push(CompareRow {
                scheme,
                method,
                connections: m.connection_sequence,
                handovers: m.handovers,
                decisions: m.decisions,
                blocked: m.blocked,
                mean_processing_delay_ms: m.mean_processing_delay_ms,
                mean_decision_rsd_percent: m.mean_decision_rsd_percent,
            });
        }
    }
    Ok(CompareReport {
        scenario: scenario_path.display().to_string(),
        rows,
    })
}
