use serde::{Deserialize, Serialize};

use super::{normalize, saw_scores, wpm_ratios};
use super::{DecisionMatrix, MadmError, Method, Ranking, ScoreVector, WeightVector};

/// Sorts alternatives by descending score. Equal scores keep their input order.
pub fn rank(scores: &ScoreVector) -> Ranking {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores.scores[b].total_cmp(&scores.scores[a]));
    Ranking {
        order: idx
            .into_iter()
            .map(|i| scores.alternatives[i].clone())
            .collect(),
        scores: scores.clone(),
    }
}

/// Relative standard deviation in percent, using the sample (n - 1)
/// standard deviation.
pub fn rsd(scores: &[f64]) -> Result<f64, MadmError> {
    let n = scores.len();
    if n < 2 {
        return Err(MadmError::TooFewScores(n));
    }
    let mean = scores.iter().sum::<f64>() / n as f64;
    if mean == 0.0 {
        return Err(MadmError::ZeroMean);
    }
    let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(var.sqrt() / mean * 100.0)
}

/// One method's outcome on a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub ranking: Ranking,
    pub winner: String,
    /// `None` when the RSD is undefined (fewer than two alternatives).
    pub rsd_percent: Option<f64>,
}

impl MethodResult {
    pub fn from_scores(method: Method, scores: &ScoreVector) -> Self {
        let ranking = rank(scores);
        Self {
            method,
            winner: ranking.winner().to_string(),
            rsd_percent: rsd(&scores.scores).ok(),
            ranking,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodComparison {
    pub saw: MethodResult,
    pub wpm: MethodResult,
    /// Method with the larger RSD; `None` if either RSD is undefined or they tie.
    pub more_discriminating: Option<Method>,
}

/// Scores the matrix with SAW (normalize, then weighted sum) and WPM (ratio to
/// the ideal), ranks both and picks the method whose scores spread more.
pub fn compare_methods(
    matrix: &DecisionMatrix,
    w: &WeightVector,
) -> Result<MethodComparison, MadmError> {
    let saw = MethodResult::from_scores(Method::Saw, &saw_scores(&normalize(matrix), w)?);
    let wpm = MethodResult::from_scores(Method::Wpm, &wpm_ratios(matrix, w)?);
    let more_discriminating = match (saw.rsd_percent, wpm.rsd_percent) {
        (Some(s), Some(p)) if p > s => Some(Method::Wpm),
        (Some(s), Some(p)) if s > p => Some(Method::Saw),
        _ => None,
    };
    Ok(MethodComparison {
        saw,
        wpm,
        more_discriminating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::madm::CriterionSpec;

    const PUBLISHED_SAW: [f64; 6] = [0.664, 0.714, 0.563, 0.793, 0.595, 0.635];
    const PUBLISHED_WPM: [f64; 6] = [0.73, 0.89, 0.32, 0.88, 0.47, 0.57];

    fn order(scores: &[f64]) -> Vec<String> {
        rank(&ScoreVector::numbered(scores.to_vec()).unwrap()).order
    }

    // Two-pass mean / variance, written out independently of `rsd`.
    fn rsd_oracle(xs: &[f64]) -> f64 {
        let mut sum = 0.0;
        for x in xs {
            sum += x;
        }
        let mean = sum / xs.len() as f64;
        let mut ss = 0.0;
        for x in xs {
            ss += (x - mean) * (x - mean);
        }
        (ss / (xs.len() as f64 - 1.0)).sqrt() * 100.0 / mean
    }

    #[test]
    fn published_orders() {
        assert_eq!(order(&PUBLISHED_SAW), ["A4", "A2", "A1", "A6", "A5", "A3"]);
        assert_eq!(order(&PUBLISHED_WPM), ["A2", "A4", "A1", "A6", "A5", "A3"]);
    }

    #[test]
    fn ties_keep_input_order() {
        assert_eq!(order(&[0.5, 0.5]), ["A1", "A2"]);
        assert_eq!(order(&[0.1, 0.7, 0.7, 0.2]), ["A2", "A3", "A4", "A1"]);
    }

    #[test]
    fn published_rsd_values() {
        let saw = rsd(&PUBLISHED_SAW).unwrap();
        let wpm = rsd(&PUBLISHED_WPM).unwrap();
        assert!((saw - 12.64).abs() < 0.02, "{saw}");
        assert!((wpm - 35.75).abs() < 0.05, "{wpm}");
        assert!((saw - rsd_oracle(&PUBLISHED_SAW)).abs() < 1e-12);
    }

    #[test]
    fn rsd_edge_cases() {
        assert!(rsd(&[0.4, 0.4, 0.4]).unwrap().abs() < 1e-12);
        assert_eq!(rsd(&[0.4]), Err(MadmError::TooFewScores(1)));
        assert_eq!(rsd(&[-1.0, 1.0]), Err(MadmError::ZeroMean));
    }

    #[test]
    fn single_alternative_comparison() {
        let m = DecisionMatrix::new(
            vec![CriterionSpec::benefit("a")],
            vec!["only".into()],
            vec![vec![2.0]],
        )
        .unwrap();
        let w = WeightVector::new(vec![1.0]).unwrap();
        let c = compare_methods(&m, &w).unwrap();
        assert_eq!(c.saw.winner, "only");
        assert_eq!(c.wpm.winner, "only");
        assert_eq!(c.saw.rsd_percent, None);
        assert_eq!(c.more_discriminating, None);
    }

    #[test]
    fn dominating_row_wins_both() {
        let m = DecisionMatrix::new(
            vec![CriterionSpec::benefit("bw"), CriterionSpec::cost("price")],
            vec!["weak".into(), "strong".into()],
            vec![vec![3.0, 9.0], vec![4.0, 6.0]],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.6, 0.4]).unwrap();
        let c = compare_methods(&m, &w).unwrap();
        assert_eq!(c.saw.winner, "strong");
        assert_eq!(c.wpm.winner, "strong");
        // SAW: weak = 0.6*0.75 + 0.4*(6/9); strong = 1.0
        let weak = c.saw.ranking.scores.get("weak").unwrap();
        assert!((weak - (0.45 + 0.4 * 6.0 / 9.0)).abs() < 1e-12);
    }
}
