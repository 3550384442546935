use super::{CriterionSpec, DecisionMatrix, Direction, MadmError, ScoreVector, WeightVector};

/// Rescales every column into (0, 1]: benefit columns divide by the column
/// maximum, cost columns divide the column minimum by the value. The result
/// is all-benefit.
pub fn normalize(matrix: &DecisionMatrix) -> DecisionMatrix {
    let m = matrix.n_criteria();
    let extremes: Vec<f64> = (0..m)
        .map(|j| match matrix.criteria()[j].direction {
            Direction::Benefit => matrix.column(j).fold(f64::MIN, f64::max),
            Direction::Cost => matrix.column(j).fold(f64::MAX, f64::min),
        })
        .collect();

    let values = matrix
        .values()
        .iter()
        .map(|row| {
            row.iter()
                .zip(matrix.criteria())
                .zip(&extremes)
                .map(|((&x, c), &e)| match c.direction {
                    Direction::Benefit => x / e,
                    Direction::Cost => e / x,
                })
                .collect()
        })
        .collect();

    let criteria = matrix
        .criteria()
        .iter()
        .map(|c| CriterionSpec::benefit(c.name.clone()))
        .collect();
    // x <= max and min <= x, so every quotient is in (0, 1] barring underflow.
    DecisionMatrix::from_parts_unchecked(criteria, matrix.alternatives().to_vec(), values)
}

/// Weighted sum of each row. Expects a normalized (all-benefit) matrix.
pub fn saw_scores(normalized: &DecisionMatrix, w: &WeightVector) -> Result<ScoreVector, MadmError> {
    w.check_len(normalized.n_criteria())?;
    let scores = normalized
        .values()
        .iter()
        .map(|row| {
            let s: f64 = row.iter().zip(w.as_slice()).map(|(v, wj)| wj * v).sum();
            // Weights may sum to 1 + 1e-9.
            s.min(1.0)
        })
        .collect();
    ScoreVector::new(normalized.alternatives().to_vec(), scores)
}

fn log_wpm_value(row: &[f64], w: &WeightVector, specs: &[CriterionSpec]) -> Result<f64, MadmError> {
    w.check_len(row.len())?;
    if specs.len() != row.len() {
        return Err(MadmError::DimensionMismatch {
            expected: row.len(),
            actual: specs.len(),
        });
    }
    let mut acc = 0.0;
    for (j, ((&x, &wj), spec)) in row.iter().zip(w.as_slice()).zip(specs).enumerate() {
        if !(x.is_finite() && x > 0.0) {
            return Err(MadmError::NonPositiveValue {
                row: 0,
                col: j,
                value: x,
            });
        }
        let term = wj * x.ln();
        match spec.direction {
            Direction::Benefit => acc += term,
            Direction::Cost => acc -= term,
        }
    }
    Ok(acc)
}

/// Weighted product of one row: benefit values raised to `+w_j`, cost values
/// to `-w_j`. Evaluated as `exp(sum(±w_j ln x_j))`.
pub fn wpm_value(row: &[f64], w: &WeightVector, specs: &[CriterionSpec]) -> Result<f64, MadmError> {
    log_wpm_value(row, w, specs).map(f64::exp)
}

/// Best value of each column: the maximum for benefit, the minimum for cost.
pub fn ideal_alternative(matrix: &DecisionMatrix) -> Vec<f64> {
    matrix
        .criteria()
        .iter()
        .enumerate()
        .map(|(j, c)| match c.direction {
            Direction::Benefit => matrix.column(j).fold(f64::MIN, f64::max),
            Direction::Cost => matrix.column(j).fold(f64::MAX, f64::min),
        })
        .collect()
}

/// `V(A_i) / V(A*)` for every row, where `A*` is the ideal alternative.
pub fn wpm_ratios(matrix: &DecisionMatrix, w: &WeightVector) -> Result<ScoreVector, MadmError> {
    let specs = matrix.criteria();
    let ideal = log_wpm_value(&ideal_alternative(matrix), w, specs)?;
    let scores = matrix
        .values()
        .iter()
        .map(|row| log_wpm_value(row, w, specs).map(|v| (v - ideal).exp()))
        .collect::<Result<Vec<_>, _>>()?;
    ScoreVector::new(matrix.alternatives().to_vec(), scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn voice() -> WeightVector {
        WeightVector::new(vec![0.3, 0.2, 0.2, 0.3]).unwrap()
    }

    fn single(direction: Direction, col: &[f64]) -> DecisionMatrix {
        DecisionMatrix::new(
            vec![CriterionSpec::new("x", direction)],
            (0..col.len()).map(|i| format!("A{}", i + 1)).collect(),
            col.iter().map(|&v| vec![v]).collect(),
        )
        .unwrap()
    }

    fn column(m: &DecisionMatrix) -> Vec<f64> {
        m.column(0).collect()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn benefit_column_divides_by_max() {
        let n = normalize(&single(
            Direction::Benefit,
            &[8.0, 1.5, 15.0, 7.0, 11.0, 1.0],
        ));
        assert_close(
            &column(&n),
            &[0.5333, 0.1, 1.0, 0.4667, 0.7333, 0.0667],
            5e-5,
        );
        assert_eq!(n.criteria()[0].direction, Direction::Benefit);
    }

    #[test]
    fn cost_column_divides_min_by_value() {
        let n = normalize(&single(Direction::Cost, &[9.0, 8.0, 12.0, 6.0, 10.0, 9.0]));
        assert_close(&column(&n), &[0.6667, 0.75, 0.5, 1.0, 0.6, 0.6667], 5e-5);
        assert_eq!(n.criteria()[0].direction, Direction::Benefit);
    }

    #[test]
    fn constant_column_normalizes_to_ones() {
        for d in [Direction::Benefit, Direction::Cost] {
            assert_eq!(
                column(&normalize(&single(d, &[3.5, 3.5, 3.5]))),
                vec![1.0; 3]
            );
        }
    }

    #[test]
    fn saw_row_a2_of_matrix_d() {
        let m = DecisionMatrix::new(
            ["X1", "X2", "X3", "X4"]
                .map(CriterionSpec::benefit)
                .to_vec(),
            vec!["A2".into(), "A4".into()],
            vec![vec![1.0, 0.1, 0.75, 0.812], vec![1.0, 0.467, 1.0, 1.0]],
        )
        .unwrap();
        // Oracle: 0.3*1 + 0.2*0.1 + 0.2*0.75 + 0.3*0.812 and
        //         0.3*1 + 0.2*0.467 + 0.2*1 + 0.3*1.
        let s = saw_scores(&m, &voice()).unwrap();
        assert_close(&s.scores, &[0.7136, 0.8934], 1e-12);
    }

    #[test]
    fn saw_with_degenerate_weights_returns_first_column() {
        let m = DecisionMatrix::new(
            vec![CriterionSpec::benefit("a"), CriterionSpec::benefit("b")],
            vec!["p".into(), "q".into()],
            vec![vec![0.25, 1.0], vec![1.0, 0.5]],
        )
        .unwrap();
        let w = WeightVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(saw_scores(&m, &w).unwrap().scores, vec![0.25, 1.0]);
    }

    #[test]
    fn saw_rejects_wrong_weight_length() {
        let m = single(Direction::Benefit, &[1.0]);
        assert!(matches!(
            saw_scores(&m, &voice()),
            Err(MadmError::DimensionMismatch {
                expected: 1,
                actual: 4
            })
        ));
    }

    #[test]
    fn wpm_value_identities() {
        let specs = ["a", "b", "c", "d"].map(CriterionSpec::benefit);
        assert!((wpm_value(&[1.0; 4], &voice(), &specs).unwrap() - 1.0).abs() < 1e-15);

        let one = WeightVector::new(vec![1.0]).unwrap();
        let v = wpm_value(&[4.0], &one, &[CriterionSpec::benefit("x")]).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = wpm_value(&[4.0], &one, &[CriterionSpec::cost("x")]).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn wpm_value_row_a1() {
        let specs = ["a", "b", "c", "d"].map(CriterionSpec::benefit);
        // Oracle: naive product of powers.
        let row = [0.984, 0.533, 0.667, 0.438];
        let want: f64 = row
            .iter()
            .zip([0.3, 0.2, 0.2, 0.3])
            .map(|(x, w): (&f64, f64)| x.powf(w))
            .product();
        let got = wpm_value(&row, &voice(), &specs).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.6317).abs() < 5e-5);
    }

    #[test]
    fn wpm_value_rejects_non_positive() {
        let one = WeightVector::new(vec![1.0]).unwrap();
        assert!(matches!(
            wpm_value(&[0.0], &one, &[CriterionSpec::benefit("x")]),
            Err(MadmError::NonPositiveValue { .. })
        ));
    }

    #[test]
    fn ideal_picks_max_or_min() {
        assert_eq!(
            ideal_alternative(&single(Direction::Benefit, &[2.0, 5.0, 3.0])),
            vec![5.0]
        );
        assert_eq!(
            ideal_alternative(&single(Direction::Cost, &[2.0, 5.0, 3.0])),
            vec![2.0]
        );
    }

    #[test]
    fn single_alternative_ratio_is_one() {
        let m = DecisionMatrix::new(
            vec![CriterionSpec::benefit("a"), CriterionSpec::cost("b")],
            vec!["only".into()],
            vec![vec![3.0, 7.0]],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        assert_eq!(wpm_ratios(&m, &w).unwrap().scores, vec![1.0]);
    }

    #[test]
    fn dominant_row_has_unit_ratio() {
        let m = DecisionMatrix::new(
            vec![CriterionSpec::benefit("bw"), CriterionSpec::cost("delay")],
            vec!["a".into(), "b".into()],
            vec![vec![10.0, 20.0], vec![5.0, 40.0]],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let r = wpm_ratios(&m, &w).unwrap();
        assert_eq!(r.scores[0], 1.0);
        // Oracle: (5/10)^0.5 * (40/20)^-0.5 = 0.5
        assert!((r.scores[1] - 0.5).abs() < 1e-12);
    }
}
