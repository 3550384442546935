use proptest::prelude::*;

use vho_core::madm::{
    normalize, rank, rsd, saw_scores, wpm_ratios, wpm_value, CriterionSpec, DecisionMatrix,
    Direction, Method, WeightVector,
};
use vho_core::schemes::{run_cvhd, run_dvhd, run_tdvhd, DecisionContext, DelayParams, Selected};
use vho_core::selection::{
    global_nqv, reference_nqv, select_best, CandidateNetwork, NetworkId, QosVector, Technology,
    WeightProfile,
};
use vho_core::trust::{lot_gate, GateDecision, TrustParams, TrustState};

fn weights(m: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0.05f64..1.0, m).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        WeightVector::new(raw.iter().map(|w| w / total).collect()).unwrap()
    })
}

fn matrix_with_weights(
    max_n: usize,
    max_m: usize,
) -> impl Strategy<Value = (DecisionMatrix, WeightVector)> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(prop::collection::vec(0.01f64..100.0, m), n),
            prop::collection::vec(any::<bool>(), m),
            weights(m),
        )
            .prop_map(move |(values, benefit, w)| {
                let criteria = benefit
                    .iter()
                    .enumerate()
                    .map(|(j, &b)| {
                        CriterionSpec::new(
                            format!("c{j}"),
                            if b {
                                Direction::Benefit
                            } else {
                                Direction::Cost
                            },
                        )
                    })
                    .collect();
                let alts = (0..values.len()).map(|i| format!("A{i}")).collect();
                (DecisionMatrix::new(criteria, alts, values).unwrap(), w)
            })
    })
}

fn qos() -> impl Strategy<Value = QosVector> {
    (
        10.0f64..10_000.0,
        1.0f64..500.0,
        0.5f64..100.0,
        0.1f64..20.0,
    )
        .prop_map(|(b, d, j, c)| QosVector::new(b, d, j, c))
}

fn candidates(max: usize) -> impl Strategy<Value = Vec<CandidateNetwork>> {
    prop::collection::vec(qos(), 1..=max).prop_map(|qs| {
        qs.into_iter()
            .enumerate()
            .map(|(i, q)| CandidateNetwork::new(format!("n{i}").as_str(), Technology::WiFi, q))
            .collect()
    })
}

fn voice_profile() -> impl Strategy<Value = WeightProfile> {
    weights(4)
        .prop_map(|w| WeightProfile::new(vho_core::selection::ApplicationClass::Voice, w).unwrap())
}

proptest! {
    #[test]
    fn normalization_is_idempotent((m, _) in matrix_with_weights(8, 6)) {
        let once = normalize(&m);
        let twice = normalize(&once);
        for (a, b) in once.values().iter().flatten().zip(twice.values().iter().flatten()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn column_scaling_changes_nothing(
        (m, w) in matrix_with_weights(8, 6),
        col in any::<prop::sample::Index>(),
        c in 0.001f64..1000.0,
    ) {
        let j = col.index(m.n_criteria());
        let scaled = m.scale_column(j, c).unwrap();
        let (n0, n1) = (normalize(&m), normalize(&scaled));
        for (a, b) in n0.values().iter().flatten().zip(n1.values().iter().flatten()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        let (r0, r1) = (wpm_ratios(&m, &w).unwrap(), wpm_ratios(&scaled, &w).unwrap());
        for (a, b) in r0.scores.iter().zip(&r1.scores) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert_eq!(rank(&r0).order, rank(&r1).order);
        prop_assert_eq!(
            rank(&saw_scores(&n0, &w).unwrap()).order,
            rank(&saw_scores(&n1, &w).unwrap()).order
        );
    }

    #[test]
    fn scores_lie_in_unit_interval((m, w) in matrix_with_weights(8, 6)) {
        for s in saw_scores(&normalize(&m), &w).unwrap().scores {
            prop_assert!(s > 0.0 && s <= 1.0);
        }
        let r = wpm_ratios(&m, &w).unwrap();
        for &s in &r.scores {
            prop_assert!(s > 0.0 && s <= 1.0);
        }
    }

    #[test]
    fn log_space_matches_naive_product((m, w) in matrix_with_weights(8, 6)) {
        for row in m.values() {
            let naive: f64 = row
                .iter()
                .zip(w.as_slice())
                .zip(m.criteria())
                .map(|((x, wj), c)| match c.direction {
                    Direction::Benefit => x.powf(*wj),
                    Direction::Cost => x.powf(-wj),
                })
                .product();
            let got = wpm_value(row, &w, m.criteria()).unwrap();
            prop_assert!(((got - naive) / naive).abs() <= 1e-9);
        }
    }

    #[test]
    fn rsd_matches_two_pass(xs in prop::collection::vec(0.01f64..10.0, 2..20)) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        let want = var.sqrt() / mean * 100.0;
        let got = rsd(&xs).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1e-12));
    }

    #[test]
    fn reference_nqv_is_monotone(
        c in qos(),
        req in qos(),
        profile in voice_profile(),
        which in 0usize..4,
        factor in 1.0f64..5.0,
    ) {
        let mut better = c;
        match which {
            0 => better.bandwidth_kbps *= factor,
            1 => better.delay_ms /= factor,
            2 => better.jitter_ms /= factor,
            _ => better.cost /= factor,
        }
        let a = CandidateNetwork::new("a", Technology::WiFi, c);
        let b = CandidateNetwork::new("a", Technology::WiFi, better);
        for method in Method::ALL {
            let s0 = reference_nqv(&a, &req, &profile, method).unwrap();
            let s1 = reference_nqv(&b, &req, &profile, method).unwrap();
            prop_assert!(s1 >= s0);
            prop_assert!(s0 > 0.0 && s0 <= 1.0);
        }
    }

    #[test]
    fn global_saw_winner_is_madm_rank_winner(cs in candidates(6), profile in voice_profile()) {
        let s = global_nqv(&cs, &profile, Method::Saw).unwrap();
        let scored: Vec<(NetworkId, f64)> =
            cs.iter().map(|c| c.id.clone()).zip(s.scores.iter().copied()).collect();
        prop_assert_eq!(select_best(&scored).unwrap().0, rank(&s).order[0].clone());
        for &x in &s.scores {
            prop_assert!(x > 0.0 && x <= 1.0);
        }
    }

    #[test]
    fn lot_stays_in_unit_interval(
        start in 0.0f64..=1.0,
        steps in prop::collection::vec((qos(), any::<bool>()), 0..60),
    ) {
        let req = QosVector::new(500.0, 100.0, 20.0, 5.0);
        let id = NetworkId::from("n");
        let mut s = TrustState::with_levels(TrustParams::default(), [(id.clone(), start)]).unwrap();
        for (q, _) in steps {
            let before = s.lot(&id);
            let next = s.update(&id, &q, &req);
            let after = next.lot(&id);
            prop_assert!((0.0..=1.0).contains(&after));
            let expected = if q.violates(&req) { before - 0.1 } else { before + 0.05 };
            prop_assert!((after - expected.clamp(0.0, 1.0)).abs() < 1e-12);
            s = next;
        }
    }

    #[test]
    fn update_touches_only_one_network(levels in prop::collection::vec(0.0f64..=1.0, 2..6), q in qos()) {
        let ids: Vec<NetworkId> = (0..levels.len()).map(|i| NetworkId::new(format!("n{i}"))).collect();
        let s = TrustState::with_levels(TrustParams::default(), ids.iter().cloned().zip(levels)).unwrap();
        let t = s.update(&ids[0], &q, &QosVector::new(500.0, 100.0, 20.0, 5.0));
        for id in &ids[1..] {
            prop_assert_eq!(s.lot(id), t.lot(id));
        }
    }

    #[test]
    fn gate_prefers_earlier_ranked_and_is_monotone(
        levels in prop::collection::vec(0.0f64..=1.0, 1..8),
        t_low in 0.0f64..=1.0,
        t_high in 0.0f64..=1.0,
    ) {
        let (t_low, t_high) = if t_low <= t_high { (t_low, t_high) } else { (t_high, t_low) };
        let ids: Vec<NetworkId> = (0..levels.len()).map(|i| NetworkId::new(format!("n{i}"))).collect();
        let state = |threshold| {
            let p = TrustParams { threshold, ..TrustParams::default() };
            TrustState::with_levels(p, ids.iter().cloned().zip(levels.iter().copied())).unwrap()
        };
        let low = lot_gate(&ids, &state(t_low));
        let high = lot_gate(&ids, &state(t_high));
        if let GateDecision::Connect { attempts, network } = &low {
            // Nothing before the accepted network passes.
            prop_assert!(levels[..attempts - 1].iter().all(|&l| l < t_low));
            prop_assert_eq!(network, &ids[attempts - 1]);
        }
        match (&low, &high) {
            (GateDecision::Blocked { .. }, GateDecision::Connect { .. }) => {
                prop_assert!(false, "raising the threshold unblocked a handover");
            }
            (GateDecision::Connect { attempts: a, .. }, GateDecision::Connect { attempts: b, .. }) => {
                prop_assert!(b >= a);
            }
            _ => {}
        }
    }

    #[test]
    fn distributed_beats_centralized_delay(
        n in 2usize..10,
        up in 0.1f64..50.0,
        down in 0.1f64..50.0,
        mt in 0.0f64..20.0,
        vn_frac in 0.0f64..=1.0,
        select in 0.0f64..5.0,
    ) {
        let d = DelayParams { t_uplink: up, t_downlink: down, t_calc_mt: mt, t_calc_vn: mt * vn_frac, t_select: select };
        prop_assert!(d.dvhd_delay() < d.cvhd_delay(n));
    }

    #[test]
    fn schemes_agree_and_count_messages(cs in candidates(8), req in qos(), profile in voice_profile()) {
        let delays = DelayParams::default();
        for method in Method::ALL {
            let ctx = DecisionContext { required: &req, profile: &profile, method, delays: &delays };
            let c = run_cvhd(&cs, ctx).unwrap();
            let d = run_dvhd(&cs, ctx).unwrap();
            let trust = TrustState::new(TrustParams { threshold: 0.0, ..TrustParams::default() }).unwrap();
            let (t, _) = run_tdvhd(&cs, ctx, &trust).unwrap();
            prop_assert_eq!(&t.selected, &d.selected);
            prop_assert_eq!(t.processing_delay_ms, d.processing_delay_ms);
            for o in [&c, &d, &t] {
                prop_assert_eq!(o.messages, 2 * cs.len());
                prop_assert!(o.processing_delay_ms >= 0.0);
                prop_assert!(matches!(o.selected, Selected::Network(_)));
            }
            prop_assert_eq!(run_dvhd(&cs, ctx).unwrap(), d);
            prop_assert_eq!(run_cvhd(&cs, ctx).unwrap(), c);
        }
    }

    #[test]
    fn reference_score_ignores_peers(cs in candidates(6), req in qos(), profile in voice_profile()) {
        let delays = DelayParams::default();
        let ctx = DecisionContext { required: &req, profile: &profile, method: Method::Wpm, delays: &delays };
        let all = run_dvhd(&cs, ctx).unwrap();
        let alone = run_dvhd(&cs[..1], ctx).unwrap();
        prop_assert_eq!(all.per_network_scores[0].1, alone.per_network_scores[0].1);
    }
}

#[test]
fn dominant_row_ranks_first_under_both_methods() {
    let m = DecisionMatrix::new(
        vec![
            CriterionSpec::benefit("bw"),
            CriterionSpec::cost("delay"),
            CriterionSpec::cost("cost"),
        ],
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![10.0, 5.0, 2.0],
            vec![8.0, 5.0, 3.0],
            vec![12.0, 9.0, 1.0],
        ],
    )
    .unwrap();
    let w = WeightVector::new(vec![0.4, 0.4, 0.2]).unwrap();
    let saw = saw_scores(&normalize(&m), &w).unwrap();
    let wpm = wpm_ratios(&m, &w).unwrap();
    assert!(saw.scores[0] > saw.scores[1]);
    assert!(wpm.scores[0] > wpm.scores[1]);
}
