mod common;

use causal_interface::*;
use common::*;
use proptest::prelude::*;

fn table_strategy() -> impl Strategy<Value = FrequencyTable> {
    prop::array::uniform4(0.005f64..1.0).prop_map(|[a, b, c, d]| {
        let s = a + b + c + d;
        FrequencyTable::new([[a / s, b / s], [c / s, d / s]]).unwrap()
    })
}

fn canonical_strategy() -> impl Strategy<Value = FrequencyTable> {
    table_strategy().prop_map(|t| t.canonicalize().unwrap().0)
}

fn spec_strategy() -> impl Strategy<Value = GenerativeSpec> {
    (0.01f64..0.99, 0.0f64..0.99, 0.0f64..0.99, 0.01f64..0.99)
        .prop_map(|(w, e0, e1, s1)| GenerativeSpec::new(w, e0, e1, s1).unwrap())
}

proptest! {
    #[test]
    fn counts_margins_match_count_sums(cells in prop::array::uniform4(0u64..(1 << 38))) {
        let [a, b, c, d] = cells;
        prop_assume!(a + b + c + d > 0);
        let counts = CountTable::new([[a, b], [c, d]]);
        let total = counts.total() as f64;
        let m = FrequencyTable::<f64>::from_counts(&counts).unwrap().margins();
        // Each cell is correctly rounded; their sum is off by at most an ulp.
        prop_assert!((m.rows[0] - (a + b) as f64 / total).abs() <= 2.0 * f64::EPSILON);
        prop_assert!((m.rows[1] - (c + d) as f64 / total).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn canonicalize_is_idempotent_permutation(t in table_strategy()) {
        let (once, _) = t.canonicalize().unwrap();
        let (twice, rec) = once.canonicalize().unwrap();
        prop_assert_eq!(once, twice);
        prop_assert!(!rec.columns_swapped);
        prop_assert!(once.determinant() >= -1e-12);
        let mut before: Vec<f64> = t.cells().iter().flatten().copied().collect();
        let mut after: Vec<f64> = once.cells().iter().flatten().copied().collect();
        before.sort_by(f64::total_cmp);
        after.sort_by(f64::total_cmp);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn row_normalized_rows_are_distributions(t in table_strategy()) {
        let r = t.row_normalize().unwrap();
        for i in 0..2 {
            prop_assert!((r.get(i, 0) + r.get(i, 1) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn effect_index_forms_agree(t in table_strategy()) {
        let e = effect_index(&t).unwrap();
        prop_assert!((e - negative_effect_index(&t).unwrap()).abs() <= 1e-12);
        let r = t.row_normalize().unwrap();
        let eq = effect_index(&r.to_equal_weight_table()).unwrap();
        prop_assert!((eq - (r.trace() - 1.0)).abs() <= 1e-12);
        prop_assert!((eq - r.determinant()).abs() <= 1e-12);
    }

    #[test]
    fn effect_index_ignores_group_sizes(t in table_strategy(), w in 0.01f64..0.99) {
        let r = t.row_normalize().unwrap();
        let e = effect_index(&t).unwrap();
        prop_assert!((effect_index(&r.to_table(w)).unwrap() - e).abs() <= 1e-12);
    }

    #[test]
    fn symmetric_confusion_is_rank_one(t in canonical_strategy()) {
        let d = symmetric_confusion(&t).unwrap();
        let c = d.confusion;
        let m = c.margins();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((c.get(i, j) - m.rows[i] * m.columns[j]).abs() <= 1e-12);
            }
        }
        prop_assert!(d.reconstruct().max_abs_diff(&t) <= 1e-12);
    }

    #[test]
    fn sigma_and_point_are_inverse(t in canonical_strategy(), u in 0.0f64..=1.0) {
        let r = t.row_normalize().unwrap();
        let g = geometry(&r).unwrap();
        prop_assume!(g.kind == GeometryKind::RegularArc);
        let eps0 = u * g.x_intercept;
        let point = InterfacePoint { eps0, eps1: eps1_of_eps0(&r, eps0).unwrap() };
        let sigma = sigma_from_point(&r, &point).unwrap();
        prop_assert!(sigma.sigma0 >= r.get(1, 0) - 1e-12 && sigma.sigma0 <= r.get(0, 0) + 1e-12);
        prop_assert!(sigma.sigma1 >= r.get(0, 1) - 1e-12 && sigma.sigma1 <= r.get(1, 1) + 1e-12);
        let back = point_from_sigma(&r, &sigma).unwrap();
        prop_assert!((back.eps0 - point.eps0).abs() <= 1e-12);
        prop_assert!((back.eps1 - point.eps1).abs() <= 1e-12);
        let again = sigma_from_point(&r, &back).unwrap();
        prop_assert!((again.sigma0 - sigma.sigma0).abs() <= 1e-12);
    }

    #[test]
    fn intercepts_are_nonnegative(t in canonical_strategy()) {
        let r = t.row_normalize().unwrap();
        let g = geometry(&r).unwrap();
        prop_assert!(g.x_intercept >= 0.0 && g.y_intercept >= 0.0);
        prop_assert_eq!(g.x_intercept == 0.0 && g.y_intercept == 0.0, r.determinant() <= 1e-12);
    }

    #[test]
    fn feasible_solutions_lie_on_curve(t in canonical_strategy()) {
        let r = t.row_normalize().unwrap();
        let sols = compare_all(&t).unwrap();
        let best = sols[1].explanatory_sum;
        for s in &sols {
            prop_assert!((s.explanatory_sum - s.point.sum()).abs() <= 1e-15);
            if s.status.is_feasible() {
                prop_assert!(on_curve(&r, &s.point), "{} off curve", s.kind);
                prop_assert!(best >= s.explanatory_sum - 1e-9);
            }
        }
        let g = geometry(&r).unwrap();
        prop_assert_eq!(sols[3].point, InterfacePoint { eps0: 0.0, eps1: g.y_intercept });
        let e = r.determinant();
        prop_assert!((sols[0].point.eps0 - e).abs() <= 1e-12 && (sols[0].point.eps1 - e).abs() <= 1e-12);
        if sols[4].status.is_feasible() {
            prop_assert_eq!(sols[4].sigma, Some(ConfusionDistribution { sigma0: 0.5, sigma1: 0.5 }));
        }
    }

    #[test]
    fn generative_round_trip(spec in spec_strategy()) {
        let p = expected_table(&spec);
        prop_assert!(p.determinant() >= 0.0);
        let r = p.row_normalize().unwrap();
        let point = InterfacePoint { eps0: spec.eps0, eps1: spec.eps1 };
        prop_assert!(on_curve(&r, &point));
        let sol = round_trip(&spec).unwrap();
        prop_assert!((sol.point.eps0 - spec.eps0).abs() <= 1e-9);
        prop_assert!((sol.point.eps1 - spec.eps1).abs() <= 1e-9);
    }
}

#[test]
fn auc_oracle_matches_closed_form() {
    let mut rng = rng(11);
    for _ in 0..1000 {
        let p = random_canonical(&mut rng);
        let m = measures(&p).unwrap();
        assert!(close(auc_rank_oracle(&p), m.auc, 1e-12));
    }
}

#[test]
fn arcs_satisfy_detzero_and_decrease() {
    let mut rng = rng(12);
    for _ in 0..1000 {
        let (_, r) = random_arc(&mut rng);
        let pts = sample_curve(&r, 100).unwrap();
        for p in &pts {
            assert!(detzero_residual(&r, p).abs() <= 1e-12);
        }
        assert!(pts.windows(2).all(|w| w[1].eps0 > w[0].eps0 && w[1].eps1 < w[0].eps1));
    }
}

#[test]
fn maximum_cause_dominates_sampled_curve() {
    let mut rng = rng(13);
    for _ in 0..200 {
        let (p, r) = random_arc(&mut rng);
        let m = solve(EpistemologyKind::MaximumCause, &p).unwrap();
        for q in sample_curve(&r, 1000).unwrap() {
            assert!(m.explanatory_sum >= q.sum() - 1e-9);
        }
    }
}

#[test]
fn decompose_reconstructs_and_ignores_row_scaling() {
    let mut rng = rng(14);
    for _ in 0..500 {
        let (p, r) = random_arc(&mut rng);
        let q = reweight(&r, &mut rng);
        for point in sample_curve(&r, 25).unwrap() {
            let d = decompose(&p, &point).unwrap();
            assert!(d.reconstruct().max_abs_diff(&p) <= 1e-12);
            assert!(d.confusion_full.unwrap().determinant().abs() <= 1e-12);
            let dq = decompose(&q, &point).unwrap();
            assert!(dq.reconstruct().max_abs_diff(&q) <= 1e-12);
            let (s, sq) = (d.sigma.unwrap(), dq.sigma.unwrap());
            assert!(close(s.sigma0, sq.sigma0, 1e-12));
        }
    }
}

#[test]
fn classification_geometric_mean_is_correlation() {
    let mut rng = rng(15);
    for _ in 0..1000 {
        let p = random_canonical(&mut rng);
        let c = solve(EpistemologyKind::Classification, &p).unwrap();
        let m = measures(&p).unwrap();
        assert!(close((c.point.eps0 * c.point.eps1).sqrt(), m.correlation, 1e-12));
    }
}

#[test]
fn monte_carlo_error_shrinks_with_sample_size() {
    let spec = GenerativeSpec::new(0.4, 0.3, 0.6, 0.45).unwrap();
    let expected = expected_table(&spec);
    let mut exceedances = 0;
    let mut mean_errors = Vec::new();
    for n in [1_000u64, 10_000, 100_000] {
        let bound = 4.0 * (1.0 / (4.0 * n as f64)).sqrt();
        let mut sum = 0.0;
        for seed in 0..50 {
            let counts = sample_counts(&spec, n, seed).unwrap().counts;
            let err = FrequencyTable::<f64>::from_counts(&counts).unwrap().max_abs_diff(&expected);
            if err > bound {
                exceedances += 1;
            }
            sum += err;
        }
        mean_errors.push(sum / 50.0);
    }
    assert!(exceedances <= 2, "{exceedances} runs outside the bound");
    assert!(mean_errors.windows(2).all(|w| w[1] < w[0]), "{mean_errors:?}");
}
