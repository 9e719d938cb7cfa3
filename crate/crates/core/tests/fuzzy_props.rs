//! Properties of the four metrics on normal step fuzzy sets.

use std::sync::Arc;

use fuzzhyper::dynamics::{fuzzy_grid, is_lipschitz_with, SystemMap};
use fuzzhyper::fuzzy::{zadeh_extend, FuzzyMetric};
use fuzzhyper::metric::hausdorff;
use fuzzhyper::oracle::{sampled_graph_distance, skorokhod_grid};
use fuzzhyper::rational::{int, q};
use fuzzhyper::{gen, FiniteMetricSpace, StepFuzzySet, Q};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

const METRICS: [FuzzyMetric; 4] = [
    FuzzyMetric::End,
    FuzzyMetric::Send,
    FuzzyMetric::Skorokhod,
    FuzzyMetric::Inf,
];

fn grid_matrix(space: &Arc<FiniteMetricSpace>, m: u32, metric: FuzzyMetric) -> Vec<Vec<Q>> {
    let g = fuzzy_grid(&SystemMap::identity(space.clone()), m, metric, 10_000).unwrap();
    let s = g.system.space();
    (0..s.len())
        .map(|i| (0..s.len()).map(|j| s.d(i, j)).collect())
        .collect()
}

fn spaces() -> Vec<Arc<FiniteMetricSpace>> {
    let mut rng = gen::rng(200);
    let mut out = vec![Arc::new(
        FiniteMetricSpace::discrete(&["a", "b"], int(1)).unwrap(),
    )];
    for n in 1..=3 {
        out.push(Arc::new(gen::random_space(&mut rng, n, 8)));
    }
    out.push(Arc::new(gen::spread_line(3)));
    out
}

#[test]
#[allow(clippy::needless_range_loop)]
fn metric_axioms_and_ordering_on_quarter_grids() {
    for space in spaces() {
        let mats: Vec<Vec<Vec<Q>>> = METRICS.iter().map(|m| grid_matrix(&space, 4, *m)).collect();
        let n = mats[0].len();
        for d in &mats {
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(d[i][j], d[j][i]);
                    assert_eq!(d[i][j].is_zero(), i == j);
                    for k in 0..n {
                        assert!(d[i][k] <= d[i][j] + d[j][k]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert!(mats[0][i][j] <= mats[1][i][j]);
                assert!(mats[1][i][j] <= mats[2][i][j]);
                assert!(mats[2][i][j] <= mats[3][i][j]);
                assert!(mats[0][i][j] <= Q::one());
            }
        }
    }
}

#[test]
fn lipschitz_maps_do_not_expand_any_metric() {
    for space in spaces().into_iter().filter(|s| s.len() >= 2) {
        for sys in gen::all_maps(&space)
            .into_iter()
            .filter(|f| is_lipschitz_with(f, Q::one()))
        {
            for metric in METRICS {
                let g = fuzzy_grid(&sys, 4, metric, 10_000).unwrap();
                let (s, img) = (g.system.space(), g.system.image());
                for i in 0..s.len() {
                    for j in 0..s.len() {
                        assert!(
                            s.d(img[i], img[j]) <= s.d(i, j),
                            "{metric:?} map {:?}",
                            sys.image()
                        );
                    }
                }
            }
        }
    }
}

fn arb_pair() -> impl Strategy<Value = (StepFuzzySet, StepFuzzySet)> {
    (any::<u64>(), 1usize..=4).prop_map(|(seed, n)| {
        let mut rng = gen::rng(seed);
        let space = Arc::new(gen::random_space(&mut rng, n, 12));
        (
            gen::random_step_set(&mut rng, space.clone(), 8),
            gen::random_step_set(&mut rng, space, 8),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn support_and_core_bounds((u, v) in arb_pair()) {
        let s = u.space().clone();
        let h0 = hausdorff(&s, &u.support(), &v.support()).unwrap();
        let h1 = hausdorff(&s, &u.core(), &v.core()).unwrap();
        prop_assert!(h0 <= FuzzyMetric::Send.eval(&u, &v).unwrap());
        prop_assert!(h0.max(h1) <= FuzzyMetric::Skorokhod.eval(&u, &v).unwrap());
    }

    #[test]
    fn close_to_a_crisp_set_means_close_levels(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = gen::rng(seed);
        let space = Arc::new(gen::random_space(&mut rng, n, 12));
        let k = gen::random_subset(&mut rng, &space);
        let u = gen::random_step_set(&mut rng, space.clone(), 8);
        let ck = StepFuzzySet::characteristic(space.clone(), &k).unwrap();
        let delta = FuzzyMetric::End.eval(&ck, &u).unwrap();
        prop_assume!(delta < q(1, 2));
        for i in 1..=64 {
            let a = q(i, 64);
            if a > delta && a <= Q::one() - delta {
                prop_assert!(hausdorff(&space, &k, &u.level(a).unwrap()).unwrap() <= delta);
            }
        }
    }

    #[test]
    fn zadeh_extension_acts_levelwise(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = gen::rng(seed);
        let space = Arc::new(gen::random_space(&mut rng, n, 12));
        let f = gen::random_map(&mut rng, space.clone());
        let u = gen::random_step_set(&mut rng, space, 8);
        let fu = zadeh_extend(&f, &u).unwrap();
        for i in 0..=16 {
            let a = q(i, 16);
            prop_assert_eq!(fu.level(a).unwrap(), f.image_set(&u.level(a).unwrap()));
        }
    }

    #[test]
    fn graph_metrics_match_sampled_graphs((u, v) in arb_pair(), steps in prop::sample::select(vec![5i128, 7, 64])) {
        let tol = q(1, steps);
        let end = FuzzyMetric::End.eval(&u, &v).unwrap();
        let send = FuzzyMetric::Send.eval(&u, &v).unwrap();
        prop_assert!((sampled_graph_distance(&u, &v, steps, false) - end).abs() <= tol);
        prop_assert!((sampled_graph_distance(&u, &v, steps, true) - send).abs() <= tol);
    }

    #[test]
    fn skorokhod_below_every_piecewise_linear_alignment((u, v) in arb_pair()) {
        let exact = FuzzyMetric::Skorokhod.eval(&u, &v).unwrap();
        prop_assert!(exact <= skorokhod_grid(&u, &v, 16));
        prop_assert!(exact <= skorokhod_grid(&u, &v, 64));
    }
}

// A coarse alignment grid can miss the optimum by more than its step: the optimal alignment may
// need several knots packed into a short interval. The 1/64 grid is fine enough for
// memberships in multiples of 1/8.
#[test]
fn skorokhod_attained_by_fine_alignments() {
    for scale in [int(1), int(3)] {
        let space = Arc::new(FiniteMetricSpace::discrete(&["a", "b"], scale).unwrap());
        let grid: Vec<StepFuzzySet> = fuzzhyper::fuzzy::grid_memberships(2, 4)
            .into_iter()
            .map(|mu| StepFuzzySet::normal(space.clone(), mu).unwrap())
            .collect();
        for u in &grid {
            for v in &grid {
                assert_eq!(
                    FuzzyMetric::Skorokhod.eval(u, v).unwrap(),
                    skorokhod_grid(u, v, 16)
                );
            }
        }
    }
    let mut rng = gen::rng(201);
    for _ in 0..500 {
        let n = rng.random_range(1..=4);
        let space = Arc::new(gen::random_space(&mut rng, n, 12));
        let u = gen::random_step_set(&mut rng, space.clone(), 8);
        let v = gen::random_step_set(&mut rng, space, 8);
        assert_eq!(
            FuzzyMetric::Skorokhod.eval(&u, &v).unwrap(),
            skorokhod_grid(&u, &v, 64),
            "{u} {v}"
        );
    }
    // The pair that a 1/16 grid overestimates.
    let d = [[0, 4, 7, 1], [4, 0, 10, 5], [7, 10, 0, 6], [1, 5, 6, 0]];
    let dist = d
        .iter()
        .map(|r| r.iter().map(|&x| q(x, 4)).collect())
        .collect();
    let space =
        Arc::new(FiniteMetricSpace::new((0..4).map(|i| format!("p{i}")).collect(), dist).unwrap());
    let u = StepFuzzySet::normal(space.clone(), vec![q(5, 8), int(1), q(3, 8), q(1, 2)]).unwrap();
    let v = StepFuzzySet::normal(space, vec![q(1, 8), int(1), q(7, 8), q(3, 4)]).unwrap();
    assert_eq!(FuzzyMetric::Skorokhod.eval(&u, &v).unwrap(), q(5, 4));
    assert_eq!(skorokhod_grid(&u, &v, 16), q(3, 2));
    assert_eq!(skorokhod_grid(&u, &v, 64), q(5, 4));
}
