//! Induced systems on hyperspaces and fuzzy grids.

use std::sync::Arc;

use fuzzhyper::dynamics::{
    classify_contractive, classify_expansive, contraexpansive_pair, fuzzy_grid, hyper_extend,
    is_expanding, is_positively_expansive, FuzzyGridSystem, SystemMap,
};
use fuzzhyper::fuzzy::{grid_memberships, zadeh_extend, FuzzyMetric};
use fuzzhyper::rational::{int, q};
use fuzzhyper::{gen, FiniteMetricSpace, StepFuzzySet, Q};
use num_traits::Zero;

fn small_spaces() -> Vec<Arc<FiniteMetricSpace>> {
    let mut rng = gen::rng(300);
    vec![
        Arc::new(FiniteMetricSpace::discrete(&["a", "b"], int(1)).unwrap()),
        Arc::new(FiniteMetricSpace::discrete(&["a", "b", "c"], int(2)).unwrap()),
        Arc::new(gen::spread_line(3)),
        Arc::new(gen::random_space(&mut rng, 3, 8)),
    ]
}

fn grid_dist(g: &FuzzyGridSystem, u: &StepFuzzySet, v: &StepFuzzySet) -> Q {
    g.system
        .space()
        .d(g.index_of(u).unwrap(), g.index_of(v).unwrap())
}

#[test]
fn constant_maps_induce_zero_contractions() {
    for space in small_spaces() {
        for target in 0..space.len() {
            let sys = SystemMap::constant(space.clone(), target).unwrap();
            for metric in [FuzzyMetric::Skorokhod, FuzzyMetric::Send, FuzzyMetric::End] {
                let g = fuzzy_grid(&sys, 4, metric, 10_000).unwrap();
                assert_eq!(classify_contractive(&g.system), Some(Q::zero()));
            }
        }
    }
}

#[test]
fn nonconstant_maps_keep_a_pair_at_fixed_distance() {
    // Distances in these spaces are at least 1/4, so k = 4 keeps the pair on the quarter grid.
    let k = 4;
    for space in small_spaces() {
        for sys in gen::all_maps(&space) {
            let Some((x, y)) = (0..space.len())
                .flat_map(|x| (0..space.len()).map(move |y| (x, y)))
                .find(|&(x, y)| sys.apply(x) != sys.apply(y))
            else {
                continue;
            };
            let (u, uk) = contraexpansive_pair(&space, x, y, k).unwrap();
            let (fu, fuk) = (
                zadeh_extend(&sys, &u).unwrap(),
                zadeh_extend(&sys, &uk).unwrap(),
            );
            for metric in [FuzzyMetric::Skorokhod, FuzzyMetric::Send, FuzzyMetric::End] {
                let g = fuzzy_grid(&sys, 4, metric, 10_000).unwrap();
                assert_eq!(grid_dist(&g, &u, &uk), q(1, k));
                assert_eq!(grid_dist(&g, &fu, &fuk), q(1, k));
                assert_eq!(
                    classify_contractive(&g.system),
                    None,
                    "map {:?}",
                    sys.image()
                );
            }
        }
    }
}

#[test]
fn height_pair_defeats_every_expansion_notion() {
    let k = 4;
    for space in small_spaces() {
        let (u, uk) = contraexpansive_pair(&space, 0, 1, k).unwrap();
        for sys in gen::all_maps(&space) {
            for metric in [FuzzyMetric::Skorokhod, FuzzyMetric::Send, FuzzyMetric::End] {
                let g = fuzzy_grid(&sys, 4, metric, 10_000).unwrap();
                let (mut a, mut b) = (u.clone(), uk.clone());
                for _ in 0..6 {
                    assert!(grid_dist(&g, &a, &b) <= q(1, k));
                    a = zadeh_extend(&sys, &a).unwrap();
                    b = zadeh_extend(&sys, &b).unwrap();
                }
                assert_eq!(classify_expansive(&g.system), None);
                assert!(!is_expanding(&g.system, q(1, k) + q(1, 100))
                    .unwrap()
                    .holds());
                assert!(is_positively_expansive(&g.system).delta_star.unwrap() <= q(1, k));
            }
        }
    }
}

#[test]
fn iterated_extension_is_extension_of_iterate() {
    for space in small_spaces() {
        let grid: Vec<StepFuzzySet> = grid_memberships(space.len(), 2)
            .into_iter()
            .map(|mu| StepFuzzySet::normal(space.clone(), mu).unwrap())
            .collect();
        for sys in gen::all_maps(&space) {
            for u in &grid {
                let mut w = u.clone();
                for n in 1..=4 {
                    w = zadeh_extend(&sys, &w).unwrap();
                    assert_eq!(w, zadeh_extend(&sys.power(n), u).unwrap());
                }
            }
        }
    }
}

#[test]
fn contraction_constant_survives_the_hyperextension() {
    let mut spaces = small_spaces();
    let mut rng = gen::rng(301);
    spaces.push(Arc::new(gen::random_space(&mut rng, 4, 10)));
    for space in spaces {
        for sys in gen::all_maps(&space) {
            let hyper = hyper_extend(&sys, 64).unwrap();
            assert_eq!(
                classify_contractive(&sys),
                classify_contractive(&hyper.system),
                "map {:?}",
                sys.image()
            );
        }
    }
}

#[test]
fn one_point_space_is_trivially_contractive() {
    let space = Arc::new(FiniteMetricSpace::discrete(&["a"], int(1)).unwrap());
    let sys = SystemMap::identity(space);
    assert_eq!(classify_contractive(&sys), Some(Q::zero()));
}
