//! The shadowing tracker, the contraction bound and the grid certificates.

use std::sync::Arc;

use fuzzhyper::chains::{index_chain, sweep_deltas};
use fuzzhyper::config::Budget;
use fuzzhyper::dynamics::{classify_contractive, SystemMap};
use fuzzhyper::instances::Instance;
use fuzzhyper::oracle::shadowed_by_start_sets;
use fuzzhyper::rational::{int, q};
use fuzzhyper::shadowing::{
    all_chains_shadowed, certify_example, contraction_bound_violation, endograph_shadowing_harness,
    example_connected_chain, example_discrete_chain, fuzzy_tracking_distance, is_eps_shadowed,
    shadowing_equivalence_harness, sweep_eps, CertVerdict,
};
use fuzzhyper::{gen, StepFuzzySet, Q};
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

const STATES: usize = 200_000;

fn random_system(seed: u64, n: usize) -> SystemMap {
    let mut rng = gen::rng(seed);
    let space = Arc::new(gen::random_space(&mut rng, n, 10));
    gen::random_map(&mut rng, space)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tracker_matches_start_set_automaton(seed in any::<u64>(), n in 1usize..=5) {
        let sys = random_system(seed, n);
        for delta in sweep_deltas(&sys) {
            for eps in sweep_eps(sys.space()) {
                let v = all_chains_shadowed(&sys, delta, eps, STATES).unwrap();
                prop_assert_eq!(v.holds, shadowed_by_start_sets(&sys, delta, eps));
                if let Some(c) = v.counterexample {
                    prop_assert!(c.is_valid());
                    prop_assert_eq!(is_eps_shadowed(&sys, &c.points, eps).unwrap(), None);
                    // Breadth-first search returns a shortest counterexample.
                    let head = &c.points[..c.points.len() - 1];
                    prop_assert!(is_eps_shadowed(&sys, head, eps).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn shadowing_is_monotone(seed in any::<u64>(), n in 2usize..=5) {
        let sys = random_system(seed, n);
        let ds = sweep_deltas(&sys);
        let es = sweep_eps(sys.space());
        let table: Vec<Vec<bool>> =
            ds.iter().map(|d| es.iter().map(|e| all_chains_shadowed(&sys, *d, *e, STATES).unwrap().holds).collect()).collect();
        for i in 0..ds.len() {
            for j in 0..es.len() {
                if table[i][j] {
                    prop_assert!(i == 0 || table[i - 1][j]);
                    prop_assert!(j + 1 == es.len() || table[i][j + 1]);
                }
            }
        }
    }

    #[test]
    fn contractions_obey_the_geometric_bound(seed in any::<u64>(), n in 2usize..=5, eps_num in 1i128..=8) {
        let mut rng = gen::rng(seed);
        let space = Arc::new(gen::random_space(&mut rng, n, 10));
        // Random contractions are rare on larger spaces; the halving shift on 0, 1, 3, 7, ... has lambda 1/2.
        let sys = (0..200).map(|_| gen::random_map(&mut rng, space.clone())).find(|f| classify_contractive(f).is_some()).unwrap_or_else(|| {
            let line = Arc::new(gen::spread_line(n));
            SystemMap::new(line, (0..n).map(|i| i.saturating_sub(1)).collect()).unwrap()
        });
        let lambda = classify_contractive(&sys).unwrap();
        let eps = q(eps_num, 4);
        let delta = (Q::one() - lambda) * eps;
        let s = sys.space();
        for _ in 0..20 {
            let mut points = vec![rng.random_range(0..n)];
            for _ in 0..10 {
                let fx = sys.apply(*points.last().unwrap());
                let near: Vec<usize> = (0..n).filter(|&y| s.d(fx, y) < delta).collect();
                points.push(near[rng.random_range(0..near.len())]);
            }
            let c = index_chain(&sys, points, delta).unwrap();
            prop_assert_eq!(contraction_bound_violation(&sys, &c, lambda, eps), None);
        }
    }
}

#[test]
fn certified_examples_reject_fine_candidates() {
    let eps0 = q(1, 5);
    let mut rng = gen::rng(500);
    for ex in [
        example_discrete_chain(16).unwrap(),
        example_connected_chain(16).unwrap(),
    ] {
        let cert = certify_example(&ex, eps0, q(1, 64), &Budget::default()).unwrap();
        assert!(cert.certified());
        let space = ex.system.space().clone();
        let support: Vec<usize> = ex.candidate_support.ones().collect();
        for _ in 0..2000 {
            let mut mu = vec![Q::from_integer(0); space.len()];
            for &x in &support {
                mu[x] = q(rng.random_range(0..=997), 997);
            }
            mu[support[rng.random_range(0..support.len())]] = int(1);
            let c = StepFuzzySet::normal(space.clone(), mu).unwrap();
            assert!(
                fuzzy_tracking_distance(&ex.system, &ex.chain.points, &c).unwrap() >= eps0,
                "{c}"
            );
        }
    }
}

#[test]
fn inconclusive_candidates_stay_within_the_margin() {
    let eps0 = q(1, 5);
    for ex in [
        example_discrete_chain(8).unwrap(),
        example_connected_chain(8).unwrap(),
    ] {
        let cert = certify_example(&ex, eps0, q(1, 64), &Budget::default()).unwrap();
        let CertVerdict::Inconclusive { candidate } = &cert.verdict else {
            panic!("k = 8 is shadowed")
        };
        assert!(
            fuzzy_tracking_distance(&ex.system, &ex.chain.points, candidate).unwrap() < cert.margin
        );
    }
}

#[test]
fn equivalence_harness_on_small_instances() {
    let budget = Budget::default();
    for inst in [
        Instance::Identity2,
        Instance::Swap2,
        Instance::TwoPoint,
        Instance::Cycle(3),
    ] {
        let sys = inst.build().unwrap();
        let rep = shadowing_equivalence_harness(&sys, &sweep_eps(sys.space()), Some(2), &budget);
        assert!(rep.all_passed(), "{inst}");
        assert!(!rep.partial);
    }
}

#[test]
fn endograph_harness_hypothesis() {
    let budget = Budget::default();
    let collapse = Instance::TwoPoint.build().unwrap();
    let rep = endograph_shadowing_harness(&collapse, q(1, 5), &[q(1, 2)], q(1, 16), &budget);
    assert!(rep.checks.is_empty());
    assert!(rep.notes[0].contains("hypothesis not met"));

    let swap = Instance::Swap2.build().unwrap();
    let rep = endograph_shadowing_harness(&swap, q(1, 8), &[q(1, 2), q(1, 3)], q(1, 16), &budget);
    assert_eq!(rep.checks.len(), 2);
    assert!(rep.all_passed());
}
