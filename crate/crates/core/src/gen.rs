//! Seeded generators for random spaces, maps and step sets, plus exhaustive map enumeration.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::SystemMap;
use crate::fuzzy::StepFuzzySet;
use crate::metric::FiniteMetricSpace;
use crate::rational::{int, q, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shortest-path closure of random edge weights in `{1/4, 2/4, ..., max_quarters/4}`.
#[allow(clippy::needless_range_loop)]
pub fn random_space<R: Rng>(rng: &mut R, n: usize, max_quarters: i128) -> FiniteMetricSpace {
    let mut d = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = q(rng.random_range(1..=max_quarters), 4);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new(labels, d).expect("shortest paths form a metric")
}

/// Points `0, 1, 3, 7, ...` on the line: all pairwise distances distinct.
pub fn spread_line(n: usize) -> FiniteMetricSpace {
    let pts: Vec<(String, Q)> = (0..n)
        .map(|i| (format!("p{i}"), int((1i128 << i) - 1)))
        .collect();
    FiniteMetricSpace::on_line(&pts).expect("distinct points")
}

pub fn random_map<R: Rng>(rng: &mut R, space: Arc<FiniteMetricSpace>) -> SystemMap {
    let n = space.len();
    let image = (0..n).map(|_| rng.random_range(0..n)).collect();
    SystemMap::new(space, image).expect("image in range")
}

/// All `n^n` maps of a space, in lexicographic order of images.
pub fn all_maps(space: &Arc<FiniteMetricSpace>) -> Vec<SystemMap> {
    let n = space.len();
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut image = vec![0; n];
            for slot in image.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            SystemMap::new(space.clone(), image).expect("image in range")
        })
        .collect()
}

/// Normal step set with memberships in `{0, 1/den, ..., 1}`.
pub fn random_step_set<R: Rng>(
    rng: &mut R,
    space: Arc<FiniteMetricSpace>,
    den: i128,
) -> StepFuzzySet {
    let n = space.len();
    let mut mu: Vec<Q> = (0..n).map(|_| q(rng.random_range(0..=den), den)).collect();
    mu[rng.random_range(0..n)] = int(1);
    StepFuzzySet::normal(space, mu).expect("normal by construction")
}

/// Uniform nonempty subset.
pub fn random_subset<R: Rng>(rng: &mut R, space: &FiniteMetricSpace) -> crate::metric::PointSet {
    let mut s = space.empty_set();
    while s.is_clear() {
        for i in 0..space.len() {
            if rng.random_bool(0.5) {
                s.insert(i);
            }
        }
    }
    s
}
