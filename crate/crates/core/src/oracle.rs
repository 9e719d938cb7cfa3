//! Brute-force reference implementations used to cross-check the exact algorithms.

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::chains::ChainGraph;
use crate::dynamics::SystemMap;
use crate::fuzzy::{breakpoints_of, level_set, StepFuzzySet};
use crate::metric::{hausdorff_unchecked, FiniteMetricSpace, PointSet};
use crate::rational::{mid, q, Q};

/// Skorokhod distance restricted to piecewise linear reparametrizations whose knots sit at the
/// merged breakpoints and take values in `{i/g} ∪ breakpoints ∪ midpoints`. Any such
/// reparametrization gives an upper bound, so the result is at least the exact distance.
/// Solved as a min-max path over knot values.
pub fn skorokhod_grid(u: &StepFuzzySet, v: &StepFuzzySet, g: i128) -> Q {
    let space = u.space();
    let (mu, mv) = (u.memberships(), v.memberships());
    let bv = breakpoints_of(mv);
    let mut knots: Vec<Q> = breakpoints_of(mu);
    knots.extend(bv.iter().copied());
    knots.push(Q::one());
    knots.sort();
    knots.dedup();
    let mut vals: Vec<Q> = (1..g).map(|i| q(i, g)).collect();
    vals.extend(knots.iter().copied());
    vals.sort();
    vals.dedup();
    let mids: Vec<Q> = vals.windows(2).map(|w| mid(w[0], w[1])).collect();
    vals.extend(mids);
    vals.push(Q::zero());
    vals.sort();
    vals.dedup();
    let vals: Vec<Q> = vals.into_iter().filter(|x| *x < Q::one()).collect();

    let v_level = |beta: Q| -> PointSet {
        // v_beta for beta in (b_{i-1}, b_i] is the level at b_i.
        let b = bv.iter().copied().find(|b| *b >= beta).unwrap();
        level_set(mv, b)
    };
    // Cost of alpha in (t0, t1] sent linearly onto (s0, s1].
    let seg = |t0: Q, t1: Q, s0: Q, s1: Q| -> Q {
        let ua = level_set(mu, t1);
        let mut worst = (s0 - t0).abs().max((s1 - t1).abs());
        let mut betas: Vec<Q> = bv.iter().copied().filter(|b| *b > s0 && *b < s1).collect();
        betas.push(s1);
        for beta in betas {
            worst = worst.max(hausdorff_unchecked(space, &ua, &v_level(beta)));
        }
        worst
    };
    let base = hausdorff_unchecked(space, &level_set(mu, Q::zero()), &level_set(mv, Q::zero()));
    // best[i]: cheapest cost with the previous knot sent to vals[i].
    let mut prev_t = Q::zero();
    let mut best: Vec<Option<Q>> = vals.iter().map(|x| x.is_zero().then_some(base)).collect();
    for (ki, &t) in knots.iter().enumerate() {
        let last = ki + 1 == knots.len();
        let targets: Vec<Q> = if last { vec![Q::one()] } else { vals.clone() };
        let next: Vec<Option<Q>> = targets
            .iter()
            .map(|&s1| {
                vals.iter()
                    .zip(&best)
                    .filter(|(s0, c)| c.is_some() && **s0 < s1)
                    .map(|(&s0, c)| c.unwrap().max(seg(prev_t, t, s0, s1)))
                    .min()
            })
            .collect();
        prev_t = t;
        if last {
            return next[0].expect("identity is always available");
        }
        best = next;
    }
    unreachable!("knots end at 1")
}

/// Hausdorff distance between sampled endographs: points `(x, k/n)` below `u(x)` plus the
/// tops `(x, u(x))`, in the max metric. With `only_support` the points over `u(x) = 0` are
/// dropped, giving the sendograph.
pub fn sampled_graph_distance(
    u: &StepFuzzySet,
    v: &StepFuzzySet,
    n: i128,
    only_support: bool,
) -> Q {
    let space = u.space();
    let sample = |w: &StepFuzzySet| -> Vec<(usize, Q)> {
        let mut pts = Vec::new();
        for (x, &m) in w.memberships().iter().enumerate() {
            if only_support && m.is_zero() {
                continue;
            }
            for k in 0..=n {
                let a = q(k, n);
                if a <= m {
                    pts.push((x, a));
                }
            }
            pts.push((x, m));
        }
        pts
    };
    let (pu, pv) = (sample(u), sample(v));
    let directed = |a: &[(usize, Q)], b: &[(usize, Q)]| -> Q {
        a.iter()
            .map(|(x, s)| {
                b.iter()
                    .map(|(y, t)| space.d(*x, *y).max((*s - *t).abs()))
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap_or_else(Q::zero)
    };
    directed(&pu, &pv).max(directed(&pv, &pu))
}

/// Mixing by matrix powers: `A^n` is all ones for every `n` in a window starting at the
/// Wielandt bound `(V-1)^2 + 1` and spanning `V^2` further exponents.
pub fn mixing_by_powers(g: &ChainGraph) -> bool {
    let v = g.len();
    let mut rows: Vec<FixedBitSet> = (0..v)
        .map(|x| {
            let mut b = FixedBitSet::with_capacity(v);
            b.insert(x);
            b
        })
        .collect();
    let step = |rows: &[FixedBitSet]| -> Vec<FixedBitSet> {
        rows.iter()
            .map(|r| {
                let mut out = FixedBitSet::with_capacity(v);
                for x in r.ones() {
                    out.extend(g.succ[x].iter().copied());
                }
                out
            })
            .collect()
    };
    let start = (v - 1) * (v - 1) + 1;
    for _ in 0..start {
        rows = step(&rows);
    }
    for _ in 0..=v * v {
        if !rows.iter().all(|r| r.is_full()) {
            return false;
        }
        rows = step(&rows);
    }
    true
}

/// Enumerates every δ-chain with at most `max_len` links and tests whether some start point
/// ε-shadows it, keeping the set of start points still tracking. Returns the first chain that
/// no point shadows.
pub fn unshadowed_chain(sys: &SystemMap, delta: Q, eps: Q, max_len: usize) -> Option<Vec<usize>> {
    let s = sys.space();
    let n = sys.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| s.d(sys.apply(x), y) < delta).collect())
        .collect();
    // iterates[j][x] = f^j(x)
    let mut iterates = vec![(0..n).collect::<Vec<_>>()];
    for j in 1..=max_len {
        let prev = &iterates[j - 1];
        iterates.push(prev.iter().map(|&x| sys.apply(x)).collect());
    }
    fn dfs(
        s: &FiniteMetricSpace,
        succ: &[Vec<usize>],
        it: &[Vec<usize>],
        eps: Q,
        path: &mut Vec<usize>,
        alive: &FixedBitSet,
        max_len: usize,
    ) -> bool {
        if path.len() > max_len {
            return false;
        }
        let j = path.len();
        let x = *path.last().unwrap();
        for &y in &succ[x] {
            let mut next = alive.clone();
            for z in alive.ones() {
                if s.d(it[j][z], y) >= eps {
                    next.set(z, false);
                }
            }
            path.push(y);
            if next.is_clear() || dfs(s, succ, it, eps, path, &next, max_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    for x0 in 0..n {
        let mut alive = FixedBitSet::with_capacity(n);
        alive.extend((0..n).filter(|&z| s.d(z, x0) < eps));
        let mut path = vec![x0];
        if dfs(s, &succ, &iterates, eps, &mut path, &alive, max_len) {
            return Some(path);
        }
    }
    None
}

/// Exhaustive shadowing decision over start points instead of iterates: states are
/// `(x_j, S_j, phase(j))` where `S_j` holds the start points whose orbits tracked the chain so
/// far and `phase` folds `j` onto the eventually periodic sequence of powers `f^j`.
pub fn shadowed_by_start_sets(sys: &SystemMap, delta: Q, eps: Q) -> bool {
    let s = sys.space();
    let n = sys.len();
    // f^t as lookup tables until the sequence of powers repeats.
    let mut powers: Vec<Vec<usize>> = vec![(0..n).collect()];
    let (pre, period) = loop {
        let next: Vec<usize> = powers
            .last()
            .unwrap()
            .iter()
            .map(|&z| sys.apply(z))
            .collect();
        if let Some(i) = powers.iter().position(|p| *p == next) {
            break (i, powers.len() - i);
        }
        powers.push(next);
    };
    let advance = |t: usize| if t + 1 < pre + period { t + 1 } else { pre };
    let mut seen = std::collections::HashSet::new();
    let mut stack = Vec::new();
    for x0 in 0..n {
        let mut start = FixedBitSet::with_capacity(n);
        start.extend((0..n).filter(|&z| s.d(z, x0) < eps));
        if seen.insert((x0, start.clone(), 0)) {
            stack.push((x0, start, 0));
        }
    }
    while let Some((x, alive, t)) = stack.pop() {
        let t1 = advance(t);
        for y in (0..n).filter(|&y| s.d(sys.apply(x), y) < delta) {
            let mut next = FixedBitSet::with_capacity(n);
            next.extend(alive.ones().filter(|&z| s.d(powers[t1][z], y) < eps));
            if next.is_clear() {
                return false;
            }
            if seen.insert((y, next.clone(), t1)) {
                stack.push((y, next, t1));
            }
        }
    }
    true
}

/// Hausdorff distance straight from the definition, over explicit point lists.
pub fn hausdorff_naive(space: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> Q {
    let dir = |p: &[usize], r: &[usize]| {
        p.iter()
            .map(|&x| r.iter().map(|&y| space.d(x, y)).min().unwrap())
            .max()
            .unwrap()
    };
    dir(a, b).max(dir(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{d_end, d_send, d_skorokhod};
    use crate::rational::int;
    use std::sync::Arc;

    #[test]
    fn oracles_on_a_known_pair() {
        let x = Arc::new(FiniteMetricSpace::discrete(&["a", "b"], int(1)).unwrap());
        let u = StepFuzzySet::normal(x.clone(), vec![int(1), q(1, 2)]).unwrap();
        let v = StepFuzzySet::normal(x.clone(), vec![int(1), q(3, 8)]).unwrap();
        let exact = d_skorokhod(&u, &v).unwrap();
        assert_eq!(exact, q(1, 8));
        let brute = skorokhod_grid(&u, &v, 16);
        assert!(exact <= brute && brute <= exact + q(1, 16), "{brute}");
        assert_eq!(
            sampled_graph_distance(&u, &v, 64, false),
            d_end(&u, &v).unwrap()
        );
        assert_eq!(
            sampled_graph_distance(&u, &v, 64, true),
            d_send(&u, &v).unwrap()
        );
    }
}
