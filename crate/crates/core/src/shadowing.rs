//! Pseudo-orbit shadowing on finite systems: the tracker automaton, finite-shadowing
//! profiles, the two non-shadowable fuzzy chains and a grid certificate for them.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::chains::{
    endograph_chain, fuzzy_chain, n_delta, representatives, sweep_deltas, DeltaChain,
};
use crate::config::Budget;
use crate::dynamics::{fuzzy_grid, hyper_extend, SystemMap};
use crate::error::{domain, Error, Result};
use crate::fuzzy::{end_raw, zadeh_raw, FuzzyMetric, StepFuzzySet};
use crate::metric::{FiniteMetricSpace, PointSet};
use crate::par;
use crate::rational::{self, int, pos, q, Q};
use crate::report::{AnalysisReport, Check};

/// Least `x` with `d(f^j(x), x_j) < eps` for every `j`.
pub fn is_eps_shadowed(sys: &SystemMap, seq: &[usize], eps: Q) -> Result<Option<usize>> {
    if seq.is_empty() {
        return domain("cannot shadow an empty sequence");
    }
    if eps <= Q::zero() {
        return domain("eps must be positive");
    }
    let s = sys.space();
    Ok((0..sys.len()).find(|&x| {
        let mut y = x;
        seq.iter().enumerate().all(|(j, &p)| {
            if j > 0 {
                y = sys.apply(y);
            }
            s.d(y, p) < eps
        })
    }))
}

/// Outcome of [`all_chains_shadowed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowVerdict {
    pub delta: Q,
    pub eps: Q,
    pub holds: bool,
    /// A δ-chain that no orbit ε-shadows.
    pub counterexample: Option<DeltaChain<usize>>,
    /// Tracker states visited.
    pub states: usize,
}

/// Decides whether every δ-chain is ε-shadowed.
///
/// States are `(x_j, V_j)` with `V_j` the current iterates of the start points that have
/// tracked the chain so far. From `(x, V)` a link to `y` (with `d(f(x), y) < delta`) leads to
/// `(y, {f(v) : v in V, d(f(v), y) < eps})`. The property fails exactly when an empty
/// survivor set is reachable.
pub fn all_chains_shadowed(
    sys: &SystemMap,
    delta: Q,
    eps: Q,
    max_states: usize,
) -> Result<ShadowVerdict> {
    if delta <= Q::zero() || eps <= Q::zero() {
        return domain("delta and eps must be positive");
    }
    let s = sys.space();
    let n = sys.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| s.d(sys.apply(x), y) < delta).collect())
        .collect();
    let mut states: Vec<(usize, FixedBitSet, usize)> = Vec::new();
    let mut seen: HashSet<(usize, FixedBitSet)> = HashSet::new();
    for x in 0..n {
        let v: FixedBitSet = (0..n).filter(|&w| s.d(w, x) < eps).collect_bitset(n);
        if seen.insert((x, v.clone())) {
            states.push((x, v, usize::MAX));
        }
    }
    if states.len() > max_states {
        return Err(Error::Budget {
            what: "shadowing tracker states".into(),
            count: states.len() as u128,
            budget: max_states as u128,
        });
    }
    let mut head = 0;
    while head < states.len() {
        let (x, v) = (states[head].0, states[head].1.clone());
        for &y in &succ[x] {
            let mut next = FixedBitSet::with_capacity(n);
            for w in v.ones() {
                let fw = sys.apply(w);
                if s.d(fw, y) < eps {
                    next.insert(fw);
                }
            }
            if next.is_clear() {
                let mut points = vec![y];
                let mut cur = head;
                while cur != usize::MAX {
                    points.push(states[cur].0);
                    cur = states[cur].2;
                }
                points.reverse();
                let chain = crate::chains::index_chain(sys, points, delta)?;
                return Ok(ShadowVerdict {
                    delta,
                    eps,
                    holds: false,
                    counterexample: Some(chain),
                    states: states.len(),
                });
            }
            if seen.insert((y, next.clone())) {
                if states.len() >= max_states {
                    return Err(Error::Budget {
                        what: "shadowing tracker states".into(),
                        count: states.len() as u128 + 1,
                        budget: max_states as u128,
                    });
                }
                states.push((y, next, head));
            }
        }
        head += 1;
    }
    Ok(ShadowVerdict {
        delta,
        eps,
        holds: true,
        counterexample: None,
        states: states.len(),
    })
}

trait CollectBitset {
    fn collect_bitset(self, n: usize) -> FixedBitSet;
}

impl<I: Iterator<Item = usize>> CollectBitset for I {
    fn collect_bitset(self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        b.extend(self);
        b
    }
}

/// Largest representative δ (one per interval between critical values) at which every
/// δ-chain is ε-shadowed, or `None` when even the smallest one fails.
///
/// Passing is downward closed in δ, so the representatives are binary searched.
pub fn finite_shadowing_profile(sys: &SystemMap, eps: Q, max_states: usize) -> Result<Option<Q>> {
    if eps <= Q::zero() {
        return domain("eps must be positive");
    }
    let reps = sweep_deltas(sys);
    let (mut lo, mut hi) = (0usize, reps.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if all_chains_shadowed(sys, reps[mid], eps, max_states)?.holds {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo.checked_sub(1).map(|i| reps[i]))
}

/// Representative eps values: one inside each gap between distinct distances, plus one above all.
pub fn sweep_eps(space: &FiniteMetricSpace) -> Vec<Q> {
    representatives(&space.distance_values())
}

/// First `j` where `d(f^j(x_0), x_j) < (1 - lambda^j) eps` fails (with equality `0` at `j = 0`).
pub fn contraction_bound_violation(
    sys: &SystemMap,
    chain: &DeltaChain<usize>,
    lambda: Q,
    eps: Q,
) -> Option<usize> {
    let s = sys.space();
    let mut y = chain.points[0];
    let mut lj = Q::one();
    for (j, &p) in chain.points.iter().enumerate() {
        if j > 0 {
            y = sys.apply(y);
            lj *= lambda;
        }
        let d = s.d(y, p);
        let ok = if j == 0 {
            d.is_zero()
        } else {
            d < (Q::one() - lj) * eps
        };
        if !ok {
            return Some(j);
        }
    }
    None
}

/// A chain of fuzzy sets together with the system it lives in and the candidate support
/// used when certifying that no orbit shadows it.
#[derive(Clone, Debug)]
pub struct ExampleChain {
    pub system: SystemMap,
    pub chain: DeltaChain<StepFuzzySet>,
    pub candidate_support: PointSet,
    /// Candidates are restricted to a truncation of the ambient space.
    pub partial: bool,
}

fn check_k(k: i128) -> Result<()> {
    if k < 8 || k % 2 != 0 {
        return domain(format!("k must be even and at least 8, got {k}"));
    }
    Ok(())
}

/// Identity on `{a, b}` (discrete metric) and `u^j = chi_a + (1/2 + j/k) chi_b` for
/// `j = 0..=k/2 - 1`, a δ-chain in the Skorokhod metric with δ = 2/k and every link exactly 1/k.
pub fn example_discrete_chain(k: i128) -> Result<ExampleChain> {
    check_k(k)?;
    let space = Arc::new(FiniteMetricSpace::discrete(&["a", "b"], int(1))?);
    let sys = SystemMap::identity(space.clone());
    let n = k / 2 - 1;
    let points = (0..=n)
        .map(|j| StepFuzzySet::normal(space.clone(), vec![int(1), q(1, 2) + q(j, k)]))
        .collect::<Result<Vec<_>>>()?;
    let chain = fuzzy_chain(&sys, FuzzyMetric::Skorokhod, points, q(2, k))?;
    let link = q(1, k);
    for w in chain.points.windows(2) {
        let img = crate::fuzzy::zadeh_extend(&sys, &w[0])?;
        if FuzzyMetric::Skorokhod.eval(&img, &w[1])? != link
            || FuzzyMetric::End.eval(&img, &w[1])? != link
        {
            return Err(Error::NoWitness(format!("link is not exactly {link}")));
        }
    }
    let candidate_support = space.full_set();
    Ok(ExampleChain {
        system: sys,
        chain,
        candidate_support,
        partial: false,
    })
}

/// Dyadic points `{0} ∪ {2^i : -n <= i <= n}` on the line with the halving map (the smallest
/// positive point goes to 0).
pub fn dyadic_system(n: u32) -> Result<SystemMap> {
    let mut pts: Vec<(String, Q)> = vec![("0".into(), Q::zero())];
    for i in -(n as i32)..=(n as i32) {
        let v = if i >= 0 {
            int(1i128 << i)
        } else {
            Q::new(1, 1i128 << (-i))
        };
        pts.push((rational::to_json(&v).as_str().unwrap().to_string(), v));
    }
    let space = Arc::new(FiniteMetricSpace::on_line(&pts)?);
    let image = (0..pts.len()).map(|p| p.saturating_sub(1)).collect();
    SystemMap::new(space, image)
}

/// Halving on dyadic points and `u^j = chi_0 + (1/2 + j/k) chi_{2^(n-j)}` with `n = k/2 - 1`.
/// Candidates for the certificate are supported on `{0, 1, 2, ..., 2^n}`.
pub fn example_connected_chain(k: i128) -> Result<ExampleChain> {
    check_k(k)?;
    let n = (k / 2 - 1) as u32;
    let sys = dyadic_system(n)?;
    let space = sys.space().clone();
    let zero = 0usize;
    // index of 2^i is i + n + 1
    let at = |i: u32| (i + n + 1) as usize;
    let points = (0..=n)
        .map(|j| {
            let mut mu = vec![Q::zero(); space.len()];
            mu[zero] = int(1);
            mu[at(n - j)] = q(1, 2) + q(j as i128, k);
            StepFuzzySet::normal(space.clone(), mu)
        })
        .collect::<Result<Vec<_>>>()?;
    let chain = fuzzy_chain(&sys, FuzzyMetric::Skorokhod, points, q(2, k))?;
    let link = q(1, k);
    for w in chain.points.windows(2) {
        let img = crate::fuzzy::zadeh_extend(&sys, &w[0])?;
        if FuzzyMetric::Skorokhod.eval(&img, &w[1])? > link
            || FuzzyMetric::End.eval(&img, &w[1])? != link
        {
            return Err(Error::NoWitness(format!("link exceeds {link}")));
        }
    }
    let mut candidate_support = space.empty_set();
    candidate_support.insert(zero);
    for i in 0..=n {
        candidate_support.insert(at(i));
    }
    Ok(ExampleChain {
        system: sys,
        chain,
        candidate_support,
        partial: true,
    })
}

/// `max_j d_end(f̂^j(c), u^j)`: `c` ε-shadows the chain iff this is below ε.
pub fn fuzzy_tracking_distance(
    sys: &SystemMap,
    chain: &[StepFuzzySet],
    c: &StepFuzzySet,
) -> Result<Q> {
    let mut cur = c.clone();
    let mut worst = Q::zero();
    for (j, u) in chain.iter().enumerate() {
        if j > 0 {
            cur = crate::fuzzy::zadeh_extend(sys, &cur)?;
        }
        worst = worst.max(FuzzyMetric::End.eval(&cur, u)?);
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertVerdict {
    /// Every normal candidate misses the chain by at least `eps0` at some index.
    Certified,
    /// This grid candidate stays within the margin along the whole chain.
    Inconclusive { candidate: StepFuzzySet },
}

/// Grid certificate that no normal fuzzy set supported in a given set ε0-shadows a chain.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: CertVerdict,
    pub eps0: Q,
    pub h: Q,
    pub margin: Q,
    /// Candidates per coordinate before any reduction.
    pub grid_points: u64,
    /// Remaining membership values per support point.
    pub domains: Vec<(String, Vec<Q>)>,
    pub survivors: u64,
    /// Up to [`SURVIVOR_SAMPLE`] survivors with the first index that separates them.
    pub sample: Vec<(StepFuzzySet, usize)>,
    pub partial: bool,
    pub chain: Vec<StepFuzzySet>,
}

pub const SURVIVOR_SAMPLE: usize = 32;

impl Certificate {
    pub fn certified(&self) -> bool {
        self.verdict == CertVerdict::Certified
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": match &self.verdict {
                CertVerdict::Certified => json!("certified"),
                CertVerdict::Inconclusive { candidate } => json!({"inconclusive": candidate.to_json()}),
            },
            "eps0": rational::to_json(&self.eps0),
            "grid_resolution": rational::to_json(&self.h),
            "margin": rational::to_json(&self.margin),
            "grid_points": self.grid_points,
            "domains": self.domains.iter().map(|(l, d)| json!({"point": l, "values": d.iter().map(rational::to_json).collect::<Vec<_>>()})).collect::<Vec<_>>(),
            "survivors": self.survivors,
            "violations": self.sample.iter().map(|(c, j)| json!({"candidate": c.to_json(), "index": j})).collect::<Vec<_>>(),
            "partial": self.partial,
            "chain": self.chain.iter().map(|u| u.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Certifies that no normal fuzzy set supported in `support` ε0-shadows `chain` under `f̂`.
///
/// Candidates are the normal memberships with values in `{0, h, ..., 1}` on `support`. Every
/// such grid point must be separated from the chain by `margin = eps0 + h` at some index; since
/// `d_end` and `f̂` are 1-Lipschitz in the sup norm of memberships, this covers every continuous
/// membership on the support.
///
/// Two reductions keep the product small:
/// * a value is dropped for a coordinate when it alone forces the margin at some index
///   (the point of the endograph it contributes is far from the chain, or, for an injective
///   iterate, a chain point above it is far from the candidate);
/// * values below the margin are collapsed to the largest one left. Raising small values only
///   shrinks the chain-to-candidate direction and leaves every candidate point at height
///   `>= margin` unchanged, so the largest one is the hardest case.
pub fn certify_not_shadowed(
    sys: &SystemMap,
    chain: &[StepFuzzySet],
    support: &PointSet,
    eps0: Q,
    h: Q,
    budget: &Budget,
) -> Result<Certificate> {
    if eps0 <= Q::zero() || h <= Q::zero() || h > Q::one() {
        return domain("eps0 must be positive and h in (0, 1]");
    }
    if !(Q::one() / h).is_integer() {
        return domain("h must be 1/m for a positive integer m");
    }
    if chain.is_empty() || support.is_clear() {
        return domain("need a nonempty chain and support");
    }
    let space = sys.space().clone();
    let steps = (Q::one() / h).to_integer() as u64;
    let margin = eps0 + h;
    let grid: Vec<Q> = (0..=steps).map(|i| h * int(i as i128)).collect();
    let coords: Vec<usize> = support.ones().collect();
    let mus: Vec<&[Q]> = chain.iter().map(|u| u.memberships()).collect();
    let powers: Vec<Vec<usize>> = (0..chain.len())
        .map(|j| sys.power(j).image().to_vec())
        .collect();

    let domains: Vec<Vec<Q>> = coords
        .iter()
        .map(|&x| {
            let kept: Vec<Q> = grid
                .iter()
                .copied()
                .filter(|&val| !value_forces_margin(&space, &powers, &mus, support, x, val, margin))
                .collect();
            let (high, low): (Vec<Q>, Vec<Q>) = kept.into_iter().partition(|v| *v >= margin);
            low.into_iter().max().into_iter().chain(high).collect()
        })
        .collect();

    let mut total: u64 = 1;
    for d in &domains {
        total = total
            .checked_mul(d.len() as u64)
            .filter(|t| *t <= budget.candidates)
            .ok_or(Error::Budget {
                what: "certificate candidates".into(),
                count: domains.iter().map(|d| d.len() as u128).product(),
                budget: budget.candidates as u128,
            })?;
    }

    let candidate = |idx: u64| -> Option<Vec<Q>> {
        let mut mu = vec![Q::zero(); space.len()];
        let mut rest = idx;
        let mut normal = false;
        for (c, d) in coords.iter().zip(&domains) {
            let v = d[(rest % d.len() as u64) as usize];
            rest /= d.len() as u64;
            normal |= v == Q::one();
            mu[*c] = v;
        }
        normal.then_some(mu)
    };
    let separating = |mu: &[Q]| -> Option<usize> {
        let mut cur = mu.to_vec();
        for (j, u) in mus.iter().enumerate() {
            if j > 0 {
                cur = zadeh_raw(sys.image(), &cur);
            }
            if end_raw(&space, &cur, u) >= margin {
                return Some(j);
            }
        }
        None
    };

    let first_open = par::find_first(0, total, |i| {
        candidate(i).is_some_and(|mu| separating(&mu).is_none())
    });
    let survivors = domains.iter().map(|d| d.len() as u64).product::<u64>()
        - domains
            .iter()
            .map(|d| d.iter().filter(|v| !v.is_one()).count() as u64)
            .product::<u64>();
    let sample = (0..total)
        .filter_map(&candidate)
        .filter_map(|mu| separating(&mu).map(|j| (StepFuzzySet::from_raw(space.clone(), mu), j)))
        .take(SURVIVOR_SAMPLE)
        .collect();
    let verdict = match first_open {
        None => CertVerdict::Certified,
        Some(i) => CertVerdict::Inconclusive {
            candidate: StepFuzzySet::from_raw(space.clone(), candidate(i).unwrap()),
        },
    };
    Ok(Certificate {
        verdict,
        eps0,
        h,
        margin,
        grid_points: steps + 1,
        domains: coords
            .iter()
            .zip(domains)
            .map(|(&c, d)| (space.label(c).to_string(), d))
            .collect(),
        survivors,
        sample,
        partial: false,
        chain: chain.to_vec(),
    })
}

/// Whether `c(x) = val` alone puts some `f̂^j(c)` at endograph distance `>= margin` from `u^j`,
/// whatever the other coordinates are.
fn value_forces_margin(
    space: &FiniteMetricSpace,
    powers: &[Vec<usize>],
    mus: &[&[Q]],
    support: &PointSet,
    x: usize,
    val: Q,
    margin: Q,
) -> bool {
    powers.iter().zip(mus).any(|(img, u)| {
        let y = img[x];
        // (y, val) lies in end(f̂^j c).
        let forward = !val.is_zero()
            && (0..space.len())
                .map(|z| space.d(y, z).max(pos(val - u[z])))
                .min()
                .unwrap()
                >= margin;
        // If x is the only support point reaching y, then f̂^j c(y) = val and the chain point
        // (y, u^j(y)) is far from the candidate when every other point is far from y.
        let lone = support.ones().all(|w| w == x || img[w] != y);
        let reverse = lone && {
            let gap = (0..space.len())
                .filter(|&z| z != y)
                .map(|z| space.d(y, z))
                .min()
                .unwrap_or(margin);
            pos(u[y] - val).min(gap) >= margin
        };
        forward || reverse
    })
}

/// Runs the certificate on one of the example chains.
pub fn certify_example(ex: &ExampleChain, eps0: Q, h: Q, budget: &Budget) -> Result<Certificate> {
    let mut cert = certify_not_shadowed(
        &ex.system,
        &ex.chain.points,
        &ex.candidate_support,
        eps0,
        h,
        budget,
    )?;
    cert.partial = ex.partial;
    Ok(cert)
}

/// Compares finite-shadowing profiles of a system, its hyperextension and (optionally) its
/// `d_inf` fuzzy grid at every representative eps.
///
/// Beyond both profiles existing, every δ that passes for the hyperspace or the grid must pass
/// for the base system, since singleton chains embed.
pub fn shadowing_equivalence_harness(
    sys: &SystemMap,
    eps_list: &[Q],
    grid: Option<u32>,
    budget: &Budget,
) -> AnalysisReport {
    let mut rep = AnalysisReport::new("shadowing-equivalence");
    rep.parameters =
        json!({"eps": eps_list.iter().map(rational::to_json).collect::<Vec<_>>(), "grid": grid});
    let mut systems: Vec<(String, SystemMap)> = Vec::new();
    match hyper_extend(sys, budget.points) {
        Ok(h) => systems.push(("hyper".into(), h.system)),
        Err(e) => {
            rep.partial = true;
            rep.notes.push(format!("hyper skipped: {e}"));
        }
    }
    if let Some(m) = grid {
        match fuzzy_grid(sys, m, FuzzyMetric::Inf, budget.points) {
            Ok(g) => systems.push((format!("grid{m}_inf"), g.system)),
            Err(e) => {
                rep.partial = true;
                rep.notes.push(format!("grid skipped: {e}"));
            }
        }
    }
    let mut agree = true;
    let mut implied = true;
    let mut counted = 0u64;
    for &eps in eps_list {
        let base = match finite_shadowing_profile(sys, eps, budget.states) {
            Ok(p) => p,
            Err(e) => {
                rep.partial = true;
                rep.notes.push(format!("base at eps {eps}: {e}"));
                continue;
            }
        };
        let mut row =
            json!({"eps": rational::to_json(&eps), "base": base.map(|d| rational::to_json(&d))});
        for (name, other) in &systems {
            match finite_shadowing_profile(other, eps, budget.states) {
                Ok(p) => {
                    counted += 1;
                    agree &= p.is_some() == base.is_some();
                    if let Some(d) = p {
                        // Singleton chains of the derived system are chains of the base system.
                        match all_chains_shadowed(sys, d, eps, budget.states) {
                            Ok(v) => implied &= v.holds,
                            Err(e) => rep.notes.push(format!("base at ({d}, {eps}): {e}")),
                        }
                    }
                    row[name.as_str()] = p.map(|d| rational::to_json(&d)).unwrap_or(Value::Null);
                }
                Err(e) => {
                    rep.partial = true;
                    rep.notes.push(format!("{name} at eps {eps}: {e}"));
                }
            }
        }
        rep.rows.push(row);
    }
    rep.checks.push(Check::exhaustive(
        "profiles-agree",
        "base and derived systems all admit a feasible delta or all fail",
        agree,
        counted,
        Value::Null,
    ));
    rep.checks.push(Check::exhaustive(
        "derived-implies-base",
        "a delta feasible for the hyperspace or grid is feasible for the base system",
        implied,
        counted,
        Value::Null,
    ));
    rep
}

/// For a surjective system with at least two points, builds endograph chains between the
/// characteristic functions of the first point and a point farthest from it (length `2 n_delta`)
/// and tries to certify that none is `eps0`-shadowed.
pub fn endograph_shadowing_harness(
    sys: &SystemMap,
    eps0: Q,
    deltas: &[Q],
    h: Q,
    budget: &Budget,
) -> AnalysisReport {
    let mut rep = AnalysisReport::new("shadowing-endograph");
    rep.parameters = json!({
        "eps0": rational::to_json(&eps0),
        "h": rational::to_json(&h),
        "deltas": deltas.iter().map(rational::to_json).collect::<Vec<_>>(),
    });
    if sys.len() < 2 || !sys.is_surjective() {
        rep.notes
            .push("hypothesis not met: needs a surjective map on at least two points".into());
        return rep;
    }
    let space = sys.space().clone();
    let far = (0..space.len())
        .max_by_key(|&y| (space.d(0, y), std::cmp::Reverse(y)))
        .unwrap();
    let u = StepFuzzySet::point(space.clone(), 0);
    let v = StepFuzzySet::point(space.clone(), far);
    for &delta in deltas {
        let id = format!("delta={delta}");
        let result = n_delta(delta)
            .and_then(|nd| endograph_chain(sys, &u, &v, delta, 2 * nd))
            .and_then(|ch| {
                certify_not_shadowed(sys, &ch.points, &space.full_set(), eps0, h, budget)
                    .map(|c| (ch, c))
            });
        match result {
            Ok((ch, cert)) => {
                rep.rows.push(json!({"delta": rational::to_json(&delta), "length": ch.length(), "certified": cert.certified()}));
                rep.checks.push(Check::witness(
                    id,
                    "endograph chain that no orbit eps0-shadows",
                    cert.certified(),
                    cert.to_json(),
                ));
            }
            Err(e @ Error::Budget { .. }) => {
                rep.partial = true;
                rep.notes.push(format!("{id}: {e}"));
            }
            Err(e) => rep.checks.push(Check::witness(
                id,
                "endograph chain that no orbit eps0-shadows",
                false,
                json!({"error": e.to_string()}),
            )),
        }
    }
    rep
}
