//! Self-maps of finite metric spaces, their hyperspace and fuzzy grid extensions, and the
//! contractive / expansive classifiers.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::fuzzy::{grid_count, grid_memberships, zadeh_raw, FuzzyMetric, StepFuzzySet};
use crate::metric::{
    hausdorff_unchecked, nonempty_subsets, same_space, FiniteMetricSpace, PointSet,
};
use crate::par;
use crate::rational::{self, q, Q};
use crate::report::{AnalysisReport, Check};

/// A self-map `f: X -> X` given by the image index of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemMap {
    space: Arc<FiniteMetricSpace>,
    image: Vec<usize>,
}

impl SystemMap {
    pub fn new(space: Arc<FiniteMetricSpace>, image: Vec<usize>) -> Result<Self> {
        if image.len() != space.len() {
            return domain(format!(
                "map has {} images for {} points",
                image.len(),
                space.len()
            ));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= space.len()) {
            return domain(format!("image index {bad} is out of range"));
        }
        Ok(Self { space, image })
    }

    /// From `(source, target)` label pairs covering every point.
    pub fn from_labels(space: Arc<FiniteMetricSpace>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut image = vec![usize::MAX; space.len()];
        for (x, y) in pairs {
            let (i, j) = (space.index(x)?, space.index(y)?);
            if image[i] != usize::MAX && image[i] != j {
                return domain(format!("point {x} is mapped twice"));
            }
            image[i] = j;
        }
        if let Some(i) = image.iter().position(|&y| y == usize::MAX) {
            return domain(format!("point {} has no image", space.label(i)));
        }
        Self::new(space, image)
    }

    pub fn identity(space: Arc<FiniteMetricSpace>) -> Self {
        let image = (0..space.len()).collect();
        Self { space, image }
    }

    pub fn constant(space: Arc<FiniteMetricSpace>, target: usize) -> Result<Self> {
        Self::new(space.clone(), vec![target; space.len()])
    }

    pub fn space(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn iterate(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |p, _| self.image[p])
    }

    /// `f^n` as a map.
    pub fn power(&self, n: usize) -> SystemMap {
        let image = (0..self.len()).map(|x| self.iterate(x, n)).collect();
        SystemMap {
            space: self.space.clone(),
            image,
        }
    }

    /// `f(K)`.
    pub fn image_set(&self, set: &PointSet) -> PointSet {
        let mut out = self.space.empty_set();
        for x in set.ones() {
            out.insert(self.image[x]);
        }
        out
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set(&self.space.full_set()).is_full()
    }

    pub fn is_injective_on(&self, set: &PointSet) -> bool {
        self.image_set(set).count_ones(..) == set.count_ones(..)
    }

    /// JSON form `{"space": ..., "map": {"a": "b", ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = (0..self.len())
            .map(|i| {
                (
                    self.space.label(i).to_string(),
                    serde_json::Value::String(self.space.label(self.image[i]).into()),
                )
            })
            .collect();
        serde_json::json!({ "space": self.space.to_json(), "map": map })
    }
}

/// On finite spaces dense range is surjectivity.
pub fn has_dense_range(sys: &SystemMap) -> bool {
    sys.is_surjective()
}

/// Every pair of distinct points `(x, y)` with `x < y`.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

fn ratio(sys: &SystemMap, x: usize, y: usize) -> Q {
    let s = sys.space();
    s.d(sys.apply(x), sys.apply(y)) / s.d(x, y)
}

/// Least contraction constant `max_{x != y} d(fx, fy) / d(x, y)` when it is below 1.
/// A singleton is contractive with constant 0.
pub fn classify_contractive(sys: &SystemMap) -> Option<Q> {
    let lambda = pairs(sys.len())
        .map(|(x, y)| ratio(sys, x, y))
        .max()
        .unwrap_or_else(Q::zero);
    (lambda < Q::one()).then_some(lambda)
}

/// Greatest expansion constant `min_{x != y} d(fx, fy) / d(x, y)` when it exceeds 1.
/// A singleton has no pairs and is reported as not expansive.
pub fn classify_expansive(sys: &SystemMap) -> Option<Q> {
    let lambda = pairs(sys.len()).map(|(x, y)| ratio(sys, x, y)).min()?;
    (lambda > Q::one()).then_some(lambda)
}

/// Outcome of the local expansion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandingVerdict {
    /// No pair has `0 < d(x, y) < eps`.
    Vacuous,
    /// Every close pair expands; any `lambda` in `(1, min_ratio)` works.
    Holds {
        min_ratio: Q,
        pairs: Vec<(usize, usize)>,
    },
    /// The pair with the smallest ratio, which is at most 1.
    Fails { pair: (usize, usize), ratio: Q },
}

impl ExpandingVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, ExpandingVerdict::Fails { .. })
    }
}

/// Whether `d(fx, fy) > lambda d(x, y)` for some `lambda > 1` and all pairs with `0 < d < eps`.
pub fn is_expanding(sys: &SystemMap, eps: Q) -> Result<ExpandingVerdict> {
    if eps <= Q::zero() {
        return domain("eps must be positive");
    }
    let close: Vec<(usize, usize)> = pairs(sys.len())
        .filter(|&(x, y)| sys.space().d(x, y) < eps)
        .collect();
    let Some((pair, r)) = close
        .iter()
        .map(|&(x, y)| ((x, y), ratio(sys, x, y)))
        .min_by(|a, b| a.1.cmp(&b.1))
    else {
        return Ok(ExpandingVerdict::Vacuous);
    };
    if r > Q::one() {
        Ok(ExpandingVerdict::Holds {
            min_ratio: r,
            pairs: close,
        })
    } else {
        Ok(ExpandingVerdict::Fails { pair, ratio: r })
    }
}

/// Positive expansiveness on a finite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveExpansiveness {
    /// `min_{x != y} max_n d(f^n x, f^n y)`; every `delta < delta_star` is an expansivity constant.
    /// `None` for a singleton, where the property holds vacuously.
    pub delta_star: Option<Q>,
    /// Pair attaining the minimum.
    pub pair: Option<(usize, usize)>,
}

impl PositiveExpansiveness {
    pub fn holds(&self) -> bool {
        true
    }
}

/// Separation of every pair along its (eventually periodic) pair orbit.
pub fn is_positively_expansive(sys: &SystemMap) -> PositiveExpansiveness {
    let n = sys.len();
    let mut best: Option<((usize, usize), Q)> = None;
    for (x, y) in pairs(n) {
        let mut seen = std::collections::HashSet::new();
        let (mut a, mut b) = (x, y);
        let mut s = Q::zero();
        while seen.insert((a, b)) {
            s = s.max(sys.space().d(a, b));
            a = sys.apply(a);
            b = sys.apply(b);
        }
        if best.as_ref().is_none_or(|(_, v)| s < *v) {
            best = Some(((x, y), s));
        }
    }
    PositiveExpansiveness {
        delta_star: best.as_ref().map(|b| b.1),
        pair: best.map(|b| b.0),
    }
}

/// On finite spaces singletons are open, so mixing forces `|X| = 1`.
/// (`f^n(x) = y` for all large `n` cannot hold for two distinct targets `y`.)
pub fn is_topologically_mixing(sys: &SystemMap) -> bool {
    sys.len() == 1
}

/// `(K(X), f̄)` as a finite system: points are nonempty subsets in bitmask order.
#[derive(Clone, Debug)]
pub struct HyperSystem {
    pub sets: Vec<PointSet>,
    pub system: SystemMap,
    base_space: Arc<FiniteMetricSpace>,
}

impl HyperSystem {
    /// Index of a nonempty subset.
    pub fn index_of(&self, set: &PointSet) -> Option<usize> {
        let mask: usize = set.ones().map(|i| 1usize << i).sum();
        (mask > 0 && mask <= self.sets.len()).then(|| mask - 1)
    }

    pub fn base(&self) -> &Arc<FiniteMetricSpace> {
        &self.base_space
    }
}

/// Builds the hyperspace system. The point count `2^|X| - 1` must fit `budget`.
pub fn hyper_extend(sys: &SystemMap, budget: usize) -> Result<HyperSystem> {
    let n = sys.len();
    let count = hyper_count(n);
    if count > budget as u128 {
        return Err(Error::Budget {
            what: "hyperspace".into(),
            count,
            budget: budget as u128,
        });
    }
    let base = sys.space().clone();
    let sets = nonempty_subsets(&base);
    let labels = sets.iter().map(|s| base.fmt_set(s)).collect();
    let rows: Vec<Vec<Q>> = par::map(&sets, |a| {
        sets.iter()
            .map(|b| hausdorff_unchecked(&base, a, b))
            .collect()
    });
    let space = Arc::new(FiniteMetricSpace::from_parts_unchecked(
        labels,
        rows.into_iter().flatten().collect(),
    ));
    let image = sets
        .iter()
        .map(|s| {
            let img = sys.image_set(s);
            let mask: usize = img.ones().map(|i| 1usize << i).sum();
            mask - 1
        })
        .collect();
    Ok(HyperSystem {
        sets,
        system: SystemMap { space, image },
        base_space: base,
    })
}

/// `(F(X), f̂)` restricted to normal step sets with breakpoints in `{1/m, ..., 1}`.
#[derive(Clone, Debug)]
pub struct FuzzyGridSystem {
    pub resolution: u32,
    pub metric: FuzzyMetric,
    pub members: Vec<StepFuzzySet>,
    pub system: SystemMap,
}

impl FuzzyGridSystem {
    pub fn index_of(&self, u: &StepFuzzySet) -> Option<usize> {
        self.members
            .binary_search_by(|w| w.memberships().cmp(u.memberships()))
            .ok()
    }
}

/// Builds a grid system. The grid count `(m+1)^|X| - m^|X|` must fit `budget`.
pub fn fuzzy_grid(
    sys: &SystemMap,
    m: u32,
    metric: FuzzyMetric,
    budget: usize,
) -> Result<FuzzyGridSystem> {
    if m == 0 {
        return domain("grid resolution must be positive");
    }
    let base = sys.space().clone();
    let count = grid_count(base.len(), m);
    if count > budget as u128 {
        return Err(Error::Budget {
            what: format!("fuzzy grid m={m}"),
            count,
            budget: budget as u128,
        });
    }
    let mus = grid_memberships(base.len(), m);
    let rows: Vec<Vec<Q>> = par::map(&mus, |u| {
        mus.iter().map(|v| metric.eval_raw(&base, u, v)).collect()
    });
    let members: Vec<StepFuzzySet> = mus
        .iter()
        .map(|mu| StepFuzzySet::from_raw(base.clone(), mu.clone()))
        .collect();
    let labels = members.iter().map(|u| u.to_string()).collect();
    let space = Arc::new(FiniteMetricSpace::from_parts_unchecked(
        labels,
        rows.into_iter().flatten().collect(),
    ));
    let image = mus
        .iter()
        .map(|mu| {
            let img = zadeh_raw(sys.image(), mu);
            mus.binary_search(&img)
                .expect("grid is closed under the Zadeh extension")
        })
        .collect();
    Ok(FuzzyGridSystem {
        resolution: m,
        metric,
        members,
        system: SystemMap { space, image },
    })
}

/// `(u, u^k) = (chi_x + 1/2 chi_y, chi_x + (1/2 - 1/k) chi_y)`.
pub fn contraexpansive_pair(
    space: &Arc<FiniteMetricSpace>,
    x: usize,
    y: usize,
    k: i128,
) -> Result<(StepFuzzySet, StepFuzzySet)> {
    if k <= 2 {
        return domain(format!("k must exceed 2, got {k}"));
    }
    if x == y || x >= space.len() || y >= space.len() {
        return domain("x and y must be distinct points of the space");
    }
    let mk = |val: Q| {
        let mut mu = vec![Q::zero(); space.len()];
        mu[x] = Q::one();
        mu[y] = val;
        StepFuzzySet::from_raw(space.clone(), mu)
    };
    Ok((mk(q(1, 2)), mk(q(1, 2) - q(1, k))))
}

/// Direction of the inequality checked by [`monotonicity_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    /// `rho(f̂u, f̂v) <= rho(u, v)`.
    Contractive,
    /// `rho(f̂u, f̂v) >= rho(u, v)`.
    Expansive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub checked: usize,
    pub strict: usize,
    pub equal: usize,
    /// First sampled pair breaking the inequality, with both distances.
    pub violation: Option<(usize, Q, Q)>,
}

/// Checks the non-expansion (or non-contraction) of `f̂` on the given pairs.
pub fn monotonicity_check(
    sys: &SystemMap,
    metric: FuzzyMetric,
    mode: Monotone,
    samples: &[(StepFuzzySet, StepFuzzySet)],
) -> Result<MonotonicityReport> {
    let mut rep = MonotonicityReport {
        checked: 0,
        strict: 0,
        equal: 0,
        violation: None,
    };
    for (i, (u, v)) in samples.iter().enumerate() {
        let before = metric.eval(u, v)?;
        let fu = crate::fuzzy::zadeh_extend(sys, u)?;
        let fv = crate::fuzzy::zadeh_extend(sys, v)?;
        let after = metric.eval(&fu, &fv)?;
        rep.checked += 1;
        let ok = match mode {
            Monotone::Contractive => after <= before,
            Monotone::Expansive => after >= before,
        };
        if after == before {
            rep.equal += 1;
        } else if ok {
            rep.strict += 1;
        }
        if !ok && rep.violation.is_none() {
            rep.violation = Some((i, before, after));
        }
    }
    Ok(rep)
}

/// `w` with `f̂(w) = v` (distance 0 in every metric), built levelwise from full preimages:
/// `w = v ∘ f`. Requires a surjective map; otherwise reports a level without preimage.
pub fn approx_preimage(
    sys: &SystemMap,
    v: &StepFuzzySet,
    eps: Q,
    metric: FuzzyMetric,
) -> Result<StepFuzzySet> {
    if eps <= Q::zero() {
        return domain("eps must be positive");
    }
    if !same_space(sys.space(), v.space()) {
        return domain("map and fuzzy set live on different spaces");
    }
    let space = sys.space();
    let covered = sys.image_set(&space.full_set());
    if !covered.is_full() {
        // The outermost level meeting the gap in the image, or the missing point itself.
        let missing = (0..space.len()).find(|&z| !covered.contains(z)).unwrap();
        let hit = v
            .breakpoints()
            .into_iter()
            .rev()
            .map(|a| (a, v.level(a).unwrap()))
            .find(|(_, l)| !l.is_subset(&covered));
        let (alpha, level) = match hit {
            Some((a, l)) => (a, space.set_labels(&l)),
            None => (Q::one(), vec![space.label(missing).to_string()]),
        };
        return Err(Error::NoPreimage { alpha, level });
    }
    let w = StepFuzzySet::from_raw(
        space.clone(),
        (0..space.len())
            .map(|x| v.membership(sys.apply(x)))
            .collect(),
    );
    let img = crate::fuzzy::zadeh_extend(sys, &w)?;
    let d = metric.eval(&img, v)?;
    debug_assert!(d.is_zero());
    if d >= eps {
        return Err(Error::NoWitness(format!(
            "preimage misses the target by {d}"
        )));
    }
    Ok(w)
}

/// `d(f x, f y) <= lambda d(x, y)` for all pairs.
pub fn is_lipschitz_with(sys: &SystemMap, lambda: Q) -> bool {
    pairs(sys.len())
        .all(|(x, y)| sys.space().d(sys.apply(x), sys.apply(y)) <= lambda * sys.space().d(x, y))
}

/// Hyperspace size `2^n - 1`.
pub fn hyper_count(n: usize) -> u128 {
    if n >= 127 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Least `k > 2` with `1/k <= min(a, b)`, so the pair of [`contraexpansive_pair`] sits at
/// exact distance `1/k` on both sides.
fn pair_k(a: Q, b: Q) -> i128 {
    let m = a.min(b);
    let mut k = 3;
    while q(1, k) > m {
        k += 1;
    }
    k
}

fn classification_row(name: &str, sys: &SystemMap, eps: Q) -> Value {
    let expanding = match is_expanding(sys, eps) {
        Ok(ExpandingVerdict::Vacuous) => json!("vacuous"),
        Ok(ExpandingVerdict::Holds { min_ratio, .. }) => {
            json!({"holds": rational::to_json(&min_ratio)})
        }
        Ok(ExpandingVerdict::Fails { pair, ratio }) => {
            json!({"fails": [sys.space().label(pair.0), sys.space().label(pair.1)], "ratio": rational::to_json(&ratio)})
        }
        Err(e) => json!({"error": e.to_string()}),
    };
    let pe = is_positively_expansive(sys);
    json!({
        "system": name,
        "points": sys.len(),
        "contractive": classify_contractive(sys).map(|l| rational::to_json(&l)),
        "expansive": classify_expansive(sys).map(|l| rational::to_json(&l)),
        "expanding": expanding,
        "positively_expansive_delta": pe.delta_star.map(|d| rational::to_json(&d)),
        "dense_range": has_dense_range(sys),
        "mixing": is_topologically_mixing(sys),
    })
}

/// Classifies a system, its hyperextension and its fuzzy grids, and checks the induced-map
/// facts that are decidable on finite data.
pub fn dynamics_profile(sys: &SystemMap, grid: u32, eps: Q, budget: usize) -> AnalysisReport {
    let mut rep = AnalysisReport::new("dynamics");
    rep.parameters = json!({"grid": grid, "eps": rational::to_json(&eps), "budget_points": budget});
    let space = sys.space().clone();
    rep.rows.push(classification_row("base", sys, eps));
    match hyper_extend(sys, budget) {
        Ok(h) => {
            rep.rows.push(classification_row("hyper", &h.system, eps));
            let (a, b) = (classify_contractive(sys), classify_contractive(&h.system));
            rep.checks.push(Check::witness(
                "hyper-contractive",
                "the base map and its hyperextension share their contraction constant",
                a == b,
                json!({"base": a.map(|l| rational::to_json(&l)), "hyper": b.map(|l| rational::to_json(&l))}),
            ));
        }
        Err(e) => {
            rep.partial = true;
            rep.notes.push(format!("hyper skipped: {e}"));
        }
    }
    let three = [FuzzyMetric::Skorokhod, FuzzyMetric::Send, FuzzyMetric::End];
    let constant = sys.image_set(&space.full_set()).count_ones(..) == 1;
    for metric in FuzzyMetric::ALL {
        let name = format!("grid{grid}_{metric}");
        match fuzzy_grid(sys, grid, metric, budget) {
            Ok(g) => {
                rep.rows.push(classification_row(&name, &g.system, eps));
                if constant && three.contains(&metric) {
                    let lambda = classify_contractive(&g.system);
                    rep.checks.push(Check::exhaustive(
                        format!("{name}-constant"),
                        "a constant map induces a grid contraction with constant 0",
                        lambda == Some(Q::zero()),
                        g.members.len() as u64,
                        Value::Null,
                    ));
                }
            }
            Err(e) => {
                rep.partial = true;
                rep.notes.push(format!("{name} skipped: {e}"));
            }
        }
    }
    let n = space.len();
    if !constant {
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| sys.apply(x) != sys.apply(y))
            .unwrap();
        let k = pair_k(space.d(x, y), space.d(sys.apply(x), sys.apply(y)));
        let (u, uk) = contraexpansive_pair(&space, x, y, k).expect("distinct points and k > 2");
        let (fu, fuk) = (
            crate::fuzzy::zadeh_extend(sys, &u).unwrap(),
            crate::fuzzy::zadeh_extend(sys, &uk).unwrap(),
        );
        let ds: Vec<(Q, Q)> = three
            .iter()
            .map(|m| (m.eval(&u, &uk).unwrap(), m.eval(&fu, &fuk).unwrap()))
            .collect();
        rep.checks.push(Check::witness(
            "not-contractive",
            "a pair whose images are no closer defeats every contraction constant below 1",
            ds.iter().all(|(before, after)| after >= before && before.is_positive()),
            json!({
                "u": u.to_json(), "v": uk.to_json(), "k": k,
                "distances": three.iter().zip(&ds).map(|(m, (b, a))| json!({"metric": m.name(), "before": rational::to_json(b), "after": rational::to_json(a)})).collect::<Vec<_>>(),
            }),
        ));
    }
    if n >= 2 {
        let k = pair_k(space.d(0, 1), space.d(0, 1));
        let (u, uk) = contraexpansive_pair(&space, 0, 1, k).expect("distinct points and k > 2");
        let link = q(1, k);
        let mut ok = three.iter().all(|m| m.eval(&u, &uk).unwrap() == link);
        let (mut a, mut b) = (u.clone(), uk.clone());
        for _ in 0..4 {
            a = crate::fuzzy::zadeh_extend(sys, &a).unwrap();
            b = crate::fuzzy::zadeh_extend(sys, &b).unwrap();
            ok &= three.iter().all(|m| m.eval(&a, &b).unwrap() <= link);
        }
        rep.checks.push(Check::witness(
            "not-expansive",
            "a pair at distance 1/k whose iterates stay within 1/k defeats expansion",
            ok,
            json!({"u": u.to_json(), "v": uk.to_json(), "k": k, "iterates": 4}),
        ));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{d_end, d_send, d_skorokhod, zadeh_extend};
    use crate::rational::int;

    fn ab() -> Arc<FiniteMetricSpace> {
        Arc::new(FiniteMetricSpace::discrete(&["a", "b"], int(1)).unwrap())
    }

    fn triadic() -> SystemMap {
        let pts: Vec<(String, Q)> = [
            ("1", q(1, 1)),
            ("1/3", q(1, 3)),
            ("1/9", q(1, 9)),
            ("0", Q::zero()),
        ]
        .iter()
        .map(|(l, v)| (l.to_string(), *v))
        .collect();
        let space = Arc::new(FiniteMetricSpace::on_line(&pts).unwrap());
        SystemMap::new(space, vec![1, 2, 3, 3]).unwrap()
    }

    #[test]
    fn contractive_examples() {
        let x = ab();
        assert_eq!(
            classify_contractive(&SystemMap::constant(x.clone(), 0).unwrap()),
            Some(Q::zero())
        );
        assert_eq!(classify_contractive(&triadic()), Some(q(1, 2)));
        assert_eq!(classify_contractive(&SystemMap::identity(x)), None);
    }

    #[test]
    fn expansive_examples() {
        let x = ab();
        assert_eq!(classify_expansive(&SystemMap::identity(x.clone())), None);
        assert_eq!(
            classify_expansive(&SystemMap::new(x.clone(), vec![0, 0]).unwrap()),
            None
        );
        assert_eq!(
            classify_expansive(&SystemMap::new(x, vec![1, 0]).unwrap()),
            None
        );
    }

    #[test]
    fn expanding_examples() {
        let x = ab();
        let two_point = SystemMap::new(x.clone(), vec![0, 0]).unwrap();
        assert_eq!(
            is_expanding(&two_point, q(1, 2)).unwrap(),
            ExpandingVerdict::Vacuous
        );
        let id = SystemMap::identity(x);
        assert!(
            matches!(is_expanding(&id, int(2)).unwrap(), ExpandingVerdict::Fails { ratio, .. } if ratio == int(1))
        );
        assert!(is_expanding(&id, Q::zero()).is_err());
    }

    #[test]
    fn positive_expansiveness() {
        let id = SystemMap::identity(ab());
        let v = is_positively_expansive(&id);
        assert!(v.holds());
        assert_eq!(v.delta_star, Some(int(1)));
        let single = SystemMap::identity(Arc::new(
            FiniteMetricSpace::discrete(&["a"], int(1)).unwrap(),
        ));
        assert_eq!(is_positively_expansive(&single).delta_star, None);
        let t = is_positively_expansive(&triadic());
        assert_eq!(t.delta_star, Some(q(1, 9)));
    }

    #[test]
    fn hyper_examples() {
        let sys = SystemMap::new(ab(), vec![1, 0]).unwrap();
        let h = hyper_extend(&sys, 1000).unwrap();
        assert_eq!(h.sets.len(), 3);
        assert_eq!(h.system.space().labels(), &["{a}", "{b}", "{a,b}"]);
        assert_eq!(h.system.space().d(0, 2), int(1));
        assert_eq!(h.system.image(), &[1, 0, 2]);
        assert_eq!(h.index_of(&h.sets[2]), Some(2));
        assert!(matches!(hyper_extend(&sys, 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn grid_examples() {
        let sys = SystemMap::identity(ab());
        let g = fuzzy_grid(&sys, 2, FuzzyMetric::End, 1000).unwrap();
        assert_eq!(g.members.len(), 5);
        assert_eq!(g.system.image(), &[0, 1, 2, 3, 4]);
        g.system.space().check_axioms().unwrap();
        assert!(fuzzy_grid(&sys, 2, FuzzyMetric::End, 4).is_err());
    }

    #[test]
    fn pair_and_expanding_counterexample() {
        let x = ab();
        let (u, uk) = contraexpansive_pair(&x, 0, 1, 8).unwrap();
        assert_eq!(d_end(&u, &uk).unwrap(), q(1, 8));
        assert_eq!(d_send(&u, &uk).unwrap(), q(1, 8));
        assert_eq!(d_skorokhod(&u, &uk).unwrap(), q(1, 8));
        let f = SystemMap::new(x.clone(), vec![0, 0]).unwrap();
        let (fu, fuk) = (
            zadeh_extend(&f, &u).unwrap(),
            zadeh_extend(&f, &uk).unwrap(),
        );
        assert_eq!(d_skorokhod(&fu, &fuk).unwrap(), Q::zero());
        assert!(contraexpansive_pair(&x, 0, 1, 2).is_err());
        assert!(contraexpansive_pair(&x, 0, 0, 5).is_err());
    }

    #[test]
    fn preimages() {
        let x = ab();
        let swap = SystemMap::new(x.clone(), vec![1, 0]).unwrap();
        let v = StepFuzzySet::from_memberships(x.clone(), vec![int(1), q(1, 2)]).unwrap();
        let w = approx_preimage(&swap, &v, q(1, 10), FuzzyMetric::Inf).unwrap();
        assert_eq!(w.memberships(), &[q(1, 2), int(1)]);
        let id = SystemMap::identity(x.clone());
        assert_eq!(
            approx_preimage(&id, &v, q(1, 10), FuzzyMetric::End).unwrap(),
            v
        );
        let collapse = SystemMap::new(x.clone(), vec![0, 0]).unwrap();
        assert!(!has_dense_range(&collapse));
        match approx_preimage(&collapse, &v, q(1, 10), FuzzyMetric::End) {
            Err(Error::NoPreimage { alpha, level }) => {
                assert_eq!(alpha, q(1, 2));
                assert_eq!(level, vec!["a".to_string(), "b".to_string()]);
            }
            other => panic!("expected NoPreimage, got {other:?}"),
        }
    }

    #[test]
    fn mixing_degenerates() {
        let x = ab();
        assert!(!is_topologically_mixing(&SystemMap::identity(x.clone())));
        assert!(!is_topologically_mixing(
            &SystemMap::new(x, vec![1, 0]).unwrap()
        ));
        let single = Arc::new(FiniteMetricSpace::discrete(&["a"], int(1)).unwrap());
        assert!(is_topologically_mixing(&SystemMap::identity(single)));
    }

    #[test]
    fn monotonicity_identity_is_equality() {
        let x = ab();
        let id = SystemMap::identity(x.clone());
        let sets: Vec<StepFuzzySet> = grid_memberships(2, 2)
            .into_iter()
            .map(|m| StepFuzzySet::from_raw(x.clone(), m))
            .collect();
        let pairs: Vec<_> = sets
            .iter()
            .flat_map(|u| sets.iter().map(move |v| (u.clone(), v.clone())))
            .collect();
        let rep = monotonicity_check(&id, FuzzyMetric::End, Monotone::Contractive, &pairs).unwrap();
        assert_eq!(rep.equal, pairs.len());
        assert!(rep.violation.is_none());
    }

    #[test]
    fn profile_checks_hold_on_small_systems() {
        for sys in crate::suite::small_systems(3) {
            let rep = dynamics_profile(&sys, 2, q(1, 2), 1024);
            assert!(rep.all_passed(), "{:?}", sys.image());
            assert!(!rep.partial);
            assert_eq!(rep.rows.len(), 6);
        }
    }
}
