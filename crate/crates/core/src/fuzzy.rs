//! Step fuzzy sets, the four hyperspace metrics and the witness constructors built on them.
//!
//! A step fuzzy set over a finite space is stored as its membership vector. The nested
//! level representation (breakpoints plus level sets) is derived on demand and is
//! canonical by construction: two consecutive levels are never equal.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::dynamics::SystemMap;
use crate::error::{domain, Error, Result};
use crate::metric::{hausdorff_unchecked, same_space, FiniteMetricSpace, PointSet};
use crate::rational::{self, int, pos, q, Q};

/// A fuzzy set `u = max_l alpha_l * chi_{L_l}` over a finite metric space.
#[derive(Clone, Debug)]
pub struct StepFuzzySet {
    space: Arc<FiniteMetricSpace>,
    mu: Vec<Q>,
}

impl PartialEq for StepFuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.mu == other.mu && same_space(&self.space, &other.space)
    }
}

impl Eq for StepFuzzySet {}

impl Hash for StepFuzzySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mu.hash(state);
    }
}

fn check_unit(v: &Q) -> Result<()> {
    if v.is_negative() || *v > Q::one() {
        return domain(format!("membership value {v} is outside [0,1]"));
    }
    Ok(())
}

impl StepFuzzySet {
    /// From pointwise membership values. Subnormal (and even zero) functions are allowed here;
    /// the metrics reject them.
    pub fn from_memberships(space: Arc<FiniteMetricSpace>, mu: Vec<Q>) -> Result<Self> {
        if mu.len() != space.len() {
            return domain(format!(
                "expected {} membership values, got {}",
                space.len(),
                mu.len()
            ));
        }
        mu.iter().try_for_each(check_unit)?;
        Ok(Self { space, mu })
    }

    /// Like [`from_memberships`](Self::from_memberships) but requires the result to be normal.
    pub fn normal(space: Arc<FiniteMetricSpace>, mu: Vec<Q>) -> Result<Self> {
        let u = Self::from_memberships(space, mu)?;
        if !u.is_normal() {
            return domain("fuzzy set is not normal (no point has membership 1)");
        }
        Ok(u)
    }

    /// From strictly increasing breakpoints in (0,1] and nonincreasing nested levels.
    pub fn from_levels(
        space: Arc<FiniteMetricSpace>,
        breakpoints: &[Q],
        levels: &[PointSet],
    ) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != levels.len() {
            return domain("breakpoints and levels must be nonempty and of equal length");
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return domain("breakpoints must be strictly increasing");
            }
        }
        if !breakpoints[0].is_positive() || *breakpoints.last().unwrap() > Q::one() {
            return domain("breakpoints must lie in (0,1]");
        }
        for l in levels {
            if l.len() != space.len() {
                return domain("level belongs to a different space");
            }
        }
        for w in levels.windows(2) {
            if !w[1].is_subset(&w[0]) {
                return domain("levels must be nested (each level contains the next)");
            }
        }
        if levels.last().unwrap().is_clear() {
            return domain("the top level must be nonempty");
        }
        let mut mu = vec![Q::zero(); space.len()];
        for (a, l) in breakpoints.iter().zip(levels) {
            for x in l.ones() {
                mu[x] = *a;
            }
        }
        Ok(Self { space, mu })
    }

    /// Characteristic function of a nonempty set.
    pub fn characteristic(space: Arc<FiniteMetricSpace>, set: &PointSet) -> Result<Self> {
        if set.len() != space.len() || set.is_clear() {
            return domain("characteristic function needs a nonempty subset of the space");
        }
        let mu = (0..space.len())
            .map(|i| if set.contains(i) { Q::one() } else { Q::zero() })
            .collect();
        Ok(Self { space, mu })
    }

    /// `chi_{x}`.
    pub fn point(space: Arc<FiniteMetricSpace>, x: usize) -> Self {
        let mut mu = vec![Q::zero(); space.len()];
        mu[x] = Q::one();
        Self { space, mu }
    }

    pub(crate) fn from_raw(space: Arc<FiniteMetricSpace>, mu: Vec<Q>) -> Self {
        debug_assert_eq!(mu.len(), space.len());
        Self { space, mu }
    }

    pub fn space(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn memberships(&self) -> &[Q] {
        &self.mu
    }

    pub fn membership(&self, x: usize) -> Q {
        self.mu[x]
    }

    pub fn is_normal(&self) -> bool {
        self.mu.iter().any(|v| v.is_one())
    }

    /// Distinct positive membership values, ascending. The last one is 1 for normal sets.
    pub fn breakpoints(&self) -> Vec<Q> {
        breakpoints_of(&self.mu)
    }

    /// Level sets at the breakpoints, outermost first.
    pub fn levels(&self) -> Vec<PointSet> {
        self.breakpoints()
            .iter()
            .map(|a| level_set(&self.mu, *a))
            .collect()
    }

    /// `u_alpha`; for `alpha = 0` the support (closure is the identity on finite spaces).
    pub fn level(&self, alpha: Q) -> Result<PointSet> {
        if alpha.is_negative() || alpha > Q::one() {
            return domain(format!("alpha {alpha} is outside [0,1]"));
        }
        Ok(level_set(&self.mu, alpha))
    }

    pub fn support(&self) -> PointSet {
        support_of(&self.mu)
    }

    /// `u_1`.
    pub fn core(&self) -> PointSet {
        level_set(&self.mu, Q::one())
    }

    /// Serialized as `{"breakpoints":[...],"levels":[[...]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let bps = self.breakpoints();
        json!({
            "breakpoints": bps.iter().map(rational::to_json).collect::<Vec<_>>(),
            "levels": self.levels().iter().map(|l| self.space.set_labels(l)).collect::<Vec<_>>(),
        })
    }

    fn require_normal(&self, what: &str) -> Result<()> {
        if !self.is_normal() {
            return domain(format!(
                "{what} is subnormal; metrics are defined on normal fuzzy sets only"
            ));
        }
        Ok(())
    }
}

impl fmt::Display for StepFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mu
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_positive())
            .map(|(i, v)| format!("{}:{}", self.space.label(i), v))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn breakpoints_of(mu: &[Q]) -> Vec<Q> {
    let mut v: Vec<Q> = mu.iter().copied().filter(|x| x.is_positive()).collect();
    v.sort();
    v.dedup();
    v
}

pub(crate) fn level_set(mu: &[Q], alpha: Q) -> PointSet {
    if alpha.is_zero() {
        return support_of(mu);
    }
    let mut s = PointSet::with_capacity(mu.len());
    for (i, v) in mu.iter().enumerate() {
        if *v >= alpha {
            s.insert(i);
        }
    }
    s
}

pub(crate) fn support_of(mu: &[Q]) -> PointSet {
    let mut s = PointSet::with_capacity(mu.len());
    for (i, v) in mu.iter().enumerate() {
        if v.is_positive() {
            s.insert(i);
        }
    }
    s
}

fn check_pair(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<()> {
    if !same_space(&u.space, &v.space) {
        return domain("fuzzy sets live on different spaces");
    }
    u.require_normal("first argument")?;
    v.require_normal("second argument")
}

/// Which of the four metrics on normal fuzzy sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FuzzyMetric {
    /// Supremum metric `d_inf`.
    Inf,
    /// Skorokhod metric `d_0`.
    Skorokhod,
    /// Sendograph metric `d_S`.
    Send,
    /// Endograph metric `d_E`.
    End,
}

impl FuzzyMetric {
    pub const ALL: [FuzzyMetric; 4] = [
        FuzzyMetric::Inf,
        FuzzyMetric::Skorokhod,
        FuzzyMetric::Send,
        FuzzyMetric::End,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FuzzyMetric::Inf => "inf",
            FuzzyMetric::Skorokhod => "skorokhod",
            FuzzyMetric::Send => "send",
            FuzzyMetric::End => "end",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "d_inf" | "sup" => Ok(FuzzyMetric::Inf),
            "skorokhod" | "d0" | "d_0" | "d_skorokhod" => Ok(FuzzyMetric::Skorokhod),
            "send" | "d_send" | "sendograph" => Ok(FuzzyMetric::Send),
            "end" | "d_end" | "endograph" => Ok(FuzzyMetric::End),
            other => Err(Error::Parse(format!(
                "unknown metric {other:?} (expected inf, skorokhod, send or end)"
            ))),
        }
    }

    /// Distance between two normal fuzzy sets on the same space.
    pub fn eval(self, u: &StepFuzzySet, v: &StepFuzzySet) -> Result<Q> {
        check_pair(u, v)?;
        Ok(self.eval_raw(&u.space, &u.mu, &v.mu))
    }

    /// Same as [`eval`](Self::eval) on raw membership vectors; both must be normal.
    pub(crate) fn eval_raw(self, space: &FiniteMetricSpace, u: &[Q], v: &[Q]) -> Q {
        match self {
            FuzzyMetric::Inf => d_inf_raw(space, u, v),
            FuzzyMetric::Skorokhod => skorokhod_raw(space, u, v),
            FuzzyMetric::Send => send_raw(space, u, v),
            FuzzyMetric::End => end_raw(space, u, v),
        }
    }
}

impl fmt::Display for FuzzyMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `sup_alpha d_H(u_alpha, v_alpha)`, evaluated at `alpha = 0` and every merged breakpoint.
pub fn d_inf(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<Q> {
    FuzzyMetric::Inf.eval(u, v)
}

/// Endograph metric.
pub fn d_end(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<Q> {
    FuzzyMetric::End.eval(u, v)
}

/// Sendograph metric.
pub fn d_send(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<Q> {
    FuzzyMetric::Send.eval(u, v)
}

/// Skorokhod metric, exact for step fuzzy sets.
pub fn d_skorokhod(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<Q> {
    FuzzyMetric::Skorokhod.eval(u, v)
}

pub(crate) fn d_inf_raw(space: &FiniteMetricSpace, u: &[Q], v: &[Q]) -> Q {
    let mut alphas = breakpoints_of(u);
    alphas.extend(breakpoints_of(v));
    alphas.push(Q::zero());
    alphas.sort();
    alphas.dedup();
    alphas
        .iter()
        .map(|a| hausdorff_unchecked(space, &level_set(u, *a), &level_set(v, *a)))
        .max()
        .unwrap()
}

/// One direction of the graph distance: for each `x` (in the support when `only_support`),
/// the cheapest `y` under `max(d(x,y), pos(u(x) - v(y)))`.
fn graph_directed(space: &FiniteMetricSpace, u: &[Q], v: &[Q], only_support: bool) -> Q {
    let mut worst = Q::zero();
    for (x, ux) in u.iter().enumerate() {
        if ux.is_zero() {
            // (x,0) is matched by (x,0) itself in the endograph; outside send(u) otherwise.
            continue;
        }
        let mut best: Option<Q> = None;
        for (y, vy) in v.iter().enumerate() {
            if only_support && vy.is_zero() {
                continue;
            }
            let c = space.d(x, y).max(pos(*ux - *vy));
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
        let best = best.expect("nonempty support");
        if best > worst {
            worst = best;
        }
    }
    worst
}

pub(crate) fn end_raw(space: &FiniteMetricSpace, u: &[Q], v: &[Q]) -> Q {
    graph_directed(space, u, v, false).max(graph_directed(space, v, u, false))
}

pub(crate) fn send_raw(space: &FiniteMetricSpace, u: &[Q], v: &[Q]) -> Q {
    graph_directed(space, u, v, true).max(graph_directed(space, v, u, true))
}

/// Exact Skorokhod distance between step sets.
///
/// With `a` the breakpoints of `u` and `b` those of `v`, a reparametrization only matters
/// through where it sends each `b_i`. The optimum is found among the candidate values
/// `{0} ∪ {|b_i - a_l|} ∪ {d_H(U_l, V_i)} ∪ {d_H(u_0, v_0)}`; feasibility of a candidate is a
/// monotone staircase walk over cells `(l, i)` in which every visited cell has level
/// distance at most the candidate.
pub(crate) fn skorokhod_raw(space: &FiniteMetricSpace, u: &[Q], v: &[Q]) -> Q {
    let a = breakpoints_of(u);
    let b = breakpoints_of(v);
    let (m, n) = (a.len(), b.len());
    let ua: Vec<PointSet> = a.iter().map(|x| level_set(u, *x)).collect();
    let vb: Vec<PointSet> = b.iter().map(|x| level_set(v, *x)).collect();
    let base = hausdorff_unchecked(space, &support_of(u), &support_of(v));
    let mut cost = Vec::with_capacity(m * n);
    for ul in &ua {
        for vi in &vb {
            cost.push(hausdorff_unchecked(space, ul, vi));
        }
    }
    let a_prev = |l: usize| if l == 0 { Q::zero() } else { a[l - 1] };

    let mut cands: Vec<Q> = cost.clone();
    cands.push(base);
    for bi in &b {
        cands.push(*bi);
        for al in &a {
            cands.push((*bi - *al).abs());
        }
    }
    cands.retain(|c| *c >= base);
    cands.sort();
    cands.dedup();

    let feasible = |eps: Q| -> bool {
        if cost[0] > eps {
            return false;
        }
        let mut reach = vec![false; m * n];
        reach[0] = true;
        for l in 0..m {
            for i in 0..n {
                if !reach[l * n + i] {
                    continue;
                }
                if l + 1 < m && cost[(l + 1) * n + i] <= eps {
                    reach[(l + 1) * n + i] = true;
                }
                if i + 1 < n && cost[l * n + i + 1] <= eps {
                    let (lo, hi) = (a_prev(l), a[l]);
                    let gap = if b[i] < lo {
                        lo - b[i]
                    } else if b[i] > hi {
                        b[i] - hi
                    } else {
                        Q::zero()
                    };
                    if gap <= eps {
                        reach[l * n + i + 1] = true;
                    }
                }
                if l + 1 < m
                    && i + 1 < n
                    && cost[(l + 1) * n + i + 1] <= eps
                    && (b[i] - a[l]).abs() <= eps
                {
                    reach[(l + 1) * n + i + 1] = true;
                }
            }
        }
        reach[m * n - 1]
    };

    // Feasibility is monotone in eps and the largest candidate is always feasible.
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

/// Piecewise-linear increasing bijection of [0,1] given by rational knots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reparam {
    knots: Vec<(Q, Q)>,
}

impl Reparam {
    /// Knots must start at (0,0), end at (1,1) and increase strictly in both coordinates.
    pub fn new(knots: Vec<(Q, Q)>) -> Result<Self> {
        if knots.len() < 2
            || knots[0] != (Q::zero(), Q::zero())
            || *knots.last().unwrap() != (Q::one(), Q::one())
        {
            return domain("reparametrization knots must start at (0,0) and end at (1,1)");
        }
        for w in knots.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return domain("reparametrization must be strictly increasing");
            }
        }
        Ok(Self { knots })
    }

    pub fn identity() -> Self {
        Self {
            knots: vec![(Q::zero(), Q::zero()), (Q::one(), Q::one())],
        }
    }

    pub fn knots(&self) -> &[(Q, Q)] {
        &self.knots
    }

    /// `xi(alpha)` for `alpha` in [0,1].
    pub fn eval(&self, alpha: Q) -> Q {
        interpolate(&self.knots, alpha, |k| k)
    }

    /// `xi^{-1}(beta)`.
    pub fn inverse(&self, beta: Q) -> Q {
        interpolate(&self.knots, beta, |(x, y)| (y, x))
    }

    /// `sup |xi(alpha) - alpha|`, attained at a knot.
    pub fn sup_deviation(&self) -> Q {
        self.knots
            .iter()
            .map(|(x, y)| (*y - *x).abs())
            .max()
            .unwrap()
    }
}

fn interpolate(knots: &[(Q, Q)], t: Q, orient: impl Fn((Q, Q)) -> (Q, Q)) -> Q {
    let pts: Vec<(Q, Q)> = knots.iter().map(|k| orient(*k)).collect();
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if t >= x0 && t <= x1 {
            return y0 + (t - x0) * (y1 - y0) / (x1 - x0);
        }
    }
    panic!("argument {t} outside [0,1]")
}

/// The two-piece map with knot `(1/2 - 1/k, 1/2)`.
pub fn make_xi_k(k: i128) -> Result<Reparam> {
    if k <= 2 {
        return domain(format!("xi_k needs k > 2, got {k}"));
    }
    Reparam::new(vec![
        (Q::zero(), Q::zero()),
        (q(1, 2) - q(1, k), q(1, 2)),
        (Q::one(), Q::one()),
    ])
}

/// `xi ∘ v`: each breakpoint `alpha_l` moves to `xi(alpha_l)`, levels unchanged.
pub fn reparam_apply(xi: &Reparam, v: &StepFuzzySet) -> StepFuzzySet {
    let mu =
        v.mu.iter()
            .map(|a| if a.is_zero() { Q::zero() } else { xi.eval(*a) })
            .collect();
    StepFuzzySet::from_raw(v.space.clone(), mu)
}

/// Membership of the Zadeh image: `max { u(x) : f(x) = y }`, 0 without preimages.
pub(crate) fn zadeh_raw(image: &[usize], mu: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); mu.len()];
    for (x, v) in mu.iter().enumerate() {
        let y = image[x];
        if *v > out[y] {
            out[y] = *v;
        }
    }
    out
}

/// Zadeh extension `f̂(u)`; acts levelwise as the image map.
pub fn zadeh_extend(f: &SystemMap, u: &StepFuzzySet) -> Result<StepFuzzySet> {
    if !same_space(f.space(), &u.space) {
        return domain("map and fuzzy set live on different spaces");
    }
    Ok(StepFuzzySet::from_raw(
        u.space.clone(),
        zadeh_raw(f.image(), &u.mu),
    ))
}

/// Pointwise `beta * u`; subnormal when `beta < 1`.
pub fn fuzzy_scale(beta: Q, u: &StepFuzzySet) -> Result<StepFuzzySet> {
    check_unit(&beta)?;
    Ok(StepFuzzySet::from_raw(
        u.space.clone(),
        u.mu.iter().map(|v| beta * *v).collect(),
    ))
}

/// Pointwise maximum.
pub fn fuzzy_max(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<StepFuzzySet> {
    if !same_space(&u.space, &v.space) {
        return domain("fuzzy sets live on different spaces");
    }
    Ok(StepFuzzySet::from_raw(
        u.space.clone(),
        u.mu.iter().zip(&v.mu).map(|(a, b)| *a.max(b)).collect(),
    ))
}

/// Partition `0 = alpha_0 < ... < alpha_N = 1` with constant levels on each stratum.
/// For step sets the native breakpoints already work, so `eps` only needs to be positive.
pub fn canonical_partition(u: &StepFuzzySet, eps: Q) -> Result<Vec<Q>> {
    if !eps.is_positive() {
        return domain("eps must be positive");
    }
    u.require_normal("fuzzy set")?;
    let mut p = vec![Q::zero()];
    p.extend(u.breakpoints());
    Ok(p)
}

/// Metric used by [`perturb_in_ball`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallMetric {
    Inf,
    End,
}

/// A fuzzy set `v != u` with `metric(u, v) < eps`.
///
/// Endograph: raise a point outside `u_1` by `eps/2` when one exists. Otherwise `u_1 = X`;
/// the carve `u * chi_{X \ B(x, δ)}` is tried first and, when it leaves the ball (as it
/// does on discrete spaces), the vertical cut `max(u * chi_{x}, (1 - eps/2) * u)` is used.
///
/// Supremum: add a point of `B(x, eps) \ u_1` to every level, or remove `x` from every
/// level when the ball lies inside `u_1`. Needs some `x` in `u_1` with another point
/// within `eps`.
pub fn perturb_in_ball(u: &StepFuzzySet, eps: Q, metric: BallMetric) -> Result<StepFuzzySet> {
    if !eps.is_positive() {
        return domain("eps must be positive");
    }
    u.require_normal("fuzzy set")?;
    let space = u.space.clone();
    let n = space.len();
    let delta = eps / int(2);
    let verify = |v: Vec<Q>, m: FuzzyMetric| -> Option<StepFuzzySet> {
        let w = StepFuzzySet::from_raw(space.clone(), v);
        (w.is_normal() && w != *u && m.eval_raw(&space, &u.mu, &w.mu) < eps).then_some(w)
    };
    match metric {
        BallMetric::End => {
            if n < 2 {
                return Err(Error::NoWitness(
                    "the space is a singleton, so F(X) has one element".into(),
                ));
            }
            if let Some(x) = (0..n).find(|&x| !u.mu[x].is_one()) {
                let mut v = u.mu.clone();
                v[x] = (u.mu[x] + delta).min(Q::one());
                if let Some(w) = verify(v, FuzzyMetric::End) {
                    return Ok(w);
                }
            }
            let x = u.core().ones().next().unwrap();
            let carve: Vec<Q> = (0..n)
                .map(|y| {
                    if space.d(x, y) < delta {
                        Q::zero()
                    } else {
                        u.mu[y]
                    }
                })
                .collect();
            if let Some(w) = verify(carve, FuzzyMetric::End) {
                return Ok(w);
            }
            let scaled: Vec<Q> = (0..n)
                .map(|y| {
                    if y == x {
                        u.mu[y]
                    } else {
                        (Q::one() - delta) * u.mu[y]
                    }
                })
                .collect();
            verify(scaled, FuzzyMetric::End)
                .ok_or_else(|| Error::NoWitness("no endograph perturbation found".into()))
        }
        BallMetric::Inf => {
            let core = u.core();
            for x in core.ones() {
                if let Some(y) = (0..n).find(|&y| !core.contains(y) && space.d(x, y) < eps) {
                    let mut v = u.mu.clone();
                    v[y] = Q::one();
                    if let Some(w) = verify(v, FuzzyMetric::Inf) {
                        return Ok(w);
                    }
                }
                if (0..n).any(|y| y != x && space.d(x, y) < eps) {
                    let mut v = u.mu.clone();
                    v[x] = Q::zero();
                    if let Some(w) = verify(v, FuzzyMetric::Inf) {
                        return Ok(w);
                    }
                }
            }
            Err(Error::NoWitness(format!(
                "no point of u_1 has another point within {eps}"
            )))
        }
    }
}

/// Point at parameter `t` of the four-segment path from `u` to `v`:
/// `max(chi_x, (1-s) u)`, `chi_x + s chi_y`, `chi_y + (1-s) chi_x`, `max(chi_y, s v)`,
/// each on a quarter of [0,1]. `x`, `y` are the least labels of `u_1`, `v_1`.
pub fn path_sample(u: &StepFuzzySet, v: &StepFuzzySet, t: Q) -> Result<StepFuzzySet> {
    check_pair(u, v)?;
    check_unit(&t)?;
    let space = u.space.clone();
    let x = u.core().ones().next().unwrap();
    let y = v.core().ones().next().unwrap();
    let four = int(4);
    let seg = rational::floor(t * four).min(3);
    let s = t * four - int(seg);
    let chi = |p: usize| StepFuzzySet::point(space.clone(), p);
    let with = |base: usize, other: usize, val: Q| {
        let mut w = chi(base);
        if other != base {
            w.mu[other] = val;
        }
        w
    };
    Ok(match seg {
        0 => fuzzy_max(&chi(x), &fuzzy_scale(Q::one() - s, u)?)?,
        1 => with(x, y, s),
        2 => with(y, x, Q::one() - s),
        _ => fuzzy_max(&chi(y), &fuzzy_scale(s, v)?)?,
    })
}

/// Normal memberships with values in `{0, 1/m, ..., 1}` on `n` points, in lexicographic order.
pub fn grid_memberships(n: usize, m: u32) -> Vec<Vec<Q>> {
    let vals: Vec<Q> = (0..=m as i128).map(|j| q(j, m as i128)).collect();
    let base = m as usize + 1;
    let total = base.pow(n as u32);
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        if digits.contains(&(base - 1)) {
            out.push(digits.iter().map(|&d| vals[d]).collect());
        }
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < base {
                break;
            }
            *slot = 0;
        }
    }
    out
}

/// Number of normal grid fuzzy sets: `(m+1)^n - m^n`.
pub fn grid_count(n: usize, m: u32) -> u128 {
    let m = m as u128;
    (m + 1).saturating_pow(n as u32) - m.saturating_pow(n as u32)
}
