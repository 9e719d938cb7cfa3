//! δ-chains: chain graphs, recurrence / transitivity / mixing verdicts at exact thresholds,
//! the hyperspace and fuzzy lifts, and the endograph chain builder.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::Rng;
use serde_json::{json, Value};

use crate::config::Budget;
use crate::dynamics::{approx_preimage, fuzzy_grid, hyper_extend, HyperSystem, SystemMap};
use crate::error::{domain, Error, Result};
use crate::fuzzy::{fuzzy_max, fuzzy_scale, zadeh_extend, FuzzyMetric, StepFuzzySet};
use crate::metric::{product, same_space};
use crate::rational::{self, int, mid, Q};
use crate::report::{AnalysisReport, Check};

/// A finite sequence `x_0, ..., x_n` with `rho(f(x_j), x_{j+1}) < delta` for every link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaChain<P> {
    pub points: Vec<P>,
    pub delta: Q,
    /// `rho(f(x_j), x_{j+1})` for each link.
    pub slacks: Vec<Q>,
}

impl<P> DeltaChain<P> {
    /// Number of links `n`.
    pub fn length(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_valid(&self) -> bool {
        self.slacks.len() + 1 == self.points.len() && self.slacks.iter().all(|s| *s < self.delta)
    }

    pub fn first(&self) -> &P {
        &self.points[0]
    }

    pub fn last(&self) -> &P {
        self.points.last().unwrap()
    }

    pub fn max_slack(&self) -> Q {
        self.slacks.iter().copied().max().unwrap_or_else(Q::zero)
    }
}

fn check_delta(delta: Q) -> Result<()> {
    if delta <= Q::zero() {
        return domain("delta must be positive");
    }
    Ok(())
}

fn finish<P>(points: Vec<P>, delta: Q, slacks: Vec<Q>) -> Result<DeltaChain<P>> {
    if let Some((j, s)) = slacks.iter().enumerate().find(|(_, s)| **s >= delta) {
        return domain(format!("link {j} has slack {s}, not below delta {delta}"));
    }
    Ok(DeltaChain {
        points,
        delta,
        slacks,
    })
}

/// Measures and validates a chain of point indices.
pub fn index_chain(sys: &SystemMap, points: Vec<usize>, delta: Q) -> Result<DeltaChain<usize>> {
    check_delta(delta)?;
    if points.is_empty() {
        return domain("a chain needs at least one point");
    }
    if points.iter().any(|&p| p >= sys.len()) {
        return domain("chain point out of range");
    }
    let slacks = points
        .windows(2)
        .map(|w| sys.space().d(sys.apply(w[0]), w[1]))
        .collect();
    finish(points, delta, slacks)
}

/// Measures and validates a chain of fuzzy sets under `f̂` and `metric`.
pub fn fuzzy_chain(
    sys: &SystemMap,
    metric: FuzzyMetric,
    points: Vec<StepFuzzySet>,
    delta: Q,
) -> Result<DeltaChain<StepFuzzySet>> {
    let slacks = fuzzy_slacks(sys, metric, &points)?;
    check_delta(delta)?;
    finish(points, delta, slacks)
}

/// `rho(f̂(u^j), u^{j+1})` for every link, without validation.
pub fn fuzzy_slacks(
    sys: &SystemMap,
    metric: FuzzyMetric,
    points: &[StepFuzzySet],
) -> Result<Vec<Q>> {
    if points.is_empty() {
        return domain("a chain needs at least one point");
    }
    points
        .windows(2)
        .map(|w| metric.eval(&zadeh_extend(sys, &w[0])?, &w[1]))
        .collect()
}

/// Distinct link slacks `d(f(x), y)` over all pairs, ascending.
pub fn critical_deltas(sys: &SystemMap) -> Vec<Q> {
    let s = sys.space();
    let mut v: Vec<Q> = (0..sys.len())
        .flat_map(|x| (0..sys.len()).map(move |y| s.d(sys.apply(x), y)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// One δ inside each interval between consecutive critical values plus one above all of them.
/// The chain graph is constant on `(c_i, c_{i+1}]`, so these cover every distinct graph.
pub fn representatives(critical: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = critical.windows(2).map(|w| mid(w[0], w[1])).collect();
    out.push(critical.last().copied().unwrap_or_else(Q::zero) + Q::one());
    out
}

/// Representative deltas of a system.
pub fn sweep_deltas(sys: &SystemMap) -> Vec<Q> {
    representatives(&critical_deltas(sys))
}

/// Edges `x -> y` iff `d(f(x), y) < delta`.
#[derive(Clone, Debug)]
pub struct ChainGraph {
    pub delta: Q,
    pub succ: Vec<Vec<usize>>,
}

pub fn chain_graph(sys: &SystemMap, delta: Q) -> ChainGraph {
    let s = sys.space();
    let succ = (0..sys.len())
        .map(|x| {
            (0..sys.len())
                .filter(|&y| s.d(sys.apply(x), y) < delta)
                .collect()
        })
        .collect();
    ChainGraph { delta, succ }
}

impl ChainGraph {
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// Strongly connected components.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.len(), 0);
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (x, ys) in self.succ.iter().enumerate() {
            for &y in ys {
                g.add_edge(nodes[x], nodes[y], ());
            }
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Vertices reachable from `x` by a path with at least one edge.
    pub fn reachable(&self, x: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.len());
        let mut queue: VecDeque<usize> = self.succ[x].iter().copied().collect();
        for &y in &self.succ[x] {
            seen.insert(y);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if !seen.put(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Period of a strongly connected graph: gcd of `level(u) + 1 - level(v)` over edges,
    /// with BFS levels from vertex 0.
    pub fn period(&self) -> u64 {
        let mut level = vec![usize::MAX; self.len()];
        level[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut g = 0i64;
        for (u, ws) in self.succ.iter().enumerate() {
            for &w in ws {
                if level[u] != usize::MAX && level[w] != usize::MAX {
                    g = g.gcd(&(level[u] as i64 + 1 - level[w] as i64));
                }
            }
        }
        g.unsigned_abs()
    }
}

/// Whether every point returns to itself by a δ-chain, with a cycle per point.
#[derive(Clone, Debug)]
pub struct RecurrenceVerdict {
    pub delta: Q,
    pub holds: bool,
    pub cycles: Vec<Option<DeltaChain<usize>>>,
}

impl RecurrenceVerdict {
    /// First point without a return chain.
    pub fn failing_point(&self) -> Option<usize> {
        self.cycles.iter().position(|c| c.is_none())
    }
}

pub fn chain_recurrent_at(sys: &SystemMap, delta: Q) -> Result<RecurrenceVerdict> {
    check_delta(delta)?;
    let g = chain_graph(sys, delta);
    let cycles: Vec<Option<DeltaChain<usize>>> = (0..sys.len())
        .map(|x| {
            shortest_path(&g, x, x)
                .map(|p| index_chain(sys, p, delta))
                .transpose()
        })
        .collect::<Result<_>>()?;
    Ok(RecurrenceVerdict {
        delta,
        holds: cycles.iter().all(|c| c.is_some()),
        cycles,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityVerdict {
    pub delta: Q,
    pub holds: bool,
    /// `(x, y)` with no δ-chain from `x` to `y`.
    pub witness: Option<(usize, usize)>,
}

/// Chain transitivity: the chain graph is strongly connected.
///
/// The witness source is the highest-indexed vertex of the sink component holding the
/// highest index among sink components; the target is the least vertex outside it.
pub fn chain_transitive_at(sys: &SystemMap, delta: Q) -> Result<TransitivityVerdict> {
    check_delta(delta)?;
    let g = chain_graph(sys, delta);
    Ok(transitivity(&g))
}

fn transitivity(g: &ChainGraph) -> TransitivityVerdict {
    let sccs = g.sccs();
    if sccs.len() == 1 {
        return TransitivityVerdict {
            delta: g.delta,
            holds: true,
            witness: None,
        };
    }
    let mut comp = vec![0usize; g.len()];
    for (i, c) in sccs.iter().enumerate() {
        for &v in c {
            comp[v] = i;
        }
    }
    let is_sink = |i: usize| {
        sccs[i]
            .iter()
            .all(|&v| g.succ[v].iter().all(|&w| comp[w] == i))
    };
    let sink = (0..sccs.len())
        .filter(|&i| is_sink(i))
        .max_by_key(|&i| *sccs[i].last().unwrap())
        .unwrap();
    let x = *sccs[sink].last().unwrap();
    let y = (0..g.len()).find(|&v| comp[v] != sink).unwrap();
    TransitivityVerdict {
        delta: g.delta,
        holds: false,
        witness: Some((x, y)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingVerdict {
    pub delta: Q,
    pub holds: bool,
    pub transitive: bool,
    /// Period of the chain graph when it is strongly connected.
    pub period: Option<u64>,
}

/// Chain mixing: strongly connected and aperiodic.
pub fn chain_mixing_at(sys: &SystemMap, delta: Q) -> Result<MixingVerdict> {
    check_delta(delta)?;
    let g = chain_graph(sys, delta);
    Ok(mixing(&g))
}

fn mixing(g: &ChainGraph) -> MixingVerdict {
    let transitive = g.sccs().len() == 1;
    let period = transitive.then(|| g.period());
    MixingVerdict {
        delta: g.delta,
        holds: period == Some(1),
        transitive,
        period,
    }
}

/// Recurrence from the component structure: every vertex sits in a nontrivial component
/// or carries a self-loop. Returns the first failing vertex.
fn recurrence_failure(g: &ChainGraph) -> Option<usize> {
    let mut on_cycle = vec![false; g.len()];
    for c in g.sccs() {
        if c.len() > 1 {
            for v in c {
                on_cycle[v] = true;
            }
        }
    }
    (0..g.len()).find(|&v| !on_cycle[v] && !g.succ[v].contains(&v))
}

/// Shortest path with at least one edge from `x` to `y`.
fn shortest_path(g: &ChainGraph, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.len()];
    let mut queue = VecDeque::new();
    for &s in &g.succ[x] {
        if parent[s] == usize::MAX {
            parent[s] = x;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == y {
            let mut path = vec![y];
            let mut cur = parent[y];
            while cur != x {
                path.push(cur);
                cur = parent[cur];
            }
            path.push(x);
            path.reverse();
            return Some(path);
        }
        for &w in &g.succ[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A δ-chain from `x` to `y`: the shortest one with at least one link, or one with exactly
/// `length` links.
pub fn find_chain(
    sys: &SystemMap,
    x: usize,
    y: usize,
    delta: Q,
    length: Option<usize>,
) -> Result<Option<DeltaChain<usize>>> {
    check_delta(delta)?;
    if x >= sys.len() || y >= sys.len() {
        return domain("chain endpoint out of range");
    }
    let g = chain_graph(sys, delta);
    let path = match length {
        None => shortest_path(&g, x, y),
        Some(n) => path_of_length(&g, x, y, n),
    };
    path.map(|p| index_chain(sys, p, delta)).transpose()
}

fn path_of_length(g: &ChainGraph, x: usize, y: usize, n: usize) -> Option<Vec<usize>> {
    let v = g.len();
    // parents[k][w]: predecessor of w on some walk of exactly k+1 steps from x.
    let mut parents: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut frontier = FixedBitSet::with_capacity(v);
    frontier.insert(x);
    for _ in 0..n {
        let mut next = FixedBitSet::with_capacity(v);
        let mut par = vec![usize::MAX; v];
        for u in frontier.ones() {
            for &w in &g.succ[u] {
                if !next.put(w) {
                    par[w] = u;
                }
            }
        }
        parents.push(par);
        frontier = next;
    }
    if !frontier.contains(y) {
        return None;
    }
    let mut path = vec![y];
    let mut cur = y;
    for k in (0..n).rev() {
        cur = parents[k][cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// A random δ-chain of `len` links (each step picks a uniform successor).
pub fn random_chain<R: Rng>(
    sys: &SystemMap,
    delta: Q,
    len: usize,
    rng: &mut R,
) -> Result<DeltaChain<usize>> {
    check_delta(delta)?;
    let g = chain_graph(sys, delta);
    let mut points = vec![rng.random_range(0..sys.len())];
    for _ in 0..len {
        let succ = &g.succ[*points.last().unwrap()];
        points.push(succ[rng.random_range(0..succ.len())]);
    }
    index_chain(sys, points, delta)
}

/// `K_j = {x^1_j, ..., x^N_j}` from `N` chains of equal length and delta.
pub fn lift_chain_to_hyper(
    hyper: &HyperSystem,
    chains: &[DeltaChain<usize>],
) -> Result<DeltaChain<usize>> {
    let Some(first) = chains.first() else {
        return domain("need at least one chain to lift");
    };
    if chains
        .iter()
        .any(|c| c.points.len() != first.points.len() || c.delta != first.delta)
    {
        return domain("chains to lift must share length and delta");
    }
    let base = hyper.base();
    let points = (0..first.points.len())
        .map(|j| {
            let mut k = base.empty_set();
            for c in chains {
                if c.points[j] >= base.len() {
                    return domain("chain point out of range");
                }
                k.insert(c.points[j]);
            }
            Ok(hyper.index_of(&k).expect("nonempty subset"))
        })
        .collect::<Result<Vec<_>>>()?;
    index_chain(&hyper.system, points, first.delta)
}

/// `u^j = max_l alpha_l chi_{K^l_j}` from one hyperspace chain per breakpoint `alpha_l`.
/// Chain `l` must run from `u_{alpha_l}` to `v_{alpha_l}`; the last breakpoint must be 1.
/// The result is validated as a `d_inf`-δ-chain.
pub fn lift_chain_to_fuzzy(
    sys: &SystemMap,
    hyper: &HyperSystem,
    u: &StepFuzzySet,
    v: &StepFuzzySet,
    hyper_chains: &[DeltaChain<usize>],
    breakpoints: &[Q],
    delta: Q,
) -> Result<DeltaChain<StepFuzzySet>> {
    if !same_space(sys.space(), u.space()) || !same_space(sys.space(), v.space()) {
        return domain("fuzzy sets and map live on different spaces");
    }
    if breakpoints.is_empty()
        || breakpoints.len() != hyper_chains.len()
        || *breakpoints.last().unwrap() != Q::one()
    {
        return domain("need one hyperspace chain per breakpoint, ending at breakpoint 1");
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints[0] <= Q::zero() {
        return domain("breakpoints must increase strictly within (0,1]");
    }
    let len = hyper_chains[0].points.len();
    for (a, c) in breakpoints.iter().zip(hyper_chains) {
        if c.points.len() != len {
            return domain("hyperspace chains must share a length");
        }
        let (ua, va) = (u.level(*a)?, v.level(*a)?);
        if hyper.sets[*c.first()] != ua || hyper.sets[*c.last()] != va {
            return domain(format!(
                "chain for alpha {a} is not aligned with the levels of u and v"
            ));
        }
    }
    let space = sys.space().clone();
    let points = (0..len)
        .map(|j| {
            let mut mu = vec![Q::zero(); space.len()];
            for (a, c) in breakpoints.iter().zip(hyper_chains) {
                for x in hyper.sets[c.points[j]].ones() {
                    if *a > mu[x] {
                        mu[x] = *a;
                    }
                }
            }
            StepFuzzySet::from_raw(space.clone(), mu)
        })
        .collect();
    fuzzy_chain(sys, FuzzyMetric::Inf, points, delta)
}

/// Supports of a fuzzy chain as a hyperspace chain with the same delta.
pub fn project_fuzzy_chain_supports(
    hyper: &HyperSystem,
    chain: &DeltaChain<StepFuzzySet>,
) -> Result<DeltaChain<usize>> {
    let points = chain
        .points
        .iter()
        .map(|u| {
            hyper
                .index_of(&u.support())
                .ok_or_else(|| Error::Domain("fuzzy set with empty support".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    index_chain(&hyper.system, points, chain.delta)
}

/// `n_delta = floor(1/delta) + 1`.
pub fn n_delta(delta: Q) -> Result<usize> {
    check_delta(delta)?;
    Ok(rational::floor(Q::one() / delta) as usize + 1)
}

/// Endograph δ-chain of length `n` from `u` to `v` for a surjective map.
///
/// With `x` the least point of `u_1`, `w = v ∘ f^n` (so `f̂^n(w) = v`), `eps = 1/n_delta`:
/// `u^j = max(chi_{f^j x}, (1 - j eps) f̂^j u, j eps f̂^j w)` for `j <= n_delta`,
/// `u^j = max(f̂^j w, (1 - (j - n_delta) eps) chi_{f^j x})` up to `2 n_delta`,
/// and `u^j = f̂^j w` afterwards. Every slack is at most `eps < delta`.
pub fn endograph_chain(
    sys: &SystemMap,
    u: &StepFuzzySet,
    v: &StepFuzzySet,
    delta: Q,
    n: usize,
) -> Result<DeltaChain<StepFuzzySet>> {
    let nd = n_delta(delta)?;
    if !sys.is_surjective() {
        return domain(
            "endograph chains need a map with dense range (surjective on finite spaces)",
        );
    }
    if n < 2 * nd {
        return domain(format!("length {n} is below 2 n_delta = {}", 2 * nd));
    }
    if !u.is_normal() || !v.is_normal() {
        return domain("endpoints must be normal");
    }
    let space = sys.space().clone();
    let eps = Q::new(1, nd as i128);
    let x = u.core().ones().next().unwrap();
    let mut w = v.clone();
    for _ in 0..n {
        w = approx_preimage(sys, &w, eps, FuzzyMetric::End)?;
    }
    let mut fu = u.clone();
    let mut fw = w;
    let mut fx = x;
    let mut points = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let chi = StepFuzzySet::point(space.clone(), fx);
        let jq = int(j as i128);
        let p = if j <= nd {
            let a = fuzzy_scale(Q::one() - jq * eps, &fu)?;
            let b = fuzzy_scale(jq * eps, &fw)?;
            fuzzy_max(&fuzzy_max(&chi, &a)?, &b)?
        } else if j <= 2 * nd {
            let c = fuzzy_scale(Q::one() - (jq - int(nd as i128)) * eps, &chi)?;
            fuzzy_max(&fw, &c)?
        } else {
            fw.clone()
        };
        points.push(p);
        fu = zadeh_extend(sys, &fu)?;
        fw = zadeh_extend(sys, &fw)?;
        fx = sys.apply(fx);
    }
    *points.last_mut().unwrap() = v.clone();
    fuzzy_chain(sys, FuzzyMetric::End, points, delta)
}

/// Options for [`chain_profile`].
#[derive(Clone, Debug)]
pub struct ProfileConfig {
    pub budget: Budget,
    /// Largest product arity swept (products of arity 2..=max_product).
    pub max_product: usize,
    /// Grid resolutions swept for every metric.
    pub grids: Vec<u32>,
    /// Fixed deltas to evaluate instead of each system's representatives.
    pub deltas: Option<Vec<Q>>,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            max_product: 3,
            grids: vec![2],
            deltas: None,
        }
    }
}

/// Recurrence, transitivity and mixing of one finite system at each of its representative deltas.
pub fn chain_rows(name: &str, sys: &SystemMap) -> Vec<Value> {
    chain_rows_at(name, sys, &sweep_deltas(sys))
}

/// Same as [`chain_rows`] at the given positive deltas.
pub fn chain_rows_at(name: &str, sys: &SystemMap, deltas: &[Q]) -> Vec<Value> {
    let s = sys.space();
    deltas
        .iter()
        .copied()
        .map(|delta| {
            let g = chain_graph(sys, delta);
            let rec = recurrence_failure(&g);
            let tr = transitivity(&g);
            let mx = mixing(&g);
            let witness = match (rec, tr.witness) {
                (_, Some((x, y))) => json!({"no_chain_from": s.label(x), "to": s.label(y), "non_recurrent": rec.map(|p| s.label(p))}),
                (Some(p), None) => json!({"non_recurrent": s.label(p)}),
                (None, None) => json!({"period": mx.period}),
            };
            json!({
                "system": name,
                "delta": rational::to_json(&delta),
                "recurrent": rec.is_none(),
                "transitive": tr.holds,
                "mixing": mx.holds,
                "witness": witness,
            })
        })
        .collect()
}

/// Sweep over the base system, its products, its hyperextension and fuzzy grids.
pub fn chain_profile(sys: &SystemMap, config: &ProfileConfig) -> AnalysisReport {
    let mut rep = AnalysisReport::new("chains");
    rep.parameters = json!({
        "max_product": config.max_product,
        "grids": config.grids,
        "budget_points": config.budget.points,
        "deltas": config.deltas.as_ref().map(|ds| ds.iter().map(rational::to_json).collect::<Vec<_>>()),
    });
    let rows = |name: &str, sys: &SystemMap| match &config.deltas {
        Some(ds) => chain_rows_at(name, sys, ds),
        None => chain_rows(name, sys),
    };
    rep.rows.extend(rows("base", sys));
    for arity in 2..=config.max_product {
        match product(sys.space(), arity, config.budget.points) {
            Ok(p) => {
                let image = p
                    .tuples
                    .iter()
                    .map(|t| p.index_of_tuple(&t.iter().map(|&c| sys.apply(c)).collect::<Vec<_>>()))
                    .collect();
                let psys = SystemMap::new(p.space.clone(), image).expect("product map is total");
                rep.rows.extend(rows(&format!("product{arity}"), &psys));
            }
            Err(e) => skip(&mut rep, &format!("product{arity}"), e),
        }
    }
    match hyper_extend(sys, config.budget.points) {
        Ok(h) => rep.rows.extend(rows("hyper", &h.system)),
        Err(e) => skip(&mut rep, "hyper", e),
    }
    for &m in &config.grids {
        for metric in FuzzyMetric::ALL {
            let name = format!("grid{m}_{metric}");
            match fuzzy_grid(sys, m, metric, config.budget.points) {
                Ok(g) => rep.rows.extend(rows(&name, &g.system)),
                Err(e) => skip(&mut rep, &name, e),
            }
        }
    }
    let monotone = monotone_rows(&rep.rows);
    rep.checks.push(Check::exhaustive(
        "monotone",
        "transitivity and mixing verdicts never switch off as delta grows",
        monotone,
        rep.rows.len() as u64,
        Value::Null,
    ));
    rep
}

fn skip(rep: &mut AnalysisReport, name: &str, e: Error) {
    rep.partial = true;
    rep.notes.push(format!("{name} skipped: {e}"));
}

fn monotone_rows(rows: &[Value]) -> bool {
    let mut last: std::collections::HashMap<String, (bool, bool)> = Default::default();
    for r in rows {
        let key = r["system"].as_str().unwrap().to_string();
        let cur = (
            r["transitive"].as_bool().unwrap(),
            r["mixing"].as_bool().unwrap(),
        );
        if let Some(prev) = last.get(&key) {
            if (prev.0 && !cur.0) || (prev.1 && !cur.1) {
                return false;
            }
        }
        last.insert(key, cur);
    }
    true
}

/// Point labels along a chain.
pub fn labels_of(sys: &SystemMap, chain: &DeltaChain<usize>) -> Vec<String> {
    chain
        .points
        .iter()
        .map(|&p| sys.space().label(p).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::hyper_extend;
    use crate::fuzzy::d_end;
    use crate::metric::FiniteMetricSpace;
    use crate::rational::q;
    use std::sync::Arc;

    fn ab() -> Arc<FiniteMetricSpace> {
        Arc::new(FiniteMetricSpace::discrete(&["a", "b"], int(1)).unwrap())
    }

    fn cycle(n: usize) -> SystemMap {
        let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        int(((i as i128 - j as i128).abs())
                            .min(n as i128 - (i as i128 - j as i128).abs()))
                    })
                    .collect()
            })
            .collect();
        let space = Arc::new(FiniteMetricSpace::new(labels, dist).unwrap());
        SystemMap::new(space, (0..n).map(|i| (i + 1) % n).collect()).unwrap()
    }

    #[test]
    fn critical_examples() {
        let x = ab();
        assert_eq!(
            critical_deltas(&SystemMap::identity(x.clone())),
            vec![Q::zero(), int(1)]
        );
        assert_eq!(
            sweep_deltas(&SystemMap::identity(x.clone())),
            vec![q(1, 2), int(2)]
        );
        let single = Arc::new(FiniteMetricSpace::discrete(&["a"], int(1)).unwrap());
        assert_eq!(
            critical_deltas(&SystemMap::identity(single)),
            vec![Q::zero()]
        );
        let c = SystemMap::constant(x, 0).unwrap();
        assert_eq!(critical_deltas(&c), vec![Q::zero(), int(1)]);
    }

    #[test]
    fn recurrence_examples() {
        let x = ab();
        let swap = SystemMap::new(x.clone(), vec![1, 0]).unwrap();
        let r = chain_recurrent_at(&swap, q(1, 2)).unwrap();
        assert!(r.holds);
        assert_eq!(r.cycles[0].as_ref().unwrap().points, vec![0, 1, 0]);
        let exp = SystemMap::new(x.clone(), vec![0, 0]).unwrap();
        let r = chain_recurrent_at(&exp, q(1, 2)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_point(), Some(1));
        assert!(chain_recurrent_at(&exp, int(3)).unwrap().holds);
        assert!(chain_recurrent_at(&exp, Q::zero()).is_err());
    }

    #[test]
    fn transitivity_and_mixing_examples() {
        let x = ab();
        let swap = SystemMap::new(x.clone(), vec![1, 0]).unwrap();
        assert!(chain_transitive_at(&swap, q(1, 2)).unwrap().holds);
        let m = chain_mixing_at(&swap, q(1, 2)).unwrap();
        assert!(!m.holds);
        assert_eq!(m.period, Some(2));
        let id = SystemMap::identity(x.clone());
        let t = chain_transitive_at(&id, q(1, 2)).unwrap();
        assert!(!t.holds);
        assert_eq!(t.witness, Some((1, 0)));
        let h = hyper_extend(&swap, 100).unwrap();
        let t = chain_transitive_at(&h.system, q(1, 2)).unwrap();
        assert!(!t.holds);
        let (from, to) = t.witness.unwrap();
        assert_eq!(
            (h.system.space().label(from), h.system.space().label(to)),
            ("{a,b}", "{a}")
        );
        assert!(chain_transitive_at(&h.system, int(2)).unwrap().holds);
        assert!(chain_mixing_at(&swap, int(2)).unwrap().holds);
    }

    #[test]
    fn find_chain_examples() {
        let x = ab();
        let swap = SystemMap::new(x.clone(), vec![1, 0]).unwrap();
        assert!(find_chain(&swap, 0, 0, q(1, 2), Some(3)).unwrap().is_none());
        assert_eq!(
            find_chain(&swap, 0, 0, q(1, 2), Some(2))
                .unwrap()
                .unwrap()
                .points,
            vec![0, 1, 0]
        );
        let id = SystemMap::identity(x);
        assert_eq!(
            find_chain(&id, 0, 0, q(1, 2), Some(1))
                .unwrap()
                .unwrap()
                .points,
            vec![0, 0]
        );
        assert_eq!(
            find_chain(&id, 0, 0, q(1, 2), Some(0))
                .unwrap()
                .unwrap()
                .points,
            vec![0]
        );
        let c4 = cycle(4);
        let ch = find_chain(&c4, 0, 2, q(1, 2), None).unwrap().unwrap();
        assert_eq!(ch.points, vec![0, 1, 2]);
        assert_eq!(ch.length(), 2);
    }

    #[test]
    fn hyper_lift_of_swap_chains() {
        let swap = SystemMap::new(ab(), vec![1, 0]).unwrap();
        let h = hyper_extend(&swap, 100).unwrap();
        let c1 = index_chain(&swap, vec![0, 1, 0], q(1, 2)).unwrap();
        let c2 = index_chain(&swap, vec![1, 0, 1], q(1, 2)).unwrap();
        let lifted = lift_chain_to_hyper(&h, &[c1.clone(), c2]).unwrap();
        assert_eq!(lifted.points, vec![2, 2, 2]);
        assert!(lifted.slacks.iter().all(|s| s.is_zero()));
        let same = lift_chain_to_hyper(&h, &[c1.clone(), c1.clone()]).unwrap();
        assert_eq!(same.points, vec![0, 1, 0]);
        let short = index_chain(&swap, vec![0, 1], q(1, 2)).unwrap();
        assert!(lift_chain_to_hyper(&h, &[c1, short]).is_err());
    }

    #[test]
    fn fuzzy_lift_and_projection() {
        let x = ab();
        let swap = SystemMap::new(x.clone(), vec![1, 0]).unwrap();
        let h = hyper_extend(&swap, 100).unwrap();
        let u = StepFuzzySet::from_memberships(x.clone(), vec![int(1), q(1, 2)]).unwrap();
        let half = index_chain(&h.system, vec![2, 2, 2], q(1, 4)).unwrap();
        let top = index_chain(&h.system, vec![0, 1, 0], q(1, 4)).unwrap();
        let ch = lift_chain_to_fuzzy(
            &swap,
            &h,
            &u,
            &u,
            &[half.clone(), top.clone()],
            &[q(1, 2), int(1)],
            q(1, 2),
        )
        .unwrap();
        assert_eq!(ch.length(), 2);
        assert_eq!(ch.points[1].memberships(), &[q(1, 2), int(1)]);
        let proj = project_fuzzy_chain_supports(&h, &ch).unwrap();
        assert_eq!(proj.points, vec![2, 2, 2]);
        assert!(
            lift_chain_to_fuzzy(&swap, &h, &u, &u, &[top, half], &[q(1, 2), int(1)], q(1, 2))
                .is_err()
        );
    }

    #[test]
    fn endograph_chain_on_cycle4() {
        let c4 = cycle(4);
        let s = c4.space().clone();
        let u = StepFuzzySet::point(s.clone(), 0);
        let v = StepFuzzySet::point(s.clone(), 2);
        let ch = endograph_chain(&c4, &u, &v, q(1, 3), 8).unwrap();
        assert_eq!(ch.length(), 8);
        assert!(ch.slacks.iter().all(|x| *x <= q(1, 4)));
        assert_eq!(ch.last(), &v);
        assert_eq!(ch.first(), &u);
        for (j, w) in ch.points.windows(2).enumerate() {
            assert_eq!(
                d_end(&zadeh_extend(&c4, &w[0]).unwrap(), &w[1]).unwrap(),
                ch.slacks[j]
            );
        }
        assert!(endograph_chain(&c4, &u, &v, q(1, 3), 7).is_err());
        let collapse = SystemMap::constant(s.clone(), 0).unwrap();
        assert!(endograph_chain(&collapse, &u, &v, q(1, 3), 8).is_err());
        let big = endograph_chain(&c4, &u, &v, int(1), 5).unwrap();
        assert_eq!(big.length(), 5);
    }

    #[test]
    fn profile_of_swap() {
        let swap = SystemMap::new(ab(), vec![1, 0]).unwrap();
        let rep = chain_profile(&swap, &ProfileConfig::default());
        assert!(rep.all_passed());
        let hyper: Vec<&Value> = rep.rows.iter().filter(|r| r["system"] == "hyper").collect();
        assert_eq!(hyper[0]["delta"], "1/2");
        assert_eq!(hyper[0]["transitive"], false);
        assert_eq!(hyper[1]["transitive"], true);
        assert!(rep
            .rows
            .iter()
            .filter(|r| r["system"] == "base")
            .all(|r| r["transitive"] == true));
    }
}
