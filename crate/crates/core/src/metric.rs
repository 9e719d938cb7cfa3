//! Finite metric spaces, subsets as bitsets, Hausdorff distance, fattening and products.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{self, Q};

/// Subset of a space, one bit per point in label order.
pub type PointSet = FixedBitSet;

/// A nonempty subset. Nonemptiness is checked by the operations that need it.
pub type CompactSet = PointSet;

/// Labeled points with an exact rational distance matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Q>,
}

impl FiniteMetricSpace {
    /// Builds a space and checks every metric axiom, including the triangle inequality.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Q>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return domain("a metric space needs at least one point");
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return domain(format!("distance matrix must be {n}x{n}"));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return domain(format!("duplicate label {l:?}"));
            }
        }
        let space = Self {
            labels,
            dist: dist.into_iter().flatten().collect(),
        };
        space.check_axioms()?;
        Ok(space)
    }

    /// Skips validation. Used for derived spaces whose distances come from a metric.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, dist: Vec<Q>) -> Self {
        debug_assert_eq!(dist.len(), labels.len() * labels.len());
        Self { labels, dist }
    }

    /// Discrete metric (all distinct points at distance `scale`).
    pub fn discrete(labels: &[&str], scale: Q) -> Result<Self> {
        let n = labels.len();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::zero() } else { scale })
                    .collect()
            })
            .collect();
        Self::new(labels.iter().map(|s| s.to_string()).collect(), dist)
    }

    /// Points of the real line with the absolute-value distance.
    pub fn on_line(points: &[(String, Q)]) -> Result<Self> {
        let dist = points
            .iter()
            .map(|(_, x)| points.iter().map(|(_, y)| (*x - *y).abs()).collect())
            .collect();
        Self::new(points.iter().map(|(l, _)| l.clone()).collect(), dist)
    }

    /// Re-runs the metric axiom checks.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.d(i, i).is_zero() {
                return domain(format!("d({0},{0}) must be 0", self.labels[i]));
            }
            for j in 0..n {
                let dij = self.d(i, j);
                if dij != self.d(j, i) {
                    return domain(format!(
                        "distance between {} and {} is not symmetric",
                        self.labels[i], self.labels[j]
                    ));
                }
                if i != j && !dij.is_positive() {
                    return domain(format!(
                        "d({},{}) must be positive (pseudometrics are rejected)",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.d(i, k) > self.d(i, j) + self.d(j, k) {
                        return domain(format!(
                            "triangle inequality fails for ({},{},{})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Q {
        self.dist[i * self.labels.len() + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::Domain(format!("unknown point {label:?}")))
    }

    /// Sorted distinct values of the distance matrix, 0 included.
    pub fn distance_values(&self) -> Vec<Q> {
        let mut v = self.dist.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn diameter(&self) -> Q {
        self.dist.iter().copied().max().unwrap_or_else(Q::zero)
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn singleton(&self, i: usize) -> PointSet {
        let mut s = self.empty_set();
        s.insert(i);
        s
    }

    /// Subset from labels.
    pub fn set(&self, labels: &[&str]) -> Result<PointSet> {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.index(l)?);
        }
        Ok(s)
    }

    /// Labels of the members of `set`.
    pub fn set_labels(&self, set: &PointSet) -> Vec<String> {
        set.ones().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b}` style rendering.
    pub fn fmt_set(&self, set: &PointSet) -> String {
        format!("{{{}}}", self.set_labels(set).join(","))
    }

    /// Distance from point `x` to a nonempty set.
    pub fn dist_to_set(&self, x: usize, set: &PointSet) -> Q {
        set.ones()
            .map(|y| self.d(x, y))
            .min()
            .expect("nonempty set")
    }

    /// JSON form `{"labels":[...],"dist":[[...]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.len();
        serde_json::json!({
            "labels": self.labels,
            "dist": (0..n)
                .map(|i| (0..n).map(|j| rational::to_json(&self.d(i, j))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn same_space(a: &Arc<FiniteMetricSpace>, b: &Arc<FiniteMetricSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_subset(space: &FiniteMetricSpace, a: &PointSet, what: &str) -> Result<()> {
    if a.len() != space.len() {
        return domain(format!("{what} belongs to a different space"));
    }
    if a.is_clear() {
        return domain(format!("{what} is empty"));
    }
    Ok(())
}

/// Directed distance `max_{a in A} min_{b in B} d(a,b)` for nonempty sets.
pub(crate) fn directed(space: &FiniteMetricSpace, a: &PointSet, b: &PointSet) -> Q {
    a.ones()
        .map(|x| space.dist_to_set(x, b))
        .max()
        .expect("nonempty set")
}

pub(crate) fn hausdorff_unchecked(space: &FiniteMetricSpace, a: &PointSet, b: &PointSet) -> Q {
    if a == b {
        return Q::zero();
    }
    directed(space, a, b).max(directed(space, b, a))
}

/// Hausdorff distance between two nonempty subsets.
pub fn hausdorff(space: &FiniteMetricSpace, a: &CompactSet, b: &CompactSet) -> Result<Q> {
    check_subset(space, a, "first set")?;
    check_subset(space, b, "second set")?;
    Ok(hausdorff_unchecked(space, a, b))
}

/// `Y + eps`: every point within `eps` of some member of `Y`.
pub fn fatten(space: &FiniteMetricSpace, y: &PointSet, eps: Q) -> Result<PointSet> {
    check_subset(space, y, "set")?;
    if eps.is_negative() {
        return domain("fattening radius must be nonnegative");
    }
    let mut out = space.empty_set();
    for x in 0..space.len() {
        if space.dist_to_set(x, y) <= eps {
            out.insert(x);
        }
    }
    Ok(out)
}

/// N-fold product with the max metric.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub base: Arc<FiniteMetricSpace>,
    pub arity: usize,
    /// Coordinates of every product point, in lexicographic order.
    pub tuples: Vec<Vec<usize>>,
    pub space: Arc<FiniteMetricSpace>,
}

impl ProductSpace {
    pub fn index_of_tuple(&self, t: &[usize]) -> usize {
        let n = self.base.len();
        t.iter().fold(0, |acc, &c| acc * n + c)
    }
}

/// Number of points of the N-fold product, or a budget error.
pub fn product_size(base_len: usize, arity: usize, budget: usize) -> Result<usize> {
    let count = (base_len as u128)
        .checked_pow(arity as u32)
        .unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::Budget {
            what: format!("{arity}-fold product"),
            count,
            budget: budget as u128,
        });
    }
    Ok(count as usize)
}

/// `X^N` with `d((x),(y)) = max_l d(x_l, y_l)`.
pub fn product(
    space: &Arc<FiniteMetricSpace>,
    arity: usize,
    budget: usize,
) -> Result<ProductSpace> {
    if arity == 0 {
        return domain("product arity must be at least 1");
    }
    let n = space.len();
    let count = product_size(n, arity, budget)?;
    let tuples: Vec<Vec<usize>> = (0..count)
        .map(|mut idx| {
            let mut t = vec![0; arity];
            for slot in t.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            t
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| {
            if arity == 1 {
                space.label(t[0]).to_string()
            } else {
                format!(
                    "({})",
                    t.iter()
                        .map(|&c| space.label(c))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        })
        .collect();
    let mut dist = Vec::with_capacity(count * count);
    for s in &tuples {
        for t in &tuples {
            dist.push(s.iter().zip(t).map(|(&a, &b)| space.d(a, b)).max().unwrap());
        }
    }
    Ok(ProductSpace {
        base: space.clone(),
        arity,
        tuples,
        space: Arc::new(FiniteMetricSpace::from_parts_unchecked(labels, dist)),
    })
}

/// Every nonempty subset, ordered by bitmask value.
pub fn nonempty_subsets(space: &FiniteMetricSpace) -> Vec<PointSet> {
    let n = space.len();
    (1u64..(1u64 << n))
        .map(|mask| {
            let mut s = space.empty_set();
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    s.insert(i);
                }
            }
            s
        })
        .collect()
}
