//! Bundled systems.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::json;

use crate::dynamics::SystemMap;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::{self, int, Q};
use crate::report::InstanceDescriptor;
use crate::shadowing::dyadic_system;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    /// `{a, b}` discrete, `f(a) = f(b) = a`.
    TwoPoint,
    /// `{a, b}` discrete, `a <-> b`.
    Swap2,
    /// `{a, b}` discrete, identity.
    Identity2,
    /// Halving on `{0} ∪ {2^i : -n <= i <= n}`.
    DyadicLine(u32),
    /// Rotation on `n` points with the cycle path metric.
    Cycle(usize),
    /// Shift `3^-i -> 3^-(i+1)` on `{3^-i : i < m} ∪ {0}`.
    TriadicTail(u32),
    /// Constant map to `0` on `{0, ..., n-1}` on the line.
    Constant(usize),
}

impl Instance {
    pub const NAMES: [&'static str; 7] = [
        "two_point",
        "swap2",
        "identity2",
        "dyadic_line(n)",
        "cycle_n",
        "triadic_tail(m)",
        "constant_n",
    ];

    /// Accepts `name`, `name_n` and `name(n)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => match s.rfind('_') {
                Some(i) if s[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < s.len() => {
                    (&s[..i], Some(&s[i + 1..]))
                }
                _ => (s, None),
            },
        };
        let num = |what: &str| -> Result<usize> {
            arg.ok_or_else(|| Error::Parse(format!("{what} needs a size, e.g. {what}_4")))?
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad size in {s:?}")))
        };
        let inst = match base {
            "two_point" if arg.is_none() => Instance::TwoPoint,
            "swap2" | "swap" if arg.is_none() => Instance::Swap2,
            "identity2" if arg.is_none() => Instance::Identity2,
            "dyadic_line" => Instance::DyadicLine(num(base)? as u32),
            "cycle" => Instance::Cycle(num(base)?),
            "triadic_tail" => Instance::TriadicTail(num(base)? as u32),
            "constant" => Instance::Constant(num(base)?),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown instance {s:?}; known: {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        Ok(inst)
    }

    /// Builds the system and revalidates the metric axioms.
    pub fn build(&self) -> Result<SystemMap> {
        let ab = || FiniteMetricSpace::discrete(&["a", "b"], int(1)).map(Arc::new);
        let sys = match *self {
            Instance::TwoPoint => SystemMap::new(ab()?, vec![0, 0])?,
            Instance::Swap2 => SystemMap::new(ab()?, vec![1, 0])?,
            Instance::Identity2 => SystemMap::identity(ab()?),
            Instance::DyadicLine(n) => {
                if n > 60 {
                    return Err(Error::Domain("dyadic_line needs n <= 60".into()));
                }
                dyadic_system(n)?
            }
            Instance::Cycle(n) => {
                if n == 0 {
                    return Err(Error::Domain("cycle needs at least one point".into()));
                }
                let labels = (0..n).map(|i| format!("c{i}")).collect();
                let dist = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| int(i.abs_diff(j).min(n - i.abs_diff(j)) as i128))
                            .collect()
                    })
                    .collect();
                SystemMap::new(
                    Arc::new(FiniteMetricSpace::new(labels, dist)?),
                    (0..n).map(|i| (i + 1) % n).collect(),
                )?
            }
            Instance::TriadicTail(m) => {
                if m == 0 || m > 60 {
                    return Err(Error::Domain("triadic_tail needs 1 <= m <= 60".into()));
                }
                let mut pts: Vec<(String, Q)> = (0..m)
                    .map(|i| {
                        let v = Q::new(1, 3i128.pow(i));
                        (rational::to_json(&v).as_str().unwrap().to_string(), v)
                    })
                    .collect();
                pts.push(("0".into(), Q::zero()));
                let space = Arc::new(FiniteMetricSpace::on_line(&pts)?);
                let m = m as usize;
                SystemMap::new(space, (0..=m).map(|i| (i + 1).min(m)).collect())?
            }
            Instance::Constant(n) => {
                if n == 0 {
                    return Err(Error::Domain("constant needs at least one point".into()));
                }
                let pts: Vec<(String, Q)> =
                    (0..n).map(|i| (i.to_string(), int(i as i128))).collect();
                SystemMap::constant(Arc::new(FiniteMetricSpace::on_line(&pts)?), 0)?
            }
        };
        sys.space().check_axioms()?;
        Ok(sys)
    }

    pub fn descriptor(&self) -> InstanceDescriptor {
        let (name, params) = match *self {
            Instance::TwoPoint => ("two_point", BTreeMap::new()),
            Instance::Swap2 => ("swap2", BTreeMap::new()),
            Instance::Identity2 => ("identity2", BTreeMap::new()),
            Instance::DyadicLine(n) => {
                ("dyadic_line", BTreeMap::from([("n".to_string(), json!(n))]))
            }
            Instance::Cycle(n) => ("cycle", BTreeMap::from([("n".to_string(), json!(n))])),
            Instance::TriadicTail(m) => (
                "triadic_tail",
                BTreeMap::from([("m".to_string(), json!(m))]),
            ),
            Instance::Constant(n) => ("constant", BTreeMap::from([("n".to_string(), json!(n))])),
        };
        InstanceDescriptor {
            name: name.into(),
            params,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instance::TwoPoint => write!(f, "two_point"),
            Instance::Swap2 => write!(f, "swap2"),
            Instance::Identity2 => write!(f, "identity2"),
            Instance::DyadicLine(n) => write!(f, "dyadic_line({n})"),
            Instance::Cycle(n) => write!(f, "cycle_{n}"),
            Instance::TriadicTail(m) => write!(f, "triadic_tail({m})"),
            Instance::Constant(n) => write!(f, "constant_{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classify_contractive;
    use crate::rational::q;

    #[test]
    fn parse_forms() {
        assert_eq!(Instance::parse("cycle_4").unwrap(), Instance::Cycle(4));
        assert_eq!(
            Instance::parse("dyadic_line(3)").unwrap(),
            Instance::DyadicLine(3)
        );
        assert_eq!(
            Instance::parse("triadic_tail_3").unwrap(),
            Instance::TriadicTail(3)
        );
        assert_eq!(Instance::parse("swap2").unwrap(), Instance::Swap2);
        assert!(Instance::parse("cycle").is_err());
        assert!(Instance::parse("torus_3").is_err());
        for s in ["two_point", "identity2", "constant_3", "cycle_6"] {
            assert_eq!(Instance::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn bundled_systems() {
        let t = Instance::TriadicTail(3).build().unwrap();
        assert_eq!(t.space().labels(), &["1", "1/3", "1/9", "0"]);
        assert_eq!(classify_contractive(&t), Some(q(1, 2)));
        let d = Instance::DyadicLine(2).build().unwrap();
        assert_eq!(d.space().labels(), &["0", "1/4", "1/2", "1", "2", "4"]);
        assert_eq!(d.image(), &[0, 0, 1, 2, 3, 4]);
        let c = Instance::Cycle(4).build().unwrap();
        assert_eq!(c.space().d(0, 3), int(1));
        assert_eq!(c.space().d(0, 2), int(2));
        assert!(Instance::Cycle(0).build().is_err());
        assert_eq!(Instance::Constant(3).build().unwrap().image(), &[0, 0, 0]);
    }
}
