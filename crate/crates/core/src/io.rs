//! JSON input files: metric spaces, fuzzy sets and maps.
//!
//! ```json
//! {"labels": ["a", "b"], "dist": [["0", "3"], ["3", "0"]]}
//! {"space": {...}, "membership": {"a": "1", "b": "1/2"}}
//! {"space": {...}, "map": {"a": "b", "b": "a"}}
//! ```
//! A fuzzy set may instead use `{"breakpoints": [...], "levels": [[...], ...]}`.

use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::Value;

use crate::dynamics::SystemMap;
use crate::error::{Error, Result};
use crate::fuzzy::StepFuzzySet;
use crate::metric::FiniteMetricSpace;
use crate::rational::{self, Q};

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn space_from_json(v: &Value) -> Result<FiniteMetricSpace> {
    let labels: Vec<String> = v["labels"]
        .as_array()
        .ok_or_else(|| Error::Parse("space needs a \"labels\" array".into()))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("label {l} is not a string")))
        })
        .collect::<Result<_>>()?;
    let dist = v["dist"]
        .as_array()
        .ok_or_else(|| Error::Parse("space needs a \"dist\" matrix".into()))?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::Parse(format!("dist row {i} is not an array")))?
                .iter()
                .map(rational::from_json)
                .collect::<Result<Vec<Q>>>()
        })
        .collect::<Result<_>>()?;
    FiniteMetricSpace::new(labels, dist)
}

/// Reads a fuzzy set, taking its space from the file or from `space`.
pub fn fuzzy_from_json(v: &Value, space: Option<&Arc<FiniteMetricSpace>>) -> Result<StepFuzzySet> {
    let space = match (&v["space"], space) {
        (Value::Null, Some(s)) => s.clone(),
        (Value::Null, None) => {
            return Err(Error::Parse(
                "fuzzy set has no \"space\" and none was given".into(),
            ))
        }
        (s, _) => Arc::new(space_from_json(s)?),
    };
    if let Some(m) = v["membership"].as_object() {
        let mut mu = vec![Q::zero(); space.len()];
        for (label, val) in m {
            mu[space.index(label)?] = rational::from_json(val)?;
        }
        return StepFuzzySet::from_memberships(space, mu);
    }
    let bps = v["breakpoints"]
        .as_array()
        .ok_or_else(|| Error::Parse("fuzzy set needs \"membership\" or \"breakpoints\"".into()))?;
    let bps = bps
        .iter()
        .map(rational::from_json)
        .collect::<Result<Vec<_>>>()?;
    let levels = v["levels"]
        .as_array()
        .ok_or_else(|| Error::Parse("\"breakpoints\" needs matching \"levels\"".into()))?
        .iter()
        .map(|l| {
            let names: Vec<&str> = l
                .as_array()
                .ok_or_else(|| Error::Parse("a level must be an array of labels".into()))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .ok_or_else(|| Error::Parse("labels must be strings".into()))
                })
                .collect::<Result<_>>()?;
            space.set(&names)
        })
        .collect::<Result<Vec<_>>>()?;
    StepFuzzySet::from_levels(space, &bps, &levels)
}

pub fn map_from_json(v: &Value) -> Result<SystemMap> {
    let space = Arc::new(space_from_json(&v["space"])?);
    let m = v["map"]
        .as_object()
        .ok_or_else(|| Error::Parse("map file needs a \"map\" object".into()))?;
    let pairs: Vec<(&str, &str)> = m
        .iter()
        .map(|(k, t)| {
            t.as_str()
                .map(|t| (k.as_str(), t))
                .ok_or_else(|| Error::Parse(format!("image of {k} is not a label")))
        })
        .collect::<Result<_>>()?;
    SystemMap::from_labels(space, &pairs)
}

pub fn load_fuzzy(path: &Path, space: Option<&Arc<FiniteMetricSpace>>) -> Result<StepFuzzySet> {
    fuzzy_from_json(&read_json(path)?, space)
}

pub fn load_space(path: &Path) -> Result<FiniteMetricSpace> {
    space_from_json(&read_json(path)?)
}

pub fn load_map(path: &Path) -> Result<SystemMap> {
    map_from_json(&read_json(path)?)
}
