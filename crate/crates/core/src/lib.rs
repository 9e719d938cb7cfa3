//! Finite models of fuzzy and hyperspace dynamics: exact rational metrics on step fuzzy sets,
//! δ-chain analysis and decidable shadowing checks.

pub mod chains;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod fuzzy;
pub mod gen;
pub mod instances;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod par;
pub mod rational;
pub mod report;
pub mod shadowing;
pub mod suite;

pub use error::{Error, Result};
pub use fuzzy::{FuzzyMetric, StepFuzzySet};
pub use metric::{FiniteMetricSpace, PointSet};
pub use rational::Q;
