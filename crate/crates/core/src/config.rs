//! Enumeration budgets.

/// Caps on the sizes of derived finite systems and searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Points of a hyperspace, fuzzy grid or product system.
    pub points: usize,
    /// States explored by the shadowing tracker.
    pub states: usize,
    /// Candidate memberships examined by a non-shadowing certificate.
    pub candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            points: 1024,
            states: 2_000_000,
            candidates: 50_000_000,
        }
    }
}

impl Budget {
    /// Reads `FUZZHYPER_BUDGET` (a point count) on top of the defaults.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(points) = std::env::var("FUZZHYPER_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            b.points = points;
        }
        b
    }
}
