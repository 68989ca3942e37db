//! Cliff's dominance statistic.

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Magnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

impl Magnitude {
    pub const SMALL: f64 = 0.147;
    pub const MEDIUM: f64 = 0.33;
    pub const LARGE: f64 = 0.474;

    /// Values on a threshold take the higher label.
    pub fn of(delta: f64) -> Self {
        let a = delta.abs();
        if a >= Self::LARGE {
            Magnitude::Large
        } else if a >= Self::MEDIUM {
            Magnitude::Medium
        } else if a >= Self::SMALL {
            Magnitude::Small
        } else {
            Magnitude::Negligible
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Magnitude::Negligible => "negligible",
            Magnitude::Small => "small",
            Magnitude::Medium => "medium",
            Magnitude::Large => "large",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffsDelta {
    pub delta: f64,
    /// Pairs with `a_i > b_j`.
    pub greater: u64,
    /// Pairs with `a_i < b_j`.
    pub less: u64,
    pub pairs: u64,
    pub magnitude: Magnitude,
}

/// `(#{a_i > b_j} - #{a_i < b_j}) / (|a| |b|)`, in `O((n + m) log m)`.
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> Result<CliffsDelta, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(StatsError::NonFinite(0));
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as u64;
    let (mut greater, mut less) = (0u64, 0u64);
    for &x in a {
        greater += sorted.partition_point(|&y| y < x) as u64;
        less += m - sorted.partition_point(|&y| y <= x) as u64;
    }
    let pairs = a.len() as u64 * m;
    let delta = (greater as f64 - less as f64) / pairs as f64;
    Ok(CliffsDelta {
        delta,
        greater,
        less,
        pairs,
        magnitude: Magnitude::of(delta),
    })
}
