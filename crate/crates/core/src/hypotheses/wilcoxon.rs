//! One-tailed Wilcoxon signed-rank test, alternative "location > 0".

use statrs::distribution::{ContinuousCDF, Normal};

use super::StatsError;

pub const DEFAULT_EXACT_CROSSOVER: usize = 20;

/// Counts beyond this size lose precision in `f64`.
const MAX_EXACT_N: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    NormalApprox,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::NormalApprox => "normal_approx",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WilcoxonResult {
    pub p_value: f64,
    pub method: Method,
    /// Sum of the ranks of positive differences.
    pub w_plus: f64,
    /// Number of non-zero differences.
    pub n: usize,
    pub n_zeros: usize,
}

/// Ranks of `|d|` with ties averaged, doubled so they stay integral.
pub fn doubled_ranks(abs: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..abs.len()).collect();
    order.sort_by(|&a, &b| abs[a].total_cmp(&abs[b]));
    let mut ranks = vec![0u64; abs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && abs[order[j + 1]] == abs[order[i]] {
            j += 1;
        }
        // average of ranks i+1..=j+1, doubled
        let r = (i + 1 + j + 1) as u64;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// `P(W+ >= w)` under the null, counting all `2^n` sign patterns of the
/// given doubled ranks.
pub fn exact_upper_tail(doubled: &[u64], w_doubled: u64) -> f64 {
    let total: u64 = doubled.iter().sum();
    let mut counts = vec![0.0f64; total as usize + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in doubled {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let tail: f64 = counts[(w_doubled as usize).min(counts.len())..]
        .iter()
        .sum();
    tail / 2f64.powi(doubled.len() as i32)
}

/// Tie-corrected normal approximation with a 0.5 continuity correction.
pub fn normal_upper_tail(doubled: &[u64], w_plus: f64) -> f64 {
    let n = doubled.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut tie_term = 0.0;
    let mut sorted = doubled.to_vec();
    sorted.sort_unstable();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = (w_plus - mean - 0.5) / var.sqrt();
    let std = Normal::new(0.0, 1.0).expect("standard normal");
    std.sf(z).max(f64::MIN_POSITIVE)
}

/// Signed-rank test of `diffs` against a positive location shift.
///
/// Exact zeros are dropped. Samples of at most `crossover` non-zero
/// differences are tested exactly, larger ones by normal approximation.
pub fn wilcoxon_one_tailed(diffs: &[f64], crossover: usize) -> Result<WilcoxonResult, StatsError> {
    if let Some(i) = diffs.iter().position(|d| !d.is_finite()) {
        return Err(StatsError::NonFinite(i));
    }
    let nonzero: Vec<f64> = diffs.iter().copied().filter(|&d| d != 0.0).collect();
    let n_zeros = diffs.len() - nonzero.len();
    if nonzero.is_empty() {
        return Err(StatsError::AllZeros);
    }
    let abs: Vec<f64> = nonzero.iter().map(|d| d.abs()).collect();
    let ranks = doubled_ranks(&abs);
    let w_doubled: u64 = nonzero
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let w_plus = w_doubled as f64 / 2.0;
    let n = nonzero.len();
    let (p_value, method) = if n <= crossover.min(MAX_EXACT_N) {
        (exact_upper_tail(&ranks, w_doubled), Method::Exact)
    } else {
        (normal_upper_tail(&ranks, w_plus), Method::NormalApprox)
    };
    Ok(WilcoxonResult {
        p_value: p_value.min(1.0),
        method,
        w_plus,
        n,
        n_zeros,
    })
}
