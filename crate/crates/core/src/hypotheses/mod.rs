//! Similarity statistics for the two hypotheses and the tests run on them.
//!
//! H1: a denominal verb is closer to its noun than the root-derived verbs are
//! on average. H2: it is closer than the closest root-derived verb.

mod cliff;
mod levene;
mod suite;
mod wilcoxon;

pub use cliff::{cliffs_delta, CliffsDelta, Magnitude};
pub use levene::{levene_test, LeveneResult};
pub use suite::{
    run_suite, similarity_records, Hypothesis, SimilarityRecord, SuiteConfig, SuiteError,
    SuiteReport, TestResult, RECORDS_HEADER, SUMMARY_HEADER,
};
pub use wilcoxon::{
    doubled_ranks, exact_upper_tail, normal_upper_tail, wilcoxon_one_tailed, Method,
    WilcoxonResult, DEFAULT_EXACT_CROSSOVER,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("all differences are zero")]
    AllZeros,
    #[error("empty sample")]
    EmptySample,
    #[error("each sample needs at least {need} values")]
    InsufficientData { need: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors of length {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("value {0} is not finite")]
    NonFinite(usize),
}

/// Cosine of the angle between `u` and `v`, clamped to `[-1, 1]`.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64, StatsError> {
    if u.len() != v.len() {
        return Err(StatsError::DimensionMismatch(u.len(), v.len()));
    }
    let (mut uv, mut uu, mut vv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        uv += a * b;
        uu += a * a;
        vv += b * b;
    }
    if uu == 0.0 || vv == 0.0 {
        return Err(StatsError::ZeroVector);
    }
    Ok((uv / (uu * vv).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_cases() {
        assert_eq!(cosine_similarity(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 3.0]).unwrap(), 0.0);
        assert_eq!(cosine_similarity(&[1.0, 2.0], &[-1.0, -2.0]).unwrap(), -1.0);
        assert_eq!(
            cosine_similarity(&[0.0, 0.0], &[1.0, 2.0]),
            Err(StatsError::ZeroVector)
        );
        assert_eq!(
            cosine_similarity(&[1.0], &[1.0, 2.0]),
            Err(StatsError::DimensionMismatch(1, 2))
        );
    }
}
