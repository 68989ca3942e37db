use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{
    cliffs_delta, cosine_similarity, levene_test, wilcoxon_one_tailed, Magnitude, Method,
    StatsError, DEFAULT_EXACT_CROSSOVER,
};
use crate::datasetgen::DataPoint;
use crate::reduction::{reduce, ReductionError};
use crate::vectors::{coverage_report, CoverageReport, EmbeddingSpace};

pub const RECORDS_HEADER: &str = "point_id,s_denom,k,mean_s_root,max_s_root,d_h1,d_h2";
pub const SUMMARY_HEADER: &str = "model_label,hypothesis,n,p_value,delta,magnitude,levene_p,method";

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityRecord {
    pub point_id: usize,
    pub s_denom: f64,
    pub s_root: Vec<f64>,
    pub mean_s_root: f64,
    pub max_s_root: f64,
    pub d_h1: f64,
    pub d_h2: f64,
}

impl SimilarityRecord {
    pub fn new(point_id: usize, s_denom: f64, s_root: Vec<f64>) -> Self {
        assert!(
            !s_root.is_empty(),
            "a record needs at least one root-verb similarity"
        );
        let mean = s_root.iter().sum::<f64>() / s_root.len() as f64;
        let max = s_root.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // guard the mean against rounding above the max
        let mean = mean.min(max);
        Self {
            point_id,
            s_denom,
            s_root,
            mean_s_root: mean,
            max_s_root: max,
            d_h1: s_denom - mean,
            d_h2: s_denom - max,
        }
    }

    pub fn k(&self) -> usize {
        self.s_root.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    H1,
    H2,
}

impl Hypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            Hypothesis::H1 => "H1",
            Hypothesis::H2 => "H2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    pub hypothesis: Hypothesis,
    pub n: usize,
    pub p_value: f64,
    pub cliffs_delta: f64,
    pub magnitude: Magnitude,
    pub levene_p: f64,
    pub method: Method,
    pub w_plus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub min_n: usize,
    pub exact_crossover: usize,
    pub force_dim: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            min_n: 5,
            exact_crossover: DEFAULT_EXACT_CROSSOVER,
            force_dim: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("{n} data points survive coverage, at least {min} needed")]
    TooFewPoints { n: usize, min: usize },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub label: String,
    pub coverage: CoverageReport,
    pub records: Vec<SimilarityRecord>,
    pub h1: TestResult,
    pub h2: TestResult,
    /// Number of word forms the PCA was fitted on.
    pub n_tokens: usize,
    pub reduced_dim: usize,
    pub retained_variance: f64,
}

impl SuiteReport {
    /// Significance of H2 at `alpha` is expected to come with significance
    /// of H1; `false` flags a report worth a second look.
    pub fn h2_implies_h1(&self, alpha: f64) -> bool {
        self.h2.p_value >= alpha || self.h2.p_value.is_nan() || self.h1.p_value < alpha
    }

    pub fn records_csv(&self) -> String {
        let mut out = format!("{RECORDS_HEADER}\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.point_id,
                r.s_denom,
                r.k(),
                r.mean_s_root,
                r.max_s_root,
                r.d_h1,
                r.d_h2
            );
        }
        out
    }

    /// Summary rows without the header.
    pub fn summary_rows(&self) -> String {
        let mut out = String::new();
        for t in [&self.h1, &self.h2] {
            let _ = writeln!(
                out,
                "{},{},{},{:e},{},{},{:e},{}",
                self.label,
                t.hypothesis.as_str(),
                t.n,
                t.p_value,
                t.cliffs_delta,
                t.magnitude.as_str(),
                t.levene_p,
                t.method.as_str()
            );
        }
        out
    }
}

/// One record per point from the vectors of its forms; `vector` maps a form
/// to its (reduced) vector.
pub fn similarity_records<'a, F>(
    points: &[(usize, DataPoint)],
    vector: F,
) -> Result<Vec<SimilarityRecord>, StatsError>
where
    F: Fn(&str) -> Option<&'a [f64]>,
{
    let get = |t: &str| vector(t).ok_or(StatsError::EmptySample);
    points
        .iter()
        .map(|(id, p)| {
            let noun = get(&p.noun_lookup_form)?;
            let s_denom = cosine_similarity(noun, get(&p.denominal)?)?;
            let s_root = p
                .root_verbs
                .iter()
                .map(|v| cosine_similarity(noun, get(v)?))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SimilarityRecord::new(*id, s_denom, s_root))
        })
        .collect()
}

fn test(
    hypothesis: Hypothesis,
    records: &[SimilarityRecord],
    config: &SuiteConfig,
) -> Result<TestResult, StatsError> {
    let (diffs, other): (Vec<f64>, Vec<f64>) = match hypothesis {
        Hypothesis::H1 => records.iter().map(|r| (r.d_h1, r.mean_s_root)).unzip(),
        Hypothesis::H2 => records.iter().map(|r| (r.d_h2, r.max_s_root)).unzip(),
    };
    let denom: Vec<f64> = records.iter().map(|r| r.s_denom).collect();
    let w = wilcoxon_one_tailed(&diffs, config.exact_crossover)?;
    let d = cliffs_delta(&denom, &other)?;
    let lev = levene_test(&denom, &other)?;
    Ok(TestResult {
        hypothesis,
        n: records.len(),
        p_value: w.p_value,
        cliffs_delta: d.delta,
        magnitude: d.magnitude,
        levene_p: lev.p_value,
        method: w.method,
        w_plus: w.w_plus,
    })
}

/// Coverage filter, PCA over every form the surviving points use, then the
/// H1 and H2 tests on the reduced vectors.
pub fn run_suite(
    points: &[DataPoint],
    space: &EmbeddingSpace,
    config: &SuiteConfig,
) -> Result<SuiteReport, SuiteError> {
    let coverage = coverage_report(points, space);
    let n = coverage.kept.len();
    if n < config.min_n.max(2) {
        return Err(SuiteError::TooFewPoints {
            n,
            min: config.min_n.max(2),
        });
    }

    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (_, p) in &coverage.kept {
        for t in p.lookup_tokens() {
            let next = index.len();
            index.entry(space.key(t)).or_insert(next);
        }
    }
    let mut rows = vec![Vec::new(); index.len()];
    for (key, &i) in &index {
        rows[i] = space.lookup(key).expect("coverage checked").to_vec();
    }
    let reduced = reduce(&rows, config.force_dim)?;
    let records = similarity_records(&coverage.kept, |t| {
        index
            .get(&space.key(t))
            .map(|&i| reduced.rows[i].as_slice())
    })?;

    let h1 = test(Hypothesis::H1, &records, config)?;
    let h2 = test(Hypothesis::H2, &records, config)?;
    Ok(SuiteReport {
        label: space.source_label.clone(),
        coverage,
        records,
        h1,
        h2,
        n_tokens: rows.len(),
        reduced_dim: reduced.dim,
        retained_variance: reduced.retained_variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_arithmetic() {
        let r = SimilarityRecord::new(0, 0.8, vec![0.3, 0.5]);
        assert!((r.d_h1 - 0.4).abs() < 1e-12);
        assert!((r.d_h2 - 0.3).abs() < 1e-12);
        let r = SimilarityRecord::new(1, 0.2, vec![0.7]);
        assert_eq!(r.d_h1, r.d_h2);
    }

    #[test]
    fn too_few_points() {
        let space = EmbeddingSpace::new(3, "x");
        assert!(matches!(
            run_suite(&[], &space, &SuiteConfig::default()),
            Err(SuiteError::TooFewPoints { n: 0, min: 5 })
        ));
    }
}
