//! Two-sample Levene test for equal variances.

use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeveneResult {
    pub statistic: f64,
    pub p_value: f64,
    pub df1: f64,
    pub df2: f64,
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Classic (mean-centered) Levene statistic on the absolute deviations from
/// each group mean, referred to `F(1, n_a + n_b - 2)`.
pub fn levene_test(a: &[f64], b: &[f64]) -> Result<LeveneResult, StatsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::InsufficientData { need: 2 });
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite(0));
    }
    let za: Vec<f64> = {
        let m = mean(a);
        a.iter().map(|x| (x - m).abs()).collect()
    };
    let zb: Vec<f64> = {
        let m = mean(b);
        b.iter().map(|x| (x - m).abs()).collect()
    };
    let (ma, mb) = (mean(&za), mean(&zb));
    let n = (a.len() + b.len()) as f64;
    let grand = (za.iter().sum::<f64>() + zb.iter().sum::<f64>()) / n;
    let between = a.len() as f64 * (ma - grand).powi(2) + b.len() as f64 * (mb - grand).powi(2);
    let within: f64 = za.iter().map(|z| (z - ma).powi(2)).sum::<f64>()
        + zb.iter().map(|z| (z - mb).powi(2)).sum::<f64>();
    let df1 = 1.0;
    let df2 = n - 2.0;
    let (statistic, p_value) = if within == 0.0 {
        if between == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        }
    } else {
        let w = df2 * between / (df1 * within);
        let f = FisherSnedecor::new(df1, df2).expect("positive degrees of freedom");
        (w, f.sf(w).clamp(0.0, 1.0))
    };
    Ok(LeveneResult {
        statistic,
        p_value,
        df1,
        df2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let a = [1.0, 4.0, 2.0, 8.0];
        let r = levene_test(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_small() {
        assert!(levene_test(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn spread_difference() {
        let a: Vec<f64> = (0..20).map(|i| ((i * 7) % 11) as f64 * 10.0).collect();
        let b: Vec<f64> = (0..20).map(|i| ((i * 5) % 11) as f64 * 0.1).collect();
        assert!(levene_test(&a, &b).unwrap().p_value < 0.001);
    }
}
