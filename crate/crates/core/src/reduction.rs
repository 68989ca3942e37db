//! PCA with Guttman-Kaiser retention, and per-item 2D projections under a
//! cosine kernel.

use thiserror::Error;

use crate::linalg::{complete_orthonormal, dot, fix_sign, norm, symmetric_eigen, SymMatrix};

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("row {0} has a different length")]
    RaggedRows(usize),
    #[error("row {0} is not finite")]
    NonFinite(usize),
    #[error("row {0} is a zero vector")]
    ZeroVector(usize),
    #[error("need at least {need} rows, got {got}")]
    TooFewRows { need: usize, got: usize },
    #[error("cannot keep {requested} of {available} components")]
    BadDimension { requested: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// Orthonormal, ordered by decreasing eigenvalue.
    pub components: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub explained_variance_ratio: Vec<f64>,
    /// Total variance, the trace of the covariance matrix.
    pub total_variance: f64,
}

fn check_rows(rows: &[Vec<f64>]) -> Result<usize, ReductionError> {
    let d = rows.first().map(Vec::len).unwrap_or(0);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != d {
            return Err(ReductionError::RaggedRows(i));
        }
        if r.iter().any(|x| !x.is_finite()) {
            return Err(ReductionError::NonFinite(i));
        }
    }
    Ok(d)
}

/// Fits on `rows` (n samples of dimension D) and keeps `min(n - 1, D)`
/// components.
///
/// The eigenproblem is solved on the D x D covariance when `D <= n` and on
/// the n x n Gram matrix of centered rows otherwise.
pub fn pca_fit(rows: &[Vec<f64>]) -> Result<PcaModel, ReductionError> {
    let n = rows.len();
    if n < 2 {
        return Err(ReductionError::TooFewRows { need: 2, got: n });
    }
    let d = check_rows(rows)?;
    if d == 0 {
        return Err(ReductionError::DegenerateInput(
            "zero-dimensional rows".into(),
        ));
    }
    let mut mean = vec![0.0; d];
    for r in rows {
        mean.iter_mut().zip(r).for_each(|(m, x)| *m += x);
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let centered: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().zip(&mean).map(|(x, m)| x - m).collect())
        .collect();
    let denom = (n - 1) as f64;
    let total_variance: f64 = centered.iter().map(|r| dot(r, r)).sum::<f64>() / denom;
    if total_variance <= 0.0 {
        return Err(ReductionError::DegenerateInput(
            "zero variance in every direction".into(),
        ));
    }
    let k = (n - 1).min(d);

    let (eigenvalues, mut components) = if d <= n {
        let mut cov = SymMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let v = centered.iter().map(|r| r[i] * r[j]).sum::<f64>() / denom;
                cov.set(i, j, v);
                cov.set(j, i, v);
            }
        }
        let e = symmetric_eigen(&cov);
        (e.values[..k].to_vec(), e.vectors[..k].to_vec())
    } else {
        let mut gram = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = dot(&centered[i], &centered[j]) / denom;
                gram.set(i, j, v);
                gram.set(j, i, v);
            }
        }
        let e = symmetric_eigen(&gram);
        let floor = 1e-12 * e.values[0].max(0.0);
        let mut comps = Vec::with_capacity(k);
        for (val, u) in e.values.iter().zip(&e.vectors).take(k) {
            if *val <= floor {
                break;
            }
            let mut c = vec![0.0; d];
            for (ui, row) in u.iter().zip(&centered) {
                c.iter_mut().zip(row).for_each(|(ci, x)| *ci += ui * x);
            }
            comps.push(c);
        }
        (e.values[..k].to_vec(), comps)
    };

    complete_orthonormal(&mut components, d, k);
    components.iter_mut().for_each(|c| fix_sign(c));
    let eigenvalues: Vec<f64> = eigenvalues.into_iter().map(|v| v.max(0.0)).collect();
    let explained_variance_ratio = eigenvalues.iter().map(|v| v / total_variance).collect();
    Ok(PcaModel {
        mean,
        components,
        eigenvalues,
        explained_variance_ratio,
        total_variance,
    })
}

impl PcaModel {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Coordinates of `x` on the first `k` components.
    pub fn project(&self, x: &[f64], k: usize) -> Vec<f64> {
        let c: Vec<f64> = x.iter().zip(&self.mean).map(|(a, m)| a - m).collect();
        self.components
            .iter()
            .take(k)
            .map(|comp| dot(comp, &c))
            .collect()
    }

    pub fn reconstruct(&self, coords: &[f64]) -> Vec<f64> {
        let mut out = self.mean.clone();
        for (a, comp) in coords.iter().zip(&self.components) {
            out.iter_mut().zip(comp).for_each(|(o, c)| *o += a * c);
        }
        out
    }

    /// The covariance spectrum padded with zeros to the input dimension.
    pub fn full_spectrum(&self) -> Vec<f64> {
        let mut s = self.eigenvalues.clone();
        s.resize(self.dim(), 0.0);
        s
    }
}

/// Number of eigenvalues strictly above the mean eigenvalue, at least 1.
pub fn guttman_kaiser_dim(eigenvalues: &[f64]) -> usize {
    if eigenvalues.is_empty() {
        return 1;
    }
    let mean = eigenvalues.iter().sum::<f64>() / eigenvalues.len() as f64;
    eigenvalues.iter().filter(|&&v| v > mean).count().max(1)
}

#[derive(Debug, Clone)]
pub struct Reduced {
    pub model: PcaModel,
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
    /// Share of total variance carried by the kept components.
    pub retained_variance: f64,
}

/// Fits PCA on `rows` and projects them onto the Guttman-Kaiser number of
/// components, or onto `force_dim` components when given.
pub fn reduce(rows: &[Vec<f64>], force_dim: Option<usize>) -> Result<Reduced, ReductionError> {
    let model = pca_fit(rows)?;
    let available = model.components.len();
    let dim = match force_dim {
        Some(k) if k == 0 || k > available => {
            return Err(ReductionError::BadDimension {
                requested: k,
                available,
            })
        }
        Some(k) => k,
        None => guttman_kaiser_dim(&model.full_spectrum()).min(available),
    };
    let rows = rows.iter().map(|r| model.project(r, dim)).collect();
    let retained_variance = model.explained_variance_ratio[..dim].iter().sum();
    Ok(Reduced {
        model,
        dim,
        rows,
        retained_variance,
    })
}

pub fn cosine_gram(rows: &[Vec<f64>]) -> Result<SymMatrix, ReductionError> {
    check_rows(rows)?;
    let norms: Vec<f64> = rows.iter().map(|r| norm(r)).collect();
    if let Some(i) = norms.iter().position(|&x| x == 0.0) {
        return Err(ReductionError::ZeroVector(i));
    }
    let n = rows.len();
    let mut g = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                1.0
            } else {
                (dot(&rows[i], &rows[j]) / (norms[i] * norms[j])).clamp(-1.0, 1.0)
            };
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    Ok(g)
}

pub fn double_center(g: &SymMatrix) -> SymMatrix {
    let n = g.dim();
    let row_means: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| g.get(i, j)).sum::<f64>() / n as f64)
        .collect();
    let grand = row_means.iter().sum::<f64>() / n as f64;
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, g.get(i, j) - row_means[i] - row_means[j] + grand);
        }
    }
    out
}

/// Kernel PCA with `k(x, y) = cos(x, y)`: the top two eigenvectors of the
/// double-centered cosine Gram matrix, scaled by the square roots of their
/// eigenvalues. Each axis is signed so its first non-negligible coordinate is
/// positive.
pub fn project2d_cosine_kernel(rows: &[Vec<f64>]) -> Result<Vec<[f64; 2]>, ReductionError> {
    if rows.len() < 3 {
        return Err(ReductionError::TooFewRows {
            need: 3,
            got: rows.len(),
        });
    }
    let centered = double_center(&cosine_gram(rows)?);
    let e = symmetric_eigen(&centered);
    let axes: Vec<Vec<f64>> = (0..2)
        .map(|a| {
            let scale = e.values[a].max(0.0).sqrt();
            let mut v: Vec<f64> = e.vectors[a].iter().map(|x| x * scale).collect();
            fix_sign(&mut v);
            v
        })
        .collect();
    Ok((0..rows.len()).map(|i| [axes[0][i], axes[1][i]]).collect())
}
