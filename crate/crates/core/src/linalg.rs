//! Small dense symmetric eigensolver.

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Panics if `data.len() != n * n`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "expected {n}x{n} entries");
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    s += v * v;
                }
            }
        }
        s.sqrt()
    }
}

/// Eigenvalues in non-increasing order, with unit eigenvectors stored as
/// `vectors[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

pub const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// `1e-10 * max(1, ||A||_F)`.
pub fn symmetric_eigen(a: &SymMatrix) -> Eigen {
    let n = a.dim();
    let mut m = a.clone();
    // symmetrize against caller round-off
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    let mut v = SymMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let tol = 1e-10 * a.frobenius_norm().max(1.0);
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && m.off_diagonal_norm() > tol {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|i| v.get(i, j)).collect();
            fix_sign(&mut col);
            col
        })
        .collect();
    Eigen {
        values,
        vectors,
        sweeps,
    }
}

/// Flips `v` so that its first entry that is not negligible is positive.
pub fn fix_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormalizes `basis` in place (two passes of modified Gram-Schmidt)
/// and extends it with standard basis vectors until it has `target` members.
pub fn complete_orthonormal(basis: &mut Vec<Vec<f64>>, dim: usize, target: usize) {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(target);
    let candidates = basis
        .drain(..)
        .chain((0..dim).map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            e
        }))
        .collect::<Vec<_>>();
    for mut c in candidates {
        if out.len() == target {
            break;
        }
        let start = norm(&c);
        if start == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for q in &out {
                let d = dot(&c, q);
                c.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
            }
        }
        let n = norm(&c);
        if n > 1e-6 * start {
            c.iter_mut().for_each(|x| *x /= n);
            out.push(c);
        }
    }
    *basis = out;
}
