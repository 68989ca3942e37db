//! Synthetic embedding spaces with a known geometry.
//!
//! Each root owns a spherical cap around a random center. The noun and the
//! root-derived verbs are scattered over the cap; the denominal verb is
//! placed near the noun. With `denominal_noise == region_radius` the
//! denominal is drawn exactly like a root verb, which gives the null model.
//!
//! Randomness comes from ChaCha8 seeded with `seed`, one stream per root
//! (stream number = root index), so each root can be regenerated alone.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::datasetgen::{DataPoint, Status};
use crate::linalg::{dot, norm};
use crate::vectors::EmbeddingSpace;

pub const RNG_ALGORITHM: &str = "ChaCha8";
pub const SYNTH_TEMPLATE: &str = "synth";

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_roots: usize,
    pub k_verbs: usize,
    pub dim: usize,
    /// Angular radius of a root's region, in radians.
    pub region_radius: f64,
    /// Angular spread of the denominal around the noun, in radians.
    pub denominal_noise: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_roots: 60,
            k_verbs: 4,
            dim: 50,
            region_radius: 0.5,
            denominal_noise: 0.1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidConfig(m.into()));
        if self.n_roots < 5 {
            return bad("n_roots must be at least 5");
        }
        if !(1..=5).contains(&self.k_verbs) {
            return bad("k_verbs must be between 1 and 5");
        }
        if self.dim < 3 {
            return bad("dim must be at least 3");
        }
        if !(self.denominal_noise > 0.0
            && self.denominal_noise <= self.region_radius
            && self.region_radius < FRAC_PI_2)
        {
            return bad("need 0 < denominal_noise <= region_radius < pi/2");
        }
        Ok(())
    }

    /// `key = value` lines describing the run.
    pub fn metadata(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rng = {RNG_ALGORITHM}");
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "n_roots = {}", self.n_roots);
        let _ = writeln!(out, "k_verbs = {}", self.k_verbs);
        let _ = writeln!(out, "dim = {}", self.dim);
        let _ = writeln!(out, "region_radius = {}", self.region_radius);
        let _ = writeln!(out, "denominal_noise = {}", self.denominal_noise);
        out
    }
}

fn unit(v: &mut [f64]) {
    let n = norm(v);
    v.iter_mut().for_each(|x| *x /= n);
}

fn gaussian_unit<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if norm(&v) > 1e-12 {
            unit(&mut v);
            return v;
        }
    }
}

/// Rotates unit vector `c` by `angle` towards a uniformly random direction
/// orthogonal to it.
fn rotate<R: Rng>(rng: &mut R, c: &[f64], angle: f64) -> Vec<f64> {
    let mut w = loop {
        let g: Vec<f64> = (0..c.len()).map(|_| rng.sample(StandardNormal)).collect();
        let d = dot(&g, c);
        let w: Vec<f64> = g.iter().zip(c).map(|(x, y)| x - d * y).collect();
        if norm(&w) > 1e-9 {
            break w;
        }
    };
    unit(&mut w);
    let (s, co) = angle.sin_cos();
    let mut v: Vec<f64> = c.iter().zip(&w).map(|(a, b)| co * a + s * b).collect();
    unit(&mut v);
    v
}

/// `c` rotated by an angle drawn uniformly from `[0, spread]`.
pub fn perturb<R: Rng>(rng: &mut R, c: &[f64], spread: f64) -> Vec<f64> {
    let angle = rng.gen::<f64>() * spread;
    rotate(rng, c, angle)
}

/// Point a fraction `t` of the way along the great circle from `a` to `b`.
pub fn slerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    let cos = dot(a, b).clamp(-1.0, 1.0);
    let omega = cos.acos();
    if omega < 1e-12 {
        return a.to_vec();
    }
    let s = omega.sin();
    let (wa, wb) = (((1.0 - t) * omega).sin() / s, (t * omega).sin() / s);
    let mut v: Vec<f64> = a.iter().zip(b).map(|(x, y)| wa * x + wb * y).collect();
    unit(&mut v);
    v
}

pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    (dot(a, b) / (norm(a) * norm(b))).clamp(-1.0, 1.0).acos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthRoot {
    pub center: Vec<f64>,
    pub noun: Vec<f64>,
    pub denominal: Vec<f64>,
    pub verbs: Vec<Vec<f64>>,
}

/// Draws root `i`: center, noun, the `k` verbs, then the denominal.
///
/// The denominal sits at `noise` from a point on the arc from the center to
/// the noun, `1 - noise / radius` of the way along. It is therefore within
/// `noise` of that anchor and within `radius` of the center, and for
/// `noise == radius` its anchor is the center itself.
pub fn generate_root(config: &SynthConfig, i: usize) -> SynthRoot {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(i as u64);
    let r = config.region_radius;
    let center = gaussian_unit(&mut rng, config.dim);
    let noun = perturb(&mut rng, &center, r);
    let verbs = (0..config.k_verbs)
        .map(|_| perturb(&mut rng, &center, r))
        .collect();
    let anchor = slerp(&center, &noun, 1.0 - config.denominal_noise / r);
    let denominal = perturb(&mut rng, &anchor, config.denominal_noise);
    SynthRoot {
        center,
        noun,
        denominal,
        verbs,
    }
}

pub fn noun_token(i: usize) -> String {
    format!("r{i}_noun")
}

pub fn denominal_token(i: usize) -> String {
    format!("r{i}_denom")
}

pub fn verb_token(i: usize, j: usize) -> String {
    format!("r{i}_v{}", j + 1)
}

/// Data points and the space holding their vectors, in root order.
pub fn generate(config: &SynthConfig) -> Result<(Vec<DataPoint>, EmbeddingSpace), SynthError> {
    config.validate()?;
    let mut space = EmbeddingSpace::new(config.dim, "synth");
    let mut points = Vec::with_capacity(config.n_roots);
    for i in 0..config.n_roots {
        let root = generate_root(config, i);
        space.insert(&noun_token(i), &root.noun);
        space.insert(&denominal_token(i), &root.denominal);
        let mut verbs = Vec::with_capacity(config.k_verbs);
        for (j, v) in root.verbs.iter().enumerate() {
            space.insert(&verb_token(i, j), v);
            verbs.push(verb_token(i, j));
        }
        points.push(DataPoint {
            noun: noun_token(i),
            noun_template: SYNTH_TEMPLATE.into(),
            noun_lookup_form: noun_token(i),
            root: format!("r{i}"),
            denominal: denominal_token(i),
            denominal_template: SYNTH_TEMPLATE.into(),
            root_verbs: verbs,
            status: Status::Kept,
        });
    }
    Ok((points, space))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SynthConfig::default().validate().is_ok());
        let bad = [
            SynthConfig {
                n_roots: 4,
                ..Default::default()
            },
            SynthConfig {
                dim: 2,
                ..Default::default()
            },
            SynthConfig {
                denominal_noise: 0.6,
                ..Default::default()
            },
            SynthConfig {
                denominal_noise: 0.0,
                ..Default::default()
            },
            SynthConfig {
                region_radius: 1.6,
                denominal_noise: 0.1,
                ..Default::default()
            },
            SynthConfig {
                k_verbs: 0,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn deterministic_and_unit() {
        let c = SynthConfig {
            n_roots: 6,
            dim: 8,
            seed: 42,
            ..Default::default()
        };
        let (p1, s1) = generate(&c).unwrap();
        let (p2, s2) = generate(&c).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 6 * (2 + 4));
        for t in s1.tokens() {
            assert!((norm(s1.lookup(t).unwrap()) - 1.0).abs() < 1e-9);
        }
        assert_eq!(p1[3].root_verbs[0], "r3_v1");
    }

    #[test]
    fn slerp_endpoints() {
        let a = [1.0, 0.0, 0.0];
        let b = [0.0, 1.0, 0.0];
        assert!(angle_between(&slerp(&a, &b, 0.0), &a) < 1e-12);
        assert!(angle_between(&slerp(&a, &b, 1.0), &b) < 1e-12);
        assert!((angle_between(&slerp(&a, &b, 0.25), &a) - FRAC_PI_2 / 4.0).abs() < 1e-12);
    }
}
