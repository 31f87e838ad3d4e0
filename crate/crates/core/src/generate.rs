//! Seeded point-set generators.
//!
//! Uniform and clustered sets live in the square `[0, sqrt(n))^2` so that
//! point density does not depend on `n`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// i.i.d. uniform in `[0, sqrt(n))^2`.
    Uniform,
    /// `ceil(sqrt(n))` unit squares placed uniformly in `[0, sqrt(n))^2`,
    /// each filled with up to `ceil(sqrt(n))` uniform points.
    Clustered,
    /// i.i.d. gamma-distributed coordinates with scale 1.
    Gamma,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Uniform => "uniform",
            PointKind::Clustered => "clustered",
            PointKind::Gamma => "gamma",
        })
    }
}

impl FromStr for PointKind {
    type Err = SpannerError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(PointKind::Uniform),
            "clustered" => Ok(PointKind::Clustered),
            "gamma" => Ok(PointKind::Gamma),
            other => Err(SpannerError::InvalidArgument(format!("unknown point kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: PointKind,
    pub n: usize,
    pub seed: u64,
    pub gamma_shape: f64,
}

impl GeneratorSpec {
    pub fn new(kind: PointKind, n: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, seed, gamma_shape: 0.75 }
    }
}

/// Generates a duplicate-free planar point set; fully determined by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    if spec.n == 0 {
        return Err(SpannerError::EmptyPointSet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let side = (n as f64).sqrt();
    let mut seen: HashSet<[u64; 2]> = HashSet::with_capacity(n);
    let mut coords = Vec::with_capacity(2 * n);
    let mut accept = |p: [f64; 2], coords: &mut Vec<f64>| {
        let p = [p[0] + 0.0, p[1] + 0.0];
        if seen.insert([p[0].to_bits(), p[1].to_bits()]) {
            coords.extend_from_slice(&p);
            true
        } else {
            false
        }
    };
    match spec.kind {
        PointKind::Uniform => {
            while coords.len() < 2 * n {
                let p = [rng.random::<f64>() * side, rng.random::<f64>() * side];
                accept(p, &mut coords);
            }
        }
        PointKind::Clustered => {
            let per = (n as f64).sqrt().ceil() as usize;
            let clusters = n.div_ceil(per);
            for c in 0..clusters {
                let corner = [rng.random::<f64>() * side, rng.random::<f64>() * side];
                let want = per.min(n - c * per);
                let mut got = 0;
                while got < want {
                    let p = [corner[0] + rng.random::<f64>(), corner[1] + rng.random::<f64>()];
                    if accept(p, &mut coords) {
                        got += 1;
                    }
                }
            }
        }
        PointKind::Gamma => {
            if !(spec.gamma_shape > 0.0 && spec.gamma_shape.is_finite()) {
                return Err(SpannerError::InvalidArgument(format!(
                    "gamma shape must be positive, got {}",
                    spec.gamma_shape
                )));
            }
            let gamma = Gamma::new(spec.gamma_shape, 1.0).map_err(|e| SpannerError::InvalidArgument(e.to_string()))?;
            while coords.len() < 2 * n {
                let p = [gamma.sample(&mut rng), gamma.sample(&mut rng)];
                accept(p, &mut coords);
            }
        }
    }
    PointSet::from_flat(2, coords)
}
