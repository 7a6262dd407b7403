//! Tri-state zero testing: exact when the canonical form settles it,
//! sampled otherwise.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::Canon;
use crate::{Chart, Expr};

/// Sampling parameters shared by every numeric check.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub samples: usize,
    /// Points are drawn uniformly from `[-half_width, half_width]^dim`.
    pub half_width: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 64, half_width: 2.0, tol: 1e-9, seed: 0 }
    }
}

/// Denominators smaller than this at a sample point cause a redraw.
pub const REDRAW_DENOMINATOR: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroVerdict {
    ProvedZero,
    NumericallyZero { samples: usize, max_residual: f64 },
    NonZero { witness: Vec<f64>, residual: f64 },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroVerdict::NonZero { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            ZeroVerdict::ProvedZero => 0.0,
            ZeroVerdict::NumericallyZero { max_residual, .. } => *max_residual,
            ZeroVerdict::NonZero { residual, .. } => *residual,
        }
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            ZeroVerdict::NonZero { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Combines verdicts of several components into one.
    pub fn join(self, other: ZeroVerdict) -> ZeroVerdict {
        use ZeroVerdict::*;
        match (self, other) {
            (a @ NonZero { .. }, _) => a,
            (_, b @ NonZero { .. }) => b,
            (ProvedZero, b) => b,
            (a, ProvedZero) => a,
            (
                NumericallyZero { samples: s1, max_residual: r1 },
                NumericallyZero { samples: s2, max_residual: r2 },
            ) => NumericallyZero { samples: s1.max(s2), max_residual: r1.max(r2) },
        }
    }
}

/// Seeded uniform sampler over the configured box.
pub struct Sampler {
    rng: ChaCha8Rng,
    dim: usize,
    half_width: f64,
}

impl Sampler {
    pub fn new(dim: usize, cfg: &SampleConfig) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(cfg.seed), dim, half_width: cfg.half_width }
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let h = self.half_width;
        (0..self.dim).map(|_| self.rng.gen_range(-h..=h)).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Up to `cfg.samples` points at which `c` evaluates with every denominator
/// at least [`REDRAW_DENOMINATOR`] in size.
pub(crate) fn admissible_points(c: &Canon, dim: usize, cfg: &SampleConfig) -> Vec<Vec<f64>> {
    let mut sampler = Sampler::new(dim, cfg);
    let mut out = Vec::with_capacity(cfg.samples);
    let budget = cfg.samples.saturating_mul(50).max(1);
    for _ in 0..budget {
        if out.len() == cfg.samples {
            break;
        }
        let pt = sampler.next_point();
        match c.evaluate(&pt) {
            Ok(ev) if ev.min_denominator >= REDRAW_DENOMINATOR => out.push(pt),
            _ => {}
        }
    }
    out
}

pub fn is_zero(e: &Expr, chart: &Chart, cfg: &SampleConfig) -> ZeroVerdict {
    let c = Canon::from_expr(e);
    canon_is_zero(&c, chart.dim(), cfg)
}

pub(crate) fn canon_is_zero(c: &Canon, dim: usize, cfg: &SampleConfig) -> ZeroVerdict {
    if c.is_zero() {
        return ZeroVerdict::ProvedZero;
    }
    debug_assert!(c.max_var().is_none_or(|v| v < dim), "expression leaves its chart");
    if c.is_polynomial() {
        // Exactly nonzero; sampling only supplies a witness.
        let mut sampler = Sampler::new(dim, cfg);
        let mut best = (Vec::new(), -1.0);
        for _ in 0..cfg.samples.max(1) {
            let pt = sampler.next_point();
            let v = c.evaluate(&pt).map(|ev| ev.value.abs()).unwrap_or(0.0);
            if v > cfg.tol {
                return ZeroVerdict::NonZero { witness: pt, residual: v };
            }
            if v > best.1 {
                best = (pt, v);
            }
        }
        return ZeroVerdict::NonZero { witness: best.0, residual: best.1.max(0.0) };
    }
    let points = admissible_points(c, dim, cfg);
    let mut max_residual: f64 = 0.0;
    for pt in &points {
        let ev = c.evaluate(pt).expect("admissible point");
        let r = ev.value.abs();
        if r.partial_cmp(&(cfg.tol * (1.0 + ev.magnitude))).is_none_or(|o| o.is_gt()) {
            return ZeroVerdict::NonZero { witness: pt.clone(), residual: r };
        }
        max_residual = max_residual.max(r);
    }
    ZeroVerdict::NumericallyZero { samples: points.len(), max_residual }
}
