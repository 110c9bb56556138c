//! Seeded velocity samples for the law checks.
//!
//! Random samples are uniform in rapidity rather than in `beta`, so the
//! region near the boundary gets its share of points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rapidity::{alpha, beta_inv, Rapidity};
use crate::velocity::{IsoParams, Velocity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    /// Samples satisfy `|beta| <= 1 - boundary_margin`.
    pub boundary_margin: f64,
    pub include_edge_grid: bool,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { count: 10_000, seed: 0, boundary_margin: 1e-6, include_edge_grid: true }
    }
}

impl SampleSpec {
    pub fn new(count: usize, seed: u64, boundary_margin: f64, include_edge_grid: bool) -> Result<Self> {
        let spec = SampleSpec { count, seed, boundary_margin, include_edge_grid };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidInput("sample count must be at least 1".into()));
        }
        if !(self.boundary_margin > 0.0 && self.boundary_margin < 1.0) {
            return Err(Error::InvalidInput(format!(
                "boundary margin must lie in (0, 1), got {}",
                self.boundary_margin
            )));
        }
        Ok(())
    }

    fn extreme(&self) -> Velocity {
        Velocity::from_gap_unchecked(false, self.boundary_margin)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// `n` velocities uniform in rapidity on `[-alpha(1 - margin), alpha(1 - margin)]`.
    /// Different `stream`s give independent sequences for the same seed.
    pub fn velocities(&self, n: usize, stream: u64) -> Vec<Velocity> {
        let unit = IsoParams::default();
        let extreme = self.extreme();
        let bound = alpha(extreme, unit).value();
        let mut rng = self.rng(stream);
        (0..n)
            .map(|_| {
                let x = rng.gen_range(-bound..=bound);
                let v = beta_inv(Rapidity::new(x).unwrap_or(Rapidity::ZERO), unit);
                if v.gap() < extreme.gap() {
                    if v.beta() < 0.0 {
                        crate::velocity::inverse(extreme)
                    } else {
                        extreme
                    }
                } else {
                    v
                }
            })
            .collect()
    }

    /// The deterministic grid, or nothing when it is switched off.
    pub fn grid(&self) -> Vec<Velocity> {
        if self.include_edge_grid {
            edge_grid(self.boundary_margin)
        } else {
            Vec::new()
        }
    }

    pub fn singles(&self) -> Vec<Velocity> {
        let mut out = self.velocities(self.count, 0);
        out.extend(self.grid());
        out
    }

    /// `count` random pairs followed by every ordered pair of grid points.
    pub fn pairs(&self) -> Vec<(Velocity, Velocity)> {
        let us = self.velocities(self.count, 0);
        let vs = self.velocities(self.count, 1);
        let mut out: Vec<_> = us.into_iter().zip(vs).collect();
        let grid = self.grid();
        for &u in &grid {
            for &v in &grid {
                out.push((u, v));
            }
        }
        out
    }

    /// `count` random triples followed by every ordered triple of grid points.
    pub fn triples(&self) -> Vec<(Velocity, Velocity, Velocity)> {
        let us = self.velocities(self.count, 0);
        let vs = self.velocities(self.count, 1);
        let ws = self.velocities(self.count, 2);
        let mut out: Vec<_> = us.into_iter().zip(vs).zip(ws).map(|((u, v), w)| (u, v, w)).collect();
        let grid = self.grid();
        for &u in &grid {
            for &v in &grid {
                for &w in &grid {
                    out.push((u, v, w));
                }
            }
        }
        out
    }
}

/// `0`, `±0.5` and `±(1 - 10^-k)` for every `k >= 1` with `10^-k >= margin`
/// (at most `k = 15`), in increasing order. Points are the doubles nearest
/// to those values, so the outermost may sit within rounding of the margin.
pub fn edge_grid(margin: f64) -> Vec<Velocity> {
    let mut grid = vec![Velocity::REST, Velocity::from_rounded_beta(0.5)];
    for k in 1..=15 {
        let gap = 10f64.powi(-k);
        if gap < margin {
            break;
        }
        grid.push(Velocity::from_rounded_beta(1.0 - gap));
    }
    let negatives: Vec<_> = grid[1..].iter().map(|v| crate::velocity::inverse(*v)).collect();
    grid.extend(negatives);
    grid.sort();
    grid
}

/// `±(1 - 10^-k)` for `k` in `ks`, each rounded to the nearest double.
pub fn boundary_grid(ks: std::ops::RangeInclusive<i32>) -> Vec<Velocity> {
    let mut grid = Vec::new();
    for k in ks.filter(|k| (1..=15).contains(k)) {
        let v = Velocity::from_rounded_beta(1.0 - 10f64.powi(-k));
        grid.push(v);
        grid.push(crate::velocity::inverse(v));
    }
    grid.sort();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SampleSpec::new(0, 1, 1e-6, true).is_err());
        assert!(SampleSpec::new(1, 1, 0.0, true).is_err());
        assert!(SampleSpec::new(1, 1, 1.0, true).is_err());
        assert!(SampleSpec::new(1, 1, 0.5, false).is_ok());
    }

    #[test]
    fn samples_respect_margin_and_seed() {
        let spec = SampleSpec::new(5000, 42, 1e-6, false).unwrap();
        let a = spec.velocities(5000, 0);
        assert_eq!(a, spec.velocities(5000, 0));
        assert_ne!(a, spec.velocities(5000, 1));
        assert!(a.iter().all(|v| v.gap() >= 1e-6));
        // rapidity-uniform: a sizeable share lands within 1e-3 of the boundary
        let near = a.iter().filter(|v| v.gap() < 1e-3).count();
        assert!(near > 1000, "{near}");
    }

    #[test]
    fn edge_grid_contents() {
        let grid = edge_grid(1e-6);
        assert_eq!(grid.len(), 15);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!((grid[0].gap() - 1e-6).abs() < 1e-16);
        assert!(grid[0].beta() < 0.0);
        assert_eq!(edge_grid(1e-9).len(), 21);
        assert_eq!(edge_grid(1e-30).len(), 33);
    }

    #[test]
    fn tuples_include_grid() {
        let spec = SampleSpec::new(10, 3, 1e-2, true).unwrap();
        let g = spec.grid().len();
        assert_eq!(spec.pairs().len(), 10 + g * g);
        assert_eq!(spec.triples().len(), 10 + g * g * g);
        assert_eq!(spec.singles().len(), 10 + g);
    }
}
