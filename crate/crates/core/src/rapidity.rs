//! The isomorphisms between relativistic composition on `(-c, c)` and
//! ordinary addition on the reals.
//!
//! For every scale `k > 0`,
//!
//! ```text
//! alpha_k(u) = k ln((c + u) / (c - u))
//! beta_k(x)  = c (e^{x/k} - 1) / (e^{x/k} + 1)
//! ```
//!
//! are mutually inverse and turn `u * v` into `alpha_k(u) + alpha_k(v)`.
//! Both are evaluated through hyperbolic identities,
//! `alpha_k(u) = 2k atanh(u/c)` and `beta_k(x) = c tanh(x / 2k)`, using the
//! velocity's stored gap so that nothing is lost near `|u| = c`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{self, DEFAULT_EVAL_BUDGET};
use crate::velocity::{IsoParams, Velocity};

/// A point of the additive group, the image of a velocity under `alpha_k`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rapidity(f64);

impl Rapidity {
    pub const ZERO: Rapidity = Rapidity(0.0);

    pub fn new(value: f64) -> Result<Self> {
        ensure_finite("rapidity", value)?;
        Ok(Rapidity(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl std::ops::Add for Rapidity {
    type Output = Rapidity;

    fn add(self, rhs: Rapidity) -> Rapidity {
        Rapidity(self.0 + rhs.0)
    }
}

impl std::ops::Neg for Rapidity {
    type Output = Rapidity;

    fn neg(self) -> Rapidity {
        Rapidity(-self.0)
    }
}

// ln((1 + b) / (1 - b)) for b = |beta|, from the gap once b is large
// enough that 1 - b is exact.
fn log_ratio_magnitude(u: &Velocity) -> f64 {
    let b = u.beta().abs();
    if b < 0.5 {
        b.ln_1p() - (-b).ln_1p()
    } else {
        b.ln_1p() - u.gap().ln()
    }
}

/// `alpha_k(u) = k ln((1 + beta) / (1 - beta))`. Odd in `beta` bit for bit.
pub fn alpha(u: Velocity, p: IsoParams) -> Rapidity {
    let magnitude = p.k() * log_ratio_magnitude(&u);
    Rapidity(if u.beta() < 0.0 { -magnitude } else { magnitude })
}

/// `beta_k(x)`, the inverse of [`alpha`].
///
/// The result never reaches `|beta| = 1`: once `tanh` is within half an
/// ulp of one the stored gap `2 e^{-x/k} / (1 + e^{-x/k})` still carries
/// the distance, and it is only clamped (and flagged) when it underflows.
pub fn beta_inv(x: Rapidity, p: IsoParams) -> Velocity {
    let half = x.0 / (2.0 * p.k());
    let t = half.abs();
    let negative = half < 0.0;
    let th = t.tanh();
    if th < 0.5 {
        let beta = if negative { -th } else { th };
        return Velocity::from_rounded_beta(beta);
    }
    let e = (-2.0 * t).exp();
    Velocity::from_gap_unchecked(negative, 2.0 * e / (1.0 + e))
}

/// The scale `k` that gives `alpha` the slope `alpha'(0)` at rest,
/// with the slope taken against physical velocity.
///
/// Since `alpha_k'(0) = 2k / c`, this is `k = c alpha'(0) / 2`.
pub fn k_from_slope(alpha_prime_at_zero: f64, c: f64) -> Result<f64> {
    ensure_finite("alpha'(0)", alpha_prime_at_zero)?;
    ensure_finite("c", c)?;
    if alpha_prime_at_zero <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "alpha'(0) must be positive, got {alpha_prime_at_zero}"
        )));
    }
    if c <= 0.0 {
        return Err(Error::InvalidInput(format!("c must be positive, got {c}")));
    }
    Ok(0.5 * c * alpha_prime_at_zero)
}

/// `d alpha / d beta = 2k / (1 - beta^2)`.
pub fn dalpha_dbeta(v: Velocity, p: IsoParams) -> f64 {
    2.0 * p.k() / v.one_minus_beta_squared()
}

/// Derivative of `alpha` with respect to physical velocity,
/// `2kc / (c^2 - u^2) = alpha'(0) c^2 / (c^2 - u^2)`.
pub fn alpha_prime(v: Velocity, p: IsoParams) -> f64 {
    dalpha_dbeta(v, p) / p.c()
}

// Past this |beta| the integrand 1/(1 - s^2) is integrated in the variable
// t = -ln(1 - s), where it becomes the bounded 1/(2 - e^{-t}).
const SUBSTITUTION_START: f64 = 1.0 - 1e-6;

/// Recomputes `alpha` by integrating `alpha'(v) = alpha'(0) c^2 / (c^2 - v^2)`
/// from rest to `u` with adaptive quadrature, to absolute accuracy `tol`.
///
/// Independent of the closed form; used to cross-check it.
pub fn alpha_via_quadrature(u: Velocity, p: IsoParams, tol: f64) -> Result<Rapidity> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    // alpha'(0) c^2 / (c^2 - v^2) with v = c s becomes c alpha'(0) / (1 - s^2)
    let scale = p.c() * (2.0 * p.k() / p.c());
    let b = u.beta().abs();
    let integrand = |s: f64| scale / ((1.0 - s) * (1.0 + s));
    let magnitude = if b <= SUBSTITUTION_START {
        quadrature::integrate(integrand, 0.0, b, tol, DEFAULT_EVAL_BUDGET)?.value
    } else {
        let body = quadrature::integrate(
            integrand,
            0.0,
            SUBSTITUTION_START,
            0.5 * tol,
            DEFAULT_EVAL_BUDGET,
        )?;
        let t_lo = -(1.0 - SUBSTITUTION_START).ln();
        let t_hi = -u.gap().ln();
        let tail = quadrature::integrate(
            |t: f64| scale / (2.0 - (-t).exp()),
            t_lo,
            t_hi,
            0.5 * tol,
            DEFAULT_EVAL_BUDGET,
        )?;
        body.value + tail.value
    };
    Ok(Rapidity(if u.beta() < 0.0 { -magnitude } else { magnitude }))
}

/// Composition carried out in the additive group:
/// `beta_k(alpha_k(u) + alpha_k(v))`. Independent of `k` up to rounding.
pub fn compose_via_rapidity(u: Velocity, v: Velocity, p: IsoParams) -> Velocity {
    beta_inv(alpha(u, p) + alpha(v, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::velocity::{compose_sr, BELOW_ONE};

    fn vel(beta: f64) -> Velocity {
        Velocity::from_beta(beta).unwrap()
    }

    fn k(k: f64) -> IsoParams {
        IsoParams::with_k(k).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(vel(0.0), k(3.0)).value(), 0.0);
        let a = alpha(vel(0.5), k(0.5)).value();
        assert!((a - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert!((a - 0.549_306_144_334_054_8).abs() < 1e-15);
        for b in [0.1, 0.5, 0.9, 0.999_999] {
            assert_eq!(alpha(vel(-b), k(2.0)).value(), -alpha(vel(b), k(2.0)).value());
        }
    }

    #[test]
    fn beta_inv_examples() {
        assert_eq!(beta_inv(Rapidity::ZERO, k(7.0)).beta(), 0.0);
        let v = beta_inv(Rapidity::new(0.5 * 3f64.ln()).unwrap(), k(0.5));
        assert!((v.beta() - 0.5).abs() < 1e-15);
        let far = beta_inv(Rapidity::new(1000.0).unwrap(), k(1.0));
        assert_eq!(far.beta(), BELOW_ONE);
        assert!(far.gap() > 0.0 && far.gap() < 1e-300);
        let far_neg = beta_inv(Rapidity::new(-1000.0).unwrap(), k(1.0));
        assert_eq!(far_neg.beta(), -BELOW_ONE);
    }

    #[test]
    fn beta_inv_is_odd() {
        for x in [1e-300, 0.3, 1.0986, 5.0, 40.0, 700.0] {
            let p = beta_inv(Rapidity(x), k(1.0));
            let n = beta_inv(Rapidity(-x), k(1.0));
            assert_eq!(p.beta(), -n.beta());
            assert_eq!(p.gap(), n.gap());
        }
    }

    #[test]
    fn k_from_slope_inverts_alpha_prime() {
        assert_eq!(k_from_slope(2.0, 1.0).unwrap(), 1.0);
        assert_eq!(k_from_slope(2.0, 3.0).unwrap(), 3.0);
        assert!(matches!(k_from_slope(-1.0, 1.0), Err(Error::InvalidInput(_))));
        assert!(matches!(k_from_slope(1.0, 0.0), Err(Error::InvalidInput(_))));
        for (kk, c) in [(1.0, 1.0), (0.25, 3.0), (5.0, 299_792_458.0)] {
            let p = IsoParams::new(c, kk).unwrap();
            let slope = alpha_prime(Velocity::REST, p);
            assert!((k_from_slope(slope, c).unwrap() - kk).abs() <= 1e-15 * kk);
        }
    }

    #[test]
    fn alpha_prime_examples() {
        assert_eq!(alpha_prime(vel(0.0), k(1.0)), 2.0);
        assert!((alpha_prime(vel(0.5), k(1.0)) - 8.0 / 3.0).abs() < 1e-15);
        let p = IsoParams::new(2.0, 1.0).unwrap();
        assert_eq!(alpha_prime(vel(0.0), p), 1.0);
        assert_eq!(dalpha_dbeta(vel(0.0), p), 2.0);
    }

    #[test]
    fn alpha_prime_matches_central_difference() {
        let p = k(1.0);
        let h = 1e-6;
        for b in [-0.9, -0.3, 0.0, 0.3, 0.7, 0.95] {
            let fd = (alpha(vel(b + h), p).value() - alpha(vel(b - h), p).value()) / (2.0 * h);
            let exact = alpha_prime(vel(b), p);
            assert!(((fd - exact) / exact).abs() < 1e-6, "beta {b}: {fd} vs {exact}");
        }
    }

    #[test]
    fn quadrature_examples() {
        assert_eq!(alpha_via_quadrature(vel(0.0), k(1.0), 1e-10).unwrap().value(), 0.0);
        let q = alpha_via_quadrature(vel(0.5), k(0.5), 1e-10).unwrap().value();
        assert!((q - alpha(vel(0.5), k(0.5)).value()).abs() <= 1e-10);
        let q = alpha_via_quadrature(vel(0.999), k(1.0), 1e-8).unwrap().value();
        assert!((q - alpha(vel(0.999), k(1.0)).value()).abs() <= 1e-8);
    }

    #[test]
    fn quadrature_tail_substitution() {
        for b in [1.0 - 1e-7, 1.0 - 1e-12, -(1.0 - 1e-15)] {
            let q = alpha_via_quadrature(vel(b), k(1.0), 1e-9).unwrap().value();
            let a = alpha(vel(b), k(1.0)).value();
            assert!((q - a).abs() <= 1e-9, "beta {b}: {q} vs {a}");
        }
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        assert!(matches!(alpha_via_quadrature(vel(0.5), k(1.0), 0.0), Err(Error::InvalidInput(_))));
        assert!(matches!(
            alpha_via_quadrature(vel(0.5), k(1.0), 1e-300),
            Err(Error::Convergence(_))
        ));
    }

    #[test]
    fn rapidity_composition_examples() {
        let w = compose_via_rapidity(vel(0.5), vel(0.5), k(1.0));
        assert!((w.beta() - 0.8).abs() < 1e-15);
        for b in [0.1, -0.4, 0.97] {
            let w = compose_via_rapidity(vel(b), Velocity::REST, k(1.0));
            assert!((w.beta() - b).abs() <= 1e-15);
        }
        let edge = vel(1.0 - 1e-12);
        let w = compose_via_rapidity(edge, edge, k(1.0));
        assert!(w.beta() < 1.0);
        assert!(w >= compose_sr(edge, Velocity::REST));
        assert!(w.gap() < edge.gap());
    }
}
