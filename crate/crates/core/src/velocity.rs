//! Velocity carriers and the exact composition laws.
//!
//! Velocities are stored in natural units (`beta = u / c`). A subluminal
//! [`Velocity`] also stores its distance to the nearer light-speed boundary,
//! `gap = 1 - |beta|`. Near `|beta| = 1` the gap keeps full relative
//! precision even when `beta` itself has rounded to the last double below
//! one, which is what lets the rapidity maps stay accurate out there.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Largest double strictly below one.
pub const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Smallest positive gap the representation can hold.
const MIN_GAP: f64 = f64::from_bits(1);

/// A collinear velocity strictly inside the light cone, `-1 < beta < 1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "BetaRepr", into = "BetaRepr")]
pub struct Velocity {
    beta: f64,
    gap: f64,
    saturated: bool,
}

#[derive(Serialize, Deserialize)]
struct BetaRepr {
    beta: f64,
}

impl TryFrom<BetaRepr> for Velocity {
    type Error = Error;

    fn try_from(repr: BetaRepr) -> Result<Self> {
        Velocity::from_beta(repr.beta)
    }
}

impl From<Velocity> for BetaRepr {
    fn from(v: Velocity) -> Self {
        BetaRepr { beta: v.beta }
    }
}

impl Velocity {
    /// Zero velocity, the neutral element of composition.
    pub const REST: Velocity = Velocity { beta: 0.0, gap: 1.0, saturated: false };

    /// Builds a velocity from a normalized speed.
    pub fn from_beta(beta: f64) -> Result<Self> {
        ensure_finite("beta", beta)?;
        if beta.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "|beta| = {} is not inside the open interval (-1, 1)",
                beta.abs()
            )));
        }
        Ok(Velocity { beta: beta + 0.0, gap: 1.0 - beta.abs(), saturated: false })
    }

    /// Builds a velocity from the side of the boundary it approaches and its
    /// distance to it. The gap is authoritative; `beta` is its rounding.
    ///
    /// A gap that has underflowed to zero is replaced by the smallest
    /// positive double and the result is marked saturated.
    pub fn from_gap(negative: bool, gap: f64) -> Result<Self> {
        ensure_finite("gap", gap)?;
        if !(0.0..=1.0).contains(&gap) {
            return Err(Error::Domain(format!("gap {gap} is outside [0, 1]")));
        }
        Ok(Self::from_gap_unchecked(negative, gap))
    }

    /// Wraps an already rounded `beta`, clamping `|beta| >= 1` to the last
    /// double below one and flagging the clamp.
    pub(crate) fn from_rounded_beta(beta: f64) -> Self {
        if beta.abs() < 1.0 {
            return Velocity { beta: beta + 0.0, gap: 1.0 - beta.abs(), saturated: false };
        }
        Velocity { beta: BELOW_ONE.copysign(beta), gap: 1.0 - BELOW_ONE, saturated: true }
    }

    pub(crate) fn from_gap_unchecked(negative: bool, gap: f64) -> Self {
        let (gap, saturated) = if gap > 0.0 { (gap, false) } else { (MIN_GAP, true) };
        let magnitude = (1.0 - gap).min(BELOW_ONE);
        let beta = if negative { -magnitude } else { magnitude };
        Velocity { beta: beta + 0.0, gap, saturated }
    }

    /// Normalized speed `u / c`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `1 - |beta|`, carried at full relative precision.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Set when the true distance to the boundary was below the smallest
    /// representable gap and had to be clamped.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// `1 + beta`, accurate on both sides.
    pub fn one_plus(&self) -> f64 {
        if self.beta <= 0.0 {
            self.gap
        } else {
            1.0 + self.beta
        }
    }

    /// `1 - beta`, accurate on both sides.
    pub fn one_minus(&self) -> f64 {
        if self.beta >= 0.0 {
            self.gap
        } else {
            1.0 - self.beta
        }
    }

    /// `1 - beta^2`.
    pub fn one_minus_beta_squared(&self) -> f64 {
        self.one_plus() * self.one_minus()
    }

    /// Velocity in the same unit as `c`.
    pub fn to_physical(&self, c: f64) -> f64 {
        self.beta * c
    }
}

impl PartialEq for Velocity {
    fn eq(&self, other: &Self) -> bool {
        self.beta == other.beta && self.gap == other.gap
    }
}

impl Eq for Velocity {}

impl PartialOrd for Velocity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by position on the line. When two velocities share the same
/// rounded `beta` the gap breaks the tie.
impl Ord for Velocity {
    fn cmp(&self, other: &Self) -> Ordering {
        // both fields are finite by construction
        let by_beta = self.beta.partial_cmp(&other.beta).unwrap_or(Ordering::Equal);
        by_beta.then_with(|| {
            let by_gap = self.gap.partial_cmp(&other.gap).unwrap_or(Ordering::Equal);
            if self.beta >= 0.0 {
                by_gap.reverse()
            } else {
                by_gap
            }
        })
    }
}

/// A collinear velocity on the closed interval `-1 <= beta <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BetaRepr", into = "BetaRepr")]
pub struct ExtendedVelocity {
    beta: f64,
}

impl TryFrom<BetaRepr> for ExtendedVelocity {
    type Error = Error;

    fn try_from(repr: BetaRepr) -> Result<Self> {
        ExtendedVelocity::from_beta(repr.beta)
    }
}

impl From<ExtendedVelocity> for BetaRepr {
    fn from(v: ExtendedVelocity) -> Self {
        BetaRepr { beta: v.beta }
    }
}

impl ExtendedVelocity {
    pub const LIGHT: ExtendedVelocity = ExtendedVelocity { beta: 1.0 };
    pub const NEG_LIGHT: ExtendedVelocity = ExtendedVelocity { beta: -1.0 };

    pub fn from_beta(beta: f64) -> Result<Self> {
        ensure_finite("beta", beta)?;
        if beta.abs() > 1.0 {
            return Err(Error::Domain(format!(
                "|beta| = {} is not inside the closed interval [-1, 1]",
                beta.abs()
            )));
        }
        Ok(ExtendedVelocity { beta: beta + 0.0 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_light_speed(&self) -> bool {
        self.beta.abs() == 1.0
    }
}

impl From<Velocity> for ExtendedVelocity {
    fn from(v: Velocity) -> Self {
        ExtendedVelocity { beta: v.beta }
    }
}

impl TryFrom<ExtendedVelocity> for Velocity {
    type Error = Error;

    fn try_from(v: ExtendedVelocity) -> Result<Self> {
        Velocity::from_beta(v.beta)
    }
}

/// A Newtonian velocity in physical units; any finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "ValueRepr", into = "ValueRepr")]
pub struct NewtonVelocity {
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct ValueRepr {
    value: f64,
}

impl TryFrom<ValueRepr> for NewtonVelocity {
    type Error = Error;

    fn try_from(repr: ValueRepr) -> Result<Self> {
        NewtonVelocity::new(repr.value)
    }
}

impl From<NewtonVelocity> for ValueRepr {
    fn from(v: NewtonVelocity) -> Self {
        ValueRepr { value: v.value }
    }
}

impl NewtonVelocity {
    pub const ZERO: NewtonVelocity = NewtonVelocity { value: 0.0 };

    pub fn new(value: f64) -> Result<Self> {
        ensure_finite("velocity", value)?;
        Ok(NewtonVelocity { value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Light speed `c` and the scale `k` selecting one member of the
/// isomorphism family. Both strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoParams {
    c: f64,
    k: f64,
}

impl Default for IsoParams {
    fn default() -> Self {
        IsoParams { c: 1.0, k: 1.0 }
    }
}

impl IsoParams {
    pub fn new(c: f64, k: f64) -> Result<Self> {
        ensure_finite("c", c)?;
        ensure_finite("k", k)?;
        if c <= 0.0 {
            return Err(Error::InvalidInput(format!("c must be positive, got {c}")));
        }
        if k <= 0.0 {
            return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
        }
        Ok(IsoParams { c, k })
    }

    /// Natural units with the given scale.
    pub fn with_k(k: f64) -> Result<Self> {
        Self::new(1.0, k)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Normalizes a physical velocity against `c`.
pub fn make_velocity(value: f64, c: f64) -> Result<Velocity> {
    ensure_finite("velocity", value)?;
    ensure_finite("c", c)?;
    if c <= 0.0 {
        return Err(Error::InvalidInput(format!("c must be positive, got {c}")));
    }
    if value.abs() >= c {
        return Err(Error::Domain(format!(
            "|{value}| is not below the light speed {c}"
        )));
    }
    let beta = value / c;
    if beta.abs() < 0.5 {
        return Velocity::from_beta(beta);
    }
    // c - |value| is exact here, so the gap keeps every bit
    let gap = (c - value.abs()) / c;
    let v = Velocity::from_gap_unchecked(value < 0.0, gap);
    Ok(Velocity { beta: beta.clamp(-BELOW_ONE, BELOW_ONE), ..v })
}

/// The neutral element of relativistic composition.
pub fn identity_sr() -> Velocity {
    Velocity::REST
}

/// The composition inverse, `-u`.
pub fn inverse(u: Velocity) -> Velocity {
    Velocity { beta: -u.beta + 0.0, gap: u.gap, saturated: u.saturated }
}

fn ordered(u: Velocity, v: Velocity) -> (Velocity, Velocity) {
    if v < u {
        (v, u)
    } else {
        (u, v)
    }
}

// Denominators below switch to the all-positive form
// (prod(1 + u_i) + prod(1 - u_i)) / 2 whenever 1 + (pairwise products)
// would cancel. `plus` and `minus` are those two products.
fn finish(numerator: f64, denominator: f64, plus: f64, minus: f64) -> Velocity {
    let beta = numerator / denominator;
    if beta.abs() < 0.5 {
        return Velocity { beta: beta + 0.0, gap: 1.0 - beta.abs(), saturated: false };
    }
    if beta > 0.0 {
        Velocity::from_gap_unchecked(false, minus / denominator)
    } else {
        Velocity::from_gap_unchecked(true, plus / denominator)
    }
}

/// Relativistic velocity addition `(u + v) / (1 + u v)` in natural units.
///
/// Evaluated so that the result is accurate all the way to the boundary:
/// numerator and denominator are rebuilt from the operands' gaps whenever
/// `1 + uv` would cancel, and the result's gap comes from
/// `1 - w = (1 - u)(1 - v) / (1 + uv)`.
pub fn compose_sr(u: Velocity, v: Velocity) -> Velocity {
    let (a, b) = ordered(u, v);
    let plus = a.one_plus() * b.one_plus();
    let minus = a.one_minus() * b.one_minus();
    let product = a.beta * b.beta;
    let (numerator, denominator) = if product >= -0.5 {
        (a.beta + b.beta, 1.0 + product)
    } else {
        (0.5 * (plus - minus), 0.5 * (plus + minus))
    };
    finish(numerator, denominator, plus, minus)
}

/// Three-velocity form `(u + v + w + uvw) / (1 + uv + uw + vw)`.
pub fn compose_sr3(u: Velocity, v: Velocity, w: Velocity) -> Velocity {
    let mut ops = [u, v, w];
    ops.sort();
    let [a, b, c] = ops;
    let plus = a.one_plus() * b.one_plus() * c.one_plus();
    let minus = a.one_minus() * b.one_minus() * c.one_minus();
    let pairs = a.beta * b.beta + a.beta * c.beta + b.beta * c.beta;
    let (numerator, denominator) = if pairs >= -0.5 {
        (a.beta + b.beta + c.beta + a.beta * b.beta * c.beta, 1.0 + pairs)
    } else {
        (0.5 * (plus - minus), 0.5 * (plus + minus))
    };
    finish(numerator, denominator, plus, minus)
}

/// `d(u * v) / du = (1 - v^2) / (1 + uv)^2`, always positive.
pub fn partial_derivative_sr(u: Velocity, v: Velocity) -> f64 {
    let product = u.beta * v.beta;
    let denominator = if product >= -0.5 {
        1.0 + product
    } else {
        0.5 * (u.one_plus() * v.one_plus() + u.one_minus() * v.one_minus())
    };
    v.one_minus_beta_squared() / (denominator * denominator)
}

/// Newtonian velocity addition.
pub fn compose_newton(x: NewtonVelocity, y: NewtonVelocity) -> Result<NewtonVelocity> {
    let sum = x.value + y.value;
    if !sum.is_finite() {
        return Err(Error::Overflow(format!("{} + {} is not finite", x.value, y.value)));
    }
    Ok(NewtonVelocity { value: sum })
}

/// Composition on the closed interval, defined whenever `uv != -1`.
///
/// Light speed absorbs: composing `±1` with any admissible partner gives
/// `±1` exactly.
pub fn compose_extended(u: ExtendedVelocity, v: ExtendedVelocity) -> Result<ExtendedVelocity> {
    if u.beta * v.beta == -1.0 {
        return Err(Error::Domain(format!(
            "the pair ({}, {}) has uv = -c^2; composition is undefined",
            u.beta, v.beta
        )));
    }
    if u.is_light_speed() {
        return Ok(u);
    }
    if v.is_light_speed() {
        return Ok(v);
    }
    let w = compose_sr(Velocity::try_from(u)?, Velocity::try_from(v)?);
    Ok(w.into())
}
