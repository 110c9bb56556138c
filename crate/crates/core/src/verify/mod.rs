//! Sampled verification of the group laws and of the isomorphism.
//!
//! Each check returns a [`CheckReport`]; a failing law is reported, never
//! raised. Checks are sequential and fully determined by their inputs, so a
//! fixed seed reproduces a report bit for bit.

mod laws;

pub use laws::{
    Associativity, CheckContext, Commutativity, Homomorphism, Identity, Inverse, Law, LawRegistry,
    Limits, Monotonicity, Stability, DEFAULT_LIMIT_STEPS,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{oracle_compose, ExactDecimal};
use crate::rapidity::{alpha, compose_via_rapidity};
use crate::route::compose_sr_naive;
use crate::sampling::{boundary_grid, SampleSpec};
use crate::velocity::{compose_sr, identity_sr, inverse, partial_derivative_sr, IsoParams, Velocity};

/// Default tolerance for associativity.
pub const ASSOCIATIVITY_TOLERANCE: f64 = 1e-12;

/// Default tolerance for the scaled homomorphism residual.
pub const HOMOMORPHISM_TOLERANCE: f64 = 1e-9;

/// Digits carried by the reference values in [`check_stability`].
pub const STABILITY_ORACLE_DIGITS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law_name: String,
    pub samples_run: u64,
    pub max_abs_violation: f64,
    pub worst_case_inputs: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Running maximum of per-sample violations. Ties keep the earliest sample.
#[derive(Debug, Clone)]
struct Tracker {
    law_name: &'static str,
    tolerance: f64,
    samples: u64,
    max: f64,
    worst: Vec<f64>,
}

impl Tracker {
    fn new(law_name: &'static str, tolerance: f64) -> Self {
        Tracker { law_name, tolerance, samples: 0, max: 0.0, worst: Vec::new() }
    }

    fn record(&mut self, violation: f64, inputs: &[Velocity]) {
        self.samples += 1;
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        if violation > self.max || (self.worst.is_empty() && violation >= self.max) {
            self.max = violation;
            self.worst = inputs.iter().map(Velocity::beta).collect();
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            law_name: self.law_name.to_string(),
            samples_run: self.samples,
            max_abs_violation: self.max,
            worst_case_inputs: self.worst,
            tolerance: self.tolerance,
            passed: self.max <= self.tolerance,
        }
    }
}

/// Distance between two velocities as stored, in `beta` and in `gap`.
fn mismatch(a: Velocity, b: Velocity) -> f64 {
    (a.beta() - b.beta()).abs().max((a.gap() - b.gap()).abs())
}

// How far a quantity falls short of being strictly positive. Zero counts as
// a violation of the smallest positive size.
fn strict_shortfall(x: f64) -> f64 {
    if x > 0.0 {
        0.0
    } else {
        (-x).max(f64::MIN_POSITIVE)
    }
}

fn check_tolerance(tol: f64) -> f64 {
    if tol > 0.0 && tol.is_finite() {
        tol
    } else {
        f64::NAN
    }
}

/// `(u * v) * w` against `u * (v * w)`, compared on `beta`.
pub fn check_associativity(spec: &SampleSpec, tol: f64) -> CheckReport {
    let mut t = Tracker::new("associativity", check_tolerance(tol));
    for (u, v, w) in spec.triples() {
        let left = compose_sr(compose_sr(u, v), w);
        let right = compose_sr(u, compose_sr(v, w));
        t.record((left.beta() - right.beta()).abs(), &[u, v, w]);
    }
    t.finish()
}

/// `u * v` against `v * u`; exact.
pub fn check_commutativity(spec: &SampleSpec) -> CheckReport {
    let mut t = Tracker::new("commutativity", 0.0);
    for (u, v) in spec.pairs() {
        t.record(mismatch(compose_sr(u, v), compose_sr(v, u)), &[u, v]);
    }
    t.finish()
}

/// `u * 0 = 0 * u = u`; exact.
pub fn check_identity(spec: &SampleSpec) -> CheckReport {
    let mut t = Tracker::new("identity", 0.0);
    let e = identity_sr();
    for u in spec.singles() {
        let violation = mismatch(compose_sr(u, e), u).max(mismatch(compose_sr(e, u), u));
        t.record(violation, &[u]);
    }
    t.finish()
}

/// `u * (-u) = (-u) * u = 0`; exact.
pub fn check_inverse(spec: &SampleSpec) -> CheckReport {
    let mut t = Tracker::new("inverse", 0.0);
    let e = identity_sr();
    for u in spec.singles() {
        let n = inverse(u);
        let violation = mismatch(compose_sr(u, n), e).max(mismatch(compose_sr(n, u), e));
        t.record(violation, &[u]);
    }
    t.finish()
}

/// Identity and inverse laws in one report.
pub fn check_identity_inverse(spec: &SampleSpec) -> CheckReport {
    let id = check_identity(spec);
    let inv = check_inverse(spec);
    let worst = if inv.max_abs_violation > id.max_abs_violation { &inv } else { &id };
    CheckReport {
        law_name: "identity_inverse".into(),
        samples_run: id.samples_run + inv.samples_run,
        max_abs_violation: worst.max_abs_violation,
        worst_case_inputs: worst.worst_case_inputs.clone(),
        tolerance: 0.0,
        passed: id.passed && inv.passed,
    }
}

/// `|alpha(u * v) - alpha(u) - alpha(v)| / (1 + |alpha(u)| + |alpha(v)|)`.
pub fn check_homomorphism(p: IsoParams, spec: &SampleSpec, tol: f64) -> CheckReport {
    let mut t = Tracker::new("homomorphism", check_tolerance(tol));
    for (u, v) in spec.pairs() {
        let (au, av) = (alpha(u, p).value(), alpha(v, p).value());
        let residual = alpha(compose_sr(u, v), p).value() - (au + av);
        t.record(residual.abs() / (1.0 + au.abs() + av.abs()), &[u, v]);
    }
    t.finish()
}

const MONOTONE_GRID_POINTS: usize = 101;
const MONOTONE_SAMPLE_CAP: usize = 1000;

/// Positivity of `d(u * v)/du` on every sampled pair, and strict increase
/// of `u * v` in `u` along a sorted grid for each grid value of `v`.
pub fn check_monotonicity(spec: &SampleSpec) -> CheckReport {
    let mut t = Tracker::new("monotonicity", 0.0);
    for (u, v) in spec.pairs() {
        t.record(strict_shortfall(partial_derivative_sr(u, v)), &[u, v]);
    }

    let mut us: Vec<Velocity> = (0..MONOTONE_GRID_POINTS)
        .map(|i| -0.99 + 1.98 * i as f64 / (MONOTONE_GRID_POINTS - 1) as f64)
        .filter_map(|b| Velocity::from_beta(b).ok())
        .collect();
    us.extend(spec.velocities(spec.count.min(MONOTONE_SAMPLE_CAP), 3));
    us.extend(spec.grid());
    us.sort();
    us.dedup();

    let mut fixed = spec.grid();
    fixed.extend([-0.99, -0.5, 0.0, 0.5, 0.99].map(|b| Velocity::from_beta(b).unwrap_or(Velocity::REST)));
    for v in fixed {
        for pair in us.windows(2) {
            let (lo, hi) = (compose_sr(pair[0], v), compose_sr(pair[1], v));
            let violation = if hi > lo { 0.0 } else { (lo.beta() - hi.beta()).max(f64::MIN_POSITIVE) };
            t.record(violation, &[pair[0], pair[1], v]);
        }
    }
    t.finish()
}

/// Largest `n` accepted by [`check_limits`]; beyond it `gap^2` underflows.
pub const MAX_LIMIT_STEPS: u32 = 150;

/// `u * u` along `beta = 1 - 10^-n`, `n = 1..=n_steps`: strictly increasing,
/// ending above `1 - 10^-n_steps`, and mirrored exactly toward `-1`.
pub fn check_limits(n_steps: u32) -> Result<CheckReport> {
    if !(2..=MAX_LIMIT_STEPS).contains(&n_steps) {
        return Err(Error::InvalidInput(format!(
            "limit steps must lie in 2..={MAX_LIMIT_STEPS}, got {n_steps}"
        )));
    }
    let mut t = Tracker::new("limits", 0.0);
    let mut previous: Option<Velocity> = None;
    let mut last = Velocity::REST;
    for n in 1..=n_steps as i32 {
        let u = Velocity::from_gap_unchecked(false, 10f64.powi(-n));
        let w = compose_sr(u, u);
        let rising = match previous {
            Some(p) if w <= p => (p.beta() - w.beta()).max(f64::MIN_POSITIVE),
            _ => 0.0,
        };
        t.record(rising, &[u]);
        let mirrored = compose_sr(inverse(u), inverse(u));
        t.record(mismatch(mirrored, inverse(w)), &[inverse(u)]);
        previous = Some(w);
        last = w;
    }
    let bound = 10f64.powi(-(n_steps as i32));
    let short = if last.gap() < bound { 0.0 } else { last.gap() - bound + f64::MIN_POSITIVE };
    t.record(short, &[last]);
    Ok(t.finish())
}

/// On every ordered pair from `±(1 - 10^-k)`, `k = 8..=15`, the rapidity
/// route must land at least as close to the exact value as the literal
/// formula does. The violation is the excess error of the rapidity route.
pub fn check_stability(p: IsoParams) -> CheckReport {
    let mut t = Tracker::new("stability", 0.0);
    let grid = boundary_grid(8..=15);
    for &u in &grid {
        for &v in &grid {
            let (rapid, naive) = stability_errors(u, v, p);
            t.record((rapid - naive).max(0.0), &[u, v]);
        }
    }
    t.finish()
}

/// Absolute `beta` errors of the rapidity route and of the literal formula
/// against the exact composition of the stored operands.
pub fn stability_errors(u: Velocity, v: Velocity, p: IsoParams) -> (f64, f64) {
    let exact = ExactDecimal::from_f64(u.beta())
        .and_then(|a| ExactDecimal::from_f64(v.beta()).map(|b| (a, b)))
        .and_then(|(a, b)| oracle_compose(&a, &b, STABILITY_ORACLE_DIGITS));
    match exact {
        Ok(exact) => (
            exact.abs_diff_f64(compose_via_rapidity(u, v, p).beta()),
            exact.abs_diff_f64(compose_sr_naive(u, v).beta()),
        ),
        Err(_) => (f64::INFINITY, f64::INFINITY),
    }
}
