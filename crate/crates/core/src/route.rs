//! Interchangeable ways of evaluating relativistic composition.
//!
//! Every route computes the same mathematical `u * v`; they differ in how
//! rounding error behaves near the light-speed boundary. Routes are looked
//! up by name so callers (the verifier, the CLI) can pick one at runtime.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rapidity::{alpha, beta_inv, Rapidity};
use crate::velocity::{compose_sr, IsoParams, Velocity};

pub trait CompositionRoute: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn compose(&self, u: Velocity, v: Velocity) -> Velocity;

    /// Left fold over a non-empty list.
    fn fold(&self, vs: &[Velocity]) -> Result<Velocity> {
        let (first, rest) = vs
            .split_first()
            .ok_or_else(|| Error::EmptyInput("nothing to compose".into()))?;
        Ok(rest.iter().fold(*first, |acc, v| self.compose(acc, *v)))
    }
}

impl<'a> fmt::Debug for dyn CompositionRoute + 'a {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompositionRoute({})", self.name())
    }
}

/// The library's default evaluation, [`compose_sr`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Direct;

impl CompositionRoute for Direct {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn description(&self) -> &'static str {
        "(u + v) / (1 + uv) with gap-aware denominators"
    }

    fn compose(&self, u: Velocity, v: Velocity) -> Velocity {
        compose_sr(u, v)
    }
}

/// `(u + v) / (1 + uv)` exactly as written, on `beta` alone.
#[derive(Debug, Clone, Copy, Default)]
pub struct Naive;

impl CompositionRoute for Naive {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn description(&self) -> &'static str {
        "(u + v) / (1 + uv) evaluated literally; clamps and flags on rounding to |beta| = 1"
    }

    fn compose(&self, u: Velocity, v: Velocity) -> Velocity {
        compose_sr_naive(u, v)
    }
}

/// Literal evaluation of the composition formula, kept as the contrast case.
pub fn compose_sr_naive(u: Velocity, v: Velocity) -> Velocity {
    let (a, b) = (u.beta(), v.beta());
    Velocity::from_rounded_beta((a + b) / (1.0 + a * b))
}

/// Composition through the additive group: map both operands with `alpha`,
/// add, map back.
#[derive(Debug, Clone, Copy, Default)]
pub struct ViaRapidity {
    pub params: IsoParams,
}

impl CompositionRoute for ViaRapidity {
    fn name(&self) -> &'static str {
        "rapidity"
    }

    fn description(&self) -> &'static str {
        "beta_k(alpha_k(u) + alpha_k(v))"
    }

    fn compose(&self, u: Velocity, v: Velocity) -> Velocity {
        crate::rapidity::compose_via_rapidity(u, v, self.params)
    }

    /// Sums every rapidity first and maps back once.
    fn fold(&self, vs: &[Velocity]) -> Result<Velocity> {
        match vs {
            [] => Err(Error::EmptyInput("nothing to compose".into())),
            [only] => Ok(*only),
            _ => {
                let total = vs
                    .iter()
                    .map(|v| alpha(*v, self.params))
                    .fold(Rapidity::ZERO, |acc, x| acc + x);
                Ok(beta_inv(total, self.params))
            }
        }
    }
}

/// Name-keyed set of composition routes.
#[derive(Clone, Default)]
pub struct RouteRegistry {
    routes: BTreeMap<&'static str, Arc<dyn CompositionRoute>>,
}

impl RouteRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `direct`, `naive` and `rapidity` (the latter using `params`).
    pub fn builtin(params: IsoParams) -> Self {
        let mut registry = Self::new();
        registry.register(Arc::new(Direct));
        registry.register(Arc::new(Naive));
        registry.register(Arc::new(ViaRapidity { params }));
        registry
    }

    /// Adds a route, replacing any previous route with the same name.
    pub fn register(&mut self, route: Arc<dyn CompositionRoute>) {
        self.routes.insert(route.name(), route);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CompositionRoute>> {
        self.routes.get(name).cloned().ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown composition route `{name}` (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.keys().copied().collect()
    }
}

impl fmt::Debug for RouteRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.routes.keys()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vel(beta: f64) -> Velocity {
        Velocity::from_beta(beta).unwrap()
    }

    #[test]
    fn all_routes_agree_in_the_interior() {
        let registry = RouteRegistry::builtin(IsoParams::default());
        for name in registry.names() {
            let route = registry.get(name).unwrap();
            let w = route.compose(vel(0.5), vel(0.5));
            assert!((w.beta() - 0.8).abs() < 1e-15, "{name}");
            let w = route.fold(&[vel(0.3), vel(-0.3), vel(0.3), vel(-0.3)]).unwrap();
            assert!(w.beta().abs() < 1e-15, "{name}");
        }
    }

    #[test]
    fn unknown_route_is_rejected() {
        let registry = RouteRegistry::builtin(IsoParams::default());
        let err = registry.get("bogus").unwrap_err();
        assert!(err.to_string().contains("direct, naive, rapidity"));
    }

    #[test]
    fn empty_fold_is_an_error() {
        for route in [&Direct as &dyn CompositionRoute, &Naive, &ViaRapidity::default()] {
            assert!(matches!(route.fold(&[]), Err(Error::EmptyInput(_))));
            assert_eq!(route.fold(&[vel(0.7)]).unwrap(), vel(0.7));
        }
    }

    #[test]
    fn naive_route_clamps_and_flags() {
        let u = vel(1.0 - 1e-9);
        let w = compose_sr_naive(u, u);
        assert!(w.is_saturated());
        assert!(w.beta() < 1.0);
        assert!(!compose_sr(u, u).is_saturated());
    }

    #[test]
    fn naive_route_loses_opposite_sign_boundary_pairs() {
        use crate::oracle::{oracle_compose, ExactDecimal};
        let grid = crate::sampling::boundary_grid(8..=15);
        let (mut naive, mut direct) = (0.0f64, 0.0f64);
        for &u in &grid {
            for &v in &grid {
                let exact = oracle_compose(
                    &ExactDecimal::from_f64(u.beta()).unwrap(),
                    &ExactDecimal::from_f64(v.beta()).unwrap(),
                    50,
                )
                .unwrap();
                naive = naive.max(exact.abs_diff_f64(compose_sr_naive(u, v).beta()));
                direct = direct.max(exact.abs_diff_f64(compose_sr(u, v).beta()));
            }
        }
        assert!(direct < 1e-15, "{direct}");
        assert!(naive > 1e-10 && naive > 1e5 * direct, "{naive}");
    }
}
