use std::fmt;

use crate::error::{Error, Result};
use crate::sampling::SampleSpec;
use crate::velocity::IsoParams;

use super::{
    check_associativity, check_commutativity, check_homomorphism, check_identity, check_inverse,
    check_limits, check_monotonicity, check_stability, CheckReport, ASSOCIATIVITY_TOLERANCE,
    HOMOMORPHISM_TOLERANCE,
};

pub const DEFAULT_LIMIT_STEPS: u32 = 12;

/// Everything a law needs to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckContext {
    pub spec: SampleSpec,
    pub params: IsoParams,
    /// Overrides the associativity tolerance. Exact laws and the
    /// homomorphism residual keep their own thresholds.
    pub tolerance: Option<f64>,
    pub limit_steps: u32,
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext {
            spec: SampleSpec::default(),
            params: IsoParams::default(),
            tolerance: None,
            limit_steps: DEFAULT_LIMIT_STEPS,
        }
    }
}

impl CheckContext {
    fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

/// One verifiable law.
pub trait Law: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether `all` selects this law.
    fn in_group_suite(&self) -> bool {
        true
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport;
}

impl<'a> fmt::Debug for dyn Law + 'a {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Law({})", self.name())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Associativity;

impl Law for Associativity {
    fn name(&self) -> &'static str {
        "associativity"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_associativity(&ctx.spec, ctx.tolerance_or(ASSOCIATIVITY_TOLERANCE))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Commutativity;

impl Law for Commutativity {
    fn name(&self) -> &'static str {
        "commutativity"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_commutativity(&ctx.spec)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl Law for Identity {
    fn name(&self) -> &'static str {
        "identity"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_identity(&ctx.spec)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Inverse;

impl Law for Inverse {
    fn name(&self) -> &'static str {
        "inverse"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_inverse(&ctx.spec)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Homomorphism;

impl Law for Homomorphism {
    fn name(&self) -> &'static str {
        "homomorphism"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_homomorphism(ctx.params, &ctx.spec, HOMOMORPHISM_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Monotonicity;

impl Law for Monotonicity {
    fn name(&self) -> &'static str {
        "monotonicity"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_monotonicity(&ctx.spec)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Limits;

impl Law for Limits {
    fn name(&self) -> &'static str {
        "limits"
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        // out-of-range step counts are caught by `LawRegistry::run`
        check_limits(ctx.limit_steps).unwrap_or_else(|_| CheckReport {
            law_name: self.name().into(),
            samples_run: 0,
            max_abs_violation: f64::INFINITY,
            worst_case_inputs: Vec::new(),
            tolerance: 0.0,
            passed: false,
        })
    }
}

/// Rapidity-route composition against the literal formula near the boundary.
#[derive(Debug, Clone, Copy, Default)]
pub struct Stability;

impl Law for Stability {
    fn name(&self) -> &'static str {
        "stability"
    }

    fn in_group_suite(&self) -> bool {
        false
    }

    fn check(&self, ctx: &CheckContext) -> CheckReport {
        check_stability(ctx.params)
    }
}

/// Laws in registration order, looked up by name.
#[derive(Default)]
pub struct LawRegistry {
    laws: Vec<Box<dyn Law>>,
}

impl fmt::Debug for LawRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.laws.iter().map(|l| l.name())).finish()
    }
}

impl LawRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut r = Self::new();
        r.register(Box::new(Associativity));
        r.register(Box::new(Commutativity));
        r.register(Box::new(Identity));
        r.register(Box::new(Inverse));
        r.register(Box::new(Homomorphism));
        r.register(Box::new(Monotonicity));
        r.register(Box::new(Limits));
        r.register(Box::new(Stability));
        r
    }

    /// Adds a law, replacing one with the same name in place.
    pub fn register(&mut self, law: Box<dyn Law>) {
        match self.laws.iter().position(|l| l.name() == law.name()) {
            Some(i) => self.laws[i] = law,
            None => self.laws.push(law),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Law> {
        self.laws.iter().find(|l| l.name() == name).map(|l| l.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.laws.iter().map(|l| l.name()).collect()
    }

    /// Expands a selector list into laws in registration order. `all`
    /// stands for every group-suite law; an empty list means `all`.
    pub fn resolve<S: AsRef<str>>(&self, selectors: &[S]) -> Result<Vec<&dyn Law>> {
        let mut chosen = vec![false; self.laws.len()];
        if selectors.is_empty() {
            return self.resolve(&["all"]);
        }
        for s in selectors {
            let s = s.as_ref();
            if s == "all" {
                for (flag, law) in chosen.iter_mut().zip(&self.laws) {
                    *flag |= law.in_group_suite();
                }
                continue;
            }
            let i = self.laws.iter().position(|l| l.name() == s).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown law `{s}` (known: all, {})",
                    self.names().join(", ")
                ))
            })?;
            chosen[i] = true;
        }
        Ok(self
            .laws
            .iter()
            .zip(chosen)
            .filter(|(_, c)| *c)
            .map(|(l, _)| l.as_ref())
            .collect())
    }

    /// Runs the selected laws in order.
    pub fn run<S: AsRef<str>>(&self, selectors: &[S], ctx: &CheckContext) -> Result<Vec<CheckReport>> {
        ctx.spec.validate()?;
        if !(2..=super::MAX_LIMIT_STEPS).contains(&ctx.limit_steps) {
            return Err(Error::InvalidInput(format!(
                "limit steps must lie in 2..={}, got {}",
                super::MAX_LIMIT_STEPS,
                ctx.limit_steps
            )));
        }
        Ok(self.resolve(selectors)?.into_iter().map(|l| l.check(ctx)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_selects_the_seven_group_laws() {
        let r = LawRegistry::builtin();
        let names: Vec<_> = r.resolve(&["all"]).unwrap().iter().map(|l| l.name()).collect();
        assert_eq!(
            names,
            ["associativity", "commutativity", "identity", "inverse", "homomorphism", "monotonicity", "limits"]
        );
        assert_eq!(r.resolve::<&str>(&[]).unwrap().len(), 7);
        let with_extra = r.resolve(&["all", "stability", "limits"]).unwrap();
        assert_eq!(with_extra.len(), 8);
    }

    #[test]
    fn selection_keeps_registration_order() {
        let r = LawRegistry::builtin();
        let names: Vec<_> =
            r.resolve(&["limits", "commutativity"]).unwrap().iter().map(|l| l.name()).collect();
        assert_eq!(names, ["commutativity", "limits"]);
    }

    #[test]
    fn unknown_law() {
        let registry = LawRegistry::builtin();
        let err = registry.resolve(&["closure"]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn custom_law_can_be_registered() {
        struct AlwaysFails;
        impl Law for AlwaysFails {
            fn name(&self) -> &'static str {
                "always_fails"
            }
            fn in_group_suite(&self) -> bool {
                false
            }
            fn check(&self, _: &CheckContext) -> CheckReport {
                CheckReport {
                    law_name: "always_fails".into(),
                    samples_run: 1,
                    max_abs_violation: 1.0,
                    worst_case_inputs: vec![],
                    tolerance: 0.0,
                    passed: false,
                }
            }
        }
        let mut r = LawRegistry::builtin();
        r.register(Box::new(AlwaysFails));
        let ctx = CheckContext { spec: SampleSpec { count: 5, ..SampleSpec::default() }, ..Default::default() };
        let reports = r.run(&["always_fails"], &ctx).unwrap();
        assert!(!reports[0].passed);
    }

    #[test]
    fn tolerance_override_applies_to_associativity_only() {
        let ctx = CheckContext {
            spec: SampleSpec { count: 20, ..SampleSpec::default() },
            tolerance: Some(1e-3),
            ..Default::default()
        };
        let r = LawRegistry::builtin().run(&["associativity", "homomorphism", "identity"], &ctx).unwrap();
        assert_eq!(r[0].tolerance, 1e-3);
        assert_eq!(r[1].law_name, "identity");
        assert_eq!(r[1].tolerance, 0.0);
        assert_eq!(r[2].tolerance, HOMOMORPHISM_TOLERANCE);
    }
}
