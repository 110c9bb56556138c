//! Collinear relativistic velocity addition, Newtonian addition, and the
//! one-parameter family of isomorphisms between the two groups.
//!
//! ```
//! use rapidity_core::prelude::*;
//!
//! let u = Velocity::from_beta(0.5).unwrap();
//! assert_eq!(compose_sr(u, u).beta(), 0.8);
//!
//! let p = IsoParams::with_k(0.5).unwrap();
//! let x = alpha(u, p);
//! assert!((beta_inv(x, p).beta() - 0.5).abs() < 1e-15);
//! ```

pub mod chain;
pub mod error;
pub mod numfmt;
pub mod oracle;
pub mod quadrature;
pub mod rapidity;
pub mod route;
pub mod sampling;
pub mod velocity;
pub mod verify;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::chain::{boost_chain, comparison_table, fold_compose, newton_chain, ChainRow};
    pub use crate::error::{Error, Result};
    pub use crate::rapidity::{
        alpha, alpha_prime, alpha_via_quadrature, beta_inv, compose_via_rapidity, dalpha_dbeta,
        k_from_slope, Rapidity,
    };
    pub use crate::route::{CompositionRoute, RouteRegistry};
    pub use crate::sampling::SampleSpec;
    pub use crate::velocity::{
        compose_extended, compose_newton, compose_sr, compose_sr3, identity_sr, inverse,
        make_velocity, partial_derivative_sr, ExtendedVelocity, IsoParams, NewtonVelocity, Velocity,
    };
    pub use crate::verify::{CheckContext, CheckReport, Law, LawRegistry};
}
