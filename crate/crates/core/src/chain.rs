//! Repeated boosts: relativistic chains against their Newtonian
//! counterparts, with the rapidity that makes the former additive.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt::format_exact;
use crate::rapidity::{alpha, beta_inv, Rapidity};
use crate::route::{CompositionRoute, ViaRapidity};
use crate::velocity::{IsoParams, NewtonVelocity, Velocity};

/// Largest number of steps accepted per call.
pub const MAX_CHAIN_STEPS: u64 = 1_000_000;

pub const CSV_HEADER: &str = "step,sr_beta,newton_value,rapidity";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub step: u64,
    pub sr_beta: f64,
    /// In units of c.
    pub newton_value: f64,
    /// `alpha` of the relativistic velocity at `k = 1`.
    pub rapidity: f64,
}

fn check_steps(n: u64) -> Result<()> {
    if n > MAX_CHAIN_STEPS {
        return Err(Error::InvalidInput(format!(
            "at most {MAX_CHAIN_STEPS} steps per chain, got {n}"
        )));
    }
    Ok(())
}

/// Composes a non-empty list of velocities by summing rapidities and
/// mapping back once.
pub fn fold_compose(vs: &[Velocity]) -> Result<Velocity> {
    ViaRapidity { params: IsoParams::default() }.fold(vs)
}

/// `n` identical boosts `dv * dv * ... * dv`, in closed form.
pub fn boost_chain(dv: Velocity, n: u64) -> Velocity {
    let unit = IsoParams::default();
    // a finite alpha times n <= 2^64 stays finite
    let total = Rapidity::new(n as f64 * alpha(dv, unit).value()).unwrap_or(Rapidity::ZERO);
    beta_inv(total, unit)
}

/// `n` identical Newtonian boosts, `n * dv`.
pub fn newton_chain(dv: NewtonVelocity, n: u64) -> Result<NewtonVelocity> {
    let total = n as f64 * dv.value();
    NewtonVelocity::new(total)
        .map_err(|_| Error::Overflow(format!("{n} x {} is not finite", dv.value())))
}

/// Rows `0..=n_max` contrasting `n` relativistic boosts by `dv_beta` with
/// `n` Newtonian ones.
pub fn comparison_table(dv_beta: f64, n_max: u64) -> Result<Vec<ChainRow>> {
    if !(dv_beta > 0.0 && dv_beta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "boost must satisfy 0 < beta < 1, got {dv_beta}"
        )));
    }
    check_steps(n_max)?;
    let dv = Velocity::from_beta(dv_beta)?;
    let newton_dv = NewtonVelocity::new(dv_beta)?;
    let step_rapidity = alpha(dv, IsoParams::default()).value();
    (0..=n_max)
        .map(|step| {
            Ok(ChainRow {
                step,
                sr_beta: boost_chain(dv, step).beta(),
                newton_value: newton_chain(newton_dv, step)?.value(),
                rapidity: step as f64 * step_rapidity,
            })
        })
        .collect()
}

/// CSV with [`CSV_HEADER`] and round-trip-exact numbers.
pub fn to_csv(rows: &[ChainRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.step,
            format_exact(r.sr_beta),
            format_exact(r.newton_value),
            format_exact(r.rapidity)
        );
    }
    out
}
