//! Exact rational reference values for floating-point composition.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Smallest working precision accepted by [`oracle_compose`].
pub const MIN_ORACLE_DIGITS: u32 = 30;

/// An exact rational number, typically written and read as a decimal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactDecimal(BigRational);

impl ExactDecimal {
    pub fn zero() -> Self {
        ExactDecimal(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactDecimal(BigRational::one())
    }

    /// The exact value of a finite double.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(ExactDecimal)
            .ok_or_else(|| Error::InvalidInput(format!("{x} has no exact rational value")))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactDecimal(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Nearest double.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        ExactDecimal(self.0.abs())
    }

    /// `|self - x|` for a double `x`, rounded to the nearest double.
    pub fn abs_diff_f64(&self, x: f64) -> f64 {
        match BigRational::from_float(x) {
            Some(r) => (r - &self.0).abs().to_f64().unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    }

    /// Rounds to `digits` significant decimal digits, ties to even.
    pub fn round_significant(&self, digits: u32) -> Self {
        if self.0.is_zero() || digits == 0 {
            return self.clone();
        }
        let exponent = decimal_exponent(&self.0);
        let shift = digits as i64 - 1 - exponent;
        let scaled = &self.0 * pow10(shift);
        ExactDecimal(BigRational::from_integer(round_half_even(&scaled)) / pow10(shift))
    }

    /// Scientific notation with `digits` significant digits, e.g. `8.000e-1`.
    pub fn to_scientific(&self, digits: u32) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return format!("{}e0", pad_mantissa("0", digits));
        }
        let rounded = self.round_significant(digits);
        // rounding may carry into a new leading digit
        let exponent = decimal_exponent(&rounded.0);
        let shift = digits as i64 - 1 - exponent;
        let mantissa = (&rounded.0 * pow10(shift)).to_integer();
        let sign = if mantissa.sign() == Sign::Minus { "-" } else { "" };
        let text = mantissa.abs().to_string();
        format!("{sign}{}e{exponent}", pad_mantissa(&text, digits))
    }
}

fn pad_mantissa(text: &str, digits: u32) -> String {
    let mut padded = text.to_string();
    while padded.len() < digits as usize {
        padded.push('0');
    }
    if padded.len() == 1 {
        padded
    } else {
        format!("{}.{}", &padded[..1], &padded[1..])
    }
}

fn pow10(exponent: i64) -> BigRational {
    let base = BigInt::from(10u8).pow(exponent.unsigned_abs() as u32);
    if exponent >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

// floor(log10 |r|) for nonzero r
fn decimal_exponent(r: &BigRational) -> i64 {
    let r = r.abs();
    let numer_len = r.numer().to_string().len() as i64;
    let denom_len = r.denom().to_string().len() as i64;
    let mut e = numer_len - denom_len;
    while r < pow10(e) {
        e -= 1;
    }
    while r >= pow10(e + 1) {
        e += 1;
    }
    e
}

fn round_half_even(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(r.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl FromStr for ExactDecimal {
    type Err = Error;

    /// Parses `[-+]digits[.digits][(e|E)[-+]digits]` exactly.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("`{s}` is not a decimal number"));
        let t = s.trim();
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (negative, mantissa) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let integer = BigInt::from_str(&digits).map_err(|_| bad())?;
        let value = BigRational::from_integer(integer) * pow10(exponent - frac_part.len() as i64);
        Ok(ExactDecimal(if negative { -value } else { value }))
    }
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32 + 1).unwrap_or(50);
        f.write_str(&self.to_scientific(digits))
    }
}

/// `(u + v) / (1 + uv)` evaluated exactly, then rounded to
/// `precision_digits` significant digits.
pub fn oracle_compose(
    u_beta: &ExactDecimal,
    v_beta: &ExactDecimal,
    precision_digits: u32,
) -> Result<ExactDecimal> {
    if precision_digits < MIN_ORACLE_DIGITS {
        return Err(Error::InvalidInput(format!(
            "oracle precision must be at least {MIN_ORACLE_DIGITS} digits, got {precision_digits}"
        )));
    }
    let one = BigRational::one();
    for (name, b) in [("u", u_beta), ("v", v_beta)] {
        if b.0.abs() >= one {
            return Err(Error::Domain(format!("|{name}| = {} is not below 1", b.abs())));
        }
    }
    let exact = (&u_beta.0 + &v_beta.0) / (one + &u_beta.0 * &v_beta.0);
    Ok(ExactDecimal(exact).round_significant(precision_digits))
}
