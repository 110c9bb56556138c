//! Locale-independent decimal formatting with a fixed number of
//! significant digits.

/// Significant digits that round-trip every double.
pub const ROUND_TRIP_DIGITS: usize = 17;

/// Formats `x` with at most `digits` significant digits, dropping trailing
/// zeros. Positional notation for decimal exponents in `-5..digits`,
/// scientific (`1.5e-20`) otherwise. Always uses `.` as the separator.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exponent: i32 = exponent.parse().unwrap_or(0);
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let all: String = mantissa.chars().filter(|c| *c != '.').collect();
    let significant = all.trim_end_matches('0');
    let significant = if significant.is_empty() { "0" } else { significant };

    if exponent < -5 || exponent >= digits as i32 {
        let (head, tail) = significant.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exponent}")
        } else {
            format!("{sign}{head}.{tail}e{exponent}")
        };
    }
    if exponent < 0 {
        let zeros = "0".repeat((-exponent - 1) as usize);
        return format!("{sign}0.{zeros}{significant}");
    }
    let int_len = exponent as usize + 1;
    if significant.len() <= int_len {
        let zeros = "0".repeat(int_len - significant.len());
        format!("{sign}{significant}{zeros}")
    } else {
        let (int, frac) = significant.split_at(int_len);
        format!("{sign}{int}.{frac}")
    }
}

/// [`format_significant`] at [`ROUND_TRIP_DIGITS`].
pub fn format_exact(x: f64) -> String {
    format_significant(x, ROUND_TRIP_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(format_significant(0.8, 17), "0.80000000000000004");
        assert_eq!(format_significant(0.8, 6), "0.8");
        assert_eq!(format_significant(1.0, 17), "1");
        assert_eq!(format_significant(-2.5, 17), "-2.5");
        assert_eq!(format_significant(123456.0, 6), "123456");
        assert_eq!(format_significant(1234567.0, 6), "1.23457e6");
        assert_eq!(format_significant(1e-20, 6), "1e-20");
        assert_eq!(format_significant(0.000012345, 3), "0.0000123");
        assert_eq!(format_significant(0.549_306_144_334_054_8, 6), "0.549306");
        assert_eq!(format_significant(0.0, 6), "0");
        assert_eq!(format_significant(1e300, 17), "1.0000000000000001e300");
        assert_eq!(format_significant(1.0 - f64::EPSILON, 6), "1");
    }

    proptest! {
        #[test]
        fn seventeen_digits_round_trip(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let text = format_exact(x);
            prop_assert_eq!(text.parse::<f64>().unwrap(), x);
        }
    }
}
