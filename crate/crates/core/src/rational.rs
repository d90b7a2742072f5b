//! Exact rational helpers shared by every module.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational number used for weights, ratios and levels.
pub type Q = Rational64;

/// Failure to read a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational literal: {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let t = text.trim();
    let err = || ParseRationalError(text.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if fp.is_empty() || fp.len() > 15 || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let whole: i64 = if ip_digits.is_empty() {
            0
        } else {
            ip_digits.parse().map_err(|_| err())?
        };
        let den = 10i64.checked_pow(fp.len() as u32).ok_or_else(err)?;
        let frac: i64 = fp.parse().map_err(|_| err())?;
        let mag = Q::from_integer(whole) + Q::new(frac, den);
        return Ok(if neg { -mag } else { mag });
    }
    t.parse::<i64>().map(Q::from_integer).map_err(|_| err())
}

/// Canonical text form: `n` for integers, `p/q` in lowest terms otherwise.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Lossy conversion used only by the numerical layer.
pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Returns `Some(n)` when `q` is a non-negative integer.
pub fn as_natural(q: &Q) -> Option<u64> {
    if q.is_integer() && !q.is_negative() {
        Some(*q.numer() as u64)
    } else {
        None
    }
}

/// Non-negative remainder of `x` modulo a positive period.
pub fn q_mod(x: Q, period: Q) -> Q {
    debug_assert!(period > Q::zero());
    let k = (x / period).floor();
    x - k * period
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Display adaptor for slices of rationals, comma separated.
pub struct QList<'a>(pub &'a [Q]);

impl fmt::Display for QList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&fmt_q(q))?;
        }
        Ok(())
    }
}

/// Parses a comma separated rational list.
pub fn parse_q_list(text: &str) -> Result<Vec<Q>, ParseRationalError> {
    text.split(',').map(parse_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_q("2/4").unwrap(), Q::new(1, 2));
        assert_eq!(parse_q("7").unwrap(), Q::from_integer(7));
        assert_eq!(parse_q("0.25").unwrap(), Q::new(1, 4));
        assert_eq!(parse_q("-1.5").unwrap(), Q::new(-3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(fmt_q(&Q::new(6, 4)), "3/2");
        assert_eq!(fmt_q(&Q::new(4, 2)), "2");
        assert_eq!(fmt_q(&Q::new(1, -3)), "-1/3");
        assert_eq!(fmt_q(&Q::zero()), "0");
    }

    #[test]
    fn modulo_is_non_negative() {
        assert_eq!(q_mod(Q::new(-1, 2), Q::from_integer(3)), Q::new(5, 2));
        assert_eq!(q_mod(Q::from_integer(7), Q::from_integer(3)), Q::one());
    }
}
