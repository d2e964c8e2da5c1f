//! Exact rational numbers and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or a decimal with optional exponent (`0.25`,
/// `-1.5e-3`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Input(format!("malformed rational `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num).ok_or_else(bad)?;
        let d = parse_decimal(den).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{text}`")));
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().ok()?);
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let factor = Rational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if neg { -value } else { value })
}

/// Always `p/q`, including integers (`3/1`) and zero (`0/1`).
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`, found by walking the Stern–Brocot tree.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "simplest_in: empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of fractional parts.
    let a = fl.clone();
    let inner = simplest_positive(&(hi - &a).recip(), &(lo - &a).recip());
    a + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("5/6").unwrap(), q(5, 6));
        assert_eq!(parse_rational("-10").unwrap(), int(-10));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("1e-9").unwrap(), q(1, 1_000_000_000));
        assert_eq!(parse_rational("-1.5e2").unwrap(), int(-150));
        assert_eq!(parse_rational("-2/4").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn pq_format() {
        assert_eq!(to_pq(&int(0)), "0/1");
        assert_eq!(to_pq(&q(-23, 120)), "-23/120");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in(&q(-1, 10), &q(1, 10)), int(0));
        assert_eq!(simplest_in(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_in(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_in(&q(-4, 10), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_in(&q(749, 1000), &q(751, 1000)), q(3, 4));
        assert_eq!(simplest_in(&int(2), &q(5, 2)), int(2));
    }
}
