//! Exact rationals used for every distance and membership value.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = Ratio<i128>;

/// `n/d` as an exact rational. Panics on a zero denominator.
pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

/// The integer `n` as a rational.
pub fn int(n: i128) -> Q {
    Ratio::from_integer(n)
}

/// Positive part `max(t, 0)`.
pub fn pos(t: Q) -> Q {
    if t.is_negative() {
        Q::zero()
    } else {
        t
    }
}

/// Midpoint of two rationals.
pub fn mid(a: Q, b: Q) -> Q {
    (a + b) / int(2)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"` exactly.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(q(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let num: i128 = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = |k: u32| 10i128.checked_pow(k).ok_or_else(bad);
    let mut v = if scale >= 0 {
        int(num.checked_mul(ten(scale as u32)?).ok_or_else(bad)?)
    } else {
        q(num, ten((-scale) as u32)?)
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Parses a JSON scalar (string or number) as an exact rational.
pub fn from_json(v: &serde_json::Value) -> Result<Q> {
    match v {
        serde_json::Value::String(s) => parse_q(s),
        serde_json::Value::Number(n) => parse_q(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

/// `"p/q"` string form (integers print without a denominator).
pub fn to_json(v: &Q) -> serde_json::Value {
    serde_json::Value::String(v.to_string())
}

/// Floor of a rational.
pub fn floor(v: Q) -> i128 {
    v.numer().div_floor(v.denom())
}

/// Exact power `base^e`.
pub fn pow(base: Q, e: u32) -> Q {
    (0..e).fold(int(1), |acc, _| acc * base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_q("1/8").unwrap(), q(1, 8));
        assert_eq!(parse_q(" 3 ").unwrap(), int(3));
        assert_eq!(parse_q("0.6").unwrap(), q(3, 5));
        assert_eq!(parse_q("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_q("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_q(".5").unwrap(), q(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = q(7, 16);
        assert_eq!(from_json(&to_json(&v)).unwrap(), v);
        assert_eq!(from_json(&serde_json::json!(0.25)).unwrap(), q(1, 4));
        assert_eq!(to_json(&int(2)), serde_json::json!("2"));
    }

    #[test]
    fn helpers() {
        assert_eq!(pos(q(-1, 3)), Q::zero());
        assert_eq!(pos(q(1, 3)), q(1, 3));
        assert_eq!(floor(q(7, 2)), 3);
        assert_eq!(floor(q(-1, 2)), -1);
        assert_eq!(mid(int(0), int(1)), q(1, 2));
        assert_eq!(pow(q(1, 2), 3), q(1, 8));
    }
}
