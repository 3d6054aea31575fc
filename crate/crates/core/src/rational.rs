//! Helpers around [`BigRational`]: construction, parsing and the `p/q`
//! rendering used in all I/O.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `q^k` with the convention `0^0 = 1`.
pub fn pow(q: &Rational, k: usize) -> Rational {
    num_traits::pow(q.clone(), k)
}

/// Parses `p/q`, an integer, or a terminating decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(n, d);
        return Ok(if negative { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Renders as `p/q`, or `p` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializes as `p/q` (serde `serialize_with` helper).
pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

/// Same for a sequence of rationals.
pub fn serialize_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

pub fn serialize_opt<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

/// Inclusive arithmetic grid `start, start+step, …` clipped to `stop`; `stop`
/// itself is appended when the step does not land on it.
pub fn grid(start: &Rational, stop: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return Err(Error::OutOfRange("grid step must be positive".into()));
    }
    if start > stop {
        return Err(Error::OutOfRange("grid start exceeds stop".into()));
    }
    let mut out = Vec::new();
    let mut x = start.clone();
    while &x <= stop {
        out.push(x.clone());
        x += step;
    }
    if out.last() != Some(stop) {
        out.push(stop.clone());
    }
    Ok(out)
}

/// Parses `start:stop:step`.
pub fn parse_grid(spec: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse_rational(single)?]),
        [a, b, c] => grid(&parse_rational(a)?, &parse_rational(b)?, &parse_rational(c)?),
        _ => Err(Error::Parse(format!("grid must be `start:stop:step`, got `{spec}`"))),
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rounds to the nearest multiple of `10^-digits`.
pub fn round_decimal(x: &Rational, digits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn render() {
        assert_eq!(fmt_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(fmt_rational(&int(5)), "5");
    }

    #[test]
    fn grid_includes_stop() {
        let g = grid(&rat(-1, 3), &int(1), &rat(1, 4)).unwrap();
        assert_eq!(g.first(), Some(&rat(-1, 3)));
        assert_eq!(g.last(), Some(&int(1)));
        assert_eq!(g.len(), 7);
        assert_eq!(parse_grid("0:1:1/4").unwrap().len(), 5);
    }

    #[test]
    fn zero_power_is_one() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&int(0), 3), int(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
