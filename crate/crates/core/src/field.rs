//! The real multiquadratic field ℚ(√2, √3, √5).
//!
//! Coordinates are indexed by a bitmask over the primes (2, 3, 5): bit 0 is
//! √2, bit 1 is √3, bit 2 is √5, so index 3 is √6 and index 7 is √30.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::rational::{fmt_rational, int, rat, Rational};
use crate::scalar::{Scalar, Sign};

const PRIMES: [u64; 3] = [2, 3, 5];

/// Radicand of basis element `mask`.
pub const RADICANDS: [u64; 8] = [1, 2, 3, 6, 5, 10, 15, 30];

/// Mask order that lists the basis as 1, √2, √3, √5, √6, √10, √15, √30.
pub const DISPLAY_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    coords: [Rational; 8],
}

fn mask_product(a: usize, b: usize) -> u64 {
    let common = a & b;
    (0..3).filter(|i| common >> i & 1 == 1).map(|i| PRIMES[i]).product()
}

impl FieldElement {
    pub fn from_rational(q: Rational) -> Self {
        let mut e = FieldElement::default();
        e.coords[0] = q;
        e
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `c · √radicand` for radicand in {1,2,3,5,6,10,15,30}.
    pub fn surd(c: Rational, radicand: u64) -> Self {
        let mask = RADICANDS.iter().position(|&r| r == radicand).expect("radicand outside the field basis");
        let mut e = FieldElement::default();
        e.coords[mask] = c;
        e
    }

    pub fn sqrt2() -> Self {
        Self::surd(int(1), 2)
    }

    pub fn sqrt3() -> Self {
        Self::surd(int(1), 3)
    }

    pub fn sqrt5() -> Self {
        Self::surd(int(1), 5)
    }

    /// Coordinates in bitmask order.
    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn from_coords(coords: [Rational; 8]) -> Self {
        FieldElement { coords }
    }

    /// Coordinates over 1, √2, √3, √5, √6, √10, √15, √30.
    pub fn display_coords(&self) -> [Rational; 8] {
        DISPLAY_ORDER.map(|m| self.coords[m].clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// `cos(π/m)`; `m = 0` encodes ∞ and yields 1.
    pub fn cos_pi_over(m: u32) -> Option<Self> {
        Some(match m {
            0 | 1 => Self::from_int(1),
            2 => Self::zero(),
            3 => Self::from_rational(rat(1, 2)),
            4 => Self::surd(rat(1, 2), 2),
            5 => Self::from_rational(rat(1, 4)) + Self::surd(rat(1, 4), 5),
            6 => Self::surd(rat(1, 2), 3),
            _ => return None,
        })
    }

    /// `cos(2πa/n)` when it lies in the field, i.e. when the reduced
    /// denominator of `a/n` is one of 1, 2, 3, 4, 5, 6, 8, 10, 12.
    pub fn cos_two_pi_frac(a: i64, n: u64) -> Option<Self> {
        use num_integer::Integer;
        let n_i = n as i64;
        let a = a.rem_euclid(n_i);
        let g = a.gcd(&n_i).max(1);
        let (a, n) = (a / g, n_i / g);
        let a = a.min(n - a);
        let half = rat(1, 2);
        let quarter = rat(1, 4);
        Some(match (n, a) {
            (1, _) => Self::from_int(1),
            (2, _) => Self::from_int(-1),
            (3, _) => Self::from_rational(-half),
            (4, _) => Self::zero(),
            (6, _) => Self::from_rational(half),
            (5, 1) => Self::from_rational(-quarter.clone()) + Self::surd(quarter, 5),
            (5, 2) => Self::from_rational(-quarter.clone()) - Self::surd(quarter, 5),
            (8, 1) => Self::surd(half, 2),
            (8, 3) => Self::surd(-half, 2),
            (10, 1) => Self::from_rational(quarter.clone()) + Self::surd(quarter, 5),
            (10, 3) => Self::from_rational(quarter.clone()) - Self::surd(quarter, 5),
            (12, 1) => Self::surd(half, 3),
            (12, 5) => Self::surd(-half, 3),
            _ => return None,
        })
    }

    /// Galois conjugate flipping the sign of `√PRIMES[j]`.
    fn conjugate(&self, j: usize) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coords.iter_mut().enumerate() {
            if m >> j & 1 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.clone();
        let mut acc = FieldElement::one();
        for j in 0..3 {
            let c = a.conjugate(j);
            a = &a * &c;
            acc = &acc * &c;
        }
        debug_assert!(a.is_rational());
        let inv = a.coords[0].recip();
        Ok(acc.scale(&inv))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement { coords: self.coords.clone().map(|c| c * q) }
    }

    /// Enclosure with width about `2^-prec` times the coordinate sizes.
    pub fn enclose(&self, prec: u64) -> Interval {
        let mut acc = Interval::point(self.coords[0].clone());
        for m in 1..8 {
            if self.coords[m].is_zero() {
                continue;
            }
            let s = interval::sqrt_int(RADICANDS[m], prec);
            acc = acc.add(&s.scale(&self.coords[m]));
        }
        acc
    }

    /// Exact sign. Tries a floating estimate with a strict error margin
    /// first, then refines interval enclosures until zero is excluded.
    pub fn field_sign(&self) -> Sign {
        if let Some(q) = self.as_rational() {
            return q.sign();
        }
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        for m in 0..8 {
            if self.coords[m].is_zero() {
                continue;
            }
            let c = ToPrimitive::to_f64(&self.coords[m]).unwrap_or(f64::NAN);
            let t = c * (RADICANDS[m] as f64).sqrt();
            value += t;
            magnitude += t.abs();
        }
        if value.is_finite() && magnitude.is_finite() && value.abs() > 1e-12 * magnitude {
            return if value > 0.0 { Sign::Positive } else { Sign::Negative };
        }
        interval::decide_sign(|p| self.enclose(p), 64, u64::MAX / 4)
            .expect("a nonzero element of the field always has a decidable sign")
    }

    pub fn to_f64(&self) -> f64 {
        (0..8)
            .filter(|&m| !self.coords[m].is_zero())
            .map(|m| ToPrimitive::to_f64(&self.coords[m]).unwrap_or(f64::NAN) * (RADICANDS[m] as f64).sqrt())
            .sum()
    }

    /// Common denominator of all coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Sign of `x`; see [`FieldElement::field_sign`].
pub fn field_sign(x: &FieldElement) -> i8 {
    x.field_sign().to_i8()
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &m in DISPLAY_ORDER.iter() {
            let c = &self.coords[m];
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if m == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "sqrt({})", RADICANDS[m])?;
            } else {
                write!(f, "{}*sqrt({})", fmt_rational(&abs), RADICANDS[m])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut out = FieldElement::default();
        for a in 0..8 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if rhs.coords[b].is_zero() {
                    continue;
                }
                let k = mask_product(a, b);
                let mut p = &self.coords[a] * &rhs.coords[b];
                if k != 1 {
                    p *= Rational::from_integer(k.into());
                }
                out.coords[a ^ b] += p;
            }
        }
        out
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(mut self, rhs: FieldElement) -> FieldElement {
        self += &rhs;
        self
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(mut self, rhs: FieldElement) -> FieldElement {
        self -= &rhs;
        self
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        if let Some(q) = rhs.as_rational() {
            assert!(!q.is_zero(), "division by zero in the field");
            return self.scale(&q.recip());
        }
        &self * &rhs.checked_inv().expect("division by zero in the field")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coords: self.coords.map(|c| -c) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::default()
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::from_int(1)
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::from_rational(q)
    }
}

impl Scalar for FieldElement {
    fn sign(&self) -> Sign {
        self.field_sign()
    }

    fn to_f64(&self) -> f64 {
        FieldElement::to_f64(self)
    }

    fn from_i64(v: i64) -> Self {
        FieldElement::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        assert_eq!(field_sign(&FieldElement::zero()), 0);
        let x = FieldElement::sqrt2() + FieldElement::sqrt3() - FieldElement::sqrt5();
        assert_eq!(field_sign(&x), 1);
        let y = FieldElement::cos_pi_over(5).unwrap() - FieldElement::cos_pi_over(6).unwrap();
        assert_eq!(field_sign(&y), -1);
    }

    #[test]
    fn sign_of_tiny_difference_uses_intervals() {
        // (√2 + √3)² = 5 + 2√6; 5 + 2√6 − 9.898979485566356 is of order 1e-16
        let s = FieldElement::from_int(5) + FieldElement::surd(int(2), 6);
        let approx = Rational::new(9898979485566356i64.into(), 1_000_000_000_000_000i64.into());
        let d = s - FieldElement::from_rational(approx);
        assert_eq!(d.field_sign(), Sign::Positive);
    }

    #[test]
    fn products_of_surds() {
        let s6 = FieldElement::sqrt2() * FieldElement::sqrt3();
        assert_eq!(s6, FieldElement::surd(int(1), 6));
        let two = FieldElement::sqrt2() * FieldElement::sqrt2();
        assert_eq!(two, FieldElement::from_int(2));
        let s30 = FieldElement::surd(int(1), 6) * FieldElement::surd(int(1), 10);
        assert_eq!(s30, FieldElement::surd(int(2), 15));
    }

    #[test]
    fn inverse_of_golden_ratio() {
        let phi = FieldElement::cos_pi_over(5).unwrap().scale(&int(2));
        let inv = phi.checked_inv().unwrap();
        assert_eq!(inv, phi - FieldElement::one());
    }

    #[test]
    fn cosine_table_matches_floats() {
        for n in 1..=24u64 {
            for a in 0..n as i64 {
                if let Some(c) = FieldElement::cos_two_pi_frac(a, n) {
                    let f = (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos();
                    assert!((c.to_f64() - f).abs() < 1e-12, "cos 2pi {a}/{n}");
                }
            }
        }
        assert!(FieldElement::cos_two_pi_frac(1, 7).is_none());
        for m in 2..=6 {
            let c = FieldElement::cos_pi_over(m).unwrap();
            assert!((c.to_f64() - (std::f64::consts::PI / m as f64).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn display() {
        let x = FieldElement::from_rational(rat(1, 4)) - FieldElement::surd(rat(1, 4), 5);
        assert_eq!(x.to_string(), "1/4 - 1/4*sqrt(5)");
        assert_eq!(FieldElement::zero().to_string(), "0");
    }
}
