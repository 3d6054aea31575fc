//! The scalar abstraction shared by polynomials, matrices and the LDLᵀ
//! factorisation. Exact types (`Rational`, `FieldElement`) decide signs
//! exactly; `f64` decides them naively.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Self {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A real scalar type with field operations and a sign test.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn sign(&self) -> Sign;

    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// Bring a fraction `num/den` of coefficient vectors into canonical
    /// scaling. The default makes the leading coefficient of `den` one.
    fn normalize_fraction(num: &mut [Self], den: &mut [Self]) {
        if let Some(lead) = den.last().cloned() {
            for c in num.iter_mut().chain(den.iter_mut()) {
                *c = c.clone() / lead.clone();
            }
        }
    }

    fn is_negative_exact(&self) -> bool {
        self.sign() == Sign::Negative
    }
}

impl Scalar for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    /// Integer coefficients with gcd one and a positive leading denominator
    /// coefficient.
    fn normalize_fraction(num: &mut [Self], den: &mut [Self]) {
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::one();
        for c in num.iter().chain(den.iter()) {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for c in num.iter().chain(den.iter()) {
            let v = c.numer() * (&lcm / c.denom());
            g = g.gcd(&v);
        }
        if g.is_zero() {
            return;
        }
        let mut scale = BigRational::new(lcm, g);
        if den.last().is_some_and(|c| c.is_negative()) {
            scale = -scale;
        }
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = &*c * &scale;
        }
    }
}

impl Scalar for f64 {
    fn sign(&self) -> Sign {
        if *self == 0.0 {
            Sign::Zero
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
