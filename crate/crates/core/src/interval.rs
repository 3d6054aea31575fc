//! Rational interval arithmetic with dyadic outward rounding.
//!
//! Every function here returns an interval that is guaranteed to contain the
//! true real value; the width is at most a small multiple of `2^-prec`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Sign;

type Rational = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn dyadic(n: BigInt, bits: u64) -> Rational {
    Rational::new(n, pow2(bits))
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    /// `[mid - rad, mid + rad]`
    pub fn around(mid: Rational, rad: Rational) -> Self {
        Interval { lo: &mid - &rad, hi: mid + rad }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    /// The sign of every point of the interval, if it is uniform and nonzero,
    /// or zero when the interval is the single point 0.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        use crate::scalar::Scalar;
        ((&self.lo + &self.hi) / Rational::from_integer(2.into())).to_f64()
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Reciprocal of an interval not containing zero.
    pub fn recip(&self) -> Interval {
        assert!(self.sign().is_some_and(|s| s != Sign::Zero), "reciprocal of an interval containing 0");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    /// Widens the endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u64) -> Interval {
        let scale = Rational::from_integer(pow2(bits));
        let lo = (&self.lo * &scale).floor().to_integer();
        let hi = (&self.hi * &scale).ceil().to_integer();
        Interval { lo: dyadic(lo, bits), hi: dyadic(hi, bits) }
    }
}

/// Enclosure of `sqrt(k)`.
pub fn sqrt_int(k: u64, prec: u64) -> Interval {
    nth_root(&BigInt::from(k), 2, prec)
}

/// Enclosure of `x^(1/b)` for a nonnegative integer `x`.
pub fn nth_root(x: &BigInt, b: u32, prec: u64) -> Interval {
    assert!(!x.is_negative());
    let scaled = x << (prec * b as u64);
    let s = scaled.nth_root(b);
    if num_traits::pow(s.clone(), b as usize) == scaled {
        Interval::point(dyadic(s, prec))
    } else {
        Interval::new(dyadic(s.clone(), prec), dyadic(s + 1, prec))
    }
}

/// `sum_k (-1)^k x^-(2k+1) / (2k+1)` in fixed point with `w` fractional bits.
fn atan_inv_fixed(x: u64, w: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = pow2(w) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

/// Enclosure of pi via Machin's formula.
pub fn pi(prec: u64) -> Interval {
    let w = prec + 40;
    let v = atan_inv_fixed(5, w) * 16 - atan_inv_fixed(239, w) * 4;
    // truncation error is far below 2^-(prec+16)
    Interval::around(dyadic(v, w), dyadic(BigInt::one(), prec + 16))
}

/// Taylor cosine of a fixed-point argument `y * 2^-w` with `0 <= y <= 4`.
fn cos_fixed(y: &BigInt, w: u64) -> BigInt {
    let one = pow2(w);
    let y2 = (y * y) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u64 = 1;
    loop {
        term = (&term * &y2) >> w;
        term /= BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

/// Enclosure of `cos(2 pi a / n)`.
pub fn cos_two_pi_frac(a: i64, n: u64, prec: u64) -> Interval {
    assert!(n > 0);
    let n_i = n as i64;
    let mut a = a.rem_euclid(n_i);
    if 2 * a > n_i {
        a = n_i - a;
    }
    // angle theta = 2 pi a / n in [0, pi]
    let w = prec + 48;
    let p = pi(w);
    let factor = Rational::new(BigInt::from(2 * a), BigInt::from(n));
    let theta = p.scale(&factor);
    let mid = (&theta.lo + &theta.hi) / Rational::from_integer(2.into());
    let rad = (&theta.hi - &theta.lo) / Rational::from_integer(2.into());
    let y = (&mid * Rational::from_integer(pow2(w))).floor().to_integer();
    let c = cos_fixed(&y, w);
    // |cos'| <= 1: argument error (rad + one ulp) plus accumulated rounding.
    let err = rad + dyadic(BigInt::from(1u64 << 20), w);
    Interval::around(dyadic(c, w), err).round_out(prec + 8)
}

/// Enclosure of `exp(x)` for rational `x`.
pub fn exp(x: &Rational, prec: u64) -> Interval {
    if x.is_negative() {
        return exp(&-x, prec + 8).recip().round_out(prec + 8);
    }
    if x.is_zero() {
        return Interval::point(Rational::one());
    }
    // reduce to z = x / 2^r <= 1/2
    let mut r: u64 = 0;
    let half = Rational::new(1.into(), 2.into());
    let mut z = x.clone();
    while z > half {
        z /= Rational::from_integer(2.into());
        r += 1;
    }
    let mag = x.ceil().to_integer().bits();
    let w = prec + r + 2 * mag + 64;
    let zf = (&z * Rational::from_integer(pow2(w))).floor().to_integer();
    let zf_hi = &zf + 1;
    let series = |zz: &BigInt| -> (BigInt, u64) {
        let mut term = pow2(w);
        let mut sum = term.clone();
        let mut k: u64 = 1;
        loop {
            term = (&term * zz) >> w;
            term /= BigInt::from(k);
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        (sum, k)
    };
    let (lo_sum, _) = series(&zf);
    let (hi_sum, terms) = series(&zf_hi);
    // every truncation loses < 1 ulp per term; tail bounded by 2 ulps
    let lo = dyadic(lo_sum, w);
    let hi = dyadic(hi_sum + BigInt::from(terms + 2), w);
    let mut acc = Interval::new(lo, hi);
    for _ in 0..r {
        acc = acc.mul(&acc).round_out(w);
    }
    acc.round_out(prec + 8)
}

/// Enclosure of `k^(num/den)` for integers `k >= 0`, `num >= 0`, `den >= 1`.
pub fn int_power_rational(k: u64, num: u32, den: u32, prec: u64) -> Interval {
    let base = num_traits::pow(BigInt::from(k), num as usize);
    nth_root(&base, den, prec)
}

/// Sign of a value known only through a refinable enclosure. Returns `None`
/// when `max_prec` is reached without excluding zero.
pub fn decide_sign<F>(mut enclose: F, start_prec: u64, max_prec: u64) -> Option<Sign>
where
    F: FnMut(u64) -> Interval,
{
    let mut prec = start_prec;
    loop {
        if let Some(s) = enclose(prec).sign() {
            return Some(s);
        }
        if prec >= max_prec {
            return None;
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn contains(i: &Interval, x: f64, tol: f64) -> bool {
        i.lo.to_f64() <= x + tol && x - tol <= i.hi.to_f64()
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!(contains(&p, std::f64::consts::PI, 1e-15));
        assert!(p.width() < dyadic(BigInt::one(), 190));
    }

    #[test]
    fn sqrt_exact_and_inexact() {
        assert_eq!(sqrt_int(9, 64), Interval::point(Rational::from_integer(3.into())));
        let s = sqrt_int(2, 64);
        assert!(contains(&s, std::f64::consts::SQRT_2, 1e-15));
        assert!(s.sign() == Some(Sign::Positive));
    }

    #[test]
    fn cosines() {
        for n in 1..=13u64 {
            for a in 0..n as i64 {
                let c = cos_two_pi_frac(a, n, 128);
                let expect = (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos();
                assert!(contains(&c, expect, 1e-14), "cos(2pi {a}/{n})");
                assert!(c.width() < dyadic(BigInt::one(), 100));
            }
        }
    }

    #[test]
    fn exponentials() {
        for (x, expect) in [(0.0f64, 1.0f64), (1.0, 1.0f64.exp()), (-1.0, (-1.0f64).exp()), (-4.0, (-4.0f64).exp())] {
            let q = Rational::from_float(x).unwrap();
            let e = exp(&q, 128);
            assert!(contains(&e, expect, 1e-14 * expect.max(1.0)), "exp({x})");
        }
        let e = exp(&Rational::from_integer((-144).into()), 200);
        assert!(e.lo.is_positive());
        assert!(contains(&e, (-144.0f64).exp(), 1e-70));
    }

    #[test]
    fn fractional_powers() {
        let r = int_power_rational(7, 1, 2, 100);
        assert!(contains(&r, 7f64.sqrt(), 1e-15));
        let r = int_power_rational(5, 3, 1, 10);
        assert_eq!(r, Interval::point(Rational::from_integer(125.into())));
    }
}
