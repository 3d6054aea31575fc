//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// `numerator / denominator` with coprime parts and canonical scaling
/// (see [`Scalar::normalize_fraction`]).
#[derive(Clone)]
pub struct RationalFunction<T: Scalar> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Polynomial::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g)?;
        let (den, _) = den.divrem(&g)?;
        let mut n = num.into_coeffs();
        let mut d = den.into_coeffs();
        T::normalize_fraction(&mut n, &mut d);
        Ok(RationalFunction { num: Polynomial::new(n), den: Polynomial::new(d) })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `x`; the fraction is already reduced, so a vanishing
    /// denominator is a genuine pole.
    pub fn eval(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleError(format!("{x:?}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// First `n` Maclaurin coefficients.
    pub fn series(&self, n: usize) -> Result<Vec<T>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleError("0".into()));
        }
        let mut out: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.degree().unwrap_or(0)) {
                acc = acc - self.den.coeff(j) * out[k - j].clone();
            }
            out.push(acc / d0.clone());
        }
        Ok(out)
    }

    /// `f(1/t)`, reduced.
    pub fn compose_reciprocal(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let num = self.num.reversed().shift(dd);
        let den = self.den.reversed().shift(dn);
        RationalFunction::new(num, den).expect("reversal of a nonzero polynomial is nonzero")
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// `Some(p)` when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial<T>> {
        (self.den.degree() == Some(0)).then(|| self.num.scale(&(T::one() / self.den.coeff(0))))
    }
}

impl<T: Scalar> PartialEq for RationalFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Scalar> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn add(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<T: Scalar> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn sub(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<T: Scalar> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn mul(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<T: Scalar> Div for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("division by the zero function")
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    type P = Polynomial<Rational>;
    type R = RationalFunction<Rational>;

    #[test]
    fn affine_weyl_value_at_minus_one() {
        let f = R::new(P::from_ints(&[1, 1, 1]), P::from_ints(&[1, -2, 1])).unwrap();
        assert_eq!(f.eval(&int(-1)).unwrap(), rat(1, 4));
        assert_eq!(f.series(5).unwrap(), [1, 3, 6, 9, 12].map(int).to_vec());
    }

    #[test]
    fn geometric_series() {
        let f = R::new(P::one(), P::from_ints(&[1, -1])).unwrap();
        assert_eq!(f.eval(&int(0)).unwrap(), int(1));
        assert!(matches!(f.eval(&int(1)), Err(Error::PoleError(_))));
        let g = &R::from_poly(P::from_ints(&[1, -1])) * &f;
        assert_eq!(g, R::from_poly(P::one()));
        assert_eq!(g.denominator(), &P::one());
    }

    #[test]
    fn removable_singularity_is_cancelled() {
        let num = &P::from_ints(&[1, 1]) * &P::from_ints(&[1, 1, 1]);
        let den = P::from_ints(&[1, -2, -2, 3]);
        let f = R::new(num, den).unwrap();
        assert_eq!(f.eval(&int(-1)).unwrap(), int(0));
        // (t-1)/(t^2-1) = 1/(t+1)
        let g = R::new(P::from_ints(&[-1, 1]), P::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(g.eval(&int(1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn normalisation_is_integral() {
        let f = R::new(P::new(vec![rat(1, 2)]), P::new(vec![rat(-1, 3), rat(-2, 3)])).unwrap();
        assert_eq!(f.numerator(), &P::from_ints(&[-3]));
        assert_eq!(f.denominator(), &P::from_ints(&[2, 4]));
    }

    #[test]
    fn reciprocal_of_rational_function() {
        let f = R::new(P::from_ints(&[1, 1, 1]), P::from_ints(&[1, -2, 1])).unwrap();
        let g = f.compose_reciprocal();
        assert_eq!(g, f);
        let h = R::from_poly(P::from_ints(&[1, 2])).compose_reciprocal();
        assert_eq!(h.eval(&int(2)).unwrap(), int(2));
    }
}
