//! Radial positive definite functions on `Rad_n = (ℤ/2)ⁿ`: the extreme
//! profiles, decomposition into them, complete monotonicity, and truncated
//! moment problems on `[-1, 1]`.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coxeter::{enumerate_group, CoxeterSystem, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::interval::{exp, int_power_rational, Interval};
use crate::matrix::Matrix;
use crate::pd::{check_on_ball, certify_psd, GroupFunction, PdVerdict};
use crate::rational::{binomial, fmt_rational, round_decimal, Rational};

/// Number of grid atoms used to exhibit a representing measure.
pub const GRID_ATOMS: usize = 2001;

fn ratio(n: num_bigint::BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `f^n_l(k) = C(n,l)⁻¹ Σ_i (-1)^i C(k,i) C(n-k,l-i)`.
pub fn f_nl(n: usize, l: usize, k: usize) -> Result<Rational> {
    if l > n || k > n {
        return Err(Error::IndexOutOfRange(format!("need l, k <= n = {n}, got l = {l}, k = {k}")));
    }
    let (n64, l64, k64) = (n as u64, l as u64, k as u64);
    let mut acc = num_bigint::BigInt::zero();
    for i in 0..=l64 {
        let term = binomial(k64, i) * binomial(n64 - k64, l64 - i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(ratio(acc) / ratio(binomial(n64, l64)))
}

/// `B[k][l] = f^n_l(k)`.
pub fn basis_matrix(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n + 1, n + 1, |k, l| f_nl(n, l, k).expect("indices in range"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexDecomposition {
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub lambda: Vec<Rational>,
    pub feasible: bool,
}

fn require_normalised(profile: &[Rational]) -> Result<()> {
    match profile.first() {
        Some(f0) if f0.is_one() => Ok(()),
        Some(f0) => Err(Error::PrecondViolated(format!("profile has f(0) = {}", fmt_rational(f0)))),
        None => Err(Error::PrecondViolated("empty profile".into())),
    }
}

/// Coordinates of a radial profile on `Rad_n` (`n = len - 1`) in the basis
/// `f^n_0, …, f^n_n`; feasible when all are nonnegative.
pub fn simplex_decompose(profile: &[Rational]) -> Result<SimplexDecomposition> {
    require_normalised(profile)?;
    let n = profile.len() - 1;
    let lambda = basis_matrix(n).solve(profile).ok_or(Error::SingularBasis)?;
    let feasible = lambda.iter().all(|x| !x.is_negative());
    Ok(SimplexDecomposition { lambda, feasible })
}

/// The exact PSD test of the radial function on the whole of `Rad_n`.
pub fn radial_pd_check(profile: &[Rational]) -> Result<PdVerdict> {
    let n = profile.len().checked_sub(1).ok_or_else(|| Error::PrecondViolated("empty profile".into()))?;
    if n == 0 {
        return Ok(certify_psd(&Matrix::from_rows(vec![vec![profile[0].clone()]])));
    }
    let sys = CoxeterSystem::preset(&format!("Rad{n}"))?;
    let group = enumerate_group(&sys, DEFAULT_CAP)?;
    check_on_ball(&group, &GroupFunction::RadialTable(profile.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub holds: bool,
    /// First `(k, n)` with `(-1)^k Δ^k a_n < 0`.
    pub violation: Option<(usize, usize)>,
    pub depth: usize,
}

/// Checks `(-1)^k Δ^k a_n ≥ 0` for `k ≤ depth` and every `n` with `n + k`
/// inside the sequence.
pub fn is_completely_monotone(a: &[Rational], depth: usize) -> MonotonicityReport {
    let mut diff: Vec<Rational> = a.to_vec();
    for k in 0..=depth {
        if let Some(n) = diff.iter().position(|x| x.is_negative()) {
            return MonotonicityReport { holds: false, violation: Some((k, n)), depth };
        }
        if diff.len() < 2 {
            break;
        }
        // (-1)^{k+1} Δ^{k+1} a_n = (-1)^k Δ^k a_n - (-1)^k Δ^k a_{n+1}
        diff = diff.windows(2).map(|w| &w[0] - &w[1]).collect();
    }
    MonotonicityReport { holds: true, violation: None, depth }
}

/// `exp(-t k^p)` for `k = 0..len`, rounded to `digits` decimals.
pub fn exp_power_profile(t: &Rational, p: &Rational, len: usize, digits: u32) -> Result<Vec<Rational>> {
    if p.is_negative() || t.is_negative() {
        return Err(Error::PrecondViolated("t and p must be nonnegative".into()));
    }
    let (num, den) = (
        p.numer().to_u32().ok_or_else(|| Error::OutOfRange("exponent numerator".into()))?,
        p.denom().to_u32().ok_or_else(|| Error::OutOfRange("exponent denominator".into()))?,
    );
    let prec = 4 * digits as u64 + 64;
    let mid = |i: &Interval| (&i.lo + &i.hi) / Rational::from_integer(2.into());
    (0..len)
        .map(|k| {
            if k == 0 {
                return Ok(Rational::one());
            }
            let kp = mid(&int_power_rational(k as u64, num, den, prec));
            Ok(round_decimal(&mid(&exp(&-(t * kp), prec)), digits))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum MomentVerdict {
    Feasible {
        /// `(atom, weight)` pairs of a representing measure.
        atoms: Vec<(f64, f64)>,
        residual: f64,
    },
    Infeasible {
        condition: String,
        #[serde(serialize_with = "crate::rational::serialize_vec")]
        witness: Vec<Rational>,
        #[serde(serialize_with = "crate::rational::serialize")]
        value: Rational,
    },
}

impl MomentVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, MomentVerdict::Feasible { .. })
    }
}

fn hankel(f: &[Rational], size: usize, weight: &[(usize, i64)]) -> Matrix<Rational> {
    Matrix::from_fn(size, size, |i, j| {
        weight.iter().fold(Rational::zero(), |acc, &(shift, c)| acc + &f[i + j + shift] * Rational::from_integer(c.into()))
    })
}

/// The localising Hankel matrices whose joint PSD-ness characterises
/// moment sequences of probability measures on `[-1, 1]`.
fn moment_conditions(f: &[Rational]) -> Vec<(&'static str, Matrix<Rational>)> {
    let n = f.len() - 1;
    if n % 2 == 0 {
        let m = n / 2;
        let mut out = vec![("H", hankel(f, m + 1, &[(0, 1)]))];
        if m > 0 {
            out.push(("H(1-x^2)", hankel(f, m, &[(0, 1), (2, -1)])));
        }
        out
    } else {
        let m = (n - 1) / 2;
        vec![("H(1+x)", hankel(f, m + 1, &[(0, 1), (1, 1)])), ("H(1-x)", hankel(f, m + 1, &[(0, 1), (1, -1)]))]
    }
}

/// Lawson–Hanson nonnegative least squares.
fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    let tol = 1e-13;
    for _ in 0..3 * n.max(10) {
        let w = a.transpose() * (b - a * &x);
        let Some(j) = (0..n).filter(|&j| !passive[j] && w[j] > tol).max_by(|&i, &j| w[i].total_cmp(&w[j])) else {
            break;
        };
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let sub = DMatrix::from_fn(a.nrows(), idx.len(), |r, c| a[(r, idx[c])]);
            let sol = sub.svd(true, true).solve(b, 1e-15).expect("SVD with both factors");
            let mut z = DVector::zeros(n);
            for (c, &i) in idx.iter().enumerate() {
                z[i] = sol[c];
            }
            if idx.iter().all(|&i| z[i] > 0.0) {
                x = z;
                break;
            }
            let alpha = idx
                .iter()
                .filter(|&&i| z[i] <= 0.0)
                .map(|&i| x[i] / (x[i] - z[i]))
                .fold(f64::INFINITY, f64::min);
            x = &x + (z - &x) * alpha;
            for &i in &idx {
                if x[i] <= tol {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    x
}

/// Real roots in `[-1, 1]` of the kernel polynomial of the first singular
/// leading block of the Hankel matrix: the support of the unique measure.
fn kernel_atoms(f: &[Rational]) -> Vec<f64> {
    let m = (f.len() - 1) / 2;
    let h = hankel(f, m + 1, &[(0, 1)]);
    for r in 1..=m {
        let lead: Vec<usize> = (0..r).collect();
        let block = h.principal(&(0..=r).collect::<Vec<_>>());
        let Some(c) = h.principal(&lead).solve(&(0..r).map(|i| -h[(i, r)].clone()).collect::<Vec<_>>()) else {
            return Vec::new();
        };
        let mut v = c.clone();
        v.push(Rational::one());
        if block.mul_vec(&v).iter().all(Zero::is_zero) {
            let coeffs: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            let companion = DMatrix::from_fn(r, r, |i, j| {
                if j == r - 1 {
                    -coeffs[i]
                } else if i == j + 1 {
                    1.0
                } else {
                    0.0
                }
            });
            return companion
                .complex_eigenvalues()
                .iter()
                .filter(|z| z.im.abs() < 1e-9 && z.re.abs() <= 1.0 + 1e-9)
                .map(|z| z.re.clamp(-1.0, 1.0))
                .collect();
        }
    }
    Vec::new()
}

/// Decides whether `f(0..=N)` are the moments of a probability measure on
/// `[-1, 1]`. Feasible profiles come with a discrete representing measure.
pub fn moment_feasible_pm1(profile: &[Rational]) -> Result<MomentVerdict> {
    require_normalised(profile)?;
    for (name, h) in moment_conditions(profile) {
        let v = certify_psd(&h);
        if let Some((w, value)) = v.exact_witness() {
            return Ok(MomentVerdict::Infeasible { condition: name.into(), witness: w.to_vec(), value: value.clone() });
        }
    }
    let b = DVector::from_iterator(profile.len(), profile.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)));
    // a singular Hankel block pins the measure down to the kernel roots
    let kernel = kernel_atoms(profile);
    if !kernel.is_empty() {
        let fit = fit_atoms(&kernel, &b);
        if fit.1 < 1e-9 {
            return Ok(MomentVerdict::Feasible { atoms: fit.0, residual: fit.1 });
        }
    }
    let grid: Vec<f64> = (0..GRID_ATOMS).map(|j| -1.0 + 2.0 * j as f64 / (GRID_ATOMS - 1) as f64).collect();
    let (atoms, residual) = fit_atoms(&grid, &b);
    Ok(MomentVerdict::Feasible { atoms, residual })
}

fn fit_atoms(atoms: &[f64], b: &DVector<f64>) -> (Vec<(f64, f64)>, f64) {
    let a = DMatrix::from_fn(b.len(), atoms.len(), |k, j| atoms[j].powi(k as i32));
    let w = nnls(&a, b);
    let residual = (&a * &w - b).amax();
    let support = atoms.iter().zip(w.iter()).filter(|(_, &wt)| wt > 0.0).map(|(&x, &wt)| (x, wt)).collect();
    (support, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, pow, rat};

    #[test]
    fn extreme_profiles() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(f_nl(n, 0, k).unwrap(), int(1));
                assert_eq!(f_nl(n, n, k).unwrap(), if k % 2 == 0 { int(1) } else { int(-1) });
            }
        }
        let v: Vec<_> = (0..3).map(|k| f_nl(2, 1, k).unwrap()).collect();
        assert_eq!(v, vec![int(1), int(0), int(-1)]);
        assert!(matches!(f_nl(2, 3, 0), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn decompositions() {
        let n = 3;
        for l in 0..=n {
            let prof: Vec<_> = (0..=n).map(|k| f_nl(n, l, k).unwrap()).collect();
            let d = simplex_decompose(&prof).unwrap();
            let unit: Vec<_> = (0..=n).map(|i| if i == l { int(1) } else { int(0) }).collect();
            assert_eq!(d.lambda, unit);
        }
        let geo: Vec<_> = (0..=3).map(|k| pow(&rat(1, 2), k)).collect();
        assert!(simplex_decompose(&geo).unwrap().feasible);
        assert!(radial_pd_check(&geo).unwrap().is_psd());
        let bad = vec![int(1), int(1), int(1), int(-1)];
        assert!(!simplex_decompose(&bad).unwrap().feasible);
        assert!(!radial_pd_check(&bad).unwrap().is_psd());
    }

    #[test]
    fn monotone_sequences() {
        let q = rat(2, 5);
        let geo: Vec<_> = (0..12).map(|k| pow(&q, k)).collect();
        assert!(is_completely_monotone(&geo, 6).holds);
        assert!(is_completely_monotone(&vec![int(1); 12], 6).holds);
        let gauss = exp_power_profile(&int(1), &int(2), 12, 30).unwrap();
        let rep = is_completely_monotone(&gauss, 6);
        assert!(!rep.holds);
        assert!(rep.violation.is_some());
    }

    #[test]
    fn moments() {
        let third: Vec<_> = (0..8).map(|k| pow(&rat(1, 3), k)).collect();
        match moment_feasible_pm1(&third).unwrap() {
            MomentVerdict::Feasible { atoms, residual } => {
                assert!(residual < 1e-9, "{residual} {atoms:?}");
                assert!(atoms.iter().any(|(x, w)| (x - 1.0 / 3.0).abs() < 1e-9 && (w - 1.0).abs() < 1e-6));
            }
            v => panic!("{v:?}"),
        }
        assert!(moment_feasible_pm1(&vec![int(1); 7]).unwrap().is_feasible());
        let gauss = exp_power_profile(&int(1), &int(2), 11, 30).unwrap();
        assert!(!moment_feasible_pm1(&gauss).unwrap().is_feasible());
        let two: Vec<_> = (0..5).map(|k| pow(&int(2), k)).collect();
        assert!(!moment_feasible_pm1(&two).unwrap().is_feasible());
    }
}
