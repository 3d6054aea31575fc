//! `L^p` norms in the group von Neumann algebra of a finite Coxeter group
//! and Khinchine ratios for sums over the generators.

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::Ball;
use crate::error::{Error, Result};
use crate::pd::{check_on_ball, GroupFunction, PdVerdict, Status, NUMERIC_TOL};
use crate::rational::{int, Rational};

/// Largest `|W|` (times the matrix size, for matrix coefficients) accepted
/// by the singular-value routes.
pub const MAX_ORDER: usize = 2000;

/// Largest `|W|` for which scans also compute exact even moments.
pub const EXACT_MAX_ORDER: usize = 200;

/// `Σ c_g λ(g)`, indexed like the elements of the group it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraElement {
    pub coefficients: Vec<Rational>,
}

fn require_group(group: &Ball, factor: usize) -> Result<()> {
    group.require_closed()?;
    if group.len() * factor > MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "regular representation of size {} exceeds {MAX_ORDER}",
            group.len() * factor
        )));
    }
    Ok(())
}

fn product(group: &Ball, x: usize, y: usize) -> usize {
    group.product(x, y).expect("closed group is closed under products")
}

impl GroupAlgebraElement {
    pub fn zero(group: &Ball) -> Self {
        GroupAlgebraElement { coefficients: vec![int(0); group.len()] }
    }

    pub fn delta(group: &Ball, i: usize) -> Self {
        let mut f = Self::zero(group);
        f.coefficients[i] = int(1);
        f
    }

    /// `Σ_s a_s λ(s)`, one coefficient per generator.
    pub fn generator_sum(group: &Ball, a: &[Rational]) -> Result<Self> {
        if a.len() != group.rank() {
            return Err(Error::PrecondViolated(format!("{} coefficients for rank {}", a.len(), group.rank())));
        }
        let mut f = Self::zero(group);
        for (s, c) in a.iter().enumerate() {
            let i = group.right_mul(0, s).expect("generators lie in the group");
            f.coefficients[i] = c.clone();
        }
        Ok(f)
    }

    /// Exact convolution product in the group algebra.
    pub fn convolve(&self, other: &Self, group: &Ball) -> Self {
        let mut out = Self::zero(group);
        for (x, a) in self.coefficients.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (y, b) in other.coefficients.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.coefficients[product(group, x, y)] += a * b;
            }
        }
        out
    }

    /// `f*(g) = c_{g⁻¹}` (real coefficients).
    pub fn adjoint(&self, group: &Ball) -> Self {
        let mut out = Self::zero(group);
        for (x, a) in self.coefficients.iter().enumerate() {
            out.coefficients[group.inverse(x)] = a.clone();
        }
        out
    }

    /// `Σ c_g²`
    pub fn l2_norm_squared(&self) -> Rational {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// The matrix of left convolution by `self` on `ℓ²(W)`.
    pub fn regular_matrix(&self, group: &Ball) -> DMatrix<f64> {
        let n = group.len();
        let mut m = DMatrix::zeros(n, n);
        for (g, c) in self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let c = c.to_f64().unwrap_or(f64::NAN);
            for y in 0..n {
                m[(product(group, g, y), y)] += c;
            }
        }
        m
    }
}

/// `(1/|W| · Σ σ_i^p)^{1/p}` over the singular values of `m`, a matrix of
/// size `k|W|`.
fn schatten_normalized(m: DMatrix<f64>, order: usize, p: f64) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0.0;
    }
    // scale to avoid overflow at large p
    let s: f64 = sv.iter().map(|x| (x / max).powf(p)).sum();
    max * (s / order as f64).powf(1.0 / p)
}

/// `‖f‖_{L^p}` with respect to the normalized trace, via singular values.
pub fn lp_norm(group: &Ball, f: &GroupAlgebraElement, p: f64) -> Result<f64> {
    require_group(group, 1)?;
    if p < 2.0 {
        return Err(Error::PrecondViolated(format!("p = {p} < 2")));
    }
    Ok(schatten_normalized(f.regular_matrix(group), group.len(), p))
}

/// `τ((f*f)^{p/2}) = ‖f‖_{L^p}^p` exactly, for even `p`.
pub fn lp_norm_even_exact(group: &Ball, f: &GroupAlgebraElement, p: u32) -> Result<Rational> {
    group.require_closed()?;
    if p < 2 || p % 2 == 1 {
        return Err(Error::PrecondViolated(format!("p = {p} is not an even integer ≥ 2")));
    }
    let h = f.adjoint(group).convolve(f, group);
    let mut acc = h.clone();
    for _ in 1..p / 2 {
        acc = acc.convolve(&h, group);
    }
    Ok(acc.coefficients[0].clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct KhinchineReport {
    pub p: f64,
    /// `max(‖(Σ a_s a_s*)^{1/2}‖_p, ‖(Σ a_s* a_s)^{1/2}‖_p)`, the `ℓ²` norm
    /// for scalars.
    pub lhs: f64,
    /// `‖Σ a_s ⊗ λ(s)‖_{L^p}`
    pub mid: f64,
    pub ratio: f64,
    pub ratio_over_sqrt_p: f64,
    /// `‖·‖_p^p` as an exact rational, for even `p` with scalar coefficients.
    pub exact_p_power: Option<String>,
    /// `lhs ≤ mid + 10⁻⁹`
    pub left_inequality: bool,
}

impl KhinchineReport {
    fn new(p: f64, lhs: f64, mid: f64, exact: Option<Rational>) -> Self {
        let ratio = mid / lhs;
        KhinchineReport {
            p,
            lhs,
            mid,
            ratio,
            ratio_over_sqrt_p: ratio / p.sqrt(),
            exact_p_power: exact.map(|q| crate::rational::fmt_rational(&q)),
            left_inequality: lhs <= mid + NUMERIC_TOL,
        }
    }

    pub const CSV_HEADER: &'static str = "p,lhs,mid,ratio,ratio_over_sqrt_p";

    pub fn csv_row(&self) -> String {
        format!("{},{:.12},{:.12},{:.12},{:.12}", self.p, self.lhs, self.mid, self.ratio, self.ratio_over_sqrt_p)
    }
}

fn is_even_integer(p: f64) -> Option<u32> {
    (p >= 2.0 && p.fract() == 0.0 && p % 2.0 == 0.0 && p <= 64.0).then_some(p as u32)
}

/// Khinchine ratios for scalar coefficients, one report per `p`.
pub fn khinchine_scan(group: &Ball, a: &[Rational], ps: &[f64]) -> Result<Vec<KhinchineReport>> {
    require_group(group, 1)?;
    let f = GroupAlgebraElement::generator_sum(group, a)?;
    let lhs = f.l2_norm_squared().to_f64().unwrap_or(f64::NAN).sqrt();
    let m = f.regular_matrix(group);
    ps.par_iter()
        .map(|&p| {
            if p < 2.0 {
                return Err(Error::PrecondViolated(format!("p = {p} < 2")));
            }
            let mid = schatten_normalized(m.clone(), group.len(), p);
            let exact = is_even_integer(p)
                .filter(|_| group.len() <= EXACT_MAX_ORDER)
                .map(|k| lp_norm_even_exact(group, &f, k))
                .transpose()?;
            Ok(KhinchineReport::new(p, lhs, mid, exact))
        })
        .collect()
}

/// Schatten `p`-norm (unnormalized trace) of `M^{1/2}` for symmetric PSD `M`.
fn sqrt_schatten(m: DMatrix<f64>, p: f64) -> f64 {
    let ev = m.symmetric_eigenvalues();
    ev.iter().map(|&x| x.max(0.0).powf(p / 2.0)).sum::<f64>().powf(1.0 / p)
}

/// Khinchine ratios for real `k × k` coefficients (`k ≤ 4`), with the
/// trace `Tr ⊗ τ` on `M_k ⊗ L(W)`.
pub fn khinchine_scan_matrix(group: &Ball, a: &[DMatrix<f64>], ps: &[f64]) -> Result<Vec<KhinchineReport>> {
    if a.len() != group.rank() {
        return Err(Error::PrecondViolated(format!("{} coefficients for rank {}", a.len(), group.rank())));
    }
    let k = a.first().map_or(1, DMatrix::nrows);
    if k == 0 || k > 4 || a.iter().any(|m| m.shape() != (k, k)) {
        return Err(Error::PrecondViolated("coefficients must be square matrices of one size k ≤ 4".into()));
    }
    require_group(group, k)?;
    let n = group.len();
    let mut big = DMatrix::zeros(k * n, k * n);
    for (s, c) in a.iter().enumerate() {
        let g = group.right_mul(0, s).expect("generators lie in the group");
        for y in 0..n {
            let x = product(group, g, y);
            big.view_mut((k * x, k * y), (k, k)).copy_from(c);
        }
    }
    let row: DMatrix<f64> = a.iter().map(|c| c * c.transpose()).fold(DMatrix::zeros(k, k), |acc, m| acc + m);
    let col: DMatrix<f64> = a.iter().map(|c| c.transpose() * c).fold(DMatrix::zeros(k, k), |acc, m| acc + m);
    ps.par_iter()
        .map(|&p| {
            if p < 2.0 {
                return Err(Error::PrecondViolated(format!("p = {p} < 2")));
            }
            let lhs = sqrt_schatten(row.clone(), p).max(sqrt_schatten(col.clone(), p));
            // Tr ⊗ τ: the 1/|W| normalisation only
            let mid = schatten_normalized(big.clone(), n, p);
            Ok(KhinchineReport::new(p, lhs, mid, None))
        })
        .collect()
}

/// `R_q = Σ_w (Π_{s ∈ S_w} q_s) λ(w)`.
pub fn riesz_operator(group: &Ball, q: &[Rational]) -> Result<GroupAlgebraElement> {
    group.require_closed()?;
    if q.len() != group.rank() {
        return Err(Error::PrecondViolated(format!("{} parameters for rank {}", q.len(), group.rank())));
    }
    let coefficients = group
        .elements()
        .iter()
        .map(|w| w.colour.iter().fold(int(1), |acc, s| acc * &q[s]))
        .collect();
    Ok(GroupAlgebraElement { coefficients })
}

/// `Π_i (1 + q_i λ(r_i))`, multiplied out in the group algebra.
pub fn riesz_product(group: &Ball, q: &[Rational]) -> Result<GroupAlgebraElement> {
    group.require_closed()?;
    let mut acc = GroupAlgebraElement::delta(group, 0);
    for (s, qs) in q.iter().enumerate() {
        let mut factor = GroupAlgebraElement::delta(group, 0);
        factor.coefficients[group.right_mul(0, s).expect("generator")] = qs.clone();
        acc = acc.convolve(&factor, group);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct RieszOperatorReport {
    /// Smallest eigenvalue of the convolution operator.
    pub min_eigenvalue: f64,
    pub operator_psd: bool,
    #[serde(skip)]
    pub gram: PdVerdict,
    pub gram_status: Status,
    pub agree: bool,
}

/// Compares positivity of `λ(R_q)` with the exact Gram certificate.
pub fn riesz_cross_check(group: &Ball, q: &[Rational]) -> Result<RieszOperatorReport> {
    let f = riesz_operator(group, q)?;
    let m = f.regular_matrix(group);
    let sym = (&m + m.transpose()) * 0.5;
    let min = sym.symmetric_eigenvalues().min();
    let operator_psd = min >= -NUMERIC_TOL * m.abs().row_sum().max().max(1.0);
    let gram = check_on_ball(group, &GroupFunction::Riesz(q.to_vec()))?;
    let agree = operator_psd == gram.is_psd();
    Ok(RieszOperatorReport { min_eigenvalue: min, operator_psd, gram_status: gram.status, gram, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_group, CoxeterSystem, DEFAULT_CAP};
    use crate::rational::rat;

    fn group(name: &str) -> Ball {
        enumerate_group(&CoxeterSystem::preset(name).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn unitaries_have_norm_one() {
        let g = group("A3");
        for i in [0, 5, 17] {
            let f = GroupAlgebraElement::delta(&g, i);
            for p in [2.0, 3.5, 8.0] {
                assert!((lp_norm(&g, &f, p).unwrap() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rademacher_sum_at_p2() {
        let g = group("Rad3");
        let f = GroupAlgebraElement::generator_sum(&g, &[int(1), int(1), int(1)]).unwrap();
        assert!((lp_norm(&g, &f, 2.0).unwrap() - 3f64.sqrt()).abs() < 1e-9);
        // E(Σ ε_i)⁴ = 3·3² − 2·3
        assert_eq!(lp_norm_even_exact(&g, &f, 4).unwrap(), int(21));
    }

    #[test]
    fn scan_on_a3() {
        let g = group("A3");
        let r = khinchine_scan(&g, &vec![int(1); 3], &[2.0, 4.0, 6.0, 8.0]).unwrap();
        assert!((r[0].ratio - 1.0).abs() < 1e-9);
        for w in r.windows(2) {
            assert!(w[1].mid >= w[0].mid - 1e-9);
        }
        for x in &r {
            assert!(x.left_inequality);
            if let Some(e) = &x.exact_p_power {
                let e: f64 = crate::rational::parse_rational(e).unwrap().to_f64().unwrap();
                assert!((e.powf(1.0 / x.p) - x.mid).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn matrix_coefficients_reduce_to_scalars() {
        let g = group("I2(5)");
        let a = [DMatrix::identity(2, 2) * 0.5, DMatrix::identity(2, 2) * 2.0];
        let m = khinchine_scan_matrix(&g, &a, &[4.0]).unwrap();
        let s = khinchine_scan(&g, &[rat(1, 2), int(2)], &[4.0]).unwrap();
        // identity coefficients double the trace on both sides
        assert!((m[0].ratio - s[0].ratio).abs() < 1e-9);
    }

    #[test]
    fn riesz_product_on_rad2() {
        let g = group("Rad2");
        let q = [rat(1, 3), rat(-2, 5)];
        assert_eq!(riesz_operator(&g, &q).unwrap(), riesz_product(&g, &q).unwrap());
        let ones = riesz_operator(&g, &[int(1), int(1)]).unwrap();
        assert!(ones.coefficients.iter().all(|c| *c == int(1)));
        let zero = riesz_operator(&g, &[int(0), int(0)]).unwrap();
        assert_eq!(zero, GroupAlgebraElement::delta(&g, 0));
        assert!(riesz_cross_check(&g, &q).unwrap().agree);
        assert!(riesz_cross_check(&g, &[int(2), int(0)]).unwrap().agree);
    }
}
