//! Even moments of free convolution powers of the symmetric Bernoulli law.

use serde::Serialize;

use super::{check_size, pairpartitions, parity, DEFAULT_MAX_N};
use crate::error::Result;
use crate::rational::{int, Rational};
use crate::Poly;

/// Calls `f` with the block sizes of every noncrossing partition of `{1..m}`.
///
/// Points are placed left to right. A point opens a block or joins an open
/// one; joining closes every block opened after it.
fn for_each_nc(m: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(i: usize, m: usize, sizes: &mut Vec<usize>, open: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == m {
            f(sizes);
            return;
        }
        sizes.push(1);
        open.push(sizes.len() - 1);
        rec(i + 1, m, sizes, open, f);
        open.pop();
        sizes.pop();
        for k in 0..open.len() {
            let b = open[k];
            let closed = open.split_off(k + 1);
            sizes[b] += 1;
            rec(i + 1, m, sizes, open, f);
            sizes[b] -= 1;
            open.extend(closed);
        }
    }
    rec(0, m, &mut Vec::new(), &mut Vec::new(), f);
}

pub fn nc_partition_count(m: usize) -> usize {
    let mut c = 0;
    for_each_nc(m, &mut |_| c += 1);
    c
}

/// `κ_1..κ_m` of the symmetric Bernoulli law, by Möbius inversion of
/// `m_k = Σ_{π ∈ NC(k)} Π κ_{|V|}` (moments `1` in even, `0` in odd degree).
pub fn free_cumulants(m: usize) -> Vec<Rational> {
    let mut kappa = vec![int(0); m + 1];
    for k in 1..=m {
        let moment = if k % 2 == 0 { int(1) } else { int(0) };
        let mut rest = int(0);
        for_each_nc(k, &mut |sizes| {
            if sizes.len() > 1 {
                rest += sizes.iter().fold(int(1), |acc, &s| acc * &kappa[s]);
            }
        });
        kappa[k] = moment - rest;
    }
    kappa.remove(0);
    kappa
}

/// `m_{2n}(μ^{⊞q}) = Σ_{π ∈ NC(2n)} Π_V q κ_{|V|}` as a polynomial in `q`.
pub fn cumulant_moment_poly(n: usize) -> Poly {
    let kappa = free_cumulants(2 * n);
    let mut coeffs = vec![int(0); 2 * n + 1];
    for_each_nc(2 * n, &mut |sizes| {
        let w = sizes.iter().fold(int(1), |acc, &s| acc * &kappa[s - 1]);
        coeffs[sizes.len()] += w;
    });
    Poly::new(coeffs)
}

/// `q^n Σ_{π ∈ P₂(2n)} (−1)^{|π|} q^{−‖π‖}` as a polynomial in `q`.
pub fn pairpartition_moment_poly(n: usize) -> Poly {
    let mut counts = vec![0i64; n + 1];
    for p in pairpartitions(n) {
        counts[n - p.colour_length()] += parity(p.crossings());
    }
    Poly::from_ints(&counts)
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeMomentReport {
    pub n: usize,
    pub pairpartition_side: String,
    pub cumulant_side: String,
    /// Points `q = 1..=n+2` at which both sides were evaluated.
    pub points: usize,
    pub holds: bool,
}

/// Both sides agree at `n + 2` points; each has degree at most `n`.
pub fn verify_free_moments(n: usize) -> Result<FreeMomentReport> {
    check_size(n, DEFAULT_MAX_N)?;
    let a = pairpartition_moment_poly(n);
    let b = cumulant_moment_poly(n);
    let deg_ok = a.degree().unwrap_or(0) <= n && b.degree().unwrap_or(0) <= n;
    let points = n + 2;
    let agree = (1..=points as i64).all(|q| a.eval(&int(q)) == b.eval(&int(q)));
    Ok(FreeMomentReport {
        n,
        pairpartition_side: a.to_string(),
        cumulant_side: b.to_string(),
        points,
        holds: deg_ok && agree,
    })
}

/// `m_{2n}(μ₋₁^{⊞q})`, computed from pairpartitions and checked against the
/// moment–cumulant oracle at the same `q`.
pub fn bernoulli_free_moment(n: usize, q: &Rational) -> Result<Rational> {
    check_size(n, DEFAULT_MAX_N)?;
    let value = pairpartition_moment_poly(n).eval(q);
    let oracle = cumulant_moment_poly(n).eval(q);
    assert_eq!(value, oracle, "pairpartition and cumulant moments disagree at n = {n}");
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn nc_counts_are_catalan() {
        let c: Vec<usize> = (0..=8).map(nc_partition_count).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn bernoulli_cumulants() {
        let k = free_cumulants(6);
        assert_eq!(k, vec![int(0), int(1), int(0), int(-1), int(0), int(2)]);
    }

    #[test]
    fn low_moments() {
        assert_eq!(bernoulli_free_moment(1, &rat(3, 7)).unwrap(), rat(3, 7));
        for n in 1..=4 {
            assert_eq!(bernoulli_free_moment(n, &int(1)).unwrap(), int(1));
            assert!(verify_free_moments(n).unwrap().holds);
        }
        assert_eq!(pairpartition_moment_poly(2), cumulant_moment_poly(2));
    }
}
