//! Positive-semidefiniteness tests by symmetric Gaussian elimination.
//!
//! Two exact routes exist: a division-based LDLᵀ generic over [`Scalar`]
//! and a fraction-free (Bareiss) integer elimination for rational input.
//! Both return a witness `v` with `vᵀMv < 0` when the matrix is not PSD.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, PartialEq)]
pub enum Factorization<T> {
    /// All pivots are positive; `rank` counts them.
    Psd { pivots: Vec<T>, rank: usize },
    NotPsd { witness: Vec<T>, value: T },
}

impl<T> Factorization<T> {
    pub fn is_psd(&self) -> bool {
        matches!(self, Factorization::Psd { .. })
    }
}

/// Reconstructs a full witness from one on the final Schur complement.
/// `steps` holds, per eliminated pivot, the multipliers `l_i = S_ip / S_pp`.
fn back_substitute<T: Scalar>(n: usize, y: Vec<(usize, T)>, steps: &[(usize, Vec<(usize, T)>)]) -> Vec<T> {
    let mut x = vec![T::zero(); n];
    for (i, v) in y {
        x[i] = v;
    }
    for (p, ls) in steps.iter().rev() {
        let mut acc = T::zero();
        for (i, l) in ls {
            if !x[*i].is_zero() {
                acc = acc + l.clone() * x[*i].clone();
            }
        }
        x[*p] = -acc;
    }
    x
}

/// Witness on a Schur complement whose remaining diagonal is nonnegative:
/// a zero diagonal entry `i` with `S_ij != 0`. Returns `y` on {i, j}.
fn zero_diagonal_witness<T: Scalar>(
    remaining: &[usize],
    get: impl Fn(usize, usize) -> T,
) -> Option<Vec<(usize, T)>> {
    for &i in remaining {
        if get(i, i).sign() != Sign::Zero {
            continue;
        }
        for &j in remaining {
            if j == i {
                continue;
            }
            let sij = get(i, j);
            let s = sij.sign();
            if s == Sign::Zero {
                continue;
            }
            // y = c e_i - sign(S_ij) e_j with c = S_jj/|S_ij| + 1 gives
            // yᵀSy = -S_jj - 2|S_ij| < 0.
            let abs = if s == Sign::Negative { -sij } else { sij };
            let c = get(j, j) / abs + T::one();
            let yj = if s == Sign::Positive { -T::one() } else { T::one() };
            return Some(vec![(i, c), (j, yj)]);
        }
    }
    None
}

/// Division-based LDLᵀ with diagonal pivoting.
pub fn ldlt<T: Scalar>(m: &Matrix<T>) -> Factorization<T> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps: Vec<(usize, Vec<(usize, T)>)> = Vec::new();
    let mut pivots = Vec::new();
    loop {
        if let Some(&i) = remaining.iter().find(|&&i| a[(i, i)].sign() == Sign::Negative) {
            let x = back_substitute(n, vec![(i, T::one())], &steps);
            let value = m.quadratic_form(&x);
            return Factorization::NotPsd { witness: x, value };
        }
        if let Some(pos) = remaining.iter().position(|&i| a[(i, i)].sign() == Sign::Positive) {
            let p = remaining.remove(pos);
            let app = a[(p, p)].clone();
            let ls: Vec<(usize, T)> = remaining
                .iter()
                .map(|&i| (i, a[(i, p)].clone() / app.clone()))
                .collect();
            for (ii, (i, li)) in ls.iter().enumerate() {
                if li.is_zero() {
                    continue;
                }
                for &j in &remaining[ii..] {
                    let v = a[(*i, j)].clone() - li.clone() * a[(p, j)].clone();
                    a[(*i, j)] = v.clone();
                    a[(j, *i)] = v;
                }
            }
            steps.push((p, ls));
            pivots.push(app);
            continue;
        }
        if let Some(y) = zero_diagonal_witness(&remaining, |i, j| a[(i, j)].clone()) {
            let x = back_substitute(n, y, &steps);
            let value = m.quadratic_form(&x);
            return Factorization::NotPsd { witness: x, value };
        }
        let rank = pivots.len();
        return Factorization::Psd { pivots, rank };
    }
}

/// Strict positive definiteness via [`ldlt`].
pub fn is_positive_definite<T: Scalar>(m: &Matrix<T>) -> bool {
    matches!(ldlt(m), Factorization::Psd { rank, .. } if rank == m.rows())
}

/// Primitive integer multiple of a rational vector (same direction).
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Fraction-free symmetric elimination of `lcm · M` over the integers.
///
/// After eliminating pivots with values `D_1, …, D_k` every remaining entry is
/// `D_k` times the corresponding Schur complement entry, so signs can be read
/// directly. Pivots in the result are the rational Schur pivots of `M`.
pub fn bareiss_psd(m: &Matrix<Rational>) -> Factorization<Rational> {
    assert!(m.is_square());
    let n = m.rows();
    let lcm = m.data().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: Vec<BigInt> = m.data().iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d_prev = BigInt::one();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps: Vec<(usize, Vec<(usize, Rational)>)> = Vec::new();
    let mut pivots = Vec::new();
    let scale = Rational::from_integer(lcm.clone());
    let finish = |y: Vec<(usize, Rational)>, steps: &[(usize, Vec<(usize, Rational)>)]| {
        let x = primitive(&back_substitute(n, y, steps));
        let value = m.quadratic_form(&x);
        Factorization::NotPsd { witness: x, value }
    };
    loop {
        if let Some(&i) = remaining.iter().find(|&&i| a[idx(i, i)].is_negative()) {
            return finish(vec![(i, Rational::one())], &steps);
        }
        if let Some(pos) = remaining.iter().position(|&i| a[idx(i, i)].is_positive()) {
            let p = remaining.remove(pos);
            let app = a[idx(p, p)].clone();
            let ls: Vec<(usize, Rational)> = remaining
                .iter()
                .map(|&i| (i, Rational::new(a[idx(i, p)].clone(), app.clone())))
                .collect();
            for (ii, &i) in remaining.iter().enumerate() {
                let aip = a[idx(i, p)].clone();
                for &j in &remaining[ii..] {
                    let mut v = &app * &a[idx(i, j)];
                    let apj = &a[idx(p, j)];
                    if !aip.is_zero() && !apj.is_zero() {
                        v -= &aip * apj;
                    }
                    if !d_prev.is_one() {
                        v /= &d_prev;
                    }
                    a[idx(j, i)] = v.clone();
                    a[idx(i, j)] = v;
                }
            }
            pivots.push(Rational::new(app.clone(), d_prev.clone()) / &scale);
            d_prev = app;
            steps.push((p, ls));
            continue;
        }
        let get = |i: usize, j: usize| Rational::from_integer(a[idx(i, j)].clone());
        if let Some(y) = zero_diagonal_witness(&remaining, get) {
            return finish(y, &steps);
        }
        let rank = pivots.len();
        return Factorization::Psd { pivots, rank };
    }
}

/// Looks for a witness supported on one or two coordinates: the most
/// negative diagonal entry, the most negative `e_i ∓ e_j`, or failing that a
/// negative 2×2 principal minor.
pub fn sparse_witness(m: &Matrix<Rational>) -> Option<(Vec<Rational>, Rational)> {
    let n = m.rows();
    let unit = |pairs: &[(usize, Rational)]| {
        let mut v = vec![Rational::zero(); n];
        for (i, x) in pairs {
            v[*i] = x.clone();
        }
        v
    };
    let mut best: Option<(Vec<(usize, Rational)>, Rational)> = None;
    for i in 0..n {
        let d = &m[(i, i)];
        if d.is_negative() && best.as_ref().is_none_or(|(_, b)| d < b) {
            best = Some((vec![(i, Rational::one())], d.clone()));
        }
    }
    if best.is_none() {
        for i in 0..n {
            for j in i + 1..n {
                let off = &m[(i, j)];
                if off.is_zero() {
                    continue;
                }
                let val = &m[(i, i)] + &m[(j, j)] - off.abs() * Rational::from_integer(2.into());
                if val.is_negative() && best.as_ref().is_none_or(|(_, b)| &val < b) {
                    let sj = if off.is_positive() { -Rational::one() } else { Rational::one() };
                    best = Some((vec![(i, Rational::one()), (j, sj)], val));
                }
            }
        }
    }
    if best.is_none() {
        'outer: for i in 0..n {
            for j in i + 1..n {
                let det = &m[(i, i)] * &m[(j, j)] - &m[(i, j)] * &m[(i, j)];
                if det.is_negative() && m[(j, j)].is_positive() {
                    let v = vec![(i, m[(j, j)].clone()), (j, -m[(i, j)].clone())];
                    best = Some((v, &m[(j, j)] * det));
                    break 'outer;
                }
            }
        }
    }
    best.map(|(pairs, _)| {
        let v = primitive(&unit(&pairs));
        let value = m.quadratic_form(&v);
        (v, value)
    })
}

/// Smallest eigenvalue and its eigenvector.
pub fn min_eigen(m: &DMatrix<f64>) -> (f64, Vec<f64>) {
    if m.nrows() == 0 {
        return (0.0, Vec::new());
    }
    let eig = SymmetricEigen::new(m.clone());
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty spectrum");
    (lambda, eig.eigenvectors.column(k).iter().copied().collect())
}

/// Numeric PSD test with tolerance `-rel_tol · ‖M‖_∞`.
pub fn numeric_psd(m: &DMatrix<f64>, rel_tol: f64) -> (bool, f64, Vec<f64>) {
    let norm = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let (lambda, v) = min_eigen(m);
    (lambda >= -rel_tol * norm.max(1.0), lambda, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn identity_is_psd() {
        let id = Matrix::<Rational>::identity(4);
        assert!(bareiss_psd(&id).is_psd());
        assert!(ldlt(&id).is_psd());
        assert!(sparse_witness(&id).is_none());
    }

    #[test]
    fn two_by_two_counterexample() {
        let a = m(&[&[1, 2], &[2, 1]]);
        let (v, val) = sparse_witness(&a).unwrap();
        assert_eq!(v, vec![int(1), int(-1)]);
        assert_eq!(val, int(-2));
        for f in [bareiss_psd(&a), ldlt(&a)] {
            match f {
                Factorization::NotPsd { witness, value } => {
                    assert!(value.is_negative());
                    assert_eq!(a.quadratic_form(&witness), value);
                }
                _ => panic!("expected a witness"),
            }
        }
    }

    #[test]
    fn zero_diagonal_block() {
        let a = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 0]]);
        for f in [bareiss_psd(&a), ldlt(&a)] {
            let Factorization::NotPsd { witness, value } = f else { panic!() };
            assert!(value.is_negative());
            assert_eq!(a.quadratic_form(&witness), value);
        }
    }

    #[test]
    fn singular_psd() {
        let a = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(bareiss_psd(&a), Factorization::Psd { pivots: vec![int(1)], rank: 1 });
    }

    #[test]
    fn pivots_agree_between_routes() {
        let a = Matrix::from_rows(vec![
            vec![int(4), rat(1, 2), int(1)],
            vec![rat(1, 2), int(3), rat(-1, 3)],
            vec![int(1), rat(-1, 3), int(2)],
        ]);
        let Factorization::Psd { pivots: p1, .. } = bareiss_psd(&a) else { panic!() };
        let Factorization::Psd { pivots: p2, .. } = ldlt(&a) else { panic!() };
        assert_eq!(p1, p2);
    }

    #[test]
    fn field_gram_of_h3_is_definite() {
        let c5 = FieldElement::cos_pi_over(5).unwrap();
        let h = rat(-1, 2);
        let g = Matrix::from_rows(vec![
            vec![FieldElement::one(), -c5.clone(), FieldElement::zero()],
            vec![-c5, FieldElement::one(), FieldElement::from_rational(h.clone())],
            vec![FieldElement::zero(), FieldElement::from_rational(h), FieldElement::one()],
        ]);
        assert!(is_positive_definite(&g));
    }
}
