//! Gram matrices of functions on Coxeter groups and their PSD certificates.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::coxeter::{enumerate_ball, enumerate_group, Ball, Colour, CoxeterSystem, Element, Relations, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::ldlt::{bareiss_psd, numeric_psd, sparse_witness, Factorization};
use crate::matrix::Matrix;
use crate::rational::{fmt_rational, int, pow, rat, Rational};

/// Relative tolerance of the numeric eigenvalue test.
pub const NUMERIC_TOL: f64 = 1e-9;

/// A real function on a Coxeter group, described by how it depends on an
/// element.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupFunction {
    /// `q^{|w|}`, with `0⁰ = 1`.
    LengthExp(Rational),
    /// `r^{‖w‖}` where `‖w‖` is the colour-length.
    ColourExp(Rational),
    /// `∏_{s ∈ S_w} q_s`.
    Riesz(Vec<Rational>),
    /// `|ω∘|/2 - |w|` on a finite group.
    Delta,
    /// `exp(-t |w|^p)`; numeric only.
    ExpLengthPower { t: Rational, p: Rational },
    /// `exp(t Δ(w))`; numeric only.
    ExpDelta(Rational),
    /// On a rank-2 system: `1` at `e`, `p` at `s`, `q` at `t`, `r` elsewhere.
    DihedralPQR { p: Rational, q: Rational, r: Rational },
    /// `1` on `W_T`, `r` off it.
    SubgroupIndicator { t: Colour, r: Rational },
    /// Value indexed by length.
    RadialTable(Vec<Rational>),
    /// Explicit values keyed by ShortLex word; zero elsewhere.
    Table(HashMap<Vec<u8>, Rational>),
}

/// Data some functions need beyond the element itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalContext {
    pub longest: Option<usize>,
}

impl GroupFunction {
    pub fn is_exact(&self) -> bool {
        !matches!(self, GroupFunction::ExpLengthPower { .. } | GroupFunction::ExpDelta(_))
    }

    fn longest(ctx: &EvalContext) -> Result<usize> {
        ctx.longest.ok_or_else(|| Error::NotFinite("the ball (|ω∘| is undefined)".into()))
    }

    pub fn eval_exact(&self, w: &Element, ctx: &EvalContext) -> Result<Rational> {
        Ok(match self {
            GroupFunction::LengthExp(q) => pow(q, w.length),
            GroupFunction::ColourExp(r) => pow(r, w.colour_length()),
            GroupFunction::Riesz(q) => {
                let mut acc = Rational::one();
                for s in w.colour.iter() {
                    let qs = q.get(s).ok_or_else(|| Error::EvaluationError(format!("no parameter for generator {s}")))?;
                    acc *= qs;
                }
                acc
            }
            GroupFunction::Delta => rat(Self::longest(ctx)? as i64, 2) - int(w.length as i64),
            GroupFunction::ExpLengthPower { .. } | GroupFunction::ExpDelta(_) => {
                return Err(Error::EvaluationError("irrational function needs numeric mode".into()))
            }
            GroupFunction::DihedralPQR { p, q, r } => match w.word.as_slice() {
                [] => Rational::one(),
                [0] => p.clone(),
                [1] => q.clone(),
                _ => r.clone(),
            },
            GroupFunction::SubgroupIndicator { t, r } => {
                if w.colour.is_subset(*t) {
                    Rational::one()
                } else {
                    r.clone()
                }
            }
            GroupFunction::RadialTable(v) => v
                .get(w.length)
                .cloned()
                .ok_or_else(|| Error::EvaluationError(format!("radial table has no value at length {}", w.length)))?,
            GroupFunction::Table(map) => map.get(&w.word).cloned().unwrap_or_else(Rational::zero),
        })
    }

    pub fn eval_f64(&self, w: &Element, ctx: &EvalContext) -> Result<f64> {
        Ok(match self {
            GroupFunction::ExpLengthPower { t, p } => {
                let (t, p) = (t.to_f64().unwrap_or(f64::NAN), p.to_f64().unwrap_or(f64::NAN));
                (-t * (w.length as f64).powf(p)).exp()
            }
            GroupFunction::ExpDelta(t) => {
                let delta = Self::longest(ctx)? as f64 / 2.0 - w.length as f64;
                (t.to_f64().unwrap_or(f64::NAN) * delta).exp()
            }
            _ => self.eval_exact(w, ctx)?.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Witness of a failed PSD test: `vᵀMv = value < 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Exact { vector: Vec<Rational>, value: Rational },
    Numeric { vector: Vec<f64>, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PSD_exact")]
    PsdExact,
    #[serde(rename = "PSD_numeric")]
    PsdNumeric,
    #[serde(rename = "NotPSD")]
    NotPsd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdVerdict {
    pub status: Status,
    /// Smallest LDLᵀ pivot (exact route) or eigenvalue (numeric route).
    pub min_pivot_or_eig: f64,
    pub witness: Option<Witness>,
    /// Set when the matrix comes from a ball of an infinite group.
    pub note: Option<String>,
}

pub const NECESSARY_ONLY: &str = "necessary-condition check";

impl PdVerdict {
    pub fn is_psd(&self) -> bool {
        self.status != Status::NotPsd
    }

    pub fn exact_witness(&self) -> Option<(&[Rational], &Rational)> {
        match &self.witness {
            Some(Witness::Exact { vector, value }) => Some((vector, value)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = json!({ "status": self.status, "min_pivot_or_eig": self.min_pivot_or_eig });
        match &self.witness {
            Some(Witness::Exact { vector, value }) => {
                out["witness"] = json!(vector.iter().map(fmt_rational).collect::<Vec<_>>());
                out["value"] = json!(fmt_rational(value));
            }
            Some(Witness::Numeric { vector, value }) => {
                out["witness"] = json!(vector.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                out["value"] = json!(value.to_string());
            }
            None => {}
        }
        if let Some(n) = &self.note {
            out["note"] = json!(n);
        }
        out
    }
}

fn context_for(ball: &Ball) -> EvalContext {
    EvalContext { longest: ball.is_closed().then(|| ball.max_length()) }
}

fn registry_values<T>(rel: &Relations, mut f: impl FnMut(&Element) -> Result<T>) -> Result<Vec<T>> {
    rel.registry.iter().map(&mut f).collect()
}

/// `M[x][y] = φ(y⁻¹x)` over the sample of `rel`, each distinct quotient
/// evaluated once.
pub fn gram_from_relations(rel: &Relations, phi: &GroupFunction, ctx: &EvalContext) -> Result<Matrix<Rational>> {
    let values = registry_values(rel, |w| phi.eval_exact(w, ctx))?;
    let n = rel.size();
    Ok(Matrix::from_fn(n, n, |x, y| values[rel.id(x, y)].clone()))
}

pub fn gram_f64_from_relations(rel: &Relations, phi: &GroupFunction, ctx: &EvalContext) -> Result<DMatrix<f64>> {
    let values = registry_values(rel, |w| phi.eval_f64(w, ctx))?;
    let n = rel.size();
    Ok(DMatrix::from_fn(n, n, |x, y| values[rel.id(x, y)]))
}

pub fn gram(ball: &Ball, phi: &GroupFunction) -> Result<Matrix<Rational>> {
    gram_from_relations(&ball.relations(), phi, &context_for(ball))
}

pub fn gram_f64(ball: &Ball, phi: &GroupFunction) -> Result<DMatrix<f64>> {
    gram_f64_from_relations(&ball.relations(), phi, &context_for(ball))
}

fn exact_verdict(m: &Matrix<Rational>, witness: Vec<Rational>, value: Rational) -> PdVerdict {
    let check = m.quadratic_form(&witness);
    assert!(check.is_negative() && check == value, "witness failed re-verification");
    PdVerdict {
        status: Status::NotPsd,
        min_pivot_or_eig: value.to_f64().unwrap_or(f64::NEG_INFINITY),
        witness: Some(Witness::Exact { vector: witness, value }),
        note: None,
    }
}

/// Exact PSD test of a symmetric rational matrix. A witness, when returned,
/// has been checked against `m` directly.
pub fn certify_psd(m: &Matrix<Rational>) -> PdVerdict {
    assert!(m.is_symmetric(), "Gram matrix must be symmetric");
    if let Some((v, value)) = sparse_witness(m) {
        return exact_verdict(m, v, value);
    }
    match bareiss_psd(m) {
        Factorization::NotPsd { witness, value } => exact_verdict(m, witness, value),
        Factorization::Psd { pivots, .. } => PdVerdict {
            status: Status::PsdExact,
            min_pivot_or_eig: pivots.iter().min().map_or(0.0, |p| p.to_f64().unwrap_or(0.0)),
            witness: None,
            note: None,
        },
    }
}

/// Numeric PSD test: smallest eigenvalue at least `-NUMERIC_TOL · ‖M‖_∞`.
pub fn certify_psd_numeric(m: &DMatrix<f64>) -> PdVerdict {
    let (ok, lambda, v) = numeric_psd(m, NUMERIC_TOL);
    if ok {
        return PdVerdict { status: Status::PsdNumeric, min_pivot_or_eig: lambda, witness: None, note: None };
    }
    let dv = nalgebra::DVector::from_vec(v.clone());
    let value = dv.dot(&(m * &dv));
    assert!(value < 0.0, "eigenvector failed re-verification");
    PdVerdict {
        status: Status::NotPsd,
        min_pivot_or_eig: lambda,
        witness: Some(Witness::Numeric { vector: v, value }),
        note: None,
    }
}

/// Tests `phi` on a ball, choosing the exact or numeric route by the kind
/// of function. Balls that do not exhaust the group are flagged.
pub fn check_on_ball(ball: &Ball, phi: &GroupFunction) -> Result<PdVerdict> {
    let rel = ball.relations();
    let ctx = context_for(ball);
    let mut v = if phi.is_exact() {
        certify_psd(&gram_from_relations(&rel, phi, &ctx)?)
    } else {
        certify_psd_numeric(&gram_f64_from_relations(&rel, phi, &ctx)?)
    };
    if !ball.is_closed() {
        v.note = Some(NECESSARY_ONLY.to_string());
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    FullGroup,
    Ball(usize),
}

pub fn check_function(system: &CoxeterSystem, phi: &GroupFunction, scope: Scope) -> Result<PdVerdict> {
    let ball = match scope {
        Scope::FullGroup => enumerate_group(system, DEFAULT_CAP)?,
        Scope::Ball(r) => enumerate_ball(system, r, DEFAULT_CAP)?,
    };
    check_on_ball(&ball, phi)
}

/// PSD test of `Δ` on a finite group.
pub fn delta_check(group: &Ball) -> Result<PdVerdict> {
    group.require_closed()?;
    check_on_ball(group, &GroupFunction::Delta)
}

/// Numeric PSD test of `Φ_t = Σ e^{tΔ(w)} w` on a finite group.
pub fn phi_t_check(group: &Ball, t: &Rational) -> Result<PdVerdict> {
    group.require_closed()?;
    if t.is_negative() {
        return Err(Error::PrecondViolated("t must be nonnegative".into()));
    }
    check_on_ball(group, &GroupFunction::ExpDelta(t.clone()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColourCubeReport {
    pub n: usize,
    /// The quadratic form of `ColourExp(r)` at the indicator of the `w_i`,
    /// summed over the computed colour-lengths.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Rational,
    /// `n + (n² - n) r³`.
    #[serde(serialize_with = "crate::rational::serialize")]
    pub closed_form: Rational,
    pub refutes: bool,
}

/// Evaluates `Σ_{k,l} r^{‖w_l⁻¹ w_k‖}` for `w_i = s₀ s_i s₀`, after checking
/// that all the mutual colour-lengths equal 3.
pub fn neccond_colour_cube(system: &CoxeterSystem, s0: usize, leaves: &[usize], r: &Rational) -> Result<ColourCubeReport> {
    let cm = system.matrix();
    for &s in leaves {
        if s == s0 || s >= cm.rank() || s0 >= cm.rank() {
            return Err(Error::PrecondViolated(format!("bad generator {s}")));
        }
        if cm.m(s0, s) == 2 {
            return Err(Error::PrecondViolated(format!("{} commutes with {}", cm.label(s0), cm.label(s))));
        }
    }
    let ws: Vec<Element> = leaves.iter().map(|&s| system.element_of_letters(&[s0, s, s0])).collect();
    let mut value = Rational::zero();
    for (i, wi) in ws.iter().enumerate() {
        for (j, wj) in ws.iter().enumerate() {
            let q = system.quotient(wj, wi);
            let c = q.colour_length();
            if i != j && c != 3 {
                return Err(Error::PrecondViolated(format!("colour-length {c} between w_{i} and w_{j}")));
            }
            value += pow(r, c);
        }
    }
    let n = leaves.len() as i64;
    let closed_form = int(n) + int(n * n - n) * pow(r, 3);
    let refutes = value.is_negative();
    Ok(ColourCubeReport { n: leaves.len(), value, closed_form, refutes })
}

/// Splits `f: S → [-1, 1]` into Riesz parameters `(q⁺, q⁻)` with entries in
/// `[0, 1]` and `f(s) = R_{q⁺}(s) - R_{q⁻}(s)`.
pub fn weak_sidon_decompose(f: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if let Some(x) = f.iter().find(|x| x.abs() > Rational::one()) {
        return Err(Error::OutOfRange(format!("|f(s)| = {} exceeds 1", fmt_rational(&x.abs()))));
    }
    let plus = f.iter().map(|x| if x.is_positive() { x.clone() } else { Rational::zero() }).collect();
    let minus = f.iter().map(|x| if x.is_negative() { -x } else { Rational::zero() }).collect();
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn group(name: &str) -> Ball {
        enumerate_group(&CoxeterSystem::preset(name).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn trivial_grams() {
        let g = group("A2");
        let ones = gram(&g, &GroupFunction::LengthExp(int(1))).unwrap();
        assert!(ones.data().iter().all(|x| x.is_one()));
        let id = gram(&g, &GroupFunction::LengthExp(int(0))).unwrap();
        assert_eq!(id, Matrix::identity(6));
        assert_eq!(certify_psd(&id).status, Status::PsdExact);
    }

    #[test]
    fn s3_length_gram_matches_direct_products() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let g = enumerate_group(&sys, DEFAULT_CAP).unwrap();
        let q = rat(1, 3);
        let m = gram(&g, &GroupFunction::LengthExp(q.clone())).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                let (ex, ey) = (g.element(x), g.element(y));
                let inv: Vec<u8> = ey.word.iter().rev().copied().collect();
                let word: Vec<u8> = inv.iter().chain(ex.word.iter()).copied().collect();
                let len = sys.reduce(&word).len();
                assert_eq!(m[(x, y)], pow(&q, len));
            }
        }
    }

    #[test]
    fn two_by_two_witness() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(1)]]);
        let v = certify_psd(&m);
        let (w, value) = v.exact_witness().unwrap();
        assert_eq!(w, &[int(1), int(-1)]);
        assert_eq!(value, &int(-2));
        assert_eq!(v.to_json()["witness"], json!(["1", "-1"]));
    }

    #[test]
    fn exact_mode_rejects_irrational() {
        let g = group("A2");
        let phi = GroupFunction::ExpLengthPower { t: int(1), p: int(2) };
        assert!(matches!(gram(&g, &phi), Err(Error::EvaluationError(_))));
        assert!(check_on_ball(&g, &phi).unwrap().is_psd());
    }

    #[test]
    fn delta_on_small_groups() {
        let g = group("A2");
        let m = gram(&g, &GroupFunction::Delta).unwrap();
        assert_eq!(m[(0, 0)], rat(3, 2));
        assert_eq!(delta_check(&g).unwrap().status, Status::PsdExact);
        let i6 = enumerate_group(&CoxeterSystem::new(CoxeterMatrix::dihedral(6)).unwrap(), DEFAULT_CAP).unwrap();
        let m = gram(&i6, &GroupFunction::Delta).unwrap();
        assert_eq!(m[(0, 0)], int(3));
        assert_eq!(m.data().iter().min().unwrap(), &int(-3));
        assert!(delta_check(&i6).unwrap().is_psd());
        assert_eq!(phi_t_check(&i6, &int(0)).unwrap().status, Status::PsdNumeric);
    }

    #[test]
    fn infinite_dihedral_negative_r_is_refuted() {
        let sys = CoxeterSystem::preset("Dinf").unwrap();
        let phi = GroupFunction::DihedralPQR { p: int(0), q: int(0), r: rat(-1, 8) };
        let v = check_function(&sys, &phi, Scope::Ball(8)).unwrap();
        assert_eq!(v.status, Status::NotPsd);
        assert_eq!(v.note.as_deref(), Some(NECESSARY_ONLY));
        assert!(matches!(check_function(&sys, &phi, Scope::FullGroup), Err(Error::NotFinite(_))));
    }

    #[test]
    fn colour_cube_values() {
        let sys = CoxeterSystem::preset("Star3_5").unwrap();
        let leaves = [1, 2, 3, 4, 5];
        let r = rat(-1, 4);
        let rep = neccond_colour_cube(&sys, 0, &leaves, &r).unwrap();
        assert_eq!(rep.value, rep.closed_form);
        let rep = neccond_colour_cube(&sys, 0, &leaves[..2], &int(-1)).unwrap();
        assert!(rep.value.is_zero());
        let rep = neccond_colour_cube(&sys, 0, &leaves[..3], &int(0)).unwrap();
        assert_eq!(rep.value, int(3));
        assert!(matches!(neccond_colour_cube(&sys, 1, &[2], &int(0)), Err(Error::PrecondViolated(_))));
    }

    #[test]
    fn weak_sidon_examples() {
        let (p, m) = weak_sidon_decompose(&[rat(1, 2), rat(-1, 3)]).unwrap();
        assert_eq!(p, vec![rat(1, 2), int(0)]);
        assert_eq!(m, vec![int(0), rat(1, 3)]);
        let (p, m) = weak_sidon_decompose(&[int(1), int(1)]).unwrap();
        assert_eq!((p, m), (vec![int(1), int(1)], vec![int(0), int(0)]));
        assert!(weak_sidon_decompose(&[rat(3, 2)]).is_err());
    }
}
