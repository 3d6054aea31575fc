//! Growth series, coset series, chromatic series and their identities.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coxeter::{
    coset_min_reps, enumerate_ball, enumerate_group, longest_element, parabolic_is_finite, Ball, Colour,
    CoxeterMatrix, CoxeterSystem, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::{Poly, RatFunc};

/// Coefficient of `t^k` is the number of elements of length `k`.
pub fn growth_poly(group: &Ball) -> Result<Poly> {
    group.require_closed()?;
    Ok(Poly::new(group.layer_sizes().iter().map(|&c| int(c as i64)).collect()))
}

/// Growth polynomial of the finite parabolic subgroup `W_T`.
pub fn parabolic_growth(cm: &CoxeterMatrix, t: Colour) -> Result<Poly> {
    match cm.restrict(t) {
        None => Ok(Poly::one()),
        Some(sub) => growth_poly(&enumerate_group(&CoxeterSystem::new(sub)?, DEFAULT_CAP)?),
    }
}

/// The family of generator subsets spanning finite parabolic subgroups.
pub fn finite_subsets(cm: &CoxeterMatrix) -> Result<Vec<Colour>> {
    let mut out = Vec::new();
    for t in Colour::all_subsets(cm.rank()) {
        if parabolic_is_finite(cm, t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `1/W(t) = Σ_{T finite} (-1)^{#T} / W_T(1/t)`, summed exactly.
pub fn serre_series(cm: &CoxeterMatrix) -> Result<RatFunc> {
    let mut acc = RatFunc::from_poly(Poly::zero());
    for t in finite_subsets(cm)? {
        let wt = parabolic_growth(cm, t)?;
        let term = wt.compose_reciprocal().recip()?;
        acc = if t.len() % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc.recip()
}

/// `W(t)`: the growth polynomial for finite `W`, Serre's formula otherwise.
pub fn growth_series(cm: &CoxeterMatrix) -> Result<RatFunc> {
    if parabolic_is_finite(cm, Colour::full(cm.rank()))? {
        Ok(RatFunc::from_poly(parabolic_growth(cm, Colour::full(cm.rank()))?))
    } else {
        serre_series(cm)
    }
}

/// `W^T(t) = W(t) / W_T(t)` for finite `W_T`, evaluated at `x`.
pub fn coset_series(cm: &CoxeterMatrix, t: Colour) -> Result<RatFunc> {
    if !parabolic_is_finite(cm, t)? {
        return Err(Error::PrecondViolated("the parabolic subgroup must be finite".into()));
    }
    let w = growth_series(cm)?;
    let wt = RatFunc::from_poly(parabolic_growth(cm, t)?);
    Ok(&w / &wt)
}

pub fn coset_series_value(cm: &CoxeterMatrix, t: Colour, x: &Rational) -> Result<Rational> {
    coset_series(cm, t)?.eval(x)
}

/// BFS layer counts `|{w : |w| = k}|` for `k <= radius`.
pub fn layer_counts(cm: &CoxeterMatrix, radius: usize) -> Result<Vec<u64>> {
    let ball = enumerate_ball(&CoxeterSystem::new(cm.clone())?, radius, DEFAULT_CAP)?;
    let mut out: Vec<u64> = ball.layer_sizes().iter().map(|&c| c as u64).collect();
    out.resize(radius + 1, 0);
    Ok(out)
}

/// Number of elements by (length, colour) in a ball.
fn colour_length_counts(ball: &Ball) -> HashMap<(usize, Colour), u64> {
    let mut counts = HashMap::new();
    for e in ball.elements() {
        *counts.entry((e.length, e.colour)).or_insert(0) += 1;
    }
    counts
}

fn colour_weight(c: Colour, q: &[Rational]) -> Rational {
    c.iter().fold(Rational::one(), |acc, s| acc * &q[s])
}

/// `W(t, q) = Σ_w t^{|w|} Π_{s ∈ S_w} q_s` over a finite group.
pub fn chromatic_poly(group: &Ball, q: &[Rational]) -> Result<Poly> {
    group.require_closed()?;
    Ok(chromatic_truncated(group, q))
}

fn chromatic_truncated(ball: &Ball, q: &[Rational]) -> Poly {
    let mut coeffs = vec![Rational::zero(); ball.max_length() + 1];
    for ((k, c), n) in colour_length_counts(ball) {
        coeffs[k] += colour_weight(c, q) * int(n as i64);
    }
    Poly::new(coeffs)
}

/// `Σ_T W_T(t) Π_{r∈T} q_r Π_{s∉T} (1 - q_s)` with each `W_T` given.
fn chromatic_rhs(rank: usize, parts: &[(Colour, Poly)], q: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (t, wt) in parts {
        let mut w = Rational::one();
        for s in 0..rank {
            if t.contains(s) {
                w *= &q[s];
            } else {
                w *= Rational::one() - &q[s];
            }
        }
        acc = &acc + &wt.scale(&w);
    }
    acc
}

/// Distinct sample values for each variable.
fn sample_points(count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            let v = Rational::new((2 * i as i64 + 1).into(), (i as i64 + 2).into());
            if i % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// The product grid of `per_var` points in each of `rank` variables.
fn grid_points(rank: usize, per_var: usize) -> Vec<Vec<Rational>> {
    let pts = sample_points(per_var);
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Both sides are multilinear in `q`, so any product grid with at least two
/// points per variable certifies the identity. Uses `#S + 2` points per
/// variable while the grid stays below `limit` evaluations, else two.
fn identity_grid(rank: usize, limit: usize) -> Vec<Vec<Rational>> {
    let wanted = rank + 2;
    let per_var = if (wanted as f64).powi(rank as i32) <= limit as f64 { wanted } else { 2 };
    grid_points(rank, per_var)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChromaticReport {
    pub holds: bool,
    pub points_checked: usize,
    /// Degree up to which coefficients were compared (`None`: all).
    pub truncated_at: Option<usize>,
}

/// The parabolic decomposition of the chromatic series on a finite group.
pub fn chromatic_identity_check(group: &Ball) -> Result<ChromaticReport> {
    group.require_closed()?;
    let cm = group.coxeter_matrix();
    let mut parts = Vec::new();
    for t in Colour::all_subsets(cm.rank()) {
        parts.push((t, parabolic_growth(cm, t)?));
    }
    let grid = identity_grid(cm.rank(), 20_000);
    let holds = grid
        .iter()
        .all(|q| chromatic_truncated(group, q) == chromatic_rhs(cm.rank(), &parts, q));
    Ok(ChromaticReport { holds, points_checked: grid.len(), truncated_at: None })
}

/// The same identity coefficient-wise up to `t^radius` on any system, with
/// every `W_T` truncated through its own ball.
pub fn chromatic_identity_check_truncated(cm: &CoxeterMatrix, radius: usize) -> Result<ChromaticReport> {
    let system = CoxeterSystem::new(cm.clone())?;
    let ball = enumerate_ball(&system, radius, DEFAULT_CAP)?;
    let mut parts = Vec::new();
    for t in Colour::all_subsets(cm.rank()) {
        let wt = match cm.restrict(t) {
            None => Poly::one(),
            Some(sub) => {
                let b = enumerate_ball(&CoxeterSystem::new(sub)?, radius, DEFAULT_CAP)?;
                Poly::new(b.layer_sizes().iter().map(|&c| int(c as i64)).collect())
            }
        };
        parts.push((t, wt));
    }
    let grid = identity_grid(cm.rank(), 5_000);
    let holds = grid.iter().all(|q| {
        let lhs = chromatic_truncated(&ball, q).truncate(radius + 1);
        let rhs = chromatic_rhs(cm.rank(), &parts, q).truncate(radius + 1);
        lhs == rhs
    });
    Ok(ChromaticReport { holds, points_checked: grid.len(), truncated_at: Some(radius) })
}

#[derive(Debug, Clone, Serialize)]
pub struct WatMinusOne {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `W(-1, q)` against `Π (1 - q_s)`.
pub fn wat_minus_one(group: &Ball, q: &[Rational]) -> Result<WatMinusOne> {
    let lhs = chromatic_poly(group, q)?.eval(&int(-1));
    let rhs = q.iter().fold(Rational::one(), |acc, x| acc * (Rational::one() - x));
    Ok(WatMinusOne { holds: lhs == rhs, lhs, rhs })
}

#[derive(Debug, Clone, Serialize)]
pub struct EngReport {
    pub t: Vec<usize>,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lhs: Rational,
    /// `#{w ∈ W^T : w⁻¹ ω∘ w ∈ W_T}`.
    pub rhs: u64,
    /// `#{w ∈ W^T : w ω∘ w ∈ W_T}`; differs from `lhs` already for `T = ∅` on `𝔖₄`.
    pub rhs_unconjugated: u64,
    pub holds: bool,
}

/// `W^T(-1)` against the number of minimal coset representatives that
/// conjugate `ω∘` into `W_T`.
pub fn eng_check(group: &Ball, t: Colour) -> Result<EngReport> {
    let reps = coset_min_reps(group, t)?;
    let w0 = longest_element(group)?;
    let lhs = reps
        .iter()
        .map(|&w| if group.element(w).length % 2 == 0 { 1i64 } else { -1 })
        .sum::<i64>();
    let in_t = |x: usize| group.element(x).colour.is_subset(t);
    let (mut rhs, mut rhs_unconjugated) = (0u64, 0u64);
    for &w in &reps {
        let a = group.product(w, w0).expect("closed group");
        if in_t(group.product(a, w).expect("closed group")) {
            rhs_unconjugated += 1;
        }
        let b = group.product(group.inverse(w), w0).expect("closed group");
        if in_t(group.product(b, w).expect("closed group")) {
            rhs += 1;
        }
    }
    let lhs = int(lhs);
    Ok(EngReport { t: t.iter().collect(), holds: lhs == int(rhs as i64), lhs, rhs, rhs_unconjugated })
}

#[derive(Debug, Clone, Serialize)]
pub struct WMinusOneEntry {
    pub matrix: Vec<Vec<u32>>,
    pub finite: bool,
    pub series: String,
    /// `None` when `t = -1` is a pole.
    #[serde(serialize_with = "crate::rational::serialize_opt")]
    pub value: Option<Rational>,
}

/// `W(-1)` for every rank-3 Coxeter matrix with labels drawn from `labels`
/// (up to relabelling the generators). Purely a report; no claim is attached.
pub fn wminus1_scan(labels: &[u32]) -> Result<Vec<WMinusOneEntry>> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &a in labels {
        for &b in labels {
            for &c in labels {
                let mut key = [a, b, c];
                key.sort_unstable();
                if !seen.insert(key) {
                    continue;
                }
                let cm = CoxeterMatrix::new(vec![vec![1, a, b], vec![a, 1, c], vec![b, c, 1]])?;
                let finite = parabolic_is_finite(&cm, Colour::full(3))?;
                let series = growth_series(&cm)?;
                out.push(WMinusOneEntry {
                    matrix: cm.entries().to_vec(),
                    finite,
                    series: series.to_string(),
                    value: series.eval(&int(-1)).ok(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn group(name: &str) -> Ball {
        enumerate_group(&CoxeterSystem::preset(name).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn growth_examples() {
        assert_eq!(growth_poly(&group("Rad2")).unwrap(), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(growth_poly(&group("A2")).unwrap(), Poly::from_ints(&[1, 2, 2, 1]));
        assert_eq!(growth_poly(&group("I2(5)")).unwrap(), Poly::from_ints(&[1, 2, 2, 2, 2, 1]));
    }

    #[test]
    fn affine_series() {
        let cm = CoxeterMatrix::preset("Atilde2").unwrap();
        let w = serre_series(&cm).unwrap();
        let expect = RatFunc::new(Poly::from_ints(&[1, 1, 1]), Poly::from_ints(&[1, -2, 1])).unwrap();
        assert_eq!(w, expect);
        assert_eq!(w.eval(&int(-1)).unwrap(), rat(1, 4));
    }

    #[test]
    fn infinite_dihedral_series() {
        let cm = CoxeterMatrix::preset("Dinf").unwrap();
        let w = serre_series(&cm).unwrap();
        assert_eq!(w, RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[1, -1])).unwrap());
        let v = coset_series_value(&cm, Colour::singleton(0), &int(-1)).unwrap();
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn serre_agrees_for_finite_groups() {
        for name in ["A1", "A2", "B3", "I2(5)", "Rad3"] {
            let cm = CoxeterMatrix::preset(name).unwrap();
            let g = parabolic_growth(&cm, Colour::full(cm.rank())).unwrap();
            assert_eq!(serre_series(&cm).unwrap(), RatFunc::from_poly(g), "{name}");
        }
    }

    #[test]
    fn chromatic_small_cases() {
        let g = group("A2");
        let (a, b) = (rat(2, 3), rat(-1, 5));
        let p = chromatic_poly(&g, &[a.clone(), b.clone()]).unwrap();
        let ab = &a * &b;
        let expect = Poly::new(vec![int(1), &a + &b, &ab * int(2), ab]);
        assert_eq!(p, expect);
        assert_eq!(chromatic_poly(&g, &[int(0), int(0)]).unwrap(), Poly::one());
        assert!(chromatic_identity_check(&g).unwrap().holds);
    }

    #[test]
    fn eng_on_s3() {
        let g = group("A2");
        for t in Colour::all_subsets(2) {
            assert!(eng_check(&g, t).unwrap().holds);
        }
    }
}
