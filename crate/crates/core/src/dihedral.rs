//! The three-parameter family `φ(e)=1, φ(s)=p, φ(t)=q, φ(w)=r` on dihedral
//! groups: closed-form positive-definiteness regions, Fourier transforms and
//! the witnesses used on the infinite dihedral group.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::coxeter::{CoxeterSystem, DihedralElement, Element, Relations};
use crate::field::FieldElement;
use crate::interval::{self, decide_sign, Interval};
use crate::ldlt::primitive;
use crate::pd::{certify_psd, gram_from_relations, EvalContext, GroupFunction};
use crate::poly::Polynomial;
use crate::rational::{fmt_rational, int, rat, Rational};
use crate::scalar::Sign;

/// Distance from zero below which a decided constraint is still flagged.
pub const BOUNDARY_EPS: f64 = 1e-20;

const START_PREC: u64 = 128;
const MAX_PREC: u64 = 8192;

pub fn pqr(p: &Rational, q: &Rational, r: &Rational) -> GroupFunction {
    GroupFunction::DihedralPQR { p: p.clone(), q: q.clone(), r: r.clone() }
}

/// How the sign of a constraint was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    Rational,
    Field,
    Interval,
}

/// Sign of `a0 + a1 cos(2πa/n)`, exactly when the cosine lies in the field
/// and by refined enclosures otherwise.
fn sign_with_cos(a0: &Rational, a1: &Rational, a: i64, n: u64) -> (Option<Sign>, Evaluation, f64) {
    let approx = a0.to_f64().unwrap_or(f64::NAN)
        + a1.to_f64().unwrap_or(f64::NAN) * (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos();
    if a1.is_zero() {
        return (Some(crate::scalar::Scalar::sign(a0)), Evaluation::Rational, approx);
    }
    if let Some(c) = FieldElement::cos_two_pi_frac(a, n) {
        let v = FieldElement::from_rational(a0.clone()) + c.scale(a1);
        let eval = if v.is_rational() { Evaluation::Rational } else { Evaluation::Field };
        return (Some(v.field_sign()), eval, v.to_f64());
    }
    let enclose = |prec: u64| Interval::point(a0.clone()).add(&interval::cos_two_pi_frac(a, n, prec).scale(a1));
    (decide_sign(enclose, START_PREC, MAX_PREC), Evaluation::Interval, approx)
}

/// One inequality `value ≥ 0` of a region description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    /// Approximate value of the left-hand side.
    pub margin: f64,
    /// `None` when the sign could not be decided.
    pub holds: Option<bool>,
    pub evaluation: Evaluation,
}

impl ConstraintCheck {
    fn rational(name: impl Into<String>, v: Rational) -> Self {
        ConstraintCheck {
            name: name.into(),
            margin: v.to_f64().unwrap_or(f64::NAN),
            holds: Some(!v.is_negative()),
            evaluation: Evaluation::Rational,
        }
    }

    fn with_cos(name: impl Into<String>, a0: &Rational, a1: &Rational, a: i64, n: u64) -> Self {
        let (sign, evaluation, margin) = sign_with_cos(a0, a1, a, n);
        ConstraintCheck { name: name.into(), margin, holds: sign.map(|s| s != Sign::Negative), evaluation }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionStatus {
    Inside,
    Outside,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub status: RegionStatus,
    pub violated: Vec<String>,
    pub constraints: Vec<ConstraintCheck>,
    /// Some nonzero constraint value lies within [`BOUNDARY_EPS`] of zero.
    pub near_boundary: bool,
}

impl RegionReport {
    fn from_checks(constraints: Vec<ConstraintCheck>) -> Self {
        let violated: Vec<String> =
            constraints.iter().filter(|c| c.holds == Some(false)).map(|c| c.name.clone()).collect();
        let undecided = constraints.iter().any(|c| c.holds.is_none());
        let near_boundary = constraints.iter().any(|c| c.margin != 0.0 && c.margin.abs() < BOUNDARY_EPS);
        let status = if !violated.is_empty() {
            RegionStatus::Outside
        } else if undecided {
            RegionStatus::Boundary
        } else {
            RegionStatus::Inside
        };
        RegionReport { status, violated, constraints, near_boundary }
    }

    pub fn inside(&self) -> bool {
        self.status == RegionStatus::Inside
    }
}

/// Positive-definiteness of the family on the dihedral group of order `2n`,
/// read off its Fourier transform.
pub fn finite_region_check(n: u64, p: &Rational, q: &Rational, r: &Rational) -> RegionReport {
    assert!(n >= 2, "dihedral order must be at least 4");
    let one = Rational::one();
    let mut checks = vec![
        ConstraintCheck::rational("chi++", &one + p + q + int(2 * n as i64 - 3) * r),
        ConstraintCheck::rational("chi--", &one - p - q + r),
    ];
    if n % 2 == 0 {
        checks.push(ConstraintCheck::rational("chi+-", &one + p - q - r));
        checks.push(ConstraintCheck::rational("chi-+", &one - p + q - r));
    }
    if n >= 3 {
        checks.push(ConstraintCheck::rational("U trace", &one - r));
        // |p-r + (q-r)e^{iθ}|² ≤ (1-r)², expanded as a0 + a1 cos θ ≥ 0
        let (x, y, z) = (p - r, q - r, &one - r);
        let a0 = &z * &z - &x * &x - &y * &y;
        let a1 = -int(2) * &x * &y;
        for a in 1..=(n as i64 - 1) / 2 {
            checks.push(ConstraintCheck::with_cos(format!("U_{a}"), &a0, &a1, a, n));
        }
    }
    RegionReport::from_checks(checks)
}

/// Positive-definiteness on the infinite dihedral group.
pub fn infinite_region_check(p: &Rational, q: &Rational, r: &Rational) -> RegionReport {
    let one = Rational::one();
    RegionReport::from_checks(vec![
        ConstraintCheck::rational("r >= 0", r.clone()),
        ConstraintCheck::rational("r >= p+q-1", r - p - q + &one),
        ConstraintCheck::rational("r <= 1-|p-q|", &one - (p - q).abs() - r),
        ConstraintCheck::rational("3r <= 1+p+q", &one + p + q - int(3) * r),
    ])
}

/// Vertices `(p, r)` of the region of `p = q` on the dihedral group of
/// order `2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    pub n: u64,
    pub exact: Option<[(FieldElement, FieldElement); 3]>,
    pub numeric: [(f64, f64); 3],
}

impl Triangle {
    pub fn to_json(&self) -> serde_json::Value {
        let verts: Vec<_> = match &self.exact {
            Some(v) => v.iter().map(|(p, r)| json!([p.to_string(), r.to_string()])).collect(),
            None => self.numeric.iter().map(|(p, r)| json!([p, r])).collect(),
        };
        json!({ "n": self.n, "exact": self.exact.is_some(), "vertices": verts, "numeric": self.numeric })
    }
}

pub fn colour_radial_triangle(n: u64) -> Triangle {
    assert!(n >= 3, "the triangle needs n >= 3");
    let nn = n as i64;
    let v2 = (rat(nn - 2, 2 * nn - 2), rat(-1, nn - 1));
    let num = |c: f64| {
        let d = 1.0 + (2 * nn - 1) as f64 * c;
        [((1 - nn) as f64 - c) / d, (1.0 - c) / d]
    };
    let c = (std::f64::consts::PI / n as f64).cos();
    let [p1, r1] = num(c);
    let numeric = [(p1, r1), (v2.0.to_f64().unwrap(), v2.1.to_f64().unwrap()), (1.0, 1.0)];
    let exact = u32::try_from(n).ok().and_then(FieldElement::cos_pi_over).map(|c| {
        let d = (FieldElement::one() + c.scale(&int(2 * nn - 1))).checked_inv().expect("positive denominator");
        let p = &(FieldElement::from_int(1 - nn) - c.clone()) * &d;
        let r = &(FieldElement::one() - c) * &d;
        [
            (p, r),
            (FieldElement::from_rational(v2.0.clone()), FieldElement::from_rational(v2.1.clone())),
            (FieldElement::one(), FieldElement::one()),
        ]
    });
    Triangle { n, exact, numeric }
}

/// `max{(-2p-1)/(2n-3), 2p-1} ≤ r ≤ (1 + 2p cos(π/n)) / (1 + 2 cos(π/n))`.
pub fn in_colour_radial_triangle(n: u64, p: &Rational, r: &Rational) -> bool {
    assert!(n >= 3);
    let lower = r >= &(-(int(2) * p + int(1)) / int(2 * n as i64 - 3)) && r >= &(int(2) * p - int(1));
    if !lower {
        return false;
    }
    // (1 + 2pc) - r(1 + 2c) = (1 - r) + 2(p - r)c
    let (sign, _, _) = sign_with_cos(&(int(1) - r), &(int(2) * (p - r)), 1, 2 * n);
    sign.expect("a0 + a1 cos(π/n) = 0 only when both vanish") != Sign::Negative
}

/// Element of `ℚ(ζ_n)`, stored reduced modulo the cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Cyclotomic {
    n: u64,
    poly: Polynomial<Rational>,
}

fn cyclotomic_poly(n: u64) -> Polynomial<Rational> {
    let mut acc = Polynomial::monomial(Rational::one(), n as usize) - Polynomial::one();
    for d in (1..n).filter(|d| n % d == 0) {
        acc = acc.divrem(&cyclotomic_poly(d)).expect("nonzero divisor").0;
    }
    acc
}

impl Cyclotomic {
    fn reduce(n: u64, poly: Polynomial<Rational>) -> Self {
        let r = poly.divrem(&cyclotomic_poly(n)).expect("nonzero modulus").1;
        Cyclotomic { n, poly: r }
    }

    pub fn rational(n: u64, c: Rational) -> Self {
        Cyclotomic { n, poly: Polynomial::constant(c) }
    }

    /// `c ζ^k`.
    pub fn zeta(n: u64, k: i64, c: Rational) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        Self::reduce(n, Polynomial::monomial(c, e))
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclotomic { n: self.n, poly: &self.poly + &o.poly }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduce(self.n, &self.poly * &o.poly)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Cyclotomic { n: self.n, poly: self.poly.scale(c) }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.poly.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    /// Value at `ζ = e^{2πi/n}` as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.poly.coeffs().iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

type Block = [[Cyclotomic; 2]; 2];

/// `U_a(k, ε)` with entries in `ℚ(ζ_n)`.
pub fn u_rep(n: u64, a: i64, x: DihedralElement) -> Block {
    let z = |e: i64| Cyclotomic::zeta(n, e, Rational::one());
    let zero = || Cyclotomic::rational(n, Rational::zero());
    let k = x.k;
    if x.reflection {
        [[zero(), z(k * a)], [z(-k * a), zero()]]
    } else {
        [[z(k * a), zero()], [zero(), z(-k * a)]]
    }
}

fn block_mul(x: &Block, y: &Block) -> Block {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// One-dimensional characters indexed by their values on `s` and `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Character {
    pub on_s: i8,
    pub on_t: i8,
}

impl Character {
    pub fn name(&self) -> String {
        let c = |v: i8| if v > 0 { '+' } else { '-' };
        format!("chi{}{}", c(self.on_s), c(self.on_t))
    }

    pub fn value(&self, x: DihedralElement) -> i64 {
        // (k, +1) = (ts)^k and (k, -1) = (ts)^k s
        let st = (self.on_s * self.on_t) as i64;
        let rot = if x.k.rem_euclid(2) == 0 { 1 } else { st };
        if x.reflection {
            rot * self.on_s as i64
        } else {
            rot
        }
    }

    pub fn all(n: u64) -> Vec<Character> {
        let mut out = vec![Character { on_s: 1, on_t: 1 }, Character { on_s: -1, on_t: -1 }];
        if n % 2 == 0 {
            out.push(Character { on_s: 1, on_t: -1 });
            out.push(Character { on_s: -1, on_t: 1 });
        }
        out
    }
}

/// `2n φ̂(π)` for every irreducible representation `π` of the dihedral group
/// of order `2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralFourier {
    pub n: u64,
    pub characters: Vec<(Character, Rational)>,
    pub blocks: Vec<(i64, Block)>,
}

pub fn dihedral_fourier(n: u64, p: &Rational, q: &Rational, r: &Rational) -> DihedralFourier {
    assert!(n >= 2);
    let one = Rational::one();
    let characters = Character::all(n)
        .into_iter()
        .map(|c| {
            let v = match (c.on_s, c.on_t) {
                (1, 1) => &one + p + q + int(2 * n as i64 - 3) * r,
                (-1, -1) => &one - p - q + r,
                (1, -1) => &one + p - q - r,
                _ => &one - p + q - r,
            };
            (c, v)
        })
        .collect();
    let blocks = (1..=(n as i64 - 1) / 2)
        .map(|a| {
            let d = Cyclotomic::rational(n, &one - r);
            let off = Cyclotomic::rational(n, p - r).add(&Cyclotomic::zeta(n, a, q - r));
            let off_bar = Cyclotomic::rational(n, p - r).add(&Cyclotomic::zeta(n, -a, q - r));
            (a, [[d.clone(), off], [off_bar, d]])
        })
        .collect();
    DihedralFourier { n, characters, blocks }
}

impl DihedralFourier {
    /// `f(x) = (1/2n) Σ_π d_π tr[2n f̂(π) π(x⁻¹)]`.
    pub fn reconstruct(&self, x: DihedralElement) -> Rational {
        let m = self.n as u32;
        let xinv = x.inverse(m);
        let mut acc = Rational::zero();
        for (c, v) in &self.characters {
            acc += v * int(c.value(xinv));
        }
        let mut blocks = Cyclotomic::rational(self.n, Rational::zero());
        for (a, b) in &self.blocks {
            let prod = block_mul(b, &u_rep(self.n, *a, xinv));
            blocks = blocks.add(&prod[0][0].add(&prod[1][1]).scale(&int(2)));
        }
        let blocks = blocks.as_rational().expect("the inverse transform of a real function is rational");
        (acc + blocks) / int(2 * self.n as i64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let chars: Vec<_> = self
            .characters
            .iter()
            .map(|(c, v)| json!({ "name": c.name(), "value": fmt_rational(v) }))
            .collect();
        let blocks: Vec<_> = self
            .blocks
            .iter()
            .map(|(a, b)| {
                let cell = |c: &Cyclotomic| {
                    let (re, im) = c.to_complex();
                    json!([re, im])
                };
                json!({ "a": a, "matrix": [[cell(&b[0][0]), cell(&b[0][1])], [cell(&b[1][0]), cell(&b[1][1])]] })
            })
            .collect();
        json!({ "n": self.n, "characters": chars, "U": blocks })
    }
}

/// Every element of the dihedral group of order `2n`.
pub fn dihedral_elements(n: u64) -> Vec<DihedralElement> {
    (0..n as i64)
        .flat_map(|k| [false, true].map(|reflection| DihedralElement { k, reflection }))
        .collect()
}

/// A finitely supported vector on the infinite dihedral group, keyed by
/// alternating words (letters 0 = s, 1 = t).
#[derive(Debug, Clone, PartialEq)]
pub struct DinfWitness {
    pub name: &'static str,
    pub n: usize,
    pub support: Vec<(Vec<u8>, Rational)>,
}

fn alternating(first: u8, len: usize) -> Vec<u8> {
    (0..len).map(|i| first ^ (i as u8 & 1)).collect()
}

/// `±1` on the nontrivial words of length at most `2n` starting with `s`
/// (resp. `t`).
pub fn witness_f(n: usize) -> DinfWitness {
    let mut support = Vec::new();
    for len in 1..=2 * n {
        support.push((alternating(0, len), int(1)));
        support.push((alternating(1, len), int(-1)));
    }
    DinfWitness { name: "f", n, support }
}

fn character_on_xk(n: usize, on_s: i64, on_t: i64) -> Vec<(Vec<u8>, Rational)> {
    (1..=4 * n)
        .map(|k| {
            let w = alternating(0, k);
            let v: i64 = w.iter().map(|&l| if l == 0 { on_s } else { on_t }).product();
            (w, int(v))
        })
        .collect()
}

/// `χ₋₊` on `x_k = stst…`, `1 ≤ k ≤ 4n`.
pub fn witness_g(n: usize) -> DinfWitness {
    DinfWitness { name: "g", n, support: character_on_xk(n, -1, 1) }
}

/// `χ₋₋` on `x_k`, `1 ≤ k ≤ 4n`.
pub fn witness_h(n: usize) -> DinfWitness {
    DinfWitness { name: "h", n, support: character_on_xk(n, -1, -1) }
}

/// `χ₊₋` on `x_k`; the mirror image of `g`.
pub fn witness_g_mirror(n: usize) -> DinfWitness {
    DinfWitness { name: "g'", n, support: character_on_xk(n, 1, -1) }
}

impl DinfWitness {
    pub fn radius(&self) -> usize {
        self.support.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    /// Coefficients `(c₀, c_p, c_q, c_r)` of the quadratic form of the family
    /// at this vector, as a polynomial in `p, q, r`.
    pub fn form_coefficients(&self) -> [Rational; 4] {
        let sys = CoxeterSystem::preset("Dinf").expect("preset");
        let elems: Vec<Element> = self.support.iter().map(|(w, _)| sys.element(w)).collect();
        let rel = Relations::from_elements(&sys, &elems);
        let mut c: [Rational; 4] = Default::default();
        for (x, (_, vx)) in self.support.iter().enumerate() {
            for (y, (_, vy)) in self.support.iter().enumerate() {
                let slot = match rel.quotient(x, y).word.as_slice() {
                    [] => 0,
                    [0] => 1,
                    [1] => 2,
                    _ => 3,
                };
                c[slot] += vx * vy;
            }
        }
        c
    }

    pub fn form_value(&self, p: &Rational, q: &Rational, r: &Rational) -> Rational {
        let [c0, cp, cq, cr] = self.form_coefficients();
        c0 + cp * p + cq * q + cr * r
    }
}

/// A negative value of the quadratic form on the infinite dihedral group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refutation {
    pub source: String,
    pub radius: usize,
    pub words: Vec<String>,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub vector: Vec<Rational>,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Rational,
}

fn word_string(w: &[u8]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|&l| if l == 0 { 's' } else { 't' }).collect()
    }
}

/// Searches for a witness against positive-definiteness on the infinite
/// dihedral group: Grams of balls of growing radius, then the explicit
/// vectors `f, g, g', h` with growing support, all up to `max_radius`.
pub fn refute_infinite(p: &Rational, q: &Rational, r: &Rational, max_radius: usize) -> Option<Refutation> {
    let sys = CoxeterSystem::preset("Dinf").expect("preset");
    let phi = pqr(p, q, r);
    let mut radius = 10.min(max_radius);
    loop {
        let elems: Vec<Element> = (0..=radius)
            .flat_map(|len| {
                if len == 0 {
                    vec![Element::identity()]
                } else {
                    vec![sys.element(&alternating(0, len)), sys.element(&alternating(1, len))]
                }
            })
            .collect();
        let rel = Relations::from_elements(&sys, &elems);
        let m = gram_from_relations(&rel, &phi, &EvalContext::default()).expect("rational family");
        if let Some((vector, value)) = certify_psd(&m).exact_witness() {
            return Some(Refutation {
                source: format!("ball of radius {radius}"),
                radius,
                words: elems.iter().map(|e| word_string(&e.word)).collect(),
                vector: vector.to_vec(),
                value: value.clone(),
            });
        }
        if radius >= max_radius {
            break;
        }
        radius = (radius * 2).min(max_radius);
    }
    for n in 1.. {
        let cands = [witness_f(n), witness_g(n), witness_g_mirror(n), witness_h(n)];
        if cands.iter().all(|w| w.radius() > max_radius) {
            break;
        }
        for w in cands.iter().filter(|w| w.radius() <= max_radius) {
            let value = w.form_value(p, q, r);
            if value.is_negative() {
                let vector = primitive(&w.support.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
                return Some(Refutation {
                    source: format!("{}_{}", w.name, n),
                    radius: w.radius(),
                    words: w.support.iter().map(|(x, _)| word_string(x)).collect(),
                    vector,
                    value,
                });
            }
        }
    }
    None
}

/// One grid point of a region scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub p: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub q: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub r: Rational,
    pub status: RegionStatus,
    pub margin: f64,
}

/// `n = None` scans the infinite dihedral group.
pub fn region_scan(n: Option<u64>, grid: &[Rational]) -> Vec<ScanRow> {
    let points: Vec<(usize, usize, usize)> = (0..grid.len())
        .flat_map(|i| (0..grid.len()).flat_map(move |j| (0..grid.len()).map(move |k| (i, j, k))))
        .collect();
    points
        .par_iter()
        .map(|&(i, j, k)| {
            let (p, q, r) = (&grid[i], &grid[j], &grid[k]);
            let rep = match n {
                Some(n) => finite_region_check(n, p, q, r),
                None => infinite_region_check(p, q, r),
            };
            let margin = rep.constraints.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
            ScanRow { p: p.clone(), q: q.clone(), r: r.clone(), status: rep.status, margin }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_group, CoxeterMatrix, DEFAULT_CAP};
    use crate::pd::check_on_ball;
    use crate::rational::grid;

    fn q4() -> Vec<Rational> {
        grid(&int(-1), &int(1), &rat(1, 4)).unwrap()
    }

    #[test]
    fn klein_four_is_a_tetrahedron() {
        for (p, q, r) in [(-1, 1, -1), (1, -1, -1), (-1, -1, 1), (1, 1, 1)] {
            let (p, q, r) = (int(p), int(q), int(r));
            assert!(finite_region_check(2, &p, &q, &r).inside());
            let eps = rat(1, 100);
            // push outward along the direction away from the centroid (0,0,0)
            let out = finite_region_check(2, &(&p * (int(1) + &eps)), &(&q * (int(1) + &eps)), &(&r * (int(1) + &eps)));
            assert!(!out.inside());
        }
        for p in q4() {
            for q in q4() {
                for r in q4() {
                    let expect = int(-1) + (&p + &q).abs() <= r && r <= int(1) - (&p - &q).abs();
                    assert_eq!(finite_region_check(2, &p, &q, &r).inside(), expect);
                }
            }
        }
    }

    #[test]
    fn order_six_display() {
        for p in q4() {
            for q in q4() {
                if p == int(1) && q == int(1) {
                    continue;
                }
                for r in grid(&int(-1), &int(1), &rat(1, 8)).unwrap() {
                    let lo = std::cmp::max((int(-1) - &p - &q) / int(3), &p + &q - int(1));
                    let hi = (int(1) - &p * &p - &q * &q + &p * &q) / (int(2) - &p - &q);
                    let expect = lo <= r && r <= hi;
                    assert_eq!(finite_region_check(3, &p, &q, &r).inside(), expect, "{p} {q} {r}");
                }
            }
        }
        let z = int(0);
        assert!(finite_region_check(3, &z, &z, &rat(-1, 3)).inside());
        assert!(finite_region_check(3, &z, &z, &rat(1, 2)).inside());
        assert!(!finite_region_check(3, &z, &z, &rat(51, 100)).inside());
        assert!(!finite_region_check(3, &z, &z, &rat(-34, 100)).inside());
    }

    #[test]
    fn region_matches_gram_for_heptagon() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(7)).unwrap();
        let g = enumerate_group(&sys, DEFAULT_CAP).unwrap();
        let vals = grid(&int(-1), &int(1), &rat(1, 2)).unwrap();
        for p in &vals {
            for q in &vals {
                for r in &vals {
                    let rep = finite_region_check(7, p, q, r);
                    assert_ne!(rep.status, RegionStatus::Boundary);
                    assert_eq!(rep.inside(), check_on_ball(&g, &pqr(p, q, r)).unwrap().is_psd(), "{p} {q} {r}");
                }
            }
        }
    }

    #[test]
    fn triangle_vertices() {
        let t = colour_radial_triangle(3);
        let v = t.exact.unwrap();
        assert_eq!(v[1], (FieldElement::from_rational(rat(1, 4)), FieldElement::from_rational(rat(-1, 2))));
        assert_eq!(v[2], (FieldElement::one(), FieldElement::one()));
        for n in 3..12 {
            assert!(in_colour_radial_triangle(n, &int(1), &int(1)));
        }
        assert!(colour_radial_triangle(7).exact.is_none());
    }

    #[test]
    fn triangle_is_the_diagonal_slice() {
        let vals = grid(&int(-1), &int(1), &rat(1, 8)).unwrap();
        for n in 3..=12 {
            for p in &vals {
                for r in &vals {
                    assert_eq!(in_colour_radial_triangle(n, p, r), finite_region_check(n, p, p, r).inside(), "{n} {p} {r}");
                }
            }
        }
    }

    #[test]
    fn infinite_region_examples() {
        assert!(infinite_region_check(&int(1), &int(0), &int(0)).inside());
        assert!(infinite_region_check(&int(1), &int(1), &int(1)).inside());
        assert!(!infinite_region_check(&int(0), &int(0), &rat(-1, 1000)).inside());
    }

    #[test]
    fn fourier_of_constant_and_inversion() {
        let one = int(1);
        let f = dihedral_fourier(3, &one, &one, &one);
        assert_eq!(f.characters[0].1, int(6));
        assert_eq!(f.characters[1].1, int(0));
        for (_, b) in &f.blocks {
            for row in b {
                for c in row {
                    assert_eq!(c.as_rational(), Some(int(0)));
                }
            }
        }
        let (p, q, r) = (rat(1, 3), rat(-2, 5), rat(1, 7));
        for n in 2..=8 {
            let f = dihedral_fourier(n, &p, &q, &r);
            let m = n as u32;
            assert_eq!(f.reconstruct(DihedralElement::S), p);
            assert_eq!(f.reconstruct(DihedralElement::T.normalize(m)), q);
            assert_eq!(f.reconstruct(DihedralElement::IDENTITY), int(1));
            for x in dihedral_elements(n) {
                let len = x.length(m);
                let expect = if len == 0 { int(1) } else if x == DihedralElement::S { p.clone() } else if x == DihedralElement::T.normalize(m) { q.clone() } else { r.clone() };
                assert_eq!(f.reconstruct(x), expect);
            }
        }
    }

    #[test]
    fn fourier_matches_direct_sums() {
        let (p, q, r) = (rat(2, 3), rat(-1, 5), rat(1, 4));
        for n in 2..=9u64 {
            let m = n as u32;
            let f = dihedral_fourier(n, &p, &q, &r);
            let phi = |x: DihedralElement| {
                if x == DihedralElement::IDENTITY {
                    int(1)
                } else if x == DihedralElement::S {
                    p.clone()
                } else if x == DihedralElement::T.normalize(m) {
                    q.clone()
                } else {
                    r.clone()
                }
            };
            for (c, v) in &f.characters {
                let direct: Rational = dihedral_elements(n).into_iter().map(|x| phi(x) * int(c.value(x))).sum();
                assert_eq!(&direct, v);
            }
            for (a, b) in &f.blocks {
                let zero = || Cyclotomic::rational(n, Rational::zero());
                let mut acc = [[zero(), zero()], [zero(), zero()]];
                for x in dihedral_elements(n) {
                    let u = u_rep(n, *a, x);
                    for i in 0..2 {
                        for j in 0..2 {
                            acc[i][j] = acc[i][j].add(&u[i][j].scale(&phi(x)));
                        }
                    }
                }
                assert_eq!(&acc, b);
            }
        }
    }

    #[test]
    fn witness_form_values() {
        for n in 1..=3usize {
            let k = n as i64;
            let f = witness_f(n).form_coefficients();
            assert_eq!(f, [int(4 * k), int(4 * k - 2), int(4 * k - 2), int(-(12 * k - 4))]);
            let g = witness_g(n).form_coefficients();
            assert_eq!(g, [int(4 * k), int(-(4 * k - 2)), int(4 * k), int(-(4 * k + 2))]);
            let h = witness_h(n).form_coefficients();
            assert_eq!(h, [int(4 * k), int(-(4 * k - 2)), int(-4 * k), int(4 * k - 2)]);
        }
    }

    #[test]
    fn refutation_below_zero() {
        let z = int(0);
        let rf = refute_infinite(&z, &z, &rat(-1, 8), 10).unwrap();
        assert!(rf.value.is_negative());
        assert!(refute_infinite(&int(1), &int(0), &int(0), 20).is_none());
    }
}
