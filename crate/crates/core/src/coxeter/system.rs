use serde::Serialize;

use super::dihedral::DihedralElement;
use super::{Colour, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;
use crate::scalar::Sign;
use num_traits::{One, Zero};

/// A group element with its ShortLex-minimal reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Element {
    pub word: Vec<u8>,
    pub length: usize,
    pub colour: Colour,
}

impl Element {
    pub fn identity() -> Self {
        Element { word: Vec::new(), length: 0, colour: Colour::empty() }
    }

    pub fn from_reduced_word(word: Vec<u8>) -> Self {
        let colour = Colour::from_letters(word.iter().map(|&s| s as usize));
        Element { length: word.len(), colour, word }
    }

    /// Colour-length: the number of distinct generators in a reduced word.
    pub fn colour_length(&self) -> usize {
        self.colour.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.word.iter().map(|&s| s as usize)
    }
}

/// Exact identity of a group element: its reflection matrix, or the
/// combinatorial dihedral normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum State {
    Matrix(Matrix<FieldElement>),
    Dihedral(DihedralElement),
}

#[derive(Debug, Clone)]
enum Backend {
    Geometric { two_cos: Vec<Vec<FieldElement>> },
    Dihedral { m: u32 },
}

/// A Coxeter system together with a faithful model for computing in it.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    cm: CoxeterMatrix,
    backend: Backend,
}

fn two_cos_table(cm: &CoxeterMatrix) -> Result<Vec<Vec<FieldElement>>> {
    cm.general_supported()?;
    let n = cm.rank();
    let mut out = vec![vec![FieldElement::zero(); n]; n];
    for s in 0..n {
        for t in 0..n {
            if s != t {
                let c = FieldElement::cos_pi_over(cm.m(s, t)).expect("label checked");
                out[s][t] = c.scale(&crate::rational::int(2));
            }
        }
    }
    Ok(out)
}

/// Matrix of the simple reflection `σ_s` in the basis of simple roots:
/// `σ_s(α_t) = α_t + 2cos(π/m(s,t)) α_s`, `σ_s(α_s) = -α_s`.
pub fn reflection_matrix(cm: &CoxeterMatrix, s: usize) -> Result<Matrix<FieldElement>> {
    if s >= cm.rank() {
        return Err(Error::IndexOutOfRange(format!("generator {s} of a rank {} system", cm.rank())));
    }
    let c = two_cos_table(cm)?;
    let n = cm.rank();
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            if i == s {
                -FieldElement::one()
            } else {
                FieldElement::one()
            }
        } else if i == s {
            c[s][j].clone()
        } else {
            FieldElement::zero()
        }
    }))
}

impl CoxeterSystem {
    /// Geometric backend when every label is supported, otherwise the
    /// dihedral backend for rank two.
    pub fn new(cm: CoxeterMatrix) -> Result<Self> {
        match two_cos_table(&cm) {
            Ok(two_cos) => Ok(CoxeterSystem { cm, backend: Backend::Geometric { two_cos } }),
            Err(e) if cm.rank() == 2 => {
                let _ = e;
                Self::dihedral_backend(cm)
            }
            Err(e) => Err(e),
        }
    }

    /// Forces the combinatorial rank-2 model (any label).
    pub fn dihedral_backend(cm: CoxeterMatrix) -> Result<Self> {
        if cm.rank() != 2 {
            return Err(Error::PrecondViolated("the dihedral backend needs rank 2".into()));
        }
        let m = cm.m(0, 1);
        Ok(CoxeterSystem { cm, backend: Backend::Dihedral { m } })
    }

    pub fn preset(name: &str) -> Result<Self> {
        Self::new(CoxeterMatrix::preset(name)?)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.cm
    }

    pub fn rank(&self) -> usize {
        self.cm.rank()
    }

    pub fn is_geometric(&self) -> bool {
        matches!(self.backend, Backend::Geometric { .. })
    }

    pub fn identity_state(&self) -> State {
        match self.backend {
            Backend::Geometric { .. } => State::Matrix(Matrix::identity(self.rank())),
            Backend::Dihedral { .. } => State::Dihedral(DihedralElement::IDENTITY),
        }
    }

    /// `w ↦ ws`
    pub fn mul_gen(&self, w: &State, s: usize) -> State {
        match (&self.backend, w) {
            (Backend::Geometric { two_cos }, State::Matrix(m)) => {
                let mut out = m.clone();
                right_reflect(&mut out, s, two_cos);
                State::Matrix(out)
            }
            (Backend::Dihedral { m }, State::Dihedral(e)) => State::Dihedral(e.mul(DihedralElement::generator(s), *m)),
            _ => unreachable!("state from a different backend"),
        }
    }

    pub fn state_of_word(&self, word: &[u8]) -> State {
        word.iter().fold(self.identity_state(), |acc, &s| self.mul_gen(&acc, s as usize))
    }

    /// The reflection-representation matrix of a word (geometric backend).
    pub fn matrix_of_word(&self, word: &[u8]) -> Result<Matrix<FieldElement>> {
        match &self.backend {
            Backend::Geometric { .. } => match self.state_of_word(word) {
                State::Matrix(m) => Ok(m),
                State::Dihedral(_) => unreachable!(),
            },
            Backend::Dihedral { m } => Err(Error::UnsupportedLabel { s: 0, t: 1, label: *m }),
        }
    }

    /// ShortLex-minimal reduced word of the element represented by `word`.
    pub fn reduce(&self, word: &[u8]) -> Vec<u8> {
        match &self.backend {
            Backend::Dihedral { m } => {
                let w: Vec<usize> = word.iter().map(|&s| s as usize).collect();
                DihedralElement::from_word(&w, *m).word(*m)
            }
            Backend::Geometric { two_cos } => {
                let n = self.rank();
                // p = matrix of the inverse element
                let mut p = Matrix::<FieldElement>::identity(n);
                for &s in word {
                    left_reflect(&mut p, s as usize, two_cos);
                }
                let mut out = Vec::new();
                while let Some(s) = (0..n).find(|&s| column_is_negative(&p, s)) {
                    out.push(s as u8);
                    right_reflect(&mut p, s, two_cos);
                }
                out
            }
        }
    }

    pub fn element(&self, word: &[u8]) -> Element {
        Element::from_reduced_word(self.reduce(word))
    }

    pub fn element_of_letters(&self, letters: &[usize]) -> Element {
        let w: Vec<u8> = letters.iter().map(|&s| s as u8).collect();
        self.element(&w)
    }

    pub fn product(&self, a: &Element, b: &Element) -> Element {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        self.element(&w)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let w: Vec<u8> = a.word.iter().rev().copied().collect();
        self.element(&w)
    }

    /// `y⁻¹x`
    pub fn quotient(&self, y: &Element, x: &Element) -> Element {
        let mut w: Vec<u8> = y.word.iter().rev().copied().collect();
        w.extend_from_slice(&x.word);
        self.element(&w)
    }

    /// `|ws| < |w|`, read off the sign of the root `w(α_s)`.
    pub fn is_right_descent(&self, w: &State, s: usize) -> bool {
        match (&self.backend, w) {
            (Backend::Geometric { .. }, State::Matrix(m)) => column_is_negative(m, s),
            (Backend::Dihedral { m }, State::Dihedral(e)) => {
                e.mul(DihedralElement::generator(s), *m).length(*m) < e.length(*m)
            }
            _ => unreachable!("state from a different backend"),
        }
    }
}

/// `M ↦ M σ_s`: column `t` gains `2cos · column s`, column `s` flips sign.
fn right_reflect(m: &mut Matrix<FieldElement>, s: usize, two_cos: &[Vec<FieldElement>]) {
    let n = m.rows();
    let col_s: Vec<FieldElement> = m.column(s);
    for t in 0..n {
        if t == s {
            continue;
        }
        let c = &two_cos[s][t];
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            if !col_s[i].is_zero() {
                let add = c * &col_s[i];
                m[(i, t)] += &add;
            }
        }
    }
    for (i, v) in col_s.into_iter().enumerate() {
        m[(i, s)] = -v;
    }
}

/// `M ↦ σ_s M`: only row `s` changes.
fn left_reflect(m: &mut Matrix<FieldElement>, s: usize, two_cos: &[Vec<FieldElement>]) {
    let n = m.rows();
    for j in 0..n {
        let mut v = -m[(s, j)].clone();
        for t in 0..n {
            if t != s && !two_cos[s][t].is_zero() && !m[(t, j)].is_zero() {
                v += &(&two_cos[s][t] * &m[(t, j)]);
            }
        }
        m[(s, j)] = v;
    }
}

/// Column `s` is a root; it is negative iff its first nonzero entry is.
fn column_is_negative(m: &Matrix<FieldElement>, s: usize) -> bool {
    (0..m.rows())
        .map(|i| &m[(i, s)])
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.field_sign() == Sign::Negative)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_are_involutions() {
        for name in ["A3", "B3", "H3", "Atilde2", "I2(inf)", "I2(5)"] {
            let cm = CoxeterMatrix::preset(name).unwrap();
            for s in 0..cm.rank() {
                let r = reflection_matrix(&cm, s).unwrap();
                assert_eq!(r.mul(&r), Matrix::identity(cm.rank()), "{name} s{s}");
            }
        }
    }

    #[test]
    fn orders_of_rotations() {
        for (label, order) in [(2u32, 2usize), (3, 3), (4, 4), (5, 5), (6, 6)] {
            let cm = CoxeterMatrix::dihedral(label);
            let st = reflection_matrix(&cm, 0).unwrap().mul(&reflection_matrix(&cm, 1).unwrap());
            for k in 1..order {
                assert_ne!(st.pow(k), Matrix::identity(2));
            }
            assert_eq!(st.pow(order), Matrix::identity(2));
        }
        let cm = CoxeterMatrix::path(&[7]);
        assert!(reflection_matrix(&cm, 0).is_err());
    }

    #[test]
    fn reduction_in_s3() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        // s2 s1 s2 = s1 s2 s1
        assert_eq!(sys.reduce(&[1, 0, 1]), vec![0, 1, 0]);
        assert_eq!(sys.reduce(&[0, 0]), Vec::<u8>::new());
        let e = sys.element(&[0, 1, 0]);
        assert_eq!((e.length, e.colour_length()), (3, 2));
    }

    #[test]
    fn infinite_dihedral_words() {
        let sys = CoxeterSystem::preset("Dinf").unwrap();
        assert!(sys.is_geometric());
        let e = sys.element(&[0, 1]);
        assert_eq!((e.length, e.colour_length()), (2, 2));
        assert_eq!(sys.reduce(&[0, 1, 1, 0]), Vec::<u8>::new());
    }

    #[test]
    fn large_label_uses_dihedral_backend() {
        let sys = CoxeterSystem::preset("I2(7)").unwrap();
        assert!(!sys.is_geometric());
        assert_eq!(sys.reduce(&[1, 0, 1, 0, 1, 0, 1]), vec![0, 1, 0, 1, 0, 1, 0]);
    }
}
