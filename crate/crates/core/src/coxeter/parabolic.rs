use serde::Serialize;

use super::ball::{enumerate_group, Ball, DEFAULT_CAP};
use super::system::CoxeterSystem;
use super::{Colour, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ldlt::is_positive_definite;
use crate::matrix::Matrix;

/// Order of `W_T` and index `[W : W_T]`; `None` stands for ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParabolicData {
    pub order: Option<u64>,
    pub index: Option<u64>,
}

/// `B(s,t) = -cos(π/m(s,t))`, `B(s,s) = 1` on the generators in `t`.
pub fn cosine_gram(cm: &CoxeterMatrix, t: Colour) -> Result<Matrix<FieldElement>> {
    let idx: Vec<usize> = t.iter().filter(|&s| s < cm.rank()).collect();
    let mut out = Matrix::zeros(idx.len(), idx.len());
    for (a, &s) in idx.iter().enumerate() {
        for (b, &u) in idx.iter().enumerate() {
            let m = cm.m(s, u);
            let c = FieldElement::cos_pi_over(m).ok_or(Error::UnsupportedLabel { s, t: u, label: m })?;
            out[(a, b)] = if a == b { c } else { -c };
        }
    }
    Ok(out)
}

/// Finiteness of `W_T` by definiteness of the cosine form. Pairs with an
/// arbitrary finite label are decided directly.
pub fn parabolic_is_finite(cm: &CoxeterMatrix, t: Colour) -> Result<bool> {
    let gens: Vec<usize> = t.iter().filter(|&s| s < cm.rank()).collect();
    match gens.as_slice() {
        [] | [_] => return Ok(true),
        [a, b] => return Ok(cm.m(*a, *b) != 0),
        _ => {}
    }
    Ok(is_positive_definite(&cosine_gram(cm, t)?))
}

fn full_colour(cm: &CoxeterMatrix) -> Colour {
    Colour::full(cm.rank())
}

/// Order of `W_T` (when finite) and its index in `W`.
pub fn parabolic_data(system: &CoxeterSystem, t: Colour) -> Result<ParabolicData> {
    let cm = system.matrix();
    let t = Colour(t.0 & full_colour(cm).0);
    let order = if t.is_empty() {
        Some(1)
    } else if parabolic_is_finite(cm, t)? {
        let sub = CoxeterSystem::new(cm.restrict(t).expect("nonempty"))?;
        Some(enumerate_group(&sub, DEFAULT_CAP)?.len() as u64)
    } else {
        None
    };
    let whole_finite = parabolic_is_finite(cm, full_colour(cm))?;
    let index = if t == full_colour(cm) {
        Some(1)
    } else if whole_finite {
        let total = enumerate_group(system, DEFAULT_CAP)?.len() as u64;
        Some(total / order.expect("a parabolic of a finite group is finite"))
    } else if order.is_some() {
        None
    } else {
        // both infinite: the coset series is a polynomial exactly when the
        // index is finite, and then the index is its value at 1
        let w = crate::series::serre_series(cm)?;
        let wt = crate::series::serre_series(&cm.restrict(t).expect("nonempty"))?;
        let quotient = &w / &wt;
        quotient.as_polynomial().map(|p| {
            let v = p.eval(&crate::rational::int(1));
            v.to_integer().try_into().expect("index fits in u64")
        })
    };
    Ok(ParabolicData { order, index })
}

/// Position of the longest element of a finite group, after checking
/// `|ω∘w| = |ω∘| - |w|` for every `w`.
pub fn longest_element(group: &Ball) -> Result<usize> {
    group.require_closed()?;
    let top = group.max_length();
    let candidates: Vec<usize> = (0..group.len()).filter(|&i| group.element(i).length == top).collect();
    let [w0] = candidates.as_slice() else {
        return Err(Error::PrecondViolated(format!("{} elements of maximal length", candidates.len())));
    };
    for w in 0..group.len() {
        let p = group.product(*w0, w).map_err(|_| Error::PrecondViolated("product left the group".into()))?;
        if group.element(p).length + group.element(w).length != top {
            return Err(Error::PrecondViolated("longest element is not length-reversing".into()));
        }
    }
    Ok(*w0)
}

/// Positions of the minimal coset representatives `W^T` of `W/W_T`.
pub fn coset_min_reps(group: &Ball, t: Colour) -> Result<Vec<usize>> {
    group.require_closed()?;
    Ok((0..group.len())
        .filter(|&w| {
            let len = group.element(w).length;
            t.iter().filter(|&s| s < group.rank()).all(|s| {
                let ws = group.right_mul(w, s).expect("closed group");
                group.element(ws).length > len
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> CoxeterSystem {
        CoxeterSystem::preset(name).unwrap()
    }

    #[test]
    fn s4_parabolics() {
        let w = sys("A3");
        let d = parabolic_data(&w, Colour::from_letters([0, 2])).unwrap();
        assert_eq!(d, ParabolicData { order: Some(4), index: Some(6) });
        let d = parabolic_data(&w, Colour::empty()).unwrap();
        assert_eq!(d, ParabolicData { order: Some(1), index: Some(24) });
    }

    #[test]
    fn affine_is_infinite() {
        let w = sys("Atilde2");
        assert!(!parabolic_is_finite(w.matrix(), Colour::full(3)).unwrap());
        assert!(parabolic_is_finite(w.matrix(), Colour::from_letters([0, 1])).unwrap());
        let d = parabolic_data(&w, Colour::full(3)).unwrap();
        assert_eq!(d, ParabolicData { order: None, index: Some(1) });
        let d = parabolic_data(&w, Colour::from_letters([0])).unwrap();
        assert_eq!(d, ParabolicData { order: Some(2), index: None });
    }

    #[test]
    fn finite_types_are_definite() {
        for name in ["A4", "B4", "D4", "F4", "H3", "H4", "Rad5"] {
            let w = sys(name);
            assert!(parabolic_is_finite(w.matrix(), Colour::full(w.rank())).unwrap(), "{name}");
        }
        for name in ["AllThree4", "Star3_4", "Dinf"] {
            let w = sys(name);
            assert!(!parabolic_is_finite(w.matrix(), Colour::full(w.rank())).unwrap(), "{name}");
        }
    }

    #[test]
    fn longest_and_cosets() {
        let g = enumerate_group(&sys("A2"), DEFAULT_CAP).unwrap();
        let w0 = longest_element(&g).unwrap();
        assert_eq!(g.element(w0).length, 3);
        let reps = coset_min_reps(&g, Colour::from_letters([0])).unwrap();
        let lengths: Vec<usize> = reps.iter().map(|&i| g.element(i).length).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
        assert_eq!(coset_min_reps(&g, Colour::full(2)).unwrap(), vec![0]);
        assert_eq!(coset_min_reps(&g, Colour::empty()).unwrap().len(), 6);
    }

    #[test]
    fn rademacher_longest_element() {
        let g = enumerate_group(&sys("Rad4"), DEFAULT_CAP).unwrap();
        let w0 = longest_element(&g).unwrap();
        assert_eq!(g.element(w0).length, 4);
        assert_eq!(g.element(w0).colour, Colour::full(4));
    }

    #[test]
    fn dihedral_longest_element() {
        for m in [3u32, 4, 7, 10] {
            let g = enumerate_group(&CoxeterSystem::new(CoxeterMatrix::dihedral(m)).unwrap(), DEFAULT_CAP).unwrap();
            assert_eq!(g.len(), 2 * m as usize);
            let w0 = longest_element(&g).unwrap();
            assert_eq!(g.element(w0).length, m as usize);
        }
    }
}
