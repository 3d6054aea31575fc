//! Combinatorial model of the dihedral group `I₂(m)` (`m = 0` for ∞).
//!
//! An element is `(k, ε)` with rotation part `k` and sign `ε = ±1`, and
//! `(k,ε)(l,δ) = (k + εl, εδ)`. The generators are `s = (0,-1)` and
//! `t = (1,-1)`, so `ts = (1,+1)` and `st = (-1,+1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralElement {
    pub k: i64,
    pub reflection: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum First {
    S,
    T,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { k: 0, reflection: false };
    pub const S: DihedralElement = DihedralElement { k: 0, reflection: true };
    pub const T: DihedralElement = DihedralElement { k: 1, reflection: true };

    pub fn generator(s: usize) -> Self {
        if s == 0 {
            Self::S
        } else {
            Self::T
        }
    }

    pub fn normalize(self, m: u32) -> Self {
        if m == 0 {
            self
        } else {
            DihedralElement { k: self.k.rem_euclid(m as i64), reflection: self.reflection }
        }
    }

    pub fn mul(self, other: Self, m: u32) -> Self {
        let k = if self.reflection { self.k - other.k } else { self.k + other.k };
        DihedralElement { k, reflection: self.reflection != other.reflection }.normalize(m)
    }

    pub fn inverse(self, m: u32) -> Self {
        if self.reflection {
            self
        } else {
            DihedralElement { k: -self.k, reflection: false }.normalize(m)
        }
    }

    /// `(first letter, length)` of the ShortLex-minimal reduced word.
    fn normal_form(self, m: u32) -> (First, usize) {
        let e = self.normalize(m);
        if m == 0 {
            return match (e.reflection, e.k) {
                (false, 0) => (First::S, 0),
                (false, k) if k > 0 => (First::T, 2 * k as usize),
                (false, k) => (First::S, 2 * (-k) as usize),
                (true, k) if k <= 0 => (First::S, 2 * (-k) as usize + 1),
                (true, k) => (First::T, 2 * (k - 1) as usize + 1),
            };
        }
        let m = m as i64;
        if !e.reflection {
            let r = e.k;
            if r == 0 {
                return (First::S, 0);
            }
            // (ts)^r has length 2r, (st)^(m-r) has length 2(m-r)
            if 2 * r < 2 * (m - r) {
                (First::T, 2 * r as usize)
            } else {
                (First::S, 2 * (m - r) as usize)
            }
        } else {
            let js = (-e.k).rem_euclid(m);
            let jt = (e.k - 1).rem_euclid(m);
            if js <= jt {
                (First::S, 2 * js as usize + 1)
            } else {
                (First::T, 2 * jt as usize + 1)
            }
        }
    }

    pub fn length(self, m: u32) -> usize {
        self.normal_form(m).1
    }

    /// ShortLex-minimal reduced word with letters 0 = s, 1 = t.
    pub fn word(self, m: u32) -> Vec<u8> {
        let (first, len) = self.normal_form(m);
        let start = if first == First::S { 0u8 } else { 1u8 };
        (0..len).map(|i| start ^ (i as u8 & 1)).collect()
    }

    pub fn from_word(word: &[usize], m: u32) -> Self {
        word.iter().fold(Self::IDENTITY, |acc, &s| acc.mul(Self::generator(s), m))
    }
}

/// The alternating word of length `k` starting with `first`.
pub fn dihedral_element(m: u32, first: First, k: usize) -> Result<DihedralElement> {
    if m != 0 && k > m as usize {
        return Err(Error::LengthOutOfRange { m, k });
    }
    let start = if first == First::S { 0 } else { 1 };
    let word: Vec<usize> = (0..k).map(|i| start ^ (i & 1)).collect();
    Ok(DihedralElement::from_word(&word, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_words_coincide() {
        let a = dihedral_element(5, First::S, 5).unwrap();
        let b = dihedral_element(5, First::T, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.length(5), 5);
        assert_eq!(a.word(5), vec![0, 1, 0, 1, 0]);
        assert!(dihedral_element(5, First::S, 6).is_err());
    }

    #[test]
    fn infinite_alternating_words_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for k in 0..40 {
            for f in [First::S, First::T] {
                let e = dihedral_element(0, f, k).unwrap();
                assert_eq!(e.length(0), k);
                if k > 0 {
                    assert!(seen.insert(e));
                }
            }
        }
    }

    #[test]
    fn layer_sizes_for_m4() {
        let mut layers = [0usize; 5];
        for k in 0..4 {
            for r in [false, true] {
                layers[DihedralElement { k, reflection: r }.length(4)] += 1;
            }
        }
        assert_eq!(layers, [1, 2, 2, 2, 1]);
    }

    #[test]
    fn words_reproduce_elements() {
        for m in [0u32, 2, 3, 4, 7, 12] {
            for k in -6i64..6 {
                for r in [false, true] {
                    let e = DihedralElement { k, reflection: r }.normalize(m);
                    let w: Vec<usize> = e.word(m).into_iter().map(usize::from).collect();
                    assert_eq!(DihedralElement::from_word(&w, m), e);
                }
            }
        }
    }
}
