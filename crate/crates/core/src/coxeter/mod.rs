//! Coxeter matrices, presets and the element machinery built on them.

mod ball;
mod dihedral;
mod parabolic;
mod system;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ball::{enumerate_ball, enumerate_group, Ball, Relations, DEFAULT_CAP};
pub use dihedral::{dihedral_element, DihedralElement, First};
pub use parabolic::{coset_min_reps, longest_element, parabolic_data, parabolic_is_finite, ParabolicData};
pub use system::{reflection_matrix, CoxeterSystem, Element, State};

/// Labels handled by the general engine; 0 encodes ∞.
pub const SUPPORTED_LABELS: [u32; 6] = [0, 2, 3, 4, 5, 6];

/// A set of generators as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Colour(pub u64);

impl Colour {
    pub fn empty() -> Self {
        Colour(0)
    }

    pub fn full(rank: usize) -> Self {
        Colour(if rank >= 64 { u64::MAX } else { (1u64 << rank) - 1 })
    }

    pub fn singleton(s: usize) -> Self {
        Colour(1 << s)
    }

    pub fn from_letters(letters: impl IntoIterator<Item = usize>) -> Self {
        Colour(letters.into_iter().fold(0, |acc, s| acc | 1 << s))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Colour) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Colour) -> Colour {
        Colour(self.0 | other.0)
    }

    pub fn complement(self, rank: usize) -> Colour {
        Colour(!self.0 & Colour::full(rank).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&s| self.contains(s))
    }

    /// All subsets of `{0..rank}` in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = Colour> {
        (0..1u64 << rank).map(Colour)
    }
}

/// Symmetric matrix of Coxeter labels; 0 encodes ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    m: Vec<Vec<u32>>,
    labels: Vec<String>,
}

#[derive(Deserialize)]
struct CoxeterJson {
    rank: usize,
    m: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self> {
        let labels = (1..=m.len()).map(|i| format!("s{i}")).collect();
        Self::with_labels(m, labels)
    }

    pub fn with_labels(m: Vec<Vec<u32>>, labels: Vec<String>) -> Result<Self> {
        let rank = m.len();
        if rank == 0 || rank > 63 {
            return Err(Error::InvalidMatrix(format!("rank must be in 1..=63, got {rank}")));
        }
        if labels.len() != rank {
            return Err(Error::InvalidMatrix("one label per generator is required".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 1 {
                return Err(Error::InvalidMatrix(format!("m({i},{i}) must be 1")));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != m[j][i] {
                    return Err(Error::InvalidMatrix(format!("m({i},{j}) != m({j},{i})")));
                }
                if i != j && v == 1 {
                    return Err(Error::InvalidMatrix(format!("m({i},{j}) = 1 off the diagonal")));
                }
            }
        }
        Ok(CoxeterMatrix { rank, m, labels })
    }

    /// Matrix with every off-diagonal entry equal to `label`.
    pub fn uniform(rank: usize, label: u32) -> Self {
        let m = (0..rank).map(|i| (0..rank).map(|j| if i == j { 1 } else { label }).collect()).collect();
        Self::new(m).expect("uniform matrix is valid")
    }

    /// Path diagram with the given consecutive labels; other pairs commute.
    pub fn path(labels: &[u32]) -> Self {
        let rank = labels.len() + 1;
        let mut m = vec![vec![2u32; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, &l) in labels.iter().enumerate() {
            m[i][i + 1] = l;
            m[i + 1][i] = l;
        }
        Self::new(m).expect("path matrix is valid")
    }

    pub fn dihedral(label: u32) -> Self {
        Self::with_labels(vec![vec![1, label], vec![label, 1]], vec!["s".into(), "t".into()])
            .expect("dihedral matrix is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.m[s][t]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    /// Every off-diagonal label lies in {2,3,4,5,6,∞}.
    pub fn general_supported(&self) -> Result<()> {
        for s in 0..self.rank {
            for t in s + 1..self.rank {
                let l = self.m[s][t];
                if !SUPPORTED_LABELS.contains(&l) {
                    return Err(Error::UnsupportedLabel { s, t, label: l });
                }
            }
        }
        Ok(())
    }

    /// The Coxeter matrix of the parabolic subsystem on `t` (in increasing
    /// generator order).
    pub fn restrict(&self, t: Colour) -> Option<CoxeterMatrix> {
        let idx: Vec<usize> = t.iter().filter(|&s| s < self.rank).collect();
        if idx.is_empty() {
            return None;
        }
        let m = idx.iter().map(|&i| idx.iter().map(|&j| self.m[i][j]).collect()).collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Some(CoxeterMatrix::with_labels(m, labels).expect("restriction of a valid matrix"))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: CoxeterJson = serde_json::from_str(s)?;
        if raw.m.len() != raw.rank {
            return Err(Error::InvalidMatrix(format!("rank {} but {} rows", raw.rank, raw.m.len())));
        }
        match raw.labels {
            Some(l) => Self::with_labels(raw.m, l),
            None => Self::new(raw.m),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "rank": self.rank, "m": self.m, "labels": self.labels })
    }

    /// Looks up a named system: `A<n>`, `B<n>`, `D<n>`, `F4`, `H3`, `H4`,
    /// `I2(<m>)`, `I2(inf)`, `Dinf`, `Atilde2`, `Rad<n>`, `Star3_<k>`, `AllThree4`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let cm = match name {
            "H3" => Self::path(&[5, 3]),
            "H4" => Self::path(&[5, 3, 3]),
            "F4" => Self::path(&[3, 4, 3]),
            "Atilde2" => Self::uniform(3, 3),
            "AllThree4" => Self::uniform(4, 3),
            "Dinf" => Self::dihedral(0),
            _ => {
                if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
                    let label = if rest == "inf" { 0 } else { num(rest)? as u32 };
                    if label == 1 {
                        return Err(unknown());
                    }
                    Self::dihedral(label)
                } else if let Some(k) = name.strip_prefix("Star3_") {
                    let k = num(k)?;
                    if k == 0 {
                        return Err(unknown());
                    }
                    let mut m = vec![vec![2u32; k + 1]; k + 1];
                    for (i, row) in m.iter_mut().enumerate() {
                        row[i] = 1;
                    }
                    for i in 1..=k {
                        m[0][i] = 3;
                        m[i][0] = 3;
                    }
                    Self::with_labels(m, (0..=k).map(|i| format!("s{i}")).collect())?
                } else if let Some(n) = name.strip_prefix("Rad") {
                    let n = num(n)?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Self::uniform(n, 2)
                } else if let Some(n) = name.strip_prefix('A') {
                    let n = num(n)?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Self::path(&vec![3; n - 1])
                } else if let Some(n) = name.strip_prefix('B') {
                    let n = num(n)?;
                    if n < 2 {
                        return Err(unknown());
                    }
                    let mut l = vec![3; n - 1];
                    l[n - 2] = 4;
                    Self::path(&l)
                } else if let Some(n) = name.strip_prefix('D') {
                    let n = num(n)?;
                    if n < 4 {
                        return Err(unknown());
                    }
                    let mut cm = Self::path(&vec![3; n - 2]).m;
                    for row in cm.iter_mut() {
                        row.push(2);
                    }
                    cm.push(vec![2; n]);
                    cm[n - 1][n - 1] = 1;
                    cm[n - 3][n - 1] = 3;
                    cm[n - 1][n - 3] = 3;
                    Self::new(cm)?
                } else {
                    return Err(unknown());
                }
            }
        };
        Ok(cm)
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|&v| if v == 0 { "inf".into() } else { v.to_string() }).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        assert_eq!(CoxeterMatrix::preset("A3").unwrap().rank(), 3);
        let b3 = CoxeterMatrix::preset("B3").unwrap();
        assert_eq!(b3.m(1, 2), 4);
        assert_eq!(b3.m(0, 2), 2);
        let d4 = CoxeterMatrix::preset("D4").unwrap();
        assert_eq!(d4.m(1, 3), 3);
        assert_eq!(d4.m(2, 3), 2);
        assert_eq!(CoxeterMatrix::preset("I2(inf)").unwrap().m(0, 1), 0);
        assert_eq!(CoxeterMatrix::preset("Star3_3").unwrap().m(2, 3), 2);
        assert!(CoxeterMatrix::preset("Q7").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let cm = CoxeterMatrix::preset("H3").unwrap();
        let back = CoxeterMatrix::from_json_str(&cm.to_json().to_string()).unwrap();
        assert_eq!(cm, back);
        let no_labels = CoxeterMatrix::from_json_str(r#"{"rank":2,"m":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(no_labels.m(0, 1), 0);
        assert!(CoxeterMatrix::from_json_str(r#"{"rank":2,"m":[[1,3],[2,1]]}"#).is_err());
    }

    #[test]
    fn unsupported_labels_are_detected() {
        let cm = CoxeterMatrix::path(&[7, 3]);
        assert!(matches!(cm.general_supported(), Err(Error::UnsupportedLabel { label: 7, .. })));
    }
}
