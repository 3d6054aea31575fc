//! Pairpartitions of `{1..2n}`: crossings, the smallest noncrossing
//! coarsening Φ, the Wick map and exhaustive checks of the identities that
//! relate them.

mod freeprob;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{binomial, int, Rational};
use crate::Poly;

pub use freeprob::{
    bernoulli_free_moment, cumulant_moment_poly, free_cumulants, nc_partition_count, pairpartition_moment_poly,
    verify_free_moments, FreeMomentReport,
};

/// Largest `n` accepted by the exhaustive verifiers unless a limit is given.
pub const DEFAULT_MAX_N: usize = 6;

/// A perfect matching of `{1..2n}`, stored as 0-based mates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    mate: Vec<usize>,
}

impl PairPartition {
    pub fn from_mates(mate: Vec<usize>) -> Result<Self> {
        let m = mate.len();
        if m % 2 == 1 {
            return Err(Error::Parse(format!("{m} points cannot be paired")));
        }
        for (i, &j) in mate.iter().enumerate() {
            if j >= m || j == i || mate[j] != i {
                return Err(Error::Parse(format!("mate array is not a fixed-point-free involution at {}", i + 1)));
            }
        }
        Ok(PairPartition { mate })
    }

    /// Pairs given with 1-based endpoints.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * pairs.len();
        let mut mate = vec![usize::MAX; m];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > m || b > m {
                return Err(Error::Parse(format!("point out of range in pair ({a},{b})")));
            }
            if mate[a - 1] != usize::MAX || mate[b - 1] != usize::MAX {
                return Err(Error::Parse(format!("point repeated in pair ({a},{b})")));
            }
            mate[a - 1] = b - 1;
            mate[b - 1] = a - 1;
        }
        Self::from_mates(mate)
    }

    /// `{{i, 2n+1-i}}`
    pub fn rainbow(n: usize) -> Self {
        PairPartition { mate: (0..2 * n).map(|i| 2 * n - 1 - i).collect() }
    }

    /// `{{1,2},{3,4},...}`
    pub fn interval(n: usize) -> Self {
        PairPartition { mate: (0..2 * n).map(|i| i ^ 1).collect() }
    }

    pub fn n(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn mates(&self) -> &[usize] {
        &self.mate
    }

    /// 1-based pairs sorted by smaller endpoint.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs0().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    fn pairs0(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate.iter().enumerate().filter(|(i, &j)| *i < j).map(|(i, &j)| (i, j))
    }

    /// `|π|`: the number of crossing pairs.
    pub fn crossings(&self) -> usize {
        let p: Vec<_> = self.pairs0().collect();
        let mut c = 0;
        for (i, &(_, c1)) in p.iter().enumerate() {
            for &(b, d) in &p[i + 1..] {
                if b < c1 && c1 < d {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossings() == 0
    }

    pub fn as_set_partition(&self) -> SetPartition {
        SetPartition::new(self.pairs0().map(|(a, b)| vec![a + 1, b + 1]).collect())
    }

    /// Φ(π), by merging crossing blocks until none cross.
    pub fn phi(&self) -> SetPartition {
        let m = self.mate.len();
        let mut label: Vec<usize> = (0..m).map(|i| i.min(self.mate[i])).collect();
        'outer: loop {
            let mut ids: Vec<usize> = label.clone();
            ids.sort_unstable();
            ids.dedup();
            for (k, &a) in ids.iter().enumerate() {
                for &b in &ids[k + 1..] {
                    if blocks_cross(&label, a, b) {
                        for l in label.iter_mut().filter(|l| **l == b) {
                            *l = a;
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        SetPartition::from_labels(&label)
    }

    /// `‖π‖ = n − #Φ(π)`
    pub fn colour_length(&self) -> usize {
        self.n() - self.phi().len()
    }

    /// The Wick image: in every block of Φ(π) the right endpoints are
    /// matched with the left endpoints like brackets, each right endpoint
    /// taking the nearest unmatched left endpoint before it.
    pub fn wick(&self) -> PairPartition {
        let mut mate = vec![0; self.mate.len()];
        for block in self.phi().blocks() {
            let mut open = Vec::new();
            for &x in block {
                let i = x - 1;
                if i < self.mate[i] {
                    open.push(i);
                } else {
                    let j = open.pop().expect("every block is balanced");
                    mate[i] = j;
                    mate[j] = i;
                }
            }
        }
        PairPartition { mate }
    }

    /// The Wick image as the fixpoint of `{a,c},{b,d} → {a,d},{b,c}`.
    pub fn wick_by_resolution(&self) -> PairPartition {
        let mut mate = self.mate.clone();
        let m = mate.len();
        'outer: loop {
            for a in 0..m {
                let c = mate[a];
                if c < a {
                    continue;
                }
                for b in a + 1..c {
                    let d = mate[b];
                    if d > c {
                        mate[a] = d;
                        mate[d] = a;
                        mate[b] = c;
                        mate[c] = b;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        PairPartition { mate }
    }

    /// Pairs nested inside another pair.
    pub fn inner_blocks(&self) -> Result<usize> {
        if !self.is_noncrossing() {
            return Err(Error::NotNoncrossing);
        }
        Ok(self.inner_flags().iter().filter(|&&f| f).count())
    }

    /// One flag per pair (sorted by smaller endpoint): is it inner?
    fn inner_flags(&self) -> Vec<bool> {
        let p: Vec<_> = self.pairs0().collect();
        p.iter().map(|&(b, c)| p.iter().any(|&(a, d)| a < b && c < d)).collect()
    }

    /// Whether `rho` is an admissible coarsening: a noncrossing coarsening
    /// whose every block has its minimum and maximum paired in `self`.
    pub fn is_admissible(&self, rho: &SetPartition) -> bool {
        rho.size() == self.mate.len()
            && self.as_set_partition().refines(rho)
            && rho.is_noncrossing()
            && rho.blocks().iter().all(|b| self.mate[b[0] - 1] == b[b.len() - 1] - 1)
    }

    /// All admissible coarsenings of a noncrossing `self`, one per set of
    /// inner pairs promoted to block boundaries.
    pub fn admissible_coarsenings(&self) -> Result<Vec<SetPartition>> {
        if !self.is_noncrossing() {
            return Err(Error::NotNoncrossing);
        }
        let pairs: Vec<_> = self.pairs0().collect();
        let inner: Vec<usize> = self.inner_flags().iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect();
        let mut out = Vec::with_capacity(1 << inner.len());
        for mask in 0..1usize << inner.len() {
            let chosen: Vec<bool> = (0..pairs.len())
                .map(|i| match inner.iter().position(|&k| k == i) {
                    Some(pos) => mask >> pos & 1 == 1,
                    None => true,
                })
                .collect();
            let mut label = vec![0; self.mate.len()];
            for &(b, c) in &pairs {
                // innermost chosen pair enclosing (or equal to) {b, c}
                let (a, _) = pairs
                    .iter()
                    .zip(&chosen)
                    .filter(|(&(a, d), &ch)| ch && a <= b && c <= d)
                    .map(|(p, _)| *p)
                    .max_by_key(|&(a, _)| a)
                    .expect("outer pairs are always chosen");
                label[b] = a;
                label[c] = a;
            }
            out.push(SetPartition::from_labels(&label));
        }
        Ok(out)
    }
}

/// Two labelled blocks cross iff the points carrying either label, with
/// runs collapsed, alternate at least four times.
fn blocks_cross(label: &[usize], a: usize, b: usize) -> bool {
    let mut runs = 0;
    let mut last = usize::MAX;
    for &l in label {
        if (l == a || l == b) && l != last {
            runs += 1;
            last = l;
        }
    }
    runs >= 4
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PairPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

/// Accepts any text whose integers, read in order, form the pairs, e.g.
/// `{1,4}{2,3}` or `1-4 2-3`.
impl FromStr for PairPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let nums = integers(s)?;
        if nums.len() % 2 == 1 {
            return Err(Error::Parse(format!("odd number of endpoints in `{s}`")));
        }
        Self::from_pairs(&nums.chunks(2).map(|c| (c[0], c[1])).collect::<Vec<_>>())
    }
}

fn integers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

/// A partition of `{1..m}` with sorted blocks ordered by their minima.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { blocks }
    }

    /// Points `i` and `j` share a block iff `label[i-1] == label[j-1]`.
    pub fn from_labels(label: &[usize]) -> Self {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in label.iter().enumerate() {
            by.entry(l).or_default().push(i + 1);
        }
        Self::new(by.into_values().collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of points covered.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.size()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[x - 1] = k;
            }
        }
        label
    }

    pub fn is_noncrossing(&self) -> bool {
        let label = self.labels();
        (0..self.len()).all(|a| (a + 1..self.len()).all(|b| !blocks_cross(&label, a, b)))
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &SetPartition) -> bool {
        if self.size() != coarser.size() {
            return false;
        }
        let label = coarser.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| label[x - 1] == label[b[0] - 1]))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let inner: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Blocks in braces: `{1,2,3,4}{5,6}`.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for chunk in s.split('}') {
            let nums = integers(chunk)?;
            if !nums.is_empty() {
                blocks.push(nums);
            }
        }
        let p = SetPartition::new(blocks);
        let mut all: Vec<usize> = p.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &x)| x != i + 1) {
            return Err(Error::Parse(format!("`{s}` does not partition 1..{}", all.len())));
        }
        Ok(p)
    }
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeLimit(format!("n = {n} exceeds the enumeration limit {limit}")));
    }
    Ok(())
}

fn pair_rec(mate: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let Some(i) = mate.iter().position(|&j| j == usize::MAX) else {
        f(mate);
        return;
    };
    for j in i + 1..mate.len() {
        if mate[j] == usize::MAX {
            mate[i] = j;
            mate[j] = i;
            pair_rec(mate, f);
            mate[i] = usize::MAX;
            mate[j] = usize::MAX;
        }
    }
}

/// Streams `P₂(2n)` as mate arrays without storing it.
pub fn for_each_pairpartition(n: usize, mut f: impl FnMut(&[usize])) {
    let mut mate = vec![usize::MAX; 2 * n];
    pair_rec(&mut mate, &mut f);
}

/// The pairpartitions of `{1..2n}` in which point 1 is paired with `first`
/// (1-based), in recursive "pair the smallest free point" order.
pub fn pairpartitions_with_first(n: usize, first: usize) -> Vec<PairPartition> {
    let mut out = Vec::new();
    if n == 0 || first < 2 || first > 2 * n {
        return out;
    }
    let mut mate = vec![usize::MAX; 2 * n];
    mate[0] = first - 1;
    mate[first - 1] = 0;
    pair_rec(&mut mate, &mut |m: &[usize]| out.push(PairPartition { mate: m.to_vec() }));
    out
}

/// All of `P₂(2n)`, in recursive "pair the smallest free point" order.
pub fn pairpartitions(n: usize) -> Vec<PairPartition> {
    if n == 0 {
        return vec![PairPartition { mate: Vec::new() }];
    }
    (2..=2 * n).flat_map(|j| pairpartitions_with_first(n, j)).collect()
}

fn nc_rec(lo: usize, hi: usize, mate: &mut Vec<usize>, k: &mut dyn FnMut(&mut Vec<usize>)) {
    if lo == hi {
        k(mate);
        return;
    }
    for j in (lo + 1..hi).step_by(2) {
        mate[lo] = j;
        mate[j] = lo;
        nc_rec(lo + 1, j, mate, &mut |m: &mut Vec<usize>| nc_rec(j + 1, hi, m, k));
    }
}

/// `NC₂(2n)`, generated directly: point 1 pairs with an even point and the
/// inside and outside are filled independently.
pub fn noncrossing_pairpartitions(n: usize) -> Vec<PairPartition> {
    let mut out = Vec::new();
    let mut mate = vec![0; 2 * n];
    nc_rec(0, 2 * n, &mut mate, &mut |m: &mut Vec<usize>| out.push(PairPartition { mate: m.clone() }));
    out
}

/// Folds `f` over `P₂(2n)` in parallel, one stream per mate of point 1,
/// merging the stream results in order.
fn par_fold<A: Send>(n: usize, init: impl Fn() -> A + Sync, f: impl Fn(&mut A, &PairPartition) + Sync, merge: impl Fn(&mut A, A)) -> A {
    let parts: Vec<A> = (2..=2 * n.max(1))
        .into_par_iter()
        .map(|j| {
            let mut acc = init();
            for p in pairpartitions_with_first(n, j) {
                f(&mut acc, &p);
            }
            acc
        })
        .collect();
    let mut acc = init();
    for p in parts {
        merge(&mut acc, p);
    }
    acc
}

fn add_counts(acc: &mut Vec<i64>, other: Vec<i64>) {
    if acc.len() < other.len() {
        acc.resize(other.len(), 0);
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

fn signed_term(p: &PairPartition) -> (usize, i64) {
    let sign = if p.crossings() % 2 == 0 { 1 } else { -1 };
    (p.colour_length(), sign)
}

/// `Σ_{π ∈ P₂(2n)} (−1)^{|π|} q^{‖π‖}`
pub fn p2_side(n: usize) -> Poly {
    let counts = par_fold(
        n,
        || vec![0i64; n + 1],
        |acc, p| {
            let (k, s) = signed_term(p);
            acc[k] += s;
        },
        add_counts,
    );
    Poly::from_ints(&counts)
}

/// `(1−q)^k`
fn one_minus_q(k: usize) -> Poly {
    Poly::from_ints(&[1, -1]).pow(k)
}

/// `f_n(q) = Σ_{ϖ ∈ NC₂(2n)} (1−q)^{inn(ϖ)}`, by enumeration.
pub fn f_n_poly(n: usize) -> Poly {
    let mut by_inner = vec![0i64; n + 1];
    for w in noncrossing_pairpartitions(n) {
        by_inner[w.inner_flags().iter().filter(|&&f| f).count()] += 1;
    }
    by_inner
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(Poly::zero(), |acc, (k, &c)| &acc + &one_minus_q(k).scale(&int(c)))
}

pub fn catalan(n: usize) -> Rational {
    let n = n as u64;
    let c = binomial(2 * n, n) - if n == 0 { 0.into() } else { binomial(2 * n, n - 1) };
    Rational::from_integer(c)
}

fn rising(a: i64, k: usize) -> Rational {
    (0..k as i64).fold(int(1), |acc, i| acc * int(a + i))
}

/// `C_n · ₂F₁(n, 1−n; n+2; q)`; the series stops at `q^{n−1}`.
pub fn f_n_hypergeometric(n: usize) -> Poly {
    let n_i = n as i64;
    let coeffs = (0..n.max(1))
        .map(|k| {
            let fact = rising(1, k);
            catalan(n) * rising(n_i, k) * rising(1 - n_i, k) / (rising(n_i + 2, k) * fact)
        })
        .collect();
    Poly::new(coeffs)
}

/// Rows `n = 1..=max_n` of the coefficients of `f_n`, as CSV.
pub fn f_n_triangle_csv(max_n: usize) -> String {
    let mut out = String::from("n,k,coefficient\n");
    for n in 1..=max_n {
        for (k, c) in f_n_poly(n).coeffs().iter().enumerate() {
            out.push_str(&format!("{n},{k},{c}\n"));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct P2Nc2Report {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Checks `Σ_{P₂(2n)} (−1)^{|π|} q^{‖π‖} = Σ_{NC₂(2n)} (1−q)^{inn(ϖ)}`.
pub fn verify_p2nc2(n: usize) -> Result<P2Nc2Report> {
    verify_p2nc2_with_limit(n, DEFAULT_MAX_N)
}

pub fn verify_p2nc2_with_limit(n: usize, limit: usize) -> Result<P2Nc2Report> {
    check_size(n, limit)?;
    let lhs = p2_side(n);
    let rhs = f_n_poly(n);
    Ok(P2Nc2Report { n, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
}

/// `P₂(2n)` grouped by Wick image.
pub fn wick_fibres(n: usize) -> BTreeMap<PairPartition, Vec<PairPartition>> {
    par_fold(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<PairPartition, Vec<PairPartition>>, p| acc.entry(p.wick()).or_default().push(p.clone()),
        |acc, other| {
            for (k, mut v) in other {
                acc.entry(k).or_default().append(&mut v);
            }
        },
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct Tokyo2Report {
    pub varpi: PairPartition,
    pub fibre_size: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn tokyo2_from_fibre(varpi: &PairPartition, fibre: &[PairPartition]) -> Tokyo2Report {
    let mut counts = vec![0i64; varpi.n() + 1];
    for p in fibre {
        let (k, s) = signed_term(p);
        counts[k] += s;
    }
    let lhs = Poly::from_ints(&counts);
    let rhs = one_minus_q(varpi.inner_flags().iter().filter(|&&f| f).count());
    Tokyo2Report { varpi: varpi.clone(), fibre_size: fibre.len(), holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
}

/// Checks `Σ_{wick(π) = ϖ} (−1)^{|π|} q^{‖π‖} = (1−q)^{inn(ϖ)}`.
pub fn verify_tokyo2(varpi: &PairPartition) -> Result<Tokyo2Report> {
    if !varpi.is_noncrossing() {
        return Err(Error::NotNoncrossing);
    }
    check_size(varpi.n(), DEFAULT_MAX_N)?;
    let fibre: Vec<_> = pairpartitions(varpi.n()).into_iter().filter(|p| &p.wick() == varpi).collect();
    Ok(tokyo2_from_fibre(varpi, &fibre))
}

#[derive(Debug, Clone, Serialize)]
pub struct Tokyo3Report {
    pub varpi: PairPartition,
    pub rho: SetPartition,
    pub fibre_size: usize,
    /// `Σ (−1)^{|π|}` over `wick(π) = ϖ`, `Φ(π) = ρ`.
    pub sum: i64,
    /// `(−1)^{n − #ρ}`, the sign that makes the fibres add up to `(1−q)^{inn(ϖ)}`.
    pub expected: i64,
    /// `(−1)^{#ρ}`
    pub literal: i64,
    pub holds: bool,
}

fn parity(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn tokyo3_from_fibre(varpi: &PairPartition, rho: &SetPartition, fibre: &[PairPartition]) -> Tokyo3Report {
    let cell: Vec<&PairPartition> = fibre.iter().filter(|p| &p.phi() == rho).collect();
    let sum = cell.iter().map(|p| parity(p.crossings())).sum();
    let expected = parity(varpi.n() - rho.len());
    Tokyo3Report {
        varpi: varpi.clone(),
        rho: rho.clone(),
        fibre_size: cell.len(),
        sum,
        expected,
        literal: parity(rho.len()),
        holds: sum == expected,
    }
}

/// Signed count of the pairpartitions with Wick image `ϖ` and smallest
/// noncrossing coarsening `ρ`.
pub fn verify_tokyo3(varpi: &PairPartition, rho: &SetPartition) -> Result<Tokyo3Report> {
    if !varpi.is_noncrossing() {
        return Err(Error::NotNoncrossing);
    }
    if !varpi.is_admissible(rho) {
        return Err(Error::NotAdmissible(format!("{rho} for {varpi}")));
    }
    check_size(varpi.n(), DEFAULT_MAX_N)?;
    let fibre: Vec<_> = pairpartitions(varpi.n()).into_iter().filter(|p| &p.wick() == varpi).collect();
    Ok(tokyo3_from_fibre(varpi, rho, &fibre))
}

/// Outcome of every exhaustive pairpartition check at one `n`.
#[derive(Debug, Clone, Serialize)]
pub struct PairpartSummary {
    pub n: usize,
    pub pairpartitions: usize,
    pub noncrossing: usize,
    pub p2nc2: P2Nc2Report,
    pub f_n: String,
    pub f_n_hypergeometric: String,
    pub tokyo2_checked: usize,
    pub tokyo2_failures: Vec<Tokyo2Report>,
    pub tokyo3_checked: usize,
    pub tokyo3_failures: Vec<Tokyo3Report>,
    /// Cells where the sum equals `(−1)^{#ρ}`.
    pub tokyo3_literal_sign_matches: usize,
    /// Every π lies in the fibre of an admissible cell.
    pub cells_cover_fibres: bool,
    /// `Σ_ϖ` of the fibre sides equals the `P₂` side.
    pub fibre_decomposition: bool,
    /// Both Wick constructions agree on all of `P₂(2n)`.
    pub wick_agrees: bool,
    pub holds: bool,
}

pub fn verify_all(n: usize, limit: usize) -> Result<PairpartSummary> {
    check_size(n, limit)?;
    let p2nc2 = verify_p2nc2_with_limit(n, limit)?;
    let fibres = wick_fibres(n);
    let total: usize = fibres.values().map(Vec::len).sum();
    let wick_agrees = fibres.values().flatten().all(|p| p.wick_by_resolution() == p.wick());
    let mut tokyo2_failures = Vec::new();
    let mut tokyo3_failures = Vec::new();
    let (mut t2, mut t3, mut literal, mut covered) = (0, 0, 0, 0);
    let mut fibre_sum = Poly::zero();
    for (varpi, fibre) in &fibres {
        let r2 = tokyo2_from_fibre(varpi, fibre);
        fibre_sum = &fibre_sum + &one_minus_q(varpi.inner_flags().iter().filter(|&&f| f).count());
        t2 += 1;
        if !r2.holds {
            tokyo2_failures.push(r2);
        }
        for rho in varpi.admissible_coarsenings()? {
            let r3 = tokyo3_from_fibre(varpi, &rho, fibre);
            t3 += 1;
            covered += r3.fibre_size;
            if r3.sum == r3.literal {
                literal += 1;
            }
            if !r3.holds {
                tokyo3_failures.push(r3);
            }
        }
    }
    let f_n = f_n_poly(n);
    let hyp = f_n_hypergeometric(n);
    let fibre_decomposition = fibre_sum == p2_side(n);
    let holds = p2nc2.holds
        && tokyo2_failures.is_empty()
        && tokyo3_failures.is_empty()
        && covered == total
        && fibre_decomposition
        && wick_agrees
        && f_n == hyp;
    Ok(PairpartSummary {
        n,
        pairpartitions: total,
        noncrossing: fibres.len(),
        p2nc2,
        f_n: f_n.to_string(),
        f_n_hypergeometric: hyp.to_string(),
        tokyo2_checked: t2,
        tokyo2_failures,
        tokyo3_checked: t3,
        tokyo3_failures,
        tokyo3_literal_sign_matches: literal,
        cells_cover_fibres: covered == total,
        fibre_decomposition,
        wick_agrees,
        holds,
    })
}

/// `σ̄ = {{i, 2n+1−σ(i)}}` for `σ` in 1-based one-line notation.
pub fn perm_to_pp(sigma: &[usize]) -> Result<PairPartition> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::Parse(format!("{sigma:?} is not a permutation")));
        }
    }
    let pairs: Vec<_> = sigma.iter().enumerate().map(|(i, &s)| (i + 1, 2 * n + 1 - s)).collect();
    PairPartition::from_pairs(&pairs)
}

/// One-line notation of `s_{w₁} ⋯ s_{w_k}` in `𝔖_n`, with `s_i` the
/// transposition of positions `i+1` and `i+2` acting on the right.
pub fn permutation_of_word(n: usize, word: &[u8]) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for &s in word {
        p.swap(s as usize, s as usize + 1);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PairPartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_statistics() {
        assert_eq!(pp("{1,2}{3,4}").crossings(), 0);
        let x = pp("{1,3}{2,4}");
        assert_eq!(x.crossings(), 1);
        assert_eq!(x.phi().len(), 1);
        assert_eq!(x.colour_length(), 1);
        assert_eq!(x.wick(), pp("{1,4}{2,3}"));
        assert_eq!(x.wick_by_resolution(), pp("{1,4}{2,3}"));
        assert!(matches!(x.inner_blocks(), Err(Error::NotNoncrossing)));
        assert_eq!(pp("{1,6}{2,3}{4,5}").inner_blocks().unwrap(), 2);
        assert_eq!(PairPartition::rainbow(4).inner_blocks().unwrap(), 3);
    }

    #[test]
    fn longest_permutation_of_s3() {
        let s = perm_to_pp(&permutation_of_word(3, &[0, 1, 0])).unwrap();
        assert_eq!(s.crossings(), 3);
        assert_eq!(s.colour_length(), 2);
        assert_eq!(s.wick(), PairPartition::rainbow(3));
    }

    #[test]
    fn counts_and_small_identities() {
        assert_eq!(pairpartitions(4).len(), 105);
        assert_eq!(noncrossing_pairpartitions(4).len(), 14);
        assert_eq!(p2_side(2), Poly::from_ints(&[2, -1]));
        assert_eq!(f_n_poly(2), Poly::from_ints(&[2, -1]));
        assert_eq!(f_n_hypergeometric(2), f_n_poly(2));
        assert!(verify_p2nc2(3).unwrap().holds);
        assert!(matches!(verify_p2nc2(7), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn tokyo_rainbow_n2() {
        let r = verify_tokyo2(&PairPartition::rainbow(2)).unwrap();
        assert_eq!(r.fibre_size, 2);
        assert!(r.holds);
        let rho: SetPartition = "{1,2,3,4}".parse().unwrap();
        let r3 = verify_tokyo3(&PairPartition::rainbow(2), &rho).unwrap();
        assert_eq!(r3.sum, -1);
        assert!(r3.holds);
        let bad: SetPartition = "{1,2}{3,4}".parse().unwrap();
        assert!(matches!(verify_tokyo3(&PairPartition::rainbow(2), &bad), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn admissible_coarsenings_of_nested() {
        let w = pp("{1,8}{2,7}{3,4}{5,6}");
        let all = w.admissible_coarsenings().unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|r| w.is_admissible(r)));
        // crossing coarsening with admissible endpoints is rejected
        let crossing: SetPartition = "{1,3,4,8}{2,5,6,7}".parse().unwrap();
        assert!(!w.is_admissible(&crossing));
    }

    #[test]
    fn summary_n4() {
        let s = verify_all(4, DEFAULT_MAX_N).unwrap();
        assert!(s.holds, "{s:?}");
        assert_eq!(s.pairpartitions, 105);
    }
}
