use std::collections::HashMap;

use super::parabolic::parabolic_is_finite;
use super::system::{CoxeterSystem, Element, State};
use super::{Colour, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;

pub const DEFAULT_CAP: usize = 200_000;

/// All elements of length at most `radius`, in ShortLex order of their
/// canonical words, with the right Cayley graph restricted to the ball.
#[derive(Debug, Clone)]
pub struct Ball {
    system: CoxeterSystem,
    radius: Option<usize>,
    closed: bool,
    elements: Vec<Element>,
    index: HashMap<State, usize>,
    right: Vec<Option<usize>>,
    inverse: Vec<usize>,
    layers: Vec<usize>,
}

/// Breadth-first enumeration. `radius = None` runs until the group closes.
fn bfs(system: &CoxeterSystem, radius: Option<usize>, cap: usize) -> Result<Ball> {
    let rank = system.rank();
    let id = system.identity_state();
    let mut ball = Ball {
        system: system.clone(),
        radius,
        closed: false,
        elements: vec![Element::identity()],
        index: HashMap::from([(id.clone(), 0)]),
        right: vec![None; rank],
        inverse: Vec::new(),
        layers: vec![1],
    };
    let mut frontier = vec![(0usize, id)];
    let mut k = 0;
    loop {
        let at_radius = radius == Some(k);
        let mut next = Vec::new();
        let mut grows = false;
        for (i, st) in &frontier {
            for s in 0..rank {
                let ws = system.mul_gen(st, s);
                if let Some(&j) = ball.index.get(&ws) {
                    ball.right[i * rank + s] = Some(j);
                    continue;
                }
                grows = true;
                if at_radius {
                    continue;
                }
                let j = ball.elements.len();
                let mut word = ball.elements[*i].word.clone();
                word.push(s as u8);
                ball.elements.push(Element::from_reduced_word(word));
                ball.index.insert(ws.clone(), j);
                ball.right.extend(std::iter::repeat(None).take(rank));
                ball.right[i * rank + s] = Some(j);
                next.push((j, ws));
                if ball.elements.len() > cap {
                    ball.finish_inverse();
                    return Err(Error::CapExceeded { cap, partial: Box::new(ball) });
                }
            }
        }
        if !grows {
            ball.closed = true;
            break;
        }
        if at_radius {
            break;
        }
        ball.layers.push(next.len());
        frontier = next;
        k += 1;
    }
    ball.finish_inverse();
    Ok(ball)
}

/// Elements with `|w| <= radius`.
pub fn enumerate_ball(system: &CoxeterSystem, radius: usize, cap: usize) -> Result<Ball> {
    bfs(system, Some(radius), cap.max(1))
}

/// The whole group; fails with `NotFinite` (decided by the cosine form, not
/// by the cap) for infinite systems.
pub fn enumerate_group(system: &CoxeterSystem, cap: usize) -> Result<Ball> {
    if !parabolic_is_finite(system.matrix(), Colour::full(system.rank()))? {
        return Err(Error::NotFinite(describe(system.matrix())));
    }
    bfs(system, None, cap.max(1))
}

pub(crate) fn describe(cm: &CoxeterMatrix) -> String {
    format!("the Coxeter group with matrix {:?}", cm.entries())
}

impl Ball {
    fn finish_inverse(&mut self) {
        self.inverse = (0..self.elements.len())
            .map(|i| {
                let w = &self.elements[i].word;
                self.walk(0, w.iter().rev().map(|&s| s as usize)).expect("inverse of a ball element lies in the ball")
            })
            .collect();
    }

    fn walk(&self, start: usize, letters: impl Iterator<Item = usize>) -> Option<usize> {
        let rank = self.system.rank();
        let mut cur = start;
        for s in letters {
            cur = self.right.get(cur * rank + s).copied().flatten()?;
        }
        Some(cur)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        self.system.matrix()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    /// True when the ball is the whole (finite) group.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn require_closed(&self) -> Result<()> {
        if self.closed {
            Ok(())
        } else {
            Err(Error::NotFinite(describe(self.coxeter_matrix())))
        }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layers
    }

    pub fn max_length(&self) -> usize {
        self.elements.last().map_or(0, |e| e.length)
    }

    /// `ws`, when it lies in the ball.
    pub fn right_mul(&self, i: usize, s: usize) -> Option<usize> {
        self.right[i * self.rank() + s]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Position of the element represented by `word`, if it lies in the ball.
    pub fn index_of_word(&self, word: &[u8]) -> Option<usize> {
        if let Some(i) = self.walk(0, word.iter().map(|&s| s as usize)) {
            return Some(i);
        }
        let reduced = self.system.reduce(word);
        self.walk(0, reduced.iter().map(|&s| s as usize))
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.walk(0, e.letters())
    }

    /// Exact identity of element `i`, recomputed from its word.
    pub fn state(&self, i: usize) -> State {
        self.system.state_of_word(&self.elements[i].word)
    }

    /// The stored identity key of element `i` matches the word's image.
    pub fn stored_state_matches(&self, i: usize) -> bool {
        self.index.get(&self.state(i)) == Some(&i)
    }

    pub fn matrix(&self, i: usize) -> Result<Matrix<FieldElement>> {
        self.system.matrix_of_word(&self.elements[i].word)
    }

    /// `xy` as a ball index, or the element itself when it leaves the ball.
    pub fn product(&self, x: usize, y: usize) -> std::result::Result<usize, Element> {
        self.walk(x, self.elements[y].letters())
            .ok_or_else(|| self.system.product(&self.elements[x], &self.elements[y]))
    }

    /// `y⁻¹x` as a ball index, or the element itself when it leaves the ball.
    pub fn quotient(&self, y: usize, x: usize) -> std::result::Result<usize, Element> {
        match self.walk(self.inverse[y], self.elements[x].letters()) {
            Some(i) => Ok(i),
            None => {
                let e = self.system.quotient(&self.elements[y], &self.elements[x]);
                match self.radius {
                    Some(r) if e.length > r => Err(e),
                    _ => self.index_of(&e).ok_or(e),
                }
            }
        }
    }

    pub fn relations(&self) -> Relations {
        Relations::from_ball(self)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let cm = self.coxeter_matrix();
        let elements: Vec<serde_json::Value> = self
            .elements
            .iter()
            .map(|e| {
                serde_json::json!({
                    "word": e.letters().map(|s| cm.label(s).to_string()).collect::<Vec<_>>(),
                    "length": e.length,
                    "colour": e.colour.iter().map(|s| cm.label(s).to_string()).collect::<Vec<_>>(),
                    "colour_length": e.colour_length(),
                })
            })
            .collect();
        serde_json::json!({
            "system": cm.to_json(),
            "radius": self.radius,
            "closed": self.closed,
            "count": self.len(),
            "layer_sizes": self.layers,
            "elements": elements,
        })
    }
}

/// The table of all `y⁻¹x` over a finite sample of group elements, with
/// every distinct quotient stored once in `registry`.
#[derive(Debug, Clone)]
pub struct Relations {
    pub registry: Vec<Element>,
    pub sample: Vec<usize>,
    table: Vec<u32>,
}

impl Relations {
    pub fn from_ball(ball: &Ball) -> Self {
        let n = ball.len();
        let mut registry = ball.elements.clone();
        let mut extra: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let id = match ball.quotient(y, x) {
                    Ok(i) => i,
                    Err(e) => *extra.entry(e.word.clone()).or_insert_with(|| {
                        registry.push(e);
                        registry.len() - 1
                    }),
                };
                table.push(id as u32);
            }
        }
        Relations { registry, sample: (0..n).collect(), table }
    }

    /// Quotients over an arbitrary finite list of elements.
    pub fn from_elements(system: &CoxeterSystem, elements: &[Element]) -> Self {
        let n = elements.len();
        let mut registry: Vec<Element> = Vec::new();
        let mut ids: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut intern = |e: Element, registry: &mut Vec<Element>| {
            *ids.entry(e.word.clone()).or_insert_with(|| {
                registry.push(e);
                registry.len() - 1
            })
        };
        let sample: Vec<usize> = elements.iter().map(|e| intern(system.element(&e.word), &mut registry)).collect();
        let mut table = Vec::with_capacity(n * n);
        for x in elements {
            for y in elements {
                let q = system.quotient(y, x);
                table.push(intern(q, &mut registry) as u32);
            }
        }
        Relations { registry, sample, table }
    }

    pub fn size(&self) -> usize {
        self.sample.len()
    }

    /// Registry id of `y⁻¹x` for sample positions `x`, `y`.
    pub fn id(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size() + y] as usize
    }

    pub fn quotient(&self, x: usize, y: usize) -> &Element {
        &self.registry[self.id(x, y)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    #[test]
    fn s3_closes() {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let b = enumerate_ball(&sys, 10, DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.is_closed());
        assert_eq!(b.max_length(), 3);
        assert_eq!(b.layer_sizes(), &[1, 2, 2, 1]);
    }

    #[test]
    fn closure_detected_at_exact_radius() {
        let sys = CoxeterSystem::preset("Rad3").unwrap();
        let b = enumerate_ball(&sys, 3, DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b.is_closed());
        let b2 = enumerate_ball(&sys, 2, DEFAULT_CAP).unwrap();
        assert_eq!(b2.len(), 7);
        assert!(!b2.is_closed());
    }

    #[test]
    fn affine_layers() {
        let sys = CoxeterSystem::preset("Atilde2").unwrap();
        let b = enumerate_ball(&sys, 4, DEFAULT_CAP).unwrap();
        assert_eq!(b.layer_sizes(), &[1, 3, 6, 9, 12]);
        assert!(!b.is_closed());
    }

    #[test]
    fn cap_is_reported_with_partial_ball() {
        let sys = CoxeterSystem::preset("Atilde2").unwrap();
        match enumerate_ball(&sys, 20, 30) {
            Err(Error::CapExceeded { cap: 30, partial }) => assert!(partial.len() > 30),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn group_requires_finiteness() {
        let sys = CoxeterSystem::preset("Atilde2").unwrap();
        assert!(matches!(enumerate_group(&sys, DEFAULT_CAP), Err(Error::NotFinite(_))));
    }

    #[test]
    fn words_are_shortlex_sorted() {
        let sys = CoxeterSystem::preset("B3").unwrap();
        let b = enumerate_group(&sys, DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 48);
        for w in b.elements().windows(2) {
            assert!((w[0].length, &w[0].word) < (w[1].length, &w[1].word));
        }
        for (i, e) in b.elements().iter().enumerate() {
            assert_eq!(sys.reduce(&e.word), e.word);
            assert!(b.stored_state_matches(i));
        }
    }

    #[test]
    fn quotients_leave_the_ball() {
        let sys = CoxeterSystem::preset("Dinf").unwrap();
        let b = enumerate_ball(&sys, 3, DEFAULT_CAP).unwrap();
        let rel = b.relations();
        let max = (0..b.len())
            .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
            .map(|(x, y)| rel.quotient(x, y).length)
            .max();
        assert_eq!(max, Some(6));
    }
}
