use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{GraphError, ProductSpec, Syllable, Word};

/// Order in which reducible pairs are merged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always the leftmost pair.
    Leftmost,
    /// A uniformly random pair at every step.
    Random(u64),
}

/// First and last syllables over all shuffles of a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeadTail {
    pub head: Vec<Syllable>,
    pub tail: Vec<Syllable>,
    /// `L(w)`.
    pub first: BTreeSet<usize>,
    /// `R(w)`.
    pub last: BTreeSet<usize>,
    /// `V(w)`.
    pub vertices: BTreeSet<usize>,
    /// `λ(w)`.
    pub length: usize,
}

impl ProductSpec {
    /// Pairs `(i, j)` at one vertex whose in-between syllables all commute
    /// with that vertex, so `j` can be shuffled next to `i` and merged.
    fn reducible_pairs(&self, w: &[Syllable], first_only: bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..w.len() {
            let v = w[j].vertex;
            for i in (0..j).rev() {
                if w[i].vertex == v {
                    out.push((i, j));
                    if first_only {
                        return out;
                    }
                    break;
                }
                if !self.graph.adjacent(w[i].vertex, v) {
                    break;
                }
            }
        }
        out
    }

    fn reduce(&self, w: &Word, strategy: Strategy) -> Vec<Syllable> {
        let mut s: Vec<Syllable> =
            w.0.iter().copied().filter(|x| x.element != self.groups[x.vertex].identity()).collect();
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            Strategy::Leftmost => None,
        };
        loop {
            let pairs = self.reducible_pairs(&s, rng.is_none());
            let Some(&(i, j)) = (match rng.as_mut() {
                Some(r) if !pairs.is_empty() => pairs.get(r.gen_range(0..pairs.len())),
                _ => pairs.first(),
            }) else {
                return s;
            };
            let g = &self.groups[s[i].vertex];
            let prod = g.mul(s[i].element, s[j].element);
            s.remove(j);
            if prod == g.identity() {
                s.remove(i);
            } else {
                s[i].element = prod;
            }
        }
    }

    /// Least-vertex-first linearisation of a reduced word: repeatedly take,
    /// among syllables that can be shuffled to the front, the one at the
    /// smallest vertex.
    fn canonical(&self, mut rest: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let pick = self
                .front_candidates(&rest)
                .into_iter()
                .min_by_key(|&i| rest[i].vertex)
                .expect("a nonempty word has a first syllable");
            out.push(rest.remove(pick));
        }
        out
    }

    /// Indices of syllables that commute with everything before them.
    fn front_candidates(&self, w: &[Syllable]) -> Vec<usize> {
        (0..w.len()).filter(|&i| (0..i).all(|k| self.graph.adjacent(w[k].vertex, w[i].vertex))).collect()
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.normal_form_with(w, Strategy::Leftmost)
    }

    /// Merges reducible pairs in the order given by `strategy`, then picks the
    /// canonical shuffle. The result does not depend on the strategy.
    pub fn normal_form_with(&self, w: &Word, strategy: Strategy) -> Word {
        Word(self.canonical(self.reduce(w, strategy)))
    }

    /// No identity syllables and no mergeable pair.
    pub fn is_reduced(&self, w: &Word) -> bool {
        w.0.iter().all(|s| s.element != self.groups[s.vertex].identity()) && self.reducible_pairs(&w.0, true).is_empty()
    }

    pub fn is_canonical(&self, w: &Word) -> bool {
        self.is_reduced(w) && self.canonical(w.0.clone()) == w.0
    }

    pub fn inverse(&self, w: &Word) -> Word {
        Word(
            w.0.iter()
                .rev()
                .map(|s| Syllable { vertex: s.vertex, element: self.groups[s.vertex].inv(s.element) })
                .collect(),
        )
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        let mut c = a.0.clone();
        c.extend_from_slice(&b.0);
        self.normal_form(&Word(c))
    }

    /// `h w h⁻¹` in normal form.
    pub fn conjugate(&self, h: &Word, w: &Word) -> Word {
        let mut c = h.0.clone();
        c.extend_from_slice(&w.0);
        c.extend(self.inverse(h).0);
        self.normal_form(&Word(c))
    }

    /// A syllable is a possible first syllable iff every syllable before it
    /// is at an adjacent vertex; dually for last syllables.
    pub fn head_tail(&self, w: &Word) -> Result<HeadTail, GraphError> {
        if !self.is_reduced(w) {
            return Err(GraphError::NotNormal);
        }
        let head: Vec<Syllable> = self.front_candidates(&w.0).into_iter().map(|i| w.0[i]).collect();
        let rev: Vec<Syllable> = w.0.iter().rev().copied().collect();
        let tail: Vec<Syllable> = self.front_candidates(&rev).into_iter().map(|i| rev[i]).collect();
        Ok(HeadTail {
            first: head.iter().map(|s| s.vertex).collect(),
            last: tail.iter().map(|s| s.vertex).collect(),
            vertices: w.0.iter().map(|s| s.vertex).collect(),
            length: w.len(),
            head,
            tail,
        })
    }

    /// For a complete graph: the tuple (one element per vertex) a word
    /// multiplies out to.
    pub fn evaluate_commuting(&self, w: &Word) -> Result<Vec<u32>, GraphError> {
        let n = self.graph.len();
        if (0..n).any(|a| (0..n).any(|b| a != b && !self.graph.adjacent(a, b))) {
            return Err(GraphError::Hypothesis("graph is not complete".into()));
        }
        let mut t: Vec<u32> = self.groups.iter().map(|g| g.identity()).collect();
        for s in &w.0 {
            t[s.vertex] = self.groups[s.vertex].mul(t[s.vertex], s.element);
        }
        Ok(t)
    }

    /// A uniformly random word of `len` syllables (before reduction).
    pub fn random_word<R: Rng>(&self, rng: &mut R, len: usize) -> Word {
        let n = self.graph.len();
        Word(
            (0..len)
                .map(|_| {
                    let vertex = rng.gen_range(0..n);
                    let g = &self.groups[vertex];
                    let mut element = rng.gen_range(0..g.order() as u32 - 1);
                    if element >= g.identity() {
                        element += 1;
                    }
                    Syllable { vertex, element }
                })
                .collect(),
        )
    }
}
