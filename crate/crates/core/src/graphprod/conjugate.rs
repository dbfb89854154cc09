use std::collections::VecDeque;

use super::{GraphError, ProductSpec, Syllable, Word};

/// Most candidate conjugators tried before giving up.
pub const CONJUGATOR_BUDGET: usize = 200_000;

/// A conjugator `h` with `L(h w h⁻¹) = R(h w h⁻¹) = {v}`.
///
/// Candidates are `e` and then products `c_0 c_1 ⋯ c_r` along walks
/// `v = p_0, p_1, …, p_r` in the complement graph, in breadth-first order
/// with least-index tie-breaking. Consecutive syllables of such a product do
/// not commute, so it is reduced with `L = {v}`; the only cancellation
/// against `w` happens at `c_r`, so the last two elements range over the
/// whole vertex group (this is where a vertex group with three elements
/// matters: `c_r ∉ {e, a⁻¹}` for the adjacent syllable `a` of `w`), the rest
/// are the least nontrivial element. Every candidate is checked with
/// [`ProductSpec::head_tail`].
pub fn conjugate_to_vertex(spec: &ProductSpec, w: &Word, v: usize) -> Result<Word, GraphError> {
    let graph = spec.graph();
    if v >= graph.len() {
        return Err(GraphError::Hypothesis(format!("no vertex {v}")));
    }
    if !graph.complement_connected() {
        return Err(GraphError::Hypothesis("complement of the graph is disconnected".into()));
    }
    if spec.sizes().iter().all(|&s| s < 3) {
        return Err(GraphError::Hypothesis("every vertex group has two elements".into()));
    }
    let w = spec.normal_form(w);
    if w.is_empty() {
        return Err(GraphError::Hypothesis("the word is trivial".into()));
    }
    let ok = |h: &Word| {
        let c = spec.conjugate(h, &w);
        let ht = spec.head_tail(&c).expect("normal forms are reduced");
        ht.first.len() == 1 && ht.first.contains(&v) && ht.last.len() == 1 && ht.last.contains(&v)
    };
    if ok(&Word::empty()) {
        return Ok(Word::empty());
    }
    let nontrivial = |x: usize| -> Vec<u32> {
        let g = spec.group(x);
        g.elements().filter(|&a| a != g.identity()).collect()
    };
    let n = graph.len();
    let max_len = 2 * n + 2;
    let mut tried = 0;
    let mut walks: VecDeque<Vec<usize>> = VecDeque::from([vec![v]]);
    while let Some(walk) = walks.pop_front() {
        let r = walk.len();
        let fixed: Vec<Syllable> =
            walk[..r.saturating_sub(2)].iter().map(|&x| Syllable { vertex: x, element: nontrivial(x)[0] }).collect();
        let mut tails: Vec<Vec<Syllable>> = vec![vec![]];
        for &x in &walk[r.saturating_sub(2)..] {
            tails = tails
                .into_iter()
                .flat_map(|t| {
                    nontrivial(x).into_iter().map(move |a| {
                        let mut t = t.clone();
                        t.push(Syllable { vertex: x, element: a });
                        t
                    })
                })
                .collect();
        }
        for tail in tails {
            let mut h = fixed.clone();
            h.extend(tail);
            let h = Word(h);
            if ok(&h) {
                return Ok(h);
            }
            tried += 1;
            if tried >= CONJUGATOR_BUDGET {
                return Err(GraphError::NotFound);
            }
        }
        if r < max_len {
            let last = *walk.last().unwrap();
            for x in (0..n).filter(|&x| x != last && !graph.adjacent(last, x)) {
                let mut next = walk.clone();
                next.push(x);
                walks.push_back(next);
            }
        }
    }
    Err(GraphError::NotFound)
}
