use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{Certificate, CriteriaError, Criterion, CriterionOutcome, Failure};
use crate::formulas;
use crate::groups::{is_prime, FiniteGroup};

fn fail(c: Criterion, g: &FiniteGroup, reason: String, witness: Option<String>, elements: Vec<u32>) -> CriterionOutcome {
    CriterionOutcome::Fail(Failure { criterion: c, group: g.name().into(), reason, witness, elements })
}

fn labels(g: &FiniteGroup, xs: &[u32]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

/// Least element of each class among `xs` (one representative per class).
fn class_reps(g: &FiniteGroup, xs: &[u32]) -> Result<Vec<u32>, CriteriaError> {
    let mut seen = Vec::new();
    let mut reps = Vec::new();
    for &x in xs {
        let k = g.class_index(x)?;
        if !seen.contains(&k) {
            seen.push(k);
            reps.push(x);
        }
    }
    Ok(reps)
}

/// Passes iff every nontrivial class has trivial centralizer. Fails at the
/// least such `a` otherwise.
pub fn crit_conj_centralizer(g: &FiniteGroup) -> Result<CriterionOutcome, CriteriaError> {
    let c = Criterion::ConjCentralizer;
    let e = g.identity();
    for a in g.elements().filter(|&a| a != e) {
        if !g.class_centralizer_trivial(a)? {
            let cent = g.class_centralizer(a)?;
            return Ok(fail(
                c,
                g,
                format!("C(a^G) has order {} at a = {}", cent.order(), g.label(a)),
                Some(g.label(a).into()),
                vec![a],
            ));
        }
    }
    if g.order() == 1 {
        return Ok(fail(c, g, "trivial group".into(), None, vec![]));
    }
    let nontrivial: Vec<u32> = g.elements().filter(|&a| a != e).collect();
    let reps = class_reps(g, &nontrivial)?;
    Ok(CriterionOutcome::Pass(Certificate {
        criterion: c,
        group: g.name().into(),
        detail: format!("all {} nontrivial classes have trivial centralizer", reps.len()),
        elements: labels(g, &reps),
        formula: formulas::conj_centralizer_text("x", "y"),
    }))
}

/// Elements whose order divides `m`, identity included.
pub fn torsion_elements(g: &FiniteGroup, m: usize) -> Vec<u32> {
    g.elements().filter(|&a| m % g.element_order(a) as usize == 0).collect()
}

/// Passes iff `G` has elements of order `p` and each has trivial class
/// centralizer. The certificate also says whether they generate `G`.
pub fn crit_p(g: &FiniteGroup, p: usize) -> Result<CriterionOutcome, CriteriaError> {
    if !is_prime(p) {
        return Err(CriteriaError::Precondition(format!("{p} is not prime")));
    }
    let c = Criterion::Torsion { p };
    let order_p: Vec<u32> = g.elements().filter(|&a| g.element_order(a) as usize == p).collect();
    if order_p.is_empty() {
        return Ok(fail(c, g, format!("no elements of order {p}"), None, vec![]));
    }
    for &a in &order_p {
        if !g.class_centralizer_trivial(a)? {
            let cent = g.class_centralizer(a)?;
            return Ok(fail(
                c,
                g,
                format!("C(a^G) has order {} at a = {}", cent.order(), g.label(a)),
                Some(g.label(a).into()),
                vec![a],
            ));
        }
    }
    let generates = g.subgroup_generated(&order_p).order() == g.order();
    let reps = class_reps(g, &order_p)?;
    Ok(CriterionOutcome::Pass(Certificate {
        criterion: c,
        group: g.name().into(),
        detail: format!(
            "{} elements of order {p} in {} classes, all with trivial class centralizer; they {} G",
            order_p.len(),
            reps.len(),
            if generates { "generate" } else { "do not generate" }
        ),
        elements: labels(g, &reps),
        formula: formulas::torsion_text("x", "y", p),
    }))
}

/// (1) any two nontrivial `m`-torsion elements `a, b`: some conjugate of `a`
/// fails to commute with `b`; (2) every element is a product of at most `n`
/// elements of `m`-torsion.
pub fn crit_bounded_torsion(g: &FiniteGroup, m: usize, n: usize) -> Result<CriterionOutcome, CriteriaError> {
    if m == 0 || n == 0 {
        return Err(CriteriaError::Precondition("bounded torsion needs m, n >= 1".into()));
    }
    let c = Criterion::BoundedTorsion { m, n };
    let e = g.identity();
    let tors = torsion_elements(g, m);
    let nontrivial: Vec<u32> = tors.iter().copied().filter(|&a| a != e).collect();
    if nontrivial.is_empty() {
        return Ok(fail(c, g, format!("no nontrivial elements of order dividing {m}"), None, vec![]));
    }
    let reps = class_reps(g, &nontrivial)?;
    // b commutes with all of a^G iff b lies in C(a^G); class reps suffice for a
    for &a in &reps {
        let cc = g.class_centralizer_bits(a)?;
        if let Some(&b) = nontrivial.iter().find(|&&b| cc.contains(b as usize)) {
            return Ok(fail(
                c,
                g,
                format!("every conjugate of {} commutes with {}", g.label(a), g.label(b)),
                Some(format!("({}, {})", g.label(a), g.label(b))),
                vec![a, b],
            ));
        }
    }
    let mut reach = g.bitset(tors.iter().copied());
    for _ in 1..n {
        let next: Vec<u32> = reach
            .ones()
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|&x| tors.iter().map(move |&t| g.mul(x as u32, t)))
            .collect();
        for y in next {
            reach.insert(y as usize);
        }
    }
    if let Some(y) = g.elements().find(|&y| !reach.contains(y as usize)) {
        return Ok(fail(
            c,
            g,
            format!("{} is not a product of {n} elements of order dividing {m}", g.label(y)),
            Some(g.label(y).into()),
            vec![y],
        ));
    }
    Ok(CriterionOutcome::Pass(Certificate {
        criterion: c,
        group: g.name().into(),
        detail: format!(
            "{} nontrivial elements of order dividing {m} are separated by conjugates and generate in {n} steps",
            nontrivial.len()
        ),
        elements: labels(g, &reps),
        formula: String::new(),
    }))
}

/// Perfect, commutator width at most `m`, and `C_G(H) = Z(G)` for every
/// nonabelian normal `H`.
pub fn crit_perfect_dagger(g: &FiniteGroup, m: usize) -> Result<CriterionOutcome, CriteriaError> {
    let c = Criterion::PerfectDagger { m };
    if !g.is_perfect()? {
        let ab = g.abelianization()?;
        return Ok(fail(c, g, format!("not perfect: abelianization {ab:?}"), None, vec![]));
    }
    let w = g.commutator_width()?;
    if w.width > m {
        return Ok(fail(c, g, format!("commutator width {} exceeds {m}", w.width), None, vec![]));
    }
    let z = g.center();
    let normals = g.normal_subgroups()?;
    let mut checked = 0;
    for h in normals.iter().filter(|h| !h.abelian) {
        checked += 1;
        let ch = g.centralizer(&h.elements)?;
        if ch.elements != z.elements {
            return Ok(fail(
                c,
                g,
                format!("nonabelian normal subgroup of order {} has centralizer of order {}", h.order(), ch.order()),
                Some(format!("normal subgroup of order {}", h.order())),
                h.elements.clone(),
            ));
        }
    }
    Ok(CriterionOutcome::Pass(Certificate {
        criterion: c,
        group: g.name().into(),
        detail: format!(
            "perfect, width {}, {} normal subgroups of which {checked} nonabelian, each with centralizer Z(G) of order {}",
            w.width,
            normals.len(),
            z.order()
        ),
        elements: vec![],
        formula: String::new(),
    }))
}

/// Transpositions and `e` in the sense of the transposition formula, computed
/// directly: `x^2 = e`, every `(x x^g)^6 = e`, and `x = e` or some `x x^g`
/// has order exactly 3.
pub fn transposition_set(g: &FiniteGroup) -> Vec<u32> {
    let e = g.identity();
    g.elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&x| {
            if g.mul(x, x) != e {
                return false;
            }
            let prod = |h: u32| g.mul(x, g.conj(x, h));
            g.elements().all(|h| g.pow(prod(h), 6) == e) && (x == e || g.elements().any(|h| g.element_order(prod(h)) == 3))
        })
        .collect()
}

/// Decides whether `(∀z ∈ Θ)(x R z → y R z)` is equivalent to `x = e → y = e`
/// in `G`, where `x R z` means `x ∈ C(z^G)`. Returns a counterexample `(x, y)`
/// or `None`.
///
/// The formula at `(x, y)` is `Z_x ⊆ Z_y` with `Z_x = {z ∈ Θ : x R z}`.
pub fn relative_centralizer_equivalence(g: &FiniteGroup, theta: &[u32]) -> Result<Option<(u32, u32)>, CriteriaError> {
    let e = g.identity();
    let cents: Vec<&FixedBitSet> = theta.iter().map(|&z| g.class_centralizer_bits(z)).collect::<Result<_, _>>()?;
    let zset = |x: u32| -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(theta.len());
        for (i, c) in cents.iter().enumerate() {
            if c.contains(x as usize) {
                b.insert(i);
            }
        }
        b
    };
    let sets: Vec<FixedBitSet> = g.elements().collect::<Vec<_>>().par_iter().map(|&x| zset(x)).collect();
    let holds = |x: u32, y: u32| sets[x as usize].is_subset(&sets[y as usize]);
    // x = e: the formula must fail for every y != e
    if let Some(y) = g.elements().find(|&y| y != e && holds(e, y)) {
        return Ok(Some((e, y)));
    }
    // x != e: the formula must hold for every y; compare with the meet
    let mut meet = sets[e as usize].clone();
    for s in &sets {
        meet.intersect_with(s);
    }
    for x in g.elements().filter(|&x| x != e) {
        if !sets[x as usize].is_subset(&meet) {
            let y = g.elements().find(|&y| !holds(x, y)).expect("some Z_y misses part of Z_x");
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// The uniform formula over the transposition set: passes when it expresses
/// `x = e → y = e` in `G`.
pub fn uniform_formula_check(g: &FiniteGroup) -> Result<CriterionOutcome, CriteriaError> {
    let c = Criterion::UniformFormula;
    let theta = transposition_set(g);
    match relative_centralizer_equivalence(g, &theta)? {
        Some((x, y)) => Ok(fail(
            c,
            g,
            format!(
                "formula disagrees with x = e -> y = e at x = {}, y = {} ({} elements satisfy the transposition formula)",
                g.label(x),
                g.label(y),
                theta.len()
            ),
            Some(format!("({}, {})", g.label(x), g.label(y))),
            vec![x, y],
        )),
        None => {
            let reps = class_reps(g, &theta)?;
            Ok(CriterionOutcome::Pass(Certificate {
                criterion: c,
                group: g.name().into(),
                detail: format!(
                    "{} elements satisfy the transposition formula; the relative-centralizer formula over them expresses x = e -> y = e",
                    theta.len()
                ),
                elements: labels(g, &reps),
                formula: formulas::symmetric_uniform_text("x", "y"),
            }))
        }
    }
}
