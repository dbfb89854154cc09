//! Seeded random structures and formulas for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{FiniteStructure, Formula, Signature, Symbol, Term};

/// `{P/1, R/2; f/1, c}`: small but exercises every table kind.
pub fn test_signature() -> Signature {
    Signature::new(
        vec![Symbol::new("P", 1), Symbol::new("R", 2)],
        vec![Symbol::new("f", 1)],
        vec!["c".into()],
    )
    .expect("valid signature")
}

/// Uniform random tables over `sig` with `n` elements.
pub fn random_structure<R: Rng>(rng: &mut R, sig: &Signature, n: usize) -> FiniteStructure {
    let rels = sig.relations.iter().map(|s| (0..n.pow(s.arity as u32)).map(|_| rng.gen_bool(0.5)).collect()).collect();
    let funs =
        sig.functions.iter().map(|s| (0..n.pow(s.arity as u32)).map(|_| rng.gen_range(0..n as u32)).collect()).collect();
    let consts = sig.constants.iter().map(|_| rng.gen_range(0..n as u32)).collect();
    FiniteStructure::new(sig.clone(), (0..n).map(|i| i.to_string()).collect(), rels, funs, consts)
        .expect("tables sized from the signature")
}

fn random_term<R: Rng>(rng: &mut R, sig: &Signature, vars: &[String], depth: usize) -> Term {
    let choices = vars.len() + sig.constants.len();
    if depth > 0 && !sig.functions.is_empty() && rng.gen_bool(0.3) {
        let s = sig.functions.choose(rng).unwrap();
        let args = (0..s.arity).map(|_| random_term(rng, sig, vars, depth - 1)).collect();
        return Term::App(s.name.clone(), args);
    }
    let k = rng.gen_range(0..choices);
    if k < vars.len() {
        Term::Var(vars[k].clone())
    } else {
        Term::Const(sig.constants[k - vars.len()].clone())
    }
}

fn random_atom<R: Rng>(rng: &mut R, sig: &Signature, vars: &[String]) -> Formula {
    if sig.relations.is_empty() || rng.gen_bool(0.3) {
        return Formula::eq(random_term(rng, sig, vars, 1), random_term(rng, sig, vars, 1));
    }
    let s = sig.relations.choose(rng).unwrap();
    Formula::rel(&s.name, (0..s.arity).map(|_| random_term(rng, sig, vars, 1)).collect())
}

fn fresh(vars: &[String]) -> String {
    format!("v{}", vars.len())
}

fn extend(vars: &[String], x: &str) -> Vec<String> {
    let mut v = vars.to_vec();
    v.push(x.to_string());
    v
}

/// Any first-order formula over `vars` of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, sig: &Signature, vars: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_atom(rng, sig, vars);
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => Formula::not(random_formula(rng, sig, vars, d)),
        1 => Formula::and(random_formula(rng, sig, vars, d), random_formula(rng, sig, vars, d)),
        2 => Formula::or(random_formula(rng, sig, vars, d), random_formula(rng, sig, vars, d)),
        3 => Formula::implies(random_formula(rng, sig, vars, d), random_formula(rng, sig, vars, d)),
        4 => Formula::iff(random_formula(rng, sig, vars, d), random_formula(rng, sig, vars, d)),
        5 | 6 => {
            let x = fresh(vars);
            let body = random_formula(rng, sig, &extend(vars, &x), d);
            if rng.gen_bool(0.5) {
                Formula::exists(&x, body)
            } else {
                Formula::forall(&x, body)
            }
        }
        _ => random_atom(rng, sig, vars),
    }
}

/// A formula in the h-grammar: atomics closed under `∧`, `∃`, `∀`, the
/// guarded construct and (optionally) bare `(∀x)(φ → ψ)`.
pub fn random_h_formula<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    vars: &[String],
    depth: usize,
    bare_implications: bool,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_atom(rng, sig, vars);
    }
    let d = depth - 1;
    let x = fresh(vars);
    let inner = extend(vars, &x);
    match rng.gen_range(0..6) {
        0 | 1 => Formula::and(
            random_h_formula(rng, sig, vars, d, bare_implications),
            random_h_formula(rng, sig, vars, d, bare_implications),
        ),
        2 => Formula::exists(&x, random_h_formula(rng, sig, &inner, d, bare_implications)),
        3 => Formula::forall(&x, random_h_formula(rng, sig, &inner, d, bare_implications)),
        4 => {
            let phi = random_h_formula(rng, sig, &inner, d.min(1), bare_implications);
            let psi = random_h_formula(rng, sig, &inner, d, bare_implications);
            Formula::and(Formula::exists(&x, phi.clone()), Formula::forall(&x, Formula::implies(phi, psi)))
        }
        _ if bare_implications => {
            let phi = random_h_formula(rng, sig, &inner, d.min(1), bare_implications);
            let psi = random_h_formula(rng, sig, &inner, d, bare_implications);
            Formula::forall(&x, Formula::implies(phi, psi))
        }
        _ => random_atom(rng, sig, vars),
    }
}

/// An h-grammar formula with one node (chosen at random) wrapped in `¬` or
/// joined with `∨`, so that it leaves the grammar.
pub fn random_non_h_formula<R: Rng>(rng: &mut R, sig: &Signature, vars: &[String], depth: usize) -> Formula {
    let h = random_h_formula(rng, sig, vars, depth, false);
    let nodes = h.size();
    let target = rng.gen_range(0..nodes);
    let use_or = rng.gen_bool(0.5);
    let other = random_atom(rng, sig, vars);
    spoil(&h, &mut 0, target, use_or, &other)
}

fn spoil(f: &Formula, count: &mut usize, target: usize, use_or: bool, other: &Formula) -> Formula {
    use super::Kind;
    let here = *count;
    *count += 1;
    if here == target {
        return if use_or { Formula::or(f.clone(), other.clone()) } else { Formula::not(f.clone()) };
    }
    let mut rec = |g: &Formula| spoil(g, count, target, use_or, other);
    match f.kind() {
        Kind::Rel(..) | Kind::Eq(..) => f.clone(),
        Kind::Not(a) => Formula::not(rec(a)),
        Kind::And(a, b) => {
            let a = rec(a);
            Formula::and(a, rec(b))
        }
        Kind::Or(a, b) => {
            let a = rec(a);
            Formula::or(a, rec(b))
        }
        Kind::Implies(a, b) => {
            let a = rec(a);
            Formula::implies(a, rec(b))
        }
        Kind::Iff(a, b) => {
            let a = rec(a);
            Formula::iff(a, rec(b))
        }
        Kind::Exists(x, a) => Formula::exists(x, rec(a)),
        Kind::Forall(x, a) => Formula::forall(x, rec(a)),
    }
}
