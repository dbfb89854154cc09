//! Concrete formulas used by the criteria and the verification registry, as
//! DSL text plus parsed forms.
//!
//! Where a formula as usually written turned out not to do its job on finite
//! instances, both the literal and the working version are kept, so reports
//! can show how far the literal one is off.

use crate::logic::{parse_formula, Formula, LogicError, Signature};

/// `t*t*...*t`, `k` factors.
pub fn power(t: &str, k: usize) -> String {
    vec![t; k.max(1)].join("*")
}

/// `x` commutes with every conjugate of `y`: `x ∈ C(y^G)`.
pub fn class_centralizes(x: &str, y: &str, t: &str) -> String {
    let c = format!("{t}*{y}*inv({t})");
    format!("(A {t})({x}*{c} = {c}*{x})")
}

fn x_conj(x: &str, g: &str) -> String {
    format!("{x}*{g}*{x}*inv({g})")
}

/// Transpositions plus the identity. The middle conjunct bounds products of
/// two conjugates; the last one asks for a conjugate with product of order 3
/// (excluding the identity witness, which would let 2-2-cycles of S4 through).
pub fn transposition_text(x: &str, g: &str) -> String {
    let c = x_conj(x, g);
    format!(
        "{xx} = e & (A {g})({c6} = e) & ({x} = e | (E {g})({c3} = e & !({c} = e)))",
        xx = power(x, 2),
        c6 = power(&c, 6),
        c3 = power(&c, 3),
    )
}

/// The same formula with the last conjunct as usually written, `(∃g)(c^3 = e)`.
pub fn transposition_text_literal(x: &str, g: &str) -> String {
    let c = x_conj(x, g);
    format!("{} = e & (A {g})({} = e) & (E {g})({} = e)", power(x, 2), power(&c, 6), power(&c, 3))
}

/// `(∀z)((θ(z) ∧ x R z) → y R z)`, with `R` the class-centralizer relation.
/// Equivalent to `x = e → y = e` whenever the nontrivial elements picked out
/// by `θ` have trivial class centralizers and some exist.
pub fn relative_centralizer_text(x: &str, y: &str, theta: &str) -> String {
    let guard = if theta.is_empty() { String::new() } else { format!("({theta}) & ") };
    format!(
        "(A z)(({guard}{}) -> {})",
        class_centralizes(x, "z", "t"),
        class_centralizes(y, "z", "s")
    )
}

/// The conjugacy-centralizer formula, `(∀z)(x R z → y R z)`.
pub fn conj_centralizer_text(x: &str, y: &str) -> String {
    relative_centralizer_text(x, y, "")
}

/// The formula as usually written, `(∀z)(y R z → x R z)`; it expresses
/// `y = e → x = e`.
pub fn conj_centralizer_text_literal(x: &str, y: &str) -> String {
    relative_centralizer_text(y, x, "")
}

/// `(∀z)((x R z ∧ z^p = e) → y R z)`.
pub fn torsion_text(x: &str, y: &str, p: usize) -> String {
    relative_centralizer_text(x, y, &format!("{} = e", power("z", p)))
}

/// The symmetric-group formula: `z` ranges over transpositions and `e`.
pub fn symmetric_uniform_text(x: &str, y: &str) -> String {
    relative_centralizer_text(x, y, &transposition_text("z", "g"))
}

/// Substitutes `x*inv(y)` and `u*inv(v)` into a two-variable formula in `a`
/// and `b`, giving a four-variable candidate for support containment.
pub fn transport_to_pairs(two_var: impl Fn(&str, &str) -> String) -> String {
    let text = two_var("a", "b");
    replace_var(&replace_var(&text, "a", "x*inv(y)"), "b", "u*inv(v)")
}

fn replace_var(text: &str, var: &str, with: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = text.chars().collect();
    let ident = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut i = 0;
    while i < chars.len() {
        if ident(chars[i]) {
            let start = i;
            while i < chars.len() && ident(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == var {
                out.push('(');
                out.push_str(with);
                out.push(')');
            } else {
                out.push_str(&word);
            }
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

/// `ψ_≠(a,b) = (∀q)(a = b → q = b)`.
pub fn neq_text(a: &str, b: &str, q: &str) -> String {
    format!("(A {q})({a} = {b} -> {q} = {b})")
}

fn zsupp_body(first: &str) -> String {
    format!(
        "(E u)(E xp)(E yp)({first} \
         & (x = z <-> xp = z) & (A xq)((x = z <-> xq = z) -> (xq = u -> xp = u)) \
         & (y = w <-> yp = w) & (A yq)((y = w <-> yq = w) -> (yq = u -> yp = u)) \
         & (yp = u -> xp = u))"
    )
}

/// Candidate for `x = z → y = w` in pure sets with at least three elements,
/// with the auxiliary `u` required to differ from `z` and `w`.
pub fn zsupp_text() -> String {
    zsupp_body(&format!("{} & {}", neq_text("u", "z", "q"), neq_text("u", "w", "q")))
}

/// The version with `u` required to differ from `x` and `y`.
pub fn zsupp_text_literal() -> String {
    zsupp_body(&format!("{} & {}", neq_text("u", "x", "q"), neq_text("u", "y", "q")))
}

/// The loser map of the rock-paper-scissors magma: `L(t) = s`.
pub fn rps_loser_text(t: &str, s: &str) -> String {
    format!("{s}*{t} = {t} & (A r)(r*{t} = {t} -> {s}*r = r)")
}

/// `(x·L(t))·(y·L(t)) = y·L(t)` with `L(t)` unfolded; expresses `x = t → y = t`.
pub fn rps_text() -> String {
    format!("(E s)({} & (x*s)*(y*s) = y*s)", rps_loser_text("t", "s"))
}

fn le(a: &str, b: &str) -> String {
    format!("Le({a},{b})")
}

fn lt(a: &str, b: &str) -> String {
    format!("!{}", le(b, a))
}

/// `min(a,b) <= c` over `Le`.
pub fn min_le(a: &str, b: &str, c: &str, w: &str) -> String {
    format!("(A {w})(({} & {}) -> {})", le(w, a), le(w, b), le(w, c))
}

/// `min(a,b) = min(c,d)` over `Le`.
pub fn min_eq(a: &str, b: &str, c: &str, d: &str, w: &str) -> String {
    format!("(A {w})(({} & {}) <-> ({} & {}))", le(w, a), le(w, b), le(w, c), le(w, d))
}

/// `max(a,b) >= max(c,d)` over `Le`.
pub fn max_ge(a: &str, b: &str, c: &str, d: &str, w: &str) -> String {
    format!("(A {w})(({} & {}) -> ({} & {}))", le(a, w), le(b, w), le(c, w), le(d, w))
}

/// The linear-order formula; expresses `g = k → f = k` below a non-maximal
/// bound `u`.
pub fn order_text() -> String {
    let g_part = format!("{} & {}", min_eq("gp", "k", "g", "gp", "w1"), min_eq("g", "gp", "g", "k", "w2"));
    let f_part = format!("{} & {}", min_eq("fp", "k", "f", "fp", "w3"), min_eq("f", "fp", "f", "k", "w4"));
    format!(
        "(E u)({} & {} & {} & (E v)({}) & (A gp)(({g_part}) -> (E fp)({f_part} & {})))",
        lt("f", "u"),
        lt("g", "u"),
        lt("k", "u"),
        lt("u", "v"),
        max_ge("u", "fp", "u", "gp", "w5"),
    )
}

/// `x ⊴ y`: everything failing to commute with `x` has a conjugate failing to
/// commute with `y`.
pub fn trianglelefteq_text() -> String {
    "(A w)(!(w*x = x*w) -> (E u)(!(u*w*inv(u)*y = y*u*w*inv(u))))".to_string()
}

pub fn group(text: &str) -> Result<Formula, LogicError> {
    parse_formula(text, &Signature::group())
}

pub fn pure(text: &str) -> Result<Formula, LogicError> {
    parse_formula(text, &Signature::pure())
}

pub fn magma(text: &str) -> Result<Formula, LogicError> {
    parse_formula(text, &Signature::magma())
}

pub fn order(text: &str) -> Result<Formula, LogicError> {
    parse_formula(text, &Signature::order())
}

/// Two distinct transpositions `s`, `t` form an identifying pair when their
/// product has order three (the transposition guard is applied separately).
pub fn identifying_pair_text(s: &str, t: &str) -> String {
    format!("!({s} = {t}) & {} = e", power(&format!("{s}*{t}"), 3))
}

/// Body of the `same point` relation between identifying pairs `(s,t)` and
/// `(sp,tp)`, for one value of the transposition-or-`e` variable `nu`.
pub fn same_point_body() -> String {
    let cubes = ["t*nu*tp*nu", "t*nu*sp*nu", "s*nu*tp*nu", "s*nu*sp*nu"]
        .iter()
        .map(|c| format!("{} = e", power(c, 3)))
        .collect::<Vec<_>>()
        .join(" & ");
    format!("((nu*s*nu = s & !(s = nu)) -> ({cubes})) & ((nu*t*nu = t & !(t = nu)) -> ({cubes}))")
}
