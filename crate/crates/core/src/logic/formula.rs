use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::signature::MUL;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::App(MUL.to_string(), vec![a, b])
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|t| t.vars(out)),
        }
    }

    fn rename(&self, map: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::Const(c) => Term::Const(c.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.rename(map)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => write!(f, "{v}"),
            Term::App(name, args) if name == MUL && args.len() == 2 => {
                write!(f, "(")?;
                write_factor(f, &args[0])?;
                write!(f, " * ")?;
                write_factor(f, &args[1])?;
                write!(f, ")")
            }
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    write!(f, "{t}")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Rel(String, Vec<Term>),
    Eq(Term, Term),
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Implies(Formula, Formula),
    Iff(Formula, Formula),
    Exists(String, Formula),
    Forall(String, Formula),
}

/// First-order formula. Each node caches its free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    kind: Box<Kind>,
    free: BTreeSet<String>,
}

impl Formula {
    pub fn from_kind(kind: Kind) -> Formula {
        let free = match &kind {
            Kind::Rel(_, ts) => {
                let mut s = BTreeSet::new();
                ts.iter().for_each(|t| t.vars(&mut s));
                s
            }
            Kind::Eq(a, b) => {
                let mut s = BTreeSet::new();
                a.vars(&mut s);
                b.vars(&mut s);
                s
            }
            Kind::Not(a) => a.free.clone(),
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Implies(a, b) | Kind::Iff(a, b) => {
                a.free.union(&b.free).cloned().collect()
            }
            Kind::Exists(x, a) | Kind::Forall(x, a) => {
                let mut s = a.free.clone();
                s.remove(x);
                s
            }
        };
        Formula { kind: Box::new(kind), free }
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn free_vars(&self) -> &BTreeSet<String> {
        &self.free
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::from_kind(Kind::Eq(a, b))
    }
    pub fn rel(r: &str, args: Vec<Term>) -> Formula {
        Formula::from_kind(Kind::Rel(r.to_string(), args))
    }
    pub fn not(a: Formula) -> Formula {
        Formula::from_kind(Kind::Not(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::And(a, b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Or(a, b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Implies(a, b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Iff(a, b))
    }
    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::from_kind(Kind::Exists(x.to_string(), a))
    }
    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::from_kind(Kind::Forall(x.to_string(), a))
    }

    /// Recomputes free variables from scratch (used to audit the cache).
    pub fn recompute_free(&self) -> BTreeSet<String> {
        match self.kind() {
            Kind::Rel(_, ts) => {
                let mut s = BTreeSet::new();
                ts.iter().for_each(|t| t.vars(&mut s));
                s
            }
            Kind::Eq(a, b) => {
                let mut s = BTreeSet::new();
                a.vars(&mut s);
                b.vars(&mut s);
                s
            }
            Kind::Not(a) => a.recompute_free(),
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Implies(a, b) | Kind::Iff(a, b) => {
                let mut s = a.recompute_free();
                s.extend(b.recompute_free());
                s
            }
            Kind::Exists(x, a) | Kind::Forall(x, a) => {
                let mut s = a.recompute_free();
                s.remove(x);
                s
            }
        }
    }

    /// True when every node's cached free set equals the recomputed one.
    pub fn free_cache_consistent(&self) -> bool {
        if self.free != self.recompute_free() {
            return false;
        }
        match self.kind() {
            Kind::Rel(..) | Kind::Eq(..) => true,
            Kind::Not(a) | Kind::Exists(_, a) | Kind::Forall(_, a) => a.free_cache_consistent(),
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Implies(a, b) | Kind::Iff(a, b) => {
                a.free_cache_consistent() && b.free_cache_consistent()
            }
        }
    }

    /// Renames free variables. Bound variables are left alone, so the map
    /// must not send a free variable onto a name bound inside the formula.
    pub fn rename_free(&self, map: &BTreeMap<String, String>) -> Formula {
        match self.kind() {
            Kind::Rel(r, ts) => Formula::rel(r, ts.iter().map(|t| t.rename(map)).collect()),
            Kind::Eq(a, b) => Formula::eq(a.rename(map), b.rename(map)),
            Kind::Not(a) => Formula::not(a.rename_free(map)),
            Kind::And(a, b) => Formula::and(a.rename_free(map), b.rename_free(map)),
            Kind::Or(a, b) => Formula::or(a.rename_free(map), b.rename_free(map)),
            Kind::Implies(a, b) => Formula::implies(a.rename_free(map), b.rename_free(map)),
            Kind::Iff(a, b) => Formula::iff(a.rename_free(map), b.rename_free(map)),
            Kind::Exists(x, a) | Kind::Forall(x, a) => {
                let mut inner = map.clone();
                inner.remove(x);
                let body = a.rename_free(&inner);
                if matches!(self.kind(), Kind::Exists(..)) {
                    Formula::exists(x, body)
                } else {
                    Formula::forall(x, body)
                }
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            Kind::Rel(..) | Kind::Eq(..) => 1,
            Kind::Not(a) | Kind::Exists(_, a) | Kind::Forall(_, a) => 1 + a.size(),
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Implies(a, b) | Kind::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Short name of the top node.
    pub fn node_name(&self) -> &'static str {
        match self.kind() {
            Kind::Rel(..) => "relation atom",
            Kind::Eq(..) => "equality",
            Kind::Not(_) => "negation",
            Kind::And(..) => "conjunction",
            Kind::Or(..) => "disjunction",
            Kind::Implies(..) => "implication",
            Kind::Iff(..) => "biconditional",
            Kind::Exists(..) => "existential",
            Kind::Forall(..) => "universal",
        }
    }
}

/// Alpha-equivalence: equal up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_eq_in(a, b, &mut Vec::new())
}

/// Alpha-equivalence where free `x` in `a` corresponds to free `y` in `b`.
pub fn alpha_eq_with(a: &Formula, x: &str, b: &Formula, y: &str) -> bool {
    alpha_eq_in(a, b, &mut vec![(x.to_string(), y.to_string())])
}

fn term_alpha_eq(a: &Term, b: &Term, env: &[(String, String)]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            for (l, r) in env.iter().rev() {
                if l == x || r == y {
                    return l == x && r == y;
                }
            }
            x == y
        }
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_alpha_eq(s, t, env))
        }
        _ => false,
    }
}

fn alpha_eq_in(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (a.kind(), b.kind()) {
        (Kind::Rel(r, xs), Kind::Rel(s, ys)) => {
            r == s && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_alpha_eq(s, t, env))
        }
        (Kind::Eq(a1, a2), Kind::Eq(b1, b2)) => term_alpha_eq(a1, b1, env) && term_alpha_eq(a2, b2, env),
        (Kind::Not(x), Kind::Not(y)) => alpha_eq_in(x, y, env),
        (Kind::And(a1, a2), Kind::And(b1, b2))
        | (Kind::Or(a1, a2), Kind::Or(b1, b2))
        | (Kind::Implies(a1, a2), Kind::Implies(b1, b2))
        | (Kind::Iff(a1, a2), Kind::Iff(b1, b2)) => alpha_eq_in(a1, b1, env) && alpha_eq_in(a2, b2, env),
        (Kind::Exists(x, p), Kind::Exists(y, q)) | (Kind::Forall(x, p), Kind::Forall(y, q)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_in(p, q, env);
            env.pop();
            r
        }
        _ => false,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Rel(r, ts) => {
                write!(f, "{r}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Kind::Eq(a, b) => write!(f, "{a} = {b}"),
            Kind::Not(a) => write!(f, "!({a})"),
            Kind::And(a, b) => write!(f, "({a} & {b})"),
            Kind::Or(a, b) => write!(f, "({a} | {b})"),
            Kind::Implies(a, b) => write!(f, "({a} -> {b})"),
            Kind::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Kind::Exists(x, a) => write!(f, "(E {x})({a})"),
            Kind::Forall(x, a) => write!(f, "(A {x})({a})"),
        }
    }
}
