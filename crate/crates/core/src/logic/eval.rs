//! Tarskian evaluation over finite interpretations.
//!
//! Formulas are compiled into a node arena. Quantified subformulas with at
//! most three free variables are memoised in dense tables, and a quantifier
//! whose body (or antecedent, for `(A x)(g -> ..)`) has conjuncts mentioning
//! only the bound variable iterates over the precomputed satisfying set of
//! those conjuncts.

use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::OnceLock;

use super::formula::{Formula, Kind, Term};
use super::structure::Interp;
use super::LogicError;

/// Variable name to universe index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub BTreeMap<String, u32>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn with(mut self, var: &str, val: u32) -> Self {
        self.0.insert(var.to_string(), val);
        self
    }

    pub fn get(&self, var: &str) -> Option<u32> {
        self.0.get(var).copied()
    }

    pub fn from_pairs(vars: &[String], vals: &[u32]) -> Self {
        Assignment(vars.iter().cloned().zip(vals.iter().copied()).collect())
    }

    /// Renders with element labels, e.g. `x=(12), y=e`.
    pub fn display<S: Interp>(&self, m: &S) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={}", m.label(*v))).collect::<Vec<_>>().join(", ")
    }
}

const MEMO_CELLS: usize = 1 << 22;
const CHUNK: usize = 2048;

enum CTerm {
    Slot(usize),
    Val(u32),
    App1(usize, Box<CTerm>),
    App2(usize, Box<CTerm>, Box<CTerm>),
    AppN(usize, Vec<CTerm>),
}

struct Memo {
    slots: Vec<usize>,
    cells: Vec<AtomicU8>,
}

struct Guard {
    node: usize,
    set: OnceLock<Vec<u32>>,
}

enum Node {
    True,
    Rel(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Iff(usize, usize),
    Quant { exists: bool, slot: usize, residual: usize, guard: Option<Guard>, memo: Option<Memo> },
}

struct Program {
    nodes: Vec<Node>,
    root: usize,
    slots: usize,
}

struct Compiler<'s, S: Interp> {
    m: &'s S,
    nodes: Vec<Node>,
    slots: usize,
}

impl<'s, S: Interp> Compiler<'s, S> {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn term(&mut self, t: &Term, scope: &BTreeMap<String, usize>) -> Result<CTerm, LogicError> {
        let sig = self.m.signature();
        Ok(match t {
            Term::Var(v) => CTerm::Slot(*scope.get(v).ok_or_else(|| LogicError::MissingBinding(v.clone()))?),
            Term::Const(c) => {
                let i = sig.constant(c).ok_or_else(|| LogicError::SignatureMismatch(format!("constant `{c}`")))?;
                CTerm::Val(self.m.constant(i))
            }
            Term::App(f, args) => {
                let (i, arity) =
                    sig.function(f).ok_or_else(|| LogicError::SignatureMismatch(format!("function `{f}`")))?;
                if arity != args.len() {
                    return Err(LogicError::Arity { name: f.clone(), expected: arity, found: args.len() });
                }
                let mut cs = args.iter().map(|a| self.term(a, scope)).collect::<Result<Vec<_>, _>>()?;
                match cs.len() {
                    1 => CTerm::App1(i, Box::new(cs.pop().unwrap())),
                    2 => {
                        let b = cs.pop().unwrap();
                        let a = cs.pop().unwrap();
                        CTerm::App2(i, Box::new(a), Box::new(b))
                    }
                    _ => CTerm::AppN(i, cs),
                }
            }
        })
    }

    fn conj_chain(&mut self, parts: &[&Formula], scope: &BTreeMap<String, usize>) -> Result<usize, LogicError> {
        let mut acc: Option<usize> = None;
        for p in parts.iter().rev() {
            let id = self.formula(p, scope)?;
            acc = Some(match acc {
                None => id,
                Some(rest) => self.push(Node::And(id, rest)),
            });
        }
        Ok(match acc {
            Some(a) => a,
            None => self.push(Node::True),
        })
    }

    fn formula(&mut self, f: &Formula, scope: &BTreeMap<String, usize>) -> Result<usize, LogicError> {
        let node = match f.kind() {
            Kind::Rel(r, ts) => {
                let (i, arity) = self
                    .m
                    .signature()
                    .relation(r)
                    .ok_or_else(|| LogicError::SignatureMismatch(format!("relation `{r}`")))?;
                if arity != ts.len() {
                    return Err(LogicError::Arity { name: r.clone(), expected: arity, found: ts.len() });
                }
                let cs = ts.iter().map(|t| self.term(t, scope)).collect::<Result<Vec<_>, _>>()?;
                Node::Rel(i, cs)
            }
            Kind::Eq(a, b) => Node::Eq(self.term(a, scope)?, self.term(b, scope)?),
            Kind::Not(a) => Node::Not(self.formula(a, scope)?),
            Kind::And(a, b) => Node::And(self.formula(a, scope)?, self.formula(b, scope)?),
            Kind::Or(a, b) => Node::Or(self.formula(a, scope)?, self.formula(b, scope)?),
            Kind::Implies(a, b) => Node::Imp(self.formula(a, scope)?, self.formula(b, scope)?),
            Kind::Iff(a, b) => Node::Iff(self.formula(a, scope)?, self.formula(b, scope)?),
            Kind::Exists(x, body) | Kind::Forall(x, body) => {
                let exists = matches!(f.kind(), Kind::Exists(..));
                let slot = self.slots;
                self.slots += 1;
                let mut inner = scope.clone();
                inner.insert(x.clone(), slot);
                let only_x = |g: &Formula| g.free_vars().iter().all(|v| v == x);
                let (guard_parts, residual) = if exists {
                    let parts = conjuncts(body);
                    let (g, r): (Vec<&Formula>, Vec<&Formula>) = parts.into_iter().partition(|g| only_x(g));
                    if g.is_empty() {
                        (g, self.formula(body, &inner)?)
                    } else {
                        let r = self.conj_chain(&r, &inner)?;
                        (g, r)
                    }
                } else if let Kind::Implies(ante, cons) = body.kind() {
                    let parts = conjuncts(ante);
                    let (g, r): (Vec<&Formula>, Vec<&Formula>) = parts.into_iter().partition(|g| only_x(g));
                    if g.is_empty() {
                        (g, self.formula(body, &inner)?)
                    } else if r.is_empty() {
                        (g, self.formula(cons, &inner)?)
                    } else {
                        let a = self.conj_chain(&r, &inner)?;
                        let c = self.formula(cons, &inner)?;
                        (g, self.push(Node::Imp(a, c)))
                    }
                } else {
                    (vec![], self.formula(body, &inner)?)
                };
                let guard = if guard_parts.is_empty() {
                    None
                } else {
                    Some(Guard { node: self.conj_chain(&guard_parts, &inner)?, set: OnceLock::new() })
                };
                let n = self.m.size();
                let fslots: Vec<usize> = f.free_vars().iter().map(|v| scope[v]).collect();
                let cells = n.checked_pow(fslots.len() as u32).unwrap_or(usize::MAX);
                let memo = (fslots.len() <= 3 && cells <= MEMO_CELLS)
                    .then(|| Memo { slots: fslots, cells: (0..cells).map(|_| AtomicU8::new(0)).collect() });
                Node::Quant { exists, slot, residual, guard, memo }
            }
        };
        Ok(self.push(node))
    }
}

fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f.kind() {
        Kind::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        _ => vec![f],
    }
}

impl Program {
    fn compile<S: Interp>(m: &S, f: &Formula, vars: &[String]) -> Result<Program, LogicError> {
        for v in f.free_vars() {
            if !vars.contains(v) {
                return Err(LogicError::MissingBinding(v.clone()));
            }
        }
        let scope: BTreeMap<String, usize> = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut c = Compiler { m, nodes: Vec::new(), slots: vars.len() };
        let root = c.formula(f, &scope)?;
        Ok(Program { nodes: c.nodes, root, slots: c.slots })
    }

    #[inline]
    fn term<S: Interp>(&self, m: &S, t: &CTerm, env: &[u32]) -> u32 {
        match t {
            CTerm::Slot(s) => env[*s],
            CTerm::Val(v) => *v,
            CTerm::App1(f, a) => m.apply(*f, &[self.term(m, a, env)]),
            CTerm::App2(f, a, b) => m.apply(*f, &[self.term(m, a, env), self.term(m, b, env)]),
            CTerm::AppN(f, args) => {
                let vals: Vec<u32> = args.iter().map(|a| self.term(m, a, env)).collect();
                m.apply(*f, &vals)
            }
        }
    }

    fn guard_set<'a, S: Interp>(&self, m: &S, g: &'a Guard, slot: usize) -> &'a [u32] {
        g.set.get_or_init(|| {
            let mut env = vec![0u32; self.slots];
            (0..m.size() as u32)
                .filter(|&v| {
                    env[slot] = v;
                    self.ev(m, g.node, &mut env)
                })
                .collect()
        })
    }

    fn ev<S: Interp>(&self, m: &S, id: usize, env: &mut [u32]) -> bool {
        match &self.nodes[id] {
            Node::True => true,
            Node::Rel(r, ts) => {
                let vals: Vec<u32> = ts.iter().map(|t| self.term(m, t, env)).collect();
                m.holds(*r, &vals)
            }
            Node::Eq(a, b) => self.term(m, a, env) == self.term(m, b, env),
            Node::Not(a) => !self.ev(m, *a, env),
            Node::And(a, b) => self.ev(m, *a, env) && self.ev(m, *b, env),
            Node::Or(a, b) => self.ev(m, *a, env) || self.ev(m, *b, env),
            Node::Imp(a, b) => !self.ev(m, *a, env) || self.ev(m, *b, env),
            Node::Iff(a, b) => self.ev(m, *a, env) == self.ev(m, *b, env),
            Node::Quant { exists, slot, residual, guard, memo } => {
                let key = memo.as_ref().map(|mm| {
                    let n = m.size();
                    mm.slots.iter().fold(0usize, |acc, &s| acc * n + env[s] as usize)
                });
                if let (Some(mm), Some(k)) = (memo, key) {
                    match mm.cells[k].load(Ordering::Relaxed) {
                        1 => return false,
                        2 => return true,
                        _ => {}
                    }
                }
                let saved = env[*slot];
                let result = match guard {
                    Some(g) => {
                        let set = self.guard_set(m, g, *slot);
                        if *exists {
                            set.iter().any(|&v| {
                                env[*slot] = v;
                                self.ev(m, *residual, env)
                            })
                        } else {
                            set.iter().all(|&v| {
                                env[*slot] = v;
                                self.ev(m, *residual, env)
                            })
                        }
                    }
                    None => {
                        let n = m.size() as u32;
                        if *exists {
                            (0..n).any(|v| {
                                env[*slot] = v;
                                self.ev(m, *residual, env)
                            })
                        } else {
                            (0..n).all(|v| {
                                env[*slot] = v;
                                self.ev(m, *residual, env)
                            })
                        }
                    }
                };
                env[*slot] = saved;
                if let (Some(mm), Some(k)) = (memo, key) {
                    mm.cells[k].store(if result { 2 } else { 1 }, Ordering::Relaxed);
                }
                result
            }
        }
    }
}

/// A formula compiled against one interpretation, with its free variables
/// fixed in a given order. Memo tables persist across calls.
pub struct Evaluator<'m, S: Interp> {
    m: &'m S,
    prog: Program,
    vars: Vec<String>,
}

impl<'m, S: Interp> Evaluator<'m, S> {
    /// `vars` must include every free variable of `phi`.
    pub fn new(m: &'m S, phi: &Formula, vars: &[String]) -> Result<Self, LogicError> {
        let prog = Program::compile(m, phi, vars)?;
        Ok(Evaluator { m, prog, vars: vars.to_vec() })
    }

    /// Uses the free variables of `phi` in sorted order.
    pub fn for_free(m: &'m S, phi: &Formula) -> Result<Self, LogicError> {
        let vars: Vec<String> = phi.free_vars().iter().cloned().collect();
        Self::new(m, phi, &vars)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn eval_tuple(&self, vals: &[u32]) -> bool {
        let mut env = vec![0u32; self.prog.slots];
        env[..vals.len()].copy_from_slice(vals);
        self.prog.ev(self.m, self.prog.root, &mut env)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, LogicError> {
        let vals = self
            .vars
            .iter()
            .map(|v| a.get(v).ok_or_else(|| LogicError::MissingBinding(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(bad) = vals.iter().find(|&&x| x as usize >= self.m.size()) {
            return Err(LogicError::Invalid(format!("value {bad} outside the universe")));
        }
        Ok(self.eval_tuple(&vals))
    }

    fn count(&self) -> usize {
        self.m.size().pow(self.vars.len() as u32)
    }

    fn decode(&self, mut i: usize, out: &mut [u32]) {
        let n = self.m.size();
        for k in (0..out.len()).rev() {
            out[k] = (i % n) as u32;
            i /= n;
        }
    }

    /// Least tuple (lexicographic, first variable most significant) with the
    /// given truth value.
    pub fn first_with(&self, want: bool) -> Option<Vec<u32>> {
        let total = self.count();
        let chunks = total.div_ceil(CHUNK);
        let k = self.vars.len();
        (0..chunks).into_par_iter().find_map_first(|c| {
            let mut env = vec![0u32; self.prog.slots];
            let mut tup = vec![0u32; k];
            for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                self.decode(i, &mut tup);
                env[..k].copy_from_slice(&tup);
                if self.prog.ev(self.m, self.prog.root, &mut env) == want {
                    return Some(tup);
                }
            }
            None
        })
    }

    /// All satisfying tuples in lexicographic order.
    pub fn satisfying(&self) -> Vec<Vec<u32>> {
        let total = self.count();
        let chunks = total.div_ceil(CHUNK);
        let k = self.vars.len();
        let parts: Vec<Vec<Vec<u32>>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut env = vec![0u32; self.prog.slots];
                let mut tup = vec![0u32; k];
                let mut out = Vec::new();
                for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    self.decode(i, &mut tup);
                    env[..k].copy_from_slice(&tup);
                    if self.prog.ev(self.m, self.prog.root, &mut env) {
                        out.push(tup.clone());
                    }
                }
                out
            })
            .collect();
        parts.concat()
    }
}

/// `M ⊨ φ[a]`.
pub fn eval<S: Interp>(m: &S, phi: &Formula, a: &Assignment) -> Result<bool, LogicError> {
    Evaluator::for_free(m, phi)?.eval(a)
}

/// `None` when `φ ↔ ψ` holds under every assignment of their free
/// variables; otherwise the least falsifying assignment.
pub fn equivalent_in<S: Interp>(m: &S, phi: &Formula, psi: &Formula) -> Result<Option<Assignment>, LogicError> {
    let both = Formula::iff(phi.clone(), psi.clone());
    let ev = Evaluator::for_free(m, &both)?;
    Ok(ev.first_with(false).map(|t| Assignment::from_pairs(ev.vars(), &t)))
}

/// Like [`equivalent_in`], after renaming free variables of `psi`.
pub fn equivalent_in_renamed<S: Interp>(
    m: &S,
    phi: &Formula,
    psi: &Formula,
    renaming: &BTreeMap<String, String>,
) -> Result<Option<Assignment>, LogicError> {
    equivalent_in(m, phi, &psi.rename_free(renaming))
}

/// `None` when `φ` holds under every assignment; else the least failure.
pub fn valid_in<S: Interp>(m: &S, phi: &Formula) -> Result<Option<Assignment>, LogicError> {
    let ev = Evaluator::for_free(m, phi)?;
    Ok(ev.first_with(false).map(|t| Assignment::from_pairs(ev.vars(), &t)))
}

/// Satisfying tuples of `φ` over `vars` (which must cover its free variables).
pub fn definable_set<S: Interp>(m: &S, phi: &Formula, vars: &[String]) -> Result<Vec<Vec<u32>>, LogicError> {
    Ok(Evaluator::new(m, phi, vars)?.satisfying())
}
