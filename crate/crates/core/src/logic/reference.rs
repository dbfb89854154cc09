//! Naive evaluator: direct recursion, no memo tables, no guards, no threads.
//! Kept deliberately simple so it can serve as a test oracle.

use super::formula::{Formula, Kind, Term};
use super::structure::Interp;
use super::{Assignment, LogicError};

fn term<S: Interp>(m: &S, t: &Term, a: &Assignment) -> Result<u32, LogicError> {
    let sig = m.signature();
    match t {
        Term::Var(v) => a.get(v).ok_or_else(|| LogicError::MissingBinding(v.clone())),
        Term::Const(c) => sig
            .constant(c)
            .map(|i| m.constant(i))
            .ok_or_else(|| LogicError::SignatureMismatch(format!("constant `{c}`"))),
        Term::App(f, args) => {
            let (i, _) = sig.function(f).ok_or_else(|| LogicError::SignatureMismatch(format!("function `{f}`")))?;
            let vals = args.iter().map(|x| term(m, x, a)).collect::<Result<Vec<_>, _>>()?;
            Ok(m.apply(i, &vals))
        }
    }
}

pub fn eval_naive<S: Interp>(m: &S, f: &Formula, a: &Assignment) -> Result<bool, LogicError> {
    Ok(match f.kind() {
        Kind::Rel(r, ts) => {
            let (i, _) =
                m.signature().relation(r).ok_or_else(|| LogicError::SignatureMismatch(format!("relation `{r}`")))?;
            let vals = ts.iter().map(|x| term(m, x, a)).collect::<Result<Vec<_>, _>>()?;
            m.holds(i, &vals)
        }
        Kind::Eq(s, t) => term(m, s, a)? == term(m, t, a)?,
        Kind::Not(p) => !eval_naive(m, p, a)?,
        Kind::And(p, q) => eval_naive(m, p, a)? & eval_naive(m, q, a)?,
        Kind::Or(p, q) => eval_naive(m, p, a)? | eval_naive(m, q, a)?,
        Kind::Implies(p, q) => !eval_naive(m, p, a)? | eval_naive(m, q, a)?,
        Kind::Iff(p, q) => eval_naive(m, p, a)? == eval_naive(m, q, a)?,
        Kind::Exists(x, p) | Kind::Forall(x, p) => {
            let exists = matches!(f.kind(), Kind::Exists(..));
            let mut any = false;
            let mut all = true;
            for v in 0..m.size() as u32 {
                let b = eval_naive(m, p, &a.clone().with(x, v))?;
                any |= b;
                all &= b;
            }
            if exists {
                any
            } else {
                all
            }
        }
    })
}
