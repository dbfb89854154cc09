//! Recursive-descent parser for the formula language.
//!
//! ```text
//! iff   := imp ('<->' imp)*
//! imp   := or ('->' imp)?
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | '(' ('A'|'E') var ')' unary | atom | '(' iff ')'
//! atom  := Rel '(' term,* ')' | term '=' term
//! term  := factor ('*' factor)*
//! ```

use std::collections::{BTreeMap, BTreeSet};

use super::formula::{Formula, Kind, Term};
use super::signature::{Signature, MUL};
use super::LogicError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Star,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            ',' => out.push((start, Tok::Comma)),
            '*' => {
                if chars.get(i + 1) == Some(&'*') {
                    return Err(LogicError::Lex { pos: start, msg: "unexpected `**`".into() });
                }
                out.push((start, Tok::Star))
            }
            '=' => out.push((start, Tok::Eq)),
            '!' => out.push((start, Tok::Bang)),
            '&' => out.push((start, Tok::Amp)),
            '|' => out.push((start, Tok::Pipe)),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    out.push((start, Tok::Arrow));
                } else {
                    return Err(LogicError::Lex { pos: start, msg: "expected `->`".into() });
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    i += 2;
                    out.push((start, Tok::DArrow));
                } else {
                    return Err(LogicError::Lex { pos: start, msg: "expected `<->`".into() });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push((start, Tok::Ident(chars[i..j].iter().collect())));
                i = j;
                continue;
            }
            other => {
                return Err(LogicError::Lex { pos: start, msg: format!("unexpected character `{other}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

fn is_var_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_lowercase())
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    sig: &'a Signature,
    end: usize,
}

type PResult<T> = Result<T, LogicError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(LogicError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn iff(&mut self) -> PResult<Formula> {
        let mut left = self.imp()?;
        while self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let left = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.imp()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut left = self.and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn quantifier_ahead(&self) -> Option<(bool, String)> {
        match (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
            (Some(Tok::LParen), Some(Tok::Ident(q)), Some(Tok::Ident(v)), Some(Tok::RParen))
                if (q == "A" || q == "E") && is_var_name(v) =>
            {
                Some((q == "E", v.clone()))
            }
            _ => None,
        }
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.peek() == Some(&Tok::Bang) {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        if let Some((existential, v)) = self.quantifier_ahead() {
            if self.sig.constant(&v).is_some() {
                return self.err(format!("cannot quantify over constant `{v}`"));
            }
            self.pos += 4;
            let body = self.unary()?;
            return Ok(if existential { Formula::exists(&v, body) } else { Formula::forall(&v, body) });
        }
        match self.peek() {
            Some(Tok::LParen) => {
                let save = self.pos;
                if let Ok(f) = self.equation() {
                    return Ok(f);
                }
                self.pos = save;
                self.pos += 1;
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if self.sig.relation(name).is_some() => {
                let name = name.clone();
                let (_, arity) = self.sig.relation(&name).unwrap();
                self.pos += 1;
                let args = self.args()?;
                if args.len() != arity {
                    return Err(LogicError::Arity { name, expected: arity, found: args.len() });
                }
                Ok(Formula::rel(&name, args))
            }
            Some(_) => self.equation(),
            None => self.err("unexpected end of input"),
        }
    }

    fn equation(&mut self) -> PResult<Formula> {
        let a = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let b = self.term()?;
        Ok(Formula::eq(a, b))
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return self.err("expected `,` or `)`"),
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut left = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let at = self.here();
            self.pos += 1;
            let right = self.factor()?;
            match self.sig.function(MUL) {
                Some((_, 2)) => left = Term::mul(left, right),
                _ => return Err(LogicError::UnknownSymbol { name: "*".into(), pos: at }),
            }
        }
        Ok(left)
    }

    fn factor(&mut self) -> PResult<Term> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    match self.sig.function(&name) {
                        Some((_, arity)) => {
                            let args = self.args()?;
                            if args.len() != arity {
                                return Err(LogicError::Arity { name, expected: arity, found: args.len() });
                            }
                            Ok(Term::App(name, args))
                        }
                        None => Err(LogicError::UnknownSymbol { name, pos: at }),
                    }
                } else if self.sig.constant(&name).is_some() {
                    Ok(Term::Const(name))
                } else if is_var_name(&name) {
                    Ok(Term::Var(name))
                } else {
                    Err(LogicError::UnknownSymbol { name, pos: at })
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Parses `text` over `sig`, alpha-renaming bound variables so that every
/// binder is distinct and no bound name coincides with a free one.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut used: BTreeSet<String> = toks
        .iter()
        .filter_map(|(_, t)| if let Tok::Ident(s) = t { Some(s.clone()) } else { None })
        .collect();
    let mut p = Parser { toks, pos: 0, sig, end: text.chars().count() };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    let free = f.free_vars().clone();
    let mut binders = BTreeSet::new();
    Ok(rename_binders(&f, &BTreeMap::new(), &free, &mut binders, &mut used))
}

fn fresh(base: &str, used: &mut BTreeSet<String>) -> String {
    let mut k = 1;
    loop {
        let cand = format!("{base}_{k}");
        if !used.contains(&cand) {
            used.insert(cand.clone());
            return cand;
        }
        k += 1;
    }
}

fn rename_term(t: &Term, map: &BTreeMap<String, String>) -> Term {
    match t {
        Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
        Term::Const(c) => Term::Const(c.clone()),
        Term::App(f, a) => Term::App(f.clone(), a.iter().map(|t| rename_term(t, map)).collect()),
    }
}

fn rename_binders(
    f: &Formula,
    map: &BTreeMap<String, String>,
    free: &BTreeSet<String>,
    binders: &mut BTreeSet<String>,
    used: &mut BTreeSet<String>,
) -> Formula {
    let go = |g: &Formula, binders: &mut BTreeSet<String>, used: &mut BTreeSet<String>| {
        rename_binders(g, map, free, binders, used)
    };
    match f.kind() {
        Kind::Rel(r, ts) => Formula::rel(r, ts.iter().map(|t| rename_term(t, map)).collect()),
        Kind::Eq(a, b) => Formula::eq(rename_term(a, map), rename_term(b, map)),
        Kind::Not(a) => Formula::not(go(a, binders, used)),
        Kind::And(a, b) => {
            let a = go(a, binders, used);
            Formula::and(a, go(b, binders, used))
        }
        Kind::Or(a, b) => {
            let a = go(a, binders, used);
            Formula::or(a, go(b, binders, used))
        }
        Kind::Implies(a, b) => {
            let a = go(a, binders, used);
            Formula::implies(a, go(b, binders, used))
        }
        Kind::Iff(a, b) => {
            let a = go(a, binders, used);
            Formula::iff(a, go(b, binders, used))
        }
        Kind::Exists(x, a) | Kind::Forall(x, a) => {
            let name = if free.contains(x) || binders.contains(x) { fresh(x, used) } else { x.clone() };
            binders.insert(name.clone());
            let mut inner = map.clone();
            inner.insert(x.clone(), name.clone());
            let body = rename_binders(a, &inner, free, binders, used);
            if matches!(f.kind(), Kind::Exists(..)) {
                Formula::exists(&name, body)
            } else {
                Formula::forall(&name, body)
            }
        }
    }
}
