//! Syntactic recognition of h-formulas.
//!
//! h-formulas are the closure of atomic formulas under `∧`, `∃`, `∀` and the
//! guarded construct `(∃x)φ ∧ (∀x)(φ → ψ)`. A bare `(∀x)(φ → ψ)` is accepted
//! only by recording the side obligation `(∃x)φ`, to be discharged by the
//! caller against whatever theory is in play.

use std::fmt;

use super::formula::{alpha_eq_with, Formula, Kind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Atomic(Formula),
    And(Box<Derivation>, Box<Derivation>),
    Exists(String, Box<Derivation>),
    Forall(String, Box<Derivation>),
    /// `(∃x)φ ∧ (∀y)(φ' → ψ)` with `φ'` the `y`-variant of `φ`.
    Guarded { ex_var: String, all_var: String, phi: Box<Derivation>, phi_again: Box<Derivation>, psi: Box<Derivation> },
    /// `(∀x)(φ → ψ)` licensed by obligation number `obligation`.
    ForallImplies { var: String, phi: Box<Derivation>, psi: Box<Derivation>, obligation: usize },
}

impl Derivation {
    /// Rebuilds the formula the derivation certifies.
    pub fn replay(&self) -> Formula {
        match self {
            Derivation::Atomic(f) => f.clone(),
            Derivation::And(a, b) => Formula::and(a.replay(), b.replay()),
            Derivation::Exists(x, a) => Formula::exists(x, a.replay()),
            Derivation::Forall(x, a) => Formula::forall(x, a.replay()),
            Derivation::Guarded { ex_var, all_var, phi, phi_again, psi } => Formula::and(
                Formula::exists(ex_var, phi.replay()),
                Formula::forall(all_var, Formula::implies(phi_again.replay(), psi.replay())),
            ),
            Derivation::ForallImplies { var, phi, psi, .. } => {
                Formula::forall(var, Formula::implies(phi.replay(), psi.replay()))
            }
        }
    }

    /// Name of the rule used at the root.
    pub fn rule(&self) -> &'static str {
        match self {
            Derivation::Atomic(_) => "atomic",
            Derivation::And(..) => "conjunction",
            Derivation::Exists(..) => "exists",
            Derivation::Forall(..) => "forall",
            Derivation::Guarded { .. } => "guarded",
            Derivation::ForallImplies { .. } => "forall-implies (obligation)",
        }
    }

    fn render(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            Derivation::Atomic(f) => out.push_str(&format!("{pad}atomic {f}\n")),
            Derivation::And(a, b) => {
                out.push_str(&format!("{pad}conjunction\n"));
                a.render(depth + 1, out);
                b.render(depth + 1, out);
            }
            Derivation::Exists(x, a) => {
                out.push_str(&format!("{pad}exists {x}\n"));
                a.render(depth + 1, out);
            }
            Derivation::Forall(x, a) => {
                out.push_str(&format!("{pad}forall {x}\n"));
                a.render(depth + 1, out);
            }
            Derivation::Guarded { ex_var, phi, psi, .. } => {
                out.push_str(&format!("{pad}guarded {ex_var}\n"));
                phi.render(depth + 1, out);
                psi.render(depth + 1, out);
            }
            Derivation::ForallImplies { var, phi, psi, obligation } => {
                out.push_str(&format!("{pad}forall-implies {var} [obligation {obligation}]\n"));
                phi.render(depth + 1, out);
                psi.render(depth + 1, out);
            }
        }
    }
}

/// Derivation plus the existential side obligations it relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCertificate {
    pub derivation: Derivation,
    pub obligations: Vec<Formula>,
}

impl HCertificate {
    /// No obligations: an h-formula outright.
    pub fn is_outright(&self) -> bool {
        self.obligations.is_empty()
    }
}

impl fmt::Display for HCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.derivation.render(0, &mut s);
        write!(f, "{s}")?;
        for (i, o) in self.obligations.iter().enumerate() {
            writeln!(f, "obligation {i}: {o}")?;
        }
        Ok(())
    }
}

/// Why a formula was not certified: the first offending node in pre-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRefusal {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub node: &'static str,
    pub subformula: String,
}

impl fmt::Display for HRefusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
        };
        write!(f, "not an h-formula: {} at {}: {}", self.node, path, self.subformula)
    }
}

pub fn classify_h(phi: &Formula) -> Result<HCertificate, HRefusal> {
    let mut obligations = Vec::new();
    let mut path = Vec::new();
    let derivation = classify(phi, &mut path, &mut obligations)?;
    Ok(HCertificate { derivation, obligations })
}

fn refuse(f: &Formula, path: &[usize]) -> HRefusal {
    HRefusal { path: path.to_vec(), node: f.node_name(), subformula: f.to_string() }
}

fn at<T>(path: &mut Vec<usize>, i: usize, g: impl FnOnce(&mut Vec<usize>) -> T) -> T {
    path.push(i);
    let r = g(path);
    path.pop();
    r
}

fn classify(f: &Formula, path: &mut Vec<usize>, obl: &mut Vec<Formula>) -> Result<Derivation, HRefusal> {
    match f.kind() {
        Kind::Rel(..) | Kind::Eq(..) => Ok(Derivation::Atomic(f.clone())),
        Kind::And(a, b) => {
            if let (Kind::Exists(x, phi), Kind::Forall(y, body)) = (a.kind(), b.kind()) {
                if let Kind::Implies(phi2, psi) = body.kind() {
                    if alpha_eq_with(phi, x, phi2, y) {
                        let phi_d = at(path, 0, |p| at(p, 0, |p| classify(phi, p, obl)))?;
                        let phi2_d = at(path, 1, |p| at(p, 0, |p| at(p, 0, |p| classify(phi2, p, obl))))?;
                        let psi_d = at(path, 1, |p| at(p, 0, |p| at(p, 1, |p| classify(psi, p, obl))))?;
                        return Ok(Derivation::Guarded {
                            ex_var: x.clone(),
                            all_var: y.clone(),
                            phi: Box::new(phi_d),
                            phi_again: Box::new(phi2_d),
                            psi: Box::new(psi_d),
                        });
                    }
                }
            }
            let da = at(path, 0, |p| classify(a, p, obl))?;
            let db = at(path, 1, |p| classify(b, p, obl))?;
            Ok(Derivation::And(Box::new(da), Box::new(db)))
        }
        Kind::Exists(x, a) => Ok(Derivation::Exists(x.clone(), Box::new(at(path, 0, |p| classify(a, p, obl))?))),
        Kind::Forall(x, a) => {
            if let Kind::Implies(phi, psi) = a.kind() {
                let dphi = at(path, 0, |p| at(p, 0, |p| classify(phi, p, obl)))?;
                let dpsi = at(path, 0, |p| at(p, 1, |p| classify(psi, p, obl)))?;
                obl.push(Formula::exists(x, phi.clone()));
                return Ok(Derivation::ForallImplies {
                    var: x.clone(),
                    phi: Box::new(dphi),
                    psi: Box::new(dpsi),
                    obligation: obl.len() - 1,
                });
            }
            Ok(Derivation::Forall(x.clone(), Box::new(at(path, 0, |p| classify(a, p, obl))?)))
        }
        Kind::Not(_) | Kind::Or(..) | Kind::Implies(..) | Kind::Iff(..) => Err(refuse(f, path)),
    }
}
