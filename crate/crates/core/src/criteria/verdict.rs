use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{
    crit_bounded_torsion, crit_conj_centralizer, crit_p, crit_perfect_dagger, obstruction_center_hom,
    obstruction_decomposable, obstruction_nilpotent, uniform_formula_check, Certificate, CriteriaError, Criterion,
    CriterionOutcome, Failure, Obstruction,
};
use crate::catalog::{self, Built, Outcome};
use crate::formulas;
use crate::groups::{prime_divisors, FiniteGroup};
use crate::logic::{classify_h, equivalent_in, valid_in, FiniteStructure, Formula, LogicError};

#[derive(Clone, Debug)]
pub struct VerdictOptions {
    /// Checked between criteria; once exceeded the verdict is `open`.
    pub timeout: Duration,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { timeout: Duration::from_secs(60) }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Certificate(Certificate),
    Obstruction(Obstruction),
    Failure(Failure),
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub groups: Vec<String>,
    pub outcome: Outcome,
    pub reason: String,
    pub witnesses: Vec<Witness>,
    pub citation: String,
    pub millis: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.witnesses.iter().filter_map(|w| match w {
            Witness::Certificate(c) => Some(c),
            _ => None,
        })
    }

    pub fn obstructions(&self) -> impl Iterator<Item = &Obstruction> {
        self.witnesses.iter().filter_map(|w| match w {
            Witness::Obstruction(o) => Some(o),
            _ => None,
        })
    }
}

/// Criteria in the order the class verdict tries them.
pub fn criteria_order(gs: &[&FiniteGroup]) -> Vec<Criterion> {
    let mut primes: Vec<usize> = gs.iter().flat_map(|g| prime_divisors(g.order())).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![Criterion::ConjCentralizer];
    out.extend(primes.into_iter().map(|p| Criterion::Torsion { p }));
    out.extend((1..=3).map(|m| Criterion::PerfectDagger { m }));
    for m in [2, 3] {
        for n in [2, 3] {
            out.push(Criterion::BoundedTorsion { m, n });
        }
    }
    out
}

fn run_criterion(g: &FiniteGroup, c: Criterion) -> CriterionOutcome {
    let r = match c {
        Criterion::ConjCentralizer => crit_conj_centralizer(g),
        Criterion::Torsion { p } => crit_p(g, p),
        Criterion::BoundedTorsion { m, n } => crit_bounded_torsion(g, m, n),
        Criterion::PerfectDagger { m } => crit_perfect_dagger(g, m),
        Criterion::UniformFormula => uniform_formula_check(g),
        Criterion::EqualityImplication => Err(CriteriaError::Precondition("not a group criterion".into())),
    };
    r.unwrap_or_else(|e| {
        CriterionOutcome::Fail(Failure {
            criterion: c,
            group: g.name().into(),
            reason: format!("not applicable: {e}"),
            witness: None,
            elements: vec![],
        })
    })
}

fn names(gs: &[&FiniteGroup]) -> Vec<String> {
    gs.iter().map(|g| g.name().to_string()).collect()
}

pub fn class_verdict(gs: &[&FiniteGroup]) -> Result<Verdict, CriteriaError> {
    class_verdict_with(gs, &VerdictOptions::default())
}

/// Obstructions first (center homs for every ordered pair including
/// self-pairs, then decomposability and nilpotency of each member), then
/// criteria in [`criteria_order`], then the uniform transposition formula.
/// `recognizes` needs one criterion certifying every member.
pub fn class_verdict_with(gs: &[&FiniteGroup], opts: &VerdictOptions) -> Result<Verdict, CriteriaError> {
    if gs.is_empty() {
        return Err(CriteriaError::Precondition("empty class".into()));
    }
    let start = Instant::now();
    let deadline = start + opts.timeout;
    let millis = || start.elapsed().as_millis() as u64;
    let mut notes = Vec::new();

    let pairs: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..gs.len()).map(move |j| (i, j))).collect();
    let homs: Vec<Option<Obstruction>> = pairs
        .par_iter()
        .map(|&(i, j)| obstruction_center_hom(gs[i], gs[j]))
        .collect::<Result<_, _>>()?;
    let per_group: Vec<(Result<Option<Obstruction>, CriteriaError>, Option<Obstruction>)> = gs
        .par_iter()
        .map(|g| Ok((obstruction_decomposable(g), obstruction_nilpotent(g)?)))
        .collect::<Result<_, CriteriaError>>()?;
    let mut obstructions: Vec<Obstruction> = homs.into_iter().flatten().collect();
    for (g, (dec, nil)) in gs.iter().zip(per_group) {
        match dec {
            Ok(d) => obstructions.extend(d),
            Err(e) => notes.push(format!("decomposability of {} not checked: {e}", g.name())),
        }
        obstructions.extend(nil);
    }
    if let Some(first) = obstructions.first() {
        return Ok(Verdict {
            groups: names(gs),
            outcome: Outcome::Fails,
            reason: first.kind.name().into(),
            citation: first.kind.citation().into(),
            witnesses: obstructions.into_iter().map(Witness::Obstruction).collect(),
            millis: millis(),
            notes,
        });
    }

    let mut results: HashMap<(usize, Criterion), CriterionOutcome> = HashMap::new();
    for c in criteria_order(gs) {
        if Instant::now() > deadline {
            notes.push(format!("timed out after {} ms before {c}", millis()));
            return Ok(open(gs, &results, notes, millis()));
        }
        let outs: Vec<CriterionOutcome> = gs.par_iter().map(|g| run_criterion(g, c)).collect();
        let all = outs.iter().all(|o| o.passed());
        for (i, o) in outs.into_iter().enumerate() {
            results.insert((i, c), o);
        }
        if all {
            let witnesses = (0..gs.len())
                .map(|i| Witness::Certificate(results[&(i, c)].certificate().unwrap().clone()))
                .collect();
            return Ok(Verdict {
                groups: names(gs),
                outcome: Outcome::Recognizes,
                reason: c.to_string(),
                citation: c.citation().into(),
                witnesses,
                millis: millis(),
                notes,
            });
        }
    }

    if Instant::now() > deadline {
        notes.push(format!("timed out after {} ms before the uniform formula", millis()));
        return Ok(open(gs, &results, notes, millis()));
    }
    let uniform: Vec<CriterionOutcome> = gs.par_iter().map(|g| run_criterion(g, Criterion::UniformFormula)).collect();
    if uniform.iter().all(|o| o.passed()) {
        let mut witnesses: Vec<Witness> =
            uniform.iter().map(|o| Witness::Certificate(o.certificate().unwrap().clone())).collect();
        witnesses.extend(member_certificates(gs, &results).into_iter().map(Witness::Certificate));
        return Ok(Verdict {
            groups: names(gs),
            outcome: Outcome::Recognizes,
            reason: Criterion::UniformFormula.to_string(),
            citation: Criterion::UniformFormula.citation().into(),
            witnesses,
            millis: millis(),
            notes,
        });
    }
    Ok(open(gs, &results, notes, millis()))
}

/// The first passing criterion of each member, in criteria order.
fn member_certificates(gs: &[&FiniteGroup], results: &HashMap<(usize, Criterion), CriterionOutcome>) -> Vec<Certificate> {
    let order = criteria_order(gs);
    (0..gs.len())
        .filter_map(|i| order.iter().find_map(|c| results.get(&(i, *c)).and_then(|o| o.certificate()).cloned()))
        .collect()
}

fn open(
    gs: &[&FiniteGroup],
    results: &HashMap<(usize, Criterion), CriterionOutcome>,
    mut notes: Vec<String>,
    millis: u64,
) -> Verdict {
    let certs = member_certificates(gs, results);
    for (i, g) in gs.iter().enumerate() {
        if !certs.iter().any(|c| c.group == g.name()) && results.keys().any(|(j, _)| *j == i) {
            notes.push(format!("no criterion certifies {}", g.name()));
        }
    }
    Verdict {
        groups: names(gs),
        outcome: Outcome::Open,
        reason: "no single criterion certifies every member".into(),
        citation: "criteria are sufficient conditions only".into(),
        witnesses: certs.into_iter().map(Witness::Certificate).collect(),
        millis,
        notes,
    }
}

/// Verdict for a non-group structure. Recognizes when `candidate` (a formula
/// in `x, y, t`) is in h-form, its side obligations hold in `m`, and it is
/// equivalent to `x = t → y = t` in `m`; otherwise open.
pub fn structure_verdict(name: &str, m: &FiniteStructure, candidate: Option<&Formula>) -> Result<Verdict, CriteriaError> {
    let start = Instant::now();
    let open = |reason: String, notes: Vec<String>| Verdict {
        groups: vec![name.into()],
        outcome: Outcome::Open,
        reason,
        witnesses: vec![],
        citation: "no criterion available for this structure".into(),
        millis: start.elapsed().as_millis() as u64,
        notes,
    };
    let Some(phi) = candidate else {
        return Ok(open("no candidate formula for x = t -> y = t".into(), vec![]));
    };
    let cert = match classify_h(phi) {
        Ok(c) => c,
        Err(r) => return Ok(open(format!("candidate is not in h-form: {r}"), vec![])),
    };
    for o in &cert.obligations {
        if valid_in(m, o)?.is_some() {
            return Ok(open(format!("side obligation fails: {o}"), vec![]));
        }
    }
    let target = Formula::implies(
        Formula::eq(crate::logic::Term::var("x"), crate::logic::Term::var("t")),
        Formula::eq(crate::logic::Term::var("y"), crate::logic::Term::var("t")),
    );
    if let Some(a) = equivalent_in(m, phi, &target)? {
        return Ok(open(format!("candidate differs from x = t -> y = t at {}", a.display(m)), vec![]));
    }
    let c = Criterion::EqualityImplication;
    Ok(Verdict {
        groups: vec![name.into()],
        outcome: Outcome::Recognizes,
        reason: c.to_string(),
        witnesses: vec![Witness::Certificate(Certificate {
            criterion: c,
            group: name.into(),
            detail: format!(
                "h-form with {} side obligation(s), all true; equivalent to x = t -> y = t on all {} assignments",
                cert.obligations.len(),
                m.len().pow(3)
            ),
            elements: vec![],
            formula: phi.to_string(),
        })],
        citation: c.citation().into(),
        millis: start.elapsed().as_millis() as u64,
        notes: vec![],
    })
}

fn candidate_for(entry: &catalog::CatalogEntry) -> Result<Option<Formula>, LogicError> {
    match entry.family {
        "magma" if entry.name == "RPS" => Ok(Some(formulas::magma(&formulas::rps_text())?)),
        _ => Ok(None),
    }
}

/// Resolves catalog names and dispatches: a class of groups goes through
/// [`class_verdict_with`], a single structure through [`structure_verdict`].
pub fn verdict_for_names(list: &[&str], opts: &VerdictOptions) -> Result<Verdict, CriteriaError> {
    let entries: Vec<catalog::CatalogEntry> = list.iter().map(|n| catalog::lookup(n)).collect::<Result<_, _>>()?;
    let groups: Vec<&FiniteGroup> = entries.iter().filter_map(|e| e.group()).collect();
    if groups.len() == entries.len() {
        return class_verdict_with(&groups, opts);
    }
    match entries.as_slice() {
        [e] => {
            let Built::Structure(m) = &e.built else { unreachable!() };
            structure_verdict(&e.name, m, candidate_for(e)?.as_ref())
        }
        _ => Err(CriteriaError::Precondition("classes mixing groups and other structures are not supported".into())),
    }
}
