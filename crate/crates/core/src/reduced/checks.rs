use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::logic::{classify_h, valid_in, Evaluator, FiniteStructure, Formula, HCertificate, Interp};

use super::ideal::{mask_to_vec, FiniteIdeal, SupportValue};
use super::product::{eq_mask, ReducedProduct};
use super::ReducedError;

/// Both sides of the transfer statement at one assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LosReport {
    pub holds_in_product: bool,
    pub failure_set: Vec<usize>,
    pub failure_in_ideal: bool,
}

impl LosReport {
    pub fn agrees(&self) -> bool {
        self.holds_in_product == self.failure_in_ideal
    }
}

/// Certifies `h` and discharges its obligations in every factor.
pub fn certify_for(rp: &ReducedProduct, h: &Formula) -> Result<HCertificate, ReducedError> {
    let cert = classify_h(h).map_err(|r| ReducedError::NotH(r.to_string()))?;
    for (k, ob) in cert.obligations.iter().enumerate() {
        for (i, m) in rp.factors().iter().enumerate() {
            if valid_in(m, ob)?.is_some() {
                return Err(ReducedError::Obligation { index: k, factor: i, formula: ob.to_string() });
            }
        }
    }
    Ok(cert)
}

/// `rp ⊨ h(ā)` against `{i : M_i ⊭ h(a_i)} ∈ 𝓘`.
pub fn los_check(rp: &ReducedProduct, h: &Formula, vars: &[String], a: &[u32]) -> Result<LosReport, ReducedError> {
    certify_for(rp, h)?;
    let lhs = Evaluator::new(rp, h, vars)?.eval_tuple(a);
    let reps: Vec<Vec<u32>> = a.iter().map(|&x| rp.representative(x)).collect();
    let truth = rp.truth_set_at(h, vars, &reps)?;
    let fail = !truth & rp.ideal().full_mask();
    Ok(LosReport { holds_in_product: lhs, failure_set: mask_to_vec(fail), failure_in_ideal: rp.ideal().contains(fail) })
}

/// Exhaustive version: the least assignment where the two sides differ.
pub fn los_check_all(rp: &ReducedProduct, h: &Formula) -> Result<Option<Vec<u32>>, ReducedError> {
    certify_for(rp, h)?;
    let vars: Vec<String> = h.free_vars().iter().cloned().collect();
    let in_rp = Evaluator::new(rp, h, &vars)?;
    let per: Vec<Evaluator<FiniteStructure>> =
        rp.factors().iter().map(|m| Evaluator::new(m, h, &vars)).collect::<Result<_, _>>()?;
    let n = rp.element_count();
    let total = n.pow(vars.len() as u32);
    let k = rp.indices();
    Ok((0..total).into_par_iter().find_map_first(|idx| {
        let mut a = vec![0u32; vars.len()];
        let mut r = idx;
        for j in (0..a.len()).rev() {
            a[j] = (r % n) as u32;
            r /= n;
        }
        let reps: Vec<Vec<u32>> = a.iter().map(|&x| rp.representative(x)).collect();
        let mut fail = 0u32;
        for i in 0..k {
            let vals: Vec<u32> = reps.iter().map(|t| t[i]).collect();
            if !per[i].eval_tuple(&vals) {
                fail |= 1 << i;
            }
        }
        (in_rp.eval_tuple(&a) != rp.ideal().contains(fail)).then_some(a)
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub not_is_complement: bool,
    pub and_is_meet: bool,
    pub or_is_join: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.not_is_complement && self.and_is_meet && self.or_is_join
    }
}

/// `supp_¬φ = supp_φ^∁`, `supp_{φ∧ψ} = supp_φ ∧ supp_ψ`, `supp_{φ∨ψ} = supp_φ ∨ supp_ψ`.
pub fn support_identities(
    rp: &ReducedProduct,
    phi: &Formula,
    psi: &Formula,
    vars: &[String],
    a: &[u32],
) -> Result<IdentityReport, ReducedError> {
    let ba = rp.algebra();
    let sp = rp.supp_phi(phi, vars, a)?;
    let sq = rp.supp_phi(psi, vars, a)?;
    Ok(IdentityReport {
        not_is_complement: rp.supp_phi(&Formula::not(phi.clone()), vars, a)? == ba.complement(sp),
        and_is_meet: rp.supp_phi(&Formula::and(phi.clone(), psi.clone()), vars, a)? == ba.meet(sp, sq),
        or_is_join: rp.supp_phi(&Formula::or(phi.clone(), psi.clone()), vars, a)? == ba.join(sp, sq),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LargestSupport {
    pub support: SupportValue,
    pub direct: SupportValue,
    /// Classes `S` with `rp ⊨ φ(a_S)`.
    pub satisfying_classes: Vec<SupportValue>,
}

impl LargestSupport {
    pub fn agrees(&self) -> bool {
        self.support == self.direct
    }
}

/// The largest class `S` such that `rp ⊨ φ(a_S)`, where `a_S` agrees with
/// `ā` on `S` and with a fixed solution `b̄` elsewhere.
pub fn largest_s_support(
    rp: &ReducedProduct,
    phi: &Formula,
    vars: &[String],
    a: &[u32],
) -> Result<LargestSupport, ReducedError> {
    let ev = Evaluator::new(rp, phi, vars)?;
    let b = ev.first_with(true).ok_or(ReducedError::Unsatisfiable)?;
    let ba = rp.algebra();
    let ra: Vec<Vec<u32>> = a.iter().map(|&x| rp.representative(x)).collect();
    let rb: Vec<Vec<u32>> = b.iter().map(|&x| rp.representative(x)).collect();
    let mut sat = Vec::new();
    for s in ba.elements() {
        let a_s: Vec<u32> = (0..vars.len())
            .map(|j| {
                let t: Vec<u32> =
                    (0..rp.indices()).map(|i| if s.0 >> i & 1 == 1 { ra[j][i] } else { rb[j][i] }).collect();
                rp.class_of_tuple(&t)
            })
            .collect();
        if ev.eval_tuple(&a_s) {
            sat.push(s);
        }
    }
    let support = *sat
        .iter()
        .find(|&&s| sat.iter().all(|&t| ba.le(t, s)))
        .ok_or_else(|| ReducedError::Invalid("no largest satisfying class".into()))?;
    let direct = rp.supp_phi(phi, vars, a)?;
    Ok(LargestSupport { support, direct, satisfying_classes: sat })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    /// Grouped by per-coordinate equality pattern, with a bounded sample of
    /// representatives per pattern.
    Pruned { patterns: usize, samples_per_pattern: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportCounterexample {
    pub elements: Vec<u32>,
    pub labels: Vec<String>,
    pub formula_holds: bool,
    pub left_support: SupportValue,
    pub right_support: SupportValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportRelationReport {
    pub defines: bool,
    pub mode: ScanMode,
    pub evaluated: usize,
    pub counterexample: Option<SupportCounterexample>,
}

const EXHAUSTIVE_LIMIT: usize = 1 << 21;
const SAMPLES_PER_PATTERN: usize = 6;

/// Checks `rp ⊨ Φ(a,a',b,b') ⇔ supp_=(a,a') ≤ supp_=(b,b')` for all
/// quadruples, with `vars = [x, x', y, y']`.
pub fn defines_support_relation(
    rp: &ReducedProduct,
    phi: &Formula,
    vars: &[String; 4],
) -> Result<SupportRelationReport, ReducedError> {
    let n = rp.element_count();
    let table = if n <= 1024 { Some(rp.to_structure()?) } else { None };
    let reps: Vec<Vec<u32>> = (0..n as u32).map(|a| rp.representative(a)).collect();
    let ideal = rp.ideal();
    let target = |q: &[u32]| -> bool {
        let l = eq_mask(&reps[q[0] as usize], &reps[q[1] as usize]);
        let r = eq_mask(&reps[q[2] as usize], &reps[q[3] as usize]);
        ideal.contains(l & !r & ideal.full_mask())
    };
    let counter = |q: Vec<u32>, holds: bool| SupportCounterexample {
        labels: q.iter().map(|&x| rp.label(x)).collect(),
        left_support: rp.supp_eq(q[0], q[1]),
        right_support: rp.supp_eq(q[2], q[3]),
        elements: q,
        formula_holds: holds,
    };
    let total = n.checked_pow(4);
    if total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT) {
        let scan = |holds: &(dyn Fn(&[u32]) -> bool + Sync)| {
            (0..total.unwrap()).into_par_iter().find_map_first(|i| {
                let q = [(i / (n * n * n)) as u32, (i / (n * n) % n) as u32, (i / n % n) as u32, (i % n) as u32];
                let h = holds(&q);
                (h != target(&q)).then(|| (q.to_vec(), h))
            })
        };
        let found = match &table {
            Some(m) => {
                let ev = Evaluator::new(m, phi, vars)?;
                scan(&|q| ev.eval_tuple(q))
            }
            None => {
                let ev = Evaluator::new(rp, phi, vars)?;
                scan(&|q| ev.eval_tuple(q))
            }
        };
        return Ok(SupportRelationReport {
            defines: found.is_none(),
            mode: ScanMode::Exhaustive,
            evaluated: total.unwrap(),
            counterexample: found.map(|(q, h)| counter(q, h)),
        });
    }
    // Pruned: both supports depend only on which of the four coordinates agree
    // at each free index. Group quadruples by that pattern and sample.
    let free = rp.free_coordinates().to_vec();
    let partitions = set_partitions4();
    let mut per_coord: Vec<Vec<usize>> = Vec::new();
    for &i in &free {
        let size = rp.factors()[i].len();
        per_coord.push((0..partitions.len()).filter(|&p| blocks(&partitions[p]) <= size).collect());
    }
    let mut keys: Vec<Vec<usize>> = vec![vec![]];
    for opts in &per_coord {
        keys = keys
            .into_iter()
            .flat_map(|k| {
                opts.iter().map(move |&p| {
                    let mut k2 = k.clone();
                    k2.push(p);
                    k2
                })
            })
            .collect();
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut samples: Vec<[u32; 4]> = Vec::new();
    for key in &keys {
        let mut seen = std::collections::HashSet::new();
        for _ in 0..SAMPLES_PER_PATTERN * 4 {
            if seen.len() == SAMPLES_PER_PATTERN {
                break;
            }
            let mut tuples = vec![vec![0u32; rp.indices()]; 4];
            for (j, &i) in free.iter().enumerate() {
                let part = &partitions[key[j]];
                let mut pool: Vec<u32> = (0..rp.factors()[i].len() as u32).collect();
                pool.shuffle(&mut rng);
                for (pos, &blk) in part.iter().enumerate() {
                    tuples[pos][i] = pool[blk];
                }
            }
            let q = [
                rp.class_of_tuple(&tuples[0]),
                rp.class_of_tuple(&tuples[1]),
                rp.class_of_tuple(&tuples[2]),
                rp.class_of_tuple(&tuples[3]),
            ];
            if seen.insert(q) {
                samples.push(q);
            }
        }
    }
    let found = match &table {
        Some(m) => {
            let ev = Evaluator::new(m, phi, vars)?;
            samples.par_iter().find_map_first(|q| {
                let h = ev.eval_tuple(q);
                (h != target(q)).then(|| (q.to_vec(), h))
            })
        }
        None => {
            let ev = Evaluator::new(rp, phi, vars)?;
            samples.par_iter().find_map_first(|q| {
                let h = ev.eval_tuple(q);
                (h != target(q)).then(|| (q.to_vec(), h))
            })
        }
    };
    Ok(SupportRelationReport {
        defines: found.is_none(),
        mode: ScanMode::Pruned { patterns: keys.len(), samples_per_pattern: SAMPLES_PER_PATTERN },
        evaluated: samples.len(),
        counterexample: found.map(|(q, h)| counter(q, h)),
    })
}

/// The 15 set partitions of four positions, as block labels `0..`.
fn set_partitions4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for b in 0..=1 {
        for c in 0..=b + 1 {
            for d in 0..=b.max(c) + 1 {
                out.push([0, b, c, d]);
            }
        }
    }
    out
}

fn blocks(p: &[usize; 4]) -> usize {
    p.iter().max().unwrap() + 1
}

/// `{i : M_i ⊭ θ} ∈ 𝓘`.
pub fn sentence_mod_ideal(ms: &[FiniteStructure], ideal: &FiniteIdeal, theta: &Formula) -> Result<bool, ReducedError> {
    if !theta.is_sentence() {
        return Err(ReducedError::Invalid("expected a sentence".into()));
    }
    if ms.len() != ideal.indices() {
        return Err(ReducedError::Invalid("factor count differs from the index set".into()));
    }
    let mut fail = 0u32;
    for (i, m) in ms.iter().enumerate() {
        if valid_in(m, theta)?.is_some() {
            fail |= 1 << i;
        }
    }
    Ok(ideal.contains(fail))
}

/// Supports of all free-variable tuples, keyed by tuple (for tests and the CLI).
pub fn support_table(
    rp: &ReducedProduct,
    phi: &Formula,
    vars: &[String],
) -> Result<BTreeMap<Vec<u32>, SupportValue>, ReducedError> {
    let n = rp.element_count();
    let mut out = BTreeMap::new();
    let total = n.pow(vars.len() as u32);
    for idx in 0..total {
        let mut a = vec![0u32; vars.len()];
        let mut r = idx;
        for j in (0..a.len()).rev() {
            a[j] = (r % n) as u32;
            r /= n;
        }
        out.insert(a.clone(), rp.supp_phi(phi, vars, &a)?);
    }
    Ok(out)
}
