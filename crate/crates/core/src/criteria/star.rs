//! The commutator-factorization condition for perfect groups:
//!
//! (*) for every factorization `a = Π [z_i, t_i]` (`i <= m`) there is a
//! factorization `b = Π [x_i, y_i]` with
//! `C_G(z_i^G, t_i^G) ⊆ C_G(x_i^G, y_i^G)`,
//!
//! which should be equivalent to `a = e → b = e` in perfect groups of width
//! at most `m` satisfying the normal-centralizer condition.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::CriteriaError;
use crate::groups::FiniteGroup;

/// Largest group the factorization tables are built for.
pub const STAR_BOUND: usize = 120;
/// Largest number of commutator factors.
pub const STAR_MAX_FACTORS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StarReport {
    /// Truth of (*) at `(a, b)`.
    pub star: bool,
    /// Truth of `a = e → b = e`.
    pub implication: bool,
}

impl StarReport {
    pub fn agrees(&self) -> bool {
        self.star == self.implication
    }
}

/// For each element, the distinct centralizers `C_G(z_i^G, t_i^G : i <= m)`
/// over its factorizations into `m` commutators.
pub struct PerfectStar {
    order: usize,
    identity: u32,
    families: Vec<Vec<FixedBitSet>>,
}

impl PerfectStar {
    pub fn new(g: &FiniteGroup, m: usize) -> Result<Self, CriteriaError> {
        if g.order() > STAR_BOUND {
            return Err(CriteriaError::Precondition(format!(
                "condition (*) tables need |G| <= {STAR_BOUND}, got {}",
                g.order()
            )));
        }
        if !(1..=STAR_MAX_FACTORS).contains(&m) {
            return Err(CriteriaError::Precondition(format!("condition (*) supports m in 1..={STAR_MAX_FACTORS}")));
        }
        let w = g.commutator_width()?;
        if !w.perfect || w.width > m {
            return Err(CriteriaError::Precondition(format!(
                "{} is not perfect of commutator width <= {m}",
                g.name()
            )));
        }
        let n = g.order();
        let mut one: Vec<HashSet<FixedBitSet>> = vec![HashSet::new(); n];
        for z in g.elements() {
            let cz = g.class_centralizer_bits(z)?;
            for t in g.elements() {
                let mut k = cz.clone();
                k.intersect_with(g.class_centralizer_bits(t)?);
                one[g.commutator(z, t) as usize].insert(k);
            }
        }
        let mut level = one.clone();
        for _ in 1..m {
            let mut next: Vec<HashSet<FixedBitSet>> = vec![HashSet::new(); n];
            for c1 in g.elements() {
                for k1 in &level[c1 as usize] {
                    for c2 in g.elements() {
                        for k2 in &one[c2 as usize] {
                            let mut k = k1.clone();
                            k.intersect_with(k2);
                            next[g.mul(c1, c2) as usize].insert(k);
                        }
                    }
                }
            }
            level = next;
        }
        let families = level
            .into_iter()
            .map(|s| {
                let mut v: Vec<FixedBitSet> = s.into_iter().collect();
                v.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
                v
            })
            .collect();
        Ok(PerfectStar { order: n, identity: g.identity(), families })
    }

    /// Truth of (*) at `(a, b)`.
    pub fn star(&self, a: u32, b: u32) -> bool {
        let fb = &self.families[b as usize];
        self.families[a as usize].iter().all(|ka| fb.iter().any(|kb| ka.is_subset(kb)))
    }

    pub fn report(&self, a: u32, b: u32) -> StarReport {
        StarReport { star: self.star(a, b), implication: a != self.identity || b == self.identity }
    }

    /// First `(a, b)` where (*) and `a = e → b = e` disagree.
    pub fn first_disagreement(&self) -> Option<(u32, u32)> {
        let n = self.order as u32;
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| !self.report(a, b).agrees())
    }

    /// Number of distinct centralizers over factorizations of `a`.
    pub fn family_size(&self, a: u32) -> usize {
        self.families[a as usize].len()
    }
}

/// Evaluates (*) at one pair and compares it with `a = e → b = e`.
pub fn verify_perfect_star(g: &FiniteGroup, m: usize, a: u32, b: u32) -> Result<StarReport, CriteriaError> {
    Ok(PerfectStar::new(g, m)?.report(a, b))
}

/// `None` when (*) agrees with `a = e → b = e` on every pair.
pub fn perfect_star_equivalence(g: &FiniteGroup, m: usize) -> Result<Option<(u32, u32)>, CriteriaError> {
    Ok(PerfectStar::new(g, m)?.first_disagreement())
}
