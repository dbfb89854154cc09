use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteGroup, GroupError, GroupHom, SubgroupHandle, CLASS_BOUND};

/// Least `w` such that every element of `[G,G]` is a product of `w`
/// commutators (`0` when `[G,G]` is trivial).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorWidth {
    pub width: usize,
    pub perfect: bool,
}

impl FiniteGroup {
    /// The set of commutators `[a,b]`, cached.
    pub fn commutator_set(&self) -> Result<&FixedBitSet, GroupError> {
        self.guard("commutator set", CLASS_BOUND)?;
        Ok(self.cache.commutators.get_or_init(|| {
            let n = self.order();
            let parts: Vec<FixedBitSet> = (0..n as u32)
                .into_par_iter()
                .fold(
                    || FixedBitSet::with_capacity(n),
                    |mut acc, a| {
                        for b in self.elements() {
                            acc.insert(self.commutator(a, b) as usize);
                        }
                        acc
                    },
                )
                .collect();
            let mut all = FixedBitSet::with_capacity(n);
            for p in parts {
                all.union_with(&p);
            }
            all
        }))
    }

    /// `[G,G]`: the normal closure of commutators of generators.
    pub fn commutator_subgroup(&self) -> Result<SubgroupHandle, GroupError> {
        self.guard("commutator subgroup", CLASS_BOUND)?;
        let gens = self.generators();
        let c: Vec<u32> = gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        Ok(self.handle(&self.normal_closure(&c)))
    }

    pub fn is_perfect(&self) -> Result<bool, GroupError> {
        Ok(self.commutator_subgroup()?.order() == self.order())
    }

    /// Breadth-first products of the commutator set until `[G,G]` is covered.
    pub fn commutator_width(&self) -> Result<CommutatorWidth, GroupError> {
        let derived = self.commutator_subgroup()?;
        let perfect = derived.order() == self.order();
        let target = derived.order();
        let cset: Vec<u32> = self.commutator_set()?.ones().map(|i| i as u32).collect();
        let mut reached = self.bitset([self.identity()]);
        let mut width = 0;
        while reached.count_ones(..) < target {
            let mut next = reached.clone();
            for x in reached.ones() {
                for &c in &cset {
                    next.insert(self.mul(x as u32, c) as usize);
                }
            }
            width += 1;
            reached = next;
        }
        Ok(CommutatorWidth { width, perfect })
    }

    /// Products of exactly `k` commutators (with `e` a commutator, so this is
    /// also "at most `k`").
    pub fn commutator_products(&self, k: usize) -> Result<FixedBitSet, GroupError> {
        let cset: Vec<u32> = self.commutator_set()?.ones().map(|i| i as u32).collect();
        let mut reached = self.bitset([self.identity()]);
        for _ in 0..k {
            let mut next = FixedBitSet::with_capacity(self.order());
            for x in reached.ones() {
                for &c in &cset {
                    next.insert(self.mul(x as u32, c) as usize);
                }
            }
            reached = next;
        }
        Ok(reached)
    }

    /// `[A, G]` for a normal subgroup `A`: the normal closure of the
    /// commutators of generators of `A` with generators of `G`.
    fn commutator_with_g(&self, a: &FixedBitSet) -> FixedBitSet {
        let agens = self.closure_with_gens(a.ones().map(|i| i as u32)).1;
        let c: Vec<u32> = agens
            .iter()
            .flat_map(|&x| self.generators().iter().map(move |&g| (x, g)))
            .map(|(x, g)| self.commutator(x, g))
            .collect();
        self.normal_closure(&c)
    }

    /// `G_0 = G, G_{k+1} = [G_k, G]` until it stabilises. The second value is
    /// the nilpotency class when the series reaches `{e}`.
    pub fn lower_central_series(&self) -> Result<(Vec<SubgroupHandle>, Option<usize>), GroupError> {
        self.guard("lower central series", CLASS_BOUND)?;
        let mut cur = self.bitset(self.elements());
        let mut series = vec![self.handle(&cur)];
        loop {
            let next = self.commutator_with_g(&cur);
            if next == cur {
                break;
            }
            series.push(self.handle(&next));
            if next.count_ones(..) == 1 {
                let class = series.len() - 1;
                return Ok((series, Some(class)));
            }
            cur = next;
        }
        let class = (series.last().unwrap().order() == 1).then_some(0);
        Ok((series, class))
    }

    pub fn is_nilpotent(&self) -> Result<bool, GroupError> {
        Ok(self.lower_central_series()?.1.is_some())
    }

    /// `x ↦ [x, c]` with `c` the least noncentral element of the
    /// second-to-last nontrivial term of the lower central series; lands in
    /// the last nontrivial term, which is central.
    pub fn nilpotent_center_hom(&self) -> Result<GroupHom, GroupError> {
        let (series, class) = self.lower_central_series()?;
        let class = class.ok_or_else(|| GroupError::Precondition(format!("{} is not nilpotent", self.name())))?;
        if class <= 1 {
            return Err(GroupError::Precondition(format!(
                "{} is abelian; use the identity embedding into the center",
                self.name()
            )));
        }
        let center = self.center();
        let term = &series[class - 2];
        let c = term
            .elements
            .iter()
            .copied()
            .find(|&c| !center.contains(c))
            .ok_or_else(|| GroupError::Precondition("no noncentral element in the series term".into()))?;
        let map: Vec<u32> = self.elements().map(|x| self.commutator(x, c)).collect();
        let hom = GroupHom::new(self, self, map);
        if hom.trivial || !hom.image_central(self) || !hom.is_homomorphism(self, self) {
            return Err(GroupError::Precondition("constructed map failed verification".into()));
        }
        Ok(hom)
    }
}
