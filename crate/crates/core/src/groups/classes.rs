use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{FiniteGroup, GroupError, SubgroupHandle, CLASS_BOUND};

impl FiniteGroup {
    fn classes_cached(&self) -> &(Vec<Vec<u32>>, Vec<u32>) {
        self.cache.classes.get_or_init(|| {
            let mut class_of = vec![u32::MAX; self.order()];
            let mut classes = Vec::new();
            for a in self.elements() {
                if class_of[a as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = Vec::new();
                for g in self.elements() {
                    let c = self.conj(a, g);
                    if class_of[c as usize] == u32::MAX {
                        class_of[c as usize] = id;
                        members.push(c);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            (classes, class_of)
        })
    }

    /// Conjugacy classes, each sorted, listed by least element.
    pub fn conjugacy_classes(&self) -> Result<&[Vec<u32>], GroupError> {
        self.guard("conjugacy_classes", CLASS_BOUND)?;
        Ok(&self.classes_cached().0)
    }

    /// Index into [`conjugacy_classes`](Self::conjugacy_classes).
    pub fn class_index(&self, a: u32) -> Result<usize, GroupError> {
        self.guard("conjugacy_classes", CLASS_BOUND)?;
        Ok(self.classes_cached().1[a as usize] as usize)
    }

    /// `a^G`.
    pub fn class_of(&self, a: u32) -> Result<&[u32], GroupError> {
        let k = self.class_index(a)?;
        Ok(&self.classes_cached().0[k])
    }

    pub(crate) fn centralizer_bits(&self, set: &[u32]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if set.iter().all(|&s| self.commutes(g, s)) {
                b.insert(g as usize);
            }
        }
        b
    }

    /// `C_G(S)`.
    pub fn centralizer(&self, set: &[u32]) -> Result<SubgroupHandle, GroupError> {
        self.guard("centralizer", CLASS_BOUND)?;
        Ok(self.handle(&self.centralizer_bits(set)))
    }

    /// `C_G(a^G)` for every class, as bitsets, cached.
    pub(crate) fn class_centralizers(&self) -> Result<&[FixedBitSet], GroupError> {
        self.guard("class centralizers", CLASS_BOUND)?;
        let classes = &self.classes_cached().0;
        Ok(self
            .cache
            .class_centralizers
            .get_or_init(|| classes.par_iter().map(|c| self.centralizer_bits(c)).collect()))
    }

    /// `C_G(a^G)`.
    pub fn class_centralizer(&self, a: u32) -> Result<SubgroupHandle, GroupError> {
        let k = self.class_index(a)?;
        Ok(self.handle(&self.class_centralizers()?[k]))
    }

    /// True when `C_G(a^G) = {e}`.
    pub fn class_centralizer_trivial(&self, a: u32) -> Result<bool, GroupError> {
        let k = self.class_index(a)?;
        Ok(self.class_centralizers()?[k].count_ones(..) == 1)
    }

    /// Elements commuting with every conjugate of `a`.
    pub fn class_centralizer_bits(&self, a: u32) -> Result<&FixedBitSet, GroupError> {
        let k = self.class_index(a)?;
        Ok(&self.class_centralizers()?[k])
    }

    /// `Z(G)`: the union of singleton classes.
    pub fn center(&self) -> SubgroupHandle {
        let bits = self.bitset(self.elements().filter(|&a| self.elements().all(|g| self.commutes(a, g))));
        self.handle(&bits)
    }
}
