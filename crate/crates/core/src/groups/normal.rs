use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupError, Provenance, SubgroupHandle, LATTICE_BOUND};

impl FiniteGroup {
    /// All normal subgroups, by order then element list.
    ///
    /// Normal subgroups are unions of classes, so a breadth-first search that
    /// joins each found subgroup with each class (and takes the generated
    /// subgroup) reaches all of them.
    pub fn normal_subgroups(&self) -> Result<Vec<SubgroupHandle>, GroupError> {
        self.normal_subgroups_bounded(LATTICE_BOUND)
    }

    pub fn normal_subgroups_bounded(&self, bound: usize) -> Result<Vec<SubgroupHandle>, GroupError> {
        self.guard("normal_subgroups", bound)?;
        let classes = self.conjugacy_classes()?;
        let start = self.bitset([self.identity()]);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            for k in classes {
                if n.contains(k[0] as usize) {
                    continue;
                }
                let mut gens: Vec<u32> = n.ones().map(|i| i as u32).collect();
                gens.extend_from_slice(k);
                let m = self.generated_bits(&gens);
                if seen.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
        let mut out: Vec<SubgroupHandle> = seen.iter().map(|b| self.handle(b)).collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(out)
    }

    /// `G/N` together with the projection `G -> G/N`. Cosets are numbered by
    /// their least element.
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<(FiniteGroup, Vec<u32>), GroupError> {
        if !self.is_normal_bits(&self.bitset(n.elements.iter().copied())) {
            return Err(GroupError::Precondition("quotient by a non-normal subgroup".into()));
        }
        let mut proj = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if proj[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for &h in &n.elements {
                proj[self.mul(x, h) as usize] = id;
            }
            reps.push(x);
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(proj[self.mul(a, b) as usize]);
            }
        }
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let q = FiniteGroup::from_table_unchecked(&format!("{}/N", self.name()), table, labels, Provenance::Table)?;
        Ok((q, proj))
    }

    /// First pair of nontrivial normal subgroups `(N1, N2)` with trivial
    /// intersection and `|N1||N2| = |G|`, or `None` when indecomposable.
    pub fn is_decomposable(&self) -> Result<Option<(SubgroupHandle, SubgroupHandle)>, GroupError> {
        let normals = self.normal_subgroups()?;
        let n = self.order();
        let proper: Vec<&SubgroupHandle> =
            normals.iter().filter(|h| !h.is_trivial() && h.order() < n).collect();
        for (i, a) in proper.iter().enumerate() {
            for b in &proper[i + 1..] {
                if a.order() * b.order() != n {
                    continue;
                }
                let meet = a.elements.iter().filter(|&&x| b.contains(x)).count();
                if meet == 1 {
                    return Ok(Some(((*a).clone(), (*b).clone())));
                }
            }
        }
        Ok(None)
    }
}
