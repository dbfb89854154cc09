use std::fmt;

use serde::{Serialize, Serializer};

use super::ReducedError;

/// Largest supported index set.
pub const MAX_INDICES: usize = 10;

/// A proper ideal on `{0..k}`, with members as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIdeal {
    k: usize,
    generators: Vec<u32>,
    members: Vec<u32>,
    is_member: Vec<bool>,
    /// Union of all members (every ideal on a finite set is `P(top)`).
    top: u32,
    /// Canonical representative of each subset's class.
    canon: Vec<u32>,
}

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

impl FiniteIdeal {
    /// Smallest ideal containing `generators`: downward closure, then closure
    /// under unions until nothing new appears.
    pub fn new(k: usize, generators: &[Vec<usize>]) -> Result<Self, ReducedError> {
        if !(1..=MAX_INDICES).contains(&k) {
            return Err(ReducedError::IndexRange(k));
        }
        if let Some(bad) = generators.iter().flatten().find(|&&i| i >= k) {
            return Err(ReducedError::Invalid(format!("index {bad} outside 0..{k}")));
        }
        let gens: Vec<u32> = generators.iter().map(|g| mask_of(g)).collect();
        let full = (1u32 << k) - 1;
        let mut is_member = vec![false; 1 << k];
        is_member[0] = true;
        for &g in &gens {
            // every subset of g
            let mut s = g;
            loop {
                is_member[s as usize] = true;
                if s == 0 {
                    break;
                }
                s = (s - 1) & g;
            }
        }
        loop {
            let cur: Vec<u32> = (0..=full).filter(|&m| is_member[m as usize]).collect();
            let mut grew = false;
            for &a in &cur {
                for &b in &cur {
                    if !is_member[(a | b) as usize] {
                        is_member[(a | b) as usize] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if is_member[full as usize] {
            return Err(ReducedError::Improper);
        }
        let members: Vec<u32> = (0..=full).filter(|&m| is_member[m as usize]).collect();
        let top = members.iter().fold(0, |a, &m| a | m);
        let canon = (0..=full).map(|a| members.iter().map(|&m| a ^ m).min().unwrap()).collect();
        Ok(FiniteIdeal { k, generators: gens, members, is_member, top, canon })
    }

    /// `{∅}`: the reduced product is the plain product.
    pub fn trivial(k: usize) -> Result<Self, ReducedError> {
        Self::new(k, &[])
    }

    pub fn indices(&self) -> usize {
        self.k
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.k) - 1
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.is_member[mask as usize]
    }

    /// The largest member.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// Least subset (as a number) equivalent to `mask` modulo the ideal.
    pub fn canonical(&self, mask: u32) -> u32 {
        self.canon[mask as usize]
    }

    /// Membership is downward closed, union closed, has `∅`, lacks `I`.
    pub fn is_valid(&self) -> bool {
        let full = self.full_mask();
        self.contains(0)
            && !self.contains(full)
            && self.members.iter().all(|&a| {
                (0..=full).filter(|&s| s & !a == 0).all(|s| self.contains(s))
                    && self.members.iter().all(|&b| self.contains(a | b))
            })
    }

    /// The ideal `{A ∩ S : A ∈ I}` on the index set `S`, renumbered.
    pub fn restrict_to(&self, s: u32) -> Result<FiniteIdeal, ReducedError> {
        let idx = mask_to_vec(s);
        let gens: Vec<Vec<usize>> = vec![idx
            .iter()
            .enumerate()
            .filter(|(_, &i)| self.top >> i & 1 == 1)
            .map(|(j, _)| j)
            .collect()];
        FiniteIdeal::new(idx.len(), &gens)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "indices": self.k,
            "generators": self.generators.iter().map(|&g| mask_to_vec(g)).collect::<Vec<_>>(),
            "members": self.members.iter().map(|&g| mask_to_vec(g)).collect::<Vec<_>>(),
        })
    }

    /// Reads `{ "indices": k, "generators": [[0],[1,2]] }`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, ReducedError> {
        let k = v
            .get("indices")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| ReducedError::Invalid("ideal needs an integer `indices`".into()))?;
        let gens: Vec<Vec<usize>> = match v.get("generators") {
            None => vec![],
            Some(g) => serde_json::from_value(g.clone())
                .map_err(|e| ReducedError::Invalid(format!("ideal generators: {e}")))?,
        };
        Self::new(k as usize, &gens)
    }
}

/// A class of `P(I)/𝓘`, stored as its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportValue(pub u32);

impl SupportValue {
    pub fn indices(&self) -> Vec<usize> {
        mask_to_vec(self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for SupportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for SupportValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// The Boolean algebra `P(I)/𝓘`.
#[derive(Clone, Debug)]
pub struct QuotientBA {
    ideal: FiniteIdeal,
}

impl QuotientBA {
    pub fn new(ideal: &FiniteIdeal) -> Self {
        QuotientBA { ideal: ideal.clone() }
    }

    pub fn ideal(&self) -> &FiniteIdeal {
        &self.ideal
    }

    pub fn class(&self, mask: u32) -> SupportValue {
        SupportValue(self.ideal.canonical(mask))
    }

    pub fn class_of_set(&self, set: &[usize]) -> SupportValue {
        self.class(mask_of(set))
    }

    /// All classes, by canonical representative.
    pub fn elements(&self) -> Vec<SupportValue> {
        let mut v: Vec<u32> = (0..=self.ideal.full_mask()).map(|m| self.ideal.canonical(m)).collect();
        v.sort_unstable();
        v.dedup();
        v.into_iter().map(SupportValue).collect()
    }

    /// Classes computed by partitioning `P(I)` under `A △ B ∈ 𝓘` directly.
    pub fn partition(&self) -> Vec<Vec<u32>> {
        let full = self.ideal.full_mask();
        let mut assigned = vec![false; full as usize + 1];
        let mut out = Vec::new();
        for a in 0..=full {
            if assigned[a as usize] {
                continue;
            }
            let class: Vec<u32> = (0..=full).filter(|&b| self.ideal.contains(a ^ b)).collect();
            for &b in &class {
                assigned[b as usize] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn zero(&self) -> SupportValue {
        SupportValue(0)
    }

    pub fn one(&self) -> SupportValue {
        self.class(self.ideal.full_mask())
    }

    pub fn meet(&self, a: SupportValue, b: SupportValue) -> SupportValue {
        self.class(a.0 & b.0)
    }

    pub fn join(&self, a: SupportValue, b: SupportValue) -> SupportValue {
        self.class(a.0 | b.0)
    }

    pub fn complement(&self, a: SupportValue) -> SupportValue {
        self.class(!a.0 & self.ideal.full_mask())
    }

    pub fn le(&self, a: SupportValue, b: SupportValue) -> bool {
        self.ideal.contains(a.0 & !b.0 & self.ideal.full_mask())
    }

    /// Always false: finite Boolean algebras have atoms (unless trivial,
    /// which a proper ideal rules out).
    pub fn is_atomless(&self) -> bool {
        let els = self.elements();
        els.len() > 1
            && els.iter().filter(|a| !a.is_zero()).all(|&a| {
                els.iter().any(|&b| !b.is_zero() && b != a && self.le(b, a))
            })
    }

    /// Lifted operations agree on every pair of representatives.
    pub fn operations_well_defined(&self) -> bool {
        let full = self.ideal.full_mask();
        let reps = |c: SupportValue| -> Vec<u32> { (0..=full).filter(|&m| self.class(m) == c).collect() };
        let els = self.elements();
        els.iter().all(|&a| {
            let ra = reps(a);
            ra.iter().all(|&x| self.class(!x & full) == self.complement(a))
                && els.iter().all(|&b| {
                    let rb = reps(b);
                    ra.iter().all(|&x| {
                        rb.iter().all(|&y| {
                            self.class(x & y) == self.meet(a, b)
                                && self.class(x | y) == self.join(a, b)
                                && self.ideal.contains(x & !y & full) == self.le(a, b)
                        })
                    })
                })
        })
    }
}
