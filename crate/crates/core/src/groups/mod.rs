//! Finite groups as dense Cayley tables.

mod abelian;
mod classes;
mod normal;
mod series;

pub use abelian::{abelian_invariants, brute_force_center_homs};
pub use series::CommutatorWidth;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use std::collections::VecDeque;
use std::sync::OnceLock;
use thiserror::Error;

use crate::logic::{FiniteStructure, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{op} needs |G| <= {bound}, got {order}")]
    TooLarge { op: &'static str, order: usize, bound: usize },
    #[error("{0}")]
    Precondition(String),
}

/// Order bound for subgroup-lattice style operations.
pub const LATTICE_BOUND: usize = 1000;
/// Order bound for class and centralizer operations.
pub const CLASS_BOUND: usize = 10080;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Permutation,
    Matrix,
    Presentation,
    Table,
}

#[derive(Default)]
struct Cache {
    classes: OnceLock<(Vec<Vec<u32>>, Vec<u32>)>,
    class_centralizers: OnceLock<Vec<FixedBitSet>>,
    commutators: OnceLock<FixedBitSet>,
    orders: OnceLock<Vec<u32>>,
    generators: OnceLock<Vec<u32>>,
}

/// A finite group with elements `0..n`.
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
    labels: Vec<String>,
    provenance: Provenance,
    cache: Cache,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            name: self.name.clone(),
            n: self.n,
            table: self.table.clone(),
            inv: self.inv.clone(),
            identity: self.identity,
            labels: self.labels.clone(),
            provenance: self.provenance,
            cache: Cache::default(),
        }
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

/// A subgroup given by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubgroupHandle {
    pub elements: Vec<u32>,
    pub normal: bool,
    pub abelian: bool,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// A map between two groups, total on the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupHom {
    pub source: String,
    pub target: String,
    pub map: Vec<u32>,
    pub image: Vec<u32>,
    pub trivial: bool,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<u32>) -> Self {
        let mut image = map.clone();
        image.sort_unstable();
        image.dedup();
        let trivial = image.iter().all(|&x| x == target.identity());
        GroupHom { source: source.name().into(), target: target.name().into(), map, image, trivial }
    }

    /// Exhaustive `f(xy) = f(x)f(y)`.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.map.len() != source.order() {
            return false;
        }
        source.elements().all(|x| {
            source.elements().all(|y| {
                self.map[source.mul(x, y) as usize] == target.mul(self.map[x as usize], self.map[y as usize])
            })
        })
    }

    pub fn image_central(&self, target: &FiniteGroup) -> bool {
        let z = target.center();
        self.image.iter().all(|&a| z.contains(a))
    }
}

impl FiniteGroup {
    /// Validates the table (identity, inverses, Latin square; associativity
    /// exhaustively when `n <= 512`).
    pub fn from_table(
        name: &str,
        table: Vec<u32>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self, GroupError> {
        let g = Self::from_table_unchecked(name, table, labels, provenance)?;
        if g.n <= 512 && !g.is_associative() {
            return Err(GroupError::NotAGroup("multiplication is not associative".into()));
        }
        Ok(g)
    }

    /// As [`from_table`](Self::from_table) but skips the associativity scan;
    /// for tables built from permutations or matrices.
    pub fn from_table_unchecked(
        name: &str,
        table: Vec<u32>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 || table.len() != n * n {
            return Err(GroupError::NotAGroup("table must be n x n with n >= 1".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::NotAGroup("table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a as u32 && table[a * n + e] == a as u32))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))? as u32;
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(GroupError::NotAGroup(format!("row {a} repeats an entry")));
                }
            }
            let b = row.iter().position(|&x| x == identity).unwrap();
            if table[b * n + a] != identity {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            inv[a] = b as u32;
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            n,
            table,
            inv,
            identity,
            labels,
            provenance,
            cache: Cache::default(),
        })
    }

    /// Closes a set of generators inside a larger group given by a product
    /// function, producing a table over the elements reached. Elements are
    /// numbered in breadth-first order starting with the identity.
    pub fn from_generators<T, F, L>(
        name: &str,
        identity: T,
        gens: &[T],
        mul: F,
        label: L,
        provenance: Provenance,
        bound: usize,
    ) -> Result<Self, GroupError>
    where
        T: Clone + Eq + std::hash::Hash + Send + Sync,
        F: Fn(&T, &T) -> T + Sync,
        L: Fn(&T) -> String,
    {
        use std::collections::HashMap;
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = mul(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(GroupError::TooLarge { op: "table construction", order: elems.len() + 1, bound });
                    }
                    index.insert(p.clone(), elems.len() as u32);
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        use rayon::prelude::*;
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|a| elems.iter().map(|b| index[&mul(&elems[a], b)]).collect())
            .collect();
        let labels = elems.iter().map(label).collect();
        Self::from_table_unchecked(name, rows.concat(), labels, provenance)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        0..self.n as u32
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// `[a,b] = a b a⁻¹ b⁻¹`.
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commutes(a, b)))
    }

    pub fn is_associative(&self) -> bool {
        use rayon::prelude::*;
        (0..self.n as u32).into_par_iter().all(|a| {
            self.elements().all(|b| {
                let ab = self.mul(a, b);
                self.elements().all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// Element orders, cached.
    pub fn element_orders(&self) -> &[u32] {
        self.cache.orders.get_or_init(|| {
            self.elements()
                .map(|a| {
                    let mut k = 1;
                    let mut x = a;
                    while x != self.identity {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders()[a as usize]
    }

    pub(crate) fn guard(&self, op: &'static str, bound: usize) -> Result<(), GroupError> {
        if self.n > bound {
            Err(GroupError::TooLarge { op, order: self.n, bound })
        } else {
            Ok(())
        }
    }

    pub(crate) fn bitset(&self, elems: impl IntoIterator<Item = u32>) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n);
        for a in elems {
            b.insert(a as usize);
        }
        b
    }

    /// Subgroup generated by `gens` as a bitset.
    pub(crate) fn generated_bits(&self, gens: &[u32]) -> FixedBitSet {
        self.closure_with_gens(gens.iter().copied()).0
    }

    /// Subgroup generated by `gens`, plus the generators that were needed
    /// (each one outside the closure of the earlier ones).
    ///
    /// Elements already present are closed under the earlier generators, so a
    /// new generator only has to be applied to them once; elements it creates
    /// are then closed under all generators.
    pub(crate) fn closure_with_gens(&self, gens: impl IntoIterator<Item = u32>) -> (FixedBitSet, Vec<u32>) {
        let mut seen = FixedBitSet::with_capacity(self.n);
        seen.insert(self.identity as usize);
        let mut elems = vec![self.identity];
        let mut active: Vec<u32> = Vec::new();
        let mut stack = Vec::new();
        for g in gens {
            if seen.contains(g as usize) {
                continue;
            }
            active.push(g);
            for i in 0..elems.len() {
                let y = self.mul(elems[i], g);
                if !seen.put(y as usize) {
                    elems.push(y);
                    stack.push(y);
                }
            }
            while let Some(x) = stack.pop() {
                for &a in &active {
                    let y = self.mul(x, a);
                    if !seen.put(y as usize) {
                        elems.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        (seen, active)
    }

    /// A generating set of `G`, cached.
    pub(crate) fn generators(&self) -> &[u32] {
        self.cache.generators.get_or_init(|| self.closure_with_gens(self.elements()).1)
    }

    /// Smallest normal subgroup containing `set`.
    pub(crate) fn normal_closure(&self, set: &[u32]) -> FixedBitSet {
        let (mut bits, mut gens) = self.closure_with_gens(set.iter().copied());
        loop {
            let extra: Vec<u32> = gens
                .iter()
                .flat_map(|&h| self.generators().iter().map(move |&g| (h, g)))
                .map(|(h, g)| self.conj(h, g))
                .filter(|&c| !bits.contains(c as usize))
                .collect();
            if extra.is_empty() {
                return bits;
            }
            gens.extend(extra);
            let next = self.closure_with_gens(gens.iter().copied());
            bits = next.0;
            gens = next.1;
        }
    }

    pub(crate) fn handle(&self, bits: &FixedBitSet) -> SubgroupHandle {
        let elements: Vec<u32> = bits.ones().map(|i| i as u32).collect();
        let gens = self.closure_with_gens(elements.iter().copied()).1;
        let abelian = gens.iter().all(|&a| gens.iter().all(|&b| self.commutes(a, b)));
        let normal = self.is_normal_gens(bits, &gens);
        SubgroupHandle { elements, normal, abelian }
    }

    /// Normality of the subgroup `bits` (which must be a subgroup).
    pub(crate) fn is_normal_bits(&self, bits: &FixedBitSet) -> bool {
        let gens = self.closure_with_gens(bits.ones().map(|i| i as u32)).1;
        self.is_normal_gens(bits, &gens)
    }

    fn is_normal_gens(&self, bits: &FixedBitSet, gens: &[u32]) -> bool {
        gens.iter().all(|&h| self.generators().iter().all(|&g| bits.contains(self.conj(h, g) as usize)))
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[u32]) -> SubgroupHandle {
        self.handle(&self.generated_bits(gens))
    }

    /// Checks closure under products and inverses and that the identity is in.
    pub fn is_subgroup(&self, elems: &[u32]) -> bool {
        let b = self.bitset(elems.iter().copied());
        b.contains(self.identity as usize)
            && b.ones().all(|a| {
                b.contains(self.inv(a as u32) as usize) && b.ones().all(|c| b.contains(self.mul(a as u32, c as u32) as usize))
            })
    }

    /// The group as a structure over `{·, inv, e}`.
    pub fn as_structure(&self) -> FiniteStructure {
        FiniteStructure::new(
            Signature::group(),
            self.labels.clone(),
            vec![],
            vec![self.table.clone(), self.inv.clone()],
            vec![self.identity],
        )
        .expect("group tables form a valid structure")
    }

    /// Direct product with coordinates `(a, b)` numbered `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.n, other.n);
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            let (a, b) = ((x / m) as u32, (x % m) as u32);
            for y in 0..n * m {
                let (c, d) = ((y / m) as u32, (y % m) as u32);
                table.push(self.mul(a, c) * m as u32 + other.mul(b, d));
            }
        }
        let labels =
            (0..n * m).map(|x| format!("({},{})", self.labels[x / m], other.labels[x % m])).collect();
        FiniteGroup::from_table_unchecked(
            &format!("{}x{}", self.name, other.name),
            table,
            labels,
            Provenance::Table,
        )
        .expect("product of groups is a group")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<&[u32]> = self.table.chunks(self.n).collect();
        serde_json::json!({ "name": self.name, "labels": self.labels, "table": rows })
    }
}

/// Distinct primes dividing `n`, ascending.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_divisors(n) == vec![n]
}
