use crate::logic::{Evaluator, FiniteStructure, Formula, Interp, LogicError, Signature};

use super::ideal::{mask_to_vec, FiniteIdeal, QuotientBA, SupportValue};
use super::ReducedError;

/// Bound on `Π |M_i|`.
pub const PRODUCT_BOUND: usize = 1_000_000;

/// `Π M_i / 𝓘` over a finite index set.
///
/// Elements are canonical tuples: coordinates in the largest ideal member
/// `U` are set to `0`, the rest range freely, numbered in mixed radix with
/// the lowest free coordinate most significant (so index order is the
/// lexicographic order of canonical tuples).
#[derive(Clone, Debug)]
pub struct ReducedProduct {
    factors: Vec<FiniteStructure>,
    ideal: FiniteIdeal,
    ba: QuotientBA,
    free: Vec<usize>,
    radix: Vec<usize>,
    size: usize,
}

impl ReducedProduct {
    pub fn new(factors: Vec<FiniteStructure>, ideal: &FiniteIdeal) -> Result<Self, ReducedError> {
        if factors.len() != ideal.indices() {
            return Err(ReducedError::Invalid(format!(
                "{} factors but the ideal lives on {} indices",
                factors.len(),
                ideal.indices()
            )));
        }
        let sig = factors[0].signature().clone();
        if factors.iter().any(|m| m.signature() != &sig) {
            return Err(ReducedError::Logic(LogicError::SignatureMismatch("factors have different signatures".into())));
        }
        let total = factors.iter().try_fold(1usize, |acc, m| acc.checked_mul(m.len()));
        match total {
            Some(t) if t <= PRODUCT_BOUND => {}
            _ => return Err(ReducedError::TooLarge { bound: PRODUCT_BOUND }),
        }
        let free: Vec<usize> = (0..factors.len()).filter(|&i| ideal.top() >> i & 1 == 0).collect();
        let mut radix = vec![1usize; free.len()];
        for j in (0..free.len().saturating_sub(1)).rev() {
            radix[j] = radix[j + 1] * factors[free[j + 1]].len();
        }
        let size = free.iter().map(|&i| factors[i].len()).product();
        Ok(ReducedProduct { ba: QuotientBA::new(ideal), factors, ideal: ideal.clone(), free, radix, size })
    }

    pub fn factors(&self) -> &[FiniteStructure] {
        &self.factors
    }

    pub fn ideal(&self) -> &FiniteIdeal {
        &self.ideal
    }

    pub fn algebra(&self) -> &QuotientBA {
        &self.ba
    }

    pub fn indices(&self) -> usize {
        self.factors.len()
    }

    /// Coordinates outside the largest ideal member.
    pub fn free_coordinates(&self) -> &[usize] {
        &self.free
    }

    /// Canonical tuple of an element.
    pub fn representative(&self, a: u32) -> Vec<u32> {
        let mut t = vec![0u32; self.factors.len()];
        let mut a = a as usize;
        for (j, &i) in self.free.iter().enumerate() {
            t[i] = (a / self.radix[j]) as u32;
            a %= self.radix[j];
        }
        t
    }

    /// The class of an arbitrary tuple (the section map).
    pub fn class_of_tuple(&self, t: &[u32]) -> u32 {
        self.free.iter().enumerate().map(|(j, &i)| t[i] as usize * self.radix[j]).sum::<usize>() as u32
    }

    /// Element from per-coordinate labels.
    pub fn element_from_labels(&self, labels: &[&str]) -> Result<u32, ReducedError> {
        if labels.len() != self.factors.len() {
            return Err(ReducedError::Invalid(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                labels.len()
            )));
        }
        let t = labels
            .iter()
            .zip(&self.factors)
            .enumerate()
            .map(|(i, (l, m))| {
                m.index_of(l.trim())
                    .ok_or_else(|| ReducedError::Invalid(format!("`{}` is not an element of factor {i}", l.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.class_of_tuple(&t))
    }

    /// Materialises the tables (feasible when `size^arity` is small).
    pub fn to_structure(&self) -> Result<FiniteStructure, ReducedError> {
        let sig = self.signature().clone();
        let n = self.size;
        let cells = |k: usize| n.checked_pow(k as u32).filter(|&c| c <= 1 << 24);
        let mut rels = Vec::new();
        for (r, s) in sig.relations.iter().enumerate() {
            let c = cells(s.arity).ok_or(ReducedError::TooLarge { bound: 1 << 24 })?;
            let mut args = vec![0u32; s.arity];
            rels.push(
                (0..c)
                    .map(|i| {
                        decode(n, i, &mut args);
                        self.holds(r, &args)
                    })
                    .collect(),
            );
        }
        let mut funs = Vec::new();
        for (f, s) in sig.functions.iter().enumerate() {
            let c = cells(s.arity).ok_or(ReducedError::TooLarge { bound: 1 << 24 })?;
            let mut args = vec![0u32; s.arity];
            funs.push(
                (0..c)
                    .map(|i| {
                        decode(n, i, &mut args);
                        self.apply(f, &args)
                    })
                    .collect(),
            );
        }
        let consts = (0..sig.constants.len()).map(|c| self.constant(c)).collect();
        let labels = (0..n as u32).map(|a| self.label(a)).collect();
        Ok(FiniteStructure::new(sig, labels, rels, funs, consts)?)
    }

    /// Per-coordinate truth of `phi` at full tuples `reps` (one per var).
    pub fn truth_set_at(&self, phi: &Formula, vars: &[String], reps: &[Vec<u32>]) -> Result<u32, ReducedError> {
        let mut mask = 0u32;
        for (i, m) in self.factors.iter().enumerate() {
            let ev = Evaluator::new(m, phi, vars)?;
            let vals: Vec<u32> = reps.iter().map(|t| t[i]).collect();
            if ev.eval_tuple(&vals) {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    }

    /// `supp_φ(ā)` computed from the given representatives.
    pub fn supp_phi_with(&self, phi: &Formula, vars: &[String], reps: &[Vec<u32>]) -> Result<SupportValue, ReducedError> {
        check_vars(phi, vars)?;
        Ok(self.ba.class(self.truth_set_at(phi, vars, reps)?))
    }

    /// `supp_φ(ā) = [{i : M_i ⊨ φ(a_i)}]`.
    pub fn supp_phi(&self, phi: &Formula, vars: &[String], a: &[u32]) -> Result<SupportValue, ReducedError> {
        if a.len() != vars.len() {
            return Err(ReducedError::Invalid("one element per variable expected".into()));
        }
        let reps: Vec<Vec<u32>> = a.iter().map(|&x| self.representative(x)).collect();
        self.supp_phi_with(phi, vars, &reps)
    }

    /// `supp_=(a,b) = [{i : a_i = b_i}]`.
    pub fn supp_eq(&self, a: u32, b: u32) -> SupportValue {
        let (ra, rb) = (self.representative(a), self.representative(b));
        self.ba.class(eq_mask(&ra, &rb))
    }

    /// `c_θ = [{i : M_i ⊨ θ}]`.
    pub fn c_theta(&self, theta: &Formula) -> Result<SupportValue, ReducedError> {
        if !theta.is_sentence() {
            return Err(ReducedError::Invalid("c_theta needs a sentence".into()));
        }
        self.supp_phi_with(theta, &[], &[])
    }

    /// `M↾S` over the canonical representative of `S`, with `π_S`.
    pub fn restrict(&self, s: SupportValue) -> Result<Restriction, ReducedError> {
        self.restrict_to_set(self.ideal.canonical(s.0))
    }

    /// `M↾S̃` for an explicit index set `S̃`, with induced ideal `𝓘↾S̃`.
    pub fn restrict_to_set(&self, s: u32) -> Result<Restriction, ReducedError> {
        if self.ideal.canonical(s) == 0 {
            return Err(ReducedError::ZeroSupport);
        }
        let idx = mask_to_vec(s);
        let ideal = self.ideal.restrict_to(s)?;
        let product = ReducedProduct::new(idx.iter().map(|&i| self.factors[i].clone()).collect(), &ideal)?;
        let projection = (0..self.size as u32)
            .map(|a| {
                let t = self.representative(a);
                let sub: Vec<u32> = idx.iter().map(|&i| t[i]).collect();
                product.class_of_tuple(&sub)
            })
            .collect();
        Ok(Restriction { indices: idx, product, projection })
    }

    /// An element agreeing with `a` on `A` and with `b` on `B` (`A ∧ B = 0`).
    pub fn patch(&self, sa: SupportValue, sb: SupportValue, a: u32, b: u32) -> Result<u32, ReducedError> {
        if !self.ba.meet(sa, sb).is_zero() {
            return Err(ReducedError::Invalid("patch regions must be disjoint".into()));
        }
        let (ra, rb) = (self.representative(a), self.representative(b));
        let (ma, mb) = (self.ideal.canonical(sa.0), self.ideal.canonical(sb.0));
        let c: Vec<u32> = (0..self.factors.len())
            .map(|i| if mb >> i & 1 == 1 && ma >> i & 1 == 0 { rb[i] } else { ra[i] })
            .collect();
        Ok(self.class_of_tuple(&c))
    }

    pub fn element_count(&self) -> usize {
        self.size
    }
}

pub(crate) fn eq_mask(a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).enumerate().filter(|(_, (x, y))| x == y).fold(0, |m, (i, _)| m | 1 << i)
}

fn check_vars(phi: &Formula, vars: &[String]) -> Result<(), ReducedError> {
    match phi.free_vars().iter().find(|v| !vars.contains(v)) {
        Some(v) => Err(ReducedError::Logic(LogicError::MissingBinding(v.clone()))),
        None => Ok(()),
    }
}

fn decode(n: usize, mut i: usize, out: &mut [u32]) {
    for k in (0..out.len()).rev() {
        out[k] = (i % n) as u32;
        i /= n;
    }
}

impl Interp for ReducedProduct {
    fn size(&self) -> usize {
        self.size
    }

    fn signature(&self) -> &Signature {
        self.factors[0].signature()
    }

    fn apply(&self, f: usize, args: &[u32]) -> u32 {
        let reps: Vec<Vec<u32>> = args.iter().map(|&a| self.representative(a)).collect();
        let mut buf = Vec::with_capacity(args.len());
        let mut out = 0usize;
        for (j, &i) in self.free.iter().enumerate() {
            buf.clear();
            buf.extend(reps.iter().map(|t| t[i]));
            out += self.factors[i].apply(f, &buf) as usize * self.radix[j];
        }
        out as u32
    }

    /// Holds iff the failure set lies in the ideal, i.e. holds on every
    /// free coordinate.
    fn holds(&self, r: usize, args: &[u32]) -> bool {
        let reps: Vec<Vec<u32>> = args.iter().map(|&a| self.representative(a)).collect();
        let mut buf = Vec::with_capacity(args.len());
        let mut fail = 0u32;
        for (i, m) in self.factors.iter().enumerate() {
            buf.clear();
            buf.extend(reps.iter().map(|t| t[i]));
            if !m.holds(r, &buf) {
                fail |= 1 << i;
            }
        }
        self.ideal.contains(fail)
    }

    fn constant(&self, c: usize) -> u32 {
        self.free
            .iter()
            .enumerate()
            .map(|(j, &i)| self.factors[i].constant(c) as usize * self.radix[j])
            .sum::<usize>() as u32
    }

    fn label(&self, a: u32) -> String {
        let t = self.representative(a);
        let parts: Vec<String> = t
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if self.ideal.top() >> i & 1 == 1 {
                    "_".to_string()
                } else {
                    self.factors[i].label(x)
                }
            })
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// `M↾S` with the projection `π_S` from the parent product.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub indices: Vec<usize>,
    pub product: ReducedProduct,
    pub projection: Vec<u32>,
}

impl Restriction {
    /// `π_S` is onto and commutes with every function and relation.
    pub fn projection_is_homomorphism(&self, parent: &ReducedProduct) -> bool {
        let sig = parent.signature();
        let n = parent.size();
        let mut hit = vec![false; self.product.size()];
        for &p in &self.projection {
            hit[p as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            return false;
        }
        let tuples = |k: usize| -> Box<dyn Iterator<Item = Vec<u32>>> {
            let count = n.pow(k as u32);
            Box::new((0..count).map(move |i| {
                let mut v = vec![0u32; k];
                decode(n, i, &mut v);
                v
            }))
        };
        for (f, s) in sig.functions.iter().enumerate() {
            for args in tuples(s.arity) {
                let img: Vec<u32> = args.iter().map(|&a| self.projection[a as usize]).collect();
                if self.projection[parent.apply(f, &args) as usize] != self.product.apply(f, &img) {
                    return false;
                }
            }
        }
        for (r, s) in sig.relations.iter().enumerate() {
            for args in tuples(s.arity) {
                let img: Vec<u32> = args.iter().map(|&a| self.projection[a as usize]).collect();
                if parent.holds(r, &args) && !self.product.holds(r, &img) {
                    return false;
                }
            }
        }
        for c in 0..sig.constants.len() {
            if self.projection[parent.constant(c) as usize] != self.product.constant(c) {
                return false;
            }
        }
        true
    }
}
