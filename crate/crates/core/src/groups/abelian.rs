use std::collections::VecDeque;

use super::{prime_divisors, FiniteGroup, GroupError, GroupHom};

/// Invariant factors `d1 | d2 | ...` (each > 1) of an abelian group.
pub fn abelian_invariants(a: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
    if !a.is_abelian() {
        return Err(GroupError::Precondition(format!("{} is not abelian", a.name())));
    }
    let n = a.order();
    // For each prime: the exponents of the cyclic p-primary factors, descending.
    let mut primary: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in prime_divisors(n) {
        let mut exps = Vec::new();
        let mut prev = 1usize;
        let mut k = 1u32;
        loop {
            let pk = (p as u64).pow(k);
            let count = a.elements().filter(|&x| a.pow(x, pk) == a.identity()).count();
            if count == prev {
                break;
            }
            // number of cyclic factors of exponent >= k
            let r = ilog(count / prev, p);
            exps.push(r);
            prev = count;
            k += 1;
        }
        // exps[k-1] = #factors with exponent >= k; convert to exponent list
        let total = exps.first().copied().unwrap_or(0);
        let mut list = Vec::new();
        for i in 0..total {
            let e = exps.iter().filter(|&&r| r > i).count() as u32;
            list.push(e);
        }
        primary.push((p, list));
    }
    let width = primary.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; width];
    for (p, list) in &primary {
        // largest exponents go to the last factor
        for (i, &e) in list.iter().enumerate() {
            factors[width - 1 - i] *= p.pow(e);
        }
    }
    Ok(factors)
}

fn ilog(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Generators picked greedily by index: each extends the subgroup so far.
fn greedy_generators(g: &FiniteGroup) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = g.generated_bits(&[]);
    for x in g.elements() {
        if !span.contains(x as usize) {
            gens.push(x);
            span = g.generated_bits(&gens);
            if span.count_ones(..) == g.order() {
                break;
            }
        }
    }
    gens
}

/// Extends `gens[i] -> images[i]` along right multiplication; `None` if the
/// assignment is inconsistent (no homomorphism has those values).
fn extend<F>(g: &FiniteGroup, gens: &[u32], images: &[u32], id: u32, mul: F) -> Option<Vec<u32>>
where
    F: Fn(u32, u32) -> u32,
{
    let mut val = vec![u32::MAX; g.order()];
    val[g.identity() as usize] = id;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let v = mul(val[x as usize], images[i]);
            match val[y as usize] {
                u32::MAX => {
                    val[y as usize] = v;
                    queue.push_back(y);
                }
                w if w != v => return None,
                _ => {}
            }
        }
    }
    Some(val)
}

/// Number of homomorphisms `G -> Z(H)` (trivial one included), by
/// enumerating generator images and checking consistency. Exponential in the
/// number of generators; intended for small groups.
pub fn brute_force_center_homs(g: &FiniteGroup, h: &FiniteGroup) -> usize {
    let z = h.center().elements;
    let gens = greedy_generators(g);
    let mut count = 0;
    let mut idx = vec![0usize; gens.len()];
    loop {
        let images: Vec<u32> = idx.iter().map(|&i| z[i]).collect();
        if extend(g, &gens, &images, h.identity(), |a, b| h.mul(a, b)).is_some() {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return count;
            }
            idx[k] += 1;
            if idx[k] < z.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

impl FiniteGroup {
    /// Invariant factors of `G/[G,G]`.
    pub fn abelianization(&self) -> Result<Vec<usize>, GroupError> {
        let (a, _) = self.quotient(&self.commutator_subgroup()?)?;
        abelian_invariants(&a)
    }

    /// A nontrivial homomorphism `G -> H` with central image, if one exists.
    ///
    /// One exists iff some prime divides both `|G/[G,G]|` and `|Z(H)|`; the
    /// map is `G -> G/[G,G] -> Z/p -> <z>` for `z` central of order `p`.
    pub fn hom_to_center_exists(&self, h: &FiniteGroup) -> Result<Option<GroupHom>, GroupError> {
        let (a, proj) = self.quotient(&self.commutator_subgroup()?)?;
        let z = h.center();
        let zp = prime_divisors(z.order());
        let Some(p) = prime_divisors(a.order()).into_iter().find(|p| zp.contains(p)) else {
            return Ok(None);
        };
        let zgen = z
            .elements
            .iter()
            .copied()
            .find(|&x| h.element_order(x) as usize == p)
            .expect("Cauchy: the center has an element of order p");
        let gens = greedy_generators(&a);
        let p32 = p as u32;
        let mut idx = vec![0u32; gens.len()];
        let chars = loop {
            // advance first, so the all-zero (trivial) assignment is skipped
            let mut k = 0;
            loop {
                if k == idx.len() {
                    unreachable!("p divides |A|, so A has a nontrivial map to Z/p");
                }
                idx[k] += 1;
                if idx[k] < p32 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if let Some(v) = extend(&a, &gens, &idx, 0, |x, y| (x + y) % p32) {
                break v;
            }
        };
        let map: Vec<u32> =
            self.elements().map(|x| h.pow(zgen, chars[proj[x as usize] as usize] as u64)).collect();
        let hom = GroupHom::new(self, h, map);
        debug_assert!(hom.is_homomorphism(self, h) && hom.image_central(h) && !hom.trivial);
        Ok(Some(hom))
    }
}
