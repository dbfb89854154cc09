//! Seeded random reduced-product instances for property tests.

use rand::Rng;

use super::FiniteIdeal;
use crate::logic::random::random_structure;
use crate::logic::{FiniteStructure, Signature};

/// `P(U)` for a uniformly chosen proper `U ⊂ {0..k}`.
pub fn random_proper_ideal<R: Rng>(rng: &mut R, k: usize) -> FiniteIdeal {
    let u = rng.gen_range(0..(1u32 << k) - 1);
    let set: Vec<usize> = (0..k).filter(|&i| u >> i & 1 == 1).collect();
    FiniteIdeal::new(k, &[set]).expect("proper subset generates a proper ideal")
}

/// `1..=max_k` random factors with `1..=max_size` elements each, and a
/// random proper ideal on them.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    max_size: usize,
    max_k: usize,
) -> (Vec<FiniteStructure>, FiniteIdeal) {
    let k = rng.gen_range(1..=max_k);
    let factors = (0..k)
        .map(|_| {
            let n = rng.gen_range(1..=max_size);
            random_structure(rng, sig, n)
        })
        .collect();
    (factors, random_proper_ideal(rng, k))
}
