//! Permutation groups. A permutation of `{0..n}` is a vector `p` with `p[i]`
//! the image of `i`; products compose right to left, `(p q)(i) = p(q(i))`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::groups::{FiniteGroup, GroupError, Provenance};

pub type Perm = Vec<u8>;

/// All permutations of `{0..n}` in lexicographic order (identity first).
pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub fn compose(p: &[u8], q: &[u8]) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

pub fn is_even(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Nontrivial cycles, each starting at its least point, ordered by that point.
pub fn cycles(p: &[u8]) -> Vec<Vec<u8>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] || p[i] as usize == i {
            continue;
        }
        let mut c = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            c.push(j as u8);
            j = p[j] as usize;
        }
        out.push(c);
    }
    out
}

/// Cycle lengths greater than one, descending.
pub fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(|c| c.len()).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// `(12)(34)` with points numbered from 1; `e` for the identity.
pub fn cycle_label(p: &[u8]) -> String {
    let cs = cycles(p);
    if cs.is_empty() {
        return "e".into();
    }
    cs.iter()
        .map(|c| format!("({})", c.iter().map(|&i| (i + 1).to_string()).collect::<String>()))
        .collect()
}

/// Parses cycle notation (`e`, `(12)(34)`, `(1 2)(3 4)`, `(1,2)`) over `n` points.
pub fn parse_cycles(text: &str, n: usize) -> Option<Perm> {
    let mut p: Perm = (0..n as u8).collect();
    let t = text.trim();
    if t == "e" || t == "()" {
        return Some(p);
    }
    let mut rest = t;
    while !rest.is_empty() {
        rest = rest.strip_prefix('(')?;
        let end = rest.find(')')?;
        let body = &rest[..end];
        rest = rest[end + 1..].trim_start();
        let pts: Vec<u8> = if body.contains([' ', ',']) {
            body.split([' ', ',']).filter(|s| !s.is_empty()).map(|s| s.parse::<u8>().ok()).collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect::<Option<_>>()?
        };
        if pts.iter().any(|&x| x == 0 || x as usize > n) {
            return None;
        }
        let cyc: Perm = {
            let mut c: Perm = (0..n as u8).collect();
            for k in 0..pts.len() {
                c[(pts[k] - 1) as usize] = pts[(k + 1) % pts.len()] - 1;
            }
            c
        };
        p = compose(&p, &cyc);
    }
    Some(p)
}

/// The group on `perms` (closed under composition, containing the identity
/// first). Row computation runs in parallel.
pub fn permutation_group(name: &str, perms: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
    let index: HashMap<&[u8], u32> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect();
    let n = perms.len();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c = compose(&perms[a], b);
                    *index.get(c.as_slice()).expect("permutation set is closed")
                })
                .collect()
        })
        .collect();
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    FiniteGroup::from_table_unchecked(name, rows.concat(), labels, Provenance::Permutation)
}

/// The permutations behind `S_n` and `A_n`, in the same order as the group.
pub fn symmetric_elements(n: usize) -> Vec<Perm> {
    all_permutations(n)
}

pub fn alternating_elements(n: usize) -> Vec<Perm> {
    all_permutations(n).into_iter().filter(|p| is_even(p)).collect()
}
