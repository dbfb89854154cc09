//! Matrix groups over the small fields GF(2), GF(3), GF(4), GF(5), GF(7).

use crate::groups::{FiniteGroup, GroupError, Provenance, CLASS_BOUND};

/// A finite field with elements `0..q`. For GF(4) the element `2b + a`
/// stands for `a + b w` with `w^2 = w + 1`.
#[derive(Clone, Debug)]
pub struct SmallField {
    pub q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u8) -> Option<Self> {
        let qq = q as usize;
        let (add, mul): (Vec<u8>, Vec<u8>) = match q {
            2 | 3 | 5 | 7 => (
                (0..qq * qq).map(|i| ((i / qq + i % qq) % qq) as u8).collect(),
                (0..qq * qq).map(|i| ((i / qq) * (i % qq) % qq) as u8).collect(),
            ),
            4 => {
                let add = (0..16).map(|i| ((i / 4) ^ (i % 4)) as u8).collect();
                let mul = (0..16)
                    .map(|i| {
                        let (x, y) = (i / 4, i % 4);
                        // (a + b w)(c + d w) with w^2 = w + 1
                        let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
                        let bd = b & d;
                        let lo = (a & c) ^ bd;
                        let hi = (a & d) ^ (b & c) ^ bd;
                        (lo | (hi << 1)) as u8
                    })
                    .collect();
                (add, mul)
            }
            _ => return None,
        };
        Some(SmallField { q, add, mul })
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        (1..self.q)
            .find(|&g| {
                let mut x = 1;
                let mut k = 0;
                loop {
                    x = self.mul(x, g);
                    k += 1;
                    if x == 1 {
                        break;
                    }
                }
                k == self.q - 1
            })
            .unwrap()
    }
}

/// `|GL(n,q)|`.
pub fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

/// `|SL(n,q)| = |GL(n,q)| / (q - 1)`.
pub fn sl_order(n: u32, q: u64) -> u64 {
    gl_order(n, q) / (q - 1)
}

fn mat_mul(f: &SmallField, n: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut c = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
            }
            c[i * n + j] = s;
        }
    }
    c
}

/// Row-major digits, rows separated by `;`: `[10;01]`.
pub fn matrix_label(n: usize, m: &[u8]) -> String {
    let rows: Vec<String> = m.chunks(n).map(|r| r.iter().map(|d| d.to_string()).collect()).collect();
    format!("[{}]", rows.join(";"))
}

fn identity(n: usize) -> Vec<u8> {
    let mut m = vec![0u8; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Elementary transvections `I + t E_ij` for all `i != j` and `t != 0`;
/// they generate `SL(n,q)`.
fn transvections(n: usize, f: &SmallField) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in 1..f.q {
                let mut m = identity(n);
                m[i * n + j] = t;
                out.push(m);
            }
        }
    }
    out
}

fn check(n: usize, q: u8, order: u64) -> Result<SmallField, GroupError> {
    if !(2..=3).contains(&n) {
        return Err(GroupError::Precondition(format!("matrix size {n} not supported (use 2 or 3)")));
    }
    let f = SmallField::new(q)
        .ok_or_else(|| GroupError::Precondition(format!("field size {q} not supported (use 2, 3, 4, 5 or 7)")))?;
    if order > CLASS_BOUND as u64 {
        return Err(GroupError::TooLarge { op: "matrix group construction", order: order as usize, bound: CLASS_BOUND });
    }
    Ok(f)
}

pub fn special_linear(n: usize, q: u8) -> Result<FiniteGroup, GroupError> {
    let order = sl_order(n as u32, q as u64);
    let f = check(n, q, order)?;
    build(&format!("SL{n}_{q}"), n, &f, transvections(n, &f), order)
}

pub fn general_linear(n: usize, q: u8) -> Result<FiniteGroup, GroupError> {
    let order = gl_order(n as u32, q as u64);
    let f = check(n, q, order)?;
    let mut gens = transvections(n, &f);
    let mut d = identity(n);
    d[0] = f.primitive();
    gens.push(d);
    build(&format!("GL{n}_{q}"), n, &f, gens, order)
}

fn build(name: &str, n: usize, f: &SmallField, gens: Vec<Vec<u8>>, order: u64) -> Result<FiniteGroup, GroupError> {
    let g = FiniteGroup::from_generators(
        name,
        identity(n),
        &gens,
        |a, b| mat_mul(f, n, a, b),
        |m| matrix_label(n, m),
        Provenance::Matrix,
        CLASS_BOUND,
    )?;
    if g.order() as u64 != order {
        return Err(GroupError::NotAGroup(format!("{name}: generated {} elements, expected {order}", g.order())));
    }
    Ok(g)
}

/// Determinant of a matrix given by its label (n = 2 or 3).
pub fn determinant(f: &SmallField, n: usize, m: &[u8]) -> u8 {
    let neg = |x: u8| (0..f.q).find(|&y| f.add(x, y) == 0).unwrap();
    match n {
        2 => f.add(f.mul(m[0], m[3]), neg(f.mul(m[1], m[2]))),
        3 => {
            let t = |a: usize, b: usize, c: usize| f.mul(f.mul(m[a], m[b]), m[c]);
            let pos = f.add(f.add(t(0, 4, 8), t(1, 5, 6)), t(2, 3, 7));
            let negs = f.add(f.add(t(2, 4, 6), t(0, 5, 7)), t(1, 3, 8));
            f.add(pos, neg(negs))
        }
        _ => panic!("determinant only for 2x2 and 3x3"),
    }
}

/// Parses `[10;01]` back into entries.
pub fn parse_matrix_label(text: &str) -> Option<(usize, Vec<u8>)> {
    let body = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let rows: Vec<&str> = body.split(';').collect();
    let n = rows.len();
    let mut out = Vec::with_capacity(n * n);
    for r in rows {
        if r.chars().count() != n {
            return None;
        }
        for c in r.chars() {
            out.push(c.to_digit(10)? as u8);
        }
    }
    Some((n, out))
}
