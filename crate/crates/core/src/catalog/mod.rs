//! Named constructors for the groups and structures under study, each with
//! the expected recognizing-coordinates outcome attached.

pub mod matrix;
pub mod perm;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{FiniteGroup, GroupError, Provenance, CLASS_BOUND};
use crate::logic::{FiniteStructure, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    Unknown(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Recognizes,
    Fails,
    Open,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Recognizes => "recognizes",
            Outcome::Fails => "fails",
            Outcome::Open => "open",
        })
    }
}

/// Where an expected outcome comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A published classification statement covers this entry.
    Stated,
    /// No statement covers it; the value is what the engine computes.
    Computed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub outcome: Outcome,
    pub basis: Basis,
    pub citation: String,
    /// Set when the stated outcome disagrees with a direct computation.
    pub flag: Option<String>,
}

impl Expected {
    fn stated(outcome: Outcome, citation: &str) -> Self {
        Expected { outcome, basis: Basis::Stated, citation: citation.into(), flag: None }
    }

    fn computed(outcome: Outcome, citation: &str) -> Self {
        Expected { outcome, basis: Basis::Computed, citation: citation.into(), flag: None }
    }
}

#[derive(Clone, Debug)]
pub enum Built {
    Group(FiniteGroup),
    Structure(FiniteStructure),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub family: &'static str,
    pub params: Vec<usize>,
    pub built: Built,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.built {
            Built::Group(g) => Some(g),
            Built::Structure(_) => None,
        }
    }

    pub fn structure(&self) -> FiniteStructure {
        match &self.built {
            Built::Group(g) => g.as_structure(),
            Built::Structure(s) => s.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match &self.built {
            Built::Group(g) => g.order(),
            Built::Structure(s) => s.len(),
        }
    }

    fn group_entry(g: FiniteGroup, family: &'static str, params: Vec<usize>, expected: Expected) -> Self {
        CatalogEntry { name: g.name().to_string(), family, params, built: Built::Group(g), expected }
    }
}

const SIMPLE: &str = "simple groups recognize coordinates";
const SYMMETRIC: &str = "symmetric groups S_n, n >= 3, recognize coordinates";
const ODD_DIHEDRAL: &str = "dihedral groups of the (2n+1)-gon recognize coordinates";
const EVEN_DIHEDRAL: &str = "dihedral groups of the 2n-gon do not recognize coordinates";
const ABELIAN: &str = "nontrivial homomorphism into the center (identity map of an abelian group)";
const SL_BIG_FIELD: &str = "SL(n,F) with n >= 2 and |F| >= 4 recognize coordinates";
const GL: &str = "GL(n,F) does not recognize coordinates (determinant into scalar matrices)";
const QUATERNION: &str = "Q8 does not recognize coordinates (maps onto Z(Q8))";
const PRODUCT: &str = "products of nontrivial groups do not recognize coordinates";
const RPS: &str = "the rock-paper-scissors magma recognizes coordinates";

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn make_symmetric(n: usize) -> Result<CatalogEntry, CatalogError> {
    if !(1..=8).contains(&n) {
        return Err(CatalogError::Range(format!("symmetric degree {n} (supported 1..=8)")));
    }
    if factorial(n) > CLASS_BOUND {
        return Err(GroupError::TooLarge { op: "symmetric group table", order: factorial(n), bound: CLASS_BOUND }.into());
    }
    let g = perm::permutation_group(&format!("S{n}"), perm::symmetric_elements(n))?;
    let expected = match n {
        1 => Expected::computed(Outcome::Open, "trivial group"),
        2 => Expected::stated(Outcome::Fails, ABELIAN),
        _ => Expected::stated(Outcome::Recognizes, SYMMETRIC),
    };
    Ok(CatalogEntry::group_entry(g, "symmetric", vec![n], expected))
}

pub fn make_alternating(n: usize) -> Result<CatalogEntry, CatalogError> {
    if !(3..=8).contains(&n) {
        return Err(CatalogError::Range(format!("alternating degree {n} (supported 3..=8)")));
    }
    let order = factorial(n) / 2;
    if order > CLASS_BOUND {
        return Err(GroupError::TooLarge { op: "alternating group table", order, bound: CLASS_BOUND }.into());
    }
    let g = perm::permutation_group(&format!("A{n}"), perm::alternating_elements(n))?;
    let expected = match n {
        3 => Expected::stated(Outcome::Fails, ABELIAN),
        4 => Expected::computed(Outcome::Recognizes, "not simple and not classified; criterion computed"),
        _ => Expected::stated(Outcome::Recognizes, SIMPLE),
    };
    Ok(CatalogEntry::group_entry(g, "alternating", vec![n], expected))
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Precondition("cyclic group of order 0".into()));
    }
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    FiniteGroup::from_table_unchecked(&format!("C{n}"), table, labels, Provenance::Presentation)
}

pub fn make_cyclic(n: usize) -> Result<CatalogEntry, CatalogError> {
    if !(1..=CLASS_BOUND).contains(&n) {
        return Err(CatalogError::Range(format!("cyclic order {n}")));
    }
    let g = cyclic_group(n)?;
    let expected = if n == 1 {
        Expected::computed(Outcome::Open, "trivial group")
    } else {
        Expected::stated(Outcome::Fails, ABELIAN)
    };
    Ok(CatalogEntry::group_entry(g, "cyclic", vec![n], expected))
}

/// Symmetries of the `m`-gon, order `2m`. Element `k + m b` is `r^k s^b`.
pub fn dihedral_group(m: usize) -> Result<FiniteGroup, GroupError> {
    if m < 3 {
        return Err(GroupError::Precondition(format!("dihedral group needs m >= 3, got {m}")));
    }
    let n = 2 * m;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, b) = (x % m, x / m);
        for y in 0..n {
            let (c, d) = (y % m, y / m);
            let k = if b == 0 { (a + c) % m } else { (a + m - c) % m };
            table.push((k + m * ((b + d) % 2)) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| {
            let (k, b) = (x % m, x / m);
            let r = match k {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "e".into(),
                (true, _) => "s".into(),
                (false, 0) => r,
                (false, _) => format!("{r} s"),
            }
        })
        .collect();
    FiniteGroup::from_table_unchecked(&format!("Dih{m}"), table, labels, Provenance::Presentation)
}

pub fn make_dihedral(m: usize) -> Result<CatalogEntry, CatalogError> {
    if !(3..=CLASS_BOUND / 2).contains(&m) {
        return Err(CatalogError::Range(format!("dihedral parameter {m} (needs m >= 3)")));
    }
    let g = dihedral_group(m)?;
    let expected = if m % 2 == 1 {
        Expected::stated(Outcome::Recognizes, ODD_DIHEDRAL)
    } else {
        Expected::stated(Outcome::Fails, EVEN_DIHEDRAL)
    };
    Ok(CatalogEntry::group_entry(g, "dihedral", vec![m], expected))
}

pub fn quaternion_group() -> FiniteGroup {
    // element 2u + s is (-1)^s times unit u in 1, i, j, k
    const UNIT: [[(u8, u8); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8usize {
        for y in 0..8usize {
            let (u, v) = (x / 2, y / 2);
            let (w, s) = UNIT[u][v];
            let sign = (x % 2 + y % 2 + s as usize) % 2;
            table.push((2 * w as usize + sign) as u32);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table("Q8", table, labels, Provenance::Presentation).expect("quaternion table")
}

pub fn make_quaternion8() -> CatalogEntry {
    CatalogEntry::group_entry(quaternion_group(), "quaternion", vec![8], Expected::stated(Outcome::Fails, QUATERNION))
}

pub fn make_sl(n: usize, q: usize) -> Result<CatalogEntry, CatalogError> {
    let q8 = u8::try_from(q).map_err(|_| CatalogError::Range(format!("field size {q}")))?;
    let g = matrix::special_linear(n, q8).map_err(range_or_size)?;
    let expected = if q >= 4 {
        Expected::stated(Outcome::Recognizes, SL_BIG_FIELD)
    } else if (n, q) == (3, 2) || (n, q) == (3, 3) {
        Expected::computed(Outcome::Recognizes, "simple group; small field not covered by the SL statement")
    } else if (n, q) == (2, 2) {
        Expected::computed(Outcome::Recognizes, "isomorphic to S3")
    } else if (n, q) == (2, 3) {
        Expected::computed(
            Outcome::Recognizes,
            "order-3 elements are separated by conjugates and every element is a product of three of them",
        )
    } else {
        Expected::computed(Outcome::Open, "small field not covered by the SL statement")
    };
    Ok(CatalogEntry::group_entry(g, "special linear", vec![n, q], expected))
}

pub fn make_gl(n: usize, q: usize) -> Result<CatalogEntry, CatalogError> {
    let q8 = u8::try_from(q).map_err(|_| CatalogError::Range(format!("field size {q}")))?;
    let g = matrix::general_linear(n, q8).map_err(range_or_size)?;
    let mut expected = Expected::stated(Outcome::Fails, GL);
    if q == 2 {
        expected.flag = Some(format!(
            "GL({n},2) = SL({n},2) has trivial determinant map and trivial center; the engine does not find an obstruction"
        ));
    }
    Ok(CatalogEntry::group_entry(g, "general linear", vec![n, q], expected))
}

fn range_or_size(e: GroupError) -> CatalogError {
    match e {
        GroupError::Precondition(m) => CatalogError::Range(m),
        other => CatalogError::Group(other),
    }
}

/// Rock-paper-scissors: `x * y` is the winner, `x * x = x`. Elements R, P, S.
pub fn rps_structure() -> FiniteStructure {
    // R=0, P=1, S=2; P beats R, S beats P, R beats S
    let win = |x: usize, y: usize| -> u32 {
        if x == y {
            x as u32
        } else if (x + 1) % 3 == y {
            y as u32
        } else {
            x as u32
        }
    };
    let table = (0..9).map(|i| win(i / 3, i % 3)).collect();
    FiniteStructure::new(Signature::magma(), vec!["R".into(), "P".into(), "S".into()], vec![], vec![table], vec![])
        .expect("rps table")
}

/// The loser map `L`: `L(t)` is the unique `s != t` with `s * t = t`.
pub fn rps_loser(t: u32) -> u32 {
    (t + 2) % 3
}

pub fn make_rps() -> CatalogEntry {
    CatalogEntry {
        name: "RPS".into(),
        family: "magma",
        params: vec![],
        built: Built::Structure(rps_structure()),
        expected: Expected::stated(Outcome::Recognizes, RPS),
    }
}

/// The chain `0 < 1 < ... < n-1` over `{Le}`.
pub fn chain_structure(n: usize) -> Result<FiniteStructure, CatalogError> {
    if n == 0 {
        return Err(CatalogError::Range("chain of length 0".into()));
    }
    let le = (0..n * n).map(|i| i / n <= i % n).collect();
    FiniteStructure::new(Signature::order(), (0..n).map(|i| i.to_string()).collect(), vec![le], vec![], vec![])
        .map_err(|e| CatalogError::Range(e.to_string()))
}

pub fn make_chain(n: usize) -> Result<CatalogEntry, CatalogError> {
    if !(1..=64).contains(&n) {
        return Err(CatalogError::Range(format!("chain length {n} (supported 1..=64)")));
    }
    Ok(CatalogEntry {
        name: format!("Chain{n}"),
        family: "chain",
        params: vec![n],
        built: Built::Structure(chain_structure(n)?),
        expected: Expected::computed(
            Outcome::Open,
            "finite chains only simulate the no-maximum hypothesis of the linear-order statement",
        ),
    })
}

pub fn make_product(a: &CatalogEntry, b: &CatalogEntry) -> Result<CatalogEntry, CatalogError> {
    let (Some(g), Some(h)) = (a.group(), b.group()) else {
        return Err(CatalogError::Range("direct products are only built for groups".into()));
    };
    let order = g.order() * h.order();
    if order > CLASS_BOUND {
        return Err(GroupError::TooLarge { op: "direct product", order, bound: CLASS_BOUND }.into());
    }
    let p = g.direct_product(h);
    let expected = if g.order() > 1 && h.order() > 1 {
        Expected::stated(Outcome::Fails, PRODUCT)
    } else {
        Expected::computed(Outcome::Open, "product with a trivial factor")
    };
    let mut params = a.params.clone();
    params.extend(&b.params);
    Ok(CatalogEntry::group_entry(p, "product", params, expected))
}

fn num(s: &str, name: &str) -> Result<usize, CatalogError> {
    s.parse().map_err(|_| CatalogError::Unknown(name.to_string()))
}

/// Resolves a name such as `S4`, `A5`, `C6`, `Dih5`, `Q8`, `SL2_5`, `GL2_3`,
/// `RPS`, `Chain4` or a product `C2xS3`.
pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some((a, b)) = split_product(name) {
        return make_product(&lookup(a)?, &lookup(b)?);
    }
    if name == "Q8" {
        return Ok(make_quaternion8());
    }
    if name == "RPS" {
        return Ok(make_rps());
    }
    if let Some(r) = name.strip_prefix("Chain") {
        return make_chain(num(r, name)?);
    }
    if let Some(r) = name.strip_prefix("Dih") {
        return make_dihedral(num(r, name)?);
    }
    for (prefix, gl) in [("SL", false), ("GL", true)] {
        if let Some(r) = name.strip_prefix(prefix) {
            let (n, q) = r.split_once('_').ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
            let (n, q) = (num(n, name)?, num(q, name)?);
            return if gl { make_gl(n, q) } else { make_sl(n, q) };
        }
    }
    if let Some(r) = name.strip_prefix('S') {
        return make_symmetric(num(r, name)?);
    }
    if let Some(r) = name.strip_prefix('A') {
        return make_alternating(num(r, name)?);
    }
    if let Some(r) = name.strip_prefix('C') {
        return make_cyclic(num(r, name)?);
    }
    Err(CatalogError::Unknown(name.to_string()))
}

/// Splits `AxB` at the first `x` that separates two catalog names.
fn split_product(name: &str) -> Option<(&str, &str)> {
    name.char_indices()
        .filter(|&(i, c)| c == 'x' && i > 0 && i + 1 < name.len())
        .map(|(i, _)| (&name[..i], &name[i + 1..]))
        .next()
}

/// The default catalog listing, in display order.
pub fn default_names() -> Vec<&'static str> {
    vec![
        "S2", "S3", "S4", "S5", "S6", "S7", "A4", "A5", "A6", "C2", "C3", "C4", "C6", "Dih3", "Dih4", "Dih5",
        "Dih6", "Dih7", "Dih8", "Q8", "SL2_3", "SL2_4", "SL2_5", "SL2_7", "SL3_2", "GL2_2", "GL2_3", "GL3_2",
        "C2xS3", "S3xS3", "RPS", "Chain4", "Chain5", "Chain6", "Chain7",
    ]
}
