use serde::Serialize;

use super::{crit_conj_centralizer, CriteriaError};
use crate::groups::{FiniteGroup, GroupHom, SubgroupHandle, LATTICE_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// `G = N1 × N2` with both factors nontrivial.
    Decomposable,
    /// A nontrivial homomorphism `G → Z(H)`.
    CenterHom,
    /// Nilpotent: a nontrivial homomorphism into the own center.
    Nilpotent,
}

impl ObstructionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ObstructionKind::Decomposable => "decomposable",
            ObstructionKind::CenterHom => "center_hom",
            ObstructionKind::Nilpotent => "nilpotent",
        }
    }

    pub fn citation(&self) -> &'static str {
        match self {
            ObstructionKind::Decomposable => {
                "a class containing a group decomposable as a direct product of nontrivial groups does not recognize coordinates"
            }
            ObstructionKind::CenterHom => {
                "a class containing G and H with a nontrivial homomorphism G -> Z(H) does not recognize coordinates"
            }
            ObstructionKind::Nilpotent => {
                "nonabelian nilpotent groups have a nontrivial homomorphism into their center and do not recognize coordinates"
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObstructionWitness {
    Decomposition {
        first: Vec<String>,
        second: Vec<String>,
        #[serde(skip)]
        subgroups: (SubgroupHandle, SubgroupHandle),
    },
    Hom {
        source: String,
        target: String,
        image: Vec<String>,
        kernel_order: usize,
        #[serde(skip)]
        hom: GroupHom,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub groups: Vec<String>,
    pub detail: String,
    pub witness: ObstructionWitness,
}

impl Obstruction {
    /// Replays the witness: the hom is a homomorphism with nontrivial central
    /// image, or the pair multiplies out to `G` bijectively and commutes.
    pub fn reverify<'a>(&self, find: impl Fn(&str) -> Option<&'a FiniteGroup>) -> bool {
        match &self.witness {
            ObstructionWitness::Hom { hom, .. } => {
                let (Some(s), Some(t)) = (find(&hom.source), find(&hom.target)) else {
                    return false;
                };
                !hom.trivial && hom.is_homomorphism(s, t) && hom.image_central(t)
            }
            ObstructionWitness::Decomposition { subgroups: (a, b), .. } => {
                let Some(g) = find(&self.groups[0]) else {
                    return false;
                };
                if a.is_trivial() || b.is_trivial() || a.order() * b.order() != g.order() {
                    return false;
                }
                let mut hit = vec![false; g.order()];
                for &x in &a.elements {
                    for &y in &b.elements {
                        if !g.commutes(x, y) {
                            return false;
                        }
                        let p = g.mul(x, y) as usize;
                        if hit[p] {
                            return false;
                        }
                        hit[p] = true;
                    }
                }
                g.is_subgroup(&a.elements) && g.is_subgroup(&b.elements)
            }
        }
    }
}

fn hom_witness(g: &FiniteGroup, h: &FiniteGroup, hom: GroupHom) -> ObstructionWitness {
    let e = h.identity();
    ObstructionWitness::Hom {
        source: g.name().into(),
        target: h.name().into(),
        image: hom.image.iter().map(|&x| h.label(x).to_string()).collect(),
        kernel_order: hom.map.iter().filter(|&&y| y == e).count(),
        hom,
    }
}

/// A nontrivial decomposition `G = N1 × N2`, if any.
///
/// Past the lattice bound, a group all of whose nontrivial classes have
/// trivial centralizer is reported indecomposable (`N2` would centralize the
/// classes inside `N1`); anything else is an error.
pub fn obstruction_decomposable(g: &FiniteGroup) -> Result<Option<Obstruction>, CriteriaError> {
    if g.order() > LATTICE_BOUND {
        if crit_conj_centralizer(g)?.passed() {
            return Ok(None);
        }
        g.normal_subgroups()?;
    }
    let Some((a, b)) = g.is_decomposable()? else {
        return Ok(None);
    };
    let lab = |s: &SubgroupHandle| s.elements.iter().map(|&x| g.label(x).to_string()).collect::<Vec<_>>();
    Ok(Some(Obstruction {
        kind: ObstructionKind::Decomposable,
        groups: vec![g.name().into()],
        detail: format!("{} = N1 x N2 with |N1| = {}, |N2| = {}", g.name(), a.order(), b.order()),
        witness: ObstructionWitness::Decomposition { first: lab(&a), second: lab(&b), subgroups: (a, b) },
    }))
}

/// A nontrivial homomorphism `G → Z(H)`, if any.
pub fn obstruction_center_hom(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Obstruction>, CriteriaError> {
    let Some(hom) = g.hom_to_center_exists(h)? else {
        return Ok(None);
    };
    Ok(Some(Obstruction {
        kind: ObstructionKind::CenterHom,
        groups: vec![g.name().into(), h.name().into()],
        detail: format!("nontrivial homomorphism {} -> Z({}) with image of order {}", g.name(), h.name(), hom.image.len()),
        witness: hom_witness(g, h, hom),
    }))
}

/// For nilpotent `G`, a nontrivial homomorphism into `Z(G)`: `x ↦ [x, c]`
/// when `G` is nonabelian, the identity when `G` is abelian and nontrivial.
pub fn obstruction_nilpotent(g: &FiniteGroup) -> Result<Option<Obstruction>, CriteriaError> {
    if g.order() == 1 || !g.is_nilpotent()? {
        return Ok(None);
    }
    let hom = if g.is_abelian() {
        GroupHom::new(g, g, g.elements().collect())
    } else {
        g.nilpotent_center_hom()?
    };
    let class = g.lower_central_series()?.1.unwrap_or(0);
    Ok(Some(Obstruction {
        kind: ObstructionKind::Nilpotent,
        groups: vec![g.name().into()],
        detail: format!(
            "{} is nilpotent of class {class}; homomorphism into Z({}) with image of order {}",
            g.name(),
            g.name(),
            hom.image.len()
        ),
        witness: hom_witness(g, g, hom),
    }))
}
