//! Finite model theory toolkit: structures and h-formulas, reduced products
//! over finite index sets, finite groups, recognizing-coordinates criteria,
//! graph-product words and a registry of runnable verifications.

pub mod catalog;
pub mod criteria;
pub mod formulas;
pub mod graphprod;
pub mod groups;
pub mod logic;
pub mod reduced;
pub mod verify;

pub use groups::{FiniteGroup, GroupHom, SubgroupHandle};
pub use logic::{Assignment, FiniteStructure, Formula, Signature};

/// Caps rayon's global pool at `COORDLENS_THREADS` when set. Returns the cap.
pub fn init_threads_from_env() -> Option<usize> {
    let n = std::env::var("COORDLENS_THREADS").ok()?.parse::<usize>().ok()?.max(1);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Some(n)
}
