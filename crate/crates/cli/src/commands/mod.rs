//! One function per verb. `Ok(true)` exits 0, `Ok(false)` exits 1.

mod catalog;
mod criteria;
mod formula;
mod graph;
mod group;
mod reduced;
mod verify;

pub use catalog::catalog;
pub use criteria::criteria;
pub use formula::formula;
pub use graph::graph;
pub use group::group;
pub use reduced::reduced;
pub use verify::verify;

pub type CmdResult = Result<bool, crate::error::CliError>;
