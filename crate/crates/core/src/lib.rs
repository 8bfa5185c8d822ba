//! Directed-homotopy invariants of finite combinatorial directed spaces:
//! fundamental categories of pre-cubical sets, dihomotopy classes of
//! dipaths in planar grid scenes, directed homotopy of small categories and
//! Lawvere directed metric spaces.

pub mod catho;
pub mod dmetric;
pub mod dot;
pub mod error;
pub mod fundcat;
pub mod gridscene;
pub mod precubical;
mod text;

pub use error::{Error, Result};
pub use gridscene::GridScene;
pub use precubical::{CellRef, Model, PreCubicalSet};
