//! Thompson's group F at desk scale: tree-pair arithmetic, finite subgraphs of
//! right Cayley graphs, Brown–Belk marked-forest sets, exact isoperimetric
//! counts, and evacuation schemes on finite automata.

pub mod cayley;
pub mod counting;
pub mod error;
pub mod evac;
pub mod exec;
pub mod fgroup;
pub mod forests;
pub mod ratio;
pub mod tree;

pub use error::{Error, Result};
pub use exec::Exec;
