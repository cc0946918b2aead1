//! Finite model theory toolkit: structural invariants of finite relational
//! structures, synthesis of identifying first-order formulas, and an exact
//! Ehrenfeucht–Fraïssé game solver.

pub mod cli;
pub mod equivalences;
pub mod error;
pub mod games;
pub mod invariants;
mod limits;
pub mod logic;
pub mod structures;
pub mod synthesis;
pub mod verification;

pub use error::{Error, Result};
pub use limits::Limits;
