//! Exact computations in right-angled Artin groups.
//!
//! A group is given by a finite simplicial graph: one generator per vertex,
//! adjacent generators commute. Elements are words over signed vertices and
//! are always stored in a canonical reduced form.

pub mod bb;
pub mod budget;
pub mod conjugacy;
pub mod error;
pub mod graph;
pub mod hnn;
pub mod quotient;
pub mod special;
pub mod vset;
pub mod word;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::Graph;
pub use vset::VertexSet;
pub use word::{CyclicForm, Letter, ReducedWord, Word};
