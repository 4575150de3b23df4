//! Finite quotients: permutation groups, homomorphisms onto them, finite-index
//! subgroups, and the searches that produce checkable finite witnesses.

mod group;
mod hom;
mod lift;
mod perm;
mod race;
mod refine;
mod search;
mod subgroup;
mod witness;

pub use group::{closure, orbit, FiniteGroup};
pub use hom::FiniteHom;
pub use lift::{lift_via_hnn, LiftReason, LiftRefusal};
pub use perm::Perm;
pub use race::{race, Decision};
pub use refine::{check_intersection_preserved, check_refinement, invariant_refinement};
pub use search::HomSearch;
pub use subgroup::{kernel_schreier_gens, FinIndexSubgroup};
pub use witness::{cc_witness, separate_conjugacy, Claim, QuotientWitness};
