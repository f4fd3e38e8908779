//! Components of the polynomial qKZ solution: inhomogeneous values by
//! iterated residues, homogeneous values by constant terms.

mod hom;
mod index;
mod inhom;
pub mod json;
pub mod spin;

pub use hom::{
    pair_kernel, psi_hom, psi_hom_tuple, psi_table, psibar_hom, psibar_hom_tuple,
    psibar_hom_tuples, recurrence_rhs, rotated_recurrence_rhs, ComponentTable,
};
pub use index::{combinations, ComponentIndex, IndexKind};
pub use inhom::{check_cyclicity, check_exchange, psi_inhom, psi_vector_inhom, psibar_inhom};
pub use spin::{SectorBasis, SpinVector};
