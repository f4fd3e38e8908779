//! Polynomial machinery: integer polynomials in τ, degree-capped multivariate
//! polynomials for constant-term extraction, and the linear-factor engine used
//! to take iterated residues.

mod capped;
mod linear;
mod tau_poly;

pub use capped::{CappedPoly, CtIntegrand};
pub use linear::{AffineForm, LinearFactorExpr};
pub use tau_poly::TauPoly;
