//! Exact polynomial solutions of the qKZ equation for the six-vertex R-matrix,
//! the XXZ chain ground state at Δ = −1/2, the Temperley–Lieb loop model, and
//! the alternating-sign-matrix counts that tie them together.
//!
//! All arithmetic is exact: rationals, the cyclotomic field Q(ω), and integer
//! polynomials in the loop weight τ.

pub mod asm;
pub mod error;
pub mod linalg;
pub mod loopmodel;
pub mod polyring;
pub mod qkz;
pub mod sampling;
pub mod scalar;
pub mod sixvertex;

pub use error::{Error, Result};
pub use loopmodel::{LinkPattern, LoopVector};
pub use polyring::{AffineForm, CappedPoly, CtIntegrand, LinearFactorExpr, TauPoly};
pub use qkz::{ComponentIndex, ComponentTable, SpinVector};
pub use scalar::{cyc_invert, q_root_of_unity, Cyc3, ExactScalar, Rat};
