//! Generalized cyclotomic binary sequences of order two with respect to
//! `n = p_1^{e_1} ⋯ p_t^{e_t}`, their linear complexity, and executable
//! checks of the structural identities behind the complexity bounds.

pub mod cli;
pub mod cyclotomy;
pub mod error;
pub mod gf2poly;
pub mod lincomp;
pub mod numtheory;
pub mod sequence;
pub mod theorems;

pub use cyclotomy::{ClassPair, ClassVector, VectorAssignment};
pub use error::{Error, Result};
pub use gf2poly::{BinaryField, Poly2};
pub use lincomp::{LinComplexity, Method};
pub use numtheory::{validate_modulus, Modulus};
pub use sequence::DhSequence;
