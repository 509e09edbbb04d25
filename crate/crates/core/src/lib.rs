//! Rational points on projective varieties over small finite fields:
//! monomial footprints, closed-form bounds for `e_r(d, m)`, exhaustive
//! searches that check them, and projective Reed-Muller codes.

pub mod codes;
pub mod echelon;
pub mod error;
pub mod field;
pub mod formulas;
pub mod hypercube;
pub mod monomial;
pub mod points;
pub mod polynomial;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elem, FieldOp, FieldSpec, FIELD_CAP};
pub use hypercube::{hypercube_lex_set, specialize, DegreeFilter, HypercubeSet, LexMode};
pub use monomial::{lex_set_projective, reduced_monomials, stable_degree, Monomial, MonomialSet};
pub use polynomial::{HomogeneousPolynomial, Polynomial};
