//! Jet schemes of affine subschemes, their codimensions via Gröbner bases,
//! and the log canonical threshold bounds read off from them.

pub mod algebra;
pub mod groebner;
pub mod jets;
pub mod lct;

pub use algebra::{parse_polynomial, FieldElement, FieldSpec, Polynomial, Ring, VariableContext};
pub use groebner::{buchberger, krull_dimension, GroebnerBasis, Limits, MonomialOrder};
pub use jets::{jet_fiber_origin, jet_ideal, AffineIdeal, Arc, OrderResult};
pub use lct::{contact_codim, lct_estimate, Codim, Fraction, LctOptions, LctReport, LctRow, Mode, Threshold};
