//! Inputs shared by the benchmarks.

use jetlct_core::algebra::{parse_polynomial, FieldSpec, VariableContext};
use jetlct_core::jets::AffineIdeal;

pub fn ideal(field: FieldSpec, vars: &[&str], gens: &[&str]) -> AffineIdeal {
    let ring = VariableContext::new(field, vars.iter().copied()).expect("valid names");
    let gens = gens.iter().map(|g| parse_polynomial(g, &ring).expect("valid generator")).collect();
    AffineIdeal::new(&ring, gens).expect("nonzero ideal")
}

pub fn cusp() -> AffineIdeal {
    ideal(FieldSpec::rationals(), &["x", "y"], &["x^2 + y^3"])
}
