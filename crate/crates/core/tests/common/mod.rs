#![allow(dead_code)]

use jetlct_core::algebra::{FieldSpec, Monomial, Polynomial, Ring, VariableContext};
use proptest::prelude::*;

pub const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

pub fn ring(field: FieldSpec, n: usize) -> Ring {
    VariableContext::new(field, NAMES[..n].iter().copied()).unwrap()
}

pub fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::rationals()),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| FieldSpec::prime(p).unwrap()),
    ]
}

/// Up to `terms` terms with exponents at most `max_exp` and small integer
/// coefficients.
pub fn poly_parts(n: usize, terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 1..=terms)
}

pub fn build(ring: &Ring, parts: &[(Vec<u32>, i64)]) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(ring, parts.iter().map(|(e, c)| (Monomial::from_exponents(e.clone()), f.from_i64(*c)))).unwrap()
}
