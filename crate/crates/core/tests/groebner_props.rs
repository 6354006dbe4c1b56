mod common;

use common::{build, field, poly_parts, ring};
use jetlct_core::algebra::{Monomial, Polynomial};
use jetlct_core::groebner::{buchberger, krull_dimension, monomial_dimension, GroebnerError, Limits, MonomialOrder};
use jetlct_core::jets::AffineIdeal;
use proptest::prelude::*;

fn monomial_ideal() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=6)))
}

type Parts = Vec<Vec<(Vec<u32>, i64)>>;

fn small_ideal() -> impl Strategy<Value = (jetlct_core::FieldSpec, usize, Parts)> {
    (field(), 2usize..=3).prop_flat_map(|(f, n)| (Just(f), Just(n), prop::collection::vec(poly_parts(n, 3, 3), 1..=2)))
}

fn make(f: jetlct_core::FieldSpec, n: usize, gens: &[Vec<(Vec<u32>, i64)>]) -> Option<AffineIdeal> {
    let r = ring(f, n);
    AffineIdeal::new(&r, gens.iter().map(|g| build(&r, g)).collect()).ok()
}

fn limits() -> Limits {
    Limits { max_reductions: 20_000, time_budget: std::time::Duration::from_secs(10), ..Limits::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn krull_matches_monomial_oracle((n, monos) in monomial_ideal(), f in field()) {
        let r = ring(f, n);
        let gens: Vec<Polynomial> = monos
            .iter()
            .map(|e| Polynomial::from_terms(&r, [(Monomial::from_exponents(e.clone()), r.field().one())]).unwrap())
            .collect();
        let i = AffineIdeal::new(&r, gens).unwrap();
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        prop_assert_eq!(krull_dimension(&gb).unwrap().dim, monomial_dimension(&i).unwrap().dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_is_order_independent((f, n, gens) in small_ideal()) {
        let Some(i) = make(f, n, &gens) else { return Ok(()) };
        let orders = [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::WeightedDegRevLex((1..=n as u32).collect())];
        let mut dims = Vec::new();
        for o in &orders {
            match buchberger(&i, o, &limits()) {
                Ok(gb) => dims.push(krull_dimension(&gb).unwrap().dim),
                Err(GroebnerError::ResourceExhausted { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        prop_assert!(dims.windows(2).all(|w| w[0] == w[1]), "{dims:?}");
    }

    #[test]
    fn normal_forms_behave((f, n, gens) in small_ideal(), probe in poly_parts(3, 4, 3)) {
        let Some(i) = make(f, n, &gens) else { return Ok(()) };
        let Ok(gb) = buchberger(&i, &MonomialOrder::DegRevLex, &limits()) else { return Ok(()) };
        for g in i.generators() {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
        let probe: Vec<(Vec<u32>, i64)> = probe.into_iter().map(|(mut e, c)| { e.truncate(n); (e, c) }).collect();
        let p = build(i.ring(), &probe);
        let nf = gb.normal_form(&p).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&p.sub(&nf).unwrap()).unwrap());
    }

    #[test]
    fn bases_are_deterministic((f, n, gens) in small_ideal()) {
        let Some(i) = make(f, n, &gens) else { return Ok(()) };
        let a = buchberger(&i, &MonomialOrder::DegRevLex, &limits());
        let b = buchberger(&i, &MonomialOrder::DegRevLex, &limits());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.elements(), b.elements());
        }
    }
}
