use std::cmp::Ordering;
use std::fmt;

use crate::algebra::monomial_revlex;
use crate::algebra::Monomial;

use super::GroebnerError;

/// Term order used by the Gröbner engine. Every variant is a well-order
/// compatible with multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Weighted degree first, reverse lexicographic tie break. Weights must be
    /// positive, one per variable.
    WeightedDegRevLex(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.cmp(b),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::WeightedDegRevLex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| monomial_revlex(a.exponents(), b.exponents())),
        }
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<(), GroebnerError> {
        if let MonomialOrder::WeightedDegRevLex(w) = self {
            if w.len() != nvars {
                return Err(GroebnerError::InvalidOrder(format!(
                    "{} weights for {nvars} variables",
                    w.len()
                )));
            }
            if w.contains(&0) {
                return Err(GroebnerError::InvalidOrder("weights must be positive".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::WeightedDegRevLex(w) => write!(f, "wdegrevlex{w:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn orders_disagree_where_expected() {
        let a = m(&[1, 0, 0]);
        let b = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
        let w = MonomialOrder::WeightedDegRevLex(vec![3, 1, 1]);
        assert_eq!(w.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn one_is_minimal_and_multiplication_is_compatible() {
        let orders = [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::WeightedDegRevLex(vec![1, 2, 3])];
        let monos = [m(&[0, 0, 1]), m(&[2, 0, 1]), m(&[0, 3, 0]), m(&[1, 1, 1])];
        for o in &orders {
            for a in &monos {
                assert_eq!(o.cmp(&m(&[0, 0, 0]), a), Ordering::Less);
                for b in &monos {
                    let c = m(&[1, 2, 0]);
                    assert_eq!(o.cmp(a, b), o.cmp(&a.mul(&c), &b.mul(&c)));
                }
            }
        }
    }

    #[test]
    fn weight_validation() {
        assert!(MonomialOrder::WeightedDegRevLex(vec![1, 0]).validate(2).is_err());
        assert!(MonomialOrder::WeightedDegRevLex(vec![1]).validate(2).is_err());
        assert!(MonomialOrder::WeightedDegRevLex(vec![1, 2]).validate(2).is_ok());
    }
}
