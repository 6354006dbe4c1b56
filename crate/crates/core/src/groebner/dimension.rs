use crate::jets::AffineIdeal;

use super::{GroebnerBasis, GroebnerError, Result};

const MAX_VARS: usize = 128;
const MAX_ORACLE_VARS: usize = 24;

/// Krull dimension of `R/I` for a polynomial ring `R` in `ambient`
/// variables. The unit ideal has dimension `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionResult {
    pub ambient: usize,
    pub dim: i64,
    /// A maximal set of variables independent modulo the leading-term ideal.
    pub witness: Vec<usize>,
}

impl DimensionResult {
    /// `None` for the unit ideal, whose zero set is empty.
    pub fn codim(&self) -> Option<usize> {
        (self.dim >= 0).then(|| self.ambient - self.dim as usize)
    }
}

fn support_mask<'a>(vars: impl Iterator<Item = usize> + 'a) -> u128 {
    vars.fold(0, |acc, v| acc | 1u128 << v)
}

/// Keeps only the inclusion-minimal supports.
fn minimal_supports(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u128> = Vec::new();
    for s in sets {
        if !out.iter().any(|&t| t & !s == 0) {
            out.push(s);
        }
    }
    out
}

/// Smallest set of variables meeting every support, by branch and bound.
fn min_hitting_set(sets: &[u128]) -> u128 {
    fn go(sets: &[u128], chosen: u128, best: &mut u128, best_size: &mut u32) {
        let size = chosen.count_ones();
        if size >= *best_size {
            return;
        }
        let unhit = sets.iter().filter(|&&s| s & chosen == 0);
        let Some(&pick) = unhit.min_by_key(|s| s.count_ones()) else {
            *best = chosen;
            *best_size = size;
            return;
        };
        if size + 1 >= *best_size {
            return;
        }
        let mut rest = pick;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            go(sets, chosen | 1u128 << v, best, best_size);
        }
    }
    let mut best = 0u128;
    let mut best_size = u32::MAX;
    go(sets, 0, &mut best, &mut best_size);
    best
}

fn unpack(mask: u128, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Dimension of the quotient by the ideal with basis `gb`, computed as the
/// size of a largest set of variables containing no leading-monomial support.
pub fn krull_dimension(gb: &GroebnerBasis) -> Result<DimensionResult> {
    let n = gb.ring().nvars();
    if n > MAX_VARS {
        return Err(GroebnerError::TooManyVariables { nvars: n, max: MAX_VARS });
    }
    if gb.is_unit() {
        return Ok(DimensionResult { ambient: n, dim: -1, witness: Vec::new() });
    }
    let sets = minimal_supports(gb.leading_monomials().map(|m| support_mask(m.support())).collect());
    let hit = min_hitting_set(&sets);
    let all = if n == MAX_VARS { u128::MAX } else { (1u128 << n) - 1 };
    let witness = unpack(all & !hit, n);
    Ok(DimensionResult { ambient: n, dim: witness.len() as i64, witness })
}

/// Dimension of a monomial ideal by exhaustive search over all variable
/// subsets. Every generator must be a single term.
pub fn monomial_dimension(ideal: &AffineIdeal) -> Result<DimensionResult> {
    let n = ideal.nvars();
    if n > MAX_ORACLE_VARS {
        return Err(GroebnerError::TooManyVariables { nvars: n, max: MAX_ORACLE_VARS });
    }
    let mut sets = Vec::new();
    for (index, g) in ideal.generators().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if g.num_terms() != 1 {
            return Err(GroebnerError::NotMonomial { index });
        }
        let (m, _) = g.terms().next().expect("one term");
        sets.push(support_mask(m.support()));
    }
    if sets.contains(&0) {
        return Ok(DimensionResult { ambient: n, dim: -1, witness: Vec::new() });
    }
    let mut best = 0u128;
    for s in 0u128..1 << n {
        if s.count_ones() > best.count_ones() && sets.iter().all(|&g| g & !s != 0) {
            best = s;
        }
    }
    let witness = unpack(best, n);
    Ok(DimensionResult { ambient: n, dim: witness.len() as i64, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, FieldSpec, VariableContext};
    use crate::groebner::{buchberger, Limits, MonomialOrder};

    fn ideal(vars: &[&str], gens: &[&str]) -> AffineIdeal {
        let ring = VariableContext::new(FieldSpec::rationals(), vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        AffineIdeal::new(&ring, gens).unwrap()
    }

    fn dim(i: &AffineIdeal) -> i64 {
        let gb = buchberger(i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        krull_dimension(&gb).unwrap().dim
    }

    #[test]
    fn small_examples() {
        assert_eq!(dim(&ideal(&["x", "y"], &["x*y"])), 1);
        assert_eq!(dim(&ideal(&["x", "y"], &["x", "y"])), 0);
        assert_eq!(dim(&ideal(&["x", "y", "z"], &["x*z - y^2", "x^3 - y*z"])), 1);
        assert_eq!(dim(&ideal(&["x", "y"], &["x*y - 1", "x"])), -1);
        let whole = AffineIdeal::whole_space(&VariableContext::new(FieldSpec::rationals(), ["x", "y", "z"]).unwrap());
        assert_eq!(dim(&whole), 3);
    }

    #[test]
    fn codim_of_unit_is_none() {
        let r = DimensionResult { ambient: 2, dim: -1, witness: vec![] };
        assert_eq!(r.codim(), None);
        let r = DimensionResult { ambient: 4, dim: 1, witness: vec![0] };
        assert_eq!(r.codim(), Some(3));
    }

    #[test]
    fn oracle_matches_on_monomial_ideals() {
        let i = ideal(&["a", "b", "c", "d"], &["a*b", "c*d", "a*c"]);
        assert_eq!(monomial_dimension(&i).unwrap().dim, 2);
        assert_eq!(dim(&i), 2);
        let i = ideal(&["a", "b"], &["a + b"]);
        assert!(matches!(monomial_dimension(&i), Err(GroebnerError::NotMonomial { index: 0 })));
    }

    #[test]
    fn witness_is_independent() {
        let i = ideal(&["x", "y", "z", "w"], &["x*y", "z^2*w", "x*w"]);
        let gb = buchberger(&i, &MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        let r = krull_dimension(&gb).unwrap();
        let w = support_mask(r.witness.iter().copied());
        for m in gb.leading_monomials() {
            assert_ne!(support_mask(m.support()) & !w, 0);
        }
        assert_eq!(r.dim, 2);
    }
}
