//! Jet dimensions over the smooth locus.
//!
//! If `Y` is a complete intersection whose singular points all sit at the
//! origin, jets over `Y \ {0}` form an affine bundle of rank `dim(Y) * m`, so
//! `dim Y_m` is the larger of `dim(Y) * (m + 1)` and the dimension of the
//! fiber over the origin. That fiber is graded by t-degree and its basis is
//! far cheaper than one for the whole jet ideal.

use crate::algebra::{Polynomial, VariableContext};
use crate::groebner::{buchberger, krull_dimension, GroebnerError, Limits, MonomialOrder};
use crate::jets::AffineIdeal;

const MAX_GENERATORS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SmoothLocus {
    /// Krull dimension of the base ideal; `-1` when `Y` is empty.
    pub dim: i64,
    pub contains_origin: bool,
    /// `Y` has a point other than the origin.
    pub punctured_nonempty: bool,
}

impl SmoothLocus {
    /// Whether [`Self::jet_dimension`] needs the origin fiber.
    pub fn needs_fiber(&self) -> bool {
        self.dim >= 0 && self.contains_origin
    }

    /// `dim Y_m`, given the dimension of the origin fiber when it is needed.
    pub fn jet_dimension(&self, m: usize, fiber_dim: Option<i64>) -> i64 {
        if self.dim < 0 {
            return -1;
        }
        let smooth = if self.punctured_nonempty { self.dim * (m as i64 + 1) } else { -1 };
        smooth.max(fiber_dim.unwrap_or(-1))
    }
}

/// Determinant by cofactor expansion along the first row.
fn determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    let k = rows.len();
    if k == 1 {
        return rows[0][0].clone();
    }
    let ring = rows[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for c in 0..k {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = rows[0][c].mul(&determinant(&minor)).expect("same ring");
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.expect("same ring");
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `x_i` lies in the radical of `gens`: `1 in (gens, 1 - z*x_i)`.
fn in_radical(gens: &[Polynomial], i: usize, limits: &Limits) -> Result<bool, GroebnerError> {
    let ring = gens[0].ring();
    let mut z = String::from("_z");
    let extended = loop {
        let mut names = ring.names().to_vec();
        names.push(z.clone());
        match VariableContext::new(ring.field().clone(), names) {
            Ok(r) => break r,
            Err(_) => z.push('_'),
        }
    };
    let n = ring.nvars();
    let mut lifted: Vec<Polynomial> = gens.iter().map(|g| g.embed(&extended).expect("prefix ring")).collect();
    let zx = Polynomial::var(&extended, n).mul(&Polynomial::var(&extended, i)).expect("same ring");
    lifted.push(Polynomial::one(&extended).sub(&zx).expect("same ring"));
    let ideal = AffineIdeal::from_parts(&extended, lifted);
    Ok(buchberger(&ideal, &MonomialOrder::DegRevLex, limits)?.is_unit())
}

fn all_in_radical(gens: &[Polynomial], limits: &Limits) -> Result<bool, GroebnerError> {
    let n = gens[0].ring().nvars();
    for i in 0..n {
        if !in_radical(gens, i, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks whether `base` is a complete intersection smooth away from the
/// origin. `None` means the shortcut does not apply.
pub(crate) fn smooth_locus(base: &AffineIdeal, limits: &Limits) -> Result<Option<SmoothLocus>, GroebnerError> {
    let gens: Vec<Polynomial> = base.nonzero_generators().cloned().collect();
    let n = base.nvars();
    let r = gens.len();
    if r == 0 || r > MAX_GENERATORS || n == 0 {
        return Ok(None);
    }
    let gb = buchberger(base, &MonomialOrder::DegRevLex, limits)?;
    let dim = krull_dimension(&gb)?;
    if gb.is_unit() {
        return Ok(Some(SmoothLocus { dim: -1, contains_origin: false, punctured_nonempty: false }));
    }
    if r > n || dim.dim != (n - r) as i64 {
        return Ok(None);
    }
    let jacobian: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let mut singular = gens.clone();
    for cols in subsets(n, r) {
        let sub: Vec<Vec<Polynomial>> = jacobian.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = determinant(&sub);
        if !d.is_zero() {
            singular.push(d);
        }
    }
    if !all_in_radical(&singular, limits)? {
        return Ok(None);
    }
    let contains_origin = base.at_origin_eligible();
    let punctured_nonempty = dim.dim >= 1 || !contains_origin || !all_in_radical(&gens, limits)?;
    Ok(Some(SmoothLocus { dim: dim.dim, contains_origin, punctured_nonempty }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, FieldSpec};

    fn ideal(field: FieldSpec, vars: &[&str], gens: &[&str]) -> AffineIdeal {
        let ring = VariableContext::new(field, vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        AffineIdeal::new(&ring, gens).unwrap()
    }

    fn locus(field: FieldSpec, vars: &[&str], gens: &[&str]) -> Option<SmoothLocus> {
        smooth_locus(&ideal(field, vars, gens), &Limits::default()).unwrap()
    }

    #[test]
    fn isolated_singularities_qualify() {
        let q = FieldSpec::rationals;
        let s = locus(q(), &["x", "y"], &["x^2 + y^3"]).unwrap();
        assert_eq!(s, SmoothLocus { dim: 1, contains_origin: true, punctured_nonempty: true });
        assert!(locus(q(), &["x", "y"], &["y^2 - x^2 - x^3"]).is_some());
        assert!(locus(q(), &["x", "y", "z"], &["x*y + z^2"]).is_some());
        let fat = locus(q(), &["x"], &["x^2"]).unwrap();
        assert!(!fat.punctured_nonempty);
        let smooth = locus(q(), &["x", "y"], &["x - 1"]).unwrap();
        assert!(!smooth.contains_origin && smooth.punctured_nonempty);
    }

    #[test]
    fn non_isolated_or_non_ci_do_not() {
        let q = FieldSpec::rationals;
        assert!(locus(q(), &["x", "y", "z"], &["x*y*z"]).is_none());
        assert!(locus(q(), &["x", "y"], &["x^2*y^2"]).is_none());
        assert!(locus(q(), &["x", "y", "z"], &["x*y", "x*z"]).is_none());
        assert!(locus(FieldSpec::prime(2).unwrap(), &["x", "y"], &["x^2 + y^2"]).is_none());
        assert!(locus(FieldSpec::rational_functions(2, "s").unwrap(), &["x"], &["x^2 - s"]).is_none());
    }

    #[test]
    fn determinants() {
        let r = VariableContext::new(FieldSpec::rationals(), ["a", "b", "c", "d"]).unwrap();
        let v = |i| Polynomial::var(&r, i);
        let d = determinant(&[vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(d.to_string(), "-b*c + a*d");
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
