use std::collections::BTreeMap;

use super::field::FieldElement;
use super::poly::{same_ring, Polynomial, Ring};
use super::{AlgebraError, Result};

/// Element of `R[t]/(t^{m+1})`: coefficient of `t^p` at index `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    /// Coefficients `c_0..c_m`; all must share one ring.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(AlgebraError::PrecisionMismatch(0, 1));
        };
        if coeffs.iter().any(|c| !same_ring(c.ring(), first.ring())) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(ring: &Ring, precision: usize) -> Self {
        Self { coeffs: vec![Polynomial::zero(ring); precision + 1] }
    }

    pub fn constant(ring: &Ring, precision: usize, c: FieldElement) -> Result<Self> {
        let mut s = Self::zero(ring, precision);
        s.coeffs[0] = Polynomial::constant(ring, c)?;
        Ok(s)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ring(&self) -> &Ring {
        self.coeffs[0].ring()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn coefficient(&self, p: usize) -> &Polynomial {
        &self.coeffs[p]
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops all terms of t-degree above `precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        Self { coeffs: self.coeffs[..=precision.min(self.precision())].to_vec() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.precision() != other.precision() {
            return Err(AlgebraError::PrecisionMismatch(self.precision(), other.precision()));
        }
        if !same_ring(self.ring(), other.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.precision();
        let mut out = Self::zero(self.ring(), m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(out)
    }
}

/// Computes `f(u_1, ..., u_n)` in `R[t]/(t^{m+1})`.
///
/// `f` is evaluated by nested Horner schemes (outermost in the first
/// variable), so only truncated products are ever formed.
pub fn substitute_series(f: &Polynomial, series: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let n = f.ring().nvars();
    if series.len() != n {
        return Err(AlgebraError::ArityMismatch { expected: n, got: series.len() });
    }
    let Some(first) = series.first() else {
        return Err(AlgebraError::ArityMismatch { expected: 1, got: 0 });
    };
    for s in &series[1..] {
        first.check(s)?;
    }
    if first.ring().field() != f.ring().field() {
        return Err(AlgebraError::FieldMismatch(
            f.ring().field().to_string(),
            first.ring().field().to_string(),
        ));
    }
    let terms: Vec<(&[u32], &FieldElement)> = f.terms().map(|(m, c)| (m.exponents(), c)).collect();
    horner(&terms, 0, series, first.ring(), first.precision())
}

fn horner(
    terms: &[(&[u32], &FieldElement)],
    var: usize,
    series: &[TruncatedSeries],
    ring: &Ring,
    m: usize,
) -> Result<TruncatedSeries> {
    if var == series.len() {
        let mut acc = ring.field().zero();
        for (_, c) in terms {
            acc = &acc + *c;
        }
        return TruncatedSeries::constant(ring, m, acc);
    }
    let mut by_exp: BTreeMap<u32, Vec<(&[u32], &FieldElement)>> = BTreeMap::new();
    for &t in terms {
        by_exp.entry(t.0[var]).or_default().push(t);
    }
    let Some(&top) = by_exp.keys().next_back() else {
        return Ok(TruncatedSeries::zero(ring, m));
    };
    let mut acc = TruncatedSeries::zero(ring, m);
    for e in (0..=top).rev() {
        if e < top {
            acc = acc.mul(&series[var])?;
        }
        if let Some(group) = by_exp.get(&e) {
            acc = acc.add(&horner(group, var + 1, series, ring, m)?)?;
        }
    }
    Ok(acc)
}
