use std::cmp::Ordering;
use std::fmt;

use super::field::{inv_mod, mul_mod};
use super::{AlgebraError, Result};

/// Dense univariate polynomial over 𝔽_p, coefficients stored lowest degree
/// first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl UniPoly {
    pub fn zero(p: u64) -> Self {
        Self { coeffs: Vec::new(), p }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::from_coeffs(vec![c % p], p)
    }

    /// The parameter itself, `s`.
    pub fn param(p: u64) -> Self {
        Self::from_coeffs(vec![0, 1], p)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs, p }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Self::from_coeffs(out, p)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self::from_coeffs(self.coeffs.iter().map(|&c| (p - c) % p).collect(), p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_coeffs(self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect(), p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_coeffs(out, p)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let p = self.p;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv_lead = inv_mod(divisor.leading(), p).ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv_lead, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod(c, b, p)) % p;
            }
        }
        Ok((Self::from_coeffs(quot, p), Self::from_coeffs(rem, p)))
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub(crate) fn fmt_in(&self, param: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{param}")?,
                (1, c) => write!(f, "{c}*{param}")?,
                (k, 1) => write!(f, "{param}^{k}")?,
                (k, c) => write!(f, "{c}*{param}^{k}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Element of 𝔽_p(s): `num / den` with coprime parts and monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let p = num.modulus();
        if num.is_zero() {
            return Ok(Self { num, den: UniPoly::constant(1, p) });
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        let lead = den.leading();
        if lead != 1 {
            let inv = inv_mod(lead, p).ok_or(AlgebraError::DivisionByZero)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: UniPoly) -> Self {
        let p = num.modulus();
        Self { num, den: UniPoly::constant(1, p) }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if this is an element of 𝔽_p.
    pub fn as_constant(&self) -> Option<u64> {
        match (self.num.degree(), self.den.is_one()) {
            (None, _) => Some(0),
            (Some(0), true) => Some(self.num.leading()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub(crate) fn fmt_in(&self, param: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        write!(f, "(")?;
        self.num.fmt_in(param, f)?;
        write!(f, ")")?;
        if !self.den.is_one() {
            write!(f, "/(")?;
            self.den.fmt_in(param, f)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let p = 3;
        // (s+1)(s+2) = s^2 + 2  over 𝔽_3
        let a = UniPoly::from_coeffs(vec![1, 1], p).mul(&UniPoly::from_coeffs(vec![2, 1], p));
        assert_eq!(a.coeffs(), &[2, 0, 1]);
        let b = UniPoly::from_coeffs(vec![1, 1], p).mul(&UniPoly::param(p));
        assert_eq!(a.gcd(&b), UniPoly::from_coeffs(vec![1, 1], p));
        let (q, r) = a.div_rem(&UniPoly::from_coeffs(vec![1, 1], p)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_coeffs(vec![2, 1], p));
    }

    #[test]
    fn ratfunc_is_reduced_with_monic_denominator() {
        let p = 5;
        // (2s+2) / (3s^2+3s) = (2/3)/s = 4/s in 𝔽_5
        let num = UniPoly::from_coeffs(vec![2, 2], p);
        let den = UniPoly::from_coeffs(vec![0, 3, 3], p);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.numerator(), &UniPoly::constant(4, p));
        assert_eq!(r.denominator(), &UniPoly::param(p));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(UniPoly::constant(1, 2), UniPoly::zero(2)),
            Err(AlgebraError::DivisionByZero)
        );
    }
}
