use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ratfunc::{RatFunc, UniPoly};
use super::{AlgebraError, Result};

/// Primes are restricted to this bound so residue products fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum FieldRepr {
    Rationals,
    Prime(u64),
    RationalFunctions { p: u64, param: String },
}

/// One of ℚ, 𝔽_p or 𝔽_p(s).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec(FieldRepr);

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // both operands are below 2^31, so the product fits
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i64) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(AlgebraError::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    Ok(())
}

impl FieldSpec {
    pub fn rationals() -> Self {
        Self(FieldRepr::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self(FieldRepr::Prime(p)))
    }

    /// 𝔽_p(param), the rational function field in one variable.
    pub fn rational_functions(p: u64, param: impl Into<String>) -> Result<Self> {
        check_prime(p)?;
        let param = param.into();
        if param.is_empty() {
            return Err(AlgebraError::InvalidVariables("empty parameter name".into()));
        }
        Ok(Self(FieldRepr::RationalFunctions { p, param }))
    }

    /// 0 for ℚ, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match &self.0 {
            FieldRepr::Rationals => 0,
            FieldRepr::Prime(p) | FieldRepr::RationalFunctions { p, .. } => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, FieldRepr::Rationals)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0, FieldRepr::Prime(_))
    }

    /// Name of the transcendental parameter of 𝔽_p(s).
    pub fn param(&self) -> Option<&str> {
        match &self.0 {
            FieldRepr::RationalFunctions { param, .. } => Some(param),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_u64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &self.0 {
            FieldRepr::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.clone()))),
            FieldRepr::Prime(p) => FieldElement(Repr::Prime { value: reduce_bigint(n, *p), p: *p }),
            FieldRepr::RationalFunctions { p, .. } => FieldElement(Repr::RationalFunction(
                RatFunc::from_poly(UniPoly::constant(reduce_bigint(n, *p), *p)),
            )),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// The parameter `s` of 𝔽_p(s).
    pub fn param_element(&self) -> Option<FieldElement> {
        match &self.0 {
            FieldRepr::RationalFunctions { p, .. } => {
                Some(FieldElement(Repr::RationalFunction(RatFunc::from_poly(UniPoly::param(*p)))))
            }
            _ => None,
        }
    }

    pub fn rational_function(&self, num: UniPoly, den: UniPoly) -> Result<FieldElement> {
        match &self.0 {
            FieldRepr::RationalFunctions { p, .. } if num.modulus() == *p && den.modulus() == *p => {
                Ok(FieldElement(Repr::RationalFunction(RatFunc::new(num, den)?)))
            }
            _ => Err(AlgebraError::FieldMismatch(self.to_string(), "F_p(s) fraction".into())),
        }
    }

    /// Whether `x` belongs to this field.
    pub fn contains(&self, x: &FieldElement) -> bool {
        match (&self.0, &x.0) {
            (FieldRepr::Rationals, Repr::Rational(_)) => true,
            (FieldRepr::Prime(p), Repr::Prime { p: q, .. }) => p == q,
            (FieldRepr::RationalFunctions { p, .. }, Repr::RationalFunction(r)) => r.modulus() == *p,
            _ => false,
        }
    }

    /// Writes `x` using this field's parameter name.
    pub fn format_element(&self, x: &FieldElement) -> String {
        struct Shown<'a>(&'a FieldSpec, &'a FieldElement);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.1.fmt_in(self.0.param().unwrap_or("s"), f)
            }
        }
        Shown(self, x).to_string()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            FieldRepr::Rationals => write!(f, "Q"),
            FieldRepr::Prime(p) => write!(f, "F_{p}"),
            FieldRepr::RationalFunctions { p, param } => write!(f, "F_{p}({param})"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
    RationalFunction(RatFunc),
}

/// An exact scalar in canonical form: reduced fraction over ℚ, least
/// nonnegative residue over 𝔽_p, reduced fraction with monic denominator
/// over 𝔽_p(s). Equal values have identical representations.
///
/// The `std::ops` impls panic when the operands come from different fields;
/// use the `checked_*` methods where that can happen.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn rational(q: BigRational) -> Self {
        Self(Repr::Rational(q))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_rational_function(&self) -> Option<&RatFunc> {
        match &self.0 {
            Repr::RationalFunction(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Prime { value, .. } => *value == 0,
            Repr::RationalFunction(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Prime { value, .. } => *value == 1,
            Repr::RationalFunction(r) => r.is_one(),
        }
    }

    /// True for negative rationals; used only to print a leading minus sign.
    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_negative())
    }

    fn label(&self) -> String {
        match &self.0 {
            Repr::Rational(_) => "Q".into(),
            Repr::Prime { p, .. } => format!("F_{p}"),
            Repr::RationalFunction(r) => format!("F_{}(s)", r.modulus()),
        }
    }

    fn mismatch(&self, other: &Self) -> AlgebraError {
        AlgebraError::FieldMismatch(self.label(), other.label())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, p: q }) if p == q => {
                Repr::Prime { value: (a + b) % p, p: *p }
            }
            (Repr::RationalFunction(a), Repr::RationalFunction(b)) if a.modulus() == b.modulus() => {
                Repr::RationalFunction(a.add(b))
            }
            _ => return Err(self.mismatch(other)),
        }))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(Self(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, p: q }) if p == q => {
                Repr::Prime { value: mul_mod(*a, *b, *p), p: *p }
            }
            (Repr::RationalFunction(a), Repr::RationalFunction(b)) if a.modulus() == b.modulus() => {
                Repr::RationalFunction(a.mul(b))
            }
            _ => return Err(self.mismatch(other)),
        }))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if !self.same_field(other) {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self(match &self.0 {
            Repr::Rational(q) => {
                if q.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                Repr::Rational(q.recip())
            }
            Repr::Prime { value, p } => Repr::Prime {
                value: inv_mod(*value, *p).ok_or(AlgebraError::DivisionByZero)?,
                p: *p,
            },
            Repr::RationalFunction(r) => Repr::RationalFunction(r.inverse()?),
        }))
    }

    fn neg_ref(&self) -> Self {
        Self(match &self.0 {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Prime { value, p } => Repr::Prime { value: (p - value) % p, p: *p },
            Repr::RationalFunction(r) => Repr::RationalFunction(r.neg()),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        match &self.0 {
            Repr::Prime { value, p } => Self(Repr::Prime { value: pow_mod(*value, exp as u64, *p), p: *p }),
            _ => {
                let mut acc = self.one_like();
                for _ in 0..exp {
                    acc = &acc * self;
                }
                acc
            }
        }
    }

    pub fn same_field(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(_), Repr::Rational(_)) => true,
            (Repr::Prime { p, .. }, Repr::Prime { p: q, .. }) => p == q,
            (Repr::RationalFunction(a), Repr::RationalFunction(b)) => a.modulus() == b.modulus(),
            _ => false,
        }
    }

    pub fn zero_like(&self) -> Self {
        self.neg_ref().checked_add(self).expect("same field")
    }

    pub fn one_like(&self) -> Self {
        Self(match &self.0 {
            Repr::Rational(_) => Repr::Rational(BigRational::one()),
            Repr::Prime { p, .. } => Repr::Prime { value: 1 % p, p: *p },
            Repr::RationalFunction(r) => Repr::RationalFunction(RatFunc::from_poly(UniPoly::constant(1, r.modulus()))),
        })
    }

    pub(crate) fn fmt_in(&self, param: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Prime { value, .. } => write!(f, "{value}"),
            Repr::RationalFunction(r) => r.fmt_in(param, f),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("s", f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
