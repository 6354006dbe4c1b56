use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, FieldSpec};
use super::monomial::Monomial;
use super::{AlgebraError, Result};

/// Ordered variable names over a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    field: FieldSpec,
    names: Vec<String>,
}

pub type Ring = Arc<VariableContext>;

impl VariableContext {
    pub fn new<S: Into<String>>(field: FieldSpec, names: impl IntoIterator<Item = S>) -> Result<Ring> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(AlgebraError::InvalidVariables("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::InvalidVariables(format!("duplicate variable {name}")));
            }
            if field.param() == Some(name.as_str()) {
                return Err(AlgebraError::InvalidVariables(format!(
                    "variable {name} clashes with the field parameter"
                )));
            }
        }
        Ok(Arc::new(Self { field, names }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse polynomial: a map from exponent vectors to nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), ring.field().one())
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Result<Self> {
        Self::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    fn monomial(ring: &Ring, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { ring: ring.clone(), terms }
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            if m.len() != ring.nvars() {
                return Err(AlgebraError::MonomialLength { expected: ring.nvars(), got: m.len() });
            }
            if !ring.field().contains(&c) {
                return Err(AlgebraError::FieldMismatch(ring.field().to_string(), c.to_string()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Caller guarantees `m` and `c` fit the ring.
    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms from the largest monomial (graded reverse lex) down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order of vanishing at the origin).
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The common weighted degree of all terms, if there is one.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if !self.ring.field().contains(c) {
            return Err(AlgebraError::FieldMismatch(self.ring.field().to_string(), c.to_string()));
        }
        if c.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Re-expresses `self` in `target`, whose variables must start with the
    /// variables of `self`'s ring (same field).
    pub fn embed(&self, target: &Ring) -> Result<Self> {
        let src = &self.ring;
        if src.field() != target.field() || target.names().get(..src.nvars()) != Some(src.names()) {
            return Err(AlgebraError::RingMismatch);
        }
        let n = target.nvars();
        Ok(Self {
            ring: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extend_to(n), c.clone())).collect(),
        })
    }

    /// Sets every variable in `vanishing` to zero and re-expresses the result
    /// in `target`, whose variables are the remaining ones in order.
    pub fn restrict_to_zero(&self, vanishing: &[usize], target: &Ring) -> Result<Self> {
        let keep: Vec<usize> = (0..self.ring.nvars()).filter(|i| !vanishing.contains(i)).collect();
        if keep.len() != target.nvars() || self.ring.field() != target.field() {
            return Err(AlgebraError::RingMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            if vanishing.iter().any(|&i| m.exponents()[i] > 0) {
                continue;
            }
            let exps = keep.iter().map(|&i| m.exponents()[i]).collect();
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Value at a point given as one field element per variable.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::MonomialLength { expected: self.ring.nvars(), got: point.len() });
        }
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.checked_mul(&x.pow(e))?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let k = self.ring.field().from_u64(u64::from(e));
            out.add_term(Monomial::from_exponents(exps), c * &k);
        }
        out
    }

    /// Applies a coefficient map into another ring with the same variable count.
    pub fn map_coefficients(
        &self,
        target: &Ring,
        f: impl Fn(&FieldElement) -> Result<FieldElement>,
    ) -> Result<Self> {
        if target.nvars() != self.ring.nvars() {
            return Err(AlgebraError::RingMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let image = f(c)?;
            if !target.field().contains(&image) {
                return Err(AlgebraError::FieldMismatch(target.field().to_string(), image.to_string()));
            }
            out.add_term(m.clone(), image);
        }
        Ok(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative_rational();
            let shown = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m, self.ring.names());
            match (shown.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{}", field.format_element(&shown))?,
                (false, false) => write!(f, "{}*{mono}", field.format_element(&shown))?,
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}
