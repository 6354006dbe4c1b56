use std::cmp::Ordering;

/// Exponent vector. `Ord` is graded reverse lexicographic, which fixes the
/// iteration order of polynomial term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = exp;
        Self { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        debug_assert_eq!(weights.len(), self.exps.len());
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(|exps| Self { exps })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    /// Copy with variable `i` removed.
    pub fn drop_var(&self, i: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.remove(i);
        Self { exps }
    }

    /// Copy padded with zeros up to `nvars` exponents.
    pub fn extend_to(&self, nvars: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Self { exps }
    }
}

/// Reverse-lexicographic tie break: the monomial with the smaller exponent in
/// the last differing variable is larger.
pub(crate) fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| revlex(&self.exps, &other.exps))
    }
}
