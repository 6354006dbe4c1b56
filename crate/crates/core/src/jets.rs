//! Jet-scheme equations for affine subschemes of `A^n`.
//!
//! Jet coordinates are named `x@j` for base variable `x` and t-degree `j`,
//! ordered by `j` first and then by base variable, so the level-`j` jet ring
//! is a prefix of the level-`m` jet ring for `j <= m`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    substitute_series, AlgebraError, FieldElement, FieldSpec, Polynomial, Ring, TruncatedSeries, VariableContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("an ideal needs at least one nonzero generator")]
    NoNonzeroGenerator,
    #[error("generator {index} does not belong to the ideal's ring")]
    ForeignGenerator { index: usize },
    #[error("generator `{generator}` has nonzero constant term {constant}; the origin is not on the subscheme")]
    NotAtOrigin { generator: String, constant: String },
    #[error("contact order {e} is out of range for jet level {m} (need 1 <= e <= m + 1)")]
    ContactOrderOutOfRange { e: usize, m: usize },
    #[error("hyperplane restriction needs at least 2 variables, ring has {0}")]
    TooFewVariables(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("arc has {got} components, ring has {expected} variables")]
    ArcArity { expected: usize, got: usize },
    #[error("arc is over {arc}, ideal is over {ideal}")]
    ArcField { arc: String, ideal: String },
    #[error("arc precision must be positive")]
    ArcPrecision,
    #[error("the order at the origin is undefined for the zero ideal")]
    ZeroIdeal,
}

pub type Result<T> = std::result::Result<T, JetError>;

/// Ideal of a closed subscheme `Y` of affine space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineIdeal {
    ring: Ring,
    generators: Vec<Polynomial>,
    at_origin_eligible: bool,
}

impl AffineIdeal {
    /// Requires at least one nonzero generator, all from `ring`.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if **g.ring() != **ring {
                return Err(JetError::ForeignGenerator { index });
            }
        }
        if generators.iter().all(Polynomial::is_zero) {
            return Err(JetError::NoNonzeroGenerator);
        }
        Ok(Self::from_parts(ring, generators))
    }

    /// The zero ideal, i.e. `Y = X`.
    pub fn whole_space(ring: &Ring) -> Self {
        Self::from_parts(ring, Vec::new())
    }

    pub(crate) fn from_parts(ring: &Ring, generators: Vec<Polynomial>) -> Self {
        let at_origin_eligible = generators.iter().all(|g| g.constant_term().is_zero());
        Self { ring: ring.clone(), generators, at_origin_eligible }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn nonzero_generators(&self) -> impl Iterator<Item = &Polynomial> {
        self.generators.iter().filter(|g| !g.is_zero())
    }

    pub fn is_whole_space(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }

    /// Every generator lies in the maximal ideal of the origin.
    pub fn at_origin_eligible(&self) -> bool {
        self.at_origin_eligible
    }

    pub(crate) fn require_origin(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.constant_term().is_zero()) {
            None => Ok(()),
            Some(g) => Err(JetError::NotAtOrigin {
                generator: g.to_string(),
                constant: self.field().format_element(&g.constant_term()),
            }),
        }
    }
}

impl fmt::Display for AffineIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Name of jet coordinate `a_{i,j}`.
pub fn jet_variable_name(base: &str, j: usize) -> String {
    format!("{base}@{j}")
}

/// Position of `a_{i,j}` among the `n(m+1)` jet coordinates.
pub fn jet_variable_index(n: usize, i: usize, j: usize) -> usize {
    j * n + i
}

/// Coordinate ring of `X_m` for `X = A^n`, in the variables `x@j`, `0 <= j <= m`.
pub fn jet_ring(base: &Ring, m: usize) -> Result<Ring> {
    jet_ring_levels(base, 0..=m)
}

fn jet_ring_levels(base: &Ring, levels: impl Iterator<Item = usize>) -> Result<Ring> {
    let names = levels.flat_map(|j| base.names().iter().map(move |x| jet_variable_name(x, j)));
    Ok(VariableContext::new(base.field().clone(), names.collect::<Vec<_>>())?)
}

/// Equations `g_{l,p}` of the level-`m` jet scheme of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetIdeal {
    base: AffineIdeal,
    level: usize,
    ring: Ring,
    /// `r(m+1)` entries in `(l, p)` order; identically zero entries are kept.
    generators: Vec<Polynomial>,
}

impl JetIdeal {
    pub fn base(&self) -> &AffineIdeal {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// All `g_{l,p}` in `(l, p)` lexicographic order.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `g_{l,p}` (0-based `l`).
    pub fn generator(&self, l: usize, p: usize) -> &Polynomial {
        &self.generators[l * (self.level + 1) + p]
    }

    /// Generators with their `(l, p)` labels.
    pub fn indexed(&self) -> impl Iterator<Item = ((usize, usize), &Polynomial)> {
        let width = self.level + 1;
        self.generators.iter().enumerate().map(move |(k, g)| ((k / width, k % width), g))
    }

    /// The generators as an ideal of the jet ring, zero entries dropped.
    pub fn to_ideal(&self) -> AffineIdeal {
        let gens = self.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        AffineIdeal::from_parts(&self.ring, gens)
    }
}

/// Substitutes `x_i = sum_j a_{i,j} t^j` into every generator and collects
/// the coefficients of `t^0, ..., t^m`.
pub fn jet_ideal(base: &AffineIdeal, m: usize) -> Result<JetIdeal> {
    let n = base.nvars();
    let ring = jet_ring(base.ring(), m)?;
    let generators = if n == 0 {
        // constants only; their jets are the constant followed by zeros
        base.generators
            .iter()
            .flat_map(|g| {
                let c = g.constant_term();
                let ring = ring.clone();
                (0..=m).map(move |p| {
                    if p == 0 {
                        Polynomial::constant(&ring, c.clone()).expect("same field")
                    } else {
                        Polynomial::zero(&ring)
                    }
                })
            })
            .collect()
    } else {
        let series: Vec<TruncatedSeries> = (0..n)
            .map(|i| {
                let coeffs = (0..=m).map(|j| Polynomial::var(&ring, jet_variable_index(n, i, j))).collect();
                TruncatedSeries::new(coeffs)
            })
            .collect::<std::result::Result<_, _>>()?;
        let mut out = Vec::with_capacity(base.generators.len() * (m + 1));
        for g in &base.generators {
            out.extend(substitute_series(g, &series)?.into_coefficients());
        }
        out
    };
    Ok(JetIdeal { base: base.clone(), level: m, ring, generators })
}

/// The fiber of `Y_m -> Y` over the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetFiber {
    level: usize,
    ideal: AffineIdeal,
    weights: Vec<u32>,
    sources: Vec<(usize, usize)>,
    vanished: Vec<(usize, usize)>,
}

impl JetFiber {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Ideal in the `nm` variables `x@j`, `j >= 1`; may be the zero ideal.
    pub fn ideal(&self) -> &AffineIdeal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// `w(x@j) = j`, the grading under which `g_{l,p}` has degree `p`.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `(l, p)` label of each surviving generator.
    pub fn sources(&self) -> &[(usize, usize)] {
        &self.sources
    }

    /// Labels of the `g_{l,p}` that vanish once `x@0 = 0`.
    pub fn vanished(&self) -> &[(usize, usize)] {
        &self.vanished
    }
}

/// Restricts the jet equations to jets centred at the origin (`a_{i,0} = 0`).
pub fn jet_fiber_origin(jets: &JetIdeal) -> Result<JetFiber> {
    jets.base.require_origin()?;
    let n = jets.base.nvars();
    let m = jets.level;
    let ring = jet_ring_levels(jets.base.ring(), 1..=m)?;
    let zero_level: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    let mut sources = Vec::new();
    let mut vanished = Vec::new();
    for (label, g) in jets.indexed() {
        let h = g.restrict_to_zero(&zero_level, &ring)?;
        if h.is_zero() {
            vanished.push(label);
        } else {
            gens.push(h);
            sources.push(label);
        }
    }
    let weights = (1..=m).flat_map(|j| std::iter::repeat_n(j as u32, n)).collect();
    Ok(JetFiber { level: m, ideal: AffineIdeal::from_parts(&ring, gens), weights, sources, vanished })
}

/// Equations of `Cont^{>=e}(Y)_m`: the `g_{l,p}` with `p <= e - 1`, in the
/// full level-`m` jet ring.
pub fn contact_ideal(base: &AffineIdeal, e: usize, m: usize) -> Result<AffineIdeal> {
    if e == 0 || e > m + 1 {
        return Err(JetError::ContactOrderOutOfRange { e, m });
    }
    let jets = jet_ideal(base, m)?;
    let gens = jets.indexed().filter(|((_, p), g)| *p < e && !g.is_zero()).map(|(_, g)| g.clone()).collect();
    Ok(AffineIdeal::from_parts(jets.ring(), gens))
}

/// A polynomial arc `t -> (gamma_1(t), ..., gamma_n(t))` known modulo `t^{M+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    field: FieldSpec,
    precision: usize,
    components: Vec<Vec<FieldElement>>,
}

impl Arc {
    /// `components[i][j]` is the coefficient of `t^j` in the i-th coordinate;
    /// coefficients beyond `t^precision` are dropped.
    pub fn new(field: &FieldSpec, precision: usize, components: Vec<Vec<FieldElement>>) -> Result<Self> {
        if precision == 0 {
            return Err(JetError::ArcPrecision);
        }
        let components = components
            .into_iter()
            .map(|mut c| {
                if c.iter().any(|x| !field.contains(x)) {
                    return Err(JetError::ArcField { arc: "mixed".into(), ideal: field.to_string() });
                }
                c.resize(precision + 1, field.zero());
                Ok(c)
            })
            .collect::<Result<_>>()?;
        Ok(Self { field: field.clone(), precision, components })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn components(&self) -> &[Vec<FieldElement>] {
        &self.components
    }

    /// Coordinates of the level-`m` truncation in jet-variable order.
    pub fn jet_point(&self, m: usize) -> Vec<FieldElement> {
        (0..=m)
            .flat_map(|j| {
                self.components.iter().map(move |c| c.get(j).cloned().unwrap_or_else(|| self.field.zero()))
            })
            .collect()
    }
}

/// Order of vanishing of an arc along `Y`, as far as the precision certifies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Exact(usize),
    /// Every generator vanishes modulo `t^{M+1}`; the value is `M + 1`.
    AtLeast(usize),
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Exact(e) => write!(f, "ord = {e}"),
            OrderResult::AtLeast(e) => write!(f, "ord >= {e}"),
        }
    }
}

pub fn ord_along_arc(base: &AffineIdeal, arc: &Arc) -> Result<OrderResult> {
    let n = base.nvars();
    if arc.components.len() != n {
        return Err(JetError::ArcArity { expected: n, got: arc.components.len() });
    }
    if arc.field != *base.field() {
        return Err(JetError::ArcField { arc: arc.field.to_string(), ideal: base.field().to_string() });
    }
    let m = arc.precision;
    let scalars = VariableContext::new(arc.field.clone(), Vec::<String>::new())?;
    let series: Vec<TruncatedSeries> = arc
        .components
        .iter()
        .map(|c| {
            let coeffs = c.iter().map(|x| Polynomial::constant(&scalars, x.clone())).collect::<std::result::Result<_, _>>()?;
            TruncatedSeries::new(coeffs)
        })
        .collect::<std::result::Result<_, AlgebraError>>()?;
    let mut best: Option<usize> = None;
    for g in base.nonzero_generators() {
        let value = if n == 0 {
            TruncatedSeries::constant(&scalars, m, g.constant_term())?
        } else {
            substitute_series(g, &series)?
        };
        if let Some(v) = value.valuation() {
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    Ok(match best {
        Some(e) => OrderResult::Exact(e),
        None => OrderResult::AtLeast(m + 1),
    })
}

/// Intersects `Y` with the coordinate hyperplane `x_i = 0`, returning an
/// ideal of `H = A^{n-1}`. When `H` lies inside `Y` the result is the zero
/// ideal of `H`.
pub fn restrict_to_hyperplane(base: &AffineIdeal, i: usize) -> Result<AffineIdeal> {
    let n = base.nvars();
    if n < 2 {
        return Err(JetError::TooFewVariables(n));
    }
    if i >= n {
        return Err(JetError::VariableOutOfRange { index: i, nvars: n });
    }
    let names = base.ring().names().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, s)| s.clone());
    let ring = VariableContext::new(base.field().clone(), names.collect::<Vec<_>>())?;
    let gens = base
        .generators
        .iter()
        .map(|g| g.restrict_to_zero(&[i], &ring))
        .filter(|g| !matches!(g, Ok(p) if p.is_zero()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(AffineIdeal::from_parts(&ring, gens))
}

/// Positive integer weights on the base variables under which every
/// generator is weighted-homogeneous, if some exist with entries at most
/// `bound`. Among solutions the one with the least total weight wins, ties
/// going to the lexicographically smallest.
pub fn quasi_homogeneous_weights(base: &AffineIdeal, bound: u32) -> Option<Vec<u32>> {
    let n = base.nvars();
    let diffs: Vec<Vec<i64>> = base
        .nonzero_generators()
        .flat_map(|g| {
            let monos: Vec<Vec<i64>> =
                g.terms().map(|(m, _)| m.exponents().iter().map(|&e| i64::from(e)).collect()).collect();
            let first = monos[0].clone();
            monos.into_iter().skip(1).map(move |m| m.iter().zip(&first).map(|(a, b)| a - b).collect())
        })
        .collect();
    if n == 0 || bound == 0 || (bound as u64).checked_pow(n as u32).is_none_or(|c| c > 1 << 20) {
        return None;
    }
    let mut best: Option<(u32, Vec<u32>)> = None;
    let mut w = vec![1u32; n];
    loop {
        let ok = diffs.iter().all(|d| d.iter().zip(&w).map(|(a, &b)| a * i64::from(b)).sum::<i64>() == 0);
        let total: u32 = w.iter().sum();
        if ok && best.as_ref().is_none_or(|(t, _)| total < *t) {
            best = Some((total, w.clone()));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return best.map(|(_, w)| w);
            }
            k -= 1;
            if w[k] < bound {
                w[k] += 1;
                break;
            }
            w[k] = 1;
        }
    }
}

/// Weights on the level-`m` jet ring inherited from base weights: `x@j`
/// gets the weight of `x`. Every `g_{l,p}` is then weighted-homogeneous of
/// the weighted degree of `f_l`.
pub fn inherited_jet_weights(base_weights: &[u32], m: usize) -> Vec<u32> {
    (0..=m).flat_map(|_| base_weights.iter().copied()).collect()
}

/// Largest `q` with the ideal inside `(x_1, ..., x_n)^q`: the least degree of
/// a term in any generator.
pub fn ord_at_origin(base: &AffineIdeal) -> Result<u32> {
    if base.is_whole_space() {
        return Err(JetError::ZeroIdeal);
    }
    base.require_origin()?;
    Ok(base.nonzero_generators().filter_map(Polynomial::lowest_degree).min().expect("nonzero generator"))
}
