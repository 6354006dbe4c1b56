use num_traits::One;

use crate::algebra::{FieldSpec, VariableContext};
use crate::jets::{ord_at_origin, restrict_to_hyperplane, AffineIdeal};

use super::{lct_estimate, Codim, Fraction, LctError, LctOptions, LctReport, Mode, Result, Threshold};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub prime: u64,
    pub m: usize,
    /// Origin-fiber dimension over Q.
    pub dim_q: Option<i64>,
    /// Origin-fiber dimension over F_p.
    pub dim_p: Option<i64>,
    /// `None` when either side ran out of resources.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ModPComparison {
    pub rationals: LctReport,
    pub reductions: Vec<(u64, LctReport)>,
    pub rows: Vec<ComparisonRow>,
    /// No computed row has `dim_p < dim_q`.
    pub verdict: bool,
    pub partial: bool,
}

fn check_integral(base: &AffineIdeal) -> Result<()> {
    if !base.field().is_rationals() {
        return Err(LctError::NotOverRationals(base.field().to_string()));
    }
    for g in base.generators() {
        for (m, c) in g.terms() {
            let q = c.as_rational().expect("rational coefficient");
            if !q.is_integer() {
                return Err(LctError::NonIntegerCoefficient {
                    generator: g.to_string(),
                    coefficient: base.field().format_element(c),
                });
            }
            if m.is_one() {
                return Err(LctError::ConstantTerm { generator: g.to_string() });
            }
        }
    }
    Ok(())
}

/// Reduces an integer-coefficient ideal modulo `p`. Generators that vanish
/// are kept as zeros; if all vanish the result is the zero ideal.
fn reduce_mod_p(base: &AffineIdeal, p: u64) -> Result<AffineIdeal> {
    let field = FieldSpec::prime(p)?;
    let ring = VariableContext::new(field.clone(), base.ring().names().to_vec())?;
    let gens = base
        .generators()
        .iter()
        .map(|g| g.map_coefficients(&ring, |c| Ok(field.from_bigint(c.as_rational().expect("rational").numer()))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(AffineIdeal::from_parts(&ring, gens))
}

fn dim_at(report: &LctReport, m: usize) -> Option<i64> {
    report.row(m).and_then(|r| r.dim)
}

/// Origin-fiber dimensions over Q and over each `F_p` for `m <= m_max`.
/// Semicontinuity predicts `dim_p >= dim_q` everywhere.
pub fn compare_mod_p(base: &AffineIdeal, primes: &[u64], m_max: usize, options: &LctOptions) -> Result<ModPComparison> {
    check_integral(base)?;
    let rationals = lct_estimate(base, m_max, Mode::FiberAtOrigin, options)?;
    let mut reductions = Vec::with_capacity(primes.len());
    let mut rows = Vec::new();
    for &p in primes {
        let reduced = reduce_mod_p(base, p)?;
        let report = lct_estimate(&reduced, m_max, Mode::FiberAtOrigin, options)?;
        for m in 0..=m_max {
            let (dim_q, dim_p) = (dim_at(&rationals, m), dim_at(&report, m));
            let holds = dim_q.zip(dim_p).map(|(q, p)| p >= q);
            rows.push(ComparisonRow { prime: p, m, dim_q, dim_p, holds });
        }
        reductions.push((p, report));
    }
    let verdict = rows.iter().all(|r| r.holds != Some(false));
    let partial = rows.iter().any(|r| r.holds.is_none());
    Ok(ModPComparison { rationals, reductions, rows, verdict, partial })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IoaRow {
    pub m: usize,
    /// Codim of the origin fiber of `Y_m` in `X_m`.
    pub c_x: Option<Codim>,
    /// Codim of the origin fiber of `(H ∩ Y)_m` in `H_m`.
    pub c_h: Option<Codim>,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct IoaCheck {
    pub hyperplane: usize,
    /// `H ∩ Y` as an ideal of `H`.
    pub restricted: AffineIdeal,
    /// `H` lies inside `Y`; the right-hand side is then 0.
    pub degenerate: bool,
    pub ambient: LctReport,
    /// `None` in the degenerate case.
    pub hyperplane_report: Option<LctReport>,
    pub rows: Vec<IoaRow>,
    pub verdict: bool,
    pub partial: bool,
}

impl IoaCheck {
    pub fn hyperplane_estimate(&self) -> Option<Threshold> {
        match &self.hyperplane_report {
            Some(r) => r.estimate(),
            None => Some(Threshold::Finite(Fraction::from_integer(0))),
        }
    }
}

/// Compares origin-fiber codimensions of `Y` in `A^n` with those of `H ∩ Y`
/// in the hyperplane `H = {x_i = 0}`, level by level.
pub fn check_inversion_of_adjunction(
    base: &AffineIdeal,
    hyperplane: usize,
    m_max: usize,
    options: &LctOptions,
) -> Result<IoaCheck> {
    base.require_origin()?;
    let restricted = restrict_to_hyperplane(base, hyperplane)?;
    let ambient = lct_estimate(base, m_max, Mode::FiberAtOrigin, options)?;
    let degenerate = restricted.is_whole_space();
    let hyperplane_report =
        if degenerate { None } else { Some(lct_estimate(&restricted, m_max, Mode::FiberAtOrigin, options)?) };
    let rows: Vec<IoaRow> = (0..=m_max)
        .map(|m| {
            let c_x = ambient.row(m).and_then(|r| r.codim);
            let c_h = match &hyperplane_report {
                Some(h) => h.row(m).and_then(|r| r.codim),
                None => Some(Codim::Finite(0)),
            };
            let holds = c_x.zip(c_h).map(|(x, h)| x >= h);
            IoaRow { m, c_x, c_h, holds }
        })
        .collect();
    let verdict = rows.iter().all(|r| r.holds != Some(false));
    let partial = rows.iter().any(|r| r.holds.is_none());
    Ok(IoaCheck { hyperplane, restricted, degenerate, ambient, hyperplane_report, rows, verdict, partial })
}

#[derive(Debug, Clone)]
pub struct MultiplicityCheck {
    pub ord: u32,
    pub bound: Fraction,
    pub report: LctReport,
    /// Levels whose ratio falls below the bound.
    pub violations: Vec<usize>,
    pub verdict: bool,
}

/// Every finite origin-fiber ratio must be at least `1 / ord_0(Y)`.
pub fn check_multiplicity_bound(base: &AffineIdeal, m_max: usize, options: &LctOptions) -> Result<MultiplicityCheck> {
    if base.is_whole_space() {
        return Err(LctError::NotProper);
    }
    let ord = ord_at_origin(base)?;
    if ord == 0 {
        return Err(LctError::NotProper);
    }
    let bound = Fraction::one() / Fraction::from_integer(u64::from(ord));
    let report = lct_estimate(base, m_max, Mode::FiberAtOrigin, options)?;
    let violations = report
        .rows
        .iter()
        .filter(|r| matches!(r.ratio, Some(Threshold::Finite(q)) if q < bound))
        .map(|r| r.m)
        .collect::<Vec<_>>();
    let verdict = violations.is_empty();
    Ok(MultiplicityCheck { ord, bound, report, violations, verdict })
}
