//! Codimensions of jet schemes and the finite-level upper bounds for the log
//! canonical threshold they produce, plus the inequalities those bounds obey.

mod checks;
mod smooth;

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groebner::{buchberger, krull_dimension, GroebnerError, Limits, MonomialOrder};
use crate::jets::{
    inherited_jet_weights, jet_fiber_origin, jet_ideal, quasi_homogeneous_weights, AffineIdeal, JetError,
};

pub use checks::{
    check_inversion_of_adjunction, check_multiplicity_bound, compare_mod_p, ComparisonRow, IoaCheck, IoaRow,
    ModPComparison, MultiplicityCheck,
};

use smooth::{smooth_locus, SmoothLocus};

/// Largest base weight tried when looking for a grading of the jet ideal.
const WEIGHT_BOUND: u32 = 12;

pub type Fraction = Ratio<u64>;

#[derive(Debug, Error)]
pub enum LctError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error("codimension decreased from {previous} to {current} at m = {m}")]
    MonotonicityViolated { m: usize, previous: Codim, current: Codim },
    #[error("reduction mod p needs an ideal over Q, got one over {0}")]
    NotOverRationals(String),
    #[error("generator `{generator}` has non-integer coefficient {coefficient}; reduction mod p needs integer coefficients")]
    NonIntegerCoefficient { generator: String, coefficient: String },
    #[error("generator `{generator}` has a nonzero constant term; reduction mod p needs generators inside (x_1, ..., x_n)")]
    ConstantTerm { generator: String },
    #[error("the multiplicity bound needs a proper nonzero ideal")]
    NotProper,
}

pub type Result<T> = std::result::Result<T, LctError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `codim(Y_m, X_m)` over all of `X_m`.
    Global,
    /// Jets centred at the origin; codim measured in `X_m` as well.
    FiberAtOrigin,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Global => "global",
            Mode::FiberAtOrigin => "fiber-at-origin",
        })
    }
}

/// A codimension; infinite for the empty scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Codim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => f.write_str("inf"),
        }
    }
}

/// An exact ratio `codim / (m + 1)`, or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Threshold {
    Finite(Fraction),
    Infinite,
}

impl Threshold {
    pub fn from_codim(codim: Codim, m: usize) -> Self {
        match codim {
            Codim::Finite(c) => Threshold::Finite(Fraction::new(c, m as u64 + 1)),
            Codim::Infinite => Threshold::Infinite,
        }
    }

    pub fn finite(&self) -> Option<Fraction> {
        match self {
            Threshold::Finite(r) => Some(*r),
            Threshold::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => write!(f, "{r}"),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

/// How a row's dimension was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Basis of the whole jet (or fiber) ideal.
    Groebner,
    /// Smooth-locus bundle dimension combined with the origin fiber.
    SmoothLocus,
    /// The ideal is zero; nothing to compute.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Done,
    Exhausted(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LctRow {
    pub m: usize,
    pub mode: Mode,
    /// Dimension of `Y_m` (global) or of the origin fiber.
    pub dim: Option<i64>,
    pub codim: Option<Codim>,
    pub ratio: Option<Threshold>,
    pub method: Method,
    pub status: RowStatus,
    pub elapsed: Duration,
}

impl LctRow {
    pub fn is_done(&self) -> bool {
        self.status == RowStatus::Done
    }
}

#[derive(Debug, Clone)]
pub struct LctOptions {
    /// Applied to each Gröbner computation separately.
    pub limits: Limits,
    /// Allow the smooth-locus shortcut for global rows.
    pub smooth_locus: bool,
}

impl Default for LctOptions {
    fn default() -> Self {
        Self { limits: Limits::default(), smooth_locus: true }
    }
}

/// Rows for `m = 0..=m_max` and their running minimum. The minimum is an
/// upper bound for the threshold that is only reached in the limit.
#[derive(Debug, Clone)]
pub struct LctReport {
    pub base: AffineIdeal,
    pub mode: Mode,
    pub m_max: usize,
    pub rows: Vec<LctRow>,
    pub running_min: Option<Threshold>,
    /// Smallest `m` attaining the minimum.
    pub attained_at: Option<usize>,
    pub diagnostic: Option<String>,
}

impl LctReport {
    /// The threshold estimate. The zero ideal (`Y = X`) has threshold 0 by
    /// convention.
    pub fn estimate(&self) -> Option<Threshold> {
        if self.base.is_whole_space() {
            return Some(Threshold::Finite(Fraction::from_integer(0)));
        }
        self.running_min
    }

    pub fn is_partial(&self) -> bool {
        self.rows.iter().any(|r| !r.is_done())
    }

    pub fn row(&self, m: usize) -> Option<&LctRow> {
        self.rows.get(m)
    }
}

/// Work shared by every row of one report.
struct Plan {
    base: AffineIdeal,
    mode: Mode,
    smooth: Option<SmoothLocus>,
    weights: Option<Vec<u32>>,
    limits: Limits,
}

enum Failure {
    Exhausted(String),
    Fatal(LctError),
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::ResourceExhausted { .. } => Failure::Exhausted(e.to_string()),
            other => Failure::Fatal(LctError::Groebner(other)),
        }
    }
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        Failure::Fatal(e.into())
    }
}

impl Plan {
    fn new(base: &AffineIdeal, mode: Mode, options: &LctOptions) -> Result<Self> {
        if mode == Mode::FiberAtOrigin {
            base.require_origin()?;
        }
        let smooth = if mode == Mode::Global && options.smooth_locus && !base.is_whole_space() {
            match smooth_locus(base, &options.limits) {
                Ok(s) => s,
                Err(GroebnerError::ResourceExhausted { .. }) => None,
                Err(e) => return Err(LctError::Groebner(e)),
            }
        } else {
            None
        };
        Ok(Self {
            base: base.clone(),
            mode,
            smooth,
            weights: quasi_homogeneous_weights(base, WEIGHT_BOUND),
            limits: options.limits.clone(),
        })
    }

    fn fiber_dim(&self, m: usize) -> std::result::Result<i64, Failure> {
        if m == 0 {
            return Ok(0);
        }
        let fiber = jet_fiber_origin(&jet_ideal(&self.base, m)?)?;
        if fiber.ideal().is_whole_space() {
            return Ok(fiber.ring().nvars() as i64);
        }
        let order = MonomialOrder::WeightedDegRevLex(fiber.weights().to_vec());
        let gb = buchberger(fiber.ideal(), &order, &self.limits)?;
        Ok(krull_dimension(&gb)?.dim)
    }

    fn global_dim(&self, m: usize) -> std::result::Result<(i64, Method), Failure> {
        let n = self.base.nvars();
        if self.base.is_whole_space() {
            return Ok((((m + 1) * n) as i64, Method::Trivial));
        }
        if let Some(s) = &self.smooth {
            let fiber = if s.needs_fiber() { Some(self.fiber_dim(m)?) } else { None };
            return Ok((s.jet_dimension(m, fiber), Method::SmoothLocus));
        }
        let jets = jet_ideal(&self.base, m)?.to_ideal();
        let order = match &self.weights {
            Some(w) => MonomialOrder::WeightedDegRevLex(inherited_jet_weights(w, m)),
            None => MonomialOrder::DegRevLex,
        };
        let gb = buchberger(&jets, &order, &self.limits)?;
        Ok((krull_dimension(&gb)?.dim, Method::Groebner))
    }

    fn row(&self, m: usize) -> Result<LctRow> {
        let start = Instant::now();
        let n = self.base.nvars() as u64;
        let ambient = n * (m as u64 + 1);
        let outcome = match self.mode {
            Mode::Global => self.global_dim(m),
            Mode::FiberAtOrigin => {
                let method = if self.base.is_whole_space() { Method::Trivial } else { Method::Groebner };
                self.fiber_dim(m).map(|d| (d, method))
            }
        };
        let (dim, method, status) = match outcome {
            Ok((d, method)) => (Some(d), method, RowStatus::Done),
            Err(Failure::Exhausted(msg)) => (None, Method::Groebner, RowStatus::Exhausted(msg)),
            Err(Failure::Fatal(e)) => return Err(e),
        };
        let codim = dim.map(|d| if d < 0 { Codim::Infinite } else { Codim::Finite(ambient - d as u64) });
        Ok(LctRow {
            m,
            mode: self.mode,
            dim,
            codim,
            ratio: codim.map(|c| Threshold::from_codim(c, m)),
            method,
            status,
            elapsed: start.elapsed(),
        })
    }
}

/// Codimension of `Cont^{>=e}(Y)_m` in `X_m`. Its equations are the
/// `g_{l,p}` with `p < e`, which only involve jet coordinates of t-degree
/// below `e`, so it equals `codim(Y_{e-1}, X_{e-1})`.
pub fn contact_codim(base: &AffineIdeal, e: usize, m: usize, options: &LctOptions) -> Result<LctRow> {
    if e == 0 || e > m + 1 {
        return Err(JetError::ContactOrderOutOfRange { e, m }.into());
    }
    codim_jet(base, e - 1, Mode::Global, options)
}

/// One row of the jet codimension table.
pub fn codim_jet(base: &AffineIdeal, m: usize, mode: Mode, options: &LctOptions) -> Result<LctRow> {
    Plan::new(base, mode, options)?.row(m)
}

fn check_monotone(rows: &[LctRow]) -> Result<()> {
    let mut previous: Option<Codim> = None;
    for row in rows {
        let Some(current) = row.codim else { continue };
        if let Some(p) = previous {
            if current < p {
                return Err(LctError::MonotonicityViolated { m: row.m, previous: p, current });
            }
        }
        previous = Some(current);
    }
    Ok(())
}

/// Codimension rows for `m = 0..=m_max` and their running minimum. Rows are
/// computed in parallel on the current rayon pool.
pub fn lct_estimate(base: &AffineIdeal, m_max: usize, mode: Mode, options: &LctOptions) -> Result<LctReport> {
    let plan = Plan::new(base, mode, options)?;
    let rows = (0..=m_max).into_par_iter().map(|m| plan.row(m)).collect::<Result<Vec<_>>>()?;
    check_monotone(&rows)?;
    let mut running_min: Option<Threshold> = None;
    let mut attained_at = None;
    for row in &rows {
        if let Some(r) = row.ratio {
            if running_min.is_none_or(|best| r < best) {
                running_min = Some(r);
                attained_at = Some(row.m);
            }
        }
    }
    let diagnostic = if running_min.is_none() {
        Some(format!("all {} levels exceeded their resource limits; no estimate", m_max + 1))
    } else {
        None
    };
    Ok(LctReport { base: base.clone(), mode, m_max, rows, running_min, attained_at, diagnostic })
}
