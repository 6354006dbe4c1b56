//! Arcs written as `x=t^3; y=t^2 + t^5`.

use jetlct_core::algebra::{parse_polynomial, FieldElement, Ring, VariableContext};
use jetlct_core::jets::Arc;
use thiserror::Error;

use crate::idealfile::SERIES_VARIABLE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("arc assignment `{0}` is not of the form name=polynomial")]
    Malformed(String),
    #[error("arc assigns unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("arc assigns `{0}` twice")]
    Duplicate(String),
    #[error("arc leaves `{0}` unassigned")]
    Missing(String),
    #[error("arc component for `{name}`: {message}")]
    Component { name: String, message: String },
}

/// Parses the assignments over the ring's field, keeping coefficients of
/// `t^0, ..., t^precision`.
pub fn parse_arc(text: &str, ring: &Ring, precision: usize) -> Result<Arc, ArcError> {
    let field = ring.field();
    let series_ring = VariableContext::new(field.clone(), [SERIES_VARIABLE])
        .map_err(|e| ArcError::Component { name: SERIES_VARIABLE.into(), message: e.to_string() })?;
    let n = ring.nvars();
    let mut components: Vec<Option<Vec<FieldElement>>> = vec![None; n];
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| ArcError::Malformed(part.to_string()))?;
        let name = name.trim();
        let i = ring.index_of(name).ok_or_else(|| ArcError::UnknownVariable(name.to_string()))?;
        if components[i].is_some() {
            return Err(ArcError::Duplicate(name.to_string()));
        }
        let poly = parse_polynomial(value.trim(), &series_ring)
            .map_err(|e| ArcError::Component { name: name.to_string(), message: e.to_string() })?;
        let mut coeffs = vec![field.zero(); precision + 1];
        for (mono, c) in poly.terms() {
            let j = mono.degree() as usize;
            if j <= precision {
                coeffs[j] = c.clone();
            }
        }
        components[i] = Some(coeffs);
    }
    let components = components
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| ArcError::Missing(ring.names()[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Arc::new(field, precision, components)
        .map_err(|e| ArcError::Component { name: SERIES_VARIABLE.into(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use jetlct_core::algebra::FieldSpec;

    fn ring() -> Ring {
        VariableContext::new(FieldSpec::rationals(), ["x", "y"]).unwrap()
    }

    #[test]
    fn parses_assignments() {
        let arc = parse_arc("x=t^3; y = t^2 - 1/2*t^9", &ring(), 8).unwrap();
        assert_eq!(arc.precision(), 8);
        assert!(arc.components()[0][3].is_one());
        assert!(arc.components()[1].iter().enumerate().all(|(j, c)| c.is_zero() == (j != 2)));
    }

    #[test]
    fn rejects_bad_arcs() {
        let r = ring();
        assert_eq!(parse_arc("x=t", &r, 4), Err(ArcError::Missing("y".into())));
        assert_eq!(parse_arc("x=t; z=t; y=0", &r, 4), Err(ArcError::UnknownVariable("z".into())));
        assert_eq!(parse_arc("x=t; x=t; y=0", &r, 4), Err(ArcError::Duplicate("x".into())));
        assert!(matches!(parse_arc("x t; y=0", &r, 4), Err(ArcError::Malformed(_))));
        assert!(matches!(parse_arc("x=t^; y=0", &r, 4), Err(ArcError::Component { .. })));
    }
}
