//! Independent check of verdicts: a numerical estimate of `L(E_D, 1)` from the
//! level's newform coefficients.

mod curve;
mod data;
mod eta;
mod lvalue;
mod series;

pub use curve::{curve_ap, local_ap, CurveModel};
pub use data::{CoefficientSource, CurveData, CurveRegistry};
pub use eta::{eta_coefficients, eta_expansion};
pub use lvalue::{
    default_terms, twist_conductor, twisted_l_value, LValueEstimate, LVerdict, OracleConfig,
};
pub use series::{extend_multiplicatively, prime_coefficients, CoefficientSeries};

use crate::error::Result;

/// `a_1..a_m` for `level`, from the eta quotient when one is registered and
/// by point counting plus the Hecke recursion otherwise.
pub fn coefficients_for_level(
    registry: &CurveRegistry,
    level: u32,
    m: usize,
) -> Result<CoefficientSeries> {
    match registry.get(level)?.source() {
        CoefficientSource::EtaQuotient(eta) => {
            CoefficientSeries::new(level, eta_expansion(&eta, m)?)
        }
        CoefficientSource::CurveModel(curve) => {
            extend_multiplicatively(&prime_coefficients(&curve, m), level, m)
        }
    }
}

/// Estimate `L(E_D, 1)` at `level`, generating exactly as many coefficients
/// as the truncation needs.
pub fn estimate_l_value(
    registry: &CurveRegistry,
    level: u32,
    d: i64,
    config: &OracleConfig,
) -> Result<LValueEstimate> {
    let m = match config.terms {
        Some(m) => m,
        None => default_terms(level, d)?,
    };
    if m > config.max_terms || m == 0 {
        // twisted_l_value declines without touching the coefficients
        let stub = CoefficientSeries::new(level, vec![1])?;
        return twisted_l_value(level, d, &stub, config);
    }
    let coeffs = coefficients_for_level(registry, level, m)?;
    twisted_l_value(level, d, &coeffs, config)
}
