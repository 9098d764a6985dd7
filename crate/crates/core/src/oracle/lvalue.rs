//! Truncated central-value sums for quadratic twists.
//!
//! With root number +1 and conductor `C`,
//! `L(E_D, 1) = 2 Σ_{n≥1} a_n χ_D(n)/n · exp(-2πn/√C)`.
//! The tail past `M` terms is bounded using `|a_n| ≤ d(n)√n ≤ 2n`.

use serde::{Deserialize, Serialize};

use super::series::CoefficientSeries;
use crate::arith::{gcd, is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub t_zero: f64,
    pub t_nonzero: f64,
    /// Fixed truncation; `None` uses `ceil(6·√C)`.
    pub terms: Option<usize>,
    /// Above this many terms the oracle declines with `Indeterminate`.
    pub max_terms: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            t_zero: 1e-3,
            t_nonzero: 1e-2,
            terms: None,
            max_terms: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LVerdict {
    Zero,
    Nonzero,
    Indeterminate,
}

impl LVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            LVerdict::Zero => "zero",
            LVerdict::Nonzero => "nonzero",
            LVerdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LValueEstimate {
    pub level: u32,
    pub d: i64,
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub verdict: LVerdict,
    pub conductor: u64,
    /// `χ_D(-N)` when `gcd(D, N) = 1`; the twist's functional-equation sign
    /// for these rank-zero curves.
    pub root_number: Option<i32>,
    pub caveats: Vec<String>,
}

/// `N·D²`, the conductor used as the decay scale.
pub fn twist_conductor(level: u32, d: i64) -> Result<u64> {
    (d.unsigned_abs())
        .checked_mul(d.unsigned_abs())
        .and_then(|dd| dd.checked_mul(level as u64))
        .ok_or(Error::Overflow("twist conductor"))
}

/// Number of terms the default truncation uses for this twist.
pub fn default_terms(level: u32, d: i64) -> Result<usize> {
    let c = twist_conductor(level, d)?;
    Ok((6.0 * (c as f64).sqrt()).ceil() as usize)
}

pub fn twisted_l_value(
    level: u32,
    d: i64,
    coeffs: &CoefficientSeries,
    config: &OracleConfig,
) -> Result<LValueEstimate> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::precondition(format!(
            "D = {d} must be a negative fundamental discriminant"
        )));
    }
    if coeffs.level != level {
        return Err(Error::precondition(format!(
            "coefficients are for level {}, not {level}",
            coeffs.level
        )));
    }
    let conductor = twist_conductor(level, d)?;
    let mut caveats = Vec::new();
    let root_number = if gcd(d, level as i64) == 1 {
        let w = kronecker(d, -(level as i64));
        if w == -1 {
            caveats.push("root number -1: the series assumes +1".to_string());
        }
        Some(w)
    } else {
        caveats.push(format!(
            "gcd(D, N) > 1: conductor {conductor} = N·D² used as decay scale only"
        ));
        None
    };
    let m = match config.terms {
        Some(m) => m,
        None => default_terms(level, d)?,
    };

    let mut estimate = LValueEstimate {
        level,
        d,
        value: 0.0,
        terms_used: 0,
        tail_bound: f64::INFINITY,
        verdict: LVerdict::Indeterminate,
        conductor,
        root_number,
        caveats,
    };
    if m > config.max_terms || m == 0 {
        estimate
            .caveats
            .push(format!("declined: {m} terms exceeds the cap"));
        return Ok(estimate);
    }
    if coeffs.len() < m {
        return Err(Error::InsufficientCoefficients {
            needed: m,
            have: coeffs.len(),
        });
    }

    let sqrt_c = (conductor as f64).sqrt();
    let ratio = (-2.0 * std::f64::consts::PI / sqrt_c).exp();
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut decay = 1.0f64;
    for n in 1..=m {
        decay *= ratio;
        let an = coeffs.a(n);
        if an == 0 {
            continue;
        }
        let chi = kronecker(d, n as i64);
        if chi == 0 {
            continue;
        }
        let term = (an * chi as i64) as f64 / n as f64 * decay;
        sum += term;
        abs_sum += term.abs();
    }
    let value = 2.0 * sum;
    // 2·Σ_{n>M} 2·r^n, plus a recursive-summation rounding bound
    let tail = 4.0 * ratio.powi((m + 1).min(i32::MAX as usize) as i32) / (1.0 - ratio);
    let rounding = 4.0 * (m as f64 + 10.0) * f64::EPSILON * abs_sum;
    let tail_bound = tail + rounding;

    estimate.value = value;
    estimate.terms_used = m;
    estimate.tail_bound = tail_bound;
    estimate.verdict = if value.abs() + tail_bound < config.t_zero {
        LVerdict::Zero
    } else if value.abs() - tail_bound > config.t_nonzero {
        LVerdict::Nonzero
    } else {
        LVerdict::Indeterminate
    };
    Ok(estimate)
}
