//! q-expansions of eta quotients `q^{s} ∏_d ∏_n (1 - q^{dn})^{e_d}` via
//! Euler's pentagonal number theorem
//! `∏ (1 - q^n) = Σ_k (-1)^k q^{k(3k-1)/2}` (k over all integers).

use super::data::CurveRegistry;
use super::series::CoefficientSeries;
use crate::error::{Error, Result};

/// Largest truncation accepted, in coefficients.
pub const MAX_TERMS: usize = 100_000_000;

/// Nonzero terms `(exponent, sign)` of `∏ (1 - q^{dn})` below `len`.
fn pentagonal_terms(d: usize, len: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    for k in 1.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = d * (k * (3 * k - 1) / 2);
        let e2 = d * (k * (3 * k + 1) / 2);
        if e1 >= len {
            break;
        }
        out.push((e1, sign));
        if e2 < len {
            out.push((e2, sign));
        }
    }
    out.sort_unstable();
    out
}

/// Coefficients `a_1..a_m` of the eta quotient with the given `(d, e_d)`.
pub fn eta_expansion(eta: &[(u32, i32)], m: usize) -> Result<Vec<i64>> {
    if m > MAX_TERMS {
        return Err(Error::Overflow("eta expansion length"));
    }
    let order: i64 = eta.iter().map(|&(d, e)| d as i64 * e as i64).sum();
    if order <= 0 || order % 24 != 0 {
        return Err(Error::Data(format!("eta quotient has q-order {order}/24")));
    }
    let shift = (order / 24) as usize;
    let mut out = vec![0i64; m];
    if shift > m {
        return Ok(out);
    }
    // g(q) = ∏ (pentagonal in q^d)^{e_d}, needed to degree m - shift
    let len = m - shift + 1;
    let mut g = vec![0i64; len];
    g[0] = 1;
    let ovf = || Error::Overflow("eta expansion");
    for &(d, e) in eta {
        let terms = pentagonal_terms(d as usize, len);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                // multiply in place, high degrees first
                for n in (0..len).rev() {
                    let mut acc = g[n];
                    for &(j, s) in &terms[1..] {
                        if j > n {
                            break;
                        }
                        acc = acc.checked_add(s * g[n - j]).ok_or_else(ovf)?;
                    }
                    g[n] = acc;
                }
            } else {
                // divide in place, low degrees first
                for n in 0..len {
                    let mut acc = g[n];
                    for &(j, s) in &terms[1..] {
                        if j > n {
                            break;
                        }
                        acc = acc.checked_sub(s * g[n - j]).ok_or_else(ovf)?;
                    }
                    g[n] = acc;
                }
            }
        }
    }
    // the q-shift puts g[0] at a_shift
    out[shift - 1..].copy_from_slice(&g);
    Ok(out)
}

/// `a_1..a_m` for `level` from its registered eta quotient.
pub fn eta_coefficients(
    registry: &CurveRegistry,
    level: u32,
    m: usize,
) -> Result<CoefficientSeries> {
    let data = registry.get(level)?;
    let eta = data.eta.as_ref().ok_or(Error::UnsupportedLevel(level))?;
    CoefficientSeries::new(level, eta_expansion(eta, m)?)
}
