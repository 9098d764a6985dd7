//! Fourier coefficient sequences of weight-2 newforms and the Hecke recursion.

use std::collections::BTreeMap;

use crate::arith;
use crate::error::{Error, Result};

/// `a_1, …, a_M` of a normalized weight-2 newform of level `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSeries {
    pub level: u32,
    terms: Vec<i64>,
}

impl CoefficientSeries {
    pub fn new(level: u32, terms: Vec<i64>) -> Result<Self> {
        if terms.first() != Some(&1) {
            return Err(Error::Data(
                "newform coefficients must start with a_1 = 1".into(),
            ));
        }
        Ok(Self { level, terms })
    }

    /// `a_n` for `1 ≤ n ≤ len()`.
    pub fn a(&self, n: usize) -> i64 {
        self.terms[n - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn truncate(&mut self, m: usize) {
        self.terms.truncate(m.max(1));
    }
}

/// Smallest-prime-factor table for `0..=limit`.
fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Build `a_1..a_M` from prime coefficients:
/// `a_{p^{k+1}} = a_p·a_{p^k} - p·a_{p^{k-1}}` for `p ∤ N`,
/// `a_{p^k} = a_p^k` for `p | N`, and `a_{mn} = a_m·a_n` for coprime `m, n`.
pub fn extend_multiplicatively(
    ap: &BTreeMap<u64, i64>,
    level: u32,
    m: usize,
) -> Result<CoefficientSeries> {
    if m == 0 {
        return Err(Error::precondition("need at least one coefficient"));
    }
    let spf = smallest_prime_factors(m);
    let mut a = vec![0i64; m + 1];
    a[1] = 1;
    let ovf = || Error::Overflow("Hecke recursion");
    for n in 2..=m {
        let p = spf[n] as usize;
        let mut rest = n;
        let mut pk = 1;
        while rest % p == 0 {
            rest /= p;
            pk *= p;
        }
        a[n] = if rest > 1 {
            a[pk].checked_mul(a[rest]).ok_or_else(ovf)?
        } else {
            let a_p = *ap.get(&(p as u64)).ok_or(Error::MissingPrime(p as u64))?;
            if pk == p {
                a_p
            } else if (level as usize).is_multiple_of(p) {
                a_p.checked_mul(a[n / p]).ok_or_else(ovf)?
            } else {
                let x = a_p.checked_mul(a[n / p]).ok_or_else(ovf)?;
                let y = (p as i64).checked_mul(a[n / p / p]).ok_or_else(ovf)?;
                x.checked_sub(y).ok_or_else(ovf)?
            }
        };
    }
    a.remove(0);
    CoefficientSeries::new(level, a)
}

/// Prime coefficients `a_p` for `p ≤ m` by point counting on `curve`.
pub fn prime_coefficients(curve: &super::CurveModel, m: usize) -> BTreeMap<u64, i64> {
    arith::primes_up_to(m)
        .into_iter()
        .map(|p| (p, super::curve::local_ap(curve, p)))
        .collect()
}
