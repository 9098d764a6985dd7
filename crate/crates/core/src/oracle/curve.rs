//! Weierstrass models and traces of Frobenius by point counting.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "[i64; 5]", into = "[i64; 5]")]
pub struct CurveModel {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl From<[i64; 5]> for CurveModel {
    fn from([a1, a2, a3, a4, a6]: [i64; 5]) -> Self {
        Self { a1, a2, a3, a4, a6 }
    }
}

impl From<CurveModel> for [i64; 5] {
    fn from(c: CurveModel) -> Self {
        [c.a1, c.a2, c.a3, c.a4, c.a6]
    }
}

impl CurveModel {
    /// `(b2, b4, b6, b8)`.
    fn b_invariants(&self) -> (i128, i128, i128, i128) {
        let [a1, a2, a3, a4, a6] = <[i64; 5]>::from(*self).map(i128::from);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = a1 * a3 + 2 * a4;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }
}

/// `p - #{affine points of the reduction mod p}`, valid for every prime.
///
/// At good primes this is `a_p`. At bad primes it is `a_p` provided the
/// model is minimal at `p` (0 for additive, ±1 for multiplicative reduction).
pub fn local_ap(curve: &CurveModel, p: u64) -> i64 {
    if p == 2 {
        let mut affine = 0;
        for x in 0..2i64 {
            for y in 0..2i64 {
                let lhs = y * y + curve.a1 * x * y + curve.a3 * y;
                let rhs = x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6;
                if (lhs - rhs).rem_euclid(2) == 0 {
                    affine += 1;
                }
            }
        }
        return 2 - affine;
    }
    // (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6
    let (b2, b4, b6, _) = curve.b_invariants();
    let pm = p as i128;
    let r = |v: i128| v.rem_euclid(pm) as u64;
    let (c3, c2, c1, c0) = (4 % p, r(b2), r(2 * b4), r(b6));
    let mut residue = vec![false; p as usize];
    for y in 0..p {
        residue[((y * y) % p) as usize] = true;
    }
    let mut sum = 0i64;
    for x in 0..p {
        let f = (((c3 * x + c2) % p * x + c1) % p * x + c0) % p;
        if f != 0 {
            sum += if residue[f as usize] { 1 } else { -1 };
        }
    }
    -sum
}

/// `a_p = p + 1 - #E(F_p)` at a prime of good reduction.
pub fn curve_ap(curve: &CurveModel, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    if curve.discriminant() % p as i128 == 0 {
        return Err(Error::BadPrime(p));
    }
    Ok(local_ap(curve, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::oracle::CurveRegistry;

    fn congruent_curve() -> CurveModel {
        CurveModel::from([0, 0, 0, -1, 0])
    }

    /// Projective point count by brute force over all (x, y).
    fn brute_count(c: &CurveModel, p: i64) -> i64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = y * y + c.a1 * x * y + c.a3 * y;
                let rhs = x * x * x + c.a2 * x * x + c.a4 * x + c.a6;
                if (lhs - rhs).rem_euclid(p) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn examples() {
        let e = congruent_curve();
        assert_eq!(curve_ap(&e, 5), Ok(-2));
        assert_eq!(curve_ap(&e, 3), Ok(0));
        assert_eq!(curve_ap(&e, 2), Err(Error::BadPrime(2)));
        assert!(curve_ap(&e, 9).is_err());
    }

    #[test]
    fn matches_brute_force_count() {
        let reg = CurveRegistry::builtin();
        for data in reg.levels() {
            let c = data.model().unwrap();
            for p in crate::arith::primes_up_to(150) {
                let expected = p as i64 + 1 - brute_count(&c, p as i64);
                assert_eq!(local_ap(&c, p), expected, "level {} p {p}", data.level);
            }
        }
    }

    #[test]
    fn shipped_models_have_bad_primes_dividing_level() {
        let reg = CurveRegistry::builtin();
        for data in reg.levels() {
            let c = data.model().unwrap();
            let disc = c.discriminant().unsigned_abs() as u64;
            let bad: Vec<u64> = factorize(disc).into_iter().map(|(p, _)| p).collect();
            let level: Vec<u64> = factorize(data.level as u64)
                .into_iter()
                .map(|(p, _)| p)
                .collect();
            assert_eq!(bad, level, "level {}", data.level);
        }
    }
}
