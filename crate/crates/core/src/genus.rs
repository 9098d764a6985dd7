//! Genus characters on forms of discriminant `D₀·D`.

use crate::arith::{gcd, is_discriminant, is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};
use crate::quadforms::BinaryQuadraticForm;

fn check_domain(d0: i64, q: &BinaryQuadraticForm) -> Result<()> {
    if !is_fundamental_discriminant(d0) {
        return Err(Error::NotFundamental(d0));
    }
    let disc = q.discriminant()?;
    if disc == 0 || disc % d0 != 0 || !is_discriminant(disc / d0) {
        return Err(Error::precondition(format!(
            "form {q} of discriminant {disc} is not in Q_(D0*D) for D0 = {d0}"
        )));
    }
    Ok(())
}

/// First value `Q(u, v)` coprime to `d0`, scanning the square shells
/// `max(|u|, |v|) = B` for `B = 1, 2, …` up to `limit`.
pub fn coprime_represented_value(
    d0: i64,
    q: &BinaryQuadraticForm,
    limit: i64,
) -> Result<Option<i64>> {
    for bound in 1..=limit {
        for u in -bound..=bound {
            for v in -bound..=bound {
                if u.abs() != bound && v.abs() != bound {
                    continue;
                }
                let r = q.value_at(u, v)?;
                if gcd(r, d0) == 1 {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

/// `χ_{D₀}(Q)`: zero when `gcd(a, b, c, D₀) > 1`, otherwise the Kronecker
/// symbol `(D₀/r)` at any represented `r` coprime to `D₀`.
pub fn genus_character(d0: i64, q: &BinaryQuadraticForm) -> Result<i32> {
    check_domain(d0, q)?;
    if gcd(q.content() as i64, d0) > 1 {
        return Ok(0);
    }
    // a primitive-at-D0 form represents a value prime to D0 inside this box
    let limit = d0.abs() + 2;
    match coprime_represented_value(d0, q, limit)? {
        Some(r) => Ok(kronecker(d0, r)),
        None => Err(Error::SearchExhausted {
            d0,
            a: q.a,
            b: q.b,
            c: q.c,
        }),
    }
}

/// Closed form of `χ_{-3}`: `(-3/a)` if `3 ∤ a`, else `(-3/c)`.
pub fn genus_character_m3(q: &BinaryQuadraticForm) -> Result<i32> {
    if q.a % 3 == 0 && q.c % 3 == 0 {
        return Err(Error::precondition(format!(
            "3 divides both outer coefficients of {q}"
        )));
    }
    Ok(if q.a % 3 != 0 {
        kronecker(-3, q.a)
    } else {
        kronecker(-3, q.c)
    })
}
