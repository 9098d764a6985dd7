//! Binary quadratic forms and enumeration of the finite sets
//! `{Q = [a,b,c] : disc(Q) = Δ, a < 0, N | a, Q(p,q) > 0}`.
//!
//! The fast enumerator is driven by the identity
//!
//! ```text
//! Δ·q² = (b·q + 2·a·p)² + 4·|a|·Q(p,q)      (a < 0, Q(p,q) > 0)
//! ```
//!
//! Writing `t = b·q + 2·a·p`, `A = -a` and `m = Q(p,q)`, every member comes
//! from a factorization `(Δq² - t²)/4 = A·m` with `N | A`. Looping over `t`
//! and the divisors of that quotient is roughly `O(Δq²)` work instead of the
//! `O(Δ^{3/2} q³ / N)` of the naive `(a, b)` double loop.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, isqrt};
use crate::error::{Error, Result};

/// `Q(X,Y) = a·X² + b·X·Y + c·Y²`, written `[a,b,c]`.
///
/// Ordering is lexicographic on `(a, b, c)`; serialized as a JSON triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// `b² - 4ac`.
    pub fn discriminant(&self) -> Result<i64> {
        let ovf = || Error::Overflow("discriminant");
        let bb = self.b.checked_mul(self.b).ok_or_else(ovf)?;
        let ac4 = self
            .a
            .checked_mul(self.c)
            .and_then(|ac| ac.checked_mul(4))
            .ok_or_else(ovf)?;
        bb.checked_sub(ac4).ok_or_else(ovf)
    }

    /// `Q(u, v)` with overflow checking.
    pub fn value_at(&self, u: i64, v: i64) -> Result<i64> {
        let ovf = || Error::Overflow("form evaluation");
        let t1 = self.a.checked_mul(u).and_then(|x| x.checked_mul(u));
        let t2 = self.b.checked_mul(u).and_then(|x| x.checked_mul(v));
        let t3 = self.c.checked_mul(v).and_then(|x| x.checked_mul(v));
        match (t1, t2, t3) {
            (Some(t1), Some(t2), Some(t3)) => t1
                .checked_add(t2)
                .and_then(|s| s.checked_add(t3))
                .ok_or_else(ovf),
            _ => Err(ovf()),
        }
    }

    /// Homogenized value `Q(p, q)` at `x = p/q`. Since `q > 0` its sign is
    /// the sign of `Q(x, 1)`.
    pub fn evaluate(&self, x: RationalPoint) -> Result<i64> {
        self.value_at(x.p, x.q)
    }

    /// `-Q = [-a,-b,-c]`.
    pub fn negate(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    /// `Q∘γ` for `γ = [[alpha, beta], [gamma, delta]]`, i.e.
    /// `(X, Y) ↦ Q(αX + βY, γX + δY)`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Result<Self> {
        let [[alpha, beta], [gamma, delta]] = m;
        let a = self.value_at(alpha, gamma)?;
        let c = self.value_at(beta, delta)?;
        let ovf = || Error::Overflow("form transform");
        // b' = 2a·αβ + b(αδ + βγ) + 2c·γδ
        let b = (|| {
            let x = self
                .a
                .checked_mul(2)?
                .checked_mul(alpha)?
                .checked_mul(beta)?;
            let y = self.b.checked_mul(
                alpha
                    .checked_mul(delta)?
                    .checked_add(beta.checked_mul(gamma)?)?,
            )?;
            let z = self
                .c
                .checked_mul(2)?
                .checked_mul(gamma)?
                .checked_mul(delta)?;
            x.checked_add(y)?.checked_add(z)
        })()
        .ok_or_else(ovf)?;
        Ok(Self::new(a, b, c))
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> u64 {
        gcd(gcd(self.a, self.b) as i64, self.c)
    }
}

impl From<[i64; 3]> for BinaryQuadraticForm {
    fn from([a, b, c]: [i64; 3]) -> Self {
        Self::new(a, b, c)
    }
}

impl From<BinaryQuadraticForm> for [i64; 3] {
    fn from(q: BinaryQuadraticForm) -> Self {
        [q.a, q.b, q.c]
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// A reduced fraction `p/q` with `q >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalPoint {
    p: i64,
    q: i64,
}

impl RationalPoint {
    pub const ZERO: RationalPoint = RationalPoint { p: 0, q: 1 };

    /// Normalizes sign and common factors; rejects a zero denominator.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 || p == i64::MIN || q == i64::MIN {
            return Err(Error::InvalidPoint { p, q });
        }
        let g = gcd(p, q) as i64;
        let s = q.signum();
        Ok(Self {
            p: s * p / g,
            q: s * q / g,
        })
    }

    /// For static tables; the caller guarantees `q > 0` and `gcd(p, q) = 1`.
    pub(crate) const fn new_unchecked(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Data(format!("cannot parse rational point {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                RationalPoint::new(p, q)
            }
            None => RationalPoint::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

impl TryFrom<String> for RationalPoint {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RationalPoint> for String {
    fn from(x: RationalPoint) -> String {
        x.to_string()
    }
}

/// The forms `[a,b,c]` of discriminant `delta` with `a < 0`, `level | a` and
/// `Q(point) > 0`, in ascending `(a, b, c)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSet {
    pub level: u64,
    pub delta: i64,
    pub point: RationalPoint,
    pub forms: Vec<BinaryQuadraticForm>,
}

impl FormSet {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

fn validate(level: u64, delta: i64) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidLevel);
    }
    if delta <= 0 {
        return Err(Error::NonPositiveDiscriminant(delta));
    }
    if !arith::is_discriminant(delta) {
        return Err(Error::NotDiscriminant(delta));
    }
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    Ok(())
}

/// `Δ·q²`, the bound appearing in the enumeration identity.
fn scaled_delta(delta: i64, x: RationalPoint) -> Result<i64> {
    x.q.checked_mul(x.q)
        .and_then(|qq| qq.checked_mul(delta))
        .ok_or(Error::Overflow("delta * q^2"))
}

/// Enumerate the form set for level `level`, discriminant `delta` and point `x`.
pub fn enumerate_forms(level: u64, delta: i64, x: RationalPoint) -> Result<FormSet> {
    validate(level, delta)?;
    let total = scaled_delta(delta, x)?;
    // 2·A·p and A·m later: A ≤ total/4, |p| arbitrary, so check once here
    let level_i = i64::try_from(level).map_err(|_| Error::Overflow("level"))?;
    (total / 4)
        .checked_mul(2)
        .and_then(|v| v.checked_mul(x.p.abs().max(1)))
        .ok_or(Error::Overflow("2 * a * p"))?;

    let t_max = isqrt(total as u64) as i64;
    // trial-division primes for quotients up to total / (4·level)
    let primes = arith::primes_up_to(isqrt((total / 4 / level_i).max(1) as u64) as usize + 1);

    let mut forms = Vec::new();
    for t_abs in 0..=t_max {
        let rem = total - t_abs * t_abs;
        // m ≥ 1 and A ≥ 1 force rem ≥ 4
        if rem < 4 || rem % 4 != 0 {
            continue;
        }
        let r = rem / 4;
        if r % level_i != 0 {
            continue;
        }
        let cofactor = (r / level_i) as u64;
        let divs = arith::divisors_from_factorization(&factor_with(cofactor, &primes));
        for k in divs {
            let big_a = level_i * k as i64;
            let m = r / big_a;
            for t in signed(t_abs) {
                // t = b·q − 2·A·p
                let num = t + 2 * big_a * x.p;
                if num % x.q != 0 {
                    continue;
                }
                let b = num / x.q;
                // b² − Δ = 4ac = −4A·c
                let bb = b.checked_mul(b).ok_or(Error::Overflow("b^2"))?;
                let diff = delta - bb;
                if diff % (4 * big_a) != 0 {
                    continue;
                }
                let q = BinaryQuadraticForm::new(-big_a, b, diff / (4 * big_a));
                let value = q.evaluate(x)?;
                if value == m && value > 0 {
                    forms.push(q);
                }
            }
        }
    }
    forms.sort_unstable();
    forms.dedup();
    Ok(FormSet {
        level,
        delta,
        point: x,
        forms,
    })
}

fn signed(t: i64) -> impl Iterator<Item = i64> {
    let neg = if t == 0 { None } else { Some(-t) };
    std::iter::once(t).chain(neg)
}

fn factor_with(mut n: u64, primes: &[u64]) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in primes {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Reference enumerator by exhaustive search over a box that provably
/// contains every member: `|a| ≤ slack·Δq²` and `|bq + 2ap| ≤ slack·q·⌊√Δ⌋ + q`.
/// Test oracle only; much slower than [`enumerate_forms`].
pub fn enumerate_forms_bruteforce(
    level: u64,
    delta: i64,
    x: RationalPoint,
    slack: u64,
) -> Result<FormSet> {
    validate(level, delta)?;
    if slack == 0 {
        return Err(Error::precondition("slack must be positive"));
    }
    let level_i = i64::try_from(level).map_err(|_| Error::Overflow("level"))?;
    let slack = slack as i64;
    let ovf = || Error::Overflow("bruteforce bounds");
    let a_bound = scaled_delta(delta, x)?.checked_mul(slack).ok_or_else(ovf)?;
    let t_bound = (isqrt(delta as u64) as i64)
        .checked_mul(slack * x.q)
        .and_then(|v| v.checked_add(x.q))
        .ok_or_else(ovf)?;

    let mut forms = Vec::new();
    let mut a = -level_i;
    while a >= -a_bound {
        // |b·q + 2a·p| ≤ t_bound
        let shift = 2 * a * x.p;
        let b_lo = (-t_bound - shift).div_euclid(x.q);
        let b_hi = (t_bound - shift).div_euclid(x.q) + 1;
        for b in b_lo..=b_hi {
            let diff = b * b - delta;
            if diff % (4 * a) != 0 {
                continue;
            }
            let q = BinaryQuadraticForm::new(a, b, diff / (4 * a));
            if q.evaluate(x)? > 0 {
                forms.push(q);
            }
        }
        a -= level_i;
    }
    forms.sort_unstable();
    forms.dedup();
    Ok(FormSet {
        level,
        delta,
        point: x,
        forms,
    })
}
