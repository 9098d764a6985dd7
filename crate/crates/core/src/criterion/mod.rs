//! Evaluation of the character-weighted sums `F_{0,N,D,D₀}(x)` and the
//! vanishing verdicts built on them.
//!
//! For a dimension-one level `N` and a good fundamental discriminant `D`,
//! `L(E_D, 1) = 0` exactly when the sums at the level's two registered
//! points agree.

mod registry;

pub use registry::{
    level_data, levels, Clause, CoefficientKind, GoodCondition, LevelData, NonInvariantEntry,
};

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};
use crate::genus::genus_character;
use crate::quadforms::{enumerate_forms, FormSet, RationalPoint};

/// One evaluation of `F_{0,N,D,D₀}(x)`: the weighted sum and the number of
/// forms it ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FEvaluation {
    pub d: i64,
    pub x: RationalPoint,
    pub value: i64,
    pub count: u64,
}

/// `|D·D₀|`, checked for sign, overflow and the discriminant congruence.
pub fn pair_discriminant(d0: i64, d: i64) -> Result<i64> {
    if !arith::is_discriminant(d) || d == 0 {
        return Err(Error::NotDiscriminant(d));
    }
    let delta = d.checked_mul(d0).ok_or(Error::Overflow("D * D0"))?;
    if delta <= 0 {
        return Err(Error::NonPositiveDiscriminant(delta));
    }
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    Ok(delta)
}

/// The sum together with the form set it was computed from.
pub fn f_sum_with_forms(
    level: u64,
    d0: i64,
    d: i64,
    x: RationalPoint,
) -> Result<(FEvaluation, FormSet)> {
    if !is_fundamental_discriminant(d0) {
        return Err(Error::NotFundamental(d0));
    }
    let delta = pair_discriminant(d0, d)?;
    let set = enumerate_forms(level, delta, x)?;
    let mut value = 0i64;
    for q in &set.forms {
        value += genus_character(d0, q)? as i64;
    }
    let eval = FEvaluation {
        d,
        x,
        value,
        count: set.len() as u64,
    };
    Ok((eval, set))
}

/// `F_{0,N,D,D₀}(x)`. `D` need not be fundamental, only a discriminant with
/// `D·D₀` a positive non-square.
pub fn f_sum(level: u64, d0: i64, d: i64, x: RationalPoint) -> Result<FEvaluation> {
    f_sum_with_forms(level, d0, d, x).map(|(e, _)| e)
}

/// `#S_{N,D·D₀}(x)`, the unweighted count.
pub fn s_count(level: u64, d0: i64, d: i64, x: RationalPoint) -> Result<u64> {
    f_sum(level, d0, d, x).map(|e| e.count)
}

/// The general goodness rules, stated for odd fundamental `D`:
///
/// 1. `N` not a square ⇒ `(-4N/|D|) = 1`;
/// 2. `2 | N` ⇒ `|D| ≡ 3 (mod 8)`;
/// 3. `p ≡ -1 (mod 8)`, `p | N` ⇒ `(-p/|D|) = -1`;
/// 4. `p ≡ 3 (mod 8)`, `p^r ‖ N` ⇒ `(-p/|D|) = (-1)^(r+1)`.
///
/// Even `D` are never good under these rules.
pub fn is_good(level: u32, d: i64) -> Result<bool> {
    Ok(first_failed_rule(level, d)?.is_none())
}

/// Number (1–4) of the first goodness rule that `D` fails, 0 for even `D`.
pub fn first_failed_rule(level: u32, d: i64) -> Result<Option<u8>> {
    if !is_fundamental_discriminant(d) || d > 0 {
        return Err(Error::NotFundamental(d));
    }
    if level == 0 {
        return Err(Error::InvalidLevel);
    }
    if d % 2 == 0 {
        return Ok(Some(0));
    }
    let m = -d;
    let n = level as i64;
    if !arith::is_square(n) && kronecker(-4 * n, m) != 1 {
        return Ok(Some(1));
    }
    if n % 2 == 0 && m % 8 != 3 {
        return Ok(Some(2));
    }
    for (p, r) in arith::factorize(level as u64) {
        let p = p as i64;
        if p % 8 == 7 && kronecker(-p, m) != -1 {
            return Ok(Some(3));
        }
        let sign = if r % 2 == 1 { 1 } else { -1 };
        if p % 8 == 3 && kronecker(-p, m) != sign {
            return Ok(Some(4));
        }
    }
    Ok(None)
}

/// Whether `D/D₀` is a square in `Q_p` for every prime `p | N`. This is the
/// local condition the criterion rests on. The tabulated conditions imply it
/// except at levels 14 and 15.
pub fn is_admissible(level: u32, d: i64) -> Result<bool> {
    let data = level_data(level)?;
    if !is_fundamental_discriminant(d) || d > 0 {
        return Err(Error::NotFundamental(d));
    }
    // D·D₀ lies in the same square class as D/D₀.
    let u = d.checked_mul(data.d0).ok_or(Error::Overflow("D * D0"))?;
    for (p, _) in arith::factorize(level as u64) {
        let p = p as i64;
        let (mut w, mut v) = (u, 0u32);
        while w % p == 0 {
            w /= p;
            v += 1;
        }
        let unit_square = if p == 2 {
            w.rem_euclid(8) == 1
        } else {
            kronecker(w, p) == 1
        };
        if v % 2 == 1 || !unit_square {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sign of the functional equation of `L(E_D, s)` when `gcd(D, N) = 1`.
/// Every curve in the registry has root number +1, so this is `χ_D(-N)`.
pub fn twist_root_number(level: u32, d: i64) -> Option<i8> {
    if arith::gcd(d, level as i64) != 1 {
        return None;
    }
    Some(kronecker(d, -(level as i64)) as i8)
}

/// The level's tabulated condition on `|D|`.
pub fn table_condition(level: u32, d: i64) -> Result<bool> {
    let data = level_data(level)?;
    if !is_fundamental_discriminant(d) || d > 0 {
        return Err(Error::NotFundamental(d));
    }
    Ok(data.condition.holds(-d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vanishing {
    LVanishes,
    LNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub level: u32,
    pub d: i64,
    pub outcome: Vanishing,
    pub f_x1: i64,
    pub f_x2: i64,
    pub count_x1: u64,
    pub count_x2: u64,
    /// Caveats that apply to this `D`: even `D`, `D` sharing a factor with `N`,
    /// `D` not admissible, odd root number.
    pub notes: Vec<String>,
}

/// Everything a verdict needs checked before the sums are computed. Returns
/// the caveats that apply.
fn verdict_preconditions(data: &LevelData, d: i64) -> Result<Vec<String>> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::precondition(format!(
            "D = {d} must be a negative fundamental discriminant"
        )));
    }
    if let Some(clause) = data.condition.first_violation(-d) {
        return Err(Error::precondition(format!(
            "{clause} violated (level {} good-discriminant condition)",
            data.level
        )));
    }
    let delta = d.checked_mul(data.d0).ok_or(Error::Overflow("D * D0"))?;
    if arith::is_square(delta) {
        return Err(Error::precondition(format!(
            "|D·D0| = {delta} is a perfect square"
        )));
    }
    let mut notes = Vec::new();
    if d % 2 == 0 {
        notes.push(format!(
            "D = {d} is even: the general goodness rules cover odd D only; \
             level {} tabulated condition applied",
            data.level
        ));
    }
    if arith::gcd(d, data.level as i64) > 1 {
        notes.push(format!("gcd(D, N) > 1 for D = {d}, N = {}", data.level));
    }
    if !is_admissible(data.level, d)? {
        notes.push(format!(
            "D/D0 is not a local square at every p | {}: the criterion is not \
             backed by the local theory here and is known to misreport such D",
            data.level
        ));
    }
    if twist_root_number(data.level, d) == Some(-1) {
        notes.push("root number of E_D is -1, so L(E_D, 1) = 0 whatever the sums say".to_string());
    }
    Ok(notes)
}

/// Decide `L(E_D, 1) = 0` by comparing the sums at the level's two points.
pub fn vanishing_verdict(level: u32, d: i64) -> Result<VanishingVerdict> {
    let data = level_data(level)?;
    let notes = verdict_preconditions(data, d)?;
    let e1 = f_sum(level as u64, data.d0, d, data.x1)?;
    let e2 = f_sum(level as u64, data.d0, d, data.x2)?;
    let outcome = if e1.value == e2.value {
        Vanishing::LVanishes
    } else {
        Vanishing::LNonzero
    };
    Ok(VanishingVerdict {
        level,
        d,
        outcome,
        f_x1: e1.value,
        f_x2: e2.value,
        count_x1: e1.count,
        count_x2: e2.count,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Congruence {
    /// `L(E_n, 1) ≠ 0`, so `n` is not congruent (no conjecture needed).
    ProvenNonCongruent,
    /// `L(E_n, 1) = 0`; `n` is congruent if BSD holds.
    CongruentAssumingBsd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub n: i64,
    pub outcome: Congruence,
    pub basis: VanishingVerdict,
}

/// Congruent-number verdict for `n ≡ 3 (mod 8)` with `-n` fundamental.
pub fn congruent_verdict(n: i64) -> Result<CongruenceVerdict> {
    if n <= 0 {
        return Err(Error::precondition(format!("n = {n} must be positive")));
    }
    if n % 8 != 3 {
        return Err(Error::precondition(format!(
            "n ≡ 3 (mod 8) violated for n = {n}"
        )));
    }
    if !is_fundamental_discriminant(-n) {
        return Err(Error::precondition(format!(
            "-{n} is not a fundamental discriminant"
        )));
    }
    if arith::is_square(3 * n) {
        return Err(Error::precondition(format!("3·{n} is a perfect square")));
    }
    let basis = vanishing_verdict(32, -n)?;
    let outcome = match basis.outcome {
        Vanishing::LNonzero => Congruence::ProvenNonCongruent,
        Vanishing::LVanishes => Congruence::CongruentAssumingBsd,
    };
    Ok(CongruenceVerdict { n, outcome, basis })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub p: i64,
    pub count: u64,
    pub odd: bool,
    /// An odd count is sufficient (not necessary) for `p` to be non-congruent.
    pub proven_noncongruent: bool,
}

/// Parity of `#S_{32,3p}(1/3)` for a prime `p ≡ 3 (mod 8)`.
pub fn parity_test(p: i64) -> Result<ParityReport> {
    if p <= 0 || !arith::is_prime(p as u64) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    if p % 8 != 3 {
        return Err(Error::precondition(format!(
            "p ≡ 3 (mod 8) violated for p = {p}"
        )));
    }
    let third = RationalPoint::new(1, 3)?;
    let count = s_count(32, -3, -p, third)?;
    let odd = count % 2 == 1;
    Ok(ParityReport {
        p,
        count,
        odd,
        proven_noncongruent: odd,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CubesOutcome {
    /// `L ≠ 0`: finitely many rational points, unconditionally.
    FiniteProven,
    /// `L = 0`: infinitely many rational points if BSD holds.
    InfiniteAssumingBsd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubesVerdict {
    pub n: i64,
    pub outcome: CubesOutcome,
    pub basis: VanishingVerdict,
}

/// Finiteness of rational points on `x³ + n·y² = 432` for `n ≡ 1 (mod 3)`.
pub fn cubes_verdict(n: i64) -> Result<CubesVerdict> {
    if n <= 0 {
        return Err(Error::precondition(format!("n = {n} must be positive")));
    }
    if n % 3 != 1 {
        return Err(Error::precondition(format!(
            "n ≡ 1 (mod 3) violated for n = {n}"
        )));
    }
    if !is_fundamental_discriminant(-n) {
        return Err(Error::precondition(format!(
            "-{n} is not a fundamental discriminant"
        )));
    }
    if arith::is_square(4 * n) {
        return Err(Error::precondition(format!("4·{n} is a perfect square")));
    }
    let basis = vanishing_verdict(27, -n)?;
    let outcome = match basis.outcome {
        Vanishing::LNonzero => CubesOutcome::FiniteProven,
        Vanishing::LVanishes => CubesOutcome::InfiniteAssumingBsd,
    };
    Ok(CubesVerdict { n, outcome, basis })
}
