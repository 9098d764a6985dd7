//! The twelve dimension-one levels with their auxiliary discriminant `D₀`,
//! evaluation points, per-level goodness condition and the published list of
//! `m = |D|` at which the two sums differ.

use std::fmt;

use crate::arith::kronecker;
use crate::error::{Error, Result};
use crate::quadforms::RationalPoint;

/// One clause of a level's "good discriminant" condition, stated on `|D|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `(a/|D|) = value`
    KroneckerEq { a: i64, value: i32 },
    /// `(a/|D|) ≠ value`
    KroneckerNe { a: i64, value: i32 },
    /// `|D| ≡ residue (mod modulus)`
    Congruent { residue: i64, modulus: i64 },
}

impl Clause {
    pub fn holds(&self, abs_d: i64) -> bool {
        match *self {
            Clause::KroneckerEq { a, value } => kronecker(a, abs_d) == value,
            Clause::KroneckerNe { a, value } => kronecker(a, abs_d) != value,
            Clause::Congruent { residue, modulus } => abs_d.rem_euclid(modulus) == residue,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Clause::KroneckerEq { a, value } => write!(f, "({a}/|D|) = {value}"),
            Clause::KroneckerNe { a, value } => write!(f, "({a}/|D|) ≠ {value}"),
            Clause::Congruent { residue, modulus } => {
                write!(f, "|D| ≡ {residue} (mod {modulus})")
            }
        }
    }
}

/// Conjunction of clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoodCondition(pub &'static [Clause]);

impl GoodCondition {
    /// First clause violated by `|D|`, if any.
    pub fn first_violation(&self, abs_d: i64) -> Option<Clause> {
        self.0.iter().copied().find(|c| !c.holds(abs_d))
    }

    pub fn holds(&self, abs_d: i64) -> bool {
        self.first_violation(abs_d).is_none()
    }
}

impl fmt::Display for GoodCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" and ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A listed `m = |D|` where the sum is not invariant; `underlined` marks the
/// entries published as good fundamental discriminants with `L(E_D,1) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonInvariantEntry {
    pub m: i64,
    pub underlined: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    EtaQuotient,
    CurveModel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelData {
    pub level: u32,
    pub d0: i64,
    pub x1: RationalPoint,
    pub x2: RationalPoint,
    pub condition: GoodCondition,
    pub noninvariant: &'static [NonInvariantEntry],
    /// How the shipped newform data produces coefficients at this level.
    pub coefficient_kind: CoefficientKind,
}

impl LevelData {
    pub fn points(&self) -> [RationalPoint; 2] {
        [self.x1, self.x2]
    }
}

const fn kr(a: i64, value: i32) -> Clause {
    Clause::KroneckerEq { a, value }
}

const fn m8_3() -> Clause {
    Clause::Congruent {
        residue: 3,
        modulus: 8,
    }
}

const ZERO: RationalPoint = RationalPoint::ZERO;
const HALF: RationalPoint = RationalPoint::new_unchecked(1, 2);
const THIRD: RationalPoint = RationalPoint::new_unchecked(1, 3);
const SEVENTH: RationalPoint = RationalPoint::new_unchecked(1, 7);

macro_rules! entries {
    ($($m:literal $($u:ident)?),* $(,)?) => {
        &[$(NonInvariantEntry { m: $m, underlined: entries!(@u $($u)?) }),*]
    };
    (@u _u) => { true };
    (@u) => { false };
}

use CoefficientKind::{CurveModel, EtaQuotient};

static LEVELS: [LevelData; 12] = [
    LevelData {
        level: 11,
        d0: -3,
        x1: ZERO,
        x2: THIRD,
        condition: GoodCondition(&[kr(-11, 1)]),
        noninvariant: entries![4, 11, 12, 15 _u, 16, 20, 23 _u, 27, 31 _u, 44, 48],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 14,
        d0: -3,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[kr(-56, 1)]),
        noninvariant: entries![19 _u, 20, 24, 27, 35, 40, 52, 56, 59 _u, 68],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 15,
        d0: -4,
        x1: ZERO,
        x2: THIRD,
        condition: GoodCondition(&[kr(5, 1), Clause::KroneckerNe { a: -3, value: -1 }]),
        noninvariant: entries![15, 16, 19 _u, 24, 31 _u, 39 _u, 40, 51 _u, 55, 60],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 17,
        d0: -7,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[kr(-68, 1)]),
        noninvariant: entries![3 _u, 11 _u, 20, 23 _u, 24, 28, 31 _u, 40, 48, 51, 63],
        coefficient_kind: CurveModel,
    },
    LevelData {
        level: 19,
        d0: -4,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[kr(-19, 1)]),
        noninvariant: entries![7 _u, 11 _u, 19, 20 _u, 24 _u, 28, 35 _u, 36, 39 _u, 43, 44],
        coefficient_kind: CurveModel,
    },
    LevelData {
        level: 20,
        d0: -3,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[m8_3(), kr(-20, 1)]),
        noninvariant: entries![27, 35, 43 _u, 67 _u, 83 _u, 107 _u, 115, 123 _u],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 21,
        d0: -19,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[kr(-7, -1), kr(-3, 1)]),
        noninvariant: entries![3 _u, 7, 24 _u, 27, 28, 31 _u, 40 _u, 48, 52 _u, 63],
        coefficient_kind: CurveModel,
    },
    LevelData {
        level: 24,
        d0: -11,
        x1: HALF,
        x2: THIRD,
        condition: GoodCondition(&[m8_3(), kr(-24, 1)]),
        noninvariant: entries![3 _u, 27, 35 _u, 51 _u, 59 _u, 75, 83 _u, 99, 107 _u, 123 _u],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 27,
        d0: -4,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[kr(-3, 1)]),
        noninvariant: entries![7 _u, 19 _u, 28, 36, 40 _u, 43 _u, 52 _u, 55 _u, 64, 67 _u, 76],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 32,
        d0: -3,
        x1: ZERO,
        x2: THIRD,
        condition: GoodCondition(&[m8_3()]),
        noninvariant: entries![11 _u, 12, 19 _u, 35 _u, 43 _u, 48, 51 _u, 59 _u, 67 _u, 75, 83 _u],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 36,
        d0: -11,
        x1: ZERO,
        x2: HALF,
        condition: GoodCondition(&[m8_3(), kr(-3, -1)]),
        noninvariant: entries![27, 35 _u, 59 _u, 83 _u, 99, 107 _u, 131 _u, 155 _u, 171],
        coefficient_kind: EtaQuotient,
    },
    LevelData {
        level: 49,
        d0: -3,
        x1: ZERO,
        x2: SEVENTH,
        condition: GoodCondition(&[kr(-7, -1)]),
        noninvariant: entries![
            19 _u, 20 _u, 27, 31 _u, 40 _u, 47 _u, 48, 55 _u, 59 _u, 68 _u, 75
        ],
        coefficient_kind: CurveModel,
    },
];

/// All dimension-one levels in ascending order.
pub fn levels() -> &'static [LevelData] {
    &LEVELS
}

pub fn level_data(level: u32) -> Result<&'static LevelData> {
    LEVELS
        .iter()
        .find(|l| l.level == level)
        .ok_or(Error::UnknownLevel(level))
}
