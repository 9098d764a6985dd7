//! Published reference tables shipped as data, and their recomputation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_discriminant, is_fundamental_discriminant, is_square};
use crate::criterion::{
    self, f_sum, level_data, table_condition, vanishing_verdict, LevelData, Vanishing,
};
use crate::error::{Error, Result};
use crate::quadforms::RationalPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableName {
    Maincor,
    Primes,
    Cubes,
    Discs,
}

impl TableName {
    pub const ALL: [TableName; 4] = [
        TableName::Maincor,
        TableName::Primes,
        TableName::Cubes,
        TableName::Discs,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TableName::Maincor => "maincor",
            TableName::Primes => "primes",
            TableName::Cubes => "cubes",
            TableName::Discs => "discs",
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::precondition(format!("unknown table {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub d: i64,
    pub f_x1: i64,
    pub f_x2: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// One tabulated run of the criterion at a fixed level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFixture {
    pub name: String,
    pub caption: String,
    pub source: String,
    pub level: u32,
    pub d0: i64,
    pub points: [RationalPoint; 2],
    /// `[label when the sums agree, label when they differ]`.
    pub labels: Option<[String; 2]>,
    pub rows: Vec<FixtureRow>,
}

/// Fixture for one of the three value tables; `discs` lives in the level
/// registry instead.
pub fn fixture(name: TableName) -> Result<TableFixture> {
    let text = match name {
        TableName::Maincor => include_str!("../data/tables/maincor.json"),
        TableName::Primes => include_str!("../data/tables/primes.json"),
        TableName::Cubes => include_str!("../data/tables/cubes.json"),
        TableName::Discs => {
            return Err(Error::precondition(
                "discs is rendered from the level registry",
            ))
        }
    };
    TableFixture::from_json(text).map_err(|e| Error::Data(format!("{name} fixture: {e}")))
}

impl TableFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let fx: TableFixture =
            serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        level_data(fx.level)?;
        if fx.rows.iter().any(|r| r.label.is_some()) != fx.labels.is_some() {
            return Err(Error::Data("row labels given without a label pair".into()));
        }
        Ok(fx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub d: i64,
    pub expected: (i64, i64),
    pub computed: (i64, i64),
    pub counts: (u64, u64),
    pub expected_label: Option<String>,
    pub computed_label: Option<String>,
}

impl RowCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.computed && self.expected_label == self.computed_label
    }
}

/// Recompute one fixture row.
pub fn check_row(fx: &TableFixture, row: &FixtureRow) -> Result<RowCheck> {
    let [x1, x2] = fx.points;
    let e1 = f_sum(fx.level as u64, fx.d0, row.d, x1)?;
    let e2 = f_sum(fx.level as u64, fx.d0, row.d, x2)?;
    let computed_label = fx.labels.as_ref().map(|[same, differ]| {
        if e1.value == e2.value {
            same.clone()
        } else {
            differ.clone()
        }
    });
    Ok(RowCheck {
        d: row.d,
        expected: (row.f_x1, row.f_x2),
        computed: (e1.value, e2.value),
        counts: (e1.count, e2.count),
        expected_label: row.label.clone(),
        computed_label,
    })
}

/// Rows with `|D| ≤ max_abs_d` (all rows when `None`).
pub fn selected_rows(fx: &TableFixture, max_abs_d: Option<u64>) -> Vec<FixtureRow> {
    fx.rows
        .iter()
        .filter(|r| max_abs_d.is_none_or(|b| r.d.unsigned_abs() <= b))
        .cloned()
        .collect()
}

/// `m = |D|` up to `max_m` at which `F(x1) ≠ F(x2)` for the level, with the
/// `m` skipped because `|D·D₀|` is a square (the sum is then not covered).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonInvariantScan {
    pub level: u32,
    pub found: Vec<i64>,
    pub skipped_square: Vec<i64>,
}

pub fn noninvariant_m(data: &LevelData, max_m: i64) -> Result<NonInvariantScan> {
    let mut found = Vec::new();
    let mut skipped_square = Vec::new();
    for m in 1..=max_m {
        let d = -m;
        if !is_discriminant(d) {
            continue;
        }
        if is_square(m * data.d0.abs()) {
            skipped_square.push(m);
            continue;
        }
        let e1 = f_sum(data.level as u64, data.d0, d, data.x1)?;
        let e2 = f_sum(data.level as u64, data.d0, d, data.x2)?;
        if e1.value != e2.value {
            found.push(m);
        }
    }
    Ok(NonInvariantScan {
        level: data.level,
        found,
        skipped_square,
    })
}

/// How an underlined (published good, `L ≠ 0`) entry fares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum UnderlinedStatus {
    Nonzero,
    Vanishes,
    /// Fails the verdict preconditions (not fundamental, or the tabulated
    /// condition rejects it).
    NotGood(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscsLevelCheck {
    pub level: u32,
    pub d0: i64,
    pub condition: String,
    pub points: [RationalPoint; 2],
    /// Listed `m` with a non-square `|D·D₀|`.
    pub listed: Vec<i64>,
    pub scan: NonInvariantScan,
    pub underlined: Vec<(i64, UnderlinedStatus)>,
}

impl DiscsLevelCheck {
    pub fn matches(&self) -> bool {
        self.listed == self.scan.found
            && self
                .underlined
                .iter()
                .all(|(_, s)| *s != UnderlinedStatus::Vanishes)
    }
}

pub fn check_discs_level(data: &LevelData) -> Result<DiscsLevelCheck> {
    let max_m = data.noninvariant.last().map_or(0, |e| e.m);
    let scan = noninvariant_m(data, max_m)?;
    let listed = data
        .noninvariant
        .iter()
        .map(|e| e.m)
        .filter(|m| !is_square(m * data.d0.abs()))
        .collect();
    let mut underlined = Vec::new();
    for e in data.noninvariant.iter().filter(|e| e.underlined) {
        let status = match vanishing_verdict(data.level, -e.m) {
            Ok(v) if v.outcome == Vanishing::LNonzero => UnderlinedStatus::Nonzero,
            Ok(_) => UnderlinedStatus::Vanishes,
            Err(err) if err.is_precondition() => UnderlinedStatus::NotGood(err.to_string()),
            Err(err) => return Err(err),
        };
        underlined.push((e.m, status));
    }
    Ok(DiscsLevelCheck {
        level: data.level,
        d0: data.d0,
        condition: data.condition.to_string(),
        points: data.points(),
        listed,
        scan,
        underlined,
    })
}

/// Odd fundamental `D` with `|D| ≤ bound` where the general goodness rules
/// and the level's tabulated condition disagree.
pub fn goodness_divergence(level: u32, bound: i64) -> Result<Vec<i64>> {
    level_data(level)?;
    let mut out = Vec::new();
    for m in (1..=bound).step_by(2) {
        let d = -m;
        if !is_fundamental_discriminant(d) {
            continue;
        }
        if criterion::is_good(level, d)? != table_condition(level, d)? {
            out.push(d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for name in [TableName::Maincor, TableName::Primes, TableName::Cubes] {
            let fx = fixture(name).unwrap();
            assert_eq!(fx.name, name.as_str());
            assert!(!fx.rows.is_empty());
            let data = level_data(fx.level).unwrap();
            assert_eq!((fx.d0, fx.points), (data.d0, data.points()));
        }
        assert!(fixture(TableName::Discs).is_err());
        assert_eq!("cubes".parse::<TableName>().unwrap(), TableName::Cubes);
        assert!("nope".parse::<TableName>().is_err());
    }

    #[test]
    fn small_rows_match() {
        let fx = fixture(TableName::Maincor).unwrap();
        for row in selected_rows(&fx, Some(400)) {
            let c = check_row(&fx, &row).unwrap();
            assert!(c.matches(), "{c:?}");
        }
    }
}
