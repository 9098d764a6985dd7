//! Newform data per level: an eta-quotient exponent list and/or a Weierstrass
//! model, one JSON document per level:
//!
//! ```json
//! {"level": 32, "eta": [[4, 2], [8, 2]], "weierstrass": [0, 0, 0, 4, 0]}
//! ```
//!
//! The shipped documents (standard curve tables) are compiled in; a data
//! directory of `*.json` files can replace them at runtime.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::curve::CurveModel;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveData {
    pub level: u32,
    /// `[[d, e_d], …]` for `∏ η(dτ)^{e_d}`.
    pub eta: Option<Vec<(u32, i32)>>,
    /// `[a1, a2, a3, a4, a6]`.
    pub weierstrass: Option<[i64; 5]>,
}

/// Where the coefficients for a level come from, in order of preference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSource {
    EtaQuotient(Vec<(u32, i32)>),
    CurveModel(CurveModel),
}

impl CurveData {
    pub fn from_json(text: &str) -> Result<Self> {
        let data: CurveData =
            serde_json::from_str(text).map_err(|e| Error::Data(format!("curve data: {e}")))?;
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Data(format!("level {}: {msg}", self.level)));
        if self.level == 0 {
            return bad("level must be positive".into());
        }
        if self.eta.is_none() && self.weierstrass.is_none() {
            return bad("needs an eta quotient or a Weierstrass model".into());
        }
        if let Some(eta) = &self.eta {
            if eta.is_empty() {
                return bad("empty eta quotient".into());
            }
            if eta
                .iter()
                .any(|&(d, _)| d == 0 || !self.level.is_multiple_of(d))
            {
                return bad("eta factor d must divide the level".into());
            }
            let weight2: i32 = eta.iter().map(|&(_, e)| e).sum();
            let order: i64 = eta.iter().map(|&(d, e)| d as i64 * e as i64).sum();
            if weight2 != 4 {
                return bad(format!("eta exponents sum to {weight2}, weight 2 needs 4"));
            }
            if order != 24 {
                return bad(format!(
                    "q-order {order}/24 is not 1; series would not be normalized"
                ));
            }
        }
        if let Some(w) = self.weierstrass {
            if CurveModel::from(w).discriminant() == 0 {
                return bad("singular Weierstrass model".into());
            }
        }
        Ok(())
    }

    pub fn source(&self) -> CoefficientSource {
        match (&self.eta, self.weierstrass) {
            (Some(eta), _) => CoefficientSource::EtaQuotient(eta.clone()),
            (None, Some(w)) => CoefficientSource::CurveModel(CurveModel::from(w)),
            (None, None) => unreachable!("validated curve data has a source"),
        }
    }

    pub fn model(&self) -> Option<CurveModel> {
        self.weierstrass.map(CurveModel::from)
    }
}

const BUILTIN: [&str; 12] = [
    include_str!("../../data/curves/level-11.json"),
    include_str!("../../data/curves/level-14.json"),
    include_str!("../../data/curves/level-15.json"),
    include_str!("../../data/curves/level-17.json"),
    include_str!("../../data/curves/level-19.json"),
    include_str!("../../data/curves/level-20.json"),
    include_str!("../../data/curves/level-21.json"),
    include_str!("../../data/curves/level-24.json"),
    include_str!("../../data/curves/level-27.json"),
    include_str!("../../data/curves/level-32.json"),
    include_str!("../../data/curves/level-36.json"),
    include_str!("../../data/curves/level-49.json"),
];

/// Curve data keyed by level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveRegistry {
    levels: BTreeMap<u32, CurveData>,
}

impl CurveRegistry {
    /// The compiled-in data for all twelve levels.
    pub fn builtin() -> Self {
        let mut reg = CurveRegistry::default();
        for text in BUILTIN {
            let data = CurveData::from_json(text).expect("shipped curve data is valid");
            reg.levels.insert(data.level, data);
        }
        reg
    }

    /// Load every `*.json` file in `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let entries =
            std::fs::read_dir(dir).map_err(|e| Error::Data(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut reg = CurveRegistry::default();
        for path in paths {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
            let data = CurveData::from_json(&text)
                .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
            if reg.levels.insert(data.level, data).is_some() {
                return Err(Error::Data(format!("{}: duplicate level", path.display())));
            }
        }
        Ok(reg)
    }

    pub fn get(&self, level: u32) -> Result<&CurveData> {
        self.levels
            .get(&level)
            .ok_or(Error::UnsupportedLevel(level))
    }

    pub fn insert(&mut self, data: CurveData) -> Result<()> {
        data.validate()?;
        self.levels.insert(data.level, data);
        Ok(())
    }

    pub fn levels(&self) -> impl Iterator<Item = &CurveData> {
        self.levels.values()
    }
}
