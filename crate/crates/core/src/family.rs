//! The curve-family input document.
//!
//! A JSON file lists the disk size and the curves, each given as a relaxed
//! pair, a flat coordinate vector, or a twist word applied to an earlier
//! curve:
//!
//! ```json
//! {
//!   "schema": "curve-family/1",
//!   "n": 5,
//!   "curves": [
//!     { "name": "c1", "relaxed": [1, 3] },
//!     { "name": "c2", "coords": [0, 0, 0, -1, 0, 1] },
//!     { "name": "c3", "word": "t1^2 t2^-1", "seed": "c1" }
//!   ]
//! }
//! ```
//!
//! Words use the generators `t1..tk` bound to the file's curves in order;
//! the rightmost letter acts first. Names default to `c1, c2, ...`.

use serde::{Deserialize, Serialize};

use crate::coords::{curve_from_coords, DynnikovCoords};
use crate::curve::{make_relaxed, MultiCurve};
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};
use crate::intersect::CurveFamily;
use crate::twist::{apply_word, TwistWord};

pub const SCHEMA: &str = "curve-family/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDocument {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub n: usize,
    pub curves: Vec<CurveEntry>,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CurveEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relaxed: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

impl FamilyDocument {
    pub fn from_json(text: &str) -> Result<FamilyDocument> {
        let doc: FamilyDocument = serde_json::from_str(text)
            .map_err(|e| Error::Family(format!("parse error at line {}, column {}: {e}", e.line(), e.column())))?;
        if doc.schema != SCHEMA {
            return Err(Error::Family(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Resolve every entry to a curve. Word entries may only refer to
    /// earlier curves as seeds; generators `t1..tk` bind to the file order.
    pub fn resolve(&self) -> Result<CurveFamily> {
        let disk = PuncturedDisk::new(self.n)?;
        if self.curves.is_empty() {
            return Err(Error::Family("no curves in the family".into()));
        }
        let mut labels: Vec<String> = Vec::with_capacity(self.curves.len());
        let mut curves: Vec<MultiCurve> = Vec::with_capacity(self.curves.len());
        for (k, entry) in self.curves.iter().enumerate() {
            let label = entry.name.clone().unwrap_or_else(|| format!("c{}", k + 1));
            let specified = [
                entry.relaxed.is_some(),
                entry.coords.is_some(),
                entry.word.is_some(),
            ]
            .iter()
            .filter(|b| **b)
            .count();
            if specified != 1 {
                return Err(Error::Family(format!(
                    "curve {label}: give exactly one of relaxed, coords, word"
                )));
            }
            let curve = if let Some([i, j]) = entry.relaxed {
                make_relaxed(disk, i, j)?
            } else if let Some(flat) = &entry.coords {
                let c = DynnikovCoords::from_flat(self.n, flat)?;
                curve_from_coords(disk, &c)?
            } else {
                let word = parse_word(entry.word.as_deref().unwrap())?;
                let seed_label = entry.seed.as_deref().ok_or_else(|| {
                    Error::Family(format!("curve {label}: word entries need a seed"))
                })?;
                let seed_idx = labels
                    .iter()
                    .position(|l| l == seed_label)
                    .ok_or_else(|| {
                        Error::Family(format!(
                            "curve {label}: seed {seed_label} is not an earlier curve"
                        ))
                    })?;
                apply_word(&word, &curves[seed_idx], &curves)?
            };
            if !curve.is_essential() {
                return Err(Error::NonEssential(format!(
                    "curve {label} is not a single essential curve"
                )));
            }
            labels.push(label);
            curves.push(curve);
        }
        CurveFamily::new(disk, labels, curves)
    }
}

/// Parse `"t1^2 t3^-1 t2"` into a twist word (generator indices 0-based).
pub fn parse_word(text: &str) -> Result<TwistWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let rest = token
            .strip_prefix('t')
            .ok_or_else(|| Error::Family(format!("bad word token {token:?}: expected t<k>[^e]")))?;
        let (gen_str, exp_str) = match rest.split_once('^') {
            Some((g, e)) => (g, Some(e)),
            None => (rest, None),
        };
        let gen: usize = gen_str
            .parse()
            .map_err(|_| Error::Family(format!("bad generator in token {token:?}")))?;
        if gen == 0 {
            return Err(Error::Family("generators are numbered from t1".into()));
        }
        let exp: i64 = match exp_str {
            Some(e) => e
                .parse()
                .map_err(|_| Error::Family(format!("bad exponent in token {token:?}")))?,
            None => 1,
        };
        letters.push((gen - 1, exp));
    }
    Ok(TwistWord::new(letters))
}
