//! Geometric intersection numbers, the opposite-curve test, and family
//! classification.
//!
//! The intersection number is computed on the curve model: crossing counts
//! with the reference chords grow affinely in the twist power once the
//! transient regime is over, with slope `i(c,d) * beta_w(c)`. Reading the
//! slope off consecutive powers and insisting on agreement across all
//! chords and three consecutive samples gives the exact value. Disjointness
//! has a fast path: the canonical superposition already exhibits zero
//! crossings.

use serde::{Deserialize, Serialize};

use crate::coords::coords_of;
use crate::curve::MultiCurve;
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};
use crate::loops::{list_of, loops_oracle, LoopSet};
use crate::overlay::overlay;
use crate::twist::dehn_twist;

/// An ordered family of labelled essential curves on one disk.
#[derive(Debug, Clone)]
pub struct CurveFamily {
    disk: PuncturedDisk,
    labels: Vec<String>,
    curves: Vec<MultiCurve>,
    lists: Vec<LoopSet>,
}

impl CurveFamily {
    pub fn new(
        disk: PuncturedDisk,
        labels: Vec<String>,
        curves: Vec<MultiCurve>,
    ) -> Result<CurveFamily> {
        if labels.len() != curves.len() {
            return Err(Error::Family("labels and curves differ in length".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::Family(format!("duplicate label {l}")));
            }
        }
        for (l, c) in labels.iter().zip(&curves) {
            if c.disk() != disk {
                return Err(Error::DiskMismatch(disk.punctures(), c.disk().punctures()));
            }
            if !c.is_essential() {
                return Err(Error::NonEssential(format!(
                    "family curve {l} is not a single essential curve"
                )));
            }
        }
        let lists = curves
            .iter()
            .map(list_of)
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveFamily { disk, labels, curves, lists })
    }

    pub fn disk(&self) -> PuncturedDisk {
        self.disk
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn curves(&self) -> &[MultiCurve] {
        &self.curves
    }

    pub fn curve(&self, idx: usize) -> &MultiCurve {
        &self.curves[idx]
    }

    /// Precomputed loop list of each member.
    pub fn list(&self, idx: usize) -> &LoopSet {
        &self.lists[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Exact geometric intersection number of two essential curves.
pub fn geometric_intersection(c1: &MultiCurve, c2: &MultiCurve) -> Result<i64> {
    if c1.disk() != c2.disk() {
        return Err(Error::DiskMismatch(
            c1.disk().punctures(),
            c2.disk().punctures(),
        ));
    }
    if !c1.is_essential() || !c2.is_essential() {
        return Err(Error::Contract(
            "intersection numbers are defined for single essential curves".into(),
        ));
    }
    if coords_of(c1)? == coords_of(c2)? {
        return Ok(0);
    }
    if overlay(c1, c2)?.total == 0 {
        return Ok(0);
    }
    let n = c1.disk().punctures();
    let beta1 = c1.crossings().beta_vec();
    let mut prev: Option<Vec<i64>> = None;
    let mut last_q: Option<i64> = None;
    let mut stable = 0u32;
    for k in 1..=16 {
        let image = dehn_twist(c2, c1, k)?;
        let bk = image.crossings().beta_vec();
        if let Some(pb) = &prev {
            let mut q: Option<i64> = None;
            let mut coherent = true;
            for w in 1..n {
                let d = bk[w] - pb[w];
                if beta1[w] == 0 {
                    coherent &= d == 0;
                } else if d % beta1[w] != 0 {
                    coherent = false;
                } else {
                    let quot = d / beta1[w];
                    match q {
                        None => q = Some(quot),
                        Some(old) => coherent &= old == quot,
                    }
                }
            }
            match (coherent, q) {
                (true, Some(quot)) if quot >= 0 => {
                    if last_q == Some(quot) {
                        stable += 1;
                        if stable >= 2 {
                            return Ok(quot);
                        }
                    } else {
                        last_q = Some(quot);
                        stable = 0;
                    }
                }
                _ => {
                    last_q = None;
                    stable = 0;
                }
            }
        }
        prev = Some(bk);
    }
    Err(Error::Contract(
        "intersection growth failed to stabilize".into(),
    ))
}

/// The lexicographically smallest strip where the two curves carry opposite
/// large loops, if any.
pub fn are_opposite(c1: &MultiCurve, c2: &MultiCurve) -> Result<Option<(usize, usize)>> {
    if c1.disk() != c2.disk() {
        return Err(Error::DiskMismatch(
            c1.disk().punctures(),
            c2.disk().punctures(),
        ));
    }
    let n = c1.disk().punctures();
    for i in 0..n {
        for j in i..n {
            let (r1, l1) = loops_oracle(c1, i, j)?;
            let (r2, l2) = loops_oracle(c2, i, j)?;
            if (r1 > 0 && l2 > 0) || (l1 > 0 && r2 > 0) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Classification of a family per the disjoint-or-opposite condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyClass {
    MaximalOppositeFamily,
    OppositeFamily,
    NotOppositeFamily { witness: (String, String) },
}

impl std::fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyClass::MaximalOppositeFamily => write!(f, "maximal family of opposite curves"),
            FamilyClass::OppositeFamily => write!(f, "family of opposite curves"),
            FamilyClass::NotOppositeFamily { witness } => write!(
                f,
                "not a family of opposite curves (witness pair {}, {})",
                witness.0, witness.1
            ),
        }
    }
}

/// Every pair must be disjoint or opposite; maximal when every pair is
/// opposite. The first failing pair is reported as a witness.
pub fn classify_family(family: &CurveFamily) -> Result<FamilyClass> {
    if family.len() < 2 {
        return Err(Error::Family("a family needs at least two curves".into()));
    }
    let mut all_opposite = true;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let iota = geometric_intersection(family.curve(i), family.curve(j))?;
            if iota == 0 {
                all_opposite = false;
                continue;
            }
            if are_opposite(family.curve(i), family.curve(j))?.is_none() {
                return Ok(FamilyClass::NotOppositeFamily {
                    witness: (family.labels()[i].clone(), family.labels()[j].clone()),
                });
            }
        }
    }
    Ok(if all_opposite {
        FamilyClass::MaximalOppositeFamily
    } else {
        FamilyClass::OppositeFamily
    })
}

/// Disjoint union of multicurves; the inputs must not intersect.
pub fn disjoint_union(c: &MultiCurve, d: &MultiCurve) -> Result<MultiCurve> {
    if c.disk() != d.disk() {
        return Err(Error::DiskMismatch(c.disk().punctures(), d.disk().punctures()));
    }
    for a in c.components() {
        for b in d.components() {
            if coords_of(&a)? != coords_of(&b)? && geometric_intersection(&a, &b)? != 0 {
                return Err(Error::Contract(
                    "disjoint union requires non-intersecting curves".into(),
                ));
            }
        }
    }
    let mut comps = c.raw_components().to_vec();
    comps.extend_from_slice(d.raw_components());
    crate::curve::CurveDiagram::new(c.disk(), comps)?.tighten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_relaxed;

    #[test]
    fn relaxed_pair_laws_on_d5() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c13 = make_relaxed(d5, 1, 3).unwrap();
        let c24 = make_relaxed(d5, 2, 4).unwrap();
        let c45 = make_relaxed(d5, 4, 5).unwrap();
        assert_eq!(geometric_intersection(&c13, &c45).unwrap(), 0);
        assert_eq!(geometric_intersection(&c13, &c24).unwrap(), 2);
        assert_eq!(geometric_intersection(&c24, &c13).unwrap(), 2);
        assert_eq!(geometric_intersection(&c13, &c13).unwrap(), 0);
    }

    #[test]
    fn opposite_witness_region() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c13 = make_relaxed(d5, 1, 3).unwrap();
        let c24 = make_relaxed(d5, 2, 4).unwrap();
        let c45 = make_relaxed(d5, 4, 5).unwrap();
        assert_eq!(are_opposite(&c13, &c24).unwrap(), Some((1, 2)));
        assert_eq!(are_opposite(&c13, &c45).unwrap(), None);
        assert_eq!(are_opposite(&c13, &c13).unwrap(), None);
    }
}
