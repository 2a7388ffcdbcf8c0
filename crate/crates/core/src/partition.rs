//! Complete partitions, decisive sets, the group-structure report, and the
//! ping-pong audit.
//!
//! A complete partition groups a family into parts of pairwise disjoint
//! curves such that curves in different parts intersect. When it exists,
//! the twists about the family generate the free product of one free
//! abelian group per part; all-singleton partitions give a free group. The
//! audit samples the hypothesis that drives the proof: applying a nontrivial
//! product of twists from one part to a curve carrying another part's
//! decisive loops always imprints the acting part's decisive loops.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::intersect::{geometric_intersection, CurveFamily};
use crate::loops::{list_of, LoopSymbol};
use crate::twist::{apply_word, dehn_twist, TwistWord};

/// A partition of the family's index set into nonempty parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_of(&self, curve: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&curve))
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        self.parts
            .iter()
            .enumerate()
            .map(|(k, part)| {
                let members = part
                    .iter()
                    .map(|&i| labels[i].clone())
                    .collect::<Vec<_>>()
                    .join(",");
                format!("P{}={{{}}}", k + 1, members)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Result of the greedy construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PartitionOutcome {
    Complete(Partition),
    /// The family admits no complete partition; the witness pair violates
    /// one of the disjointness conditions.
    Failure { witness: (usize, usize), reason: String },
}

/// The loops of `c1` that are opposite to loops of `c2`: symbols in the
/// list of `c1` whose mirror appears in the list of `c2`.
pub fn opposite_list(family: &CurveFamily, c1: usize, c2: usize) -> BTreeSet<LoopSymbol> {
    family
        .list(c1)
        .symbols()
        .filter(|s| family.list(c2).contains(&s.mirror()))
        .copied()
        .collect()
}

/// The decisive set of a curve: loops opposite to some curve outside its
/// own part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisiveSet {
    pub owner: usize,
    pub symbols: BTreeSet<LoopSymbol>,
}

impl DecisiveSet {
    pub fn display(&self) -> String {
        let inner = self
            .symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        format!("{{{inner}}}")
    }
}

pub fn decisive_set(
    family: &CurveFamily,
    partition: &Partition,
    curve: usize,
) -> Result<DecisiveSet> {
    let own_part = partition
        .part_of(curve)
        .ok_or_else(|| Error::IncompletePartition(format!("curve {curve} not covered")))?;
    let mut symbols = BTreeSet::new();
    for other in 0..family.len() {
        if partition.part_of(other) == Some(own_part) {
            continue;
        }
        symbols.extend(opposite_list(family, curve, other));
    }
    Ok(DecisiveSet { owner: curve, symbols })
}

/// Membership in the ping-pong set of part `i`: the decisive set of some
/// curve of that part is contained in the loop list of `c`.
pub fn x_membership(
    c: &MultiCurve,
    part: usize,
    family: &CurveFamily,
    partition: &Partition,
) -> Result<bool> {
    let list = list_of(c)?;
    for &r in &partition.parts()[part] {
        let dec = decisive_set(family, partition, r)?;
        if dec.symbols.iter().all(|s| list.contains(s)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Greedy construction: the first part gathers everything disjoint from the
/// first curve; later parts repeat on the lowest-index leftover. Each part
/// must be mutually disjoint and all cross-part pairs must intersect, else
/// the witness pair is reported.
pub fn build_partition(family: &CurveFamily) -> Result<PartitionOutcome> {
    let k = family.len();
    if k < 2 {
        return Err(Error::Family("a family needs at least two curves".into()));
    }
    let mut iota = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = geometric_intersection(family.curve(i), family.curve(j))?;
            iota[i][j] = v;
            iota[j][i] = v;
        }
    }
    let mut assigned = vec![false; k];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    while let Some(seed) = (0..k).find(|&i| !assigned[i]) {
        let part: Vec<usize> = (0..k)
            .filter(|&i| !assigned[i] && (i == seed || iota[seed][i] == 0))
            .collect();
        // Step check: the gathered curves must be pairwise disjoint.
        for x in 0..part.len() {
            for y in x + 1..part.len() {
                if iota[part[x]][part[y]] != 0 {
                    return Ok(PartitionOutcome::Failure {
                        witness: (part[x], part[y]),
                        reason: format!(
                            "curves disjoint from the seed intersect each other \
                             (i = {})",
                            iota[part[x]][part[y]]
                        ),
                    });
                }
            }
        }
        for &i in &part {
            assigned[i] = true;
        }
        parts.push(part);
    }
    let partition = Partition { parts };
    debug_assert_eq!(partition.size(), k);
    // Independent verification of the full definition: disjoint within
    // parts, intersecting (hence, for an opposite family, meeting at least
    // twice) across parts.
    for i in 0..k {
        for j in i + 1..k {
            let same = partition.part_of(i) == partition.part_of(j);
            if same && iota[i][j] != 0 {
                return Ok(PartitionOutcome::Failure {
                    witness: (i, j),
                    reason: "intersecting pair inside one part".into(),
                });
            }
            if !same && iota[i][j] == 0 {
                return Ok(PartitionOutcome::Failure {
                    witness: (i, j),
                    reason: "disjoint pair across parts".into(),
                });
            }
        }
    }
    Ok(PartitionOutcome::Complete(partition))
}

/// The free product of free abelian groups read off a complete partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    factors: Vec<usize>,
}

impl GroupStructure {
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// `Some(k)` when the group is free of rank `k` (all parts singletons).
    pub fn free_rank(&self) -> Option<usize> {
        if self.factors.iter().all(|&f| f == 1) {
            Some(self.factors.len())
        } else {
            None
        }
    }
}

impl std::fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(k) = self.free_rank() {
            return write!(f, "F_{k}");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&n| if n == 1 { "Z".to_string() } else { format!("Z^{n}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Part sizes become abelian ranks; `maximal` cross-checks that the family
/// classification agrees with an all-singleton partition.
pub fn group_structure(partition: &Partition, maximal: bool) -> Result<GroupStructure> {
    if partition.parts().is_empty() {
        return Err(Error::IncompletePartition("no parts".into()));
    }
    let factors: Vec<usize> = partition.parts().iter().map(Vec::len).collect();
    if factors.iter().any(|&f| f == 0) {
        return Err(Error::IncompletePartition("empty part".into()));
    }
    let g = GroupStructure { factors };
    if maximal && g.free_rank().is_none() {
        return Err(Error::IncompletePartition(
            "maximal families must split into singletons".into(),
        ));
    }
    Ok(g)
}

/// Statistics of the sampled ping-pong hypothesis checks.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub samples_requested: usize,
    pub checks: usize,
    pub violations: Vec<String>,
    /// Sampled curves that lay in more than one ping-pong set (expected 0).
    pub multi_membership: usize,
    pub seed: u64,
    pub max_word_length: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.multi_membership == 0
    }
}

/// Sample the hypothesis of the ping-pong argument.
///
/// Curves `c = w(c_r)` for random freely reduced words `w` are located in
/// their ping-pong set `X_s`; a nontrivial element `g` of another part's
/// twist group must move them into its own set `X_i`. Twists within a part
/// commute, so `g` is a nonzero exponent vector over the part's generators.
pub fn ping_pong_audit(
    family: &CurveFamily,
    partition: &Partition,
    samples: usize,
    max_word_length: usize,
    seed: u64,
) -> Result<AuditReport> {
    if partition.parts().len() < 2 {
        return Err(Error::IncompletePartition(
            "the audit needs at least two parts".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = family.len();
    let mut report = AuditReport {
        samples_requested: samples,
        checks: 0,
        violations: Vec::new(),
        multi_membership: 0,
        seed,
        max_word_length,
    };
    let mut attempts = 0usize;
    while report.checks < samples && attempts < samples * 4 {
        attempts += 1;
        let len = rng.gen_range(0..=max_word_length);
        let word = TwistWord::sample(&mut rng, k, len);
        let base = rng.gen_range(0..k);
        let c = apply_word(&word, family.curve(base), family.curves())?;
        let memberships: Vec<usize> = (0..partition.parts().len())
            .filter_map(|i| match x_membership(&c, i, family, partition) {
                Ok(true) => Some(i),
                _ => None,
            })
            .collect();
        if memberships.len() > 1 {
            report.multi_membership += 1;
            report.violations.push(format!(
                "{word}(c{}) lies in {} ping-pong sets",
                base + 1,
                memberships.len()
            ));
            continue;
        }
        let Some(&s) = memberships.first() else {
            // The sampled curve carries no decisive set; resample.
            continue;
        };
        // Act by a nontrivial element of a different part.
        let others: Vec<usize> = (0..partition.parts().len()).filter(|&i| i != s).collect();
        let i = others[rng.gen_range(0..others.len())];
        let part = &partition.parts()[i];
        let mut exponents = vec![0i64; part.len()];
        while exponents.iter().all(|&e| e == 0) {
            for e in exponents.iter_mut() {
                *e = rng.gen_range(-2..=2);
            }
        }
        let mut image = c.clone();
        for (&gen_idx, &e) in part.iter().zip(&exponents) {
            if e != 0 {
                image = dehn_twist(&image, family.curve(gen_idx), e)?;
            }
        }
        report.checks += 1;
        if !x_membership(&image, i, family, partition)? {
            report.violations.push(format!(
                "g(X_{}) escaped X_{}: word {word} on c{}, exponents {exponents:?} \
                 on part {}",
                s + 1,
                i + 1,
                base + 1,
                i + 1
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_relaxed;
    use crate::disk::PuncturedDisk;

    /// The worked three-curve family on five punctures.
    fn example_family() -> CurveFamily {
        let d5 = PuncturedDisk::new(5).unwrap();
        CurveFamily::new(
            d5,
            vec!["c1".into(), "c2".into(), "c3".into()],
            vec![
                make_relaxed(d5, 1, 3).unwrap(),
                make_relaxed(d5, 2, 4).unwrap(),
                make_relaxed(d5, 4, 5).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_partition() {
        let fam = example_family();
        let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
            panic!("expected a complete partition");
        };
        assert_eq!(p.parts(), &[vec![0, 2], vec![1]]);
        let g = group_structure(&p, false).unwrap();
        assert_eq!(g.to_string(), "Z^2 * Z");
        assert_eq!(g.free_rank(), None);
    }

    #[test]
    fn worked_decisive_sets() {
        let fam = example_family();
        let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
            panic!("expected a complete partition");
        };
        let d1 = decisive_set(&fam, &p, 0).unwrap();
        assert_eq!(d1.display(), "{R_{1,2}}");
        let d3 = decisive_set(&fam, &p, 2).unwrap();
        assert_eq!(d3.display(), "{L_{3,3}}");
        let d2 = decisive_set(&fam, &p, 1).unwrap();
        assert_eq!(d2.display(), "{L_{1,2}, R_{3,3}}");
    }

    #[test]
    fn x_membership_basics() {
        let fam = example_family();
        let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
            panic!()
        };
        // Each generator lies in its own part's set.
        assert!(x_membership(fam.curve(0), 0, &fam, &p).unwrap());
        assert!(x_membership(fam.curve(1), 1, &fam, &p).unwrap());
        assert!(!x_membership(fam.curve(0), 1, &fam, &p).unwrap());
    }

    #[test]
    fn small_audit_runs_clean() {
        let fam = example_family();
        let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
            panic!()
        };
        let report = ping_pong_audit(&fam, &p, 25, 3, 11).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.checks, 25);
    }
}
