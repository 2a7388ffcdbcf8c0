//! Loop invariants: region signs, large-loop counts by direct tracing, the
//! closed-form tableau, and the full loop list of a curve.
//!
//! For a strip spanning regions `i..=j` (walls `beta_i` and `beta_{j+1}`),
//! a right loop is a piece of the curve entering and leaving through the
//! west wall after reaching around the strip's punctures far enough to cross
//! the diameter just west of the east wall; a left loop is the mirror image.
//! Counting is done on the canonical representative, where a qualifying
//! piece crosses the diameter inside the far segment at least once.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coords::{extended_of, ExtendedCoords, IntersectionVector};
use crate::curve::{Event, MultiCurve, Side};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LoopKind {
    L,
    R,
}

impl LoopKind {
    pub fn mirror(self) -> LoopKind {
        match self {
            LoopKind::L => LoopKind::R,
            LoopKind::R => LoopKind::L,
        }
    }
}

/// The symbol `L_{i,j}` or `R_{i,j}` over the strip of regions `i..=j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LoopSymbol {
    pub kind: LoopKind,
    pub i: usize,
    pub j: usize,
}

impl LoopSymbol {
    pub fn new(kind: LoopKind, i: usize, j: usize) -> LoopSymbol {
        LoopSymbol { kind, i, j }
    }

    /// Same strip, opposite kind.
    pub fn mirror(self) -> LoopSymbol {
        LoopSymbol { kind: self.kind.mirror(), ..self }
    }
}

impl std::fmt::Display for LoopSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self.kind {
            LoopKind::L => 'L',
            LoopKind::R => 'R',
        };
        write!(f, "{}_{{{},{}}}", k, self.i, self.j)
    }
}

/// All nonvanishing loop symbols of a curve, with their counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopSet {
    counts: BTreeMap<LoopSymbol, i64>,
}

impl LoopSet {
    pub fn insert(&mut self, s: LoopSymbol, count: i64) {
        if count > 0 {
            self.counts.insert(s, count);
        }
    }

    pub fn contains(&self, s: &LoopSymbol) -> bool {
        self.counts.contains_key(s)
    }

    pub fn count(&self, s: &LoopSymbol) -> i64 {
        self.counts.get(s).copied().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &LoopSymbol> {
        self.counts.keys()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn symbol_set(&self) -> std::collections::BTreeSet<LoopSymbol> {
        self.counts.keys().copied().collect()
    }
}

impl FromIterator<(LoopSymbol, i64)> for LoopSet {
    fn from_iter<T: IntoIterator<Item = (LoopSymbol, i64)>>(iter: T) -> Self {
        let mut s = LoopSet::default();
        for (sym, c) in iter {
            s.insert(sym, c);
        }
        s
    }
}

impl std::fmt::Display for LoopSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.counts.keys().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Sign of the loops in region `i`: right iff the region's `b` entry is
/// positive, left iff negative.
pub fn loop_sign(curve: &MultiCurve, region: usize) -> Result<Option<LoopKind>> {
    let n = curve.disk().punctures();
    if region >= n {
        return Err(Error::IndexOutOfRange(format!("region {region} in D_{n}")));
    }
    let b = curve.region_data().b_ext(region);
    Ok(match b.signum() {
        1 => Some(LoopKind::R),
        -1 => Some(LoopKind::L),
        _ => None,
    })
}

/// Count the large right and left loops of `curve` in the strip `i..=j` by
/// tracing the canonical representative. This is the geometric ground truth.
///
/// A piece of the curve cut along the strip walls counts as a loop when both
/// of its endpoints lie on the same wall and, closed up with the wall
/// segment between them, it encircles every puncture of the strip; the side
/// of the wall names the kind. This is the isotopy-invariant reading of a
/// strand that reaches around the whole strip and back.
pub fn loops_oracle(curve: &MultiCurve, i: usize, j: usize) -> Result<(i64, i64)> {
    let n = curve.disk().punctures();
    if !(i <= j && j <= n - 1) {
        return Err(Error::IndexOutOfRange(format!(
            "strip ({i},{j}) in D_{n}"
        )));
    }
    let west_wall = i; // 0 means the boundary: never crossed
    let east_wall = j + 1; // n means the boundary
    let mut right = 0;
    let mut left = 0;
    for comp in curve.raw_components() {
        let m = comp.events.len();
        let walls: Vec<usize> = (0..m)
            .filter(|&k| match comp.events[k] {
                Event::Chord { wall, .. } => wall == west_wall || wall == east_wall,
                _ => false,
            })
            .collect();
        if walls.is_empty() {
            continue;
        }
        let faces = comp.faces()?;
        for (t, &k) in walls.iter().enumerate() {
            let k_next = walls[(t + 1) % walls.len()];
            // The stretch from event k to k_next is one piece of the curve
            // cut along the strip walls; keep it only when it runs inside.
            let entry_face = comp.events[k].cross(faces[k]).unwrap();
            if !(i..=j).contains(&entry_face.region) {
                continue;
            }
            let Event::Chord { wall: w_in, .. } = comp.events[k] else { unreachable!() };
            let Event::Chord { wall: w_out, .. } = comp.events[k_next] else { unreachable!() };
            if w_in != w_out {
                continue;
            }
            // Closing the piece up along the wall, a puncture is enclosed
            // iff the piece passes below it an odd number of times.
            let mut below = vec![0usize; n + 1];
            let mut p = k;
            loop {
                let pn = (p + 1) % m;
                let gap = comp.events[p].cross(faces[p]).unwrap();
                if gap.side == Side::Lower {
                    let r = gap.region;
                    let west = |e: Event| match e {
                        Event::Chord { wall, .. } => wall == r,
                        Event::Diam { east, .. } => !east,
                    };
                    if west(comp.events[p]) != west(comp.events[pn]) {
                        below[r + 1] += 1;
                    }
                }
                if pn == k_next {
                    break;
                }
                p = pn;
            }
            if (i + 1..=j + 1).all(|q| below[q] % 2 == 1) {
                if w_in == west_wall {
                    right += 1;
                } else {
                    left += 1;
                }
            }
        }
    }
    Ok((right, left))
}

/// The closed-form counts from the extended coordinates and crossing vector.
///
/// `A_p` and `B_p` subtract the region's loop count from the ray counts at
/// puncture `p`; range minima of these profiles measure how many strands
/// survive across the strip, and the region sign caps the count.
pub fn loops_closed_form(
    ext: &ExtendedCoords,
    v: &IntersectionVector,
    i: usize,
    j: usize,
) -> Result<(i64, i64)> {
    let n = v.punctures();
    if !(i <= j && j <= n - 1) {
        return Err(Error::IndexOutOfRange(format!("strip ({i},{j}) in D_{n}")));
    }
    // Consistency of the pair is the caller's contract; verify cheaply.
    if ext.base().punctures() != n {
        return Err(Error::Contract("extended coordinates for a different disk".into()));
    }
    let a_of = |p: usize| -> i64 {
        // A_p = alpha_{2p-3} - |b_{p-1}|
        v.alpha(2 * p as isize - 3) - ext.b_ext(p - 1).unwrap().abs()
    };
    let b_of = |p: usize| -> i64 { v.alpha(2 * p as isize - 2) - ext.b_ext(p - 1).unwrap().abs() };
    // Minimum over punctures l..=m, +infinity sentinel for empty ranges.
    let range_min = |f: &dyn Fn(usize) -> i64, l: usize, m: usize| -> Option<i64> {
        if l > m {
            None
        } else {
            Some((l..=m).map(f).min().unwrap())
        }
    };
    let diff = |hi: Option<i64>, lo: Option<i64>| -> i64 {
        match (hi, lo) {
            (Some(h), Some(l)) => h - l,
            (None, _) => i64::MAX / 2,
            (Some(_), None) => unreachable!("outer range contains the inner"),
        }
    };
    // Right loops of the strip i..=j: punctures i+1 ..= j+1 live inside.
    let r_count = {
        let first = diff(
            range_min(&a_of, i + 1, j),
            range_min(&a_of, i + 1, j + 1),
        );
        let second = diff(
            range_min(&b_of, i + 1, j),
            range_min(&b_of, i + 1, j + 1),
        );
        let cap = ext.b_ext(j)?.max(0);
        first.min(second).min(cap).max(0)
    };
    let l_count = {
        let first = diff(
            range_min(&a_of, i + 2, j + 1),
            range_min(&a_of, i + 1, j + 1),
        );
        let second = diff(
            range_min(&b_of, i + 2, j + 1),
            range_min(&b_of, i + 1, j + 1),
        );
        let cap = (-ext.b_ext(i)?).max(0);
        first.min(second).min(cap).max(0)
    };
    Ok((r_count, l_count))
}

/// Closed-form counts straight from a curve.
pub fn loops_closed_form_of(curve: &MultiCurve, i: usize, j: usize) -> Result<(i64, i64)> {
    let v = curve.crossings();
    let ext = extended_of(curve)?;
    loops_closed_form(&ext, &v, i, j)
}

/// All nonvanishing loop symbols of the curve.
pub fn list_of(curve: &MultiCurve) -> Result<LoopSet> {
    let n = curve.disk().punctures();
    let mut set = LoopSet::default();
    for i in 0..n {
        for j in i..n {
            let (r, l) = loops_oracle(curve, i, j)?;
            set.insert(LoopSymbol::new(LoopKind::R, i, j), r);
            set.insert(LoopSymbol::new(LoopKind::L, i, j), l);
        }
    }
    Ok(set)
}
