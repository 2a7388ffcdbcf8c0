//! Event-based curve diagrams and the canonical taut multicurve.
//!
//! A component is a cyclic sequence of elementary events: transverse
//! crossings of a chord half or of one of the two diameter pieces of a
//! region. Between consecutive events the strand stays inside one face (a
//! half-region). Raw diagrams ([`CurveDiagram`]) may carry removable bigons;
//! [`MultiCurve`] is always the canonical taut representative and is the type
//! every other module computes with.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coords::IntersectionVector;
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};
use crate::expand::{expand, EdgeOrders};
use crate::scan::scan_region_data;
use crate::tighten::tighten_components;

/// Which side of the horizontal diameter.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

/// A face of the reference complex: one half of a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub region: usize,
    pub side: Side,
}

/// An elementary event along a curve.
///
/// `Chord { wall, side }` crosses the half of the vertical chord `beta_wall`
/// lying on `side` of the diameter. `Diam { region, east }` crosses the
/// diameter inside `region`, east or west of its puncture. The same type
/// doubles as the identifier of the crossed edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    Chord { wall: usize, side: Side },
    Diam { region: usize, east: bool },
}

impl Event {
    /// The two faces separated by the crossed edge.
    pub fn faces(&self) -> [Face; 2] {
        match *self {
            Event::Chord { wall, side } => [
                Face { region: wall - 1, side },
                Face { region: wall, side },
            ],
            Event::Diam { region, .. } => [
                Face { region, side: Side::Upper },
                Face { region, side: Side::Lower },
            ],
        }
    }

    /// Crossing from `from`, the face on the other side, if adjacent.
    pub fn cross(&self, from: Face) -> Option<Face> {
        let [a, b] = self.faces();
        if from == a {
            Some(b)
        } else if from == b {
            Some(a)
        } else {
            None
        }
    }

    /// Global diameter-segment index (0..=n) for diameter events.
    pub fn segment(&self) -> Option<usize> {
        match *self {
            Event::Diam { region, east } => Some(region + usize::from(east)),
            Event::Chord { .. } => None,
        }
    }

    fn in_range(&self, n: usize) -> bool {
        match *self {
            Event::Chord { wall, .. } => wall >= 1 && wall <= n - 1,
            Event::Diam { region, .. } => region < n,
        }
    }
}

/// One closed component: the face before `events[0]` plus the cyclic event list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub start: Face,
    pub events: Vec<Event>,
}

impl Component {
    /// Face before each event; entry `k` is the face preceding `events[k]`.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let mut faces = Vec::with_capacity(self.events.len());
        let mut cur = self.start;
        for ev in &self.events {
            faces.push(cur);
            cur = ev.cross(cur).ok_or_else(|| {
                Error::InvalidDiagram(format!("event {ev:?} not adjacent to face {cur:?}"))
            })?;
        }
        if cur != self.start {
            return Err(Error::InvalidDiagram(
                "component does not close up".to_string(),
            ));
        }
        Ok(faces)
    }

    /// Reversed traversal of the same closed strand.
    pub fn reversed(&self) -> Component {
        let mut events = self.events.clone();
        events.reverse();
        Component { start: self.start, events }
    }

    fn rotated(&self, faces: &[Face], r: usize) -> Component {
        let mut events = self.events.clone();
        events.rotate_left(r);
        Component { start: faces[r], events }
    }

    /// Lexicographically minimal encoding over rotations of both orientations.
    pub fn canonicalize(&self) -> Result<Component> {
        let faces = self.faces()?;
        let mut best: Option<Component> = None;
        for cand in [self.clone(), self.reversed()] {
            let cand_faces = cand.faces()?;
            for r in 0..cand.events.len() {
                let rot = cand.rotated(&cand_faces, r);
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.ok_or_else(|| Error::InvalidDiagram("empty component".to_string()))
            .map(|c| {
                debug_assert_eq!(c.events.len(), faces.len());
                c
            })
    }

    /// Smallest diameter-segment index crossed, used to order components.
    pub fn leftmost_segment(&self) -> Option<usize> {
        self.events.iter().filter_map(|e| e.segment()).min()
    }

    /// Punctures enclosed by this component (odd number of strands below).
    pub fn enclosed_punctures(&self, n: usize) -> Result<Vec<usize>> {
        let faces = self.faces()?;
        let m = self.events.len();
        let mut below = vec![0usize; n + 1];
        for k in 0..m {
            let gap_face = self.events[k].cross(faces[k]).unwrap();
            if gap_face.side != Side::Lower {
                continue;
            }
            let r = gap_face.region;
            let next = self.events[(k + 1) % m];
            // A passage through the lower face crosses the downward ray at
            // puncture r+1 iff its endpoint edges straddle the ray.
            let west = |e: Event| match e {
                Event::Chord { wall, .. } => wall == r,
                Event::Diam { east, .. } => !east,
            };
            if west(self.events[k]) != west(next) {
                below[r + 1] += 1;
            }
        }
        Ok((1..=n).filter(|&p| below[p] % 2 == 1).collect())
    }
}

/// Per-region structure of a taut multicurve.
///
/// `lambda[r]` is the signed loop count in region `r` (positive: right loops
/// ending on the west wall; negative: left loops ending on the east wall).
/// `over[r]` / `under[r]` count the traverses passing the region's puncture
/// above / below the diameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct RegionData {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub over: Vec<i64>,
    pub under: Vec<i64>,
}

impl RegionData {
    pub fn tau(&self, r: usize) -> i64 {
        self.over[r] + self.under[r]
    }

    /// Crossing count of chord `beta_w`, `0..=n` with zero at the boundary.
    pub fn beta(&self, w: usize) -> i64 {
        if w == 0 || w == self.n {
            return 0;
        }
        self.tau(w - 1) + 2 * (-self.lambda[w - 1]).max(0)
    }

    pub fn beta_vec(&self) -> Vec<i64> {
        (0..=self.n).map(|w| self.beta(w)).collect()
    }

    /// Extended `b` entry of region `r` (`b_0 = -beta_1/2`, ordinary entries
    /// in between, `b_{n-1} = beta_{n-1}/2`).
    pub fn b_ext(&self, r: usize) -> i64 {
        (self.beta(r) - self.beta(r + 1)) / 2
    }

    /// Crossings of the upward ray at puncture `p` (1-based).
    pub fn alpha_upper(&self, p: usize) -> i64 {
        self.over[p - 1] + self.lambda[p - 1].abs()
    }

    pub fn alpha_lower(&self, p: usize) -> i64 {
        self.under[p - 1] + self.lambda[p - 1].abs()
    }

    /// Both wall equations must give the same chord counts.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.lambda.len() != n || self.over.len() != n || self.under.len() != n {
            return Err(Error::InvalidDiagram("region data length".into()));
        }
        for r in 0..n {
            if self.over[r] < 0 || self.under[r] < 0 {
                return Err(Error::InvalidDiagram("negative traverse count".into()));
            }
        }
        if self.over[0] != 0 || self.under[0] != 0 || self.over[n - 1] != 0 || self.under[n - 1] != 0
        {
            return Err(Error::InvalidDiagram(
                "boundary regions admit no traverses".into(),
            ));
        }
        if self.lambda[0] > 0 || self.lambda[n - 1] < 0 {
            return Err(Error::InvalidDiagram(
                "boundary region loops have a forced direction".into(),
            ));
        }
        for w in 1..n {
            let west = self.tau(w - 1) + 2 * (-self.lambda[w - 1]).max(0);
            let east = self.tau(w) + 2 * self.lambda[w].max(0);
            if west != east {
                return Err(Error::InvalidDiagram(format!(
                    "wall {w} crossing mismatch: {west} from the west, {east} from the east"
                )));
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.iter().all(|&x| x == 0)
            && self.over.iter().all(|&x| x == 0)
            && self.under.iter().all(|&x| x == 0)
    }

    pub fn intersection_vector(&self) -> IntersectionVector {
        IntersectionVector::from_counts(
            self.n,
            (1..=self.n).map(|p| self.alpha_upper(p)).collect(),
            (1..=self.n).map(|p| self.alpha_lower(p)).collect(),
            self.beta_vec(),
        )
    }
}

/// A raw diagram: structurally valid event cycles, possibly with bigons.
#[derive(Debug, Clone)]
pub struct CurveDiagram {
    disk: PuncturedDisk,
    components: Vec<Component>,
}

impl CurveDiagram {
    pub fn new(disk: PuncturedDisk, components: Vec<Component>) -> Result<Self> {
        let d = CurveDiagram { disk, components };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.disk.punctures();
        for comp in &self.components {
            if comp.events.is_empty() {
                return Err(Error::InvalidDiagram("component without events".into()));
            }
            if comp.start.region >= n {
                return Err(Error::InvalidDiagram("start face out of range".into()));
            }
            for ev in &comp.events {
                if !ev.in_range(n) {
                    return Err(Error::InvalidDiagram(format!("event out of range: {ev:?}")));
                }
            }
            comp.faces()?;
        }
        Ok(())
    }

    pub fn disk(&self) -> PuncturedDisk {
        self.disk
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Remove all bigons and return the canonical taut representative.
    ///
    /// Errors on empty multicurves and on components that bound a single
    /// puncture, nothing, or run parallel to the boundary.
    pub fn tighten(&self) -> Result<MultiCurve> {
        let n = self.disk.punctures();
        let mut comps = self.components.clone();
        tighten_components(&mut comps)?;
        if comps.is_empty() {
            return Err(Error::EmptyMulticurve);
        }
        for comp in &comps {
            let enclosed = comp.enclosed_punctures(n)?;
            if enclosed.len() < 2 {
                return Err(Error::NonEssential(format!(
                    "component encloses {} puncture(s)",
                    enclosed.len()
                )));
            }
            if enclosed.len() > n - 1 {
                return Err(Error::NonEssential(
                    "component is parallel to the boundary".into(),
                ));
            }
        }
        let data = scan_region_data(self.disk, &comps)?;
        MultiCurve::from_region_data(self.disk, data)
    }

    /// Minimal crossing counts; the diagram must already be taut.
    pub fn arc_crossings(&self) -> Result<IntersectionVector> {
        let tight = self.tighten()?;
        if tight.raw_components() != self.components.as_slice() {
            return Err(Error::Contract(
                "arc_crossings requires a tightened curve; call tighten first".into(),
            ));
        }
        Ok(tight.crossings())
    }
}

/// A taut multicurve in canonical form.
///
/// Every constructor tightens, so values of this type always carry minimal
/// crossing counts; all operations treat them as immutable.
#[derive(Debug, Clone)]
pub struct MultiCurve {
    disk: PuncturedDisk,
    components: Vec<Component>,
    data: RegionData,
    orders: EdgeOrders,
}

impl PartialEq for MultiCurve {
    fn eq(&self, other: &Self) -> bool {
        self.disk == other.disk && self.components == other.components
    }
}

impl Eq for MultiCurve {}

impl std::hash::Hash for MultiCurve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.disk.hash(state);
        self.components.hash(state);
    }
}

impl MultiCurve {
    pub(crate) fn from_region_data(disk: PuncturedDisk, data: RegionData) -> Result<MultiCurve> {
        data.validate()?;
        if data.is_empty() {
            return Err(Error::EmptyMulticurve);
        }
        let (components, orders) = expand(disk, &data)?;
        let n = disk.punctures();
        for comp in &components {
            let enclosed = comp.enclosed_punctures(n)?.len();
            if !(2..=n - 1).contains(&enclosed) {
                return Err(Error::NonEssential(format!(
                    "canonical component encloses {enclosed} puncture(s)"
                )));
            }
        }
        #[cfg(debug_assertions)]
        {
            let rescanned = scan_region_data(disk, &components)?;
            if rescanned != data {
                return Err(Error::InvalidDiagram(
                    "internal: expansion does not scan back to its data".into(),
                ));
            }
        }
        let curve = MultiCurve { disk, components, data, orders };
        #[cfg(debug_assertions)]
        {
            let bad = crate::overlay::self_check(&curve);
            if !bad.is_empty() {
                return Err(Error::InvalidDiagram(format!(
                    "internal: canonical layout self-crosses: {}",
                    bad[0]
                )));
            }
        }
        Ok(curve)
    }

    pub fn disk(&self) -> PuncturedDisk {
        self.disk
    }

    pub(crate) fn region_data(&self) -> &RegionData {
        &self.data
    }

    pub(crate) fn edge_orders(&self) -> &EdgeOrders {
        &self.orders
    }

    pub fn raw_components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Tightening is idempotent; canonical values map to themselves.
    pub fn tighten(&self) -> MultiCurve {
        self.clone()
    }

    /// The connected components as single-curve values.
    pub fn components(&self) -> Vec<MultiCurve> {
        self.components
            .iter()
            .map(|comp| {
                let data = scan_region_data(self.disk, std::slice::from_ref(comp))
                    .expect("canonical component scans cleanly");
                MultiCurve::from_region_data(self.disk, data)
                    .expect("canonical component re-expands")
            })
            .collect()
    }

    /// True iff this is a single curve enclosing between 2 and n-1 punctures.
    pub fn is_essential(&self) -> bool {
        self.components.len() == 1 && {
            let n = self.disk.punctures();
            let k = self.components[0]
                .enclosed_punctures(n)
                .map(|v| v.len())
                .unwrap_or(0);
            (2..=n - 1).contains(&k)
        }
    }

    /// Punctures enclosed by an odd number of components.
    pub fn enclosed_punctures(&self) -> Vec<usize> {
        let n = self.disk.punctures();
        let mut parity = vec![false; n + 1];
        for comp in &self.components {
            for p in comp.enclosed_punctures(n).expect("canonical component") {
                parity[p] = !parity[p];
            }
        }
        (1..=n).filter(|&p| parity[p]).collect()
    }

    /// Minimal crossing counts with every reference arc.
    pub fn crossings(&self) -> IntersectionVector {
        self.data.intersection_vector()
    }

    /// Convert back into a raw diagram (used by the twist surgery).
    pub fn to_diagram(&self) -> CurveDiagram {
        CurveDiagram {
            disk: self.disk,
            components: self.components.clone(),
        }
    }
}

impl std::fmt::Display for MultiCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::coords::coords_of(self).expect("nonzero"))
    }
}

/// The relaxed curve `c_{i,j}`: a round circle enclosing punctures `i..=j`,
/// meeting the diameter exactly twice.
pub fn make_relaxed(disk: PuncturedDisk, i: usize, j: usize) -> Result<MultiCurve> {
    let n = disk.punctures();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOutOfRange(format!(
            "relaxed curve needs 1 <= i < j <= {n}, got ({i}, {j})"
        )));
    }
    if (i, j) == (1, n) {
        return Err(Error::NonEssential(
            "the curve around all punctures is parallel to the boundary".into(),
        ));
    }
    let mut lambda = vec![0i64; n];
    let mut over = vec![0i64; n];
    let mut under = vec![0i64; n];
    lambda[i - 1] = -1;
    lambda[j - 1] = 1;
    for r in i..=j.saturating_sub(2) {
        over[r] = 1;
        under[r] = 1;
    }
    let curve = MultiCurve::from_region_data(disk, RegionData { n, lambda, over, under })?;
    debug_assert!((i..j).all(|w| curve.crossings().beta(w) == 2));
    Ok(curve)
}

/// Deterministic order on edges used when laying out strand positions.
pub(crate) fn edge_key(e: Event) -> (u8, usize, u8) {
    match e {
        Event::Chord { wall, side } => (0, wall, if side == Side::Upper { 0 } else { 1 }),
        Event::Diam { region, east } => (1, region, u8::from(east)),
    }
}

/// Ordered event references along every edge of the complex.
pub(crate) type PositionMap = BTreeMap<(u8, usize, u8), Vec<(usize, usize)>>;
