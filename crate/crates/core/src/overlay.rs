//! Deterministic superposition of two canonical curves.
//!
//! Both curves are taut with a fixed strand order along every edge; placing
//! the second curve's crossings after the first's on each edge gives a
//! definite transverse position. Within a face, two passages cross exactly
//! when their endpoints alternate around the face boundary, so the crossing
//! set, the order of crossings along each strand, and the local orientation
//! of each crossing are all combinatorial.

use std::collections::HashMap;

use crate::curve::{edge_key, Event, Face, MultiCurve, Side};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Tag {
    A,
    D,
}

/// One crossing of a D-passage with an A-passage.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Crossing {
    /// Gap index of the crossed passage on the (single) A component.
    pub a_gap: usize,
    /// True when A runs from the left to the right of D's travel direction.
    pub positive: bool,
}

#[derive(Debug, Default)]
pub(crate) struct Overlay {
    /// `crossings[comp][gap]`: crossings along that D-passage, in travel order.
    pub crossings: Vec<Vec<Vec<Crossing>>>,
    pub total: i64,
}

/// Key of one event instance.
type Inst = (Tag, usize, usize);

fn face_cycle_edges(n: usize, f: Face) -> Vec<(Event, bool)> {
    // Counterclockwise boundary walk; the bool says whether the stored
    // order along the edge is traversed forward.
    let r = f.region;
    match f.side {
        Side::Upper => {
            let mut v = vec![
                (Event::Diam { region: r, east: false }, true),
                (Event::Diam { region: r, east: true }, true),
            ];
            if r + 1 <= n - 1 {
                v.push((Event::Chord { wall: r + 1, side: Side::Upper }, false));
            }
            if r >= 1 {
                v.push((Event::Chord { wall: r, side: Side::Upper }, true));
            }
            v
        }
        Side::Lower => {
            let mut v = Vec::new();
            if r >= 1 {
                v.push((Event::Chord { wall: r, side: Side::Lower }, true));
            }
            if r + 1 <= n - 1 {
                v.push((Event::Chord { wall: r + 1, side: Side::Lower }, false));
            }
            v.push((Event::Diam { region: r, east: true }, false));
            v.push((Event::Diam { region: r, east: false }, false));
            v
        }
    }
}

fn in_open_interval(len: usize, from: usize, to: usize, q: usize) -> bool {
    debug_assert!(from != to && q != from && q != to);
    if from < to {
        from < q && q < to
    } else {
        q > from || q < to
    }
}

/// Build the overlay of `d` over the single-component curve `a`.
pub(crate) fn overlay(a: &MultiCurve, d: &MultiCurve) -> Result<Overlay> {
    if a.disk() != d.disk() {
        return Err(Error::DiskMismatch(
            a.disk().punctures(),
            d.disk().punctures(),
        ));
    }
    if a.component_count() != 1 {
        return Err(Error::Contract(
            "overlay base must be a single curve".into(),
        ));
    }
    let n = a.disk().punctures();

    // Combined strand order per edge: A first, then D.
    let mut per_edge: HashMap<(u8, usize, u8), Vec<Inst>> = HashMap::new();
    let mut edges: Vec<Event> = Vec::new();
    for s in [Side::Upper, Side::Lower] {
        for w in 1..n {
            edges.push(Event::Chord { wall: w, side: s });
        }
    }
    for r in 0..n {
        edges.push(Event::Diam { region: r, east: false });
        edges.push(Event::Diam { region: r, east: true });
    }
    for e in &edges {
        let mut list: Vec<Inst> = Vec::new();
        for &(c, k) in a.edge_orders().along(*e) {
            list.push((Tag::A, c, k));
        }
        for &(c, k) in d.edge_orders().along(*e) {
            list.push((Tag::D, c, k));
        }
        if !list.is_empty() {
            per_edge.insert(edge_key(*e), list);
        }
    }

    // Rank of every event instance around every face boundary.
    let mut rank: HashMap<(Face, Inst), usize> = HashMap::new();
    let mut cycle_len: HashMap<Face, usize> = HashMap::new();
    for r in 0..n {
        for side in [Side::Upper, Side::Lower] {
            let f = Face { region: r, side };
            let mut next = 0usize;
            for (e, forward) in face_cycle_edges(n, f) {
                if let Some(list) = per_edge.get(&edge_key(e)) {
                    let iter: Box<dyn Iterator<Item = &Inst>> = if forward {
                        Box::new(list.iter())
                    } else {
                        Box::new(list.iter().rev())
                    };
                    for inst in iter {
                        rank.insert((f, *inst), next);
                        next += 1;
                    }
                }
            }
            cycle_len.insert(f, next);
        }
    }

    // Passages grouped per face.
    let gather = |curve: &MultiCurve, tag: Tag| -> Result<HashMap<Face, Vec<(usize, usize, usize, usize)>>> {
        // (comp, gap, rank_start, rank_end)
        let mut out: HashMap<Face, Vec<(usize, usize, usize, usize)>> = HashMap::new();
        for (c, comp) in curve.raw_components().iter().enumerate() {
            let faces = comp.faces()?;
            let m = comp.events.len();
            for g in 0..m {
                let f = comp.events[g].cross(faces[g]).unwrap();
                let u = rank[&(f, (tag, c, g))];
                let v = rank[&(f, (tag, c, (g + 1) % m))];
                out.entry(f).or_default().push((c, g, u, v));
            }
        }
        Ok(out)
    };
    let a_pass = gather(a, Tag::A)?;
    let d_pass = gather(d, Tag::D)?;

    let mut crossings: Vec<Vec<Vec<Crossing>>> = d
        .raw_components()
        .iter()
        .map(|c| vec![Vec::new(); c.events.len()])
        .collect();
    let mut total = 0i64;

    for (f, dlist) in &d_pass {
        let Some(alist) = a_pass.get(f) else { continue };
        let len = cycle_len[f];
        for &(dc, dg, x1, x2) in dlist {
            let mut hits: Vec<(usize, usize, usize)> = Vec::new(); // (a_gap, y1, y2)
            for &(_ac, ag, y1, y2) in alist {
                if in_open_interval(len, x1, x2, y1) != in_open_interval(len, x1, x2, y2) {
                    hits.push((ag, y1, y2));
                }
            }
            if hits.is_empty() {
                continue;
            }
            // Order along D's travel from x1: P precedes Q when Q lies
            // entirely on the x2 side of P. The crossed chords are pairwise
            // disjoint and all separate x1 from x2, so this is total.
            hits.sort_by(|&(_, p1, p2), &(_, q1, q2)| {
                let x1_side_p = in_open_interval(len, p1, p2, x1);
                // Interval of P containing x1: (p1,p2) if x1_side_p else (p2,p1).
                let (s, t) = if x1_side_p { (p1, p2) } else { (p2, p1) };
                let q_on_x1_side =
                    in_open_interval(len, s, t, q1) || in_open_interval(len, s, t, q2);
                if q_on_x1_side {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                }
            });
            total += hits.len() as i64;
            for (ag, y1, _y2) in hits {
                // Positive when A's start endpoint sits on D's left, i.e.
                // inside the interval from x1 to x2.
                let positive = in_open_interval(len, x1, x2, y1);
                crossings[dc][dg].push(Crossing { a_gap: ag, positive });
            }
        }
    }

    Ok(Overlay { crossings, total })
}


/// Diagnostic: passage pairs of one curve that alternate under the rank
/// assignment. Canonical curves must produce none; the constructor checks
/// this in debug builds.
pub(crate) fn self_check(cur: &MultiCurve) -> Vec<String> {
    let n = cur.disk().punctures();
    let mut per_edge: HashMap<(u8, usize, u8), Vec<Inst>> = HashMap::new();
    for s in [Side::Upper, Side::Lower] {
        for w in 1..n {
            let e = Event::Chord { wall: w, side: s };
            let list: Vec<Inst> = cur
                .edge_orders()
                .along(e)
                .iter()
                .map(|&(c, k)| (Tag::D, c, k))
                .collect();
            if !list.is_empty() {
                per_edge.insert(edge_key(e), list);
            }
        }
    }
    for r in 0..n {
        for east in [false, true] {
            let e = Event::Diam { region: r, east };
            let list: Vec<Inst> = cur
                .edge_orders()
                .along(e)
                .iter()
                .map(|&(c, k)| (Tag::D, c, k))
                .collect();
            if !list.is_empty() {
                per_edge.insert(edge_key(e), list);
            }
        }
    }
    let mut rank: HashMap<(Face, Inst), usize> = HashMap::new();
    let mut cycle_len: HashMap<Face, usize> = HashMap::new();
    for r in 0..n {
        for side in [Side::Upper, Side::Lower] {
            let f = Face { region: r, side };
            let mut next = 0usize;
            for (e, forward) in face_cycle_edges(n, f) {
                if let Some(list) = per_edge.get(&edge_key(e)) {
                    let iter: Box<dyn Iterator<Item = &Inst>> = if forward {
                        Box::new(list.iter())
                    } else {
                        Box::new(list.iter().rev())
                    };
                    for inst in iter {
                        rank.insert((f, *inst), next);
                        next += 1;
                    }
                }
            }
            cycle_len.insert(f, next);
        }
    }
    let mut passages: HashMap<Face, Vec<(usize, usize, usize, usize)>> = HashMap::new();
    for (c, comp) in cur.raw_components().iter().enumerate() {
        let Ok(faces) = comp.faces() else {
            return vec!["invalid face path".into()];
        };
        let m = comp.events.len();
        for g in 0..m {
            let f = comp.events[g].cross(faces[g]).unwrap();
            let u = rank[&(f, (Tag::D, c, g))];
            let v = rank[&(f, (Tag::D, c, (g + 1) % m))];
            passages.entry(f).or_default().push((c, g, u, v));
        }
    }
    let mut bad = Vec::new();
    for (f, list) in &passages {
        let len = cycle_len[f];
        for (x, &(c1, g1, u1, v1)) in list.iter().enumerate() {
            for &(c2, g2, u2, v2) in list.iter().skip(x + 1) {
                if in_open_interval(len, u1, v1, u2) != in_open_interval(len, u1, v1, v2) {
                    bad.push(format!(
                        "face {f:?}: passage ({c1},{g1}) ranks ({u1},{v1}) x \
                         ({c2},{g2}) ranks ({u2},{v2})"
                    ));
                }
            }
        }
    }
    bad
}
