//! Bigon removal on raw event cycles.
//!
//! Three rewriting moves drive every diagram to minimal position:
//!
//! * backtrack: two consecutive crossings of the same edge cancel;
//! * vertex pass: three consecutive crossings of distinct edges at one
//!   chord-diameter vertex wrap it and shrink to the single fourth edge;
//! * corner slide: a strand cutting the corner between a chord and the
//!   diameter piece east of its vertex is rerouted through the west piece.
//!
//! The first two strictly reduce the crossing count; the slide strictly
//! decreases the total diameter-piece index, so the combined rewriting
//! terminates. The cycle is kept as a doubly linked list with the face
//! before every event, so each move is constant-time and spliced twist
//! images of any size tighten in near-linear time. The scanning stage
//! afterwards certifies minimality against the chord-count profile.

use crate::curve::{Component, Event, Face, Side};
use crate::error::Result;

/// Edges meeting at the vertex where chord `w` crosses the diameter,
/// in the order north, east, south, west.
fn vertex_edges(w: usize) -> [Event; 4] {
    [
        Event::Chord { wall: w, side: Side::Upper },
        Event::Diam { region: w, east: false },
        Event::Chord { wall: w, side: Side::Lower },
        Event::Diam { region: w - 1, east: true },
    ]
}

fn vertex_of(e: Event, n: usize) -> Option<usize> {
    match e {
        Event::Chord { wall, .. } => Some(wall),
        Event::Diam { region, east: false } if region >= 1 => Some(region),
        Event::Diam { region, east: true } if region + 1 <= n - 1 => Some(region + 1),
        _ => None,
    }
}

struct Cycle {
    events: Vec<Event>,
    /// Face before each event.
    before: Vec<Face>,
    next: Vec<usize>,
    prev: Vec<usize>,
    alive: Vec<bool>,
    len: usize,
}

impl Cycle {
    fn new(comp: &Component) -> Result<Cycle> {
        let faces = comp.faces()?;
        let m = comp.events.len();
        Ok(Cycle {
            events: comp.events.clone(),
            before: faces,
            next: (0..m).map(|i| (i + 1) % m).collect(),
            prev: (0..m).map(|i| (i + m - 1) % m).collect(),
            alive: vec![true; m],
            len: m,
        })
    }

    fn unlink2(&mut self, a: usize, b: usize) {
        debug_assert!(self.alive[a] && self.alive[b] && self.next[a] == b);
        let p = self.prev[a];
        let q = self.next[b];
        self.next[p] = q;
        self.prev[q] = p;
        self.alive[a] = false;
        self.alive[b] = false;
        self.len -= 2;
    }

    fn into_component(self) -> Option<Component> {
        if self.len == 0 {
            return None;
        }
        let start_idx = (0..self.alive.len()).find(|&i| self.alive[i])?;
        let mut events = Vec::with_capacity(self.len);
        let mut i = start_idx;
        loop {
            events.push(self.events[i]);
            i = self.next[i];
            if i == start_idx {
                break;
            }
        }
        Some(Component { start: self.before[start_idx], events })
    }
}

/// Backtrack at `i`: `i` and its successor cross the same edge.
fn try_backtrack(c: &mut Cycle, i: usize) -> bool {
    let j = c.next[i];
    if j == i || c.events[i] != c.events[j] {
        return false;
    }
    c.unlink2(i, j);
    true
}

/// Vertex pass at `i`: `i` and the two following events wrap one vertex.
fn try_vertex_pass(c: &mut Cycle, i: usize, n: usize) -> bool {
    if c.len < 3 {
        return false;
    }
    let j = c.next[i];
    let k = c.next[j];
    if j == i || k == i {
        return false;
    }
    let (e0, e1, e2) = (c.events[i], c.events[j], c.events[k]);
    if e0 == e1 || e1 == e2 || e0 == e2 {
        return false;
    }
    let Some(w) = vertex_of(e1, n) else { return false };
    let edges = vertex_edges(w);
    if !(edges.contains(&e0) && edges.contains(&e1) && edges.contains(&e2)) {
        return false;
    }
    let fourth = *edges
        .iter()
        .find(|e| **e != e0 && **e != e1 && **e != e2)
        .expect("fourth vertex edge");
    // Keep node i, rewrite it to the fourth edge, drop j and k. The face
    // before i is unchanged and so is the face after k.
    debug_assert_eq!(
        fourth.cross(c.before[i]),
        Some(c.events[k].cross(c.before[k]).unwrap()),
        "vertex pass must join the outer faces directly"
    );
    c.events[i] = fourth;
    c.unlink2(j, k);
    true
}

/// West-normalizing corner slide at `i`: the pair crosses a chord and the
/// diameter piece east of its vertex.
fn try_corner_slide(c: &mut Cycle, i: usize, n: usize) -> bool {
    let j = c.next[i];
    if j == i {
        return false;
    }
    let (a, b) = (c.events[i], c.events[j]);
    let hit = match (a, b) {
        (Event::Chord { wall, side }, Event::Diam { region, east: false })
            if region == wall && wall <= n - 1 =>
        {
            Some((wall, side, true))
        }
        (Event::Diam { region, east: false }, Event::Chord { wall, side })
            if region == wall && wall <= n - 1 =>
        {
            Some((wall, side, false))
        }
        _ => None,
    };
    let Some((wall, side, chord_first)) = hit else { return false };
    let new_chord = Event::Chord { wall, side: side.flip() };
    let new_diam = Event::Diam { region: wall - 1, east: true };
    // The strand passes the vertex on the other side of the diameter; the
    // faces before `i` and after `j` stay, the middle face flips sides and
    // moves one region west.
    if chord_first {
        c.events[i] = new_diam;
        c.events[j] = new_chord;
        let f = c.before[i];
        debug_assert_eq!(f.region, wall - 1);
        c.before[j] = Face { region: wall - 1, side: f.side.flip() };
    } else {
        c.events[i] = new_chord;
        c.events[j] = new_diam;
        let f = c.before[i];
        debug_assert_eq!(f.region, wall);
        c.before[j] = Face { region: wall - 1, side: f.side };
    }
    true
}

fn tighten_one(comp: &Component, n: usize) -> Result<Option<Component>> {
    let mut c = Cycle::new(comp)?;
    // Worklist of node indices whose neighborhood may admit a move.
    let mut work: Vec<usize> = (0..c.events.len()).rev().collect();
    let mut queued = vec![true; c.events.len()];
    while let Some(i) = work.pop() {
        queued[i] = false;
        if !c.alive[i] || c.len == 0 {
            continue;
        }
        let mut touched = false;
        if try_backtrack(&mut c, i) {
            touched = true;
        } else if try_vertex_pass(&mut c, i, n) {
            touched = true;
        } else if try_corner_slide(&mut c, i, n) {
            touched = true;
        }
        if touched && c.len > 0 {
            // Requeue the local neighborhood.
            let mut j = if c.alive[i] { i } else { c.next[c.prev[i]] };
            j = c.prev[c.prev[j]];
            for _ in 0..5 {
                if c.alive[j] && !queued[j] {
                    queued[j] = true;
                    work.push(j);
                }
                j = c.next[j];
            }
        }
    }
    Ok(c.into_component())
}

/// Drive all components to minimal position, dropping null-homotopic ones.
pub(crate) fn tighten_components(comps: &mut Vec<Component>) -> Result<()> {
    let n = max_region(comps) + 1;
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps.iter() {
        if let Some(t) = tighten_one(comp, n)? {
            out.push(t);
        }
    }
    *comps = out;
    Ok(())
}

fn max_region(comps: &[Component]) -> usize {
    let mut max_region = 0;
    for c in comps {
        max_region = max_region.max(c.start.region);
        for e in &c.events {
            match *e {
                Event::Chord { wall, .. } => max_region = max_region.max(wall),
                Event::Diam { region, .. } => max_region = max_region.max(region),
            }
        }
    }
    max_region
}
