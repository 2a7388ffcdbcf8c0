//! Canonical taut diagram built from per-region data.
//!
//! Each region carries loops hugging its puncture (innermost) and traverses
//! passing it above or below (stacked outside). The two sides of a wall must
//! agree on how many strands cross it above the diameter; the slack is
//! absorbed by rotating loops (sliding a loop's end across its puncture so
//! both ends sit on one side of the diameter, at the cost of one extra
//! diameter crossing) and, where no loop blocks the way, by hooking a
//! traverse end (an extra diameter crossing right next to the wall).
//! Left loops block ascents east of the puncture and right loops block
//! everything west of it, which dictates the admissible adjustments. The
//! expansion also fixes the strand order along every edge; later stages use
//! those positions to superpose curves deterministically.

use std::collections::HashMap;

use crate::curve::{edge_key, Component, Event, Face, PositionMap, RegionData, Side};
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Over,
    Under,
    Loop,
}

/// One arc end as seen from a wall slot. For traverses `end` distinguishes
/// west (0) and east (1); for loops it numbers the two ends along the strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Attach {
    region: usize,
    kind: Kind,
    index: i64,
    end: u8,
}

/// Ordered strand positions along every edge of the complex.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgeOrders {
    map: PositionMap,
}

impl EdgeOrders {
    pub fn along(&self, e: Event) -> &[(usize, usize)] {
        self.map.get(&edge_key(e)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// How the loops of one region sit relative to the diameter: `rot > 0` means
/// the innermost `rot` loops have both ends above it, `rot < 0` below.
#[derive(Debug, Clone, Default)]
struct Layout {
    beta: Vec<i64>,
    upper: Vec<i64>,
    loop_rot: Vec<i64>,
    /// Hooked traverse ends per region: overs hooked down / unders hooked up.
    ho_west: Vec<i64>,
    ho_east: Vec<i64>,
    hu_west: Vec<i64>,
    hu_east: Vec<i64>,
}

impl Layout {
    /// Number of up-rotated / down-rotated loops in a region.
    fn rot_up(&self, r: usize) -> i64 {
        self.loop_rot[r].max(0)
    }
    fn rot_dn(&self, r: usize) -> i64 {
        (-self.loop_rot[r]).max(0)
    }
}

fn layout(data: &RegionData) -> Result<Layout> {
    let n = data.n;
    let mut lay = Layout {
        beta: data.beta_vec(),
        upper: vec![0; n + 1],
        loop_rot: vec![0; n],
        ho_west: vec![0; n],
        ho_east: vec![0; n],
        hu_west: vec![0; n],
        hu_east: vec![0; n],
    };
    for w in 1..n {
        let (a, b) = (w - 1, w);
        let ll = (-data.lambda[a]).max(0); // left loops of a end on this wall
        let rl = data.lambda[b].max(0); // right loops of b end on this wall
        let (o_a, u_a) = (data.over[a], data.under[a]);
        let (o_b, _u_b) = (data.over[b], data.under[b]);
        // Strands crossing this wall above the diameter, per side, with all
        // loops in standard position (one end above, one below).
        let base_w = o_a + ll;
        let base_e = o_b + rl;
        let mut diff = base_w - base_e;
        if diff > 0 {
            // Too many western strands arrive above: rotate the west
            // region's loops down, then the east region's loops up, then
            // hook western overs down just west of the wall (the hooked
            // strand stays between the diameter and any loop, so this is
            // never blocked).
            let take = diff.min(ll);
            if take > 0 {
                lay.loop_rot[a] = -take;
            }
            diff -= take;
            let take = diff.min(rl);
            if take > 0 {
                lay.loop_rot[b] = take;
            }
            diff -= take;
            if diff > 0 {
                if diff > o_a {
                    return Err(Error::InvalidDiagram(format!(
                        "wall {w}: no layout absorbs the extra upper crossings"
                    )));
                }
                lay.ho_east[a] = diff;
                diff = 0;
            }
        } else if diff < 0 {
            // Mirror: raise the west side or lower the east side.
            let mut d = -diff;
            let take = d.min(ll);
            if take > 0 {
                lay.loop_rot[a] = take;
            }
            d -= take;
            let take = d.min(rl);
            if take > 0 {
                lay.loop_rot[b] = -take;
            }
            d -= take;
            if d > 0 {
                // Hook western unders up just west of the wall; with left
                // loops present the hooked strand nests inside them, so
                // this is never blocked.
                if d > u_a {
                    return Err(Error::InvalidDiagram(format!(
                        "wall {w}: no layout supplies the upper crossings"
                    )));
                }
                lay.hu_east[a] = d;
                d = 0;
            }
            let _ = d;
        }
        // Loop ends reaching this wall: only the west region's left loops
        // and the east region's right loops.
        let f = if data.lambda[a] < 0 {
            ll + lay.rot_up(a) - lay.rot_dn(a)
        } else {
            0
        };
        lay.upper[w] = (o_a - lay.ho_east[a]) + lay.hu_east[a] + f;
        let g = if data.lambda[b] > 0 {
            rl + lay.rot_up(b) - lay.rot_dn(b)
        } else {
            0
        };
        let east_usage = (o_b - lay.ho_west[b]) + lay.hu_west[b] + g;
        if lay.upper[w] != east_usage || lay.upper[w] < 0 || lay.upper[w] > lay.beta[w] {
            return Err(Error::InvalidDiagram(format!(
                "wall {w}: inconsistent upper split ({} vs {east_usage})",
                lay.upper[w]
            )));
        }
    }
    Ok(lay)
}

/// Attachment sequence (top to bottom) on one side of a wall.
fn wall_side(data: &RegionData, lay: &Layout, wall: usize, west_of_wall: bool) -> Vec<Attach> {
    let r = if west_of_wall { wall - 1 } else { wall };
    let (ho, hu) = if west_of_wall {
        (lay.ho_east[r], lay.hu_east[r])
    } else {
        (lay.ho_west[r], lay.hu_west[r])
    };
    let loops_here = if west_of_wall {
        (-data.lambda[r]).max(0)
    } else {
        data.lambda[r].max(0)
    };
    let tr_end = u8::from(west_of_wall); // traverse end index: east=1, west=0
    // Rotations concern the loops facing this wall; a region has loops of
    // one kind only.
    let (rot_up, rot_dn) = if loops_here > 0 {
        (lay.rot_up(r), lay.rot_dn(r))
    } else {
        (0, 0)
    };
    let rot = rot_up + rot_dn; // innermost `rot` loops are rotated
    let mut seq = Vec::with_capacity(lay.beta[wall] as usize);
    // Upper half: plain overs outermost first, then standard loop upper
    // ends outermost first, then the up-rotated nest as a palindrome (the
    // entering strand of an outer loop surrounds the whole inner nest),
    // then hooked unders innermost first.
    for i in (ho..data.over[r]).rev() {
        seq.push(Attach { region: r, kind: Kind::Over, index: i, end: tr_end });
    }
    for k in (rot..loops_here).rev() {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 0 });
    }
    for k in (0..rot_up).rev() {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 0 });
    }
    for k in 0..rot_up {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 1 });
    }
    for i in 0..hu {
        seq.push(Attach { region: r, kind: Kind::Under, index: i, end: tr_end });
    }
    // Lower half: hooked overs outermost first, then the down-rotated nest
    // as a palindrome (shallowest first), then standard loop lower ends
    // innermost first, then plain unders innermost first.
    for i in (0..ho).rev() {
        seq.push(Attach { region: r, kind: Kind::Over, index: i, end: tr_end });
    }
    for k in (0..rot_dn).rev() {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 1 });
    }
    for k in 0..rot_dn {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 0 });
    }
    for k in rot..loops_here {
        seq.push(Attach { region: r, kind: Kind::Loop, index: k, end: 1 });
    }
    for i in hu..data.under[r] {
        seq.push(Attach { region: r, kind: Kind::Under, index: i, end: tr_end });
    }
    debug_assert_eq!(seq.len() as i64, lay.beta[wall]);
    seq
}

/// Crossing order along the two diameter pieces of a region, west to east.
/// Every loop crosses the piece next to its wall opening when rotated and
/// the far piece always; hooks sit outside the loop nest.
fn diam_orders(
    data: &RegionData,
    lay: &Layout,
    r: usize,
) -> (Vec<(Kind, i64)>, Vec<(Kind, i64)>) {
    let left_loops = (-data.lambda[r]).max(0);
    let right_loops = data.lambda[r].max(0);
    let mut west = Vec::new();
    let mut east = Vec::new();
    // West piece: hooks (outermost body first), then loop crossings with the
    // outermost loop westmost.
    for i in (0..lay.ho_west[r]).rev() {
        west.push((Kind::Over, i));
    }
    for i in (0..lay.hu_west[r]).rev() {
        west.push((Kind::Under, i));
    }
    for k in (0..left_loops).rev() {
        west.push((Kind::Loop, k)); // cap or rotation crossing
    }
    for k in (0..right_loops).rev() {
        if k < lay.rot_up(r) + lay.rot_dn(r) {
            west.push((Kind::Loop, k)); // rotation crossing west of the puncture
        }
    }
    // East piece: loop crossings innermost first, then hooks. Hooks only
    // coexist with fully rotated loops, whose arms stop short of the wall,
    // so a hook east of every loop crossing is never obstructed.
    for k in 0..right_loops {
        east.push((Kind::Loop, k));
    }
    for k in 0..left_loops {
        if k < lay.rot_up(r) + lay.rot_dn(r) {
            east.push((Kind::Loop, k));
        }
    }
    for i in 0..lay.ho_east[r] {
        east.push((Kind::Over, i));
    }
    for i in 0..lay.hu_east[r] {
        east.push((Kind::Under, i));
    }
    (west, east)
}

/// Expand region data into canonical components with edge positions.
pub(crate) fn expand(
    disk: PuncturedDisk,
    data: &RegionData,
) -> Result<(Vec<Component>, EdgeOrders)> {
    let n = disk.punctures();
    debug_assert_eq!(n, data.n);
    let lay = layout(data)?;

    let mut west_att: Vec<Vec<Attach>> = vec![Vec::new(); n];
    let mut east_att: Vec<Vec<Attach>> = vec![Vec::new(); n];
    // (region, kind, index, end) -> (wall, slot)
    let mut slot_of: HashMap<(usize, Kind, i64, u8), (usize, usize)> = HashMap::new();
    for w in 1..n {
        let west = wall_side(data, &lay, w, true);
        let east = wall_side(data, &lay, w, false);
        for (s, att) in west.iter().enumerate() {
            slot_of.insert((att.region, att.kind, att.index, att.end), (w, s));
        }
        for (s, att) in east.iter().enumerate() {
            slot_of.insert((att.region, att.kind, att.index, att.end), (w, s));
        }
        west_att[w] = west;
        east_att[w] = east;
    }

    // (region, kind, index, east_piece) -> position on the diameter piece.
    let mut diam_pos: HashMap<(usize, Kind, i64, bool), usize> = HashMap::new();
    for r in 0..n {
        let (west, east) = diam_orders(data, &lay, r);
        for (p, &(k, i)) in west.iter().enumerate() {
            diam_pos.insert((r, k, i, false), p);
        }
        for (p, &(k, i)) in east.iter().enumerate() {
            diam_pos.insert((r, k, i, true), p);
        }
    }

    let slot_side = |w: usize, s: usize| -> Side {
        if (s as i64) < lay.upper[w] {
            Side::Upper
        } else {
            Side::Lower
        }
    };

    let mut visited: Vec<Vec<bool>> = (0..n)
        .map(|w| vec![false; if w == 0 { 0 } else { lay.beta[w] as usize }])
        .collect();
    let mut raw: Vec<(Face, Vec<Event>, Vec<usize>)> = Vec::new();

    for w0 in 1..n {
        for s0 in 0..lay.beta[w0] as usize {
            if visited[w0][s0] {
                continue;
            }
            let mut events: Vec<Event> = Vec::new();
            let mut positions: Vec<usize> = Vec::new();
            let start_face = Face { region: w0 - 1, side: slot_side(w0, s0) };
            let (mut w, mut s, mut east_bound) = (w0, s0, true);
            let mut guard = 0usize;
            loop {
                guard += 1;
                if guard > 4 * slot_of.len() + 8 {
                    return Err(Error::InvalidDiagram(
                        "internal: strand trace does not close".into(),
                    ));
                }
                visited[w][s] = true;
                events.push(Event::Chord { wall: w, side: slot_side(w, s) });
                positions.push(s);
                let att = if east_bound { &east_att[w][s] } else { &west_att[w][s] };
                let r = att.region;
                match att.kind {
                    Kind::Over | Kind::Under => {
                        let hooked_w = match att.kind {
                            Kind::Over => att.index < lay.ho_west[r],
                            Kind::Under => att.index < lay.hu_west[r],
                            Kind::Loop => unreachable!(),
                        };
                        let hooked_e = match att.kind {
                            Kind::Over => att.index < lay.ho_east[r],
                            Kind::Under => att.index < lay.hu_east[r],
                            Kind::Loop => unreachable!(),
                        };
                        let mut pieces: Vec<bool> = Vec::new();
                        if east_bound {
                            if hooked_w {
                                pieces.push(false);
                            }
                            if hooked_e {
                                pieces.push(true);
                            }
                        } else {
                            if hooked_e {
                                pieces.push(true);
                            }
                            if hooked_w {
                                pieces.push(false);
                            }
                        }
                        for east_piece in pieces {
                            events.push(Event::Diam { region: r, east: east_piece });
                            positions.push(diam_pos[&(r, att.kind, att.index, east_piece)]);
                        }
                        let other_end = 1 - att.end;
                        let (nw, ns) = slot_of[&(r, att.kind, att.index, other_end)];
                        w = nw;
                        s = ns;
                    }
                    Kind::Loop => {
                        // Loops visit the far piece always and the near piece
                        // when rotated; the near piece is the one next to the
                        // wall the loop opens toward.
                        let right = data.lambda[r] > 0;
                        let rotated =
                            att.index < lay.rot_up(r) + lay.rot_dn(r);
                        // Piece order along the strand from end 0 to end 1.
                        let mut pieces: Vec<bool> = if right {
                            if rotated {
                                vec![true, false]
                            } else {
                                vec![true]
                            }
                        } else if rotated {
                            vec![false, true]
                        } else {
                            vec![false]
                        };
                        if att.end == 1 {
                            pieces.reverse();
                        }
                        for east_piece in pieces {
                            events.push(Event::Diam { region: r, east: east_piece });
                            positions.push(diam_pos[&(r, Kind::Loop, att.index, east_piece)]);
                        }
                        let other_end = 1 - att.end;
                        let (nw, ns) = slot_of[&(r, Kind::Loop, att.index, other_end)];
                        debug_assert_eq!(nw, w);
                        s = ns;
                        east_bound = !east_bound;
                    }
                }
                if w == w0 && s == s0 && east_bound {
                    break;
                }
            }
            raw.push((start_face, events, positions));
        }
    }

    // Canonicalize each component, carrying positions along.
    let mut canon: Vec<(Component, Vec<(Event, usize)>)> = Vec::new();
    for (start, events, positions) in raw {
        let comp = Component { start, events };
        let tagged: Vec<(Event, usize)> = comp
            .events
            .iter()
            .copied()
            .zip(positions.iter().copied())
            .collect();
        let mut best: Option<(Component, Vec<(Event, usize)>)> = None;
        for reversed in [false, true] {
            let (cand, tags) = if reversed {
                let mut t = tagged.clone();
                t.reverse();
                (comp.reversed(), t)
            } else {
                (comp.clone(), tagged.clone())
            };
            let cand_faces = cand.faces()?;
            let m = cand.events.len();
            for r in 0..m {
                let mut events = cand.events.clone();
                events.rotate_left(r);
                let rot = Component { start: cand_faces[r], events };
                if best
                    .as_ref()
                    .map_or(true, |(b, _)| (&rot.events, rot.start) < (&b.events, b.start))
                {
                    let mut t = tags.clone();
                    t.rotate_left(r);
                    best = Some((rot, t));
                }
            }
        }
        canon.push(best.expect("nonempty component"));
    }
    canon.sort_by(|(a, _), (b, _)| {
        (a.leftmost_segment(), &a.events, a.start)
            .cmp(&(b.leftmost_segment(), &b.events, b.start))
    });

    let mut keyed: Vec<(Event, usize, (usize, usize))> = Vec::new();
    for (c, (comp, tags)) in canon.iter().enumerate() {
        for (k, &(ev, pos)) in tags.iter().enumerate() {
            debug_assert_eq!(ev, comp.events[k]);
            keyed.push((ev, pos, (c, k)));
        }
    }
    keyed.sort_by_key(|&(ev, pos, _)| (edge_key(ev), pos));
    let mut map: PositionMap = PositionMap::new();
    for (ev, _pos, r) in keyed {
        map.entry(edge_key(ev)).or_default().push(r);
    }

    let comps: Vec<Component> = canon.into_iter().map(|(c, _)| c).collect();
    Ok((comps, EdgeOrders { map }))
}
