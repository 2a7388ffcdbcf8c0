//! Extraction of per-region structure from a tightened diagram.
//!
//! Splitting each component at its chord crossings yields runs, each of
//! which stays inside a single region. In minimal position a run is either a
//! loop (both ends on the same wall, passing the puncture once on each side)
//! or a traverse (one end on each wall, passing the puncture on exactly one
//! side). Any other shape, or a loop count disagreeing with the chord-count
//! difference, means tightening failed and is reported as an error.

use crate::curve::{Component, Event, RegionData, Side};
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};

/// One maximal chord-free stretch of a component, with its flanking chords.
pub(crate) struct Run {
    pub region: usize,
    /// Wall of the chord crossed entering the run.
    pub wall_in: usize,
    /// Wall of the chord crossed leaving the run.
    pub wall_out: usize,
    /// Ray crossings above / below the region's puncture.
    pub over: i64,
    pub under: i64,
}

/// Decompose a component into runs. The component must cross some chord.
pub(crate) fn runs_of(comp: &Component) -> Result<Vec<Run>> {
    let faces = comp.faces()?;
    let m = comp.events.len();
    let chord_positions: Vec<usize> = (0..m)
        .filter(|&k| matches!(comp.events[k], Event::Chord { .. }))
        .collect();
    if chord_positions.is_empty() {
        return Err(Error::InvalidDiagram(
            "component never crosses a chord".into(),
        ));
    }
    let mut runs = Vec::with_capacity(chord_positions.len());
    for (i, &k) in chord_positions.iter().enumerate() {
        let k_next = chord_positions[(i + 1) % chord_positions.len()];
        let Event::Chord { wall: wall_in, .. } = comp.events[k] else { unreachable!() };
        let Event::Chord { wall: wall_out, .. } = comp.events[k_next] else { unreachable!() };
        // Gap faces between the two chords all share one region.
        let first_gap = comp.events[k].cross(faces[k]).unwrap();
        let region = first_gap.region;
        let mut over = 0;
        let mut under = 0;
        // Walk the passages of the run: from event j to event j+1 within it.
        let mut j = k;
        loop {
            let jn = (j + 1) % m;
            let gap = comp.events[j].cross(faces[j]).unwrap();
            if gap.region != region {
                return Err(Error::InvalidDiagram(
                    "run wanders across regions without a chord crossing".into(),
                ));
            }
            // Does the passage from events[j] to events[jn] cross the
            // vertical ray at the region's puncture?
            let west = |e: Event| match e {
                Event::Chord { wall, .. } => wall == region,
                Event::Diam { east, .. } => !east,
            };
            if west(comp.events[j]) != west(comp.events[jn]) {
                match gap.side {
                    Side::Upper => over += 1,
                    Side::Lower => under += 1,
                }
            }
            if jn == k_next {
                break;
            }
            j = jn;
        }
        runs.push(Run { region, wall_in, wall_out, over, under });
    }
    Ok(runs)
}

/// Scan tightened components into coherent region data.
pub(crate) fn scan_region_data(
    disk: PuncturedDisk,
    comps: &[Component],
) -> Result<RegionData> {
    let n = disk.punctures();
    let mut lambda = vec![0i64; n];
    let mut over = vec![0i64; n];
    let mut under = vec![0i64; n];
    let mut left = vec![0i64; n];
    let mut right = vec![0i64; n];
    let mut beta = vec![0i64; n + 1];

    for comp in comps {
        for ev in &comp.events {
            if let Event::Chord { wall, .. } = ev {
                beta[*wall] += 1;
            }
        }
        for run in runs_of(comp)? {
            let r = run.region;
            match (run.over, run.under) {
                (1, 1) => {
                    // Loop: both flanking chords on the same wall.
                    if run.wall_in != run.wall_out {
                        return Err(Error::InvalidDiagram(
                            "loop-shaped run with ends on different walls".into(),
                        ));
                    }
                    if run.wall_in == r {
                        right[r] += 1;
                    } else if run.wall_in == r + 1 {
                        left[r] += 1;
                    } else {
                        return Err(Error::InvalidDiagram("run touches a far wall".into()));
                    }
                }
                (1, 0) => over[r] += 1,
                (0, 1) => under[r] += 1,
                _ => {
                    return Err(Error::InvalidDiagram(format!(
                        "tightening incomplete: run in region {r} passes the puncture \
                         {} times above and {} below",
                        run.over, run.under
                    )));
                }
            }
            if run.wall_in != run.wall_out && {
                let lo = run.wall_in.min(run.wall_out);
                let hi = run.wall_in.max(run.wall_out);
                lo != r || hi != r + 1
            } {
                return Err(Error::InvalidDiagram("traverse run touches a far wall".into()));
            }
        }
    }

    for r in 0..n {
        if left[r] > 0 && right[r] > 0 {
            return Err(Error::InvalidDiagram(format!(
                "tightening incomplete: region {r} carries loops of both kinds"
            )));
        }
        lambda[r] = right[r] - left[r];
    }
    // Each beta count was incremented once per flanking run as well; the
    // direct count above is authoritative. Cross-check against the loop and
    // traverse tallies: this is the minimality certificate.
    let data = RegionData { n, lambda, over, under };
    data.validate()?;
    let expect = data.beta_vec();
    if expect != beta {
        return Err(Error::InvalidDiagram(format!(
            "tightening incomplete: chord counts {beta:?} do not match the \
             taut profile {expect:?}"
        )));
    }
    Ok(data)
}
