//! Dehn twists and twist words acting on multicurves.
//!
//! A twist is performed as surgery on the curve model: superpose the target
//! with the twisting curve, and at every crossing divert the target along
//! `|p|` full parallel copies of the twisting curve before letting it
//! continue; the sign of `p` picks the winding direction. Tightening the
//! spliced diagram yields the canonical image. Positive powers are the
//! right-handed twist under the crate's orientation convention.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{Component, CurveDiagram, MultiCurve};
use crate::error::{Error, Result};
use crate::loops::loops_oracle;
use crate::overlay::overlay;

/// A word in the twist generators `t_1, t_2, ...` with integer exponents.
///
/// Letters are `(generator index, exponent)`; the freely reduced form has no
/// adjacent equal generators and no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct TwistWord {
    letters: Vec<(usize, i64)>,
}

impl TwistWord {
    pub fn new(letters: Vec<(usize, i64)>) -> TwistWord {
        free_reduce(&TwistWord { letters })
    }

    pub fn identity() -> TwistWord {
        TwistWord { letters: Vec::new() }
    }

    pub fn single(gen: usize, exp: i64) -> TwistWord {
        TwistWord::new(vec![(gen, exp)])
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TwistWord::new(letters)
    }

    /// Uniform random freely reduced word of the given letter length.
    pub fn sample<R: Rng>(rng: &mut R, generators: usize, length: usize) -> TwistWord {
        assert!(generators > 0);
        let mut letters: Vec<(usize, i64)> = Vec::with_capacity(length);
        for _ in 0..length {
            loop {
                let g = rng.gen_range(0..generators);
                let e: i64 = if rng.gen::<bool>() { 1 } else { -1 };
                if let Some(&(lg, le)) = letters.last() {
                    if lg == g && le.signum() != e {
                        continue; // would cancel
                    }
                }
                match letters.last_mut() {
                    Some((lg, le)) if *lg == g => *le += e,
                    _ => letters.push((g, e)),
                }
                break;
            }
        }
        TwistWord::new(letters)
    }
}

impl std::fmt::Display for TwistWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "t{}", g + 1)?;
            } else {
                write!(f, "t{}^{}", g + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Freely reduced normal form: merge adjacent powers, drop zeros. Idempotent.
pub fn free_reduce(word: &TwistWord) -> TwistWord {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(word.letters.len());
    for &(g, e) in &word.letters {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    TwistWord { letters: out }
}

/// The image `t^p_about(target)`, computed by curve surgery and tightening.
/// Disjoint curves are left unchanged; `p = 0` is rejected.
pub fn dehn_twist(target: &MultiCurve, about: &MultiCurve, power: i64) -> Result<MultiCurve> {
    if power == 0 {
        return Err(Error::ZeroPower);
    }
    if target.disk() != about.disk() {
        return Err(Error::DiskMismatch(
            target.disk().punctures(),
            about.disk().punctures(),
        ));
    }
    if !about.is_essential() {
        return Err(Error::Contract(
            "twists are taken about single essential curves".into(),
        ));
    }
    let ov = overlay(about, target)?;
    if ov.total == 0 {
        return Ok(target.clone());
    }
    let a_events = &about.raw_components()[0].events;
    let la = a_events.len();
    let reps = power.unsigned_abs() as usize;
    let mut comps = Vec::with_capacity(target.component_count());
    for (c, comp) in target.raw_components().iter().enumerate() {
        let m = comp.events.len();
        let mut events = Vec::with_capacity(m + ov.total as usize * reps * la);
        for g in 0..m {
            events.push(comp.events[g]);
            for crossing in &ov.crossings[c][g] {
                let forward = crossing.positive == (power > 0);
                for _ in 0..reps {
                    if forward {
                        for t in 1..=la {
                            events.push(a_events[(crossing.a_gap + t) % la]);
                        }
                    } else {
                        for t in 0..la {
                            events.push(a_events[(crossing.a_gap + la - t) % la]);
                        }
                    }
                }
            }
        }
        comps.push(Component { start: comp.start, events });
    }
    CurveDiagram::new(target.disk(), comps)?.tighten()
}

/// Left-to-right composition with the rightmost letter acting first.
pub fn apply_word(
    word: &TwistWord,
    seed: &MultiCurve,
    generators: &[MultiCurve],
) -> Result<MultiCurve> {
    let mut cur = seed.clone();
    for &(g, e) in word.letters.iter().rev() {
        let about = generators.get(g).ok_or_else(|| {
            Error::UnboundGenerator(format!("t{} (family has {})", g + 1, generators.len()))
        })?;
        cur = dehn_twist(&cur, about, e)?;
    }
    Ok(cur)
}

/// Outcome of checking the twist-invariance of opposite large loops.
#[derive(Debug, Clone, Serialize)]
pub struct Prop1Report {
    pub region: (usize, usize),
    pub powers_checked: Vec<i64>,
    pub violations: Vec<String>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For curves with `R_{i,j}(c1) != 0` and `L_{i,j}(c2) != 0`, every nonzero
/// power must keep `R_{i,j}(t^p_c1(c2)) != 0` and `L_{i,j}(t^p_c2(c1)) != 0`.
pub fn check_prop1(
    c1: &MultiCurve,
    c2: &MultiCurve,
    region: (usize, usize),
    powers: impl IntoIterator<Item = i64>,
) -> Result<Prop1Report> {
    let (i, j) = region;
    let (r1, _) = loops_oracle(c1, i, j)?;
    let (_, l2) = loops_oracle(c2, i, j)?;
    if r1 == 0 || l2 == 0 {
        return Err(Error::NotOpposite(i, j));
    }
    let mut report = Prop1Report {
        region,
        powers_checked: Vec::new(),
        violations: Vec::new(),
    };
    for p in powers {
        if p == 0 {
            continue;
        }
        report.powers_checked.push(p);
        let image2 = dehn_twist(c2, c1, p)?;
        let (r_img, _) = loops_oracle(&image2, i, j)?;
        if r_img == 0 {
            report
                .violations
                .push(format!("R_{{{i},{j}}}(t^{p}(c2)) vanished"));
        }
        let image1 = dehn_twist(c1, c2, p)?;
        let (_, l_img) = loops_oracle(&image1, i, j)?;
        if l_img == 0 {
            report
                .violations
                .push(format!("L_{{{i},{j}}}(t^{p}(c1)) vanished"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::coords_of;
    use crate::curve::make_relaxed;
    use crate::disk::PuncturedDisk;

    #[test]
    fn free_reduction() {
        let w = TwistWord::new(vec![(0, 1), (1, 1), (1, -1), (2, 1)]);
        assert_eq!(w.letters(), &[(0, 1), (2, 1)]);
        let w = TwistWord::new(vec![(0, 1), (0, -1)]);
        assert!(w.is_identity());
        let already = TwistWord::new(vec![(0, 2), (1, -1)]);
        assert_eq!(free_reduce(&already), already);
    }

    #[test]
    fn twist_fixes_its_own_curve() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c = make_relaxed(d5, 1, 3).unwrap();
        for p in [1, -1, 3] {
            assert_eq!(dehn_twist(&c, &c, p).unwrap(), c);
        }
    }

    #[test]
    fn twist_fixes_disjoint_curves() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c = make_relaxed(d5, 1, 3).unwrap();
        let d = make_relaxed(d5, 4, 5).unwrap();
        assert_eq!(dehn_twist(&d, &c, 2).unwrap(), d);
    }

    #[test]
    fn inverse_twist_returns() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c1 = make_relaxed(d5, 1, 3).unwrap();
        let c2 = make_relaxed(d5, 2, 4).unwrap();
        for p in [1, -1, 2] {
            let once = dehn_twist(&c2, &c1, p).unwrap();
            assert_ne!(coords_of(&once).unwrap(), coords_of(&c2).unwrap());
            let back = dehn_twist(&once, &c1, -p).unwrap();
            assert_eq!(back, c2, "power {p}");
        }
    }

    #[test]
    fn zero_power_rejected() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c1 = make_relaxed(d5, 1, 3).unwrap();
        assert_eq!(dehn_twist(&c1, &c1, 0).unwrap_err(), Error::ZeroPower);
    }

    #[test]
    fn empty_word_is_identity() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c = make_relaxed(d5, 1, 3).unwrap();
        let out = apply_word(&TwistWord::identity(), &c, &[]).unwrap();
        assert_eq!(out, c);
    }
}
