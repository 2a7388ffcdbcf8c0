//! The coordinate kernel: crossing vectors, the forward map, extended
//! entries, and the inverse map back to a canonical multicurve.

use serde::{Deserialize, Serialize};

use crate::curve::{MultiCurve, RegionData};
use crate::disk::PuncturedDisk;
use crate::error::{Error, Result};

/// Minimal crossing counts with every reference arc.
///
/// `alpha` holds the ray counts indexed from -1 to 2n-2 (the entries at
/// punctures 1 and n are the extended ones); `beta` holds the chord counts
/// `beta_0..beta_n` with zeros at the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionVector {
    n: usize,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

impl IntersectionVector {
    pub(crate) fn from_counts(
        n: usize,
        upper: Vec<i64>,
        lower: Vec<i64>,
        beta: Vec<i64>,
    ) -> IntersectionVector {
        let mut alpha = vec![0i64; 2 * n];
        for p in 1..=n {
            // The upward ray at puncture p carries index 2p-3, the downward
            // ray 2p-2; storage is offset by one to start at index -1.
            alpha[2 * p - 2] = upper[p - 1];
            alpha[2 * p - 1] = lower[p - 1];
        }
        IntersectionVector { n, alpha, beta }
    }

    pub fn new(n: usize, alpha: Vec<i64>, beta: Vec<i64>) -> Result<IntersectionVector> {
        if alpha.len() != 2 * n || beta.len() != n + 1 {
            return Err(Error::NotAMulticurve(
                "crossing vector has the wrong length".into(),
            ));
        }
        let v = IntersectionVector { n, alpha, beta };
        v.validate()?;
        Ok(v)
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    /// Crossing count with the ray `alpha_idx`, `-1 <= idx <= 2n-2`.
    pub fn alpha(&self, idx: isize) -> i64 {
        self.alpha[(idx + 1) as usize]
    }

    /// Crossing count with the chord `beta_w`, `0 <= w <= n`.
    pub fn beta(&self, w: usize) -> i64 {
        self.beta[w]
    }

    pub fn beta_vec(&self) -> Vec<i64> {
        self.beta.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&x| x == 0) && self.beta.iter().all(|&x| x == 0)
    }

    /// The structural invariants every taut multicurve satisfies.
    pub fn validate(&self) -> Result<()> {
        let n = self.n as isize;
        if self.alpha.iter().chain(self.beta.iter()).any(|&x| x < 0) {
            return Err(Error::NotAMulticurve("negative crossing count".into()));
        }
        if self.alpha(-1) != self.alpha(0) || self.alpha(2 * n - 3) != self.alpha(2 * n - 2) {
            return Err(Error::NotAMulticurve(
                "extended ray counts at the end punctures must pair up".into(),
            ));
        }
        if self.beta(0) != 0 || self.beta(self.n) != 0 {
            return Err(Error::NotAMulticurve("boundary chords are never crossed".into()));
        }
        for i in 1..=(self.n - 2) as isize {
            if (self.alpha(2 * i) - self.alpha(2 * i - 1)) % 2 != 0 {
                return Err(Error::NotAMulticurve(format!(
                    "ray parity fails at puncture {}",
                    i + 1
                )));
            }
        }
        for w in 0..self.n {
            if (self.beta[w] - self.beta[w + 1]) % 2 != 0 {
                return Err(Error::NotAMulticurve(format!(
                    "chord parity fails between walls {w} and {}",
                    w + 1
                )));
            }
        }
        Ok(())
    }

    /// Componentwise sum (crossing counts of a disjoint union add).
    pub fn sum(&self, other: &IntersectionVector) -> Result<IntersectionVector> {
        if self.n != other.n {
            return Err(Error::DiskMismatch(self.n, other.n));
        }
        Ok(IntersectionVector {
            n: self.n,
            alpha: self
                .alpha
                .iter()
                .zip(&other.alpha)
                .map(|(x, y)| x + y)
                .collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(x, y)| x + y).collect(),
        })
    }
}

/// The ordinary coordinate vector `(a_1..a_{n-2}; b_1..b_{n-2})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynnikovCoords {
    n: usize,
    a: Vec<i64>,
    b: Vec<i64>,
}

impl DynnikovCoords {
    pub fn new(n: usize, a: Vec<i64>, b: Vec<i64>) -> Result<DynnikovCoords> {
        if n < 3 || a.len() != n - 2 || b.len() != n - 2 {
            return Err(Error::NotAMulticurve(format!(
                "coordinate halves must each have length {} for {n} punctures",
                n.saturating_sub(2)
            )));
        }
        let c = DynnikovCoords { n, a, b };
        if c.is_zero() {
            return Err(Error::EmptyMulticurve);
        }
        Ok(c)
    }

    /// Parse a flat `[a_1..a_{n-2}, b_1..b_{n-2}]` array.
    pub fn from_flat(n: usize, flat: &[i64]) -> Result<DynnikovCoords> {
        if n < 3 || flat.len() != 2 * n - 4 {
            return Err(Error::NotAMulticurve(format!(
                "expected {} entries for {} punctures, got {}",
                2 * n - 4,
                n,
                flat.len()
            )));
        }
        DynnikovCoords::new(n, flat[..n - 2].to_vec(), flat[n - 2..].to_vec())
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    /// `a_i`, `1 <= i <= n-2`.
    pub fn a(&self, i: usize) -> i64 {
        self.a[i - 1]
    }

    /// `b_i`, `1 <= i <= n-2`.
    pub fn b(&self, i: usize) -> i64 {
        self.b[i - 1]
    }

    pub fn to_flat(&self) -> Vec<i64> {
        self.a.iter().chain(self.b.iter()).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0) && self.b.iter().all(|&x| x == 0)
    }

    pub fn sum(&self, other: &DynnikovCoords) -> Result<DynnikovCoords> {
        if self.n != other.n {
            return Err(Error::DiskMismatch(self.n, other.n));
        }
        DynnikovCoords::new(
            self.n,
            self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        )
    }
}

impl std::fmt::Display for DynnikovCoords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({};{})", join(&self.a), join(&self.b))
    }
}

/// Ordinary coordinates plus the extended entries read off the taut
/// representative: `a_0 = a_{n-1} = 0`, `b_0 = -beta_1/2`,
/// `b_{n-1} = beta_{n-1}/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedCoords {
    base: DynnikovCoords,
    b_first: i64,
    b_last: i64,
}

impl ExtendedCoords {
    pub fn base(&self) -> &DynnikovCoords {
        &self.base
    }

    pub fn a0(&self) -> i64 {
        0
    }

    pub fn a_last(&self) -> i64 {
        0
    }

    pub fn b0(&self) -> i64 {
        self.b_first
    }

    pub fn b_last(&self) -> i64 {
        self.b_last
    }

    /// The `b` entry attached to region `r`, `0 <= r <= n-1`.
    pub fn b_ext(&self, r: usize) -> Result<i64> {
        let n = self.base.punctures();
        if r >= n {
            return Err(Error::IndexOutOfRange(format!("region {r} in D_{n}")));
        }
        Ok(if r == 0 {
            self.b_first
        } else if r == n - 1 {
            self.b_last
        } else {
            self.base.b(r)
        })
    }
}

/// Eq. (1): halved differences of consecutive crossing counts.
pub fn coords_from_crossings(v: &IntersectionVector) -> Result<DynnikovCoords> {
    v.validate()?;
    if v.is_zero() {
        return Err(Error::EmptyMulticurve);
    }
    let n = v.punctures();
    let a: Vec<i64> = (1..=n as isize - 2)
        .map(|i| (v.alpha(2 * i) - v.alpha(2 * i - 1)) / 2)
        .collect();
    let b: Vec<i64> = (1..=n - 2).map(|i| (v.beta(i) - v.beta(i + 1)) / 2).collect();
    DynnikovCoords::new(n, a, b)
}

/// Coordinates of a canonical multicurve.
pub fn coords_of(curve: &MultiCurve) -> Result<DynnikovCoords> {
    coords_from_crossings(&curve.crossings())
}

/// Attach the extended entries; the pair must come from one curve.
pub fn extend(coords: &DynnikovCoords, v: &IntersectionVector) -> Result<ExtendedCoords> {
    let recomputed = coords_from_crossings(v)?;
    if &recomputed != coords {
        return Err(Error::Contract(
            "coordinates do not match the crossing vector".into(),
        ));
    }
    let n = v.punctures();
    Ok(ExtendedCoords {
        base: coords.clone(),
        b_first: -v.beta(1) / 2,
        b_last: v.beta(n - 1) / 2,
    })
}

pub fn extended_of(curve: &MultiCurve) -> Result<ExtendedCoords> {
    let v = curve.crossings();
    let c = coords_from_crossings(&v)?;
    extend(&c, &v)
}

/// Region data determined by a coordinate vector and the free chord count
/// `t = beta_1`; `None` when the choice is structurally impossible.
fn region_data_for(n: usize, coords: &DynnikovCoords, t: i64) -> Option<RegionData> {
    let mut beta = vec![0i64; n + 1];
    beta[1] = t;
    for i in 1..=n - 2 {
        beta[i + 1] = beta[i] - 2 * coords.b(i);
    }
    if beta.iter().any(|&x| x < 0) {
        return None;
    }
    let mut lambda = vec![0i64; n];
    lambda[0] = -beta[1] / 2;
    lambda[n - 1] = beta[n - 1] / 2;
    let mut over = vec![0i64; n];
    let mut under = vec![0i64; n];
    for r in 1..=n - 2 {
        lambda[r] = coords.b(r);
        let tau = beta[r].min(beta[r + 1]);
        let o = tau / 2 - coords.a(r);
        let u = tau / 2 + coords.a(r);
        if o < 0 || u < 0 {
            return None;
        }
        over[r] = o;
        under[r] = u;
    }
    Some(RegionData { n, lambda, over, under })
}

/// The inverse of the coordinate map: rebuild chord counts from the partial
/// sums of `b` with the minimal admissible completion, lay the strands out
/// canonically, and keep the unique completion whose components are all
/// essential.
pub fn curve_from_coords(disk: PuncturedDisk, coords: &DynnikovCoords) -> Result<MultiCurve> {
    let n = disk.punctures();
    if coords.punctures() != n {
        return Err(Error::DiskMismatch(coords.punctures(), n));
    }
    if coords.is_zero() {
        return Err(Error::EmptyMulticurve);
    }
    // Lower bound on t from nonnegativity of the partial sums.
    let mut prefix = 0i64;
    let mut t_min = 0i64;
    for i in 1..=n - 2 {
        prefix += 2 * coords.b(i);
        t_min = t_min.max(prefix);
    }
    let budget: i64 = coords
        .to_flat()
        .iter()
        .map(|x| x.abs())
        .sum::<i64>()
        .max(1)
        + n as i64
        + 4;
    let mut t = t_min;
    if t % 2 != 0 {
        t += 1;
    }
    while t <= t_min + 2 * budget {
        if let Some(data) = region_data_for(n, coords, t) {
            match MultiCurve::from_region_data(disk, data) {
                Ok(curve) => {
                    debug_assert_eq!(&coords_of(&curve).unwrap(), coords);
                    return Ok(curve);
                }
                Err(Error::NonEssential(_)) | Err(Error::EmptyMulticurve) => {}
                Err(e) => return Err(e),
            }
        }
        t += 2;
    }
    Err(Error::NotAMulticurve(format!(
        "no taut realization of {coords} in D_{n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_relaxed;

    #[test]
    fn worked_relaxed_coordinates() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c1 = make_relaxed(d5, 1, 3).unwrap();
        assert_eq!(coords_of(&c1).unwrap().to_flat(), vec![0, 0, 0, 0, 1, 0]);
        let c2 = make_relaxed(d5, 2, 4).unwrap();
        assert_eq!(coords_of(&c2).unwrap().to_flat(), vec![0, 0, 0, -1, 0, 1]);
        let c3 = make_relaxed(d5, 4, 5).unwrap();
        assert_eq!(coords_of(&c3).unwrap().to_flat(), vec![0, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn round_trip_on_relaxed_vectors() {
        let d5 = PuncturedDisk::new(5).unwrap();
        for (i, j) in [(1, 3), (2, 4), (4, 5), (1, 2), (3, 5), (2, 3)] {
            let c = make_relaxed(d5, i, j).unwrap();
            let v = coords_of(&c).unwrap();
            let back = curve_from_coords(d5, &v).unwrap();
            assert_eq!(back, c, "relaxed ({i},{j})");
        }
    }

    #[test]
    fn zero_vector_is_rejected() {
        let d5 = PuncturedDisk::new(5).unwrap();
        assert_eq!(
            DynnikovCoords::from_flat(5, &[0, 0, 0, 0, 0, 0]).unwrap_err(),
            Error::EmptyMulticurve
        );
        let c = DynnikovCoords::from_flat(5, &[0, 0, 0, 0, 1, 0]).unwrap();
        assert!(curve_from_coords(d5, &c).is_ok());
    }

    #[test]
    fn d3_inverse() {
        let d3 = PuncturedDisk::new(3).unwrap();
        let v = DynnikovCoords::from_flat(3, &[0, 1]).unwrap();
        let c = curve_from_coords(d3, &v).unwrap();
        assert_eq!(c, make_relaxed(d3, 1, 2).unwrap());
    }

    #[test]
    fn extended_entries_of_relaxed() {
        let d5 = PuncturedDisk::new(5).unwrap();
        let c13 = make_relaxed(d5, 1, 3).unwrap();
        let e = extended_of(&c13).unwrap();
        assert_eq!((e.b0(), e.b_last()), (-1, 0));
        assert_eq!((e.a0(), e.a_last()), (0, 0));
        let c45 = make_relaxed(d5, 4, 5).unwrap();
        let e = extended_of(&c45).unwrap();
        assert_eq!((e.b0(), e.b_last()), (0, 1));
    }
}
