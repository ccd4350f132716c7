//! Coroot-lattice points in `P^λ`, counted by scanning a bounding box.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanError, RootSystem, WeightVector};
use crate::oracle::{OracleError, OrbitHull};
use crate::polytope::{all_vertices, contains, DominantWeight};
use crate::rational::{int, is_integral, Rational};

/// Default refusal threshold on the number of box candidates.
pub const DEFAULT_BOX_CAP: u128 = 10_000_000;
/// Largest rank for [`orbit_sum_identity`].
pub const MAX_ORBIT_SUM_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("bounding box holds {size} candidates, more than the cap of {cap}")]
    BoxTooLarge { size: u128, cap: u128 },
    #[error("weight is not in the coroot lattice")]
    NotInCorootLattice,
    #[error("rank {rank} exceeds the limit of {max} for this check")]
    RankTooLarge { rank: usize, max: usize },
    #[error(transparent)]
    Orbit(#[from] CartanError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePointReport {
    pub count: u64,
    pub lattice: &'static str,
    /// Coroot coordinates of every point found, in scan order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_sum_check: Option<u128>,
}

/// Integer box `[lo, hi]` (inclusive, coroot coordinates) around the
/// vertices of `P^λ`.
pub fn bounding_box(rs: &RootSystem, lambda: &DominantWeight) -> (Vec<i64>, Vec<i64>) {
    let points: Vec<Vec<Rational>> = all_vertices(rs, lambda)
        .points()
        .iter()
        .map(|a| rs.cartan_inverse().mul_vec(a))
        .collect();
    box_around(&points)
}

fn box_around(points: &[Vec<Rational>]) -> (Vec<i64>, Vec<i64>) {
    let r = points[0].len();
    let lo = (0..r)
        .map(|k| {
            let m = points.iter().map(|p| &p[k]).min().expect("nonempty");
            m.floor().to_integer().to_i64().expect("box bound fits in i64")
        })
        .collect();
    let hi = (0..r)
        .map(|k| {
            let m = points.iter().map(|p| &p[k]).max().expect("nonempty");
            m.ceil().to_integer().to_i64().expect("box bound fits in i64")
        })
        .collect();
    (lo, hi)
}

fn box_size(lo: &[i64], hi: &[i64]) -> u128 {
    lo.iter()
        .zip(hi)
        .map(|(l, h)| (h - l + 1).max(0) as u128)
        .fold(1u128, |acc, s| acc.saturating_mul(s))
}

/// Visits every integer point of the box in lexicographic order.
fn scan_box(lo: &[i64], hi: &[i64], mut visit: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        visit(&cur);
        let mut k = cur.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
}

/// Counts the points of `P^λ ∩ ZΦ∨` inside the given box.
pub fn count_in_box(
    rs: &RootSystem,
    lambda: &DominantWeight,
    lo: &[i64],
    hi: &[i64],
    emit_points: bool,
    cap: u128,
) -> Result<LatticePointReport, LatticeError> {
    let size = box_size(lo, hi);
    if size > cap {
        return Err(LatticeError::BoxTooLarge { size, cap });
    }
    let mut count = 0u64;
    let mut points = Vec::new();
    scan_box(lo, hi, |b| {
        let x = WeightVector::coroot(b.iter().map(|&v| int(v)).collect());
        if contains(rs, lambda, &x) {
            count += 1;
            if emit_points {
                points.push(b.to_vec());
            }
        }
    });
    Ok(LatticePointReport {
        count,
        lattice: "coroot",
        points: emit_points.then_some(points),
        orbit_sum_check: None,
    })
}

/// Number of coroot-lattice points in `P^λ`. `λ` itself need not be a
/// lattice point.
pub fn count_coroot_points(
    rs: &RootSystem,
    lambda: &DominantWeight,
    emit_points: bool,
    cap: u128,
) -> Result<LatticePointReport, LatticeError> {
    let (lo, hi) = bounding_box(rs, lambda);
    count_in_box(rs, lambda, &lo, &hi, emit_points, cap)
}

/// Both sides of `Σ_{μ ∈ P^λ ∩ ZΦ∨} |W μ| = |conv(W λ) ∩ ZΦ∨|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitSumIdentity {
    pub lhs: u128,
    pub rhs: u128,
}

impl OrbitSumIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compares orbit sizes of the dominant lattice points in `P^λ` with a direct
/// scan of `conv(W λ)`. Requires `λ ∈ ZΦ∨`.
pub fn orbit_sum_identity(
    rs: &RootSystem,
    lambda: &DominantWeight,
    orbit_cap: usize,
    box_cap: u128,
) -> Result<OrbitSumIdentity, LatticeError> {
    if rs.rank() > MAX_ORBIT_SUM_RANK {
        return Err(LatticeError::RankTooLarge {
            rank: rs.rank(),
            max: MAX_ORBIT_SUM_RANK,
        });
    }
    let b = rs.cartan_inverse().mul_vec(lambda.coords());
    if !b.iter().all(is_integral) {
        return Err(LatticeError::NotInCorootLattice);
    }

    let dominant = count_coroot_points(rs, lambda, true, box_cap)?;
    let mut lhs = 0u128;
    for p in dominant.points.as_deref().unwrap_or_default() {
        let mu = WeightVector::coroot(p.iter().map(|&v| int(v)).collect());
        lhs += rs.weyl_orbit(&mu, orbit_cap)?.len() as u128;
    }

    let hull = OrbitHull::new(rs, lambda, orbit_cap)?;
    let coroot_points: Vec<Vec<Rational>> = hull
        .points()
        .iter()
        .map(|a| rs.cartan_inverse().mul_vec(a))
        .collect();
    let (lo, hi) = box_around(&coroot_points);
    let size = box_size(&lo, &hi);
    if size > box_cap {
        return Err(LatticeError::BoxTooLarge { size, cap: box_cap });
    }
    let mut rhs = 0u128;
    scan_box(&lo, &hi, |b| {
        let bq: Vec<Rational> = b.iter().map(|&v| int(v)).collect();
        if hull.contains(&rs.cartan_q().mul_vec(&bq)) {
            rhs += 1;
        }
    });
    Ok(OrbitSumIdentity { lhs, rhs })
}

/// Whether `b` (coroot coordinates) has nonnegative coweight coordinates.
pub fn is_dominant_coroot(rs: &RootSystem, b: &[Rational]) -> bool {
    rs.cartan_q().mul_vec(b).iter().all(|x| !x.is_negative())
}

/// Sum of `λ` and another dominant weight, coordinatewise.
pub fn add_weights(a: &DominantWeight, b: &DominantWeight) -> DominantWeight {
    DominantWeight::new(a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect())
        .expect("sum of dominant weights is dominant")
}

/// Whether the coweight coordinates describe a point of `ZΦ∨`.
pub fn in_coroot_lattice(rs: &RootSystem, a: &[Rational]) -> bool {
    rs.cartan_inverse().mul_vec(a).iter().all(is_integral)
}
