//! Facet enumeration of the convex hull of a finite point set by the double
//! description method.
//!
//! The facets of `conv(P)` are the extreme rays of the cone
//! `{(h0, g) : h0 + g·p ≥ 0 for all p ∈ P}`. Rows are added one at a time;
//! new rays come from adjacent pairs straddling the new row, with adjacency
//! decided by the combinatorial zero-set test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{affine_dimension, dot, QMatrix};
use crate::rational::Rational;

use super::{Inequality, OracleError};

/// A facet `offset + normal·x ≥ 0` and the points on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub inequality: Inequality,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_superset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b & !a == 0)
    }
}

struct Ray {
    coords: Vec<Rational>,
    zeros: Bits,
}

/// Facets of `conv(points)`. The points must affinely span their space.
pub fn hull_facets(points: &[Vec<Rational>]) -> Result<Vec<Facet>, OracleError> {
    let Some(first) = points.first() else {
        return Err(OracleError::EmptyPolytope);
    };
    let d = first.len();
    let dim = affine_dimension(points);
    if dim < d {
        return Err(OracleError::NotFullDimensional { dim, ambient: d });
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let n = points.len();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| std::iter::once(Rational::one()).chain(p.iter().cloned()).collect())
        .collect();

    // Greedy choice of d+1 independent rows for the initial simplicial cone.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut cand: Vec<Vec<Rational>> = basis.iter().map(|&k| rows[k].clone()).collect();
        cand.push(rows[i].clone());
        if QMatrix::from_rows(cand).rank() == basis.len() + 1 {
            basis.push(i);
            if basis.len() == d + 1 {
                break;
            }
        }
    }
    let b = QMatrix::from_rows(basis.iter().map(|&k| rows[k].clone()).collect());
    let inv = b.inverse().expect("independent rows form an invertible matrix");
    let mut rays: Vec<Ray> = (0..=d)
        .map(|col| {
            let coords = primitive(inv.column(col));
            let mut zeros = Bits::new(n);
            for (k, &row) in basis.iter().enumerate() {
                if k != col {
                    zeros.set(row);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let mut processed = vec![false; n];
    for &k in &basis {
        processed[k] = true;
    }
    for i in 0..n {
        if processed[i] {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| dot(&rows[i], &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 1 < d {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != q && r.zeros.is_superset_of(&common)
                });
                if blocked {
                    continue;
                }
                let coords: Vec<Rational> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(x, y)| &values[p] * x - &values[q] * y)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
        processed[i] = true;
    }

    let mut facets: Vec<Facet> = rays
        .into_iter()
        .map(|r| {
            let inequality = Inequality {
                offset: r.coords[0].clone(),
                normal: r.coords[1..].to_vec(),
            };
            let on: Vec<usize> = (0..n)
                .filter(|&k| inequality.slack(&points[k]).is_zero())
                .collect();
            Facet {
                inequality,
                points: on,
            }
        })
        .collect();
    facets.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(facets)
}

/// Scales a vector to coprime integer entries, keeping its direction.
fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}
