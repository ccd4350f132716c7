//! Face posets and pulling triangulations recovered from point/facet
//! incidences.
//!
//! Every face of a polytope is its intersection with some facet-defining
//! rows, and the `(k-1)`-faces of a `k`-face `F` are exactly the sets
//! `F ∩ R` (for a row `R`) whose affine dimension is `k - 1`.

use std::collections::BTreeSet;

use crate::linalg::{affine_dimension, QMatrix};
use crate::rational::Rational;

/// Faces grouped by dimension: `levels[k]` holds the point-index sets of the
/// `k`-faces, each sorted. `levels[dim]` is the whole polytope.
pub fn face_levels(points: &[Vec<Rational>], cuts: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let dim = affine_dimension(points);
    let all: Vec<usize> = (0..points.len()).collect();
    let mut levels = vec![Vec::new(); dim + 1];
    levels[dim].push(all);
    for k in (1..=dim).rev() {
        let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
        for face in &levels[k] {
            next.extend(subfaces(points, face, k, cuts));
        }
        levels[k - 1] = next.into_iter().collect();
    }
    levels
}

/// The `(k-1)`-faces of the `k`-face `face`.
pub fn subfaces(points: &[Vec<Rational>], face: &[usize], k: usize, cuts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cut in cuts {
        let meet: Vec<usize> = face.iter().copied().filter(|i| cut.binary_search(i).is_ok()).collect();
        if meet.is_empty() || meet.len() == face.len() || out.contains(&meet) {
            continue;
        }
        let sub: Vec<&Vec<Rational>> = meet.iter().map(|&i| &points[i]).collect();
        if affine_dimension(&sub) + 1 == k {
            out.insert(meet);
        }
    }
    out.into_iter().collect()
}

/// Pulling triangulation of the `k`-face `face`: cone from its lowest-index
/// point over the subfaces that avoid it.
pub fn triangulate(points: &[Vec<Rational>], face: &[usize], k: usize, cuts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for sub in subfaces(points, face, k, cuts) {
        if sub.contains(&apex) {
            continue;
        }
        for mut simplex in triangulate(points, &sub, k - 1, cuts) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

/// `|det(p_1 - p_0, .., p_d - p_0)|`, i.e. `d!` times the simplex volume.
pub fn simplex_det(points: &[Vec<Rational>], simplex: &[usize]) -> Rational {
    let base = &points[simplex[0]];
    let rows: Vec<Vec<Rational>> = simplex[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    let det = QMatrix::from_rows(rows).determinant();
    if det < Rational::from_integer(0.into()) {
        -det
    } else {
        det
    }
}
