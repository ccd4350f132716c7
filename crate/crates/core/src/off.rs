//! OFF mesh export of rank-3 polytopes.
//!
//! Vertices are rendered in a Euclidean frame obtained from a Cholesky factor
//! of the coroot Gram matrix, so viewers see the true shape. Floats appear
//! only here; the exact coordinates live in the JSON reports.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cartan::RootSystem;
use crate::linalg::QMatrix;
use crate::oracle::{
    empirical_face_structure, enumerate_vertices_from_halfspaces, FaceReport, OracleError,
};
use crate::polytope::{all_vertices, halfspaces, DominantWeight};
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OffError {
    #[error("OFF export needs rank 3, got rank {0}")]
    RankNotThree(usize),
    #[error("polytope has dimension {0}, not 3")]
    NotFullDimensional(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A polygon mesh: vertex rows and facet index cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    pub edges: usize,
}

impl Mesh {
    /// `OFF` text with 17 significant digits per coordinate.
    pub fn to_off(&self) -> String {
        let mut out = String::from("OFF\n");
        out.push_str(&format!("{} {} {}\n", self.vertices.len(), self.faces.len(), self.edges));
        for v in &self.vertices {
            // Adding 0.0 turns -0.0 into 0.0.
            out.push_str(&format!("{:.16e} {:.16e} {:.16e}\n", v[0] + 0.0, v[1] + 0.0, v[2] + 0.0));
        }
        for f in &self.faces {
            out.push_str(&f.len().to_string());
            for i in f {
                out.push_str(&format!(" {i}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Mesh of `P^λ` for a rank-3 system: formula vertices, facets and edges from
/// the oracle's face structure, facets oriented outward.
pub fn polytope_mesh(rs: &RootSystem, lambda: &DominantWeight) -> Result<Mesh, OffError> {
    if rs.rank() != 3 {
        return Err(OffError::RankNotThree(rs.rank()));
    }
    let hs = halfspaces(rs, lambda);
    let oracle = enumerate_vertices_from_halfspaces(&hs)?;
    let faces = empirical_face_structure(&oracle, &hs);
    if faces.dim != 3 {
        return Err(OffError::NotFullDimensional(faces.dim));
    }
    // Keep the formula's vertex order, restricted to oracle vertices.
    let oracle_points = oracle.points();
    let formula = all_vertices(rs, lambda);
    let order: Vec<usize> = formula
        .classes
        .iter()
        .filter_map(|c| oracle_points.iter().position(|p| *p == c.point))
        .collect();
    debug_assert_eq!(order.len(), oracle_points.len());
    let relabel = |oracle_index: usize| order.iter().position(|&k| k == oracle_index).expect("listed");

    let coroot: Vec<Vec<Rational>> = order
        .iter()
        .map(|&k| rs.cartan_inverse().mul_vec(&oracle_points[k]))
        .collect();
    let frame = euclidean_frame(rs);
    let vertices = coroot.iter().map(|b| apply_frame(&frame, b)).collect();

    let polygons = facet_cycles(&oracle_points, &faces)
        .into_iter()
        .map(|cycle| cycle.into_iter().map(relabel).collect())
        .collect();
    Ok(Mesh {
        vertices,
        faces: polygons,
        edges: faces.levels[1].len(),
    })
}

pub fn export_off(rs: &RootSystem, lambda: &DominantWeight) -> Result<String, OffError> {
    Ok(polytope_mesh(rs, lambda)?.to_off())
}

/// Vertex cycles of every facet, counter-clockwise seen from outside.
fn facet_cycles(points: &[Vec<Rational>], faces: &FaceReport) -> Vec<Vec<usize>> {
    let edges: Vec<(usize, usize)> = faces.levels[1].iter().map(|e| (e[0], e[1])).collect();
    let n = points.len() as i64;
    let centroid: Vec<Rational> = (0..3)
        .map(|k| points.iter().map(|p| &p[k]).sum::<Rational>() / Rational::from_integer(n.into()))
        .collect();
    faces.facets
        .iter()
        .map(|facet| {
            let on: BTreeSet<usize> = facet.vertices.iter().copied().collect();
            let mut cycle = vec![facet.vertices[0]];
            loop {
                let cur = *cycle.last().unwrap();
                let next = edges
                    .iter()
                    .filter(|(a, b)| on.contains(a) && on.contains(b))
                    .filter_map(|&(a, b)| match (a == cur, b == cur) {
                        (true, _) => Some(b),
                        (_, true) => Some(a),
                        _ => None,
                    })
                    .find(|v| !cycle.contains(v));
                match next {
                    Some(v) => cycle.push(v),
                    None => break,
                }
            }
            // The normal of (v1 - v0) × (v2 - v0) must point away from the centroid.
            let diff = |i: usize| -> Vec<Rational> {
                points[cycle[i]].iter().zip(&points[cycle[0]]).map(|(x, y)| x - y).collect()
            };
            let to_center: Vec<Rational> =
                centroid.iter().zip(&points[cycle[0]]).map(|(x, y)| x - y).collect();
            let det = QMatrix::from_rows(vec![diff(1), diff(2), to_center]).determinant();
            if det > Rational::from_integer(0.into()) {
                cycle[1..].reverse();
            }
            cycle
        })
        .collect()
}

/// Upper-triangular `U` with `U^T U` the coroot Gram matrix, in floats.
fn euclidean_frame(rs: &RootSystem) -> Vec<Vec<f64>> {
    let r = rs.rank();
    let d = rs.symmetrizers();
    let g: Vec<Vec<f64>> = (0..r)
        .map(|i| (0..r).map(|j| to_f64(&(&rs.gram()[(i, j)] / (&d[i] * &d[j])))).collect())
        .collect();
    let mut l = vec![vec![0.0f64; r]; r];
    for i in 0..r {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][i] = (g[i][i] - s).sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    // Euclidean coordinates are L^T b.
    (0..r).map(|i| (0..r).map(|j| l[j][i]).collect()).collect()
}

fn apply_frame(frame: &[Vec<f64>], b: &[Rational]) -> [f64; 3] {
    let bf: Vec<f64> = b.iter().map(to_f64).collect();
    let mut out = [0.0; 3];
    for (i, row) in frame.iter().enumerate() {
        out[i] = row.iter().zip(&bf).map(|(x, y)| x * y).sum();
    }
    out
}
