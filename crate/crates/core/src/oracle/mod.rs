//! Independent exact checks on the vertex formula.
//!
//! Nothing in here calls the subset solves from [`crate::polytope`]: vertices
//! come from exhaustive basis enumeration of an inequality system, facets of
//! orbit hulls come from double description, membership in `conv(W λ)` from
//! a rational simplex, and volumes from a pulling triangulation.

pub mod faces;
pub mod hull;
pub mod lp;

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{Basis, CartanError, RootSystem, WeightVector};
use crate::linalg::{affine_dimension, dot, QMatrix};
use crate::polytope::{DominantWeight, Halfspace, HalfspaceSystem, PolytopeVertices, RowKind};
use crate::rational::{format_vec, Rational};

pub use hull::{hull_facets, Facet};

/// Largest rank for halfspace vertex enumeration (`C(16, 8)` bases).
pub const MAX_ENUMERATION_RANK: usize = 8;
/// Largest rank for triangulated volumes.
pub const MAX_VOLUME_RANK: usize = 6;
/// Refusal threshold on the number of row subsets tried by [`enumerate_vertices`].
pub const DEFAULT_BASIS_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rank {rank} exceeds the oracle limit of {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("the inequality system has no feasible vertex")]
    EmptyPolytope,
    #[error("point set spans dimension {dim} inside dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("{count} row subsets exceed the cap of {cap}")]
    TooManyBases { count: u128, cap: usize },
    #[error(transparent)]
    Orbit(#[from] CartanError),
}

/// `offset + normal · x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Inequality {
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) + &self.offset
    }
}

impl From<&Halfspace> for Inequality {
    fn from(h: &Halfspace) -> Self {
        Inequality {
            normal: h.normal.clone(),
            offset: h.offset.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FormulaVertices,
    HalfspaceEnumeration,
    OrbitHullIntersection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVertex {
    pub point: WeightVector,
    /// Rows of the generating inequality system that are tight here.
    pub tight_rows: Vec<usize>,
}

/// Vertex list in coweight coordinates, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRepresentation {
    pub provenance: Provenance,
    pub vertices: Vec<OracleVertex>,
}

impl VRepresentation {
    /// Wraps the deduplicated formula points; tight rows are taken from `hs`.
    pub fn from_formula(vertices: &PolytopeVertices, hs: &HalfspaceSystem) -> Self {
        let mut out: Vec<OracleVertex> = vertices
            .classes
            .iter()
            .map(|c| OracleVertex {
                point: WeightVector::coweight(c.point.clone()),
                tight_rows: hs.tight_rows(&c.point),
            })
            .collect();
        out.sort_by(|a, b| a.point.coords.cmp(&b.point.coords));
        Self {
            provenance: Provenance::FormulaVertices,
            vertices: out,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.vertices.iter().map(|v| v.point.coords.clone()).collect()
    }

    pub fn point_set(&self) -> BTreeSet<Vec<Rational>> {
        self.vertices.iter().map(|v| v.point.coords.clone()).collect()
    }
}

/// Every vertex of `{x ∈ Q^dim : rows hold}`, with its tight rows, sorted.
///
/// Tries all `dim`-subsets of rows, solves the equality system, keeps the
/// feasible unique solutions and deduplicates.
pub fn enumerate_vertices(
    rows: &[Inequality],
    dim: usize,
    cap: usize,
) -> Result<Vec<(Vec<Rational>, Vec<usize>)>, OracleError> {
    let count = binomial(rows.len() as u128, dim as u128);
    if count > cap as u128 {
        return Err(OracleError::TooManyBases { count, cap });
    }
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if dim == 0 {
        if rows.iter().all(|r| !r.offset.is_negative()) {
            found.insert(Vec::new());
        }
    } else {
        let mut combo: Vec<usize> = (0..dim).collect();
        loop {
            let m = QMatrix::from_rows(combo.iter().map(|&k| rows[k].normal.clone()).collect());
            let rhs: Vec<Rational> = combo.iter().map(|&k| -rows[k].offset.clone()).collect();
            if let Some(x) = m.solve(&rhs) {
                if !found.contains(&x) && rows.iter().all(|r| !r.slack(&x).is_negative()) {
                    found.insert(x);
                }
            }
            if !next_combination(&mut combo, rows.len()) {
                break;
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|x| {
            let tight = (0..rows.len()).filter(|&k| rows[k].slack(&x).is_zero()).collect();
            (x, tight)
        })
        .collect())
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, t| acc * (n - t) / (t + 1))
}

/// Vertex enumeration of the `2r` halfspaces of `P^λ`.
pub fn enumerate_vertices_from_halfspaces(hs: &HalfspaceSystem) -> Result<VRepresentation, OracleError> {
    if hs.rank > MAX_ENUMERATION_RANK {
        return Err(OracleError::RankTooLarge {
            rank: hs.rank,
            max: MAX_ENUMERATION_RANK,
        });
    }
    let rows: Vec<Inequality> = hs.rows.iter().map(Inequality::from).collect();
    let found = enumerate_vertices(&rows, hs.rank, DEFAULT_BASIS_CAP)?;
    if found.is_empty() {
        return Err(OracleError::EmptyPolytope);
    }
    Ok(VRepresentation {
        provenance: Provenance::HalfspaceEnumeration,
        vertices: found
            .into_iter()
            .map(|(x, tight_rows)| OracleVertex {
                point: WeightVector::coweight(x),
                tight_rows,
            })
            .collect(),
    })
}

/// `conv(W λ)` with its orbit points in coweight coordinates.
#[derive(Debug, Clone)]
pub struct OrbitHull {
    points: Vec<Vec<Rational>>,
    /// Columns are the homogenized orbit points `(w, 1)`.
    system: QMatrix,
}

impl OrbitHull {
    pub fn new(rs: &RootSystem, lambda: &DominantWeight, cap: usize) -> Result<Self, OracleError> {
        let orbit = rs.weyl_orbit(&lambda.as_weight(), cap)?;
        let points: Vec<Vec<Rational>> = orbit.into_iter().map(|w| w.coords).collect();
        let r = rs.rank();
        let mut system = QMatrix::zeros(r + 1, points.len());
        for (c, p) in points.iter().enumerate() {
            for k in 0..r {
                system[(k, c)] = p[k].clone();
            }
            system[(r, c)] = Rational::one();
        }
        Ok(Self { points, system })
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Exact membership of coweight coordinates `a` by LP feasibility.
    pub fn contains(&self, a: &[Rational]) -> bool {
        let mut rhs = a.to_vec();
        rhs.push(Rational::one());
        lp::feasible_point(&self.system, &rhs).is_some()
    }

    /// Facets of the orbit hull in coweight coordinates.
    pub fn facets(&self) -> Result<Vec<Facet>, OracleError> {
        hull_facets(&self.points)
    }
}

/// Whether `x ∈ conv(W λ)`, decided by a rational feasibility solve.
pub fn orbit_hull_contains(
    rs: &RootSystem,
    lambda: &DominantWeight,
    x: &WeightVector,
    cap: usize,
) -> Result<bool, OracleError> {
    let hull = OrbitHull::new(rs, lambda, cap)?;
    Ok(hull.contains(&rs.to_coweight(x)))
}

/// Vertices of `conv(W λ) ∩ C̄_+`, from the orbit hull's facets plus the
/// dominance rows. The dominance rows come last in the tight-row indices.
pub fn chamber_intersection(
    rs: &RootSystem,
    lambda: &DominantWeight,
    cap: usize,
) -> Result<VRepresentation, OracleError> {
    let r = rs.rank();
    let hull = OrbitHull::new(rs, lambda, cap)?;
    let mut rows: Vec<Inequality> = hull.facets()?.into_iter().map(|f| f.inequality).collect();
    for k in 0..r {
        let mut normal = vec![Rational::zero(); r];
        normal[k] = Rational::one();
        rows.push(Inequality {
            normal,
            offset: Rational::zero(),
        });
    }
    let found = enumerate_vertices(&rows, r, DEFAULT_BASIS_CAP)?;
    Ok(VRepresentation {
        provenance: Provenance::OrbitHullIntersection,
        vertices: found
            .into_iter()
            .map(|(x, tight_rows)| OracleVertex {
                point: WeightVector::coweight(x),
                tight_rows,
            })
            .collect(),
    })
}

/// One facet: the inequality rows defining it and the vertices on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetRecord {
    pub rows: Vec<String>,
    pub vertices: Vec<usize>,
}

/// Face data recovered from vertex/row incidences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceReport {
    pub dim: usize,
    /// `f_0, .., f_dim`, with `f_dim = 1` for the polytope itself.
    pub f_vector: Vec<usize>,
    pub facets: Vec<FacetRecord>,
    /// `levels[k]` lists the vertex-index sets of the `k`-faces.
    pub levels: Vec<Vec<Vec<usize>>>,
}

impl FaceReport {
    /// `f_0, .., f_{dim-1}`: proper faces only.
    pub fn proper_f_vector(&self) -> Vec<usize> {
        self.f_vector[..self.dim].to_vec()
    }
}

pub fn row_name(kind: RowKind) -> String {
    match kind {
        RowKind::Dominance(k) => format!("dominance:{}", k + 1),
        RowKind::Cone(k) => format!("cone:{}", k + 1),
    }
}

/// Faces of `conv(vrep)` cut out by the rows of `hs`.
pub fn empirical_face_structure(vrep: &VRepresentation, hs: &HalfspaceSystem) -> FaceReport {
    let points = vrep.points();
    let row_sets: Vec<Vec<usize>> = hs
        .rows
        .iter()
        .map(|h| {
            (0..points.len())
                .filter(|&i| h.slack(&points[i]).is_zero())
                .collect()
        })
        .collect();
    let levels = faces::face_levels(&points, &row_sets);
    let dim = levels.len() - 1;
    let facet_sets: BTreeSet<&Vec<usize>> = if dim == 0 {
        BTreeSet::new()
    } else {
        levels[dim - 1].iter().collect()
    };
    let mut by_set: HashMap<&Vec<usize>, Vec<String>> = HashMap::new();
    for (k, set) in row_sets.iter().enumerate() {
        if facet_sets.contains(set) {
            by_set.entry(set).or_default().push(row_name(hs.rows[k].kind));
        }
    }
    let facets = facet_sets
        .iter()
        .map(|set| FacetRecord {
            rows: by_set.remove(*set).unwrap_or_default(),
            vertices: (*set).clone(),
        })
        .collect();
    FaceReport {
        dim,
        f_vector: levels.iter().map(Vec::len).collect(),
        facets,
        levels,
    }
}

/// Volume with the coroot lattice normalized to covolume 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub value: Rational,
    /// Set when the points do not span the whole space; `value` is then 0.
    pub degenerate: bool,
    pub simplices: usize,
}

/// Volume of `conv(vrep)` in coroot coordinates, by pulling triangulation
/// over facets found with double description.
pub fn normalized_volume(rs: &RootSystem, vrep: &VRepresentation) -> Result<Volume, OracleError> {
    let points: Vec<Vec<Rational>> = vrep
        .vertices
        .iter()
        .map(|v| rs.convert(&v.point, Basis::Coroot).coords)
        .collect();
    volume_of_points(&points)
}

/// Volume of the convex hull of `points` in their own coordinates.
pub fn volume_of_points(points: &[Vec<Rational>]) -> Result<Volume, OracleError> {
    let Some(first) = points.first() else {
        return Err(OracleError::EmptyPolytope);
    };
    let r = first.len();
    if r > MAX_VOLUME_RANK {
        return Err(OracleError::RankTooLarge {
            rank: r,
            max: MAX_VOLUME_RANK,
        });
    }
    if affine_dimension(points) < r {
        return Ok(Volume {
            value: Rational::zero(),
            degenerate: true,
            simplices: 0,
        });
    }
    let cuts: Vec<Vec<usize>> = hull_facets(points)?.into_iter().map(|f| f.points).collect();
    let all: Vec<usize> = (0..points.len()).collect();
    let simplices = faces::triangulate(points, &all, r, &cuts);
    let sum: Rational = simplices.iter().map(|s| faces::simplex_det(points, s)).sum();
    let factorial = (1..=r as i64).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k.into()));
    Ok(Volume {
        value: sum / factorial,
        degenerate: false,
        simplices: simplices.len(),
    })
}

/// Volume of `conv(W λ)` in the same normalization.
pub fn orbit_hull_volume(rs: &RootSystem, lambda: &DominantWeight, cap: usize) -> Result<Volume, OracleError> {
    let hull = OrbitHull::new(rs, lambda, cap)?;
    let points: Vec<Vec<Rational>> = hull
        .points()
        .iter()
        .map(|a| rs.cartan_inverse().mul_vec(a))
        .collect();
    volume_of_points(&points)
}

/// Set difference between two vertex lists, for machine-readable reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexDiff {
    pub left: Provenance,
    pub right: Provenance,
    pub only_left: Vec<Vec<String>>,
    pub only_right: Vec<Vec<String>>,
}

impl VertexDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

pub fn diff_vertices(left: &VRepresentation, right: &VRepresentation) -> VertexDiff {
    let (a, b) = (left.point_set(), right.point_set());
    VertexDiff {
        left: left.provenance,
        right: right.provenance,
        only_left: a.difference(&b).map(|p| format_vec(p)).collect(),
        only_right: b.difference(&a).map(|p| format_vec(p)).collect(),
    }
}

/// For each distinct formula point, whether the oracle lists it as a vertex.
pub fn formula_extremality(formula: &PolytopeVertices, oracle: &VRepresentation) -> Vec<bool> {
    let set = oracle.point_set();
    formula.classes.iter().map(|c| set.contains(&c.point)).collect()
}

/// Rank of the normals of the given rows; `r` at a vertex of an
/// `r`-dimensional polytope.
pub fn tight_rank(rows: &[Inequality], tight: &[usize]) -> usize {
    if tight.is_empty() {
        return 0;
    }
    QMatrix::from_rows(tight.iter().map(|&k| rows[k].normal.clone()).collect()).rank()
}
