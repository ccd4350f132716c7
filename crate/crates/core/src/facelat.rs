//! Face lattice of `P^λ` for strongly dominant `λ`.
//!
//! Faces are labelled by pairs `(I, J)` with `I ∪ J = [r]`: the face is the
//! closure of the points lying strictly inside the chamber face spanned by
//! the coweights in `I` and strictly inside the cone face spanned by the
//! coroots in `J`. The lattice depends only on the rank.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::subset::NodeSet;

/// Largest rank [`build_face_lattice`] will enumerate (`3^12` faces).
pub const MAX_LATTICE_RANK: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("({i}, {j}) is not a face label for rank {rank}: the union must be [r]")]
    NotAFace { i: NodeSet, j: NodeSet, rank: usize },
    #[error("({0}, {1}, {2}) is not a partition of [r]")]
    NotAPartition(NodeSet, NodeSet, NodeSet),
    #[error("rank {rank} is too large for face lattice enumeration (max {max})")]
    RankTooLarge { rank: usize, max: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceLabel {
    pub i: NodeSet,
    pub j: NodeSet,
}

impl FaceLabel {
    pub fn new(rank: usize, i: NodeSet, j: NodeSet) -> Result<Self, FaceError> {
        if i.union(j) != NodeSet::full(rank) {
            return Err(FaceError::NotAFace { i, j, rank });
        }
        Ok(Self { i, j })
    }

    /// The whole polytope, `([r], [r])`.
    pub fn top(rank: usize) -> Self {
        Self {
            i: NodeSet::full(rank),
            j: NodeSet::full(rank),
        }
    }

    /// The vertex `p_J`, labelled `([r] \ J, J)`.
    pub fn vertex(rank: usize, j: NodeSet) -> Self {
        Self {
            i: j.complement(rank),
            j,
        }
    }

    pub fn dim(&self, rank: usize) -> usize {
        self.i.len() + self.j.len() - rank
    }
}

/// `|I| + |J| - r`, or `None` when `I ∪ J ≠ [r]` (the set is empty).
pub fn face_dimension(rank: usize, i: NodeSet, j: NodeSet) -> Option<usize> {
    FaceLabel::new(rank, i, j).ok().map(|f| f.dim(rank))
}

/// Whether `face` lies in the closure of `outer`: `I' ⊆ I` and `J' ⊆ J`.
pub fn face_contains(rank: usize, outer: (NodeSet, NodeSet), face: (NodeSet, NodeSet)) -> Result<bool, FaceError> {
    let outer = FaceLabel::new(rank, outer.0, outer.1)?;
    let face = FaceLabel::new(rank, face.0, face.1)?;
    Ok(label_contains(outer, face))
}

fn label_contains(outer: FaceLabel, face: FaceLabel) -> bool {
    face.i.is_subset(outer.i) && face.j.is_subset(outer.j)
}

/// Subsets `J''` naming the vertices of the face `(I, J)`: `J_0 ⊔ L` for
/// every `L ⊆ I ∩ J`, where `J_0 = J \ I`.
pub fn face_vertices(rank: usize, i: NodeSet, j: NodeSet) -> Result<Vec<NodeSet>, FaceError> {
    FaceLabel::new(rank, i, j)?;
    let both = i.intersection(j);
    let j0 = j.difference(both);
    Ok(both.subsets().map(|l| j0.union(l)).collect())
}

/// A face `H(I_0, I_1, I_01)` of the cube `[0,1]^r`: coordinates in `I_0`
/// are 0, in `I_1` are 1, in `I_01` free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace {
    pub zeros: NodeSet,
    pub ones: NodeSet,
    pub free: NodeSet,
}

impl CubeFace {
    pub fn new(rank: usize, zeros: NodeSet, ones: NodeSet, free: NodeSet) -> Result<Self, FaceError> {
        let disjoint = zeros.is_disjoint(ones) && zeros.is_disjoint(free) && ones.is_disjoint(free);
        if !disjoint || zeros.union(ones).union(free) != NodeSet::full(rank) {
            return Err(FaceError::NotAPartition(zeros, ones, free));
        }
        Ok(Self { zeros, ones, free })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Cube face inclusion: `H ⊆ H'` iff `I_0' ⊆ I_0` and `I_1' ⊆ I_1`.
    pub fn is_subface_of(&self, other: &CubeFace) -> bool {
        other.zeros.is_subset(self.zeros) && other.ones.is_subset(self.ones)
    }

    /// All `3^r` faces of the `r`-cube.
    pub fn all(rank: usize) -> Vec<CubeFace> {
        let full = NodeSet::full(rank);
        let mut out = Vec::new();
        for free in full.subsets() {
            for zeros in full.difference(free).subsets() {
                let ones = full.difference(free).difference(zeros);
                out.push(CubeFace { zeros, ones, free });
            }
        }
        out
    }
}

/// `θ: H(I_0, I_1, I_01) ↦ (I_0 ∪ I_01, I_1 ∪ I_01)`.
pub fn cube_to_face(h: CubeFace) -> FaceLabel {
    FaceLabel {
        i: h.zeros.union(h.free),
        j: h.ones.union(h.free),
    }
}

/// `θ^{-1}: (I, J) ↦ H(I \ J, J \ I, I ∩ J)`.
pub fn face_to_cube(f: FaceLabel) -> CubeFace {
    let both = f.i.intersection(f.j);
    CubeFace {
        zeros: f.i.difference(both),
        ones: f.j.difference(both),
        free: both,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceNode {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub dim: usize,
}

/// The full face poset of a rank-`r` dominant weight polytope, top element
/// included and empty face excluded.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    rank: usize,
    faces: Vec<FaceLabel>,
    index: HashMap<FaceLabel, usize>,
    covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Faces sorted by dimension, then label.
    pub fn faces(&self) -> &[FaceLabel] {
        &self.faces
    }

    pub fn index_of(&self, f: &FaceLabel) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.faces[k].dim(self.rank)
    }

    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        label_contains(self.faces[outer], self.faces[inner])
    }

    /// Covering pairs `(lower, upper)`: containment with dimension gap 1.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `f_0, .., f_r` with `f_r = 1` for the polytope itself.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.rank + 1];
        for face in &self.faces {
            f[face.dim(self.rank)] += 1;
        }
        f
    }

    /// Vertex subsets of face `k`, computed from the formula.
    pub fn vertex_sets(&self, k: usize) -> Vec<NodeSet> {
        let f = self.faces[k];
        face_vertices(self.rank, f.i, f.j).expect("lattice faces are valid labels")
    }

    /// Vertices below face `k` in the lattice order, as subsets `J`.
    pub fn vertices_below(&self, k: usize) -> Vec<NodeSet> {
        let mut out: Vec<NodeSet> = (0..self.faces.len())
            .filter(|&v| self.dim(v) == 0 && self.contains(k, v))
            .map(|v| self.faces[v].j)
            .collect();
        out.sort();
        out
    }

    pub fn nodes(&self) -> Vec<FaceNode> {
        self.faces
            .iter()
            .map(|f| FaceNode {
                i: f.i.to_labels(),
                j: f.j.to_labels(),
                dim: f.dim(self.rank),
            })
            .collect()
    }
}

/// Enumerates all `3^r` labels, their dimensions and the covering relation.
pub fn build_face_lattice(rank: usize) -> Result<FaceLattice, FaceError> {
    if rank == 0 {
        return Err(FaceError::ZeroRank);
    }
    if rank > MAX_LATTICE_RANK {
        return Err(FaceError::RankTooLarge {
            rank,
            max: MAX_LATTICE_RANK,
        });
    }
    let mut faces: Vec<FaceLabel> = CubeFace::all(rank).into_iter().map(cube_to_face).collect();
    faces.sort_by_key(|f| (f.dim(rank), *f));
    let index: HashMap<FaceLabel, usize> = faces.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    // A face (I, J) is covered exactly by the faces that add one index to
    // I or to J while staying a valid label.
    let full = NodeSet::full(rank);
    let mut covers = Vec::new();
    for (lo, f) in faces.iter().enumerate() {
        for m in full.difference(f.i).iter() {
            let up = FaceLabel { i: f.i.union(NodeSet::singleton(m)), j: f.j };
            covers.push((lo, index[&up]));
        }
        for m in full.difference(f.j).iter() {
            let up = FaceLabel { i: f.i, j: f.j.union(NodeSet::singleton(m)) };
            covers.push((lo, index[&up]));
        }
    }
    covers.sort_unstable();
    Ok(FaceLattice {
        rank,
        faces,
        index,
        covers,
    })
}

/// `C(r, k) · 2^{r-k}` for `k = 0..=r`.
pub fn cube_f_vector(rank: usize) -> Vec<u64> {
    (0..=rank)
        .map(|k| binomial(rank as u64, k as u64) << (rank - k))
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}
