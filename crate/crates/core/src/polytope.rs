//! The dominant weight polytope `P^λ = conv(W λ) ∩ C̄_+` in coweight
//! coordinates: its vertex formula and its halfspace description.
//!
//! For a subset `J` of simple roots the candidate vertex is
//! `p_J = λ - Σ_{j∈J} c_j α_j∨` where `c` solves `A_J c = (a_j(λ))_{j∈J}`.
//! For strongly dominant `λ` the `2^r` points are distinct vertices; on walls
//! some of them coincide.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cartan::{Basis, RootSystem, WeightVector};
use crate::linalg::dot;
use crate::rational::{parse_rational, Rational};
use crate::subset::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("weight is not dominant: coordinate {index} is {value}")]
    NotDominant { index: usize, value: String },
    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse weight: {0}")]
    Parse(String),
}

/// A dominant weight given by its coweight coordinates `a_k = (λ | α_k) ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    coords: Vec<Rational>,
}

impl DominantWeight {
    pub fn new(coords: Vec<Rational>) -> Result<Self, PolytopeError> {
        if let Some((index, v)) = coords.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(PolytopeError::NotDominant {
                index,
                value: v.to_string(),
            });
        }
        Ok(Self { coords })
    }

    /// Checks the length against `rs` as well.
    pub fn for_system(rs: &RootSystem, coords: Vec<Rational>) -> Result<Self, PolytopeError> {
        if coords.len() != rs.rank() {
            return Err(PolytopeError::DimensionMismatch {
                expected: rs.rank(),
                got: coords.len(),
            });
        }
        Self::new(coords)
    }

    /// Parses either one `"N*rho"` token or one rational per coordinate.
    pub fn parse(rs: &RootSystem, tokens: &[String]) -> Result<Self, PolytopeError> {
        let parse = |s: &str| parse_rational(s).map_err(|e| PolytopeError::Parse(e.to_string()));
        if let [single] = tokens {
            let t = single.trim();
            if let Some(n) = t.strip_suffix("rho") {
                let n = n.trim().trim_end_matches('*').trim();
                let n = if n.is_empty() { Rational::from_integer(1.into()) } else { parse(n)? };
                let rho = rs.rho();
                return Self::for_system(rs, rho.scaled(&n).coords);
            }
            if t.contains(',') || t.contains(char::is_whitespace) {
                let parts: Vec<String> = t
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                return Self::parse(rs, &parts);
            }
        }
        let coords = tokens.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::for_system(rs, coords)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_strongly_dominant(&self) -> bool {
        self.coords.iter().all(Signed::is_positive)
    }

    /// Indices `k` with `a_k = 0`.
    pub fn walls(&self) -> NodeSet {
        NodeSet::from_indices((0..self.rank()).filter(|&k| self.coords[k].is_zero()))
    }

    pub fn as_weight(&self) -> WeightVector {
        WeightVector::coweight(self.coords.clone())
    }

    /// `t · λ`. Panics for negative `t`.
    pub fn scaled(&self, t: &Rational) -> Self {
        assert!(!t.is_negative(), "negative multiple of a dominant weight");
        Self {
            coords: self.coords.iter().map(|x| x * t).collect(),
        }
    }
}

/// The solve for one subset `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub subset: NodeSet,
    /// `c_j` for `j ∈ J`, in increasing `j`.
    pub coeffs: Vec<Rational>,
    /// Coweight coordinates of `p_J`.
    pub point: Vec<Rational>,
}

impl VertexRecord {
    pub fn coeff(&self, j: usize) -> Option<&Rational> {
        self.subset
            .iter()
            .position(|m| m == j)
            .map(|pos| &self.coeffs[pos])
    }

    /// `c` extended by zeros to all `r` simple roots.
    pub fn full_coeffs(&self, r: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); r];
        for (j, c) in self.subset.iter().zip(&self.coeffs) {
            out[j] = c.clone();
        }
        out
    }
}

/// A distinct point together with every subset whose solve lands on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeClass {
    pub point: Vec<Rational>,
    pub subsets: Vec<NodeSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVertices {
    /// One record per subset, indexed by the subset's bitmask.
    pub records: Vec<VertexRecord>,
    /// Distinct points ordered by their smallest subset bitmask.
    pub classes: Vec<MergeClass>,
}

impl PolytopeVertices {
    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.classes.iter().map(|c| c.point.clone()).collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes with more than one subset.
    pub fn merged(&self) -> impl Iterator<Item = &MergeClass> {
        self.classes.iter().filter(|c| c.subsets.len() > 1)
    }
}

/// Solves `A_J c = (a_j)_{j∈J}` and returns `p_J = λ - Σ c_j α_j∨`.
pub fn vertex_for_subset(rs: &RootSystem, lambda: &DominantWeight, subset: NodeSet) -> VertexRecord {
    let r = rs.rank();
    assert_eq!(lambda.rank(), r, "weight rank does not match the root system");
    assert!(subset.is_subset(NodeSet::full(r)), "subset outside [r]");
    let idx = subset.to_vec();
    let coeffs = if idx.is_empty() {
        Vec::new()
    } else {
        let rhs: Vec<Rational> = idx.iter().map(|&j| lambda.coords[j].clone()).collect();
        rs.cartan_q()
            .principal_submatrix(&idx)
            .solve(&rhs)
            .expect("principal submatrices of a finite-type Cartan matrix are invertible")
    };
    let cartan = rs.cartan();
    let point = (0..r)
        .map(|k| {
            let mut v = lambda.coords[k].clone();
            for (&j, c) in idx.iter().zip(&coeffs) {
                let akj = cartan.entry(k, j);
                if akj != 0 {
                    v -= c * Rational::from_integer(akj.into());
                }
            }
            v
        })
        .collect();
    VertexRecord {
        subset,
        coeffs,
        point,
    }
}

/// All `2^r` solves, merged by exact equality of the resulting points.
pub fn all_vertices(rs: &RootSystem, lambda: &DominantWeight) -> PolytopeVertices {
    let r = rs.rank();
    let records: Vec<VertexRecord> = NodeSet::all(r)
        .map(|j| vertex_for_subset(rs, lambda, j))
        .collect();
    let mut classes: Vec<MergeClass> = Vec::new();
    let mut index: HashMap<&[Rational], usize> = HashMap::new();
    for rec in &records {
        match index.get(rec.point.as_slice()) {
            Some(&k) => classes[k].subsets.push(rec.subset),
            None => {
                index.insert(&rec.point, classes.len());
                classes.push(MergeClass {
                    point: rec.point.clone(),
                    subsets: vec![rec.subset],
                });
            }
        }
    }
    PolytopeVertices { records, classes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    /// `a_k ≥ 0`: closed chamber side of the wall `H_k`.
    Dominance(usize),
    /// `(A^{-1}(a(λ) - a))_k ≥ 0`: the coroot cone below `λ`.
    Cone(usize),
}

/// `normal · a + offset ≥ 0` in coweight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub kind: RowKind,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn slack(&self, a: &[Rational]) -> Rational {
        dot(&self.normal, a) + &self.offset
    }
}

/// The `2r` inequalities cutting out `P^λ`: dominance rows first, then cone
/// rows, each in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    pub rank: usize,
    pub rows: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn contains(&self, a: &[Rational]) -> bool {
        self.rows.iter().all(|h| !h.slack(a).is_negative())
    }

    /// Indices of rows satisfied with equality.
    pub fn tight_rows(&self, a: &[Rational]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(a).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn halfspaces(rs: &RootSystem, lambda: &DominantWeight) -> HalfspaceSystem {
    let r = rs.rank();
    let inv = rs.cartan_inverse();
    let lambda_b = inv.mul_vec(lambda.coords());
    let mut rows = Vec::with_capacity(2 * r);
    for k in 0..r {
        let mut normal = vec![Rational::zero(); r];
        normal[k] = Rational::from_integer(1.into());
        rows.push(Halfspace {
            kind: RowKind::Dominance(k),
            normal,
            offset: Rational::zero(),
        });
    }
    for (k, offset) in lambda_b.into_iter().enumerate() {
        rows.push(Halfspace {
            kind: RowKind::Cone(k),
            normal: inv.row(k).iter().map(|x| -x).collect(),
            offset,
        });
    }
    HalfspaceSystem { rank: r, rows }
}

/// Exact membership in `P^λ`: `a(x) ≥ 0` and `A^{-1}(a(λ) - a(x)) ≥ 0`.
pub fn contains(rs: &RootSystem, lambda: &DominantWeight, x: &WeightVector) -> bool {
    let a = rs.convert(x, Basis::Coweight).coords;
    if a.iter().any(Signed::is_negative) {
        return false;
    }
    let diff: Vec<Rational> = lambda.coords.iter().zip(&a).map(|(l, x)| l - x).collect();
    rs.cartan_inverse()
        .mul_vec(&diff)
        .iter()
        .all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn sys(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn weight(xs: &[i64]) -> DominantWeight {
        DominantWeight::new(ints(xs)).unwrap()
    }

    #[test]
    fn a1_segment_endpoint() {
        let rec = vertex_for_subset(&sys("A1"), &weight(&[2]), NodeSet::full(1));
        assert_eq!(rec.coeffs, ints(&[1]));
        assert_eq!(rec.point, ints(&[0]));
    }

    #[test]
    fn a2_subset_solves() {
        let rs = sys("A2");
        let lambda = weight(&[1, 1]);
        let full = vertex_for_subset(&rs, &lambda, NodeSet::full(2));
        assert_eq!(full.coeffs, ints(&[1, 1]));
        assert_eq!(full.point, ints(&[0, 0]));
        // Substitute back: A · c = a(λ).
        assert_eq!(rs.cartan_q().mul_vec(&full.coeffs), ints(&[1, 1]));

        let first = vertex_for_subset(&rs, &lambda, NodeSet::singleton(0));
        assert_eq!(first.coeffs, vec![ratio(1, 2)]);
        assert_eq!(first.point, vec![int(0), ratio(3, 2)]);
        assert_eq!(first.coeff(0), Some(&ratio(1, 2)));
        assert_eq!(first.coeff(1), None);
        let hs = halfspaces(&rs, &lambda);
        assert!(hs.contains(&first.point));
        // a_1 = 0 and the second cone row are tight.
        assert_eq!(hs.tight_rows(&first.point), vec![0, 3]);

        let empty = vertex_for_subset(&rs, &lambda, NodeSet::EMPTY);
        assert!(empty.coeffs.is_empty());
        assert_eq!(empty.point, ints(&[1, 1]));
    }

    #[test]
    fn a2_strongly_dominant_has_four_vertices() {
        let v = all_vertices(&sys("A2"), &weight(&[1, 1]));
        assert_eq!(
            v.points(),
            vec![
                ints(&[1, 1]),
                vec![int(0), ratio(3, 2)],
                vec![ratio(3, 2), int(0)],
                ints(&[0, 0]),
            ]
        );
        assert_eq!(v.merged().count(), 0);
    }

    #[test]
    fn a2_wall_merges_lambda_with_second_subset() {
        let v = all_vertices(&sys("A2"), &weight(&[1, 0]));
        assert_eq!(
            v.points(),
            vec![ints(&[1, 0]), vec![int(0), ratio(1, 2)], ints(&[0, 0])]
        );
        let merged: Vec<_> = v.merged().collect();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].subsets, vec![NodeSet::EMPTY, NodeSet::singleton(1)]);
        assert_eq!(v.records[2].coeffs, ints(&[0]));
    }

    #[test]
    fn a3_six_rho_has_eight_vertices() {
        let rs = sys("A3");
        let lambda = DominantWeight::new(rs.rho().scaled(&int(6)).coords).unwrap();
        assert_eq!(all_vertices(&rs, &lambda).distinct_count(), 8);
    }

    #[test]
    fn a1_halfspaces() {
        let hs = halfspaces(&sys("A1"), &weight(&[2]));
        assert_eq!(hs.rows.len(), 2);
        assert_eq!(hs.rows[0].normal, ints(&[1]));
        assert_eq!(hs.rows[0].offset, int(0));
        assert_eq!(hs.rows[1].normal, vec![ratio(-1, 2)]);
        assert_eq!(hs.rows[1].offset, int(1));
        assert!(hs.contains(&ints(&[0])) && hs.contains(&ints(&[2])));
        assert!(!hs.contains(&ints(&[3])) && !hs.contains(&ints(&[-1])));
    }

    #[test]
    fn contains_examples() {
        let rs = sys("A2");
        let lambda = weight(&[1, 1]);
        assert!(contains(&rs, &lambda, &lambda.as_weight()));
        assert!(contains(&rs, &lambda, &WeightVector::zero(2, Basis::Coweight)));
        let x = WeightVector::coweight(vec![int(1), ratio(3, 2)]);
        assert!(!contains(&rs, &lambda, &x));
        // λ - x = -(1/2)ϖ_2∨ = -(1/6, 1/3) in coroot coordinates: both cone
        // rows fail, no dominance row does.
        let hs = halfspaces(&rs, &lambda);
        let violated: Vec<_> = hs
            .rows
            .iter()
            .filter(|h| h.slack(&x.coords).is_negative())
            .map(|h| h.kind)
            .collect();
        assert_eq!(violated, vec![RowKind::Cone(0), RowKind::Cone(1)]);
        // Coroot-basis input is converted first.
        assert!(contains(&rs, &lambda, &WeightVector::coroot(ints(&[1, 1]))));
    }

    #[test]
    fn orbit_points_satisfy_cone_rows() {
        let rs = sys("B2");
        let lambda = DominantWeight::new(vec![int(3), ratio(1, 2)]).unwrap();
        let hs = halfspaces(&rs, &lambda);
        let orbit = rs.weyl_orbit(&lambda.as_weight(), 100).unwrap();
        assert_eq!(orbit.len(), 8);
        for w in &orbit {
            for h in hs.rows.iter().filter(|h| matches!(h.kind, RowKind::Cone(_))) {
                assert!(!h.slack(&w.coords).is_negative());
            }
        }
    }

    #[test]
    fn parse_lambda_forms() {
        let rs = sys("A3");
        let six_rho = DominantWeight::parse(&rs, &["6*rho".to_string()]).unwrap();
        assert_eq!(six_rho.coords(), ints(&[6, 6, 6]).as_slice());
        let half = DominantWeight::parse(&rs, &["1/2 rho".to_string()]).unwrap();
        assert_eq!(half.coords()[0], ratio(1, 2));
        let listed = DominantWeight::parse(&rs, &["1".into(), "0".into(), "2/3".into()]).unwrap();
        assert_eq!(listed.walls(), NodeSet::singleton(1));
        let joined = DominantWeight::parse(&rs, &["1,0,2/3".to_string()]).unwrap();
        assert_eq!(joined, listed);
        assert!(matches!(
            DominantWeight::parse(&rs, &["1".into(), "2".into()]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            DominantWeight::parse(&rs, &["1".into(), "-1".into(), "0".into()]),
            Err(PolytopeError::NotDominant { index: 1, .. })
        ));
    }
}
