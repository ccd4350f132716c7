//! JSON reports. Rationals are written as canonical `"p/q"` strings, subset
//! members and node labels are 1-based, and struct field order fixes the key
//! order so identical inputs give byte-identical output.

use serde::Serialize;

use crate::cartan::{RootSystem, WeightVector};
use crate::facelat::{FaceLattice, FaceNode};
use crate::oracle::{FaceReport, FacetRecord, Provenance, VRepresentation, VertexDiff};
use crate::polytope::{DominantWeight, PolytopeVertices};
use crate::rational::format_vec;

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemInfo {
    pub system: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub rho: Vec<String>,
    pub weyl_group_order: Option<String>,
}

impl SystemInfo {
    pub fn new(rs: &RootSystem, orbit_cap: usize) -> Self {
        Self {
            system: rs.label().to_string(),
            rank: rs.rank(),
            cartan: rs.cartan().entries().to_vec(),
            symmetrizers: format_vec(rs.symmetrizers()),
            gram: rs.gram().to_rows().iter().map(|r| format_vec(r)).collect(),
            rho: format_vec(&rs.rho().coords),
            weyl_group_order: rs.weyl_group_order(orbit_cap).ok().map(|n| n.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexJson {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub c: Vec<String>,
    pub point: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MergeJson {
    pub point: Vec<String>,
    pub subsets: Vec<Vec<usize>>,
}

/// Distinct vertices (each with its lowest subset) and merged subsets.
#[derive(Debug, Clone, Serialize)]
pub struct VerticesReport {
    pub system: String,
    pub lambda: Vec<String>,
    pub basis: &'static str,
    pub strongly_dominant: bool,
    pub subsets_solved: usize,
    pub distinct_vertices: usize,
    pub vertices: Vec<VertexJson>,
    pub merge_classes: Vec<MergeJson>,
}

impl VerticesReport {
    pub fn new(rs: &RootSystem, lambda: &DominantWeight, v: &PolytopeVertices) -> Self {
        let vertices = v
            .classes
            .iter()
            .map(|class| {
                let rec = &v.records[class.subsets[0].bits() as usize];
                VertexJson {
                    j: rec.subset.to_labels(),
                    c: format_vec(&rec.coeffs),
                    point: format_vec(&rec.point),
                }
            })
            .collect();
        let merge_classes = v
            .merged()
            .map(|c| MergeJson {
                point: format_vec(&c.point),
                subsets: c.subsets.iter().map(|s| s.to_labels()).collect(),
            })
            .collect();
        Self {
            system: rs.label().to_string(),
            lambda: format_vec(lambda.coords()),
            basis: "coweight",
            strongly_dominant: lambda.is_strongly_dominant(),
            subsets_solved: v.records.len(),
            distinct_vertices: v.distinct_count(),
            vertices,
            merge_classes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub rank: usize,
    pub f_vector: Vec<u64>,
    pub nodes: Vec<FaceNode>,
    pub edges: Vec<[usize; 2]>,
}

impl LatticeReport {
    pub fn new(lat: &FaceLattice) -> Self {
        Self {
            rank: lat.rank(),
            f_vector: lat.f_vector(),
            nodes: lat.nodes(),
            edges: lat.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleVertexJson {
    pub point: Vec<String>,
    pub tight_rows: Vec<usize>,
}

/// Oracle vertices, recovered faces and the comparison with the formula.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub system: String,
    pub lambda: Vec<String>,
    pub provenance: Provenance,
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub vertices: Vec<OracleVertexJson>,
    pub facets: Vec<FacetRecord>,
    pub formula_points_extreme: Vec<bool>,
    pub diff: VertexDiff,
}

impl OracleReport {
    pub fn new(
        rs: &RootSystem,
        lambda: &DominantWeight,
        oracle: &VRepresentation,
        faces: &FaceReport,
        extreme: Vec<bool>,
        diff: VertexDiff,
    ) -> Self {
        Self {
            system: rs.label().to_string(),
            lambda: format_vec(lambda.coords()),
            provenance: oracle.provenance,
            dim: faces.dim,
            f_vector: faces.f_vector.clone(),
            vertices: oracle
                .vertices
                .iter()
                .map(|v| OracleVertexJson {
                    point: format_vec(&v.point.coords),
                    tight_rows: v.tight_rows.iter().map(|k| k + 1).collect(),
                })
                .collect(),
            facets: faces.facets.clone(),
            formula_points_extreme: extreme,
            diff,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub system: String,
    pub lambda: Vec<String>,
    pub normalization: &'static str,
    pub volume: String,
    pub degenerate: bool,
    pub weyl_group_order: Option<String>,
    pub orbit_hull_volume: Option<String>,
    pub identity_holds: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub system: String,
    pub basis: &'static str,
    pub weight: Vec<String>,
    pub size: usize,
    pub points: Vec<Vec<String>>,
}

impl OrbitReport {
    pub fn new(rs: &RootSystem, weight: &WeightVector, orbit: &[WeightVector]) -> Self {
        Self {
            system: rs.label().to_string(),
            basis: "coweight",
            weight: format_vec(&weight.coords),
            size: orbit.len(),
            points: orbit.iter().map(|w| format_vec(&w.coords)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::all_vertices;
    use crate::rational::int;

    #[test]
    fn a2_vertex_report_is_stable() {
        let rs = RootSystem::from_label("A2").unwrap();
        let l = DominantWeight::new(vec![int(1), int(1)]).unwrap();
        let report = to_json(&VerticesReport::new(&rs, &l, &all_vertices(&rs, &l)));
        assert!(report.contains("\"3/2\""));
        assert!(report.find("\"system\"").unwrap() < report.find("\"vertices\"").unwrap());
        let again = to_json(&VerticesReport::new(&rs, &l, &all_vertices(&rs, &l)));
        assert_eq!(report, again);
        let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(parsed["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["vertices"][1]["J"], serde_json::json!([1]));
        assert_eq!(parsed["vertices"][1]["c"], serde_json::json!(["1/2"]));
    }

    #[test]
    fn wall_report_lists_merges() {
        let rs = RootSystem::from_label("A2").unwrap();
        let l = DominantWeight::new(vec![int(1), int(0)]).unwrap();
        let parsed: serde_json::Value =
            serde_json::from_str(&to_json(&VerticesReport::new(&rs, &l, &all_vertices(&rs, &l)))).unwrap();
        assert_eq!(parsed["distinct_vertices"], 3);
        assert_eq!(parsed["merge_classes"][0]["subsets"], serde_json::json!([[], [2]]));
    }
}
