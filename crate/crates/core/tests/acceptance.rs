//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Built with `harness = false` so the lines are
//! always visible in `cargo test` output.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weightpoly::cartan::DEFAULT_ORBIT_CAP;
use weightpoly::facelat::{build_face_lattice, cube_to_face, face_contains, face_to_cube, CubeFace, FaceLabel};
use weightpoly::lattice::{count_coroot_points, orbit_sum_identity, DEFAULT_BOX_CAP};
use weightpoly::linalg::affine_dimension;
use weightpoly::off::{export_off, polytope_mesh};
use weightpoly::oracle::{
    empirical_face_structure, enumerate_vertices_from_halfspaces, normalized_volume, orbit_hull_volume,
};
use weightpoly::polytope::RowKind;
use weightpoly::rational::int;
use weightpoly::report::{to_json, VerticesReport};
use weightpoly::{
    all_vertices, halfspaces, Basis, DominantWeight, NodeSet, Rational, RootSystem, WeightVector,
};

use common::*;

const SEED: u64 = 0x5eed_0001;
const INSTANCES: usize = 20;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda(xs: &[i64]) -> DominantWeight {
    DominantWeight::new(xs.iter().map(|&x| int(x)).collect()).unwrap()
}

/// The instances shared by the vertex criteria: 20 strongly dominant rational
/// weights for each irreducible type of rank at most 4, plus `G2` and `F4`.
fn vertex_instances() -> Vec<(RootSystem, DominantWeight)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for ty in rank_four_types() {
        let rs = RootSystem::of_type(ty);
        for _ in 0..INSTANCES {
            let l = strongly_dominant(&mut rng, rs.rank());
            out.push((rs.clone(), l));
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..k {
        num *= n - t;
        den *= t + 1;
    }
    num / den
}

fn vertex_count() -> Outcome {
    let start = Instant::now();
    let instances = vertex_instances();
    for (rs, l) in &instances {
        let v = all_vertices(rs, l);
        let expected = 1usize << rs.rank();
        check(v.distinct_count() == expected, || {
            format!("{} {:?}: {} distinct points, expected {expected}", rs.label(), l.coords(), v.distinct_count())
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances, 2^r distinct points each, {elapsed:.2?}", instances.len()))
}

fn formula_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let instances = vertex_instances();
    for (rs, l) in &instances {
        let r = rs.rank();
        let v = all_vertices(rs, l);
        let hs = halfspaces(rs, l);
        let oracle = enumerate_vertices_from_halfspaces(&hs).map_err(|e| e.to_string())?;
        let formula: BTreeSet<Vec<Rational>> = v.points().into_iter().collect();
        check(formula == oracle.point_set(), || {
            format!("{} {:?}: formula and halfspace vertex sets differ", rs.label(), l.coords())
        })?;
        // The tight dominance rows of each vertex recover its subset J, and
        // the tight cone rows its complement.
        for ov in &oracle.vertices {
            let mut dom = NodeSet::EMPTY;
            let mut cone = NodeSet::EMPTY;
            for &k in &ov.tight_rows {
                match hs.rows[k].kind {
                    RowKind::Dominance(i) => dom = dom.union(NodeSet::singleton(i)),
                    RowKind::Cone(i) => cone = cone.union(NodeSet::singleton(i)),
                }
            }
            let record = &v.records[dom.bits() as usize];
            check(record.point == ov.point.coords && cone == dom.complement(r), || {
                format!("{} {:?}: tight rows {:?} do not match p_{dom}", rs.label(), l.coords(), ov.tight_rows)
            })?;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances, exact set equality, {elapsed:.2?}", instances.len()))
}

fn hexahedron() -> Outcome {
    let rs = RootSystem::from_label("A3").unwrap();
    let l = DominantWeight::parse(&rs, &["6*rho".to_string()]).map_err(|e| e.to_string())?;
    check(l.coords() == [int(6), int(6), int(6)], || format!("6*rho parsed as {:?}", l.coords()))?;

    let lat = build_face_lattice(3).map_err(|e| e.to_string())?;
    let combinatorial = lat.f_vector();
    check(combinatorial == [8, 12, 6, 1], || format!("face lattice f-vector {combinatorial:?}"))?;

    let hs = halfspaces(&rs, &l);
    let oracle = enumerate_vertices_from_halfspaces(&hs).map_err(|e| e.to_string())?;
    let faces = empirical_face_structure(&oracle, &hs);
    let geometric: Vec<u64> = faces.f_vector.iter().map(|&n| n as u64).collect();
    check(geometric == combinatorial, || format!("oracle f-vector {geometric:?}"))?;

    let off = export_off(&rs, &l).map_err(|e| e.to_string())?;
    let mut lines = off.lines();
    check(lines.next() == Some("OFF"), || "missing OFF header".into())?;
    let counts: Vec<usize> = lines
        .next()
        .unwrap_or_default()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    check(counts == [8, 6, 12], || format!("OFF counts {counts:?}"))?;
    for _ in 0..8 {
        let coords: Vec<f64> = lines
            .next()
            .unwrap_or_default()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        check(coords.len() == 3 && coords.iter().all(|x| x.is_finite()), || "bad vertex row".into())?;
    }
    let mut edges = BTreeSet::new();
    for _ in 0..6 {
        let row: Vec<usize> = lines
            .next()
            .unwrap_or_default()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        check(row.len() == 5 && row[0] == 4 && row[1..].iter().all(|&i| i < 8), || {
            format!("bad face row {row:?}")
        })?;
        for k in 0..4 {
            let (a, b) = (row[1 + k], row[1 + (k + 1) % 4]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    check(lines.next().is_none(), || "trailing OFF content".into())?;
    check(edges.len() == 12, || format!("facet cycles give {} edges", edges.len()))?;
    let mesh = polytope_mesh(&rs, &l).map_err(|e| e.to_string())?;
    check(mesh.vertices.len() + mesh.faces.len() == mesh.edges + 2, || "Euler characteristic".into())?;
    Ok("f = (8, 12, 6) from face lattice and oracle; OFF 8 vertices, 6 quads, 12 edges".into())
}

fn hypercube() -> Outcome {
    let mut pairs = 0usize;
    for r in 1..=5 {
        let cube = CubeFace::all(r);
        check(cube.len() == 3usize.pow(r as u32), || format!("rank {r}: {} cube faces", cube.len()))?;
        let labels: Vec<FaceLabel> = cube.iter().map(|&h| cube_to_face(h)).collect();
        let distinct: BTreeSet<(u32, u32)> = labels.iter().map(|f| (f.i.bits(), f.j.bits())).collect();
        check(distinct.len() == cube.len(), || format!("rank {r}: theta not injective"))?;
        for (h, f) in cube.iter().zip(&labels) {
            check(f.i.union(f.j) == NodeSet::full(r), || format!("rank {r}: invalid label"))?;
            check(face_to_cube(*f) == *h, || format!("rank {r}: inverse map"))?;
            check(f.dim(r) == h.dim(), || format!("rank {r}: dimension not preserved"))?;
        }
        for (h, f) in cube.iter().zip(&labels) {
            for (h2, f2) in cube.iter().zip(&labels) {
                let lhs = h2.is_subface_of(h);
                let rhs = face_contains(r, (f.i, f.j), (f2.i, f2.j)).map_err(|e| e.to_string())?;
                check(lhs == rhs, || format!("rank {r}: containment differs"))?;
                pairs += 1;
            }
        }
    }

    // Geometric side: affine dimension of each face's vertex set, and the
    // vertex set agreeing with the vertices tight on the face's rows.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut faces_checked = 0usize;
    for ty in rank_four_types().into_iter().filter(|t| t.rank() <= 4) {
        let rs = RootSystem::of_type(ty);
        let r = rs.rank();
        let lat = build_face_lattice(r).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let l = strongly_dominant(&mut rng, r);
            let v = all_vertices(&rs, &l);
            let hs = halfspaces(&rs, &l);
            for (k, f) in lat.faces().iter().enumerate() {
                let subsets = lat.vertex_sets(k);
                let pts: Vec<&Vec<Rational>> = subsets.iter().map(|j| &v.records[j.bits() as usize].point).collect();
                check(affine_dimension(&pts) == lat.dim(k), || {
                    format!("{ty}: face ({},{}) has affine dimension {}", f.i, f.j, affine_dimension(&pts))
                })?;
                let on_face: BTreeSet<u32> = NodeSet::all(r)
                    .filter(|j| {
                        let p = &v.records[j.bits() as usize].point;
                        hs.rows.iter().all(|h| {
                            let active = match h.kind {
                                RowKind::Dominance(i) => !f.i.contains(i),
                                RowKind::Cone(i) => !f.j.contains(i),
                            };
                            !active || h.slack(p) == int(0)
                        })
                    })
                    .map(|j| j.bits())
                    .collect();
                let listed: BTreeSet<u32> = subsets.iter().map(|j| j.bits()).collect();
                check(on_face == listed, || format!("{ty}: face ({},{}) vertex set", f.i, f.j))?;
                faces_checked += 1;
            }
        }
    }
    Ok(format!("{pairs} containment pairs for r <= 5; {faces_checked} faces with matching affine dimension"))
}

fn f_vectors() -> Outcome {
    for r in 1..=8u64 {
        let lat = build_face_lattice(r as usize).map_err(|e| e.to_string())?;
        let mut counts = vec![0u64; r as usize + 1];
        for k in 0..lat.faces().len() {
            counts[lat.dim(k)] += 1;
        }
        let expected: Vec<u64> = (0..=r).map(|k| binomial(r, k) * 2u64.pow((r - k) as u32)).collect();
        check(counts == expected && lat.f_vector() == expected, || {
            format!("rank {r}: {counts:?}, expected {expected:?}")
        })?;
    }
    Ok("f_k = C(r,k) 2^(r-k) for r = 1..8".into())
}

fn walls() -> Outcome {
    let a2 = RootSystem::from_label("A2").unwrap();
    let l = lambda(&[1, 0]);
    let v = all_vertices(&a2, &l);
    check(v.distinct_count() == 3, || format!("A2 (1,0): {} merged points", v.distinct_count()))?;
    let hs = halfspaces(&a2, &l);
    let oracle = enumerate_vertices_from_halfspaces(&hs).map_err(|e| e.to_string())?;
    let faces = empirical_face_structure(&oracle, &hs);
    check(faces.dim == 2 && faces.f_vector == [3, 3, 1], || format!("A2 (1,0): f-vector {:?}", faces.f_vector))?;

    let a3 = RootSystem::from_label("A3").unwrap();
    let mut sizes = Vec::new();
    for a in [[1, 0, 1], [0, 6, 0]] {
        let l = lambda(&a);
        let v = all_vertices(&a3, &l);
        let formula: BTreeSet<Vec<Rational>> = v.points().into_iter().collect();
        let oracle = enumerate_vertices_from_halfspaces(&halfspaces(&a3, &l)).map_err(|e| e.to_string())?;
        check(formula == oracle.point_set(), || {
            format!("A3 {a:?}: formula {} points, oracle {} vertices", formula.len(), oracle.len())
        })?;
        sizes.push(formula.len());
    }
    Ok(format!("A2 (1,0) triangle; A3 (1,0,1) {} and (0,6,0) {} vertices match", sizes[0], sizes[1]))
}

fn volume_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut n = 0;
    for ty in rank_three_types() {
        let rs = RootSystem::of_type(ty);
        let w = Rational::from_integer(ty.weyl_group_order().into());
        for _ in 0..5 {
            let l = strongly_dominant(&mut rng, rs.rank());
            let hs = halfspaces(&rs, &l);
            let vrep = enumerate_vertices_from_halfspaces(&hs).map_err(|e| e.to_string())?;
            let piece = normalized_volume(&rs, &vrep).map_err(|e| e.to_string())?;
            let whole = orbit_hull_volume(&rs, &l, DEFAULT_ORBIT_CAP).map_err(|e| e.to_string())?;
            check(!piece.degenerate && piece.value.clone() * &w == whole.value, || {
                format!("{ty} {:?}: {} * {w} != {}", l.coords(), piece.value, whole.value)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} instances, vol(P) |W| = vol(conv(W lambda)) exactly"))
}

fn lattice_points() -> Outcome {
    let a1 = RootSystem::from_label("A1").unwrap();
    let a2 = RootSystem::from_label("A2").unwrap();
    let c1 = count_coroot_points(&a1, &lambda(&[2]), false, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    let c2 = count_coroot_points(&a2, &lambda(&[1, 1]), false, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    check(c1.count == 2 && c2.count == 2, || format!("hand counts {} and {}", c1.count, c2.count))?;
    let i1 = orbit_sum_identity(&a1, &lambda(&[2]), DEFAULT_ORBIT_CAP, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    let i2 = orbit_sum_identity(&a2, &lambda(&[1, 1]), DEFAULT_ORBIT_CAP, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    check((i1.lhs, i1.rhs, i2.lhs, i2.rhs) == (3, 3, 7, 7), || format!("hand identities {i1:?} {i2:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut n = 0;
    for ty in rank_three_types() {
        let rs = RootSystem::of_type(ty);
        for _ in 0..5 {
            let l = dominant_coroot_point(&mut rng, &rs, 3);
            let id = orbit_sum_identity(&rs, &l, DEFAULT_ORBIT_CAP, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
            check(id.holds(), || format!("{ty} {:?}: lhs {} rhs {}", l.coords(), id.lhs, id.rhs))?;
            n += 1;
        }
    }
    Ok(format!("hand cases 2, 2, 3, 7; {n} random coroot-lattice weights satisfy lhs = rhs"))
}

fn property_suites() -> Outcome {
    // Inverse Cartan matrices of every principal submatrix are nonnegative.
    let mut blocks = 0;
    for ty in rank_four_types() {
        let rs = RootSystem::of_type(ty);
        for j in NodeSet::all(rs.rank()).filter(|j| !j.is_empty()) {
            let inv = rs.cartan_q().principal_submatrix(&j.to_vec()).inverse().ok_or("singular block")?;
            check(inv.to_rows().iter().flatten().all(|x| *x >= int(0)), || {
                format!("{ty}: negative entry in inverse of A_{j}")
            })?;
            blocks += 1;
        }
    }

    // Reflections are involutions and preserve the inner product.
    let systems: Vec<RootSystem> = rank_four_types().into_iter().map(RootSystem::of_type).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for _ in 0..1000 {
        let rs = &systems[rng.gen_range(0..systems.len())];
        let r = rs.rank();
        let basis = if rng.gen_bool(0.5) { Basis::Coweight } else { Basis::Coroot };
        let x = WeightVector { basis, coords: rational_vector(&mut rng, r) };
        let y = WeightVector::coweight(rational_vector(&mut rng, r));
        let i = rng.gen_range(0..r);
        let sx = rs.simple_reflection(i, &x).map_err(|e| e.to_string())?;
        let ssx = rs.simple_reflection(i, &sx).map_err(|e| e.to_string())?;
        check(rs.to_coweight(&ssx) == rs.to_coweight(&x), || format!("{}: s_{i} not involutive", rs.label()))?;
        let sy = rs.simple_reflection(i, &y).map_err(|e| e.to_string())?;
        check(rs.inner_product(&sx, &sy) == rs.inner_product(&x, &y), || {
            format!("{}: s_{i} changes the inner product", rs.label())
        })?;
    }

    // Vertices scale with λ.
    for (rs, l) in vertex_instances().iter().step_by(4) {
        let t = positive_rational(&mut rng);
        let base = all_vertices(rs, l);
        let scaled = all_vertices(rs, &l.scaled(&t));
        for (a, b) in base.records.iter().zip(&scaled.records) {
            let expected: Vec<Rational> = a.point.iter().map(|x| x * &t).collect();
            check(b.point == expected, || format!("{}: p_J(t lambda) != t p_J(lambda)", rs.label()))?;
        }
    }

    // Reports are byte-identical across runs.
    for (rs, l) in vertex_instances().iter().step_by(10) {
        let first = to_json(&VerticesReport::new(rs, l, &all_vertices(rs, l)));
        let second = to_json(&VerticesReport::new(rs, l, &all_vertices(rs, l)));
        check(first == second, || format!("{}: JSON differs between runs", rs.label()))?;
    }
    Ok(format!("{blocks} inverse blocks nonnegative; 1000 reflection samples; scaling; deterministic JSON"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("vertex count 2^r", vertex_count),
        ("formula/oracle vertex equality", formula_oracle_equivalence),
        ("A3 6rho hexahedron", hexahedron),
        ("hypercube face lattice", hypercube),
        ("f-vectors", f_vectors),
        ("wall degeneration", walls),
        ("volume identity", volume_identity),
        ("lattice-point identity", lattice_points),
        ("property suites", property_suites),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{:.2?}]", n + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{:.2?}]", n + 1, t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {:.2?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
