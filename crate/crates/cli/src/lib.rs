//! Command-line front end for `weightpoly`.
//!
//! Every command produces a single text artifact (JSON, a plain f-vector line
//! or an OFF mesh) plus a success flag; `main` decides where the text goes and
//! turns the flag into the exit status.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use weightpoly::cartan::{CartanMatrix, CartanType, DEFAULT_ORBIT_CAP};
use weightpoly::facelat::{build_face_lattice, cube_to_face, face_contains, CubeFace, MAX_LATTICE_RANK};
use weightpoly::lattice::{count_coroot_points, in_coroot_lattice, orbit_sum_identity, DEFAULT_BOX_CAP, MAX_ORBIT_SUM_RANK};
use weightpoly::linalg::affine_dimension;
use weightpoly::off::export_off;
use weightpoly::oracle::{
    chamber_intersection, diff_vertices, empirical_face_structure, enumerate_vertices_from_halfspaces,
    formula_extremality, normalized_volume, orbit_hull_volume, VRepresentation, VertexDiff,
};
use weightpoly::rational::{format_rational, format_vec, parse_rational, ratio};
use weightpoly::report::{to_json, OracleReport, OrbitReport, SystemInfo, VerticesReport, VolumeReport};
use weightpoly::{all_vertices, halfspaces, DominantWeight, Rational, RootSystem, WeightVector};

/// Rank up to which volume and lattice identities against the full orbit
/// hull are computed.
pub const ORBIT_HULL_RANK: usize = MAX_ORBIT_SUM_RANK;

#[derive(Debug, Parser)]
#[command(name = "weightpoly", version, about = "Dominant weight polytopes in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Root system: a type label such as A3, B2xG2, or a JSON Cartan matrix file.
    #[arg(long, global = true)]
    pub system: Option<String>,

    /// λ in coweight coordinates: "1,2/3,0" or "N*rho".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Maximum number of Weyl orbit points to generate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    pub cap_orbit: usize,

    /// Maximum number of lattice-point candidates to scan.
    #[arg(long, global = true, default_value_t = DEFAULT_BOX_CAP)]
    pub cap_box: u128,

    /// List the lattice points found, not just their number.
    #[arg(long, global = true)]
    pub emit_points: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Positional {
    /// System (unless --system is given) followed by λ coordinates.
    #[arg(allow_negative_numbers = true)]
    pub args: Vec<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Cartan matrix, symmetrizers, Gram matrix, rho and Weyl group order.
    Info(Positional),
    /// The 2^r formula points p_J, with merged subsets for wall weights.
    Vertices(Positional),
    /// Oracle vertices and faces, compared with the face lattice.
    Faces(Positional),
    /// Proper f-vector f_0 .. f_{r-1} of the r-cube; takes a rank or a system.
    Fvector(Positional),
    /// Checks the face lattice against the r-cube, and against geometry when λ is given.
    CheckCube(Positional),
    /// Volume with the coroot lattice at covolume 1.
    Volume(Positional),
    /// Coroot-lattice points in the polytope.
    LatticePoints(Positional),
    /// Weyl orbit of a weight, in coweight coordinates.
    Orbit(Positional),
    /// Formula-versus-oracle checks over the built-in types of rank at most 4.
    Verify(VerifyArgs),
    /// OFF mesh of a rank-3 polytope.
    Export3d(Positional),
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Random strongly dominant weights per type.
    #[arg(long, default_value_t = 20)]
    pub instances: usize,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
}

/// Text to emit and whether every check inside the command passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, success: true }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Info(p) => {
            let (rs, _) = inputs(cli, p, false)?;
            Ok(Output::ok(to_json(&SystemInfo::new(&rs, cli.cap_orbit))))
        }
        Command::Vertices(p) => {
            let (rs, lambda) = system_and_lambda(cli, p)?;
            let v = all_vertices(&rs, &lambda);
            Ok(Output::ok(to_json(&VerticesReport::new(&rs, &lambda, &v))))
        }
        Command::Faces(p) => {
            let (rs, lambda) = system_and_lambda(cli, p)?;
            faces(&rs, &lambda)
        }
        Command::Fvector(p) => {
            let r = rank_argument(cli, p)?;
            let lat = build_face_lattice(r)?;
            let f = lat.f_vector();
            let line: Vec<String> = f[..r].iter().map(u64::to_string).collect();
            Ok(Output::ok(format!("{}\n", line.join(" "))))
        }
        Command::CheckCube(p) => check_cube(cli, p),
        Command::Volume(p) => {
            let (rs, lambda) = system_and_lambda(cli, p)?;
            volume(cli, &rs, &lambda)
        }
        Command::LatticePoints(p) => {
            let (rs, lambda) = system_and_lambda(cli, p)?;
            lattice_points(cli, &rs, &lambda)
        }
        Command::Orbit(p) => {
            let (rs, tokens) = inputs(cli, p, true)?;
            let coords = weight_tokens(&rs, &tokens)?;
            let x = WeightVector::coweight(coords);
            let orbit = rs.weyl_orbit(&x, cli.cap_orbit)?;
            Ok(Output::ok(to_json(&OrbitReport::new(&rs, &x, &orbit))))
        }
        Command::Verify(args) => verify(cli, args),
        Command::Export3d(p) => {
            let (rs, lambda) = system_and_lambda(cli, p)?;
            Ok(Output::ok(export_off(&rs, &lambda)?))
        }
    }
}

/// Writes the output to `--out` or stdout.
pub fn emit(cli: &Cli, out: &Output) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, &out.text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    }
}

/// Root system from a type label, or from a JSON Cartan matrix file.
pub fn resolve_system(label: &str) -> Result<RootSystem> {
    let path = Path::new(label);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {label}"))?;
        let cartan = CartanMatrix::from_json(&text).with_context(|| format!("parsing {label}"))?;
        return Ok(RootSystem::from_cartan(cartan)?);
    }
    RootSystem::from_label(label).with_context(|| format!("unknown system `{label}`"))
}

/// The system and the remaining weight tokens.
fn inputs(cli: &Cli, p: &Positional, want_weight: bool) -> Result<(RootSystem, Vec<String>)> {
    let mut args = p.args.clone();
    let system = match &cli.system {
        Some(s) => s.clone(),
        None if args.is_empty() => bail!("missing root system"),
        None => args.remove(0),
    };
    let rs = resolve_system(&system)?;
    if let Some(l) = &cli.lambda {
        if !args.is_empty() {
            bail!("λ given both positionally and with --lambda");
        }
        args.push(l.clone());
    }
    if !want_weight && !args.is_empty() {
        bail!("unexpected arguments: {}", args.join(" "));
    }
    if want_weight && args.is_empty() {
        bail!("missing λ");
    }
    Ok((rs, args))
}

fn system_and_lambda(cli: &Cli, p: &Positional) -> Result<(RootSystem, DominantWeight)> {
    let (rs, tokens) = inputs(cli, p, true)?;
    let lambda = DominantWeight::parse(&rs, &tokens)?;
    Ok((rs, lambda))
}

/// Like λ parsing but without the dominance requirement.
fn weight_tokens(rs: &RootSystem, tokens: &[String]) -> Result<Vec<Rational>> {
    let tokens: Vec<&str> = tokens
        .iter()
        .flat_map(|t| t.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .collect();
    if let [single] = tokens.as_slice() {
        if let Some(n) = single.strip_suffix("rho") {
            let n = n.trim_end_matches('*');
            let n = if n.is_empty() { ratio(1, 1) } else { parse_rational(n)? };
            return Ok(rs.rho().scaled(&n).coords);
        }
    }
    let coords = tokens.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rs.rank() {
        bail!("expected {} coordinates, got {}", rs.rank(), coords.len());
    }
    Ok(coords)
}

/// A bare rank, or the rank of a system.
fn rank_argument(cli: &Cli, p: &Positional) -> Result<usize> {
    let first = p.args.first().or(cli.system.as_ref()).ok_or_else(|| anyhow!("missing rank"))?;
    let r = match first.parse::<usize>() {
        Ok(r) => r,
        Err(_) => resolve_system(first)?.rank(),
    };
    if r == 0 || r > MAX_LATTICE_RANK {
        bail!("rank must be between 1 and {MAX_LATTICE_RANK}");
    }
    Ok(r)
}

#[derive(Debug, Serialize)]
struct FacesReport {
    #[serde(flatten)]
    oracle: OracleReport,
    /// f-vector of the r-cube, for comparison; present for strongly dominant λ.
    cube_f_vector: Option<Vec<u64>>,
    matches_cube: Option<bool>,
}

fn faces(rs: &RootSystem, lambda: &DominantWeight) -> Result<Output> {
    let hs = halfspaces(rs, lambda);
    let oracle = enumerate_vertices_from_halfspaces(&hs)?;
    let face_data = empirical_face_structure(&oracle, &hs);
    let v = all_vertices(rs, lambda);
    let formula = VRepresentation::from_formula(&v, &hs);
    let extreme = formula_extremality(&v, &oracle);
    let diff = diff_vertices(&formula, &oracle);
    let (cube_f_vector, matches_cube) = if lambda.is_strongly_dominant() {
        let f = build_face_lattice(rs.rank())?.f_vector();
        let found: Vec<u64> = face_data.f_vector.iter().map(|&n| n as u64).collect();
        let same = f == found;
        (Some(f), Some(same))
    } else {
        (None, None)
    };
    let success = matches_cube.unwrap_or(true) && (diff.is_empty() || !lambda.is_strongly_dominant());
    let report = FacesReport {
        oracle: OracleReport::new(rs, lambda, &oracle, &face_data, extreme, diff),
        cube_f_vector,
        matches_cube,
    };
    Ok(Output {
        text: to_json(&report),
        success,
    })
}

#[derive(Debug, Serialize)]
struct GeometricCubeCheck {
    system: String,
    lambda: Vec<String>,
    faces_checked: usize,
    dimensions_match: bool,
}

#[derive(Debug, Serialize)]
struct CubeCheck {
    rank: usize,
    cube_faces: usize,
    pairs_checked: usize,
    isomorphism: bool,
    geometric: Option<GeometricCubeCheck>,
}

fn check_cube(cli: &Cli, p: &Positional) -> Result<Output> {
    let geometric = match p.args.len() + usize::from(cli.system.is_some()) + usize::from(cli.lambda.is_some()) {
        0 => bail!("missing rank or system"),
        1 => None,
        _ => Some(system_and_lambda(cli, p)?),
    };
    let r = match &geometric {
        Some((rs, _)) => rs.rank(),
        None => rank_argument(cli, p)?,
    };
    if r > 6 {
        bail!("exhaustive containment check is limited to rank 6");
    }
    let cube = CubeFace::all(r);
    let labels: Vec<_> = cube.iter().map(|&h| cube_to_face(h)).collect();
    let mut isomorphism = true;
    for (h, f) in cube.iter().zip(&labels) {
        for (h2, f2) in cube.iter().zip(&labels) {
            isomorphism &= h2.is_subface_of(h) == face_contains(r, (f.i, f.j), (f2.i, f2.j))?;
        }
    }
    let geometric = match geometric {
        None => None,
        Some((rs, lambda)) => {
            if !lambda.is_strongly_dominant() {
                bail!("the geometric check needs a strongly dominant λ");
            }
            let lat = build_face_lattice(r)?;
            let v = all_vertices(&rs, &lambda);
            let mut ok = true;
            for k in 0..lat.faces().len() {
                let pts: Vec<&Vec<Rational>> =
                    lat.vertex_sets(k).iter().map(|j| &v.records[j.bits() as usize].point).collect();
                ok &= affine_dimension(&pts) == lat.dim(k);
            }
            Some(GeometricCubeCheck {
                system: rs.label().to_string(),
                lambda: format_vec(lambda.coords()),
                faces_checked: lat.faces().len(),
                dimensions_match: ok,
            })
        }
    };
    let success = isomorphism && geometric.as_ref().is_none_or(|g| g.dimensions_match);
    let report = CubeCheck {
        rank: r,
        cube_faces: cube.len(),
        pairs_checked: cube.len() * cube.len(),
        isomorphism,
        geometric,
    };
    Ok(Output {
        text: to_json(&report),
        success,
    })
}

fn volume(cli: &Cli, rs: &RootSystem, lambda: &DominantWeight) -> Result<Output> {
    let hs = halfspaces(rs, lambda);
    let vrep = enumerate_vertices_from_halfspaces(&hs)?;
    let vol = normalized_volume(rs, &vrep)?;
    let mut report = VolumeReport {
        system: rs.label().to_string(),
        lambda: format_vec(lambda.coords()),
        normalization: "coroot-lattice",
        volume: format_rational(&vol.value),
        degenerate: vol.degenerate,
        weyl_group_order: None,
        orbit_hull_volume: None,
        identity_holds: None,
    };
    if rs.rank() <= ORBIT_HULL_RANK {
        let order = rs.weyl_group_order(cli.cap_orbit)?;
        let whole = orbit_hull_volume(rs, lambda, cli.cap_orbit)?;
        let holds = vol.value.clone() * Rational::from_integer(order.into()) == whole.value;
        report.weyl_group_order = Some(order.to_string());
        report.orbit_hull_volume = Some(format_rational(&whole.value));
        report.identity_holds = Some(holds);
    }
    Ok(Output {
        success: report.identity_holds.unwrap_or(true),
        text: to_json(&report),
    })
}

#[derive(Debug, Serialize)]
struct LatticePointsReport {
    system: String,
    lambda: Vec<String>,
    #[serde(flatten)]
    report: weightpoly::lattice::LatticePointReport,
    /// Lattice points of the full orbit hull, when the orbit-sum check ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_hull_count: Option<u128>,
}

fn lattice_points(cli: &Cli, rs: &RootSystem, lambda: &DominantWeight) -> Result<Output> {
    let mut report = count_coroot_points(rs, lambda, cli.emit_points, cli.cap_box)?;
    let mut orbit_hull_count = None;
    let mut success = true;
    if rs.rank() <= ORBIT_HULL_RANK && in_coroot_lattice(rs, lambda.coords()) {
        let id = orbit_sum_identity(rs, lambda, cli.cap_orbit, cli.cap_box)?;
        report.orbit_sum_check = Some(id.lhs);
        orbit_hull_count = Some(id.rhs);
        success = id.holds();
    }
    let out = LatticePointsReport {
        system: rs.label().to_string(),
        lambda: format_vec(lambda.coords()),
        report,
        orbit_hull_count,
    };
    Ok(Output {
        text: to_json(&out),
        success,
    })
}

/// Built-in irreducible types of rank at most 4.
pub fn verify_types() -> Vec<CartanType> {
    use CartanType::*;
    vec![
        A(1), A(2), A(3), A(4),
        B(2), B(3), B(4),
        C(2), C(3), C(4),
        D(3), D(4),
        G2, F4,
    ]
}

#[derive(Debug, Serialize)]
struct Mismatch {
    system: String,
    lambda: Vec<String>,
    check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff: Option<VertexDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Debug, Serialize)]
struct TypeSummary {
    system: String,
    instances: usize,
    checks: usize,
    mismatches: usize,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    seed: u64,
    instances_per_type: usize,
    checks: usize,
    mismatches: usize,
    types: Vec<TypeSummary>,
    records: Vec<Mismatch>,
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut records = Vec::new();
    let mut types = Vec::new();
    let mut total = 0;
    for ty in verify_types() {
        let rs = RootSystem::of_type(ty);
        let r = rs.rank();
        let before = records.len();
        let mut checks = 0;
        for _ in 0..args.instances {
            let coords = (0..r)
                .map(|_| ratio(rng.gen_range(1..=12), rng.gen_range(1..=4)))
                .collect();
            let lambda = DominantWeight::new(coords)?;
            let mismatch = |check, diff: Option<VertexDiff>, detail: Option<String>| Mismatch {
                system: rs.label().to_string(),
                lambda: format_vec(lambda.coords()),
                check,
                diff,
                detail,
            };

            let v = all_vertices(&rs, &lambda);
            let hs = halfspaces(&rs, &lambda);
            let oracle = enumerate_vertices_from_halfspaces(&hs)?;
            let formula = VRepresentation::from_formula(&v, &hs);
            checks += 2;
            if v.distinct_count() != 1 << r {
                records.push(mismatch("vertex-count", None, Some(format!("{} distinct points", v.distinct_count()))));
            }
            let diff = diff_vertices(&formula, &oracle);
            if !diff.is_empty() {
                records.push(mismatch("formula-vs-halfspaces", Some(diff), None));
            }

            if r <= ORBIT_HULL_RANK {
                checks += 2;
                let chamber = chamber_intersection(&rs, &lambda, cli.cap_orbit)?;
                let diff = diff_vertices(&oracle, &chamber);
                if !diff.is_empty() {
                    records.push(mismatch("halfspaces-vs-orbit-hull", Some(diff), None));
                }
                let piece = normalized_volume(&rs, &oracle)?.value;
                let whole = orbit_hull_volume(&rs, &lambda, cli.cap_orbit)?.value;
                let order = Rational::from_integer(ty.weyl_group_order().into());
                if piece.clone() * &order != whole {
                    let detail = format!(
                        "{} * {} != {}",
                        format_rational(&piece),
                        format_rational(&order),
                        format_rational(&whole)
                    );
                    records.push(mismatch("volume-identity", None, Some(detail)));
                }
            }
        }
        total += checks;
        types.push(TypeSummary {
            system: rs.label().to_string(),
            instances: args.instances,
            checks,
            mismatches: records.len() - before,
        });
    }
    let report = VerifyReport {
        seed: args.seed,
        instances_per_type: args.instances,
        checks: total,
        mismatches: records.len(),
        types,
        records,
    };
    Ok(Output {
        success: report.mismatches == 0,
        text: to_json(&report),
    })
}
