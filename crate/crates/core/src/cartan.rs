//! Finite root systems from their Cartan matrices, and the Weyl group action.
//!
//! Conventions: the Cartan matrix has entries `A[i][j] = (α_i | α_j∨)`. A
//! point `x` is stored either by its coweight coordinates `a_k = (x | α_k)`
//! or by its coroot coordinates `x = Σ b_j α_j∨`; the two are related by
//! `a = A · b`. Built-in types follow the Bourbaki numbering (`B_r` has the
//! short root last, `C_r` the long root last, `F_4` is long-long-short-short,
//! `G_2` is short-long).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dot, QMatrix};
use crate::rational::{int, Rational};

/// Default refusal threshold for Weyl orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("malformed Cartan matrix: {0}")]
    MalformedMatrix(String),
    #[error("Cartan matrix is not of finite type (principal minor {minor} on nodes {nodes:?})")]
    NotFiniteType { nodes: Vec<usize>, minor: String },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Weyl orbit exceeds the cap of {cap} points")]
    OrbitTooLarge { cap: usize },
}

/// One irreducible Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(r) | CartanType::B(r) | CartanType::C(r) | CartanType::D(r) => r,
            CartanType::E(r) => r,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CartanType::A(r) => fact(r + 1),
            CartanType::B(r) | CartanType::C(r) => (1u128 << r) * fact(r),
            CartanType::D(r) => (1u128 << (r - 1)) * fact(r),
            CartanType::E(6) => 51_840,
            CartanType::E(7) => 2_903_040,
            CartanType::E(8) => 696_729_600,
            CartanType::E(_) => unreachable!("validated on construction"),
            CartanType::F4 => 1152,
            CartanType::G2 => 12,
        }
    }

    fn validate(self) -> Result<Self, CartanError> {
        let ok = match self {
            CartanType::A(r) => r >= 1,
            CartanType::B(r) | CartanType::C(r) => r >= 2,
            CartanType::D(r) => r >= 3,
            CartanType::E(r) => (6..=8).contains(&r),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(CartanError::UnknownType(self.to_string()))
        }
    }

    /// Symmetric Gram matrix `(α_i | α_j)` of the simple roots, scaled so the
    /// shortest roots have squared length 2.
    fn gram(self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut g = vec![vec![0i64; r]; r];
        let mut link = |i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        let mut lengths = vec![2i64; r];
        match self {
            CartanType::A(_) => (0..r - 1).for_each(|i| link(i, i + 1, -1)),
            CartanType::B(_) => {
                lengths = vec![4; r];
                lengths[r - 1] = 2;
                (0..r - 1).for_each(|i| link(i, i + 1, -2));
            }
            CartanType::C(_) => {
                lengths[r - 1] = 4;
                (0..r - 2).for_each(|i| link(i, i + 1, -1));
                link(r - 2, r - 1, -2);
            }
            CartanType::D(_) => {
                (0..r - 2).for_each(|i| link(i, i + 1, -1));
                link(r - 3, r - 1, -1);
            }
            CartanType::E(_) => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 hanging off 4.
                link(0, 2, -1);
                link(1, 3, -1);
                (2..r - 1).for_each(|i| link(i, i + 1, -1));
            }
            CartanType::F4 => {
                lengths = vec![4, 4, 2, 2];
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            CartanType::G2 => {
                lengths = vec![2, 6];
                link(0, 1, -3);
            }
        }
        for (i, l) in lengths.into_iter().enumerate() {
            g[i][i] = l;
        }
        g
    }

    /// Cartan matrix `A[i][j] = 2 (α_i|α_j) / (α_j|α_j)`.
    pub fn cartan_matrix(self) -> CartanMatrix {
        let g = self.gram();
        let r = g.len();
        let entries = (0..r)
            .map(|i| (0..r).map(|j| 2 * g[i][j] / g[j][j]).collect())
            .collect();
        CartanMatrix { entries }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(r) => write!(f, "A{r}"),
            CartanType::B(r) => write!(f, "B{r}"),
            CartanType::C(r) => write!(f, "C{r}"),
            CartanType::D(r) => write!(f, "D{r}"),
            CartanType::E(r) => write!(f, "E{r}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CartanError::UnknownType(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let digits = chars.as_str().trim_start_matches('_');
        let r: usize = digits.parse().map_err(|_| unknown())?;
        let ty = match letter {
            'A' => CartanType::A(r),
            'B' => CartanType::B(r),
            'C' => CartanType::C(r),
            'D' => CartanType::D(r),
            'E' => CartanType::E(r),
            'F' if r == 4 => CartanType::F4,
            'G' if r == 2 => CartanType::G2,
            _ => return Err(unknown()),
        };
        ty.validate().map_err(|_| unknown())
    }
}

/// Integer Cartan matrix that has passed the structural checks (diagonal 2,
/// nonpositive off-diagonal, symmetric zero pattern).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let r = entries.len();
        if r == 0 {
            return Err(CartanError::MalformedMatrix("empty matrix".into()));
        }
        if entries.iter().any(|row| row.len() != r) {
            return Err(CartanError::MalformedMatrix("matrix is not square".into()));
        }
        for i in 0..r {
            if entries[i][i] != 2 {
                return Err(CartanError::MalformedMatrix(format!(
                    "diagonal entry ({i},{i}) is {}, not 2",
                    entries[i][i]
                )));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(CartanError::MalformedMatrix(format!(
                        "off-diagonal entry ({i},{j}) is positive"
                    )));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(CartanError::MalformedMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) disagree on being zero"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Parses a JSON array of integer rows.
    pub fn from_json(text: &str) -> Result<Self, CartanError> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| CartanError::MalformedMatrix(format!("invalid JSON: {e}")))?;
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_i64_rows(&self.entries)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let (n, m) = (self.rank(), other.rank());
        let mut entries = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            entries[i][..n].copy_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            entries[n + i][n..].copy_from_slice(&other.entries[i]);
        }
        CartanMatrix { entries }
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..r {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = CartanError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        CartanMatrix::new(rows)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(m: CartanMatrix) -> Self {
        m.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Coordinates `a_k = (x | α_k)`, i.e. `x = Σ a_k ϖ_k∨`.
    Coweight,
    /// Coordinates `b_j` with `x = Σ b_j α_j∨`.
    Coroot,
}

/// A point of the weight space with exact coordinates in a tagged basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub basis: Basis,
    pub coords: Vec<Rational>,
}

impl WeightVector {
    pub fn coweight(coords: Vec<Rational>) -> Self {
        Self {
            basis: Basis::Coweight,
            coords,
        }
    }

    pub fn coroot(coords: Vec<Rational>) -> Self {
        Self {
            basis: Basis::Coroot,
            coords,
        }
    }

    pub fn zero(r: usize, basis: Basis) -> Self {
        Self {
            basis,
            coords: vec![Rational::zero(); r],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self {
            basis: self.basis,
            coords: self.coords.iter().map(|x| x * t).collect(),
        }
    }
}

/// Validated data of one finite root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    cartan_q: QMatrix,
    cartan_inv: QMatrix,
    label: String,
    components: Vec<CartanType>,
    symmetrizers: Vec<Rational>,
    gram: QMatrix,
}

impl RootSystem {
    pub fn of_type(ty: CartanType) -> Self {
        let mut rs = Self::from_cartan(ty.cartan_matrix())
            .expect("built-in Cartan matrices are of finite type");
        rs.label = ty.to_string();
        rs.components = vec![ty];
        rs
    }

    /// Parses `"A3"`, `"G2"`, `"B_2"` or products such as `"A2xA1"`.
    pub fn from_label(label: &str) -> Result<Self, CartanError> {
        let parts: Vec<&str> = label
            .split(['x', 'X', '×', '+'])
            .map(str::trim)
            .collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(CartanError::UnknownType(label.to_string()));
        }
        let types = parts
            .iter()
            .map(|p| p.parse::<CartanType>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::direct_sum(
            &types.into_iter().map(Self::of_type).collect::<Vec<_>>(),
        ))
    }

    /// Validates a raw Cartan matrix: symmetrizable and of finite type.
    pub fn from_cartan(cartan: CartanMatrix) -> Result<Self, CartanError> {
        let r = cartan.rank();
        let symmetrizers = minimal_symmetrizers(&cartan)?;
        let cartan_q = cartan.to_qmatrix();
        // With A·diag(d) symmetric and d > 0, positive leading minors of A
        // are equivalent to the Gram matrix being positive definite, hence to
        // every principal minor of A being positive.
        for k in 1..=r {
            let idx: Vec<usize> = (0..k).collect();
            let minor = cartan_q.principal_submatrix(&idx).determinant();
            if !minor.is_positive() {
                return Err(CartanError::NotFiniteType {
                    nodes: idx,
                    minor: minor.to_string(),
                });
            }
        }
        let mut gram = QMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                gram[(i, j)] = &cartan_q[(i, j)] * &symmetrizers[j];
            }
        }
        debug_assert!(gram.is_symmetric());
        let cartan_inv = cartan_q
            .inverse()
            .expect("finite-type Cartan matrices are invertible");
        Ok(Self {
            cartan,
            cartan_q,
            cartan_inv,
            label: "custom".to_string(),
            components: Vec::new(),
            symmetrizers,
            gram,
        })
    }

    /// Orthogonal direct sum. The label joins the parts with `x`.
    pub fn direct_sum(parts: &[RootSystem]) -> Self {
        assert!(!parts.is_empty(), "direct sum of no root systems");
        let cartan = parts[1..]
            .iter()
            .fold(parts[0].cartan.clone(), |acc, p| acc.direct_sum(&p.cartan));
        let mut rs = Self::from_cartan(cartan).expect("sum of finite types is finite");
        let labels: Vec<&str> = parts.iter().map(|p| p.label.as_str()).collect();
        rs.label = labels.join("x");
        if parts.iter().all(|p| !p.components.is_empty()) {
            rs.components = parts.iter().flat_map(|p| p.components.clone()).collect();
        }
        rs
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Irreducible built-in components, empty for custom matrices.
    pub fn components(&self) -> &[CartanType] {
        &self.components
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn cartan_q(&self) -> &QMatrix {
        &self.cartan_q
    }

    pub fn cartan_inverse(&self) -> &QMatrix {
        &self.cartan_inv
    }

    /// `d_i = (α_i | α_i) / 2`, minimal positive integers per component.
    pub fn symmetrizers(&self) -> &[Rational] {
        &self.symmetrizers
    }

    /// `G[i][j] = (α_i | α_j)`.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Weyl group order from the type when known, else by orbit of ρ.
    pub fn weyl_group_order(&self, cap: usize) -> Result<u128, CartanError> {
        if !self.components.is_empty() {
            return Ok(self.components.iter().map(|t| t.weyl_group_order()).product());
        }
        Ok(self.weyl_orbit(&self.rho(), cap)?.len() as u128)
    }

    fn check_dim(&self, x: &WeightVector) -> Result<(), CartanError> {
        if x.dim() != self.rank() {
            return Err(CartanError::DimensionMismatch {
                expected: self.rank(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Re-expresses `x` in `target`. Panics if `x` has the wrong length.
    pub fn convert(&self, x: &WeightVector, target: Basis) -> WeightVector {
        assert_eq!(x.dim(), self.rank(), "weight vector has the wrong length");
        let coords = match (x.basis, target) {
            (a, b) if a == b => x.coords.clone(),
            (Basis::Coroot, Basis::Coweight) => self.cartan_q.mul_vec(&x.coords),
            (Basis::Coweight, Basis::Coroot) => self.cartan_inv.mul_vec(&x.coords),
            _ => unreachable!(),
        };
        WeightVector {
            basis: target,
            coords,
        }
    }

    pub fn to_coweight(&self, x: &WeightVector) -> Vec<Rational> {
        self.convert(x, Basis::Coweight).coords
    }

    pub fn to_coroot(&self, x: &WeightVector) -> Vec<Rational> {
        self.convert(x, Basis::Coroot).coords
    }

    /// `s_i(x) = x - (x | α_i) α_i∨`, returned in the basis of `x`.
    pub fn simple_reflection(&self, i: usize, x: &WeightVector) -> Result<WeightVector, CartanError> {
        let r = self.rank();
        if i >= r {
            return Err(CartanError::IndexOutOfRange { index: i, rank: r });
        }
        self.check_dim(x)?;
        Ok(WeightVector {
            basis: x.basis,
            coords: self.reflect_coords(i, x.basis, &x.coords),
        })
    }

    fn reflect_coords(&self, i: usize, basis: Basis, coords: &[Rational]) -> Vec<Rational> {
        let mut out = coords.to_vec();
        match basis {
            Basis::Coweight => {
                let ai = coords[i].clone();
                if ai.is_zero() {
                    return out;
                }
                for (k, v) in out.iter_mut().enumerate() {
                    let c = self.cartan.entry(k, i);
                    if c != 0 {
                        *v -= &ai * int(c);
                    }
                }
            }
            Basis::Coroot => {
                let ai = dot(self.cartan_q.row(i), coords);
                out[i] -= ai;
            }
        }
        out
    }

    /// Breadth-first closure of `{x}` under the simple reflections, in
    /// discovery order. Refuses once more than `cap` points have been found.
    pub fn weyl_orbit(&self, x: &WeightVector, cap: usize) -> Result<Vec<WeightVector>, CartanError> {
        self.check_dim(x)?;
        let mut seen: HashSet<Vec<Rational>> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(x.coords.clone());
        order.push(x.coords.clone());
        queue.push_back(x.coords.clone());
        while let Some(p) = queue.pop_front() {
            for i in 0..self.rank() {
                let q = self.reflect_coords(i, x.basis, &p);
                if seen.contains(&q) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(CartanError::OrbitTooLarge { cap });
                }
                seen.insert(q.clone());
                order.push(q.clone());
                queue.push_back(q);
            }
        }
        Ok(order
            .into_iter()
            .map(|coords| WeightVector {
                basis: x.basis,
                coords,
            })
            .collect())
    }

    /// Half sum of the positive roots: coweight coordinates `(d_1, .., d_r)`.
    pub fn rho(&self) -> WeightVector {
        WeightVector::coweight(self.symmetrizers.clone())
    }

    /// `(x | y)` via `Σ_k b_k(x) a_k(y) / d_k`.
    pub fn inner_product(&self, x: &WeightVector, y: &WeightVector) -> Rational {
        let b = self.to_coroot(x);
        let a = self.to_coweight(y);
        b.iter()
            .zip(&a)
            .zip(&self.symmetrizers)
            .fold(Rational::zero(), |acc, ((bk, ak), dk)| acc + bk * ak / dk)
    }
}

/// Smallest positive integers `d` with `A[i][j] d_j = A[j][i] d_i`, chosen
/// independently on every connected component.
fn minimal_symmetrizers(cartan: &CartanMatrix) -> Result<Vec<Rational>, CartanError> {
    let r = cartan.rank();
    let mut d: Vec<Option<Rational>> = vec![None; r];
    for comp in cartan.components() {
        d[comp[0]] = Some(Rational::one());
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("assigned before push");
            for j in 0..r {
                let (aij, aji) = (cartan.entry(i, j), cartan.entry(j, i));
                if i == j || aij == 0 {
                    continue;
                }
                let dj = &di * int(aji) / int(aij);
                match &d[j] {
                    Some(existing) if *existing != dj => return Err(CartanError::NotSymmetrizable),
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
        // Clear denominators, then divide out the common factor.
        let lcm = comp.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(d[i].as_ref().unwrap().denom())
        });
        let ints: Vec<BigInt> = comp
            .iter()
            .map(|&i| (d[i].as_ref().unwrap() * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            d[i] = Some(Rational::from_integer(v / &g));
        }
    }
    Ok(d.into_iter().map(|x| x.expect("every node lies in a component")).collect())
}
