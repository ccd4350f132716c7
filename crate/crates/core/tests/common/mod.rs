//! Instance generators shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weightpoly::{CartanType, DominantWeight, Rational, RootSystem};
use weightpoly::rational::{int, ratio};

/// Irreducible built-in types of rank at most 4, plus `G2` and `F4`.
pub fn rank_four_types() -> Vec<CartanType> {
    use CartanType::*;
    vec![
        A(1), A(2), A(3), A(4),
        B(2), B(3), B(4),
        C(2), C(3), C(4),
        D(3), D(4),
        G2, F4,
    ]
}

pub fn rank_three_types() -> Vec<CartanType> {
    rank_four_types().into_iter().filter(|t| t.rank() <= 3).collect()
}

/// Positive rational `p/q` with small numerator and denominator.
pub fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=12), rng.gen_range(1..=4))
}

pub fn strongly_dominant(rng: &mut ChaCha8Rng, r: usize) -> DominantWeight {
    DominantWeight::new((0..r).map(|_| positive_rational(rng)).collect()).unwrap()
}

/// Dominant weight with a random subset of walls (zero coordinates).
pub fn dominant(rng: &mut ChaCha8Rng, r: usize) -> DominantWeight {
    DominantWeight::new(
        (0..r)
            .map(|_| if rng.gen_bool(0.3) { int(0) } else { positive_rational(rng) })
            .collect(),
    )
    .unwrap()
}

/// Nonzero dominant element of the coroot lattice, by rejection sampling of
/// integer coroot coordinates.
pub fn dominant_coroot_point(rng: &mut ChaCha8Rng, rs: &RootSystem, max: i64) -> DominantWeight {
    let r = rs.rank();
    loop {
        let b: Vec<Rational> = (0..r).map(|_| int(rng.gen_range(0..=max))).collect();
        let a = rs.cartan_q().mul_vec(&b);
        if a.iter().all(|x| *x >= int(0)) && a.iter().any(|x| *x > int(0)) {
            return DominantWeight::new(a).unwrap();
        }
    }
}

/// Random rational vector with entries in `[-6, 6]` and denominators up to 4.
pub fn rational_vector(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rational> {
    (0..r)
        .map(|_| ratio(rng.gen_range(-24..=24), rng.gen_range(1..=4)))
        .collect()
}
