//! Exact computations on dominant weight polytopes
//! `P^λ = conv(W λ) ∩ C̄_+` of finite crystallographic root systems.
//!
//! * [`cartan`]: root systems, basis changes and the Weyl group action.
//! * [`polytope`]: the `2^r` vertex formula and the `2r` halfspaces.
//! * [`facelat`]: the face lattice and its isomorphism with the cube.
//! * [`oracle`]: independent convex-geometry checks and volumes.
//! * [`lattice`]: coroot-lattice point counts.
//! * [`report`], [`off`]: JSON reports and OFF mesh export.

pub mod cartan;
pub mod facelat;
pub mod lattice;
pub mod linalg;
pub mod off;
pub mod oracle;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod subset;

pub use cartan::{Basis, CartanError, CartanMatrix, CartanType, RootSystem, WeightVector};
pub use polytope::{all_vertices, contains, halfspaces, vertex_for_subset, DominantWeight};
pub use rational::Rational;
pub use subset::NodeSet;
