//! Exact computations on Dressians `Dr(k, n)`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed with
//! exact rationals: cone membership and tie patterns are equality tests, so
//! no floating point enters any of the algorithms.
//!
//! The main pieces are
//!
//! * [`subset`] and [`weight`]: `k`-subsets of `[n]` in lex order and weight
//!   vectors on them, together with the lineality space.
//! * [`pluecker`] and [`cone`]: three-term tropical Plücker relations, cone
//!   signatures of the Plücker fan and wall crossing between maximal cones.
//! * [`tree`]: leaf-labelled metric trees, tree metrics, splits and
//!   Whitehead moves.
//! * [`subdivision`] and [`split`]: regular subdivisions of the hypersimplex,
//!   matroid checks and split systems.
//! * [`arrangement`]: (generalized) metric tree arrangements and the `π` map.
//!
//! [`lp`], [`dd`] and [`linalg`] hold the exact linear-algebra backends.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod arrangement;
pub mod bitset;
pub mod cone;
pub mod dd;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod pluecker;
pub mod rational;
pub mod split;
pub mod subdivision;
pub mod subset;
pub mod tree;
pub mod weight;

pub use arrangement::{AbstractArrangement, TreeArrangement, WhiteheadDiff};
pub use cone::{AdjacentCone, PlueckerCone};
pub use error::{Error, Result};
pub use pluecker::{ConeSignature, ThreeTermRelation, TiePattern};
pub use rational::Rational;
pub use split::HypersimplexSplit;
pub use subdivision::{Cell, MatroidalSubdivision};
pub use subset::KSubset;
pub use tree::{LeafSet, MetricTree, Split};
pub use weight::WeightVector;
