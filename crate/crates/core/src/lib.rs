//! Exact computation in the complex numeration systems with base `-n + i`.
//!
//! The crate covers Katai-Szabo radix expansions, the neighbour sets of the
//! fundamental and extended tiles, box/Hausdorff/packing dimensions of
//! intersections `C ∩ (C + α)` of restricted digit sets with their
//! translates, and the strongly-eventually-periodic criterion for
//! self-similarity of those intersections. Everything is computed in
//! Z[i] and Q(i); floating point only appears in display helpers.
//!
//! The arithmetic types are generic over the integer scalar
//! ([`Gaussian<T>`], [`GaussianRational<T>`]); the engines use the
//! arbitrary-precision aliases [`GaussianInt`] and [`QI`].
//!
//! ```
//! use complex_radix::intersection::dimension;
//! use complex_radix::{Config, DigitSeq, DigitSet};
//!
//! let cfg = Config::detect(3, DigitSet::restricted(3, [0, 4])?)?;
//! let alpha: DigitSeq = "0.[](-4,0,4)*".parse()?;
//! let dim = dimension(&cfg, &alpha)?;
//! assert_eq!(dim.value().to_string(), "1/3 * log(2)/log(sqrt(10))");
//! # Ok::<(), complex_radix::Error>(())
//! ```

pub mod digits;
pub mod dimension;
pub mod error;
pub mod expansion;
pub mod gaussian;
pub mod intersection;
pub mod neighbour;
pub mod radix;
pub mod rational;
pub mod render;
pub mod selfsim;
pub mod sep;
pub mod sequence;
pub mod tiles;

pub use digits::DigitSet;
pub use dimension::{validate, Config, Dimension, DimensionReport, Regime};
pub use error::{Error, Result};
pub use gaussian::{Gaussian, Scalar};
pub use neighbour::{NeighbourSet, TileKind};
pub use radix::Base;
pub use rational::GaussianRational;
pub use sep::SepDecomposition;
pub use sequence::{DigitSeq, EventuallyPeriodic, IntSet, SetSeq};
pub use selfsim::{Ifs, SimilarityMap};
pub use tiles::KTile;

/// Arbitrary-precision Gaussian integer.
pub type GaussianInt = Gaussian<num_bigint::BigInt>;
/// Arbitrary-precision Gaussian rational, an element of Q(i).
pub type QI = GaussianRational<num_bigint::BigInt>;
/// Machine-word Gaussian integer for small, overflow-free workloads.
pub type Gaussian64 = Gaussian<i64>;
/// Machine-word Gaussian rational.
pub type GaussianRational64 = GaussianRational<i64>;
