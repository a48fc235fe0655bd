//! Exact computations on cones of the braid arrangement indexed by finite
//! posets: Whitney numbers and Poincare polynomials by several independent
//! routes, the bijections relating transverse permutations to linear
//! extensions, Foata's intercalation monoid, and the chains generating
//! function.

pub mod bijections;
pub mod error;
pub mod foata;
pub mod genfun;
pub mod partition;
pub mod poly;
pub mod poset;
pub mod roots;
pub mod selfcheck;
pub mod whitney;

pub use bijections::{LeveledExtension, Permutation};
pub use error::{Error, Result};
pub use foata::{MultisetPermutation, PrimeFactorization};
pub use genfun::TruncatedSeries;
pub use num_bigint::{BigInt, BigUint};
pub use partition::{Preposet, SetPartition};
pub use poly::IntPolynomial;
pub use poset::{ChainDecomposition, Poset};
