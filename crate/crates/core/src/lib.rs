//! Incidence algebras of finite posets.
//!
//! A finite poset `P` with a fixed linear extension embeds its incidence
//! algebra into upper-triangular matrices: cell `(i, j)` may be nonzero only
//! when `i <= j` in `P`. This crate builds that embedding and everything the
//! surrounding combinatorics needs:
//!
//! * [`poset`]: construction from cover relations, circuits of the Hasse
//!   diagram, gradedness, zeta polynomial, antichains, automorphisms.
//! * [`algebra`]: matrices over a generic field scalar, convolution, the
//!   zeta/Mobius/delta elements, inversion of units, rook matrices.
//! * [`complexity`]: torus-action complexity of the associated monoid and the
//!   classification of the low-complexity cases.
//! * [`antichain`]: support masks of antichain submonoids, torus weights, and
//!   the intersection meet-semilattice.
//! * [`star`]: orbit representatives over the star poset, the adherence
//!   (Bruhat-Chevalley-Renner) order on them, and the two-sided torus orbit
//!   lattice.
//! * [`fflab`]: brute-force enumeration of the same monoids over finite
//!   fields with at most nine elements.
//! * [`gen`] and [`verify`]: exhaustive poset generation and the cross-module
//!   invariant driver behind `verify` in the CLI.
//!
//! Matrix scalars are generic over [`scalar::Scalar`]; exact rationals are
//! the default lane, with [`Rational`] and [`RationalMatrix`] as the concrete
//! aliases. `f64` satisfies the same trait for approximate cross-checks.

pub mod algebra;
pub mod antichain;
pub mod complexity;
pub mod fflab;
pub mod gen;
pub mod poset;
pub mod scalar;
pub mod star;
pub mod verify;

mod error;

pub use error::Error;
pub use poset::Poset;

/// Exact rational scalar used by the default matrix lane.
pub type Rational = num_rational::BigRational;

/// Incidence matrix over exact rationals.
pub type RationalMatrix = algebra::IncidenceMatrix<Rational>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
