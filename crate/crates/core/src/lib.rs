//! Exact-arithmetic model of the monomial *-algebra attached to an integer
//! matrix with nonzero determinant, together with every KMS / ground / trace
//! state family the system carries and an independent finite-dimensional
//! representation oracle for cross-checking them.
//!
//! The layers, bottom up:
//!
//! - [`linalg`], [`poly`]: arbitrary-precision integer matrices, column
//!   Hermite normal form, characteristic polynomials, small-degree integer
//!   factorization and an exact unit-disc root test.
//! - [`lattice`]: the dilation system (A, B = A^t, N, Sigma), sublattice
//!   membership and digit coset representatives, the stable lattice.
//! - [`algebra`]: normal-form monomials u_m v^k v^{*l} u_n^* and their exact
//!   complex-rational linear combinations; multiplication, adjoint, gauge
//!   machinery, the defect and range projections.
//! - [`measure`]: probability measures on the torus with exact rational
//!   atom angles; moments, pushforward, invariance and scaling checks.
//! - [`state`]: evaluation of the state families, the KMS condition and its
//!   characterization, reconstruction and moment recovery.
//! - [`oracle`]: truncated induced-representation matrices whose vector
//!   states reproduce the series values within an explicit geometric bound.
//! - [`job`]: the JSON batch driver behind the `kmslat` binary.

pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use lattice::{DilationSystem, Lattice, MembershipIndex, SystemError};
pub use linalg::{hermite_normal_form, IntMat, IntVec};
pub use scalar::{CRat, Scalar};
