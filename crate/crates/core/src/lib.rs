//! Exact construction and verification of multivariate r-Fibonacci polynomials.
//!
//! The family F_n over variables x_1..x_r follows the order-r recursion
//! F_n = x_1*F_{n-1} + ... + x_r*F_{n-r} with seeds 0,...,0,1 (the 1 at index
//! r-1). This crate builds the polynomials by several independent routes
//! (direct recursion, companion-matrix powers, a multinomial sum over bounded
//! integer partitions, generating-function coefficients), checks the classical
//! identities that relate them (a generalized Cassini determinant, Bell
//! polynomial and Stirling/Fubini identities, preference-ordering counts), and
//! evaluates the closed Binet-style form numerically through the roots of the
//! characteristic polynomial.
//!
//! All symbolic computation is exact over arbitrary-precision rationals; the
//! only floating point lives in [`numericbinet`] and the decay probe of
//! [`series`].

pub mod exactnum;
pub mod fibpoly;
pub mod identities;
pub mod mpoly;
pub mod numericbinet;
pub mod series;
pub mod verify;

pub use exactnum::{PartitionProfile, Rational};
pub use fibpoly::{FibIndex, PartitionSet};
pub use identities::{PolyMatrix, VerificationReport};
pub use mpoly::MPoly;
pub use numericbinet::Spectrum;
pub use series::TruncatedSeries;
