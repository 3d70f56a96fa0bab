//! Exact colored Jones state sums for braid-closure knots, the cyclotomic
//! transform with its integrality certificate, and numeric machinery for the
//! growth of quantum invariants at roots of unity: the Lobachevsky function
//! and the octahedron functional, sine-product tables for the Borromean
//! rings, Morton's torus-knot formula, Mahler measures, and q-difference
//! certificates.
//!
//! The exact layer works in `Z[q^(+-1/4)]` with big-integer coefficients
//! ([`qpoly`]); the numeric layer is generic over the floating scalar
//! ([`real::Real`]), with `f64` as the concrete type used by the aliases
//! below and by every stated tolerance.

pub mod braidknot;
pub mod closedforms;
pub mod cyclotomic;
pub mod error;
pub mod evaluation;
pub mod lobachevsky;
pub mod qholonomic;
pub mod qpoly;
pub mod real;
pub mod statesum;

pub use error::{Error, Result};

/// Concrete scalar for all stated tolerances.
pub type Real64 = f64;

/// Octahedron-domain point at the default scalar.
pub type OctaPoint = lobachevsky::OctaDomainPoint<f64>;

/// Sine-product prefix table at the default scalar.
pub type TauTable64 = closedforms::TauTable<f64>;
