//! Exact computations with complex product structures on nilpotent Lie
//! algebras.
//!
//! Everything here works over arbitrary-precision rationals and needs only
//! `alloc`. The one floating-point routine is the geodesic integrator in
//! [`geodesic`], used to certify completeness of non-flat connections.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod connection;
pub mod geodesic;
pub mod hypercomplex;
pub mod lie;
pub mod matrix;
pub mod rational;
pub mod salamon;
pub mod structures;
pub mod subspace;

pub use lie::{Iso3, LieAlgebra, LieError, Representation};
pub use matrix::QMatrix;
pub use rational::{QVector, Rational};
pub use subspace::Subspace;
