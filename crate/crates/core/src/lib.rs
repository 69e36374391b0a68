//! Quasigroup expansions of the triangle, their frame and lift matroids, and
//! their embeddings in finite projective planes.
//!
//! The chain of objects is: a quasigroup (a Latin square) gives a biased
//! expansion of `K3` and a 3-net; ternary rings coordinatize projective planes;
//! a loop embeds in a multiplicative or additive loop of a coordinatizing
//! ternary ring exactly when the corresponding matroid embeds in the plane.

pub mod algebra;
pub mod biased;
pub mod cli;
pub mod embed;
pub mod error;
pub mod gf;
pub mod io;
pub mod matroid;
pub mod nets;
pub mod plane;
pub mod random;
pub mod selftest;
pub mod ternary;
pub mod thicken;

pub use error::{Error, Position, Result};
