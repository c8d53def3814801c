//! Equivariant Riemann-Roch characters of toric origami manifolds.
//!
//! A toric origami manifold is described combinatorially by a collection of
//! signed Delzant polytopes glued along fold facets. This crate evaluates its
//! Riemann-Roch character as a signed lattice-point sum, cross-checks it with
//! an exact vertex-cone (Brion) fixed-point sum, audits the local
//! contributions of a covering of the polytopes, and certifies the
//! folded-cylinder kernel computation that makes the fold contribute zero.

pub mod algebra;
pub mod cylinder;
pub mod exec;
pub mod geometry;
pub mod localization;
pub mod oracle;
pub mod quantization;
pub mod rational;
pub mod template;

pub use exec::Strategy;
