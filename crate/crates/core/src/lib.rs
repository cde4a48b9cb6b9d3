//! Chord-length geometry of convex bodies.
//!
//! The crate measures how the chords of an n-dimensional convex body behave
//! when seen from an interior point. Around the half-chord field — the map
//! assigning every unit direction the distance from a point to the boundary —
//! it provides:
//!
//! - antipodally closed direction grids on S^{n-1} ([`sphere`]), built so that
//!   looking up `f(-s)` is an exact table access;
//! - validated body representations with membership, ray exits, diameters and
//!   margins ([`bodies`]);
//! - sampled functions on the sphere with the sup and bounded-sup metrics
//!   ([`chordmap`]);
//! - the equichordal-defect functional, a multi-start derivative-free search
//!   for equichordal points, antipodal difference maps with oddness checks,
//!   and a zero finder for odd scalar maps ([`equichordal`]);
//! - the report-producing command layer behind the `chordal` binary
//!   ([`commands`]).
//!
//! The numerical centerpiece is the equichordal uniqueness experiment: for a
//! body that admits an equichordal point, independent searches from many
//! starting points must all collapse into a single cluster. Two clusters of
//! near-zero defect would be reportable evidence against the underlying
//! uniqueness statement (or against this tooling) and are treated as a test
//! failure.

pub mod bodies;
pub mod chordmap;
pub mod commands;
pub mod equichordal;
pub mod error;
pub mod sphere;

mod optimize;
mod vecops;

pub use error::{ChordalError, Result};
