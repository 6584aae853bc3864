//! Exact Morse theory of the spaces of closed equilateral spherical polygons
//! with an odd number of sides.
//!
//! The side length `a ∈ (0, π)` is the Morse function. Its critical points are
//! the polygons lying on a great circle; [`spectrum`] lists them with their
//! multiplicities and indices, [`euler`] turns that into χ(M_n(a)) for every
//! `a`, and [`oracle`] re-derives everything by brute force over track words.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod euler;
pub mod oracle;
pub mod spectrum;

pub use arith::{BigCount, PiFraction};
pub use error::{Error, Result};
pub use euler::{chi, chi_in, AnglePosition, ChiResult};
pub use spectrum::{build_spectrum, CriticalStratum, GammaPair, Level, Spectrum};
