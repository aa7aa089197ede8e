//! Spectral theory of the half-line operators
//!
//! * oscillator: `-d²/du² + λu²` on `(0, ∞)`,
//! * Coulomb-like: `-d²/dx² + g/x - 3/(16x²)` on `(0, ∞)`,
//!
//! each with the one-parameter family of self-adjoint extensions labelled by an
//! angle ζ, together with the map that exchanges energy and coupling between them.

pub mod coulomb;
pub mod duality;
pub mod error;
pub mod kernel;
pub mod oscillator;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use coulomb::CoulombTheory;
pub use duality::DualityMap;
pub use error::{Error, Result};
pub use kernel::SolutionTriple;
pub use num_complex::Complex64;
pub use oscillator::OscillatorTheory;
pub use quadrature::QuadConfig;
pub use spectral::{Extension, Theory};
