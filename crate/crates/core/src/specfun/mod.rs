//! Special functions on complex arguments: gamma family and the two confluent
//! hypergeometric functions.

mod ddouble;
mod gamma;
mod kummer;
mod tricomi;

pub use gamma::{
    cos_pi, digamma, gamma, gamma_ratio, ln_gamma, nearest_pole, rgamma, rgamma_with_derivative, sin_pi, sincos_pi_real,
    POLE_TOL,
};
pub use kummer::{kummer_phi, kummer_phi_with_derivative, kummer_scaled};
pub use tricomi::{tricomi_psi, tricomi_psi_with_derivative};

use crate::error::{Error, Result};

/// Accuracy request for series and asymptotic evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Accuracy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::InvalidParameter(format!("rel_tol must lie in (0, 1e-6], got {rel_tol}")));
        }
        if max_terms < 100 {
            return Err(Error::InvalidParameter(format!("max_terms must be at least 100, got {max_terms}")));
        }
        Ok(Accuracy { rel_tol, max_terms })
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy { rel_tol: 1e-12, max_terms: 5000 }
    }
}
