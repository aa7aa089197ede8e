//! Spectra, spectral densities, Green functions and normalized eigenfunctions of
//! the self-adjoint extensions of either theory.
//!
//! With `U_ζ`, `Ũ_ζ` the solutions fixed by the boundary condition and
//! `ω = sin ζ + γ̃ cos ζ`, `ω̃ = cos ζ - γ̃ sin ζ`:
//!
//! * `Ω(W) = ω̃ / (Wr(U, Ũ) ω)`, with `Wr(U, Ũ) = κ₀` (oscillator) or `κ₀^{1/2}/2` (Coulomb);
//! * `G(p, q; W) = Ω U(p)U(q) - U(p_<)Ũ(p_>)/Wr(U, Ũ)`;
//! * levels solve `γ̃(E) = -tan ζ`, with weights `Q² = -1/(Wr(U, Ũ) cos²ζ γ̃'(E))`;
//! * the continuous density is `σ'(E) = Im Ω(E + i0)/π`.

mod density;
mod extension;
mod full_line;
mod green;
mod levels;
mod states;

pub use density::{continuous_density, continuous_support, spectrum, ContinuousSupport, DensitySample, SpectrumResult};
pub use extension::Extension;
pub use full_line::{assemble_full_line, full_line_eigenfunction, FullLineLevel, FullLineSpectrum, Parity};
pub use green::{green_function, GreenEval};
pub use levels::{discrete_levels, eigen_residual, level_weight, Level, DEFAULT_LEVEL_TOL};
pub use states::{
    eigenfunction, orthonormality_matrix, state_evaluator, Normalization, SampledState, StateEvaluator, StateSelector,
};

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::coulomb::{self, CoulombTheory};
use crate::error::Result;
use crate::kernel::SolutionTriple;
use crate::oscillator::{self, OscillatorTheory};

/// Either theory, with the operations shared by the spectral machinery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theory", rename_all = "lowercase")]
pub enum Theory {
    Oscillator(OscillatorTheory),
    Coulomb(CoulombTheory),
}

impl From<OscillatorTheory> for Theory {
    fn from(t: OscillatorTheory) -> Self {
        Theory::Oscillator(t)
    }
}

impl From<CoulombTheory> for Theory {
    fn from(t: CoulombTheory) -> Self {
        Theory::Coulomb(t)
    }
}

impl Theory {
    pub fn kappa0(&self) -> f64 {
        match self {
            Theory::Oscillator(t) => t.kappa0(),
            Theory::Coulomb(t) => t.kappa0(),
        }
    }

    /// Wr(U_ζ, Ũ_ζ), independent of ζ, energy and position.
    pub fn wronskian_scale(&self) -> f64 {
        match self {
            Theory::Oscillator(t) => t.kappa0(),
            Theory::Coulomb(t) => 0.5 * t.kappa0().sqrt(),
        }
    }

    pub fn gamma_tilde(&self, e: C) -> Result<C> {
        match self {
            Theory::Oscillator(t) => oscillator::gamma_tilde_osc(t, e),
            Theory::Coulomb(t) => coulomb::gamma_tilde_coul(t, e),
        }
    }

    pub fn gamma_tilde_derivative(&self, e: f64) -> Result<f64> {
        match self {
            Theory::Oscillator(t) => oscillator::gamma_tilde_osc_derivative(t, e),
            Theory::Coulomb(t) => coulomb::gamma_tilde_coul_derivative(t, e),
        }
    }

    /// Basis at position `p` (u for the oscillator, x for Coulomb).
    pub fn basis(&self, e: C, p: f64) -> Result<SolutionTriple> {
        match self {
            Theory::Oscillator(t) => oscillator::osc_basis(t, e, p),
            Theory::Coulomb(t) => coulomb::coul_basis(t, e, p),
        }
    }

    /// (U_ζ, U_ζ') and (Ũ_ζ, Ũ_ζ') at position `p`.
    pub fn u_zeta(&self, e: C, ext: Extension, p: f64) -> Result<((C, C), (C, C))> {
        let b = self.basis(e, p)?;
        Ok(oscillator::u_pair(&b, self.kappa0(), ext))
    }

    /// Ω(W) = ω̃/(Wr(U, Ũ) ω).
    pub fn omega(&self, ext: Extension, e: C) -> Result<C> {
        let gt = self.gamma_tilde(e)?;
        let (s, c) = ext.sin_cos();
        Ok((c - gt * s) / (self.wronskian_scale() * (s + gt * c)))
    }

    /// Pole and zero ladders of γ̃ when the theory has an infinite tower.
    pub(crate) fn ladders(&self) -> Option<(Box<dyn Fn(usize) -> f64 + '_>, Box<dyn Fn(usize) -> f64 + '_>)> {
        match self {
            Theory::Oscillator(t) if t.lambda() > 0.0 => {
                Some((Box::new(move |n| t.pole_energy(n).unwrap_or(f64::NAN)), Box::new(move |n| t.zero_energy(n).unwrap_or(f64::NAN))))
            }
            Theory::Coulomb(t) if t.g() < 0.0 => {
                Some((Box::new(move |n| t.pole_energy(n).unwrap_or(f64::NAN)), Box::new(move |n| t.zero_energy(n).unwrap_or(f64::NAN))))
            }
            _ => None,
        }
    }

    /// Short label used in error messages.
    pub(crate) fn describe(&self) -> String {
        match self {
            Theory::Oscillator(t) => format!("oscillator(lambda={}, kappa0={})", t.lambda(), t.kappa0()),
            Theory::Coulomb(t) => format!("coulomb(g={}, kappa0={})", t.g(), t.kappa0()),
        }
    }
}
