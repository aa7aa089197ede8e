use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::levels::{discrete_levels, Level, DEFAULT_LEVEL_TOL};
use super::{Extension, Theory};
use crate::coulomb;
use crate::error::{Error, Result};
use crate::oscillator::log_weights;

/// Support of the absolutely continuous part of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuousSupport {
    Empty,
    /// [0, ∞)
    HalfLine,
    /// ℝ
    RealLine,
}

impl ContinuousSupport {
    pub fn contains(self, e: f64) -> bool {
        match self {
            ContinuousSupport::Empty => false,
            ContinuousSupport::HalfLine => e >= 0.0,
            ContinuousSupport::RealLine => e.is_finite(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub energy: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub theory: Theory,
    pub extension: Extension,
    pub discrete: Vec<Level>,
    pub support: ContinuousSupport,
    pub density: Vec<DensitySample>,
    /// Weight of a δ(E) atom at E = 0 (Coulomb, g > 0, ζ = ζ_g).
    pub atom_at_zero: Option<f64>,
}

pub fn continuous_support(theory: &Theory) -> ContinuousSupport {
    match theory {
        Theory::Oscillator(t) if t.lambda() > 0.0 => ContinuousSupport::Empty,
        Theory::Oscillator(t) if t.lambda() < 0.0 => ContinuousSupport::RealLine,
        _ => ContinuousSupport::HalfLine,
    }
}

/// ρ²(E) = σ'(E) on the continuous support, from the closed forms in |Γ(1/4 - iw̃)|².
pub fn continuous_density(theory: &Theory, ext: Extension, e: f64) -> Result<f64> {
    if !continuous_support(theory).contains(e) {
        return Err(Error::OutOfSupport { energy: e });
    }
    let (s, c) = ext.sin_cos();
    let k0 = theory.kappa0();
    let value = match theory {
        Theory::Oscillator(t) if t.lambda() == 0.0 => {
            let num = e.sqrt();
            let den = PI * (k0 * k0 * s * s + e * c * c);
            if den == 0.0 {
                return Err(Error::OutOfSupport { energy: e });
            }
            num / den
        }
        Theory::Oscillator(t) => {
            let m = (-t.lambda()).powf(0.25);
            let b = 4.0 * PI * m / k0;
            inverted_density(b / (PI * k0), b, e / (4.0 * m * m), s, c)
        }
        Theory::Coulomb(t) => {
            let g = t.g();
            if e == 0.0 {
                if g > 0.0 {
                    0.0
                } else if g < 0.0 {
                    4.0 * (-g).sqrt() / (PI * (4.0 * (-g) * c * c + k0 * s * s))
                } else if s != 0.0 {
                    0.0
                } else {
                    return Err(Error::OutOfSupport { energy: e });
                }
            } else {
                let se = e.sqrt();
                let b = 4.0 * SQRT_2 * PI * se.sqrt() / k0.sqrt();
                inverted_density(b / (PI * 0.5 * k0.sqrt()), b, -g / (2.0 * se), s, c)
            }
        }
    };
    if !(value >= 0.0 && value.is_finite()) {
        return Err(Error::OutOfSupport { energy: e });
    }
    Ok(value)
}

/// `pre · P / ((sN + Bc)² + s²P²)`.
fn inverted_density(pre: f64, b: f64, w: f64, s: f64, c: f64) -> f64 {
    let (ln_p, ln_n) = log_weights(w);
    let p = ln_p.exp();
    let n = ln_n.exp();
    let a = s * n + b * c;
    pre * p / (a * a + s * s * p * p)
}

/// Discrete levels, continuous density on `e_grid` (points outside the support
/// are skipped) and the zero-energy atom.
pub fn spectrum(theory: &Theory, ext: Extension, n_max: usize, e_grid: &[f64]) -> Result<SpectrumResult> {
    let discrete = match discrete_levels(theory, ext, n_max, DEFAULT_LEVEL_TOL) {
        Ok(v) => v,
        Err(Error::NotDiscreteRegime) => Vec::new(),
        Err(e) => return Err(e),
    };
    let support = continuous_support(theory);
    let mut density = Vec::new();
    for &e in e_grid {
        match continuous_density(theory, ext, e) {
            Ok(d) => density.push(DensitySample { energy: e, density: d }),
            Err(Error::OutOfSupport { .. }) => {}
            Err(err) => return Err(err),
        }
    }
    let atom_at_zero = match theory {
        Theory::Coulomb(t) => coulomb::zeta_g(t).filter(|z| z.distance(ext) < 1e-12).and_then(|_| coulomb::zero_mode_weight(t)),
        _ => None,
    };
    Ok(SpectrumResult { theory: *theory, extension: ext, discrete, support, density, atom_at_zero })
}
