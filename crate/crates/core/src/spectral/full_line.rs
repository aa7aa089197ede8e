use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::density::{continuous_support, ContinuousSupport};
use super::levels::{discrete_levels, Level, DEFAULT_LEVEL_TOL};
use super::states::{state_evaluator, SampledState, StateSelector};
use super::{Extension, Theory};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// One point of the merged discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullLineLevel {
    pub energy: f64,
    pub multiplicity: usize,
    pub even: Option<Level>,
    pub odd: Option<Level>,
}

/// Spectrum of the parity-conserving extension (ζ_s on even, ζ_a on odd states).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullLineSpectrum {
    pub zeta_s: Extension,
    pub zeta_a: Extension,
    pub levels: Vec<FullLineLevel>,
    pub continuum: ContinuousSupport,
    /// 2 when both sectors carry the continuum.
    pub continuum_multiplicity: usize,
}

fn sector_levels(theory: &Theory, ext: Extension, n_max: usize) -> Result<Vec<Level>> {
    match discrete_levels(theory, ext, n_max, DEFAULT_LEVEL_TOL) {
        Err(Error::NotDiscreteRegime) => Ok(Vec::new()),
        other => other,
    }
}

/// Merges the even and odd half-line spectra, tagging coincident levels
/// (|ΔE| ≤ 1e-9 (1 + |E|)) with multiplicity 2.
pub fn assemble_full_line(theory: &Theory, zeta_s: Extension, zeta_a: Extension, n_max: usize) -> Result<FullLineSpectrum> {
    let even = sector_levels(theory, zeta_s, n_max)?;
    let odd = sector_levels(theory, zeta_a, n_max)?;
    let mut levels = Vec::with_capacity(even.len() + odd.len());
    let (mut i, mut j) = (0, 0);
    while i < even.len() || j < odd.len() {
        match (even.get(i), odd.get(j)) {
            (Some(a), Some(b)) if (a.energy - b.energy).abs() <= 1e-9 * (1.0 + a.energy.abs()) => {
                levels.push(FullLineLevel { energy: a.energy, multiplicity: 2, even: Some(*a), odd: Some(*b) });
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.energy < b.energy => {
                levels.push(FullLineLevel { energy: a.energy, multiplicity: 1, even: Some(*a), odd: None });
                i += 1;
            }
            (Some(a), None) => {
                levels.push(FullLineLevel { energy: a.energy, multiplicity: 1, even: Some(*a), odd: None });
                i += 1;
            }
            (_, Some(b)) => {
                levels.push(FullLineLevel { energy: b.energy, multiplicity: 1, even: None, odd: Some(*b) });
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let continuum = continuous_support(theory);
    let continuum_multiplicity = if continuum == ContinuousSupport::Empty { 0 } else { 2 };
    Ok(FullLineSpectrum { zeta_s, zeta_a, levels, continuum, continuum_multiplicity })
}

/// Full-line state `U_h(|u|)/√2` (even) or `sign(u) U_h(|u|)/√2` (odd) of the
/// half-line state selected in the corresponding sector.
pub fn full_line_eigenfunction(
    theory: &Theory,
    ext: Extension,
    parity: Parity,
    which: StateSelector,
    points: &[f64],
) -> Result<SampledState> {
    let ev = state_evaluator(theory, ext, which)?;
    let mut values = Vec::with_capacity(points.len());
    for &p in points {
        if p == 0.0 {
            return Err(Error::Grid("the full-line state is not evaluated at the origin".into()));
        }
        let v = FRAC_1_SQRT_2 * ev.value(p.abs())?;
        values.push(match parity {
            Parity::Even => v,
            Parity::Odd => p.signum() * v,
        });
    }
    Ok(SampledState {
        energy: ev.energy(),
        factor: ev.factor() * FRAC_1_SQRT_2,
        normalization: ev.normalization(),
        points: points.to_vec(),
        values,
    })
}
