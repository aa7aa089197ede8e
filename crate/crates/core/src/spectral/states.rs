use std::cell::RefCell;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::density::continuous_density;
use super::levels::{discrete_levels, DEFAULT_LEVEL_TOL};
use super::{Extension, Theory};
use crate::coulomb;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_vec, QuadConfig};

/// Which (generalized) eigenfunction to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSelector {
    /// n-th discrete level, normalized to one.
    Level(usize),
    /// Continuum energy, normalized to δ(E - E').
    Continuum(f64),
    /// Coulomb zero-energy bound state at ζ = ζ_g.
    ZeroMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Unit,
    EnergyDelta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Mode {
    /// U_ζ from the entire solutions.
    Direct,
    /// cos ζ · f₃, the decaying form of U_ζ at a level.
    Decaying,
}

/// Pointwise evaluator of a normalized eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateEvaluator {
    theory: Theory,
    ext: Extension,
    energy: f64,
    factor: f64,
    mode: Mode,
    normalization: Normalization,
}

impl StateEvaluator {
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Q (levels), ρ (continuum) or the square root of the atom weight.
    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Normalized state at position `p > 0` (u or x).
    pub fn value(&self, p: f64) -> Result<f64> {
        let b = self.theory.basis(C::new(self.energy, 0.0), p)?;
        let (s, c) = self.ext.sin_cos();
        let u = match (self.mode, b.f3) {
            (Mode::Decaying, Some((f3, _))) => c * f3,
            _ => self.theory.kappa0() * s * b.f1 + c * b.f2,
        };
        Ok(self.factor * u.re)
    }
}

/// Builds the evaluator for one state of the extension ζ.
pub fn state_evaluator(theory: &Theory, ext: Extension, which: StateSelector) -> Result<StateEvaluator> {
    let special = ext.is_dirichlet() || ext.is_neumann();
    match which {
        StateSelector::Level(n) => {
            let levels = discrete_levels(theory, ext, n, DEFAULT_LEVEL_TOL).map_err(|e| match e {
                Error::NotDiscreteRegime => Error::NotInSpectrum(format!("no discrete levels for {} at {ext}", theory.describe())),
                other => other,
            })?;
            let lv = levels
                .get(n)
                .ok_or_else(|| Error::NotInSpectrum(format!("level {n} does not exist ({} levels)", levels.len())))?;
            Ok(StateEvaluator {
                theory: *theory,
                ext,
                energy: lv.energy,
                factor: lv.weight.sqrt(),
                mode: if special { Mode::Direct } else { Mode::Decaying },
                normalization: Normalization::Unit,
            })
        }
        StateSelector::Continuum(e) => {
            let d = continuous_density(theory, ext, e)
                .map_err(|_| Error::NotInSpectrum(format!("E = {e} is not in the continuous spectrum")))?;
            Ok(StateEvaluator {
                theory: *theory,
                ext,
                energy: e,
                factor: d.sqrt(),
                mode: Mode::Direct,
                normalization: Normalization::EnergyDelta,
            })
        }
        StateSelector::ZeroMode => {
            let t = match theory {
                Theory::Coulomb(t) => t,
                _ => return Err(Error::NotInSpectrum("zero mode exists only for the Coulomb theory".into())),
            };
            let zg = coulomb::zeta_g(t).ok_or_else(|| Error::NotInSpectrum("zero mode requires g > 0".into()))?;
            if zg.distance(ext) > 1e-12 {
                return Err(Error::NotInSpectrum(format!("zero mode requires {zg}, got {ext}")));
            }
            let w0 = coulomb::zero_mode_weight(t).expect("g > 0");
            Ok(StateEvaluator {
                theory: *theory,
                ext: zg,
                energy: 0.0,
                factor: w0.sqrt(),
                mode: Mode::Decaying,
                normalization: Normalization::Unit,
            })
        }
    }
}

/// Normalized state sampled on `points`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledState {
    pub energy: f64,
    pub factor: f64,
    pub normalization: Normalization,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn eigenfunction(theory: &Theory, ext: Extension, which: StateSelector, points: &[f64]) -> Result<SampledState> {
    let ev = state_evaluator(theory, ext, which)?;
    let values = points.iter().map(|&p| ev.value(p)).collect::<Result<Vec<_>>>()?;
    Ok(SampledState {
        energy: ev.energy,
        factor: ev.factor,
        normalization: ev.normalization,
        points: points.to_vec(),
        values,
    })
}

/// Gram matrix `∫ U_n U_m` of the first `n_max + 1` normalized levels.
///
/// Coulomb integrals are taken in t = √x, which removes the x^{-1/2} behaviour
/// of the integrand derivative at the origin.
pub fn orthonormality_matrix(theory: &Theory, ext: Extension, n_max: usize, quad: &QuadConfig) -> Result<Vec<Vec<f64>>> {
    let levels = discrete_levels(theory, ext, n_max, DEFAULT_LEVEL_TOL)?;
    let evs = (0..levels.len())
        .map(|n| state_evaluator(theory, ext, StateSelector::Level(n)))
        .collect::<Result<Vec<_>>>()?;
    let m = evs.len();
    let cuts = evs.iter().map(|ev| tail_cut(theory, ev)).collect::<Result<Vec<_>>>()?;
    let cut = cuts.iter().fold(0.0f64, |m, &c| m.max(c));
    let coulomb = matches!(theory, Theory::Coulomb(_));
    let first_err: RefCell<Option<Error>> = RefCell::new(None);
    let mut vals = vec![0.0; m];
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let integrand = |t: f64, out: &mut [f64]| {
        let (p, jac) = if coulomb { (t * t, 2.0 * t) } else { (t, 1.0) };
        for (k, ev) in evs.iter().enumerate() {
            vals[k] = if p == 0.0 || p > cuts[k] {
                0.0
            } else {
                match ev.value(p) {
                    Ok(v) => v,
                    Err(e) => {
                        first_err.borrow_mut().get_or_insert(e);
                        0.0
                    }
                }
            };
        }
        for (o, &(i, j)) in out.iter_mut().zip(&pairs) {
            *o = vals[i] * vals[j] * jac;
        }
    };
    let upper = if coulomb { cut.sqrt() } else { cut };
    let (ints, _err) = integrate_vec(integrand, pairs.len(), 0.0, upper, quad)?;
    if let Some(e) = first_err.into_inner() {
        return Err(e);
    }
    let mut g = vec![vec![0.0; m]; m];
    for (&(i, j), v) in pairs.iter().zip(ints) {
        g[i][j] = v;
        g[j][i] = v;
    }
    Ok(g)
}

/// Position beyond which the state's density is negligible.
fn tail_cut(theory: &Theory, ev: &StateEvaluator) -> Result<f64> {
    let e = ev.energy;
    let scale = match theory {
        Theory::Oscillator(t) if t.lambda() > 0.0 => (e.abs() / t.lambda()).sqrt() + t.lambda().powf(-0.25),
        Theory::Oscillator(_) => 1.0 / (-e).sqrt(),
        Theory::Coulomb(t) => t.g().abs() / e.abs() + 1.0 / (-e).sqrt(),
    };
    let mut cut = 2.0 * scale;
    for _ in 0..200 {
        let mut small = true;
        for p in [cut, 0.95 * cut, 0.9 * cut] {
            let v = ev.value(p)?;
            if v * v * cut > 1e-18 {
                small = false;
            }
        }
        if small {
            return Ok(cut);
        }
        cut *= 1.25;
    }
    Err(Error::QuadratureFailure(format!("no tail cut found up to {cut:.3e}")))
}
