use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::{Extension, Theory};
use crate::error::{Error, Result};
use crate::specfun::rgamma;

pub const DEFAULT_LEVEL_TOL: f64 = 1e-10;

/// Bisection stops once the bracket is this fraction of its initial width
/// (or of the magnitude of its ends, when smaller).
const BISECT_REL: f64 = 1e-13;

/// A discrete level and its spectral weight Q².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub index: usize,
    pub energy: f64,
    pub weight: f64,
}

/// Levels `E_0 < E_1 < ... < E_{n_max}` of the extension ζ with their weights.
///
/// In the single-level regimes (oscillator λ = 0 with ζ < 0, Coulomb g ≥ 0 with
/// ζ < ζ₀) one level is returned regardless of `n_max`.
pub fn discrete_levels(theory: &Theory, ext: Extension, n_max: usize, tol: f64) -> Result<Vec<Level>> {
    if let Some((pole, _zero)) = theory.ladders() {
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let hi = pole(n);
            let energy = if ext.is_dirichlet() {
                hi
            } else {
                let lo = if n == 0 { None } else { Some(pole(n - 1)) };
                solve_bracket(theory, ext, lo, hi, tol)?
            };
            let weight = if ext.is_dirichlet() { pole_weight(theory, n, energy)? } else { weight(theory, ext, energy)? };
            out.push(Level { index: n, energy, weight });
        }
        return Ok(out);
    }
    match theory {
        Theory::Oscillator(t) if t.lambda() == 0.0 => {
            let tan = ext.tan().filter(|&t| t < 0.0).ok_or(Error::NotDiscreteRegime)?;
            let k0 = t.kappa0();
            let energy = -k0 * k0 * tan * tan;
            Ok(vec![Level { index: 0, energy, weight: weight(theory, ext, energy)? }])
        }
        Theory::Coulomb(t) if t.g() >= 0.0 => {
            let bound = t.single_level_bound().expect("g >= 0");
            let tan = ext.tan().ok_or(Error::NotDiscreteRegime)?;
            let tan0 = bound.tan().expect("finite bound");
            if !(tan < tan0) {
                return Err(Error::NotDiscreteRegime);
            }
            let energy = solve_bracket(theory, ext, None, 0.0, tol)?;
            Ok(vec![Level { index: 0, energy, weight: weight(theory, ext, energy)? }])
        }
        _ => Err(Error::NotDiscreteRegime),
    }
}

/// |γ̃(E) + tan ζ|, or |1/γ̃(E)| at ζ = π/2 (zero on the poles).
pub fn eigen_residual(theory: &Theory, ext: Extension, e: f64) -> Result<f64> {
    match ext.tan() {
        Some(t) => match theory.gamma_tilde(C::new(e, 0.0)) {
            Ok(g) => Ok((g + t).norm()),
            Err(Error::SpectralPole { .. }) => Ok(f64::INFINITY),
            Err(err) => Err(err),
        },
        None => reciprocal_gamma_tilde(theory, e).map(|r| r.norm()),
    }
}

/// 1/γ̃ through 1/Γ, finite and exactly zero on the poles of γ̃.
fn reciprocal_gamma_tilde(theory: &Theory, e: f64) -> Result<C> {
    let ec = C::new(e, 0.0);
    let (pre, alpha) = match theory {
        Theory::Oscillator(t) => {
            if t.lambda() == 0.0 {
                return theory.gamma_tilde(ec).map(|g| 1.0 / g);
            }
            let p = crate::oscillator::osc_params(t, ec)?;
            (2.0 * p.varkappa / t.kappa0(), p.alpha)
        }
        Theory::Coulomb(t) => {
            if e >= 0.0 {
                return theory.gamma_tilde(ec).map(|g| 1.0 / g);
            }
            let p = crate::coulomb::coul_params(t, ec)?;
            (2.0 * (2.0 * p.k / t.kappa0()).sqrt(), p.alpha)
        }
    };
    match crate::specfun::gamma(alpha) {
        Ok(g) => Ok(rgamma(alpha + 0.5) * g / pre),
        // zero of γ̃
        Err(Error::Pole { .. }) => Ok(C::new(f64::INFINITY, 0.0)),
        Err(e) => Err(e),
    }
}

const ROOT_ULPS: f64 = 64.0;

fn f_of(theory: &Theory, tan: f64, e: f64) -> Result<f64> {
    Ok(theory.gamma_tilde(C::new(e, 0.0))?.re + tan)
}

/// Root of γ̃(E) + tan ζ in (lo, hi), where the function decreases from +∞ to
/// its value at `hi` (−∞ on a pole). `lo = None` stands for −∞.
fn solve_bracket(theory: &Theory, ext: Extension, lo: Option<f64>, hi: f64, tol: f64) -> Result<f64> {
    let tan = ext.tan().ok_or(Error::NotDiscreteRegime)?;
    let lo = match lo {
        Some(l) => l,
        None => seed_left(theory, tan, hi)?,
    };
    let width = hi - lo;
    let (mut a, mut b) = (lo, hi);
    // the seeded first bracket can be far wider than the root's own scale
    for _ in 0..400 {
        if b - a <= BISECT_REL * width.min(a.abs().max(b.abs())) {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        match f_of(theory, tan, m) {
            Ok(v) if v > 0.0 => a = m,
            Ok(_) => b = m,
            Err(Error::SpectralPole { .. }) => b = m,
            Err(err) => return Err(err),
        }
    }
    let mut e = 0.5 * (a + b);
    let fe = f_of(theory, tan, e)?;
    if let Ok(d) = theory.gamma_tilde_derivative(e) {
        let next = e - fe / d;
        if next > a && next < b {
            if let Ok(fn_) = f_of(theory, tan, next) {
                if fn_.abs() <= fe.abs() {
                    e = next;
                }
            }
        }
    }
    let res = f_of(theory, tan, e)?.abs();
    if res > tol * (1.0 + tan.abs()) && !sign_change_near(theory, tan, e) {
        return Err(Error::BracketFailure {
            lo,
            hi,
            detail: format!("residual {res:.3e} at E = {e} exceeds tolerance {tol:.1e}"),
        });
    }
    Ok(e)
}

/// Whether the root is pinned within `ROOT_ULPS` ulp of `e`. Next to a pole
/// γ̃ moves by more than the tolerance across a single ulp of E.
fn sign_change_near(theory: &Theory, tan: f64, e: f64) -> bool {
    let d = ROOT_ULPS * f64::EPSILON * e.abs().max(f64::MIN_POSITIVE);
    match (f_of(theory, tan, e - d), f_of(theory, tan, e + d)) {
        (Ok(l), Ok(r)) => l.is_finite() && r.is_finite() && l > 0.0 && r < 0.0,
        _ => false,
    }
}

/// Finite left edge where γ̃ + tan ζ > 0, expanding geometrically from `hi`.
fn seed_left(theory: &Theory, tan: f64, hi: f64) -> Result<f64> {
    // γ̃ grows like |E|^{1/2} (oscillator) or |E|^{1/4} (Coulomb) as E → −∞
    let k0 = theory.kappa0();
    let guess = match theory {
        Theory::Oscillator(_) => (k0 * tan).powi(2),
        Theory::Coulomb(_) => {
            let c = 2.0 * std::f64::consts::SQRT_2 / k0.sqrt() * 0.337_989_120_788_172_2; // Γ(3/4)/Γ(1/4)
            (tan / c).powi(4)
        }
    };
    let mut step = hi.abs().max(1.0).max(guess);
    for _ in 0..80 {
        let lo = hi - step;
        if f_of(theory, tan, lo)? > 0.0 {
            return Ok(lo);
        }
        step *= 2.0;
    }
    Err(Error::BracketFailure { lo: f64::NEG_INFINITY, hi, detail: "no sign change found below the first pole".into() })
}

/// Q² of the level at `e`, which must solve the eigenvalue equation of ζ.
pub fn level_weight(theory: &Theory, ext: Extension, e: f64) -> Result<f64> {
    if !ext.is_dirichlet() {
        return weight(theory, ext, e);
    }
    let ec = C::new(e, 0.0);
    let alpha = match theory {
        Theory::Oscillator(t) => crate::oscillator::osc_params(t, ec)?.alpha,
        Theory::Coulomb(t) if e < 0.0 => crate::coulomb::coul_params(t, ec)?.alpha,
        Theory::Coulomb(_) => return Err(Error::NotInSpectrum(format!("E = {e} is not a level"))),
    };
    let n = crate::kernel::half_integer_pole(alpha).ok_or_else(|| Error::NotInSpectrum(format!("E = {e} is not a pole level")))?;
    pole_weight(theory, n, e)
}

/// Q² = −1/(Wr(U, Ũ) cos²ζ γ̃'(E)).
fn weight(theory: &Theory, ext: Extension, e: f64) -> Result<f64> {
    let (_, c) = ext.sin_cos();
    let d = theory.gamma_tilde_derivative(e)?;
    let q2 = -1.0 / (theory.wronskian_scale() * c * c * d);
    if !(q2 > 0.0 && q2.is_finite()) {
        return Err(Error::NoConvergence { routine: "level weight", detail: format!("γ̃'({e}) = {d}") });
    }
    Ok(q2)
}

/// ζ = π/2 weight R/Wr(U, Ũ), R the residue of γ̃ at the pole ϑ_n.
fn pole_weight(theory: &Theory, n: usize, e: f64) -> Result<f64> {
    let nf = n as f64;
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let rg = rgamma(C::new(-nf - 0.5, 0.0)).re;
    let (pre, dalpha) = match theory {
        Theory::Oscillator(t) => {
            let sl = t.lambda().sqrt();
            (2.0 * t.lambda().powf(0.25) / t.kappa0(), -0.25 / sl)
        }
        Theory::Coulomb(t) => {
            let k = (-e).sqrt();
            (2.0 * (2.0 * k / t.kappa0()).sqrt(), t.g() / (4.0 * k * k * k))
        }
    };
    let residue = pre * sign / fact * rg / dalpha;
    let q2 = residue / theory.wronskian_scale();
    if !(q2 > 0.0 && q2.is_finite()) {
        return Err(Error::NoConvergence { routine: "pole weight", detail: format!("n = {n}, residue {residue}") });
    }
    Ok(q2)
}
