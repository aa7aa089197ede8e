//! Half-line Coulomb-like operator `-d²/dx² + g/x - 3/(16x²)`.
//!
//! Basis (x > 0, energy ℰ, K = √(-ℰ) with K = -i√ℰ on the physical sheet for
//! ℰ > 0, z = 2Kx, α = 1/4 + g/(2K)):
//!
//! * `C₁ = κ₀^{-1/2} x^{3/4} e^{-z/2} Φ(α+1/2, 3/2; z)`;
//! * `C₂ = x^{1/4} e^{-z/2} Φ(α, 1/2; z)`;
//! * `C₃ = C₂ - 2√(2κ₀K) γ(α) C₁`, decaying.
//!
//! At ℰ = 0 the basis reduces to `x^{1/4} cosh 2√(gx)`, `κ₀^{-1/2} x^{3/4} sinh(2√(gx))/(2√(gx))`
//! and `x^{1/4} e^{-2√(gx)}`.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, SolutionTriple};
use crate::oscillator::closed_form_negative;
use crate::spectral::Extension;

/// Coulomb-like theory with coupling g and scale κ₀ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombTheory {
    g: f64,
    kappa0: f64,
}

impl CoulombTheory {
    pub fn new(g: f64, kappa0: f64) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InvalidParameter(format!("g = {g}")));
        }
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa0 must be positive, got {kappa0}")));
        }
        Ok(CoulombTheory { g, kappa0 })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// ϑ_n = -g²(2n + 3/2)^{-2}, the ζ = π/2 levels (g < 0).
    pub fn pole_energy(&self, n: usize) -> Option<f64> {
        (self.g < 0.0).then(|| -self.g * self.g / (2.0 * n as f64 + 1.5).powi(2))
    }

    /// E_{0|n} = -g²(2n + 1/2)^{-2}, the ζ = 0 levels (g < 0).
    pub fn zero_energy(&self, n: usize) -> Option<f64> {
        (self.g < 0.0).then(|| -self.g * self.g / (2.0 * n as f64 + 0.5).powi(2))
    }

    /// γ̃(0⁻) = 2√(g/κ₀) for g ≥ 0; the single negative level exists iff γ̃(E) = -tan ζ
    /// has a solution below it, i.e. iff ζ < ζ₀ with tan ζ₀ = -2√(g/κ₀).
    pub fn single_level_bound(&self) -> Option<Extension> {
        (self.g >= 0.0).then(|| Extension::from_angle((-2.0 * (self.g / self.kappa0).sqrt()).atan()))
    }
}

/// Confluent parameters of the Coulomb problem at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulKernelParams {
    pub k: C,
    /// ϰ = √(2κ₀K), the oscillator-side ϰ under the duality map
    pub varkappa: C,
    /// w = -g/(2K)
    pub w: C,
    /// α = 1/4 + g/(2K)
    pub alpha: C,
}

impl CoulKernelParams {
    /// z = 2Kx.
    pub fn z(&self, x: f64) -> C {
        2.0 * self.k * x
    }
}

/// K = √(-ℰ), with the boundary value -i√ℰ from the upper half-plane for ℰ > 0.
pub fn coulomb_k(e: C) -> C {
    if e.im == 0.0 && e.re > 0.0 {
        C::new(0.0, -e.re.sqrt())
    } else {
        (-e).sqrt()
    }
}

/// Kernel parameters for complex coupling; [`Error::FreeLimit`] at ℰ = 0.
pub fn coul_params_general(g: C, kappa0: f64, e: C) -> Result<CoulKernelParams> {
    if e == C::new(0.0, 0.0) {
        return Err(Error::FreeLimit("zero energy"));
    }
    let k = coulomb_k(e);
    let w = -g / (2.0 * k);
    Ok(CoulKernelParams { k, varkappa: (2.0 * kappa0 * k).sqrt(), w, alpha: 0.25 - w })
}

pub fn coul_params(theory: &CoulombTheory, e: C) -> Result<CoulKernelParams> {
    coul_params_general(C::new(theory.g, 0.0), theory.kappa0, e)
}

/// C₁, C₂, C₃ and their x-derivatives at `x > 0`.
pub fn coul_basis(theory: &CoulombTheory, e: C, x: f64) -> Result<SolutionTriple> {
    coul_basis_general(C::new(theory.g, 0.0), theory.kappa0, e, x)
}

/// [`coul_basis`] for complex coupling.
pub fn coul_basis_general(g: C, kappa0: f64, e: C, x: f64) -> Result<SolutionTriple> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("x = {x} must be finite and positive")));
    }
    let rk = kappa0.powf(-0.5);
    let x14 = x.powf(0.25);
    let x34 = x.powf(0.75);
    if e == C::new(0.0, 0.0) {
        let q = 4.0 * g * x;
        let (s, ch, ds) = kernel::sinhc_cosh(q);
        let f1 = rk * x34 * s;
        let df1 = rk * (0.75 / x14 * s + x34 * 4.0 * g * ds);
        let f2 = x14 * ch;
        let df2 = 0.25 / x34 * ch + 2.0 * g * x14 * s;
        let sq = (g * x).sqrt();
        let ex = (-2.0 * sq).exp();
        let f3 = x14 * ex;
        let df3 = x14 * ex * (0.25 / x - sq / x);
        return Ok(SolutionTriple { f1, df1, f2, df2, f3: Some((f3, df3)) });
    }
    let p = coul_params_general(g, kappa0, e)?;
    let z = p.z(x);
    let cf = kernel::confluent(p.alpha, z)?;
    let k2 = 2.0 * p.k;
    let f1 = rk * x34 * cf.m1;
    let df1 = rk * (0.75 / x14 * cf.m1 + x34 * k2 * (cf.dm1 - 0.5 * cf.m1));
    let f2 = x14 * cf.m2;
    let df2 = 0.25 / x34 * cf.m2 + x14 * k2 * (cf.dm2 - 0.5 * cf.m2);
    let f3 = if kernel::half_integer_pole(p.alpha).is_some() {
        None
    } else {
        let coef = 2.0 * p.varkappa * kernel::gamma_half_ratio(p.alpha)?;
        Some(kernel::combine_or((f1, df1), (f2, df2), coef, || {
            let (v, dv) = kernel::decaying_scaled(p.alpha, z)?;
            Ok((x14 * v, 0.25 / x34 * v + x14 * k2 * (dv - 0.5 * v)))
        })?)
    };
    Ok(SolutionTriple { f1, df1, f2, df2, f3 })
}

/// Spectral function γ̃(ℰ) = 2√(2K/κ₀) γ(α); γ̃(0) = 2√(g/κ₀).
///
/// For real ℰ > 0 the closed form through |Γ(α)|² is used.
pub fn gamma_tilde_coul(theory: &CoulombTheory, e: C) -> Result<C> {
    if e.im == 0.0 && e.re > 0.0 {
        let se = e.re.sqrt();
        let wt = -theory.g / (2.0 * se);
        let b = 4.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI * se.sqrt() / theory.kappa0.sqrt();
        return Ok(closed_form_negative(b, wt));
    }
    gamma_tilde_coul_general(C::new(theory.g, 0.0), theory.kappa0, e)
}

/// [`gamma_tilde_coul`] for complex coupling, always through the gamma ratio.
pub fn gamma_tilde_coul_general(g: C, kappa0: f64, e: C) -> Result<C> {
    if e == C::new(0.0, 0.0) {
        return Ok(2.0 * (g / kappa0).sqrt());
    }
    let p = coul_params_general(g, kappa0, e)?;
    Ok(2.0 * p.varkappa / kappa0 * kernel::gamma_half_ratio(p.alpha)?)
}

/// dγ̃/dE for real E < 0.
pub fn gamma_tilde_coul_derivative(theory: &CoulombTheory, e: f64) -> Result<f64> {
    if e >= 0.0 {
        return Err(Error::NotDiscreteRegime);
    }
    let k = (-e).sqrt();
    let alpha = C::new(0.25 + theory.g / (2.0 * k), 0.0);
    let pre = 2.0 * (2.0 * k / theory.kappa0).sqrt();
    let g0 = kernel::gamma_half_ratio(alpha)?;
    let g1 = kernel::gamma_half_ratio_derivative(alpha)?;
    let d = pre * g0 * (-0.25 / (k * k)) + pre * g1 * (theory.g / (4.0 * k * k * k));
    Ok(d.re)
}

/// The extension ζ_g with a zero-energy bound state (g > 0): tan ζ_g = -2√(g/κ₀).
pub fn zeta_g(theory: &CoulombTheory) -> Option<Extension> {
    (theory.g > 0.0).then(|| Extension::from_angle((-2.0 * (theory.g / theory.kappa0).sqrt()).atan()))
}

/// Weight of the E = 0 atom at ζ = ζ_g: 16g^{3/2}(1 + 4g/κ₀).
pub fn zero_mode_weight(theory: &CoulombTheory) -> Option<f64> {
    (theory.g > 0.0).then(|| 16.0 * theory.g.powf(1.5) * (1.0 + 4.0 * theory.g / theory.kappa0))
}

/// U_ζ = κ₀ sin ζ · C₁ + cos ζ · C₂ and Ũ_ζ = κ₀ cos ζ · C₁ - sin ζ · C₂.
pub fn u_zeta_coul(theory: &CoulombTheory, e: C, ext: Extension, x: f64) -> Result<((C, C), (C, C))> {
    let b = coul_basis(theory, e, x)?;
    Ok(crate::oscillator::u_pair(&b, theory.kappa0, ext))
}
