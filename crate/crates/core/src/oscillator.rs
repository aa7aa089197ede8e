//! Half-line oscillator `-d²/du² + λu²`.
//!
//! Basis (u > 0, energy W, ϰ = λ^{1/4} or e^{-iπ/4}|λ|^{1/4}, ρ = ϰ²u², α = 1/4 - W/(4ϰ²)):
//!
//! * `O₁ = u e^{-ρ/2} Φ(α+1/2, 3/2; ρ)`, odd, `O₁ ~ u` at the origin;
//! * `O₂ = e^{-ρ/2} Φ(α, 1/2; ρ)`, even, `O₂ ~ 1`;
//! * `O₃ = π^{-1/2} Γ(α+1/2) e^{-ρ/2} Ψ(α, 1/2; ρ) = O₂ - 2ϰγ(α) O₁`, decaying
//!   (square integrable) whenever Im W > 0 or the level structure allows it.
//!
//! At λ = 0 the basis is elementary: `sin(√W u)/√W`, `cos(√W u)`, `e^{i√W u}`.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, SolutionTriple};
use crate::spectral::Extension;

/// Oscillator with coupling λ and length scale κ₀ > 0 for the boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorTheory {
    lambda: f64,
    kappa0: f64,
}

impl OscillatorTheory {
    pub fn new(lambda: f64, kappa0: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda = {lambda}")));
        }
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa0 must be positive, got {kappa0}")));
        }
        Ok(OscillatorTheory { lambda, kappa0 })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// ϰ² (zero at λ = 0).
    pub fn varkappa_sq(&self) -> C {
        if self.lambda >= 0.0 {
            C::new(self.lambda.sqrt(), 0.0)
        } else {
            C::new(0.0, -(-self.lambda).sqrt())
        }
    }

    /// ϰ with the branch e^{-iπ/4}|λ|^{1/4} for λ < 0.
    pub fn varkappa(&self) -> C {
        let m = self.lambda.abs().powf(0.25);
        if self.lambda >= 0.0 {
            C::new(m, 0.0)
        } else {
            C::from_polar(m, -std::f64::consts::FRAC_PI_4)
        }
    }

    /// Pole ϑ_n = 2√λ(2n + 3/2) of γ̃ (λ > 0); the ζ = π/2 levels.
    pub fn pole_energy(&self, n: usize) -> Option<f64> {
        (self.lambda > 0.0).then(|| 2.0 * self.lambda.sqrt() * (2.0 * n as f64 + 1.5))
    }

    /// Zero E_{0|n} = 2√λ(2n + 1/2) of γ̃ (λ > 0); the ζ = 0 levels.
    pub fn zero_energy(&self, n: usize) -> Option<f64> {
        (self.lambda > 0.0).then(|| 2.0 * self.lambda.sqrt() * (2.0 * n as f64 + 0.5))
    }
}

/// Confluent parameters of the oscillator at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscKernelParams {
    pub varkappa: C,
    pub varkappa_sq: C,
    /// w = W/(4ϰ²)
    pub w: C,
    /// α = 1/4 - w
    pub alpha: C,
}

impl OscKernelParams {
    /// ρ = ϰ²u².
    pub fn rho(&self, u: f64) -> C {
        self.varkappa_sq * u * u
    }
}

/// Kernel parameters; [`Error::FreeLimit`] at λ = 0, where the basis is elementary.
pub fn osc_params(theory: &OscillatorTheory, w: C) -> Result<OscKernelParams> {
    if theory.lambda == 0.0 {
        return Err(Error::FreeLimit("lambda = 0"));
    }
    let k2 = theory.varkappa_sq();
    let ww = w / (4.0 * k2);
    Ok(OscKernelParams { varkappa: theory.varkappa(), varkappa_sq: k2, w: ww, alpha: 0.25 - ww })
}

/// O₁, O₂, O₃ and their u-derivatives at `u >= 0`.
pub fn osc_basis(theory: &OscillatorTheory, w: C, u: f64) -> Result<SolutionTriple> {
    if !(u >= 0.0 && u.is_finite()) {
        return Err(Error::InvalidParameter(format!("u = {u} must be finite and non-negative")));
    }
    if theory.lambda == 0.0 {
        return Ok(free_basis(w, u));
    }
    let p = osc_params(theory, w)?;
    let rho = p.rho(u);
    let cf = kernel::confluent(p.alpha, rho)?;
    let k2u = 2.0 * p.varkappa_sq * u;
    let f1 = u * cf.m1;
    let df1 = cf.m1 + 2.0 * rho * (cf.dm1 - 0.5 * cf.m1);
    let f2 = cf.m2;
    let df2 = k2u * (cf.dm2 - 0.5 * cf.m2);
    let f3 = if kernel::half_integer_pole(p.alpha).is_some() {
        None
    } else {
        let coef = 2.0 * p.varkappa * kernel::gamma_half_ratio(p.alpha)?;
        Some(kernel::combine_or((f1, df1), (f2, df2), coef, || {
            let (v, dv) = kernel::decaying_scaled(p.alpha, rho)?;
            Ok((v, k2u * (dv - 0.5 * v)))
        })?)
    };
    Ok(SolutionTriple { f1, df1, f2, df2, f3 })
}

fn free_basis(w: C, u: f64) -> SolutionTriple {
    let s = w.sqrt();
    let su = s * u;
    let f1 = if su.norm() < 1e-4 {
        u * (1.0 - su * su / 6.0 + su * su * su * su / 120.0)
    } else {
        su.sin() / s
    };
    let e = (C::i() * su).exp();
    SolutionTriple { f1, df1: su.cos(), f2: su.cos(), df2: -s * su.sin(), f3: Some((e, C::i() * s * e)) }
}

/// Spectral function γ̃(W) = (2ϰ/κ₀)γ(α), with γ̃ = -i√W/κ₀ at λ = 0.
///
/// Exactly zero at the zeros E_{0|n}; [`Error::SpectralPole`] at the poles ϑ_n.
/// For λ < 0 and real W the closed form in terms of |Γ(α)|² is used.
pub fn gamma_tilde_osc(theory: &OscillatorTheory, w: C) -> Result<C> {
    let k0 = theory.kappa0;
    if theory.lambda == 0.0 {
        return Ok(-C::i() * w.sqrt() / k0);
    }
    if theory.lambda < 0.0 && w.im == 0.0 {
        let m = (-theory.lambda).powf(0.25);
        let wt = w.re / (4.0 * m * m);
        return Ok(closed_form_negative(4.0 * std::f64::consts::PI * m / k0, wt));
    }
    let p = osc_params(theory, w)?;
    Ok(2.0 * p.varkappa / k0 * kernel::gamma_half_ratio(p.alpha)?)
}

/// `b / (|Γ(1/4 - iw)|² (e^{-πw} + i e^{πw}))`, kept finite for large |w|.
pub(crate) fn closed_form_negative(b: f64, w: f64) -> C {
    let (ln_p, ln_n) = log_weights(w);
    let m = ln_p.max(ln_n);
    let d = C::new((ln_n - m).exp(), (ln_p - m).exp());
    b * (-m).exp() / d
}

/// ln P and ln N with P = e^{πw}|Γ(1/4 - iw)|², N = e^{-πw}|Γ(1/4 - iw)|².
pub(crate) fn log_weights(w: f64) -> (f64, f64) {
    // ln_gamma is finite off the poles, and 1/4 - iw is never a pole
    let lg = 2.0 * crate::specfun::ln_gamma(C::new(0.25, -w)).map(|l| l.re).unwrap_or(0.0);
    let pw = std::f64::consts::PI * w;
    (lg + pw, lg - pw)
}

/// dγ̃/dE on the real axis in the discrete regime (λ > 0, or λ = 0 with E < 0).
pub fn gamma_tilde_osc_derivative(theory: &OscillatorTheory, e: f64) -> Result<f64> {
    let k0 = theory.kappa0;
    if theory.lambda == 0.0 {
        if e >= 0.0 {
            return Err(Error::NotDiscreteRegime);
        }
        return Ok(-0.5 / (k0 * (-e).sqrt()));
    }
    if theory.lambda < 0.0 {
        return Err(Error::NotDiscreteRegime);
    }
    let p = osc_params(theory, C::new(e, 0.0))?;
    let dalpha = -1.0 / (4.0 * p.varkappa_sq.re);
    Ok((2.0 * p.varkappa / k0 * kernel::gamma_half_ratio_derivative(p.alpha)? * dalpha).re)
}

/// U_ζ = κ₀ sin ζ · O₁ + cos ζ · O₂ and Ũ_ζ = κ₀ cos ζ · O₁ - sin ζ · O₂,
/// each as (value, u-derivative).
pub fn u_zeta_osc(theory: &OscillatorTheory, w: C, ext: Extension, u: f64) -> Result<((C, C), (C, C))> {
    let b = osc_basis(theory, w, u)?;
    Ok(u_pair(&b, theory.kappa0, ext))
}

pub(crate) fn u_pair(b: &SolutionTriple, kappa0: f64, ext: Extension) -> ((C, C), (C, C)) {
    let (s, c) = ext.sin_cos();
    let u = (kappa0 * s * b.f1 + c * b.f2, kappa0 * s * b.df1 + c * b.df2);
    let ut = (kappa0 * c * b.f1 - s * b.f2, kappa0 * c * b.df1 - s * b.df2);
    (u, ut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc(lambda: f64) -> OscillatorTheory {
        OscillatorTheory::new(lambda, 1.0).unwrap()
    }

    #[test]
    fn gamma_tilde_reference_value() {
        // mpmath: 2 Γ(1/4)/Γ(-1/4) at λ = 1, E = 2
        let g = gamma_tilde_osc(&osc(1.0), C::new(2.0, 0.0)).unwrap();
        assert!((g.re - -1.47933755959431944615541067886).abs() < 1e-13);
        assert!(g.im.abs() < 1e-15);
    }

    #[test]
    fn zeros_and_poles() {
        let t = osc(1.0);
        assert_eq!(gamma_tilde_osc(&t, C::new(1.0, 0.0)).unwrap(), C::new(0.0, 0.0));
        assert!(matches!(gamma_tilde_osc(&t, C::new(3.0, 0.0)), Err(Error::SpectralPole { n: 0 })));
        assert!(matches!(gamma_tilde_osc(&t, C::new(7.0, 0.0)), Err(Error::SpectralPole { n: 1 })));
    }

    #[test]
    fn negative_coupling_closed_form_matches_gamma_route() {
        let t = osc(-1.3);
        for &e in &[-4.0, -0.5, 0.0, 0.7, 3.0, 9.0] {
            let closed = gamma_tilde_osc(&t, C::new(e, 0.0)).unwrap();
            let p = osc_params(&t, C::new(e, 0.0)).unwrap();
            let direct = 2.0 * p.varkappa * kernel::gamma_half_ratio(p.alpha).unwrap();
            assert!((closed - direct).norm() < 1e-12 * direct.norm(), "E={e}: {closed} vs {direct}");
        }
    }

    #[test]
    fn free_limit_elementary() {
        let t = osc(0.0);
        let b = osc_basis(&t, C::new(4.0, 0.0), 0.3).unwrap();
        assert!((b.f1.re - (0.6f64).sin() / 2.0).abs() < 1e-15);
        assert!((b.f2.re - (0.6f64).cos()).abs() < 1e-15);
        assert!(matches!(osc_params(&t, C::new(1.0, 0.0)), Err(Error::FreeLimit(_))));
    }

    #[test]
    fn degenerate_flag_on_poles() {
        let b = osc_basis(&osc(1.0), C::new(3.0, 0.0), 0.7).unwrap();
        assert!(b.is_degenerate());
        // O₁ at the first pole is u e^{-u²/2}
        assert!((b.f1.re - 0.7 * (-0.245f64).exp()).abs() < 1e-14);
    }
}
