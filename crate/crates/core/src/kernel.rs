//! Confluent building blocks shared by the oscillator and Coulomb bases.
//!
//! Both theories reduce to Kummer's equation with c = 1/2 and parameter α;
//! their solutions differ only in the variable (ρ = ϰ²u² or z = 2Kx) and in
//! elementary prefactors.

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{
    digamma, gamma, gamma_ratio, kummer_scaled, nearest_pole, rgamma_with_derivative, tricomi_psi_with_derivative,
    Accuracy,
};

/// Distance of α + 1/2 from −n below which the decaying solution is not formed.
pub const DEGENERATE_TOL: f64 = 1e-8;

/// Values and first derivatives of the three basis solutions at one point.
///
/// `f3` is `None` when α + 1/2 sits on a non-positive integer: there the
/// decaying solution coincides with a multiple of `f1` and its normalisation
/// through Γ(α + 1/2) is singular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionTriple {
    pub f1: C,
    pub df1: C,
    pub f2: C,
    pub df2: C,
    pub f3: Option<(C, C)>,
}

impl SolutionTriple {
    pub fn is_degenerate(&self) -> bool {
        self.f3.is_none()
    }
}

/// Scaled Kummer data at one point of the confluent variable z:
/// `m1 = e^{-z/2} Φ(α+1/2, 3/2; z)`, `m2 = e^{-z/2} Φ(α, 1/2; z)` and the
/// scaled z-derivatives `e^{-z/2} Φ'`.
pub(crate) struct Confluent {
    pub m1: C,
    pub dm1: C,
    pub m2: C,
    pub dm2: C,
}

pub(crate) fn half_integer_pole(alpha: C) -> Option<usize> {
    let b = alpha + 0.5;
    let n = (-b.re).round();
    if n >= 0.0 && (b + n).norm() < DEGENERATE_TOL {
        Some(n as usize)
    } else {
        None
    }
}

/// Snaps a parameter lying within rounding of a non-positive integer onto it,
/// so that the Kummer series terminates exactly on the polynomial states.
fn snap_nonpositive(a: C) -> C {
    let n = a.re.round();
    if n <= 0.0 && (a - n).norm() < 1e-11 * (1.0 + n.abs()) {
        C::new(n, 0.0)
    } else {
        a
    }
}

pub(crate) fn confluent(alpha: C, z: C) -> Result<Confluent> {
    let acc = Accuracy::default();
    let alpha = snap_nonpositive(snap_nonpositive(alpha + 0.5) - 0.5);
    let c12 = C::new(0.5, 0.0);
    let c32 = C::new(1.5, 0.0);
    let a1 = alpha + 0.5;
    let m1 = kummer_scaled(a1, c32, z, &acc)?;
    let dm1 = if a1 == C::new(0.0, 0.0) { a1 } else { a1 / 1.5 * kummer_scaled(a1 + 1.0, C::new(2.5, 0.0), z, &acc)? };
    let m2 = kummer_scaled(alpha, c12, z, &acc)?;
    let dm2 = if alpha == C::new(0.0, 0.0) { alpha } else { 2.0 * alpha * kummer_scaled(alpha + 1.0, c32, z, &acc)? };
    Ok(Confluent { m1, dm1, m2, dm2 })
}

/// `e^{-z/2} Γ(α+1/2) Ψ(α, 1/2; z) / √π` and its scaled z-derivative.
pub(crate) fn decaying_scaled(alpha: C, z: C) -> Result<(C, C)> {
    let acc = Accuracy::default();
    let g = gamma(alpha + 0.5)? / std::f64::consts::PI.sqrt();
    let (p, dp) = tricomi_psi_with_derivative(alpha, C::new(0.5, 0.0), z, &acc)?;
    let e = (-0.5 * z).exp();
    let v = g * e * p;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow { routine: "decaying solution", modulus: z.norm() });
    }
    Ok((v, g * e * dp))
}

/// Chooses between the connection combination `f2 - c f1` and an independent
/// evaluation when the combination cancels.
pub(crate) fn combine_or(f1: (C, C), f2: (C, C), coef: C, direct: impl FnOnce() -> Result<(C, C)>) -> Result<(C, C)> {
    let v = f2.0 - coef * f1.0;
    let d = f2.1 - coef * f1.1;
    let scale_v = f2.0.norm() + (coef * f1.0).norm();
    let scale_d = f2.1.norm() + (coef * f1.1).norm();
    if v.norm() * 1e3 >= scale_v && d.norm() * 1e3 >= scale_d {
        Ok((v, d))
    } else {
        direct()
    }
}

/// γ(α) = Γ(α + 1/2)/Γ(α); [`Error::SpectralPole`] on the poles α + 1/2 = −n.
pub fn gamma_half_ratio(alpha: C) -> Result<C> {
    if let Some(n) = nearest_pole(alpha + 0.5) {
        return Err(Error::SpectralPole { n: (-n) as usize });
    }
    gamma_ratio(alpha + 0.5, alpha)
}

/// dγ/dα, finite at the zeros α = −n of γ.
pub fn gamma_half_ratio_derivative(alpha: C) -> Result<C> {
    if let Some(n) = nearest_pole(alpha + 0.5) {
        return Err(Error::SpectralPole { n: (-n) as usize });
    }
    let near_zero = {
        let n = alpha.re.round();
        n <= 0.0 && (alpha - n).norm() < 1e-3
    };
    if near_zero {
        let g = gamma(alpha + 0.5)?;
        let (r, dr) = rgamma_with_derivative(alpha);
        Ok(g * (digamma(alpha + 0.5)? * r + dr))
    } else {
        let g = gamma_ratio(alpha + 0.5, alpha)?;
        Ok(g * (digamma(alpha + 0.5)? - digamma(alpha)?))
    }
}

/// `sinh(√q)/√q`, `cosh(√q)` and d/dq of the former, entire in q.
pub(crate) fn sinhc_cosh(q: C) -> (C, C, C) {
    if q.norm() < 1.0 {
        let mut s = C::new(0.0, 0.0);
        let mut ch = C::new(0.0, 0.0);
        let mut ds = C::new(0.0, 0.0);
        let mut qk = C::new(1.0, 0.0); // q^k
        let mut f_odd = 1.0; // (2k+1)!
        let mut f_even = 1.0; // (2k)!
        for k in 0..20 {
            let kf = k as f64;
            if k > 0 {
                f_even *= (2.0 * kf - 1.0) * 2.0 * kf;
                f_odd *= 2.0 * kf * (2.0 * kf + 1.0);
            }
            s += qk / f_odd;
            ch += qk / f_even;
            // d/dq q^(k+1)/(2k+3)!
            ds += qk * (kf + 1.0) / (f_odd * (2.0 * kf + 2.0) * (2.0 * kf + 3.0));
            qk *= q;
        }
        return (s, ch, ds);
    }
    let t = q.sqrt();
    let (sh, chh) = (t.sinh(), t.cosh());
    let s = sh / t;
    let ds = (t * chh - sh) / (2.0 * t * t * t);
    (s, chh, ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinhc_branches_agree() {
        for &q in &[C::new(0.999, 0.0), C::new(-0.9, 0.3), C::new(0.2, -0.95)] {
            let (s1, c1, d1) = sinhc_cosh(q);
            let t = q.sqrt();
            assert!((s1 - t.sinh() / t).norm() < 1e-15);
            assert!((c1 - t.cosh()).norm() < 1e-15);
            let h = 1e-6;
            let fd = (sinhc_cosh(q + h).0 - sinhc_cosh(q - h).0) / (2.0 * h);
            assert!((d1 - fd).norm() < 1e-9);
        }
    }

    #[test]
    fn ratio_derivative_matches_difference() {
        for &a in &[C::new(-2.0, 0.0), C::new(-1.7, 0.0), C::new(0.8, 0.3), C::new(-3.0 + 1e-5, 0.0)] {
            let d = gamma_half_ratio_derivative(a).unwrap();
            let h = 1e-6;
            let fd = (gamma_half_ratio(a + h).unwrap() - gamma_half_ratio(a - h).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() < 1e-7 * (1.0 + d.norm()), "a={a}: {d} vs {fd}");
        }
    }
}
