use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::{Extension, Theory};
use crate::error::{Error, Result};

/// Resolvent kernel value G(p1, p2; W) together with Ω(W).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenEval {
    pub p1: f64,
    pub p2: f64,
    pub energy: C,
    pub value: C,
    pub omega: C,
}

/// Relative cancellation below which the two-term form is replaced by
/// `U(p_<) f₃(p_>) / (Wr ω)`.
const CANCEL: f64 = 1e-6;

/// G(p1, p2; W) for Im W > 0.
pub fn green_function(theory: &Theory, ext: Extension, p1: f64, p2: f64, w: C) -> Result<GreenEval> {
    if !(w.im > 0.0) {
        return Err(Error::NotResolventSet { im: w.im });
    }
    let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
    let gt = theory.gamma_tilde(w)?;
    let (s, c) = ext.sin_cos();
    let wr = theory.wronskian_scale();
    let om = s + gt * c;
    let omt = c - gt * s;
    let omega = omt / (wr * om);
    let b_lo = theory.basis(w, lo)?;
    let b_hi = theory.basis(w, hi)?;
    let k0 = theory.kappa0();
    let u_lo = k0 * s * b_lo.f1 + c * b_lo.f2;
    let u_hi = k0 * s * b_hi.f1 + c * b_hi.f2;
    let ut_hi = k0 * c * b_hi.f1 - s * b_hi.f2;
    let t1 = omega * u_lo * u_hi;
    let t2 = u_lo * ut_hi / wr;
    let mut value = t1 - t2;
    if value.norm() < CANCEL * (t1.norm() + t2.norm()) {
        if let Some((f3, _)) = b_hi.f3 {
            value = u_lo * f3 / (wr * om);
        }
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow { routine: "green function", modulus: value.norm() });
    }
    Ok(GreenEval { p1, p2, energy: w, value, omega })
}
