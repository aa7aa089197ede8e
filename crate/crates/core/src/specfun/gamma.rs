//! Complex gamma, log-gamma, reciprocal gamma and digamma.
//!
//! Lanczos approximation (g = 7, nine coefficients) on Re z >= 1/2 and the
//! reflection formula elsewhere. Reflection uses a scaled sin(pi z) so that
//! large imaginary parts do not overflow.

use num_complex::Complex64 as C;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Distance below which a point counts as sitting on a gamma pole.
pub const POLE_TOL: f64 = 1e-12;

/// `sin(pi x)` and `cos(pi x)` with the argument reduced exactly mod 2.
pub fn sincos_pi_real(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (0.5 * x).round();
    let (sign, a) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let (s, c) = if a <= 0.25 {
        ((PI * a).sin(), (PI * a).cos())
    } else if a <= 0.75 {
        let b = 0.5 - a;
        ((PI * b).cos(), (PI * b).sin())
    } else {
        let b = 1.0 - a;
        ((PI * b).sin(), -(PI * b).cos())
    };
    (sign * s, c)
}

/// `sin(pi z)` and `cos(pi z)` written as `mantissa * exp(scale)`.
///
/// The mantissas stay bounded for any imaginary part.
pub fn sincos_pi_scaled(z: C) -> (C, C, f64) {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    if y.abs() < 20.0 {
        let (ch, sh) = (y.cosh(), y.sinh());
        (C::new(s * ch, c * sh), C::new(c * ch, -s * sh), 0.0)
    } else {
        let e = (-2.0 * y.abs()).exp();
        let ch = 0.5 * (1.0 + e);
        let sh = 0.5 * (1.0 - e) * y.signum();
        (C::new(s * ch, c * sh), C::new(c * ch, -s * sh), y.abs())
    }
}

/// `sin(pi z)`; overflows only where the true value does.
pub fn sin_pi(z: C) -> C {
    let (s, _, scale) = sincos_pi_scaled(z);
    s * scale.exp()
}

/// `cos(pi z)`.
pub fn cos_pi(z: C) -> C {
    let (_, c, scale) = sincos_pi_scaled(z);
    c * scale.exp()
}

/// Returns `Some(n)` when `z` lies within [`POLE_TOL`] of the non-positive integer `n`.
pub fn nearest_pole(z: C) -> Option<i64> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if (z - n).norm() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

fn pole_error(z: C) -> Error {
    Error::Pole { re: z.re, im: z.im }
}

fn lanczos_sum(z: C) -> C {
    let x = z - 1.0;
    let mut a = C::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        a += p / (x + i as f64);
    }
    a
}

/// log Gamma on Re z >= 1/2.
fn ln_gamma_right(z: C) -> C {
    let t = z + (LANCZOS_G - 0.5);
    (z - 0.5) * t.ln() - t + LN_SQRT_2PI + lanczos_sum(z).ln()
}

// B_{2k} / (2k (2k - 1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling_tail(z: C) -> C {
    let r = 1.0 / z;
    let r2 = r * r;
    let mut acc = C::new(0.0, 0.0);
    for &b in STIRLING.iter().rev() {
        acc = acc * r2 + b;
    }
    acc * r
}

/// ln(1 + w) without cancellation for small w.
fn ln_1p(w: C) -> C {
    let u = 1.0 + w;
    if u == C::new(1.0, 0.0) {
        w
    } else {
        u.ln() * w / (u - 1.0)
    }
}

/// ln Gamma(x) - ln Gamma(y) on Re >= 1/2. For large nearby arguments the
/// difference is formed from the Stirling series, so it keeps its relative
/// accuracy when both logarithms are huge.
fn ln_gamma_right_diff(x: C, y: C) -> C {
    let d = x - y;
    if x.norm() < 30.0 || y.norm() < 30.0 || d.norm() > 0.5 * y.norm() {
        return ln_gamma_right(x) - ln_gamma_right(y);
    }
    (y - 0.5) * ln_1p(d / y) + d * x.ln() - d + stirling_tail(x) - stirling_tail(y)
}

/// Gamma(z). Errors with [`Error::Pole`] near non-positive integers.
pub fn gamma(z: C) -> Result<C> {
    if nearest_pole(z).is_some() {
        return Err(pole_error(z));
    }
    if z.re >= 0.5 {
        let t = z + (LANCZOS_G - 0.5);
        return Ok(((z - 0.5) * t.ln() - t + LN_SQRT_2PI).exp() * lanczos_sum(z));
    }
    let (s, _, scale) = sincos_pi_scaled(z);
    Ok(PI / s * (-scale - ln_gamma_right(1.0 - z)).exp())
}

/// A logarithm of Gamma(z).
///
/// The real part is ln|Gamma(z)|; the imaginary part is an argument of
/// Gamma(z) but is not reduced to a fixed branch.
pub fn ln_gamma(z: C) -> Result<C> {
    if nearest_pole(z).is_some() {
        return Err(pole_error(z));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    let (s, _, scale) = sincos_pi_scaled(z);
    Ok(PI.ln() - s.ln() - scale - ln_gamma_right(1.0 - z))
}

/// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
pub fn rgamma(z: C) -> C {
    if z.re >= 0.5 {
        return (-ln_gamma_right(z)).exp();
    }
    let (s, _, scale) = sincos_pi_scaled(z);
    if s == C::new(0.0, 0.0) {
        return s;
    }
    s / PI * (scale + ln_gamma_right(1.0 - z)).exp()
}

/// 1/Gamma(z) together with its derivative, both finite across the poles of Gamma.
pub fn rgamma_with_derivative(z: C) -> (C, C) {
    if z.re >= 0.5 {
        let r = rgamma(z);
        // digamma cannot fail on the right half-plane
        let psi = digamma(z).unwrap_or_default();
        return (r, -psi * r);
    }
    let (s, c, scale) = sincos_pi_scaled(z);
    let w = 1.0 - z;
    let g = (scale + ln_gamma_right(w)).exp();
    let psi = digamma(w).unwrap_or_default();
    (s / PI * g, g * (c - s * psi / PI))
}

/// Gamma(a)/Gamma(b), evaluated through logarithms so that large or
/// nearly cancelling arguments stay finite. Zero when `b` is a pole.
pub fn gamma_ratio(a: C, b: C) -> Result<C> {
    if nearest_pole(a).is_some() {
        return Err(pole_error(a));
    }
    let sb = if b.re >= 0.5 {
        None
    } else {
        let (s, _, scale) = sincos_pi_scaled(b);
        if s == C::new(0.0, 0.0) {
            return Ok(s);
        }
        Some((s, scale))
    };
    let sa = if a.re >= 0.5 {
        None
    } else {
        let (s, _, scale) = sincos_pi_scaled(a);
        Some((s, scale))
    };
    let v = match (sa, sb) {
        (None, None) => ln_gamma_right_diff(a, b).exp(),
        (Some((s, sc)), None) => PI / s * (-sc - ln_gamma_right(1.0 - a) - ln_gamma_right(b)).exp(),
        (None, Some((s, sc))) => s / PI * (sc + ln_gamma_right(a) + ln_gamma_right(1.0 - b)).exp(),
        // Gamma(a)/Gamma(b) = [sin(pi b)/sin(pi a)] Gamma(1 - b)/Gamma(1 - a)
        (Some((s1, c1)), Some((s2, c2))) => s2 / s1 * (c2 - c1 - ln_gamma_right_diff(1.0 - a, 1.0 - b)).exp(),
    };
    Ok(v)
}

// B_{2k} / (2k) for k = 1..7
const DIGAMMA_ASYM: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
pub fn digamma(z: C) -> Result<C> {
    if nearest_pole(z).is_some() {
        return Err(pole_error(z));
    }
    if z.re < 0.5 {
        let cot = if z.im.abs() > 20.0 {
            C::new(0.0, -z.im.signum())
        } else {
            let (s, c, _) = sincos_pi_scaled(z);
            c / s
        };
        return Ok(digamma(1.0 - z)? - PI * cot);
    }
    let mut z = z;
    let mut acc = C::new(0.0, 0.0);
    while z.norm() < 10.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = C::new(0.0, 0.0);
    for &b in DIGAMMA_ASYM.iter().rev() {
        series = (series + b) * inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}
