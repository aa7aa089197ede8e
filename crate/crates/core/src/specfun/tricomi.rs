//! Tricomi's confluent hypergeometric function Psi(a, c; z) = U(a, c, z), principal branch.
//!
//! Methods, tried in order:
//! 1. the large-|z| asymptotic series z^-a 2F0, when its error estimate passes;
//! 2. the connection formula through two Kummer functions (non-integer c), when
//!    the two terms do not cancel;
//! 3. the ratio Psi(a + 1)/Psi(a) from the continued fraction of the
//!    three-term recurrence in a (Psi is its minimal solution), normalized by
//!    the Wronskian with Phi; suited to large |a| at moderate z;
//! 4. Taylor-series continuation of the Kummer equation inward from a radius
//!    where (1) is accurate.

use num_complex::Complex64 as C;

use super::gamma::{gamma, ln_gamma, rgamma};
use super::kummer::{kummer_phi, kummer_phi_with_derivative};
use super::Accuracy;
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const ASYMPTOTIC_MIN_Z: f64 = 10.0;

/// Tricomi's function Psi(a, c; z).
pub fn tricomi_psi(a: C, c: C, z: C, acc: &Accuracy) -> Result<C> {
    tricomi_psi_with_derivative(a, c, z, acc).map(|(v, _)| v)
}

/// Psi(a, c; z) and dPsi/dz = -a Psi(a + 1, c + 1; z).
pub fn tricomi_psi_with_derivative(a: C, c: C, z: C, acc: &Accuracy) -> Result<(C, C)> {
    if z == C::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("Tricomi Psi is singular at z = 0".into()));
    }
    if z.norm() >= ASYMPTOTIC_MIN_Z {
        if let Some(r) = asymptotic_pair(a, c, z, acc.rel_tol) {
            return Ok(r);
        }
    }
    if (c - c.re.round()).norm() > 1e-8 {
        if let Some(r) = connection_pair(a, c, z, acc) {
            return Ok(r);
        }
    }
    if let Some(r) = recurrence_pair(a, c, z, acc) {
        return Ok(r);
    }
    continuation(a, c, z, acc)
}

/// Psi and its derivative without the Kummer connection formula; used by the
/// Kummer evaluator itself as a fallback.
pub(crate) fn tricomi_without_connection(a: C, c: C, z: C, acc: &Accuracy) -> Result<(C, C)> {
    if z.norm() >= ASYMPTOTIC_MIN_Z {
        if let Some(r) = asymptotic_pair(a, c, z, acc.rel_tol) {
            return Ok(r);
        }
    }
    continuation(a, c, z, acc)
}

fn asymptotic_series(a: C, b: C, z: C) -> (C, f64) {
    // sum_k (a)_k (b)_k / (k! (-z)^k)
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        let kf = k as f64;
        let next = -term * (a + kf) * (b + kf) / ((kf + 1.0) * z);
        let tn = next.norm();
        if tn == 0.0 {
            return (sum, 0.0);
        }
        if tn > term.norm() && k > 0 {
            return (sum, term.norm());
        }
        sum += next;
        term = next;
        if tn <= 0.25 * EPS * sum.norm() {
            return (sum, tn);
        }
    }
    (sum, term.norm())
}

/// Bound on the recessive e^z z^{a-c} contribution relative to z^-a, which the
/// series omits; it matters once Re z < 0.
fn stokes_ratio(a: C, c: C, lz: C, z: C) -> f64 {
    let r = rgamma(a).norm() * rgamma(a - c + 1.0).norm();
    if r == 0.0 {
        return 0.0;
    }
    let ln = (z + (2.0 * a - c) * lz).re + (2.0 * std::f64::consts::PI * r).ln();
    ln.exp()
}

fn asymptotic_pair(a: C, c: C, z: C, tol: f64) -> Option<(C, C)> {
    let b = a - c + 1.0;
    let lz = z.ln();
    if z.re < 0.0 && stokes_ratio(a, c, lz, z) > tol {
        return None;
    }
    let pre = (-a * lz).exp();
    let (s, e) = asymptotic_series(a, b, z);
    if e > tol * s.norm() {
        return None;
    }
    if a == C::new(0.0, 0.0) {
        return Some((pre * s, a));
    }
    let (sd, ed) = asymptotic_series(a + 1.0, b, z);
    if ed > tol * sd.norm() {
        return None;
    }
    Some((pre * s, -a * pre / z * sd))
}

fn connection_value(a: C, c: C, z: C, acc: &Accuracy) -> Option<(C, f64)> {
    let fine = Accuracy { rel_tol: (1e-3 * acc.rel_tol).max(5e-16), ..*acc };
    let g1 = gamma(1.0 - c).ok()?;
    let g2 = gamma(c - 1.0).ok()?;
    let t1 = g1 * rgamma(a - c + 1.0) * kummer_phi(a, c, z, &fine).ok()?;
    let t2 = g2 * rgamma(a) * (z.ln() * (1.0 - c)).exp() * kummer_phi(a - c + 1.0, 2.0 - c, z, &fine).ok()?;
    let v = t1 + t2;
    let err = (t1.norm() + t2.norm()) * (fine.rel_tol + 16.0 * EPS);
    Some((v, err))
}

fn connection_pair(a: C, c: C, z: C, acc: &Accuracy) -> Option<(C, C)> {
    let (v, e) = connection_value(a, c, z, acc)?;
    if e > acc.rel_tol * v.norm() {
        return None;
    }
    if a == C::new(0.0, 0.0) {
        return Some((v, a));
    }
    let (w, ew) = connection_value(a + 1.0, c + 1.0, z, acc)?;
    if ew > acc.rel_tol * w.norm() {
        return None;
    }
    Some((v, -a * w))
}

/// Psi(a + 1, c; z)/Psi(a, c; z) by backward evaluation of the continued
/// fraction of U(a-1) + (c - 2a - z) U(a) + a(a - c + 1) U(a + 1) = 0.
fn recurrence_ratio(a: C, c: C, z: C, depth: usize) -> Option<C> {
    let mut r = C::new(0.0, 0.0);
    for k in (1..=depth).rev() {
        let ak = a + k as f64;
        let den = c - 2.0 * ak - z + ak * (ak - c + 1.0) * r;
        if den.norm() == 0.0 {
            return None;
        }
        r = -1.0 / den;
    }
    Some(r)
}

fn recurrence_pair(a: C, c: C, z: C, acc: &Accuracy) -> Option<(C, C)> {
    if z.re < 0.0 && z.im == 0.0 {
        return None;
    }
    let mut depth = 64;
    let mut prev = recurrence_ratio(a, c, z, depth)?;
    let ratio = loop {
        depth *= 2;
        if depth > 1 << 16 {
            return None;
        }
        let next = recurrence_ratio(a, c, z, depth)?;
        if (next - prev).norm() <= 0.1 * acc.rel_tol * next.norm() {
            break next;
        }
        prev = next;
    };
    // z Psi' = -a Psi + a (a - c + 1) Psi(a + 1)
    let log_deriv = (-a + a * (a - c + 1.0) * ratio) / z;
    let fine = Accuracy { rel_tol: (1e-3 * acc.rel_tol).max(5e-16), ..*acc };
    let (phi, dphi) = kummer_phi_with_derivative(a, c, z, &fine).ok()?;
    // Phi Psi' - Phi' Psi = -Gamma(c)/Gamma(a) z^-c e^z
    let den = phi * log_deriv - dphi;
    if den.norm() <= 1e-4 * (phi * log_deriv).norm().max(dphi.norm()) {
        return None;
    }
    let log_w = ln_gamma(c).ok()? - ln_gamma(a).ok()? - c * z.ln() + z;
    let v = -log_w.exp() / den;
    if !(v.re.is_finite() && v.im.is_finite()) || v.norm() == 0.0 {
        return None;
    }
    Some((v, v * log_deriv))
}

/// One Taylor step of z w'' + (c - z) w' - a w = 0 from z0 to z0 + h.
fn taylor_step(a: C, c: C, z0: C, w: C, dw: C, h: C) -> Result<(C, C)> {
    let mut c0 = w;
    let mut c1 = dw;
    let mut value = c0 + c1 * h;
    let mut deriv = c1;
    let mut hp = h; // h^(k+1)
    let mut small = 0;
    for k in 0..600 {
        let kf = k as f64;
        let c2 = ((a + kf) * c0 - (kf + 1.0) * (kf + c - z0) * c1) / (z0 * (kf + 2.0) * (kf + 1.0));
        let dv = c2 * hp * h;
        let dd = c2 * (kf + 2.0) * hp;
        value += dv;
        deriv += dd;
        if dv.norm() <= 1e-18 * value.norm() && dd.norm() * h.norm() <= 1e-18 * (value.norm() + deriv.norm() * h.norm()) {
            small += 1;
            if small >= 3 {
                return Ok((value, deriv));
            }
        } else {
            small = 0;
        }
        hp *= h;
        c0 = c1;
        c1 = c2;
    }
    Err(Error::NoConvergence { routine: "tricomi_psi", detail: format!("Taylor step at z0={z0}, h={h}") })
}

/// Integrates the Kummer equation along the straight segment `from -> to`.
fn walk(a: C, c: C, from: C, to: C, mut w: C, mut dw: C) -> Result<(C, C)> {
    let mut p = from;
    loop {
        let rest = to - p;
        let len = rest.norm();
        if len == 0.0 {
            return Ok((w, dw));
        }
        let step = (p.norm() / 3.0).min(2.0);
        let h = if len <= step { rest } else { rest * (step / len) };
        let (nw, ndw) = taylor_step(a, c, p, w, dw, h)?;
        w = nw;
        dw = ndw;
        p = if len <= step { to } else { p + h };
    }
}

/// Starts from the asymptotic series far out and integrates inward. The radial
/// leg runs along arg z when Re z >= 0 and along the imaginary axis otherwise,
/// followed by an arc at |z|; on both paths the e^z solution does not grow
/// relative to Psi.
fn continuation(a: C, c: C, z: C, acc: &Accuracy) -> Result<(C, C)> {
    let r = z.norm();
    let dir = if z.re >= 0.0 {
        z / r
    } else if z.im < 0.0 {
        C::new(0.0, -1.0)
    } else {
        C::new(0.0, 1.0)
    };
    let mut radius = (2.0 * r).max(2.0 * ASYMPTOTIC_MIN_Z);
    let mut start = None;
    for _ in 0..12 {
        if let Some(p) = asymptotic_pair(a, c, dir * radius, 0.1 * acc.rel_tol) {
            start = Some(p);
            break;
        }
        radius *= 2.0;
    }
    let (w, dw) = start.ok_or_else(|| Error::NoConvergence {
        routine: "tricomi_psi",
        detail: format!("a={a} c={c} z={z}: no starting radius for continuation"),
    })?;
    let (mut w, mut dw) = walk(a, c, dir * radius, dir * r, w, dw)?;
    if z.re < 0.0 {
        let (t0, t1) = (dir.arg(), if z.im == 0.0 { std::f64::consts::PI } else { z.arg() });
        let n = ((t1 - t0).abs() * r / 2.0).max((t1 - t0).abs() * 3.0).ceil() as usize;
        let mut p = dir * r;
        for k in 1..=n {
            let q = if k == n { z } else { C::from_polar(r, t0 + (t1 - t0) * k as f64 / n as f64) };
            (w, dw) = walk(a, c, p, q, w, dw)?;
            p = q;
        }
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Overflow { routine: "tricomi_psi", modulus: r });
    }
    Ok((w, dw))
}
