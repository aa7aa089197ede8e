//! Kummer's confluent hypergeometric function Phi(a, c; z) = 1F1(a; c; z).
//!
//! Everything is computed in the scaled form `exp(-z/2) Phi(a, c; z)`, which is
//! symmetric under `(a, z) -> (c - a, -z)`, so the working argument always has
//! Re z >= 0. Method per call: large-|z| asymptotic expansion when its error
//! estimate passes, otherwise the power series in f64 and, if the f64 sum lost
//! too many digits to cancellation, again in double-double arithmetic.

use num_complex::Complex64 as C;

use super::ddouble::CDd;
use super::gamma::{gamma, rgamma, POLE_TOL};
use super::tricomi::tricomi_without_connection;
use super::Accuracy;
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const EPS_DD: f64 = 1e-31;
const ASYMPTOTIC_MIN_Z: f64 = 10.0;
const SERIES_MAX_Z: f64 = 650.0;

/// Kummer's function Phi(a, c; z).
pub fn kummer_phi(a: C, c: C, z: C, acc: &Accuracy) -> Result<C> {
    let v = kummer_scaled(a, c, z, acc)? * (0.5 * z).exp();
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow { routine: "kummer_phi", modulus: z.norm() });
    }
    Ok(v)
}

/// Phi(a, c; z) and dPhi/dz = (a/c) Phi(a + 1, c + 1; z).
pub fn kummer_phi_with_derivative(a: C, c: C, z: C, acc: &Accuracy) -> Result<(C, C)> {
    let v = kummer_phi(a, c, z, acc)?;
    if a == C::new(0.0, 0.0) {
        return Ok((v, a));
    }
    let d = a / c * kummer_phi(a + 1.0, c + 1.0, z, acc)?;
    Ok((v, d))
}

/// `exp(-z/2) Phi(a, c; z)`; finite wherever the product is representable.
pub fn kummer_scaled(a: C, c: C, z: C, acc: &Accuracy) -> Result<C> {
    if (c - c.re.round()).norm() < POLE_TOL && c.re.round() <= 0.0 {
        return Err(Error::InvalidParameter(format!("Kummer Phi with c = {c} (non-positive integer)")));
    }
    if z == C::new(0.0, 0.0) {
        return Ok(C::new(1.0, 0.0));
    }
    // c - a is carried exactly so the transformed parameter loses nothing
    let (ap, zp, flipped) = if z.re < 0.0 { (c - a, -z, true) } else { (a, z, false) };
    let exact_a = if flipped { CDd::diff(c, a) } else { CDd::from_c(a) };

    let mut best: Option<(C, f64)> = None;
    if zp.norm() >= ASYMPTOTIC_MIN_Z {
        if let Some((v, err)) = asymptotic_scaled(ap, c, zp) {
            if err <= acc.rel_tol * v.norm() {
                return Ok(v);
            }
            best = Some((v, err));
        }
    }
    if zp.norm() <= SERIES_MAX_Z {
        let half = (-0.5 * zp).exp();
        let s = series_f64(ap, c, zp, acc.max_terms);
        if s.converged && s.err <= acc.rel_tol * s.sum.norm() {
            return Ok(s.sum * half);
        }
        let d = series_dd(exact_a, c, zp, acc.max_terms);
        if d.converged {
            let v = d.sum * half;
            let err = d.err * half.norm();
            if err <= acc.rel_tol * v.norm() {
                return Ok(v);
            }
            if best.map_or(true, |(_, e)| err < e) {
                best = Some((v, err));
            }
        }
    }
    if let Some((v, err)) = via_tricomi(a, c, z, acc) {
        if err <= acc.rel_tol * v.norm() {
            return Ok(v);
        }
        if best.map_or(true, |(_, e)| err < e) {
            best = Some((v, err));
        }
    }
    match best {
        Some((v, err)) if err <= 10.0 * acc.rel_tol * v.norm() => Ok(v),
        Some((v, err)) => Err(Error::NoConvergence {
            routine: "kummer_phi",
            detail: format!("a={a} c={c} z={z}: best estimate {v} with relative error {:.1e}", err / v.norm()),
        }),
        None => Err(Error::NoConvergence {
            routine: "kummer_phi",
            detail: format!("a={a} c={c} z={z}: no method applicable"),
        }),
    }
}

struct SeriesSum {
    sum: C,
    err: f64,
    converged: bool,
}

fn series_f64(a: C, c: C, z: C, max_terms: usize) -> SeriesSum {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    // rounding in the k-th term grows roughly like k * eps
    let mut weighted = 1.0;
    let mut small = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        term *= (a + kf) * z / ((c + kf) * (kf + 1.0));
        sum += term;
        let t = term.norm();
        weighted += (kf + 2.0) * t;
        if t <= 0.5 * EPS * sum.norm() && (a + kf).norm() * z.norm() < (c + kf).norm() * (kf + 1.0) {
            small += 1;
            if small >= 2 || t == 0.0 {
                return SeriesSum { sum, err: 2.0 * EPS * weighted, converged: true };
            }
        } else {
            small = 0;
        }
    }
    SeriesSum { sum, err: f64::INFINITY, converged: false }
}

fn series_dd(a: CDd, c: C, z: C, max_terms: usize) -> SeriesSum {
    let zd = CDd::from_c(z);
    let cd = CDd::from_c(c);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut weighted = 1.0;
    let mut small = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        let num = a.add_f64(kf) * zd;
        let den = cd.add_f64(kf) * CDd::from_c(C::new(kf + 1.0, 0.0));
        term = term * num / den;
        sum = sum + term;
        let t = term.norm();
        weighted += (kf + 2.0) * t;
        let decreasing = num.norm() < den.norm();
        if t <= EPS_DD * sum.norm() && decreasing {
            small += 1;
            if small >= 2 || t == 0.0 {
                let err = 4.0 * EPS_DD * weighted + EPS * sum.norm();
                return SeriesSum { sum: sum.to_c(), err, converged: true };
            }
        } else {
            small = 0;
        }
    }
    SeriesSum { sum: sum.to_c(), err: f64::INFINITY, converged: false }
}

/// Scaled Phi as a combination of two Tricomi functions, for the band of
/// moderate |z| and large |a| where the series cancels and the asymptotic
/// expansion has not yet set in.
fn via_tricomi(a: C, c: C, z: C, acc: &Accuracy) -> Option<(C, f64)> {
    let fine = Accuracy { rel_tol: 0.1 * acc.rel_tol, ..*acc };
    // -z written as exp(+-i pi) z on the principal branch
    let s = if z.im < 0.0 || (z.im == 0.0 && z.re < 0.0) { 1.0 } else { -1.0 };
    let ipi = C::new(0.0, s * std::f64::consts::PI);
    let (u1, _) = tricomi_without_connection(a, c, z, &fine).ok()?;
    let (u2, _) = tricomi_without_connection(c - a, c, -z, &fine).ok()?;
    let gc = gamma(c).ok()?;
    let t1 = gc * rgamma(c - a) * (-ipi * a - 0.5 * z).exp() * u1;
    let t2 = gc * rgamma(a) * (ipi * (c - a) + 0.5 * z).exp() * u2;
    let v = t1 + t2;
    if !v.re.is_finite() || !v.im.is_finite() {
        return None;
    }
    let err = (t1.norm() + t2.norm()) * (fine.rel_tol + 32.0 * EPS);
    Some((v, err))
}

/// Sum of a divergent asymptotic series with term ratio `ratio(k)`, stopped at
/// the smallest term. Returns the sum and the magnitude of the first omitted term.
fn asymptotic_sum(ratio: impl Fn(f64) -> C) -> (C, f64) {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        let next = term * ratio(k as f64);
        let tn = next.norm();
        if tn == 0.0 {
            return (sum + next, 0.0);
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

/// Large-|z| expansion of the scaled Phi for Re z >= 0, with an absolute error estimate.
fn asymptotic_scaled(a: C, c: C, z: C) -> Option<(C, f64)> {
    let gc = gamma(c).ok()?;
    let lz = z.ln();
    let r1 = rgamma(a);
    let r2 = rgamma(c - a);
    let sign = if z.im > 0.0 { 1.0 } else { -1.0 };
    let i_pi_a = C::new(0.0, sign * std::f64::consts::PI) * a;

    let mut val = C::new(0.0, 0.0);
    let mut err = 0.0;
    let mut scale = 0.0;
    if r1 != C::new(0.0, 0.0) {
        let p = gc * r1 * (0.5 * z + (a - c) * lz).exp();
        let (s, e) = asymptotic_sum(|k| (c - a + k) * (1.0 - a + k) / ((k + 1.0) * z));
        val += p * s;
        err += p.norm() * e;
        scale += (p * s).norm();
    }
    if r2 != C::new(0.0, 0.0) {
        let p = gc * r2 * (-0.5 * z - a * lz + i_pi_a).exp();
        let (s, e) = asymptotic_sum(|k| -(a + k) * (a - c + 1.0 + k) / ((k + 1.0) * z));
        val += p * s;
        err += p.norm() * e;
        scale += (p * s).norm();
    }
    if !val.re.is_finite() || !val.im.is_finite() {
        return None;
    }
    // rounding in the exponentials
    let expo = 0.5 * z.norm() + ((a - c).norm() + a.norm()) * lz.norm() + std::f64::consts::PI * a.norm() + 8.0;
    err += EPS * expo * scale;
    Some((val, err))
}
