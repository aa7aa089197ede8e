//! Oscillator–Coulomb correspondence.
//!
//! With x = κ₀u² and ψ_C(x) = x^{1/4} ψ_O(u), the oscillator equation at
//! (W, λ) becomes the Coulomb-like equation at
//!
//! `ℰ = -λ/(4κ₀²)`, `g = -W/(4κ₀)`,
//!
//! so energy and coupling trade places. Under this map α, w and γ̃ agree,
//! K = ϰ²/(2κ₀), z = ρ, C_k(x) = x^{1/4} O_k(u) and Ω_C = 2κ₀^{1/2} Ω_O.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::coulomb::{self, CoulombTheory};
use crate::error::{Error, Result};
use crate::oscillator::{self, OscillatorTheory};
use crate::spectral::{
    continuous_density, discrete_levels, eigen_residual, level_weight, Extension, Normalization, SampledState, Theory,
    DEFAULT_LEVEL_TOL,
};

/// Residual above which a point is classified as non-spectral.
pub const NONSPECTRAL_GAP: f64 = 1e-2;

/// Relative tolerance on the continuum density ratio ρ²_C/ρ²_O = 2κ₀^{1/2}.
pub const DENSITY_RATIO_TOL: f64 = 1e-8;

/// The change of variables for a fixed scale κ₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityMap {
    kappa0: f64,
}

impl DualityMap {
    pub fn new(kappa0: f64) -> Result<Self> {
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa0 must be positive, got {kappa0}")));
        }
        Ok(DualityMap { kappa0 })
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn x_of_u(&self, u: f64) -> f64 {
        self.kappa0 * u * u
    }

    pub fn u_of_x(&self, x: f64) -> f64 {
        (x / self.kappa0).sqrt()
    }

    /// (W, λ) ↦ (ℰ, g).
    pub fn osc_to_coulomb(&self, w: C, lambda: f64) -> (C, C) {
        map_osc_to_coulomb(w, lambda, self.kappa0)
    }

    /// (ℰ, g) ↦ (W, λ).
    pub fn coulomb_to_osc(&self, e: C, g: C) -> (C, C) {
        map_coulomb_to_osc(e, g, self.kappa0)
    }
}

/// (W, λ) ↦ (ℰ, g) = (−λ/(4κ₀²), −W/(4κ₀)); g is real for real W.
pub fn map_osc_to_coulomb(w: C, lambda: f64, kappa0: f64) -> (C, C) {
    (C::new(-lambda / (4.0 * kappa0 * kappa0), 0.0), -w / (4.0 * kappa0))
}

/// (ℰ, g) ↦ (W, λ) = (−4κ₀g, −4κ₀²ℰ).
pub fn map_coulomb_to_osc(e: C, g: C, kappa0: f64) -> (C, C) {
    (-4.0 * kappa0 * g, -4.0 * kappa0 * kappa0 * e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub name: String,
    pub oscillator: C,
    pub coulomb: C,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub energy: C,
    pub lambda: f64,
    pub kappa0: f64,
    pub entries: Vec<IdentityEntry>,
}

/// Evaluates both sides of each parameter and function identity at the
/// oscillator point (W, λ), the extension ζ and the position `u > 0`.
///
/// Residuals are relative to `max(1, |oscillator side|)`. Kernel parameters are
/// skipped at λ = 0, where both sides are elementary.
pub fn check_parameter_identities(
    w: C,
    lambda: f64,
    kappa0: f64,
    ext: Extension,
    u: f64,
    tol: f64,
) -> Result<IdentityReport> {
    if w.im < 0.0 {
        return Err(Error::InvalidParameter(format!("Im W = {} must be non-negative", w.im)));
    }
    if !(u > 0.0) {
        return Err(Error::Grid(format!("u = {u} must be positive")));
    }
    let map = DualityMap::new(kappa0)?;
    let osc = OscillatorTheory::new(lambda, kappa0)?;
    let (e, g) = map.osc_to_coulomb(w, lambda);
    let x = map.x_of_u(u);
    let mut entries = Vec::new();
    let mut push = |name: &str, a: C, b: C| {
        let residual = (a - b).norm() / a.norm().max(1.0);
        entries.push(IdentityEntry { name: name.to_string(), oscillator: a, coulomb: b, residual });
    };
    if lambda != 0.0 {
        let po = oscillator::osc_params(&osc, w)?;
        let pc = coulomb::coul_params_general(g, kappa0, e)?;
        push("alpha", po.alpha, pc.alpha);
        push("w", po.w, pc.w);
        push("K", po.varkappa_sq / (2.0 * kappa0), pc.k);
        push("z", po.rho(u), pc.z(x));
    }
    let gt_o = oscillator::gamma_tilde_osc(&osc, w)?;
    let gt_c = coulomb::gamma_tilde_coul_general(g, kappa0, e)?;
    push("gamma_tilde", gt_o, gt_c);
    let (s, c) = ext.sin_cos();
    let om_o = (c - gt_o * s) / (kappa0 * (s + gt_o * c));
    let om_c = (c - gt_c * s) / (0.5 * kappa0.sqrt() * (s + gt_c * c));
    push("omega", 2.0 * kappa0.sqrt() * om_o, om_c);
    let bo = oscillator::osc_basis(&osc, w, u)?;
    let bc = coulomb::coul_basis_general(g, kappa0, e, x)?;
    let x14 = x.powf(0.25);
    push("basis_1", x14 * bo.f1, bc.f1);
    push("basis_2", x14 * bo.f2, bc.f2);
    if let (Some((o3, _)), Some((c3, _))) = (bo.f3, bc.f3) {
        push("basis_3", x14 * o3, c3);
    }
    if let Some(bad) = entries.iter().find(|en| !(en.residual <= tol)) {
        return Err(Error::IdentityViolation { name: bad.name.clone(), residual: bad.residual, tol });
    }
    Ok(IdentityReport { energy: w, lambda, kappa0, entries })
}

/// A normalized Coulomb state obtained from an oscillator state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportedState {
    pub coulomb: CoulombTheory,
    pub energy: f64,
    pub state: SampledState,
}

/// Carries a normalized oscillator state of the theory λ at extension ζ to the
/// normalized Coulomb state at the image point.
///
/// Since U_C(x) = x^{1/4} U_O(u), the normalized states differ by
/// `(N_C/N_O) x^{1/4}`, with N = Q for levels and N = ρ on the continuum; the
/// Coulomb normalization is computed on the Coulomb side. On the continuum
/// ρ²_C = 2κ₀^{1/2} ρ²_O, so the factor reduces to √(2κ₀u).
pub fn transport_eigenfunction(
    osc_state: &SampledState,
    lambda: f64,
    ext: Extension,
    kappa0: f64,
) -> Result<TransportedState> {
    if let Some(bad) = osc_state.points.iter().find(|&&u| !(u > 0.0 && u.is_finite())) {
        return Err(Error::Grid(format!("node u = {bad} is not strictly positive")));
    }
    let map = DualityMap::new(kappa0)?;
    let (e, g) = map.osc_to_coulomb(C::new(osc_state.energy, 0.0), lambda);
    let theory = CoulombTheory::new(g.re, kappa0)?;
    let ct: Theory = theory.into();
    let n_c = match osc_state.normalization {
        Normalization::Unit if e.re == 0.0 => {
            let zg = coulomb::zeta_g(&theory).filter(|z| z.distance(ext) < 1e-12);
            zg.and_then(|_| coulomb::zero_mode_weight(&theory))
                .ok_or_else(|| Error::NotInSpectrum("image of the level is not the zero-energy atom".into()))?
                .sqrt()
        }
        Normalization::Unit => level_weight(&ct, ext, e.re)?.sqrt(),
        Normalization::EnergyDelta => continuous_density(&ct, ext, e.re)?.sqrt(),
    };
    let ratio = n_c / osc_state.factor;
    let points: Vec<f64> = osc_state.points.iter().map(|&u| map.x_of_u(u)).collect();
    let values = points.iter().zip(&osc_state.values).map(|(&x, &v)| ratio * x.powf(0.25) * v).collect();
    Ok(TransportedState {
        coulomb: theory,
        energy: e.re,
        state: SampledState { energy: e.re, factor: n_c, normalization: osc_state.normalization, points, values },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Discrete,
    Continuum,
    NonSpectral,
    /// Residual between the spectral tolerance and the non-spectral gap.
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    OscToCoulomb,
    CoulombToOsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Level,
    Midpoint,
    Continuum,
}

/// One source point, its image and both classifications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub direction: Direction,
    pub kind: SampleKind,
    pub source_energy: f64,
    pub source_coupling: f64,
    pub image_energy: f64,
    pub image_coupling: f64,
    pub source_class: PointClass,
    pub image_class: PointClass,
    pub source_residual: Option<f64>,
    pub image_residual: Option<f64>,
    /// ρ²_C/ρ²_O on the continuum
    pub density_ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceConfig {
    pub kappa0: f64,
    pub n_max: usize,
    pub e_samples: usize,
    /// Continuum samples are taken on [-e_span, e_span] (λ < 0) or (0, e_span] (λ = 0).
    pub e_span: f64,
    pub tol: f64,
    /// Relative perturbation applied to the mapped coupling (negative control).
    pub perturb: f64,
}

impl Default for CorrespondenceConfig {
    fn default() -> Self {
        CorrespondenceConfig { kappa0: 1.0, n_max: 10, e_samples: 50, e_span: 10.0, tol: 1e-9, perturb: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub lambda: f64,
    pub extension: Extension,
    pub config: CorrespondenceConfig,
    pub entries: Vec<CorrespondenceEntry>,
    pub passed: bool,
}

impl CorrespondenceReport {
    /// The failing entry with the largest residual, if any.
    pub fn worst(&self) -> Option<&CorrespondenceEntry> {
        let key = |e: &CorrespondenceEntry| {
            e.image_residual.unwrap_or(0.0).max(e.source_residual.unwrap_or(0.0)).max(
                e.density_ratio.map(|r| (r - 2.0 * self.config.kappa0.sqrt()).abs()).unwrap_or(0.0),
            )
        };
        self.entries
            .iter()
            .filter(|e| !e.pass)
            .max_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal))
    }

    /// [`Error::CorrespondenceViolation`] carrying the worst entry when the report fails.
    pub fn check(&self) -> Result<()> {
        match self.worst() {
            None => Ok(()),
            Some(e) => Err(Error::CorrespondenceViolation {
                point: format!(
                    "{:?} {:?} (E={}, coupling={}) -> (E={}, coupling={}) classes {:?}/{:?}",
                    e.direction,
                    e.kind,
                    e.source_energy,
                    e.source_coupling,
                    e.image_energy,
                    e.image_coupling,
                    e.source_class,
                    e.image_class
                ),
                residual: e.image_residual.or(e.source_residual).unwrap_or(f64::NAN),
                tol: self.config.tol,
            }),
        }
    }
}

fn classify_residual(res: f64, tol: f64) -> PointClass {
    if res <= tol {
        PointClass::Discrete
    } else if res >= NONSPECTRAL_GAP {
        PointClass::NonSpectral
    } else {
        PointClass::Ambiguous
    }
}

/// Classification of the real point (E, λ) of the oscillator plane by the regime table.
fn classify_osc(lambda: f64, kappa0: f64, ext: Extension, e: f64, tol: f64) -> Result<(PointClass, Option<f64>)> {
    if lambda < 0.0 || (lambda == 0.0 && e >= 0.0) {
        return Ok((PointClass::Continuum, None));
    }
    let t: Theory = OscillatorTheory::new(lambda, kappa0)?.into();
    let r = eigen_residual(&t, ext, e)?;
    Ok((classify_residual(r, tol), Some(r)))
}

/// Classification of the real point (E, g) of the Coulomb plane.
fn classify_coulomb(g: f64, kappa0: f64, ext: Extension, e: f64, tol: f64) -> Result<(PointClass, Option<f64>)> {
    let t: Theory = CoulombTheory::new(g, kappa0)?.into();
    if e > 0.0 || (e == 0.0 && g <= 0.0) {
        return Ok((PointClass::Continuum, None));
    }
    let r = eigen_residual(&t, ext, e)?;
    let class = classify_residual(r, tol);
    // at E = 0 only the atom is discrete; everything else is the continuum edge
    if e == 0.0 && class != PointClass::Discrete {
        return Ok((PointClass::Continuum, Some(r)));
    }
    Ok((class, Some(r)))
}

/// Couplings g_0 > g_1 > ... at which the Coulomb theory has a level at the
/// fixed energy `e < 0`, solved on the Coulomb side.
fn coulomb_couplings_at(e: f64, kappa0: f64, ext: Extension, count: usize, tol: f64) -> Result<Vec<f64>> {
    let k = (-e).sqrt();
    let pole = |n: usize| -2.0 * k * (n as f64 + 0.75);
    if ext.is_dirichlet() {
        return Ok((0..count).map(pole).collect());
    }
    let tan = ext.tan().expect("not dirichlet");
    let f = |g: f64| -> Result<f64> {
        let t = CoulombTheory::new(g, kappa0)?;
        Ok(coulomb::gamma_tilde_coul(&t, C::new(e, 0.0))?.re + tan)
    };
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        // γ̃ increases with g between consecutive poles
        let a0 = pole(n);
        let b0 = if n == 0 {
            let mut step = 2.0 * k;
            let mut b = a0 + step;
            let mut found = false;
            for _ in 0..80 {
                if f(b)? > 0.0 {
                    found = true;
                    break;
                }
                step *= 2.0;
                b = a0 + step;
            }
            if !found {
                return Err(Error::BracketFailure { lo: a0, hi: f64::INFINITY, detail: "coupling bracket".into() });
            }
            b
        } else {
            pole(n - 1)
        };
        let (mut a, mut b) = (a0, b0);
        let width = b - a;
        while b - a > 1e-14 * width {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            match f(m) {
                Ok(v) if v > 0.0 => b = m,
                Ok(_) => a = m,
                Err(Error::SpectralPole { .. }) => a = m,
                Err(err) => return Err(err),
            }
        }
        let g = 0.5 * (a + b);
        let r = f(g)?.abs();
        if r > tol * (1.0 + tan.abs()) {
            return Err(Error::BracketFailure { lo: a0, hi: b0, detail: format!("coupling residual {r:.3e}") });
        }
        out.push(g);
    }
    Ok(out)
}

fn continuum_ratio(lambda: f64, g: f64, kappa0: f64, ext: Extension, e_o: f64, e_c: f64) -> Result<f64> {
    let to: Theory = OscillatorTheory::new(lambda, kappa0)?.into();
    let tc: Theory = CoulombTheory::new(g, kappa0)?.into();
    let d_o = continuous_density(&to, ext, e_o)?;
    let d_c = continuous_density(&tc, ext, e_c)?;
    Ok(d_c / d_o)
}

fn continuum_entry_pass(ratio: f64, kappa0: f64) -> bool {
    let target = 2.0 * kappa0.sqrt();
    ratio > 0.0 && ((ratio - target) / target).abs() <= DENSITY_RATIO_TOL
}

/// Checks that discrete, continuum and non-spectral points of the oscillator
/// plane along the line λ map onto points of the same class in the Coulomb
/// plane, and the reverse along the image line ℰ = −λ/(4κ₀²).
///
/// Returns the full report; use [`CorrespondenceReport::check`] to turn a
/// failing report into an error.
pub fn verify_spectrum_correspondence(
    lambda: f64,
    ext: Extension,
    cfg: &CorrespondenceConfig,
) -> Result<CorrespondenceReport> {
    let k0 = cfg.kappa0;
    let map = DualityMap::new(k0)?;
    let tol = cfg.tol;
    let fwd = |w: f64| {
        let (e, g) = map.osc_to_coulomb(C::new(w, 0.0), lambda);
        (e.re, g.re * (1.0 + cfg.perturb))
    };
    let rev = |e: f64, g: f64| {
        let (w, l) = map.coulomb_to_osc(C::new(e, 0.0), C::new(g, 0.0));
        (w.re, l.re * (1.0 + cfg.perturb))
    };
    let mut entries = Vec::new();
    let osc: Theory = OscillatorTheory::new(lambda, k0)?.into();
    let e_c = -lambda / (4.0 * k0 * k0);

    // discrete levels and the midpoints between them
    let levels = match discrete_levels(&osc, ext, cfg.n_max, tol.min(DEFAULT_LEVEL_TOL)) {
        Ok(v) => v,
        Err(Error::NotDiscreteRegime) => Vec::new(),
        Err(e) => return Err(e),
    };
    let mut osc_points: Vec<(SampleKind, f64)> = levels.iter().map(|l| (SampleKind::Level, l.energy)).collect();
    for pair in levels.windows(2) {
        osc_points.push((SampleKind::Midpoint, 0.5 * (pair[0].energy + pair[1].energy)));
    }
    for (kind, w) in osc_points {
        let (sc, sr) = classify_osc(lambda, k0, ext, w, tol)?;
        let (ie, ig) = fwd(w);
        let (ic, ir) = classify_coulomb(ig, k0, ext, ie, tol)?;
        let expected = if kind == SampleKind::Level { PointClass::Discrete } else { PointClass::NonSpectral };
        entries.push(CorrespondenceEntry {
            direction: Direction::OscToCoulomb,
            kind,
            source_energy: w,
            source_coupling: lambda,
            image_energy: ie,
            image_coupling: ig,
            source_class: sc,
            image_class: ic,
            source_residual: sr,
            image_residual: ir,
            density_ratio: None,
            pass: sc == expected && ic == expected,
        });
    }

    // continuum samples
    if lambda <= 0.0 && cfg.e_samples > 0 {
        let n = cfg.e_samples;
        let energies: Vec<f64> = if lambda < 0.0 {
            (0..n).map(|i| -cfg.e_span + 2.0 * cfg.e_span * (i as f64 + 0.5) / n as f64).collect()
        } else {
            (0..n).map(|i| cfg.e_span * (i as f64 + 1.0) / n as f64).collect()
        };
        for w in energies {
            let (sc, _) = classify_osc(lambda, k0, ext, w, tol)?;
            let (ie, ig) = fwd(w);
            let (ic, _) = classify_coulomb(ig, k0, ext, ie, tol)?;
            let ratio = continuum_ratio(lambda, ig, k0, ext, w, ie)?;
            entries.push(CorrespondenceEntry {
                direction: Direction::OscToCoulomb,
                kind: SampleKind::Continuum,
                source_energy: w,
                source_coupling: lambda,
                image_energy: ie,
                image_coupling: ig,
                source_class: sc,
                image_class: ic,
                source_residual: None,
                image_residual: None,
                density_ratio: Some(ratio),
                pass: sc == PointClass::Continuum && ic == PointClass::Continuum && continuum_entry_pass(ratio, k0),
            });
            let (bw, bl) = rev(ie, -w / (4.0 * k0));
            let (bc, _) = classify_osc(bl, k0, ext, bw, tol)?;
            let back_ratio = continuum_ratio(bl, -w / (4.0 * k0), k0, ext, bw, ie)?;
            entries.push(CorrespondenceEntry {
                direction: Direction::CoulombToOsc,
                kind: SampleKind::Continuum,
                source_energy: ie,
                source_coupling: -w / (4.0 * k0),
                image_energy: bw,
                image_coupling: bl,
                source_class: ic,
                image_class: bc,
                source_residual: None,
                image_residual: None,
                density_ratio: Some(back_ratio),
                pass: ic == PointClass::Continuum && bc == PointClass::Continuum && continuum_entry_pass(back_ratio, k0),
            });
        }
    }

    // reverse: Coulomb spectral couplings on the line ℰ = e_c
    let coulomb_points: Vec<(SampleKind, f64)> = if lambda > 0.0 {
        let gs = coulomb_couplings_at(e_c, k0, ext, cfg.n_max + 1, tol)?;
        let mut pts: Vec<(SampleKind, f64)> = gs.iter().map(|&g| (SampleKind::Level, g)).collect();
        for pair in gs.windows(2) {
            pts.push((SampleKind::Midpoint, 0.5 * (pair[0] + pair[1])));
        }
        pts
    } else if lambda == 0.0 {
        // the E = 0 atom at g with 2√(g/κ₀) = −tan ζ
        match ext.tan() {
            Some(t) if t < 0.0 => vec![(SampleKind::Level, k0 * t * t / 4.0)],
            _ => Vec::new(),
        }
    } else {
        Vec::new()
    };
    for (kind, g) in coulomb_points {
        let (sc, sr) = classify_coulomb(g, k0, ext, e_c, tol)?;
        let (iw, il) = rev(e_c, g);
        let (ic, ir) = classify_osc(il, k0, ext, iw, tol)?;
        let expected = if kind == SampleKind::Level { PointClass::Discrete } else { PointClass::NonSpectral };
        entries.push(CorrespondenceEntry {
            direction: Direction::CoulombToOsc,
            kind,
            source_energy: e_c,
            source_coupling: g,
            image_energy: iw,
            image_coupling: il,
            source_class: sc,
            image_class: ic,
            source_residual: sr,
            image_residual: ir,
            density_ratio: None,
            pass: sc == expected && ic == expected,
        });
    }

    let passed = entries.iter().all(|e| e.pass);
    Ok(CorrespondenceReport { lambda, extension: ext, config: *cfg, entries, passed })
}
