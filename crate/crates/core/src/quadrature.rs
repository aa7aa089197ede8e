//! Adaptive 21-point Gauss-Kronrod quadrature on finite intervals, scalar or
//! vector-valued integrands.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Stopping rule for [`integrate`] and [`integrate_vec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Vec<f64>,
    err: f64,
}

fn gk21(f: &mut dyn FnMut(f64, &mut [f64]), dim: usize, a: f64, b: f64, buf: &mut [f64]) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kron = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    let mut absk = vec![0.0; dim];
    let mut fvals = vec![0.0; dim * 21];

    f(center, buf);
    for d in 0..dim {
        kron[d] = WGK[10] * buf[d];
        absk[d] = WGK[10] * buf[d].abs();
        fvals[d] = buf[d];
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        f(center - dx, buf);
        let lo_off = dim * (1 + 2 * j);
        fvals[lo_off..lo_off + dim].copy_from_slice(&buf[..dim]);
        f(center + dx, &mut fvals[lo_off + dim..lo_off + 2 * dim]);
        for d in 0..dim {
            let (f1, f2) = (fvals[lo_off + d], fvals[lo_off + dim + d]);
            kron[d] += WGK[j] * (f1 + f2);
            absk[d] += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                gauss[d] += WG[j / 2] * (f1 + f2);
            }
        }
    }

    let mut err = 0.0f64;
    let mut value = vec![0.0; dim];
    for d in 0..dim {
        let mean = 0.5 * kron[d];
        let mut asc = WGK[10] * (fvals[d] - mean).abs();
        for j in 0..10 {
            let off = dim * (1 + 2 * j);
            asc += WGK[j] * ((fvals[off + d] - mean).abs() + (fvals[off + dim + d] - mean).abs());
        }
        let asc = asc * half.abs();
        let mut e = ((kron[d] - gauss[d]) * half).abs();
        if asc != 0.0 && e != 0.0 {
            e = asc * (200.0 * e / asc).powf(1.5).min(1.0);
        }
        let resabs = absk[d] * half.abs();
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            e = e.max(50.0 * f64::EPSILON * resabs);
        }
        err = err.max(e);
        value[d] = kron[d] * half;
    }
    Panel { a, b, value, err }
}

/// Integrates a vector-valued function over `[a, b]`.
///
/// `f(x, out)` writes the `dim` components at `x`. Returns the component
/// integrals and the largest per-component error estimate.
pub fn integrate_vec(
    mut f: impl FnMut(f64, &mut [f64]),
    dim: usize,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<(Vec<f64>, f64)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::QuadratureFailure(format!("non-finite interval [{a}, {b}]")));
    }
    let mut buf = vec![0.0; dim];
    let mut panels = vec![gk21(&mut f, dim, a, b, &mut buf)];
    loop {
        let mut total = vec![0.0; dim];
        let mut err = 0.0;
        for p in &panels {
            for d in 0..dim {
                total[d] += p.value[d];
            }
            err += p.err;
        }
        if total.iter().chain(std::iter::once(&err)).any(|v| !v.is_finite()) {
            return Err(Error::QuadratureFailure("integrand produced a non-finite value".into()));
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if err <= cfg.abs_tol.max(cfg.rel_tol * scale) {
            return Ok((total, err));
        }
        if panels.len() >= cfg.max_intervals {
            return Err(Error::QuadratureFailure(format!(
                "no convergence on [{a}, {b}] after {} panels (error estimate {err:.2e})",
                panels.len()
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, p)| if p.err > be { (i, p.err) } else { (bi, be) });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gk21(&mut f, dim, p.a, mid, &mut buf));
        panels.push(gk21(&mut f, dim, mid, p.b, &mut buf));
    }
}

/// Integrates a scalar function over `[a, b]`; returns the value and error estimate.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    let (v, e) = integrate_vec(|x, out| out[0] = f(x), 1, a, b, cfg)?;
    Ok((v[0], e))
}
