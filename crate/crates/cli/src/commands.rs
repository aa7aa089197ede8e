use std::collections::BTreeMap;

use dualspec_core::coulomb;
use dualspec_core::duality::{verify_spectrum_correspondence, CorrespondenceConfig, CorrespondenceEntry};
use dualspec_core::spectral::{
    assemble_full_line, continuous_density, continuous_support, discrete_levels, eigenfunction,
    full_line_eigenfunction, green_function, Extension, Level, Normalization, Parity, StateSelector,
};
use dualspec_core::{Complex64 as C, Error, Theory};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, Extensions, RunConfig};
use crate::output::*;
use crate::CliError;

/// A finished record of any command, ready to be written.
pub enum Output {
    Spectrum(Record<SpectrumRow>),
    Density(Record<DensityRow>),
    Eigenfunction(Record<EigenfunctionRow>),
    Green(Record<GreenRow>),
    Duality(Record<CorrespondenceEntry>),
}

impl Output {
    pub fn write(&self, format: crate::config::Format, w: impl std::io::Write) -> std::io::Result<()> {
        use crate::config::Format::*;
        match (self, format) {
            (Output::Spectrum(r), Csv) => r.write_csv(w),
            (Output::Spectrum(r), Json) => r.write_json(w),
            (Output::Density(r), Csv) => r.write_csv(w),
            (Output::Density(r), Json) => r.write_json(w),
            (Output::Eigenfunction(r), Csv) => r.write_csv(w),
            (Output::Eigenfunction(r), Json) => r.write_json(w),
            (Output::Green(r), Csv) => r.write_csv(w),
            (Output::Green(r), Json) => r.write_json(w),
            (Output::Duality(r), Csv) => r.write_csv(w),
            (Output::Duality(r), Json) => r.write_json(w),
        }
    }
}

fn header<R: Serialize>(cfg: &RunConfig, sample: &R, meta: BTreeMap<String, Value>) -> Header {
    let (zeta, zeta_s, zeta_a) = match cfg.extensions {
        Extensions::Half(e) => (Some(e.zeta()), None, None),
        Extensions::Full(s, a) => (None, Some(s.zeta()), Some(a.zeta())),
    };
    Header {
        tool: "dualspec".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.command.name().into(),
        theory: cfg.theory_name.into(),
        coupling: cfg.coupling,
        kappa0: cfg.kappa0,
        zeta,
        zeta_s,
        zeta_a,
        tol: cfg.tol,
        columns: columns(sample),
        meta,
    }
}

fn levels_or_empty(theory: &Theory, ext: Extension, n_max: usize, tol: f64) -> Result<Vec<Level>, Error> {
    match discrete_levels(theory, ext, n_max, tol) {
        Err(Error::NotDiscreteRegime) => Ok(Vec::new()),
        other => other,
    }
}

fn density_rows(theory: &Theory, ext: Extension, grid: &[f64], parity: Option<&str>) -> Result<Vec<SpectrumRow>, Error> {
    let support = continuous_support(theory);
    let inside: Vec<f64> = grid.iter().copied().filter(|&e| support.contains(e)).collect();
    let vals: Vec<f64> = inside.par_iter().map(|&e| continuous_density(theory, ext, e)).collect::<Result<_, _>>()?;
    Ok(inside
        .into_iter()
        .zip(vals)
        .map(|(energy, d)| SpectrumRow {
            kind: "density".into(),
            n: None,
            energy,
            weight: None,
            density: Some(d),
            parity: parity.map(String::from),
            multiplicity: None,
        })
        .collect())
}

fn spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let t = &cfg.theory;
    let mut rows = Vec::new();
    let mut meta = BTreeMap::new();
    meta.insert("support".into(), json!(continuous_support(t)));
    match cfg.extensions {
        Extensions::Half(ext) => {
            for l in levels_or_empty(t, ext, cfg.n_max, cfg.tol)? {
                rows.push(SpectrumRow {
                    kind: "level".into(),
                    n: Some(l.index),
                    energy: l.energy,
                    weight: Some(l.weight),
                    density: None,
                    parity: None,
                    multiplicity: Some(1),
                });
            }
            rows.extend(density_rows(t, ext, &cfg.e_grid, None)?);
            if let Theory::Coulomb(ct) = t {
                let atom = coulomb::zeta_g(ct).filter(|z| z.distance(ext) < 1e-12).and_then(|_| coulomb::zero_mode_weight(ct));
                if let Some(w) = atom {
                    rows.push(SpectrumRow {
                        kind: "atom".into(),
                        n: None,
                        energy: 0.0,
                        weight: Some(w),
                        density: None,
                        parity: None,
                        multiplicity: Some(1),
                    });
                }
            }
        }
        Extensions::Full(s, a) => {
            let fl = assemble_full_line(t, s, a, cfg.n_max)?;
            meta.insert("continuum_multiplicity".into(), json!(fl.continuum_multiplicity));
            for (n, lv) in fl.levels.iter().enumerate() {
                for (name, l) in [("even", lv.even), ("odd", lv.odd)] {
                    if let Some(l) = l {
                        rows.push(SpectrumRow {
                            kind: "level".into(),
                            n: Some(n),
                            energy: l.energy,
                            weight: Some(l.weight),
                            density: None,
                            parity: Some(name.into()),
                            multiplicity: Some(lv.multiplicity),
                        });
                    }
                }
            }
            rows.extend(density_rows(t, s, &cfg.e_grid, Some("even"))?);
            rows.extend(density_rows(t, a, &cfg.e_grid, Some("odd"))?);
        }
    }
    let sample = SpectrumRow {
        kind: String::new(),
        n: None,
        energy: 0.0,
        weight: None,
        density: None,
        parity: None,
        multiplicity: None,
    };
    Ok(Output::Spectrum(Record { header: header(cfg, &sample, meta), rows }))
}

fn density(cfg: &RunConfig) -> Result<Output, CliError> {
    let ext = cfg.extension()?;
    let vals: Vec<f64> =
        cfg.e_grid.par_iter().map(|&e| continuous_density(&cfg.theory, ext, e)).collect::<Result<_, _>>()?;
    let rows: Vec<DensityRow> = cfg.e_grid.iter().zip(vals).map(|(&energy, density)| DensityRow { energy, density }).collect();
    let mut meta = BTreeMap::new();
    meta.insert("support".into(), json!(continuous_support(&cfg.theory)));
    let sample = DensityRow { energy: 0.0, density: 0.0 };
    Ok(Output::Density(Record { header: header(cfg, &sample, meta), rows }))
}

fn eigen(cfg: &RunConfig) -> Result<Output, CliError> {
    let chunk = (cfg.u_grid.len() / rayon::current_num_threads().max(1)).max(16);
    let parts: Vec<_> = cfg
        .u_grid
        .par_chunks(chunk)
        .map(|pts| match (cfg.extensions, cfg.parity) {
            (Extensions::Full(s, a), Some(p)) => {
                let ext = if p == Parity::Even { s } else { a };
                full_line_eigenfunction(&cfg.theory, ext, p, cfg.selector, pts)
            }
            (Extensions::Half(ext), _) => eigenfunction(&cfg.theory, ext, cfg.selector, pts),
            (Extensions::Full(..), None) => unreachable!("validated in RunConfig"),
        })
        .collect::<Result<_, _>>()?;
    let first = parts.first();
    let mut meta = BTreeMap::new();
    meta.insert("energy".into(), json!(first.map(|s| s.energy)));
    meta.insert("factor".into(), json!(first.map(|s| s.factor)));
    meta.insert(
        "normalization".into(),
        json!(first.map(|s| s.normalization).unwrap_or(match cfg.selector {
            StateSelector::Continuum(_) => Normalization::EnergyDelta,
            _ => Normalization::Unit,
        })),
    );
    meta.insert("state".into(), json!(cfg.selector));
    if let Some(p) = cfg.parity {
        meta.insert("parity".into(), json!(p));
    }
    let rows = parts
        .iter()
        .flat_map(|s| s.points.iter().zip(&s.values).map(|(&position, &value)| EigenfunctionRow { position, value }))
        .collect();
    let sample = EigenfunctionRow { position: 0.0, value: 0.0 };
    Ok(Output::Eigenfunction(Record { header: header(cfg, &sample, meta), rows }))
}

fn green(cfg: &RunConfig) -> Result<Output, CliError> {
    let ext = cfg.extension()?;
    let pairs: Vec<(f64, f64)> = cfg.e_grid.iter().flat_map(|&e| cfg.u_grid.iter().map(move |&p| (e, p))).collect();
    let rows: Vec<GreenRow> = pairs
        .par_iter()
        .map(|&(e, p1)| {
            let w = C::new(e, cfg.im_w);
            green_function(&cfg.theory, ext, p1, cfg.p2, w).map(|g| GreenRow {
                re_w: e,
                im_w: cfg.im_w,
                p1,
                p2: cfg.p2,
                re_g: g.value.re,
                im_g: g.value.im,
            })
        })
        .collect::<Result<_, _>>()?;
    let sample = GreenRow { re_w: 0.0, im_w: 0.0, p1: 0.0, p2: 0.0, re_g: 0.0, im_g: 0.0 };
    Ok(Output::Green(Record { header: header(cfg, &sample, BTreeMap::new()), rows }))
}

/// The report is returned even when it fails; the caller maps that to exit 4.
fn duality(cfg: &RunConfig) -> Result<(Output, Result<(), Error>), CliError> {
    let ext = cfg.extension()?;
    let cc = CorrespondenceConfig {
        kappa0: cfg.kappa0,
        n_max: cfg.n_max,
        e_samples: cfg.e_grid.len(),
        e_span: cfg.e_max,
        tol: cfg.tol,
        perturb: cfg.perturb,
    };
    let rep = verify_spectrum_correspondence(cfg.coupling, ext, &cc)?;
    let mut meta = BTreeMap::new();
    meta.insert("passed".into(), json!(rep.passed));
    meta.insert("perturb".into(), json!(cfg.perturb));
    meta.insert("continuum_samples".into(), json!(cc.e_samples));
    meta.insert("e_span".into(), json!(cc.e_span));
    let verdict = rep.check();
    let columns = [
        "direction",
        "kind",
        "source_energy",
        "source_coupling",
        "image_energy",
        "image_coupling",
        "source_class",
        "image_class",
        "source_residual",
        "image_residual",
        "density_ratio",
        "pass",
    ];
    let mut h = header(cfg, &(), meta);
    h.columns = columns.iter().map(|s| s.to_string()).collect();
    Ok((Output::Duality(Record { header: h, rows: rep.entries }), verdict))
}

/// Runs the configured command. The second element carries a failed
/// correspondence check whose report should still be written.
pub fn run(cfg: &RunConfig) -> Result<(Output, Result<(), Error>), CliError> {
    match cfg.command {
        Command::Spectrum => spectrum(cfg).map(|o| (o, Ok(()))),
        Command::Density => density(cfg).map(|o| (o, Ok(()))),
        Command::Eigenfunction => eigen(cfg).map(|o| (o, Ok(()))),
        Command::Green => green(cfg).map(|o| (o, Ok(()))),
        Command::Duality => duality(cfg),
    }
}
