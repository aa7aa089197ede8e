use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use dualspec_core::coulomb::CoulombTheory;
use dualspec_core::error::Error;
use dualspec_core::oscillator::OscillatorTheory;
use dualspec_core::quadrature::{integrate, QuadConfig};
use dualspec_core::spectral::*;
use dualspec_core::Complex64 as C;

fn osc(lambda: f64, k0: f64) -> Theory {
    OscillatorTheory::new(lambda, k0).unwrap().into()
}

fn coul(g: f64, k0: f64) -> Theory {
    CoulombTheory::new(g, k0).unwrap().into()
}

fn ext(z: f64) -> Extension {
    Extension::new(z).unwrap()
}

/// Pole ladder ϑ_n of a tower theory.
fn pole(t: &Theory, n: usize) -> f64 {
    match t {
        Theory::Oscillator(o) => o.pole_energy(n).unwrap(),
        Theory::Coulomb(c) => c.pole_energy(n).unwrap(),
    }
}

fn towers() -> Vec<Theory> {
    vec![osc(1.0, 1.0), osc(0.4, 2.3), coul(-1.0, 1.0), coul(-0.5, 0.6)]
}

#[test]
fn roots_interlace_with_poles() {
    for t in towers() {
        for z in [-1.5, -0.7, 0.0, 0.7, 1.5] {
            let lv = discrete_levels(&t, ext(z), 10, DEFAULT_LEVEL_TOL).unwrap();
            assert_eq!(lv.len(), 11);
            for l in &lv {
                let hi = pole(&t, l.index);
                assert!(l.energy < hi, "{t:?} zeta={z} n={}: {} >= {hi}", l.index, l.energy);
                if l.index > 0 {
                    let lo = pole(&t, l.index - 1);
                    assert!(l.energy > lo, "{t:?} zeta={z} n={}: {} <= {lo}", l.index, l.energy);
                }
                assert!(l.weight > 0.0);
            }
            assert!(lv.windows(2).all(|w| w[0].energy < w[1].energy));
        }
    }
}

#[test]
fn roots_increase_with_zeta_and_reach_the_poles() {
    for t in towers() {
        let grid: Vec<f64> = (0..21).map(|k| -FRAC_PI_2 + PI * (k + 1) as f64 / 22.0).collect();
        let runs: Vec<Vec<Level>> = grid.iter().map(|&z| discrete_levels(&t, ext(z), 6, DEFAULT_LEVEL_TOL).unwrap()).collect();
        for n in 0..=6 {
            for k in 1..grid.len() {
                assert!(runs[k][n].energy > runs[k - 1][n].energy, "{t:?} n={n} at zeta={}", grid[k]);
            }
        }
        let top = discrete_levels(&t, ext(FRAC_PI_2 - 1e-6), 6, DEFAULT_LEVEL_TOL).unwrap();
        let bottom = discrete_levels(&t, ext(-FRAC_PI_2 + 1e-6), 6, DEFAULT_LEVEL_TOL).unwrap();
        for n in 0..=6 {
            let p = pole(&t, n);
            assert!((top[n].energy - p).abs() <= 1e-4 * p.abs(), "{t:?} n={n}: {} vs {p}", top[n].energy);
            if n > 0 {
                let q = pole(&t, n - 1);
                assert!((bottom[n].energy - q).abs() <= 1e-4 * q.abs(), "{t:?} n={n}: {} vs {q}", bottom[n].energy);
            }
        }
    }
}

#[test]
fn weights_match_finite_difference_derivative() {
    for t in towers() {
        for z in [-1.1, -0.3, 0.0, 0.5, 1.3] {
            let e = ext(z);
            let (_, c) = e.sin_cos();
            for l in discrete_levels(&t, e, 6, DEFAULT_LEVEL_TOL).unwrap() {
                let d = t.gamma_tilde_derivative(l.energy).unwrap();
                assert!(d < 0.0, "{t:?} zeta={z} n={}: gamma~' = {d}", l.index);
                let h = 1e-6 * l.energy.abs().max(1e-3);
                let fd = (t.gamma_tilde(C::new(l.energy + h, 0.0)).unwrap().re - t.gamma_tilde(C::new(l.energy - h, 0.0)).unwrap().re) / (2.0 * h);
                let q2 = -1.0 / (t.wronskian_scale() * c * c * fd);
                assert!((q2 - l.weight).abs() <= 1e-6 * l.weight, "{t:?} zeta={z} n={}: {} vs {q2}", l.index, l.weight);
            }
        }
    }
}

#[test]
fn level_examples() {
    let t = osc(1.0, 1.0);
    let l0 = &discrete_levels(&t, Extension::NEUMANN, 0, DEFAULT_LEVEL_TOL).unwrap()[0];
    assert!((l0.energy - 1.0).abs() < 1e-12);
    assert!((l0.weight - 2.0 / PI.sqrt()).abs() < 1e-10);
    let q = &discrete_levels(&t, ext(FRAC_PI_4), 0, DEFAULT_LEVEL_TOL).unwrap()[0];
    assert!(q.energy < 3.0);
    assert!((t.gamma_tilde(C::new(q.energy, 0.0)).unwrap().re + 1.0).abs() < 1e-10);
    // free oscillator: one level -κ₀² tan² ζ for ζ < 0
    let f = discrete_levels(&osc(0.0, 1.0), ext(-FRAC_PI_4), 3, DEFAULT_LEVEL_TOL).unwrap();
    assert_eq!(f.len(), 1);
    assert!((f[0].energy + 1.0).abs() < 1e-12);
    assert!((f[0].weight - 4.0).abs() < 1e-9);
    assert!(matches!(discrete_levels(&osc(0.0, 1.0), ext(0.3), 3, DEFAULT_LEVEL_TOL), Err(Error::NotDiscreteRegime)));
    assert!(matches!(discrete_levels(&osc(-1.0, 1.0), ext(0.3), 3, DEFAULT_LEVEL_TOL), Err(Error::NotDiscreteRegime)));
    // Coulomb g > 0: one negative level below ζ₀ = arctan(-2√(g/κ₀)), none above
    let c = coul(1.0, 1.0);
    let z0 = (-2.0f64).atan();
    assert_eq!(discrete_levels(&c, ext(z0 - 0.2), 3, DEFAULT_LEVEL_TOL).unwrap().len(), 1);
    assert!(matches!(discrete_levels(&c, ext(z0 + 0.2), 3, DEFAULT_LEVEL_TOL), Err(Error::NotDiscreteRegime)));
    assert!(matches!(discrete_levels(&c, Extension::NEUMANN, 3, DEFAULT_LEVEL_TOL), Err(Error::NotDiscreteRegime)));
}

#[test]
fn densities_are_non_negative() {
    let cases = [osc(-1.0, 1.0), osc(-0.2, 2.0), osc(0.0, 1.5), coul(-1.0, 1.0), coul(0.0, 1.0), coul(1.3, 0.4)];
    for t in cases {
        let lo = if continuous_support(&t) == ContinuousSupport::RealLine { -20.0 } else { 1e-6 };
        for z in [-1.4, -0.5, 0.0, 0.9, FRAC_PI_2] {
            for i in 0..=80 {
                let e = lo + (20.0 - lo) * i as f64 / 80.0;
                let d = continuous_density(&t, ext(z), e).unwrap();
                assert!(d >= 0.0 && d.is_finite(), "{t:?} zeta={z} E={e}: {d}");
            }
        }
    }
    assert!(matches!(continuous_density(&osc(1.0, 1.0), ext(0.2), 3.0), Err(Error::OutOfSupport { .. })));
    assert!(matches!(continuous_density(&coul(-1.0, 1.0), ext(0.2), -3.0), Err(Error::OutOfSupport { .. })));
}

#[test]
fn inverted_oscillator_density_tends_to_free_density() {
    let free = osc(0.0, 1.0);
    let t = osc(-1e-8, 1.0);
    for z in [-1.0, 0.0, 0.6, FRAC_PI_2] {
        for i in 0..=20 {
            let e = 0.1 + 9.9 * i as f64 / 20.0;
            let a = continuous_density(&t, ext(z), e).unwrap();
            let b = continuous_density(&free, ext(z), e).unwrap();
            assert!((a - b).abs() <= 1e-4 * b, "zeta={z} E={e}: {a} vs {b}");
        }
    }
}

/// Root of γ̃ + tan ζ between consecutive poles (γ̃ decreases from +∞ to −∞).
fn root_between(t: &Theory, tan: f64, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        match t.gamma_tilde(C::new(m, 0.0)) {
            Ok(g) if g.re + tan > 0.0 => a = m,
            _ => b = m,
        }
    }
    0.5 * (a + b)
}

#[test]
fn weak_oscillator_levels_average_to_free_density() {
    // weight per level spacing of the λ = 1e-8 tower against the λ = 0 density
    let lambda = 1e-8;
    let t = osc(lambda, 1.0);
    let free = osc(0.0, 1.0);
    for z in [-0.9, 0.3, 1.2] {
        let e = ext(z);
        let tan = e.tan().unwrap();
        for target in [0.1, 1.0, 4.0, 10.0] {
            let n = ((target / (2.0 * lambda.sqrt()) - 1.5) / 2.0).round() as usize;
            let p = |k: usize| 2.0 * lambda.sqrt() * (2.0 * k as f64 + 1.5);
            let e0 = root_between(&t, tan, p(n - 1), p(n));
            let e1 = root_between(&t, tan, p(n), p(n + 1));
            let w0 = level_weight(&t, e, e0).unwrap();
            let w1 = level_weight(&t, e, e1).unwrap();
            let smoothed = 0.5 * (w0 + w1) / (e1 - e0);
            let d = continuous_density(&free, e, 0.5 * (e0 + e1)).unwrap();
            assert!((smoothed - d).abs() <= 1e-4 * d, "zeta={z} E={target}: {smoothed} vs {d}");
        }
    }
}

#[test]
fn spectrum_examples() {
    let s = spectrum(&osc(0.0, 1.0), ext(FRAC_PI_4), 5, &[0.5, 1.0]).unwrap();
    assert!(s.discrete.is_empty());
    assert_eq!(s.support, ContinuousSupport::HalfLine);
    assert_eq!(s.density.len(), 2);

    let s = spectrum(&coul(-1.0, 1.0), Extension::DIRICHLET, 4, &[-1.0, 0.5]).unwrap();
    assert_eq!(s.support, ContinuousSupport::HalfLine);
    for l in &s.discrete {
        let want = -(2.0 * l.index as f64 + 1.5).powi(-2);
        assert!((l.energy - want).abs() < 1e-12 * want.abs());
    }
    // E = -1 is outside the support and skipped
    assert_eq!(s.density.len(), 1);

    let s = spectrum(&coul(1.0, 1.0), Extension::NEUMANN, 4, &[]).unwrap();
    assert!(s.discrete.is_empty());
    assert!(s.atom_at_zero.is_none());

    let zg = dualspec_core::coulomb::zeta_g(&CoulombTheory::new(1.0, 1.0).unwrap()).unwrap();
    let s = spectrum(&coul(1.0, 1.0), zg, 4, &[0.0, 1e-8]).unwrap();
    assert_eq!(s.atom_at_zero, Some(80.0));
    assert!(s.density.iter().all(|d| d.density < 1e-3));

    let s = spectrum(&osc(1.0, 1.0), ext(0.4), 3, &[1.0, 2.0]).unwrap();
    assert_eq!(s.support, ContinuousSupport::Empty);
    assert_eq!(s.discrete.len(), 4);
    assert!(s.density.is_empty());
}

#[test]
fn green_function_is_symmetric_and_analytic() {
    for (t, w) in [(osc(1.0, 1.0), C::new(2.0, 0.5)), (osc(-1.0, 1.3), C::new(-3.0, 1.0)), (coul(-0.7, 0.8), C::new(0.4, 0.2))] {
        for z in [-0.8, 0.0, 1.1] {
            let e = ext(z);
            let a = green_function(&t, e, 0.4, 1.7, w).unwrap().value;
            let b = green_function(&t, e, 1.7, 0.4, w).unwrap().value;
            assert_eq!(a, b);
            // Cauchy-Riemann: the derivatives along Re W and Im W agree
            let h = 1e-5;
            let g = |dw: C| green_function(&t, e, 0.4, 1.7, w + dw).unwrap().value;
            let dx = (g(C::new(h, 0.0)) - g(C::new(-h, 0.0))) / (2.0 * h);
            let dy = (g(C::new(0.0, h)) - g(C::new(0.0, -h))) / (2.0 * h * C::i());
            assert!((dx - dy).norm() <= 1e-6 * dx.norm().max(1.0), "{t:?} zeta={z}: {dx} vs {dy}");
        }
    }
    assert!(matches!(
        green_function(&osc(1.0, 1.0), Extension::NEUMANN, 1.0, 2.0, C::new(1.0, 0.0)),
        Err(Error::NotResolventSet { .. })
    ));
}

#[test]
fn green_function_residues_at_levels() {
    for t in [osc(1.0, 1.0), coul(-1.0, 1.0)] {
        let e = ext(0.5);
        let p0 = 0.8;
        for l in discrete_levels(&t, e, 3, DEFAULT_LEVEL_TOL).unwrap() {
            let eps = 1e-7 * l.energy.abs().max(1e-2);
            let g = green_function(&t, e, p0, p0, C::new(l.energy, eps)).unwrap().value;
            let ((u, _), _) = t.u_zeta(C::new(l.energy, 0.0), e, p0).unwrap();
            let want = l.weight * u.re * u.re;
            assert!((g.im * eps - want).abs() <= 1e-4 * want.abs().max(1e-8), "{t:?} n={}: {} vs {want}", l.index, g.im * eps);
        }
    }
}

#[test]
fn green_function_imaginary_part_on_the_continuum() {
    for t in [osc(-1.0, 1.0), coul(-0.6, 1.2), coul(0.9, 1.0)] {
        let e = ext(0.7);
        let p0 = 1.1;
        for en in [0.3, 2.0, 6.0] {
            let g = green_function(&t, e, p0, p0, C::new(en, 1e-10)).unwrap().value;
            let ((u, _), _) = t.u_zeta(C::new(en, 0.0), e, p0).unwrap();
            let want = u.re * u.re * continuous_density(&t, e, en).unwrap();
            assert!((g.im / PI - want).abs() <= 1e-6 * want, "{t:?} E={en}: {} vs {want}", g.im / PI);
        }
    }
}

#[test]
fn full_line_degeneracies() {
    let fl = assemble_full_line(&osc(1.0, 1.0), Extension::NEUMANN, Extension::NEUMANN, 5).unwrap();
    assert_eq!(fl.levels.len(), 6);
    for (n, l) in fl.levels.iter().enumerate() {
        assert_eq!(l.multiplicity, 2);
        assert!((l.energy - 2.0 * (2.0 * n as f64 + 0.5)).abs() < 1e-10);
    }
    assert_eq!(fl.continuum_multiplicity, 0);

    let fl = assemble_full_line(&osc(-1.0, 1.0), ext(0.3), ext(-0.8), 5).unwrap();
    assert!(fl.levels.is_empty());
    assert_eq!(fl.continuum, ContinuousSupport::RealLine);
    assert_eq!(fl.continuum_multiplicity, 2);

    let fl = assemble_full_line(&osc(1.0, 1.0), ext(0.2), ext(-0.9), 4).unwrap();
    assert!(fl.levels.iter().all(|l| l.multiplicity == 1));
    assert!(fl.levels.windows(2).all(|w| w[0].energy < w[1].energy));
}

#[test]
fn full_line_states_are_normalized() {
    let t = osc(1.0, 1.0);
    let cfg = QuadConfig::default();
    for (zeta, parity) in [(0.0, Parity::Even), (FRAC_PI_2, Parity::Odd), (0.6, Parity::Even)] {
        let e = ext(zeta);
        let f = |u: f64| {
            let v = full_line_eigenfunction(&t, e, parity, StateSelector::Level(1), &[u]).unwrap().values[0];
            v * v
        };
        let (left, _) = integrate(f, -9.0, -1e-12, &cfg).unwrap();
        let (right, _) = integrate(f, 1e-12, 9.0, &cfg).unwrap();
        assert!((left - right).abs() < 1e-10);
        assert!((left + right - 1.0).abs() < 1e-6, "zeta={zeta}: {}", left + right);
        let s = full_line_eigenfunction(&t, e, parity, StateSelector::Level(0), &[-0.7, 0.7]).unwrap();
        match parity {
            Parity::Even => assert_eq!(s.values[0], s.values[1]),
            Parity::Odd => assert_eq!(s.values[0], -s.values[1]),
        }
    }
}

#[test]
fn eigenfunction_examples() {
    let t = osc(1.0, 1.0);
    let pts: Vec<f64> = (1..=100).map(|i| 0.04 * i as f64).collect();
    let s = eigenfunction(&t, Extension::NEUMANN, StateSelector::Level(0), &pts).unwrap();
    let q = (2.0 / PI.sqrt()).sqrt();
    for (u, v) in pts.iter().zip(&s.values) {
        assert!((v - q * (-u * u / 2.0).exp()).abs() < 1e-10, "u={u}");
    }
    let s = eigenfunction(&t, Extension::DIRICHLET, StateSelector::Level(0), &pts).unwrap();
    let r0 = s.values[0] / (pts[0] * (-pts[0] * pts[0] / 2.0).exp());
    for (u, v) in pts.iter().zip(&s.values) {
        assert!((v / (u * (-u * u / 2.0).exp()) - r0).abs() < 1e-10 * r0.abs());
    }

    let ct = CoulombTheory::new(0.8, 1.0).unwrap();
    let zg = dualspec_core::coulomb::zeta_g(&ct).unwrap();
    let xs = [0.01, 0.3, 1.0, 4.0];
    let s = eigenfunction(&ct.into(), zg, StateSelector::ZeroMode, &xs).unwrap();
    let prof = |x: f64| x.powf(0.25) * (-2.0 * (0.8 * x).sqrt()).exp();
    let r0 = s.values[0] / prof(xs[0]);
    for (x, v) in xs.iter().zip(&s.values) {
        assert!((v / prof(*x) - r0).abs() < 1e-10 * r0.abs(), "x={x}");
    }

    assert!(matches!(eigenfunction(&t, Extension::NEUMANN, StateSelector::Continuum(2.0), &pts), Err(Error::NotInSpectrum(_))));
    assert!(matches!(eigenfunction(&osc(-1.0, 1.0), Extension::NEUMANN, StateSelector::Level(0), &pts), Err(Error::NotInSpectrum(_))));
    assert!(matches!(eigenfunction(&ct.into(), Extension::NEUMANN, StateSelector::ZeroMode, &xs), Err(Error::NotInSpectrum(_))));
    let s = eigenfunction(&osc(-1.0, 1.0), Extension::NEUMANN, StateSelector::Continuum(0.0), &[0.5]).unwrap();
    assert_eq!(s.normalization, Normalization::EnergyDelta);
}

#[test]
fn gram_matrices() {
    let quad = QuadConfig::default();
    for (t, z, n) in [(osc(1.0, 1.0), FRAC_PI_4, 3), (osc(0.5, 2.0), -0.9, 4), (coul(-1.0, 1.0), -0.4, 3), (coul(-0.6, 2.0), 1.1, 3)] {
        let g = orthonormality_matrix(&t, ext(z), n, &quad).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() <= 1e-6, "{t:?} zeta={z} ({i},{j}) = {v}");
            }
        }
    }
    assert!(matches!(orthonormality_matrix(&osc(-1.0, 1.0), Extension::NEUMANN, 3, &quad), Err(Error::NotDiscreteRegime)));
}

#[test]
fn extension_canonicalization() {
    assert_eq!(Extension::new(-FRAC_PI_2).unwrap(), Extension::DIRICHLET);
    assert_eq!(Extension::from_angle(PI), Extension::NEUMANN);
    assert!((Extension::from_angle(0.3 + PI).zeta() - 0.3).abs() < 1e-15);
    assert!(Extension::new(4.0).is_err());
    assert!(Extension::new(f64::NAN).is_err());
    assert_eq!(Extension::DIRICHLET.tan(), None);
}
