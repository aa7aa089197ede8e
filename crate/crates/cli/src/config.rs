//! Command-line arguments and their validation into a [`RunConfig`].

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualspec_core::spectral::{Parity, StateSelector};
use dualspec_core::{CoulombTheory, Extension, OscillatorTheory, Theory};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "dualspec", version, about = "Spectra of the half-line oscillator and Coulomb-like operators and their duality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Discrete levels with weights, density samples and the E = 0 atom.
    Spectrum,
    /// ρ²(E) on the energy grid.
    Density,
    /// Normalized eigenfunction on the position grid.
    Eigenfunction,
    /// G(p1, p2; W) for p1 on the position grid and Re W on the energy grid.
    Green,
    /// Oscillator/Coulomb correspondence report along the line λ.
    Duality,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Density => "density",
            Command::Eigenfunction => "eigenfunction",
            Command::Green => "green",
            Command::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryKind {
    Osc,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, global = true, value_enum, default_value_t = TheoryKind::Osc)]
    pub theory: TheoryKind,
    /// Oscillator coupling λ.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Coulomb coupling g.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub kappa0: f64,
    /// Extension angle in [−π/2, π/2].
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub zeta: Option<f64>,
    /// Even-sector angle of a full-line extension (oscillator only).
    #[arg(long, global = true, allow_negative_numbers = true, requires = "zeta_a")]
    pub zeta_s: Option<f64>,
    /// Odd-sector angle of a full-line extension (oscillator only).
    #[arg(long, global = true, allow_negative_numbers = true, requires = "zeta_s")]
    pub zeta_a: Option<f64>,
    #[arg(long, global = true, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 0.0)]
    pub e_min: f64,
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 10.0)]
    pub e_max: f64,
    /// Energy samples, end points included. Defaults: spectrum 21, density 101,
    /// green 1, duality 50 (continuum samples on [−e_max, e_max]).
    #[arg(long, global = true)]
    pub e_points: Option<usize>,
    /// Positions are u_min + i (u_max − u_min)/u_points for i = 1..=u_points.
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 0.0)]
    pub u_min: f64,
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 4.0)]
    pub u_max: f64,
    #[arg(long, global = true, default_value_t = 100)]
    pub u_points: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Relative perturbation of the mapped coupling (duality negative control).
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 0.0)]
    pub perturb: f64,
    /// Eigenfunction: index of the discrete level.
    #[arg(long, global = true, conflicts_with_all = ["energy", "zero_mode"])]
    pub level: Option<usize>,
    /// Eigenfunction: continuum energy.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "zero_mode")]
    pub energy: Option<f64>,
    /// Eigenfunction: Coulomb zero-energy state at ζ = ζ_g.
    #[arg(long, global = true)]
    pub zero_mode: bool,
    /// Eigenfunction: sector of a full-line state.
    #[arg(long, global = true, value_enum)]
    pub parity: Option<ParityArg>,
    /// Green: imaginary part of W, must be positive.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub im_w: Option<f64>,
    /// Green: second position.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub p2: f64,
    /// Worker threads for grid sweeps.
    #[arg(long, global = true, env = "DUALSPEC_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extensions {
    Half(Extension),
    /// (ζ_s, ζ_a)
    Full(Extension, Extension),
}

/// Validated settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub theory: Theory,
    pub theory_name: &'static str,
    pub coupling: f64,
    pub kappa0: f64,
    pub extensions: Extensions,
    pub n_max: usize,
    pub e_grid: Vec<f64>,
    pub e_max: f64,
    pub u_grid: Vec<f64>,
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
    pub tol: f64,
    pub perturb: f64,
    pub selector: StateSelector,
    pub parity: Option<Parity>,
    pub im_w: f64,
    pub p2: f64,
    pub threads: Option<usize>,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let a = &cli.common;
        let command = cli.command;
        if !(a.kappa0 > 0.0 && a.kappa0.is_finite()) {
            return Err(config_err(format!("kappa0 must be positive, got {}", a.kappa0)));
        }
        if !(a.tol > 0.0) {
            return Err(config_err(format!("tol must be positive, got {}", a.tol)));
        }
        let (theory, theory_name, coupling) = match a.theory {
            TheoryKind::Osc => {
                if a.g.is_some() {
                    return Err(config_err("--g applies to --theory coulomb"));
                }
                let l = a.lambda.ok_or_else(|| config_err("--theory osc needs --lambda"))?;
                (Theory::from(OscillatorTheory::new(l, a.kappa0)?), "osc", l)
            }
            TheoryKind::Coulomb => {
                if command == Command::Duality {
                    return Err(config_err("duality is parametrized by the oscillator coupling --lambda"));
                }
                if a.lambda.is_some() {
                    return Err(config_err("--lambda applies to --theory osc"));
                }
                let g = a.g.ok_or_else(|| config_err("--theory coulomb needs --g"))?;
                (Theory::from(CoulombTheory::new(g, a.kappa0)?), "coulomb", g)
            }
        };
        let extensions = match (a.zeta, a.zeta_s, a.zeta_a) {
            (Some(_), Some(_), _) => return Err(config_err("give either --zeta or --zeta-s/--zeta-a")),
            (Some(z), None, None) => Extensions::Half(Extension::new(z)?),
            (None, Some(s), Some(t)) => {
                if a.theory != TheoryKind::Osc {
                    return Err(config_err("full-line extensions apply to the oscillator"));
                }
                if !matches!(command, Command::Spectrum | Command::Eigenfunction) {
                    return Err(config_err(format!("{} takes a single --zeta", command.name())));
                }
                Extensions::Full(Extension::new(s)?, Extension::new(t)?)
            }
            _ => return Err(config_err("missing --zeta")),
        };
        let parity = match (extensions, a.parity) {
            (Extensions::Full(..), Some(ParityArg::Even)) => Some(Parity::Even),
            (Extensions::Full(..), Some(ParityArg::Odd)) => Some(Parity::Odd),
            (Extensions::Full(..), None) if command == Command::Eigenfunction => {
                return Err(config_err("full-line eigenfunction needs --parity"))
            }
            (Extensions::Half(_), Some(_)) => return Err(config_err("--parity needs --zeta-s/--zeta-a")),
            _ => None,
        };

        let e_points = a.e_points.unwrap_or(match command {
            Command::Spectrum => 21,
            Command::Density => 101,
            Command::Green => 1,
            Command::Duality => 50,
            Command::Eigenfunction => 0,
        });
        if !(a.e_min.is_finite() && a.e_max.is_finite() && a.e_min <= a.e_max) {
            return Err(config_err(format!("energy range [{}, {}] is empty", a.e_min, a.e_max)));
        }
        if command == Command::Density && e_points == 0 {
            return Err(config_err("density needs --e-points >= 1"));
        }
        if command == Command::Duality && !(a.e_max > 0.0) {
            return Err(config_err("duality needs --e-max > 0"));
        }
        if !(a.u_min.is_finite() && a.u_max.is_finite() && a.u_min < a.u_max) {
            return Err(config_err(format!("position range ({}, {}] is empty", a.u_min, a.u_max)));
        }
        if matches!(command, Command::Eigenfunction | Command::Green) && a.u_points == 0 {
            return Err(config_err("--u-points must be at least 1"));
        }
        let step = (a.u_max - a.u_min) / a.u_points.max(1) as f64;
        let u_grid = (1..=a.u_points).map(|i| if i == a.u_points { a.u_max } else { a.u_min + step * i as f64 }).collect();

        let selector = match (a.level, a.energy, a.zero_mode) {
            (_, Some(e), _) => StateSelector::Continuum(e),
            (_, _, true) => StateSelector::ZeroMode,
            (l, _, _) => StateSelector::Level(l.unwrap_or(0)),
        };
        let im_w = if command == Command::Green {
            let im = a.im_w.ok_or_else(|| config_err("green needs --im-w"))?;
            if !(im > 0.0) {
                return Err(config_err(format!("Im W = {im} must be positive")));
            }
            im
        } else {
            0.0
        };
        if a.threads == Some(0) {
            return Err(config_err("DUALSPEC_THREADS must be at least 1"));
        }
        Ok(RunConfig {
            command,
            theory,
            theory_name,
            coupling,
            kappa0: a.kappa0,
            extensions,
            n_max: a.n_max,
            e_grid: linspace(a.e_min, a.e_max, e_points),
            e_max: a.e_max,
            u_grid,
            format: a.format,
            out: a.out.clone(),
            tol: a.tol,
            perturb: a.perturb,
            selector,
            parity,
            im_w,
            p2: a.p2,
            threads: a.threads,
        })
    }

    /// The single extension of a half-line run.
    pub fn extension(&self) -> Result<Extension, CliError> {
        match self.extensions {
            Extensions::Half(e) => Ok(e),
            Extensions::Full(..) => Err(config_err(format!("{} takes a single --zeta", self.command.name()))),
        }
    }
}
