use thiserror::Error;

/// Errors raised by the special-function kernels and the spectral solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at z = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("{routine} did not converge: {detail}")]
    NoConvergence { routine: &'static str, detail: String },

    #[error("{routine} overflowed at |z| = {modulus}")]
    Overflow { routine: &'static str, modulus: f64 },

    #[error("spectral parameter sits on pole n = {n} of the spectral function")]
    SpectralPole { n: usize },

    #[error("no discrete spectrum for this theory and extension")]
    NotDiscreteRegime,

    #[error("root bracketing failed in ({lo}, {hi}): {detail}")]
    BracketFailure { lo: f64, hi: f64, detail: String },

    #[error("energy {energy} is outside the continuous support")]
    OutOfSupport { energy: f64 },

    #[error("energy parameter must have positive imaginary part (got {im})")]
    NotResolventSet { im: f64 },

    #[error("requested state is not in the spectrum: {0}")]
    NotInSpectrum(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("identity {name} violated: residual {residual:e} > {tol:e}")]
    IdentityViolation { name: String, residual: f64, tol: f64 },

    #[error("correspondence violated at {point}: residual {residual:e} > {tol:e}")]
    CorrespondenceViolation { point: String, residual: f64, tol: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the {0} limit has no confluent kernel parameters")]
    FreeLimit(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
