use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angles closer than this to ±π/2 or 0 are snapped onto them.
const SNAP: f64 = 1e-14;

/// Self-adjoint extension label ζ, stored in the canonical range (−π/2, π/2].
///
/// ζ and ζ + π label the same extension, so −π/2 is stored as π/2.
/// The boundary condition at the origin is `a₁ cos ζ = κ₀ a₂ sin ζ`, i.e. the
/// admissible solution is `U_ζ = κ₀ sin ζ · f₁ + cos ζ · f₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extension {
    zeta: f64,
}

impl Extension {
    /// ζ = π/2: the solution vanishing at the origin.
    pub const DIRICHLET: Extension = Extension { zeta: FRAC_PI_2 };
    /// ζ = 0.
    pub const NEUMANN: Extension = Extension { zeta: 0.0 };

    /// Accepts ζ in [−π/2, π/2].
    pub fn new(zeta: f64) -> Result<Self> {
        if !zeta.is_finite() || zeta.abs() > FRAC_PI_2 + 1e-12 {
            return Err(Error::InvalidParameter(format!("zeta = {zeta} outside [-pi/2, pi/2]")));
        }
        Ok(Self::from_angle(zeta))
    }

    /// Any real angle, reduced modulo π.
    pub fn from_angle(zeta: f64) -> Self {
        let mut z = zeta - PI * (zeta / PI).round();
        if (z.abs() - FRAC_PI_2).abs() <= SNAP || z <= -FRAC_PI_2 {
            z = FRAC_PI_2;
        } else if z.abs() <= SNAP {
            z = 0.0;
        }
        Extension { zeta: z }
    }

    pub fn zeta(self) -> f64 {
        self.zeta
    }

    /// True for ζ = π/2 (≡ −π/2).
    pub fn is_dirichlet(self) -> bool {
        self.zeta == FRAC_PI_2
    }

    pub fn is_neumann(self) -> bool {
        self.zeta == 0.0
    }

    /// (sin ζ, cos ζ), with exact values at the snapped angles.
    pub fn sin_cos(self) -> (f64, f64) {
        if self.is_dirichlet() {
            (1.0, 0.0)
        } else if self.is_neumann() {
            (0.0, 1.0)
        } else {
            self.zeta.sin_cos()
        }
    }

    /// tan ζ; `None` at ζ = π/2.
    pub fn tan(self) -> Option<f64> {
        if self.is_dirichlet() {
            None
        } else {
            Some(self.zeta.tan())
        }
    }

    /// Distance on the circle ℝ/πℤ.
    pub fn distance(self, other: Extension) -> f64 {
        let d = (self.zeta - other.zeta).rem_euclid(PI);
        d.min(PI - d)
    }
}

impl std::fmt::Display for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "zeta={}", self.zeta)
    }
}
