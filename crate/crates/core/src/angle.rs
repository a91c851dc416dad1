//! The defect parameter of the one-defect coin.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, SQRT_2};

use crate::error::{Error, Result};

/// Defect angle ξ ∈ (0, π/2) of the reflection coin at the origin.
///
/// The derived quantities `C = cos ξ`, `S = sin ξ` and the recurring
/// denominator `3 − 2√2 S` are cached at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectAngle {
    xi: f64,
    c: f64,
    s: f64,
}

impl DefectAngle {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < FRAC_PI_2) {
            return Err(Error::Domain {
                what: "xi",
                value: xi,
                interval: "(0, pi/2)",
            });
        }
        // At ξ = π/4 the defect coin must coincide with H entry for entry.
        let (c, s) = if xi == FRAC_PI_4 {
            (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
        } else {
            (xi.cos(), xi.sin())
        };
        Ok(Self { xi, c, s })
    }

    /// The Hadamard walk: ξ = π/4 reproduces H at every site.
    pub fn hadamard() -> Self {
        Self::new(FRAC_PI_4).expect("pi/4 is in range")
    }

    #[inline]
    pub fn radians(&self) -> f64 {
        self.xi
    }

    #[inline]
    pub fn cos(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn sin(&self) -> f64 {
        self.s
    }

    /// `3 − 2√2 S`, positive on the whole domain.
    #[inline]
    pub fn kappa(&self) -> f64 {
        3.0 - 2.0 * SQRT_2 * self.s
    }

    /// `1 − √2 S`; positive exactly when the walk localizes.
    #[inline]
    pub fn gap(&self) -> f64 {
        1.0 - SQRT_2 * self.s
    }

    /// Localization occurs for ξ ∈ (0, π/4). At π/4 the walk is the plain
    /// Hadamard walk and `gap()` vanishes, so the boundary is excluded.
    pub fn localizes(&self) -> bool {
        self.xi < FRAC_PI_4 && self.gap() > 0.0
    }

    /// Returns `self` if localization occurs, a domain error otherwise.
    pub fn require_localized(self) -> Result<Self> {
        if self.localizes() {
            Ok(self)
        } else {
            Err(Error::Domain {
                what: "xi",
                value: self.xi,
                interval: "(0, pi/4)",
            })
        }
    }
}

impl TryFrom<f64> for DefectAngle {
    type Error = Error;

    fn try_from(xi: f64) -> Result<Self> {
        Self::new(xi)
    }
}
