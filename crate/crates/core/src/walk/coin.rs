use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64 as C64;

use crate::angle::DefectAngle;
use crate::error::{Error, Result};
use crate::linalg::Mat2;

const UNITARITY_TOL: f64 = 1e-12;

/// A 2×2 unitary coin `[[a, b], [c, d]]` with its determinant cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    det: C64,
}

impl CoinMatrix {
    /// Builds a coin, rejecting matrices that are not unitary to 1e-12.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let coin = Self::from_entries(a, b, c, d);
        let m = coin.matrix();
        let deviation = (m * m.adjoint()).max_abs_diff(&Mat2::IDENTITY);
        if deviation > UNITARITY_TOL || (coin.det.norm() - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(coin)
    }

    fn from_entries(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self {
            a,
            b,
            c,
            d,
            det: a * d - b * c,
        }
    }

    pub fn hadamard() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_entries(h, h, h, -h)
    }

    /// The reflection coin `[[cos ξ, sin ξ], [sin ξ, −cos ξ]]`.
    pub fn defect(angle: DefectAngle) -> Self {
        let (c, s) = (C64::from(angle.cos()), C64::from(angle.sin()));
        Self::from_entries(c, s, s, -c)
    }

    pub fn identity() -> Self {
        let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self::from_entries(one, zero, zero, one)
    }

    pub fn scaled(&self, phase: C64) -> Self {
        Self::from_entries(self.a * phase, self.b * phase, self.c * phase, self.d * phase)
    }

    #[inline]
    pub fn det(&self) -> C64 {
        self.det
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.c, self.d)
    }

    /// Splits the coin into its left-moving part `P = [[a, b], [0, 0]]` and
    /// right-moving part `Q = [[0, 0], [c, d]]`.
    pub fn split(&self) -> (Mat2, Mat2) {
        let z = C64::new(0.0, 0.0);
        (
            Mat2::new(self.a, self.b, z, z),
            Mat2::new(z, z, self.c, self.d),
        )
    }

    pub(crate) fn all_entries_nonzero(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|e| e.norm() > 0.0)
    }
}

/// Convenience free form of [`CoinMatrix::split`].
pub fn split(coin: &CoinMatrix) -> (Mat2, Mat2) {
    coin.split()
}

/// Site-dependent coin assignment `x ↦ U_x`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoinField {
    /// Hadamard everywhere except the reflection coin at the origin.
    OneDefect(DefectAngle),
    /// Hadamard everywhere except `e^{2πiφ} H` at the origin, φ ∈ (0, 1).
    Wojcik { phi: f64 },
    Hadamard,
    Custom(CoinTable),
}

/// Explicit coins on finitely many sites, `fallback` elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinTable {
    pub sites: BTreeMap<i64, CoinMatrix>,
    pub fallback: CoinMatrix,
}

impl CoinTable {
    pub fn new(sites: BTreeMap<i64, CoinMatrix>, fallback: CoinMatrix) -> Self {
        Self { sites, fallback }
    }
}

impl CoinField {
    pub fn one_defect(xi: f64) -> Result<Self> {
        Ok(CoinField::OneDefect(DefectAngle::new(xi)?))
    }

    pub fn wojcik(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi < 1.0) {
            return Err(Error::Domain {
                what: "phi",
                value: phi,
                interval: "(0, 1)",
            });
        }
        Ok(CoinField::Wojcik { phi })
    }

    pub fn coin_at(&self, x: i64) -> CoinMatrix {
        match self {
            CoinField::OneDefect(angle) if x == 0 => CoinMatrix::defect(*angle),
            CoinField::Wojcik { phi } if x == 0 => {
                CoinMatrix::hadamard().scaled(C64::from_polar(1.0, TAU * phi))
            }
            CoinField::OneDefect(_) | CoinField::Wojcik { .. } | CoinField::Hadamard => {
                CoinMatrix::hadamard()
            }
            CoinField::Custom(table) => table.sites.get(&x).copied().unwrap_or(table.fallback),
        }
    }
}

/// Free form of [`CoinField::coin_at`].
pub fn coin_at(field: &CoinField, x: i64) -> CoinMatrix {
    field.coin_at(x)
}
