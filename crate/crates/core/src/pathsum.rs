//! Return amplitude at the origin for a walk started there.
//!
//! Three independent routes compute `Ψ_{2n}(0)`:
//!
//! * [`return_amplitudes_renewal`]: every excursion away from the origin
//!   contributes a first-return block `Ξ*_{2j}`; concatenating excursions is
//!   the convolution `G_m = Σ_{j=1}^{m} Ξ*_{2j} G_{m−j}`.
//! * [`ReturnSeries`]: coefficients of the closed generating function in
//!   `w = z²`, built on the exact series `Z(w) = −1 − w + √(1 + w²)`.
//! * [`return_amplitude_asymptotic`]: the large-`n` rotation by `θ₀`.

use std::f64::consts::SQRT_2;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::angle::DefectAngle;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::series::{binomial_sqrt_one_plus_z_pow, rational_to_f64, rstar_closed, PowerSeries};
use crate::walk::Amplitude2;
use crate::C64;

/// First-return block `Ξ*_n = (r*_{n−1}/√2)·[[−S, C], [−C, −S]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiStarBlock {
    pub n: usize,
    pub matrix: Mat2,
}

/// The fixed rotation-reflection `[[−S, C], [−C, −S]]/√2` shared by all blocks.
pub fn block_direction(angle: DefectAngle) -> Mat2 {
    let (c, s) = (angle.cos(), angle.sin());
    Mat2::real(-s, c, -c, -s).scale(C64::new(1.0 / SQRT_2, 0.0))
}

/// `r*_n` as a float.
pub fn rstar(n: usize) -> f64 {
    rational_to_f64(&rstar_closed(n as u64))
}

pub fn xi_star(angle: DefectAngle, n: usize) -> Result<XiStarBlock> {
    if n < 2 {
        return Err(Error::Precondition(format!("first-return block needs n >= 2, got {n}")));
    }
    let weight = if n.is_multiple_of(2) { rstar(n - 1) } else { 0.0 };
    Ok(XiStarBlock {
        n,
        matrix: block_direction(angle).scale(C64::new(weight, 0.0)),
    })
}

/// `Ψ_{2m}(0)` for `m = 0..=nmax` by the renewal convolution.
pub fn return_amplitudes_renewal(angle: DefectAngle, phi: Amplitude2, nmax: usize) -> Vec<Amplitude2> {
    let dir = block_direction(angle);
    // Ξ*_{2j} = r*_{2j−1}·dir, and every G_m is a polynomial in dir.
    let weights: Vec<f64> = (0..=nmax).map(|j| if j == 0 { 0.0 } else { rstar(2 * j - 1) }).collect();
    let mut g: Vec<Mat2> = Vec::with_capacity(nmax + 1);
    g.push(Mat2::IDENTITY);
    for m in 1..=nmax {
        let mut acc = Mat2::ZERO;
        for j in 1..=m {
            if weights[j] != 0.0 {
                acc = acc + (dir * g[m - j]).scale(C64::new(weights[j], 0.0));
            }
        }
        g.push(acc);
    }
    g.iter().map(|gm| gm.apply(phi)).collect()
}

pub fn return_amplitude_renewal(angle: DefectAngle, phi: Amplitude2, n: usize) -> Amplitude2 {
    return_amplitudes_renewal(angle, phi, n)[n]
}

/// Eigenvalue convention applied to the `(α + iβ)` mode of the composition sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionSign {
    /// Powers of `(−S − Ci)/√2`, the eigenvalue of the block direction on `(1, −i)`.
    Eigenvalue,
    /// Powers of `−(−S − Ci)/√2`.
    Negated,
}

/// `Ψ_{2n}(0)` from the explicit sum over compositions `a₁ + … + a_k = n`,
/// each weighted by `Π r*_{2a_j − 1}` and a `k`-th power of the block
/// direction applied through its eigen-decomposition. The composition
/// weights are accumulated by dynamic programming, so this is `O(n³)`.
pub fn return_amplitude_composition(
    angle: DefectAngle,
    phi: Amplitude2,
    n: usize,
    sign: CompositionSign,
) -> Amplitude2 {
    if n == 0 {
        return phi;
    }
    let (c, s) = (angle.cos(), angle.sin());
    let u = C64::new(-s, c) / SQRT_2;
    let u_bar = match sign {
        CompositionSign::Eigenvalue => C64::new(-s, -c) / SQRT_2,
        CompositionSign::Negated => -C64::new(-s, -c) / SQRT_2,
    };
    let i = C64::i();
    let minus = phi.left - i * phi.right;
    let plus = phi.left + i * phi.right;

    // weight[k][m]: sum over compositions of m into k parts
    let r: Vec<f64> = (0..=n).map(|a| if a == 0 { 0.0 } else { rstar(2 * a - 1) }).collect();
    let mut prev = vec![0.0; n + 1];
    prev[0] = 1.0;
    let mut out = Amplitude2::ZERO;
    for k in 1..=n {
        let mut cur = vec![0.0; n + 1];
        for m in k..=n {
            cur[m] = (1..=m - k + 1).map(|a| r[a] * prev[m - a]).sum();
        }
        let w = cur[n];
        if w != 0.0 {
            let (uk, vk) = (u.powu(k as u32), u_bar.powu(k as u32));
            let term = Amplitude2::new(
                0.5 * (minus * uk + plus * vk),
                0.5 * (i * minus * uk - i * plus * vk),
            );
            out = out.add(&term.scale(C64::new(w, 0.0)));
        }
        prev = cur;
    }
    out
}

/// Coefficients of the return generating function, reusable across qubits.
///
/// With `A(w) = 1/D` and `B(w) = Z/D`, `D = 2 + 2√2·S·Z + Z²`, the
/// amplitude at time `2n` is
/// `Ψ^L = √2((√2A_n + S·B_n)α + C·B_n·β)` and
/// `Ψ^R = √2((√2A_n + S·B_n)β − C·B_n·α)`.
#[derive(Debug, Clone)]
pub struct ReturnSeries {
    angle: DefectAngle,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Exact `Z(w) = −1 − w + √(1 + w²)` through `w^order`.
pub fn z_series(order: usize) -> PowerSeries<BigRational> {
    let mut z = binomial_sqrt_one_plus_z_pow(2, order);
    let mut coeffs = z.coeffs().to_vec();
    coeffs[0] = coeffs[0].clone() - BigRational::one();
    if order >= 1 {
        coeffs[1] = coeffs[1].clone() - BigRational::one();
    }
    z = PowerSeries::new(coeffs, order);
    debug_assert!(z.coeff(0).is_some_and(|c| c.is_zero()));
    z
}

impl ReturnSeries {
    pub fn new(angle: DefectAngle, order: usize) -> Self {
        let z = z_series(order).map(rational_to_f64);
        let s = angle.sin();
        let z2 = &z * &z;
        let two = PowerSeries::new(vec![2.0], order);
        let d = &(&two + &z.scale(&(2.0 * SQRT_2 * s))) + &z2;
        let a = d.inverse().expect("D(0) = 2");
        let b = &z * &a;
        Self {
            angle,
            a: a.coeffs().to_vec(),
            b: b.coeffs().to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// `Ψ_{2n}(0)`, or `None` beyond the truncation order.
    pub fn amplitude(&self, phi: Amplitude2, n: usize) -> Option<Amplitude2> {
        let (c, s) = (self.angle.cos(), self.angle.sin());
        let (a, b) = (*self.a.get(n)?, *self.b.get(n)?);
        let diag = SQRT_2 * (SQRT_2 * a + s * b);
        let off = SQRT_2 * c * b;
        Some(Amplitude2::new(
            phi.left * diag + phi.right * off,
            phi.right * diag - phi.left * off,
        ))
    }

    pub fn amplitudes(&self, phi: Amplitude2) -> Vec<Amplitude2> {
        (0..=self.order()).map(|n| self.amplitude(phi, n).expect("in range")).collect()
    }
}

pub fn return_amplitude_genfun(angle: DefectAngle, phi: Amplitude2, n: usize) -> Amplitude2 {
    ReturnSeries::new(angle, n).amplitude(phi, n).expect("order is n")
}

/// Parameters of the asymptotic rotation of the return amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub theta0: f64,
    pub cos_theta0: f64,
    pub sin_theta0: f64,
    /// `F = 2(1 − √2S)/(3 − 2√2S)`.
    pub amplitude_factor: f64,
    pub localized: bool,
}

pub fn theta0(angle: DefectAngle) -> Result<AsymptoticParams> {
    let angle = angle.require_localized()?;
    let (c, s, k, g) = (angle.cos(), angle.sin(), angle.kappa(), angle.gap());
    let cos_theta0 = -g * g / k;
    let sin_theta0 = 2.0 * (SQRT_2 - s) * c / k;
    Ok(AsymptoticParams {
        theta0: sin_theta0.atan2(cos_theta0),
        cos_theta0,
        sin_theta0,
        amplitude_factor: 2.0 * g / k,
        localized: true,
    })
}

pub fn return_amplitude_asymptotic(angle: DefectAngle, phi: Amplitude2, n: usize) -> Result<Amplitude2> {
    let p = theta0(angle)?;
    let (sn, cn) = (n as f64 * p.theta0).sin_cos();
    let f = p.amplitude_factor;
    Ok(Amplitude2::new(
        (phi.left * cn - phi.right * sn) * f,
        (phi.right * cn + phi.left * sn) * f,
    ))
}

/// `lim r_{2n}(0) = 4(1 − √2S)²/(3 − 2√2S)²`, zero without localization.
pub fn return_prob_limit(angle: DefectAngle) -> f64 {
    if !angle.localizes() {
        return 0.0;
    }
    let f = 2.0 * angle.gap() / angle.kappa();
    f * f
}

/// Signed rotation angle carrying `u` to `v`, for `v` a real rotation of `u`.
pub fn phase_step(u: &Amplitude2, v: &Amplitude2) -> f64 {
    let dot = u.inner(v).re;
    let cross = (u.left.conj() * v.right - u.right.conj() * v.left).re;
    cross.atan2(dot)
}

/// Constants of the spectral (CGMV) description of the defect walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgmvParams {
    pub a: C64,
    pub b: C64,
    pub omega: C64,
    pub rho_a: f64,
    pub rho_b: f64,
    pub zeta_plus: C64,
    pub zeta_minus: C64,
    pub alpha_hat: C64,
    pub beta_hat: C64,
}

impl CgmvParams {
    pub fn new(angle: DefectAngle, phi: Amplitude2) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        let a = C64::new(0.0, 1.0 / SQRT_2);
        let b = C64::new(0.0, s);
        Self {
            a,
            b,
            omega: C64::new(1.0, 0.0),
            rho_a: (1.0 - a.norm_sqr()).sqrt(),
            rho_b: (1.0 - b.norm_sqr()).sqrt(),
            zeta_plus: C64::new(c, s),
            zeta_minus: C64::new(-c, s),
            alpha_hat: phi.left,
            beta_hat: C64::i() * phi.right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgmvBranch {
    MPlus,
    MMinus,
}

/// Return-probability mass carried by one spectral mass point.
pub fn cgmv_limit(angle: DefectAngle, phi: Amplitude2, branch: CgmvBranch) -> Result<f64> {
    let angle = angle.require_localized()?;
    let phi = phi.normalized()?;
    let p = CgmvParams::new(angle, phi);
    let (zeta, sign) = match branch {
        CgmvBranch::MPlus => (p.zeta_plus, 1.0),
        CgmvBranch::MMinus => (p.zeta_minus, -1.0),
    };
    let weight = 1.0 - p.rho_a * p.rho_a / (zeta - p.a).norm_sqr();
    let bracket = (p.alpha_hat.norm_sqr() - p.beta_hat.norm_sqr()) * p.b.re
        + 2.0 * p.rho_b * ((p.omega * p.alpha_hat).conj() * p.beta_hat).re;
    let denom = (1.0 - p.b.im * p.b.im).sqrt();
    Ok(0.5 * weight * weight * (1.0 - sign * bracket / denom))
}
