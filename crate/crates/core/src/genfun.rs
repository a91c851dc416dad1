//! Space-time generating functions `Ξ̃_x(z) = Σ_n Ξ(x, n) z^n`, where
//! `Ξ(x, n)φ = Ψ_n(x)` for a walk started at the origin.
//!
//! For a general coin field the first-return functions `f̃^{(±)}_x` are
//! evaluated from their continued fractions. For the one-defect model all of
//! them collapse to the closed form [`f0_tilde`], the poles of `Ξ̃_x` on the
//! unit circle are the four zeros of `γ(z) = 1 − 2S f̃₀ + f̃₀²`, and the
//! squared residues there sum to the time-averaged limit measure.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use crate::angle::DefectAngle;
use crate::error::{Error, Result};
use crate::walk::{Amplitude2, CoinField, CoinMatrix};
use crate::C64;

/// Default truncation depth of the continued fractions.
pub const DEFAULT_DEPTH: usize = 80;

/// Tolerance between the last two truncation depths.
pub const CONTFRAC_TOL: f64 = 1e-8;

/// `|γ(z)|` below this is treated as a pole.
pub const POLE_TOL: f64 = 1e-14;

/// Agreement required between the two residue routes.
pub const RESIDUE_ROUTE_TOL: f64 = 1e-9;

/// Agreement required between the residue sum and the closed form.
pub const LIMIT_ROUTE_TOL: f64 = 1e-10;

fn require_closed_disk(z: C64) -> Result<()> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain {
            what: "|z|",
            value: z.norm(),
            interval: "[0, 1]",
        });
    }
    Ok(())
}

fn f0_unchecked(z: C64) -> C64 {
    let z2 = z * z;
    (z2 + 1.0 - (z2 * z2 + 1.0).sqrt()) / SQRT_2
}

/// `f̃₀(z) = (z² + 1 − √(z⁴ + 1))/√2` on the principal branch, `f̃₀(0) = 0`.
pub fn f0_tilde(z: C64) -> Result<C64> {
    require_closed_disk(z)?;
    Ok(f0_unchecked(z))
}

/// `df̃₀/dz = √2·z·(1 − z²/√(z⁴ + 1))`.
pub fn f0_tilde_derivative(z: C64) -> Result<C64> {
    require_closed_disk(z)?;
    let z2 = z * z;
    Ok(z * SQRT_2 * (1.0 - z2 / (z2 * z2 + 1.0).sqrt()))
}

/// Unit-circle form `e^{iθ}(√2 cos θ + i·sgn(sin θ)·√(1 − 2cos²θ))`.
///
/// Only valid on the arcs `[−3π/4, −π/4) ∪ [π/4, 3π/4)` (mod 2π), where the
/// inner root is real.
pub fn f0_tilde_on_circle(theta: f64) -> Result<C64> {
    let c = theta.cos();
    let disc = 1.0 - 2.0 * c * c;
    if disc < 0.0 {
        return Err(Error::BranchAmbiguity { theta });
    }
    let sgn = if theta.sin() >= 0.0 { 1.0 } else { -1.0 };
    Ok(C64::from_polar(1.0, theta) * C64::new(SQRT_2 * c, sgn * disc.sqrt()))
}

/// Which first-return function a continued fraction computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `f̃^{(+)}_x`: excursions into `y ≥ x`.
    Plus,
    /// `f̃^{(−)}_x`: excursions into `y ≤ x`.
    Minus,
}

fn require_nonzero_entries(field: &CoinField, x: i64) -> Result<CoinMatrix> {
    let coin = field.coin_at(x);
    if !coin.all_entries_nonzero() {
        return Err(Error::Precondition(format!(
            "continued fractions need a coin with four nonzero entries, site {x} has a zero"
        )));
    }
    Ok(coin)
}

// One level of the recursion: f_x from f_{x±1} and the coin at x ± 1.
fn contfrac_level(coin: &CoinMatrix, side: Side, z: C64, inner: C64) -> C64 {
    let z2 = z * z;
    match side {
        Side::Plus => -z2 * coin.det() / coin.c * (1.0 - coin.a.norm_sqr() / (1.0 - coin.c * inner)),
        Side::Minus => -z2 * coin.det() / coin.b * (1.0 - coin.d.norm_sqr() / (1.0 - coin.b * inner)),
    }
}

/// `f̃^{(side)}_y` for `y = x, x ± 1, …, x ± (count − 1)` (moving outward),
/// from a continued fraction seeded with zero `depth` levels beyond `x`.
fn contfrac_run(field: &CoinField, x: i64, side: Side, z: C64, depth: usize, count: usize) -> Result<Vec<C64>> {
    let step: i64 = match side {
        Side::Plus => 1,
        Side::Minus => -1,
    };
    let far = depth.max(count);
    let mut values = vec![C64::new(0.0, 0.0); far + 1];
    for j in (0..far).rev() {
        let coin = require_nonzero_entries(field, x + step * (j as i64 + 1))?;
        values[j] = contfrac_level(&coin, side, z, values[j + 1]);
    }
    values.truncate(count);
    Ok(values)
}

/// Truncated continued fraction for `f̃^{(±)}_x(z)`, checked against the
/// next shallower truncation.
pub fn contfrac_f(field: &CoinField, x: i64, side: Side, z: C64, depth: usize) -> Result<C64> {
    if depth == 0 {
        return Err(Error::Precondition("continued-fraction depth must be at least 1".into()));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain {
            what: "|z|",
            value: z.norm(),
            interval: "[0, 1)",
        });
    }
    let deep = contfrac_run(field, x, side, z, depth, 1)?[0];
    if depth > 1 {
        let shallow = contfrac_run(field, x, side, z, depth - 1, 1)?[0];
        let diff = (deep - shallow).norm();
        if diff > CONTFRAC_TOL {
            return Err(Error::Divergence { diff });
        }
    }
    Ok(deep)
}

/// `Ξ̃_x(z)φ` for an arbitrary coin field with nonzero coin entries, with the
/// first-return functions taken from continued fractions of the given depth.
pub fn xi_tilde_general(field: &CoinField, z: C64, x: i64, phi: Amplitude2, depth: usize) -> Result<Amplitude2> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain {
            what: "|z|",
            value: z.norm(),
            interval: "[0, 1)",
        });
    }
    let reach = x.unsigned_abs() as usize + 1;
    let fp = contfrac_run(field, 0, Side::Plus, z, depth, reach)?;
    let fm = contfrac_run(field, 0, Side::Minus, z, depth, reach)?;
    let origin = require_nonzero_entries(field, 0)?;
    let (a0, b0, c0, d0) = (origin.a, origin.b, origin.c, origin.d);
    let gamma = 1.0 - c0 * fp[0] - b0 * fm[0] - origin.det() * fp[0] * fm[0];
    if gamma.norm() < POLE_TOL {
        return Err(pole(z, gamma));
    }
    let xi0 = Amplitude2::new(
        ((1.0 - b0 * fm[0]) * phi.left + d0 * fp[0] * phi.right) / gamma,
        (a0 * fm[0] * phi.left + (1.0 - c0 * fp[0]) * phi.right) / gamma,
    );
    if x == 0 {
        return Ok(xi0);
    }
    let n = x.unsigned_abs() as usize;
    if x > 0 {
        let lam = |y: usize| -> Result<C64> {
            let coin = field.coin_at(y as i64);
            Ok(z * coin.d / (1.0 - coin.c * fp[y]))
        };
        let mut prefactor = C64::new(1.0, 0.0);
        for y in 1..n {
            prefactor *= lam(y)?;
        }
        let proj = c0 * xi0.left + d0 * xi0.right;
        Ok(Amplitude2::new(lam(n)? * fp[n], z).scale(prefactor * proj))
    } else {
        let lam = |y: usize| -> Result<C64> {
            let coin = field.coin_at(-(y as i64));
            Ok(z * coin.a / (1.0 - coin.b * fm[y]))
        };
        let mut prefactor = C64::new(1.0, 0.0);
        for y in 1..n {
            prefactor *= lam(y)?;
        }
        let proj = a0 * xi0.left + b0 * xi0.right;
        Ok(Amplitude2::new(z, lam(n)? * fm[n]).scale(prefactor * proj))
    }
}

fn pole(z: C64, gamma: C64) -> Error {
    Error::Pole {
        z: format!("{z}"),
        modulus: gamma.norm(),
    }
}

/// `γ(z)` and the bulk ratios `λ̃^{(±)}(z)` of the one-defect model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaLambdas {
    pub gamma: C64,
    pub lam_plus: C64,
    pub lam_minus: C64,
}

fn gamma_lambdas_from(angle: DefectAngle, z: C64, f: C64) -> GammaLambdas {
    let gamma = 1.0 - 2.0 * angle.sin() * f + f * f;
    // z·d/(1 − c·f̃₀) with Hadamard c = 1/√2, d = −1/√2
    let lam_plus = -z / (SQRT_2 - f);
    GammaLambdas {
        gamma,
        lam_plus,
        lam_minus: -lam_plus,
    }
}

pub fn gamma_and_lambdas(angle: DefectAngle, z: C64) -> Result<GammaLambdas> {
    let f = f0_tilde(z)?;
    Ok(gamma_lambdas_from(angle, z, f))
}

// Ξ̃_x(z)φ times γ(z): analytic at the poles, so it is the residue numerator.
fn xi_tilde_numerator(angle: DefectAngle, z: C64, f: C64, x: i64, phi: Amplitude2) -> Amplitude2 {
    let (c, s) = (angle.cos(), angle.sin());
    let origin = Amplitude2::new(
        (1.0 - s * f) * phi.left - c * f * phi.right,
        c * f * phi.left + (1.0 - s * f) * phi.right,
    );
    if x == 0 {
        return origin;
    }
    let gl = gamma_lambdas_from(angle, z, f);
    let n = x.unsigned_abs() as i32;
    if x > 0 {
        let proj = s * origin.left - c * origin.right;
        Amplitude2::new(gl.lam_plus * f, z).scale(gl.lam_plus.powi(n - 1) * proj)
    } else {
        let proj = c * origin.left + s * origin.right;
        Amplitude2::new(z, gl.lam_minus * f).scale(gl.lam_minus.powi(n - 1) * proj)
    }
}

/// `Ξ̃_x(z)φ` for the one-defect model from the closed-form `f̃₀`.
pub fn xi_tilde_x(angle: DefectAngle, z: C64, x: i64, phi: Amplitude2) -> Result<Amplitude2> {
    let f = f0_tilde(z)?;
    let gamma = gamma_lambdas_from(angle, z, f).gamma;
    if gamma.norm() < POLE_TOL {
        return Err(pole(z, gamma));
    }
    Ok(xi_tilde_numerator(angle, z, f, x, phi).scale(1.0 / gamma))
}

/// Taylor coefficients `[z^0 … z^{count−1}]` of an analytic map, sampled on
/// the circle `|z| = radius < 1` by the trapezoidal rule.
pub fn taylor_coefficients(
    f: impl Fn(C64) -> Result<Amplitude2>,
    radius: f64,
    samples: usize,
    count: usize,
) -> Result<Vec<Amplitude2>> {
    let values = (0..samples)
        .map(|j| f(C64::from_polar(radius, std::f64::consts::TAU * j as f64 / samples as f64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..count)
        .map(|m| {
            let mut acc = Amplitude2::ZERO;
            for (j, v) in values.iter().enumerate() {
                let w = C64::from_polar(1.0, -std::f64::consts::TAU * (j * m % samples) as f64 / samples as f64);
                acc = acc.add(&v.scale(w));
            }
            acc.scale(C64::new(1.0 / (samples as f64 * radius.powi(m as i32)), 0.0))
        })
        .collect())
}

/// A zero of `γ` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRoot {
    /// Index 1..=4.
    pub k: u8,
    pub theta: f64,
    /// Closed-form value of `f̃₀` at the root, `S + Ci` or `S − Ci`.
    pub f0_value: C64,
}

impl GammaRoot {
    pub fn z(&self) -> C64 {
        C64::from_polar(1.0, self.theta)
    }
}

/// The four unit-circle zeros of `γ`, from their closed-form position and one
/// Newton step on `θ ↦ γ(e^{iθ})`.
pub fn gamma_roots(angle: DefectAngle) -> Result<[GammaRoot; 4]> {
    let angle = angle.require_localized()?;
    let (c, s) = (angle.cos(), angle.sin());
    let root_k = angle.kappa().sqrt();
    let (cos1, sin1) = (c / root_k, (SQRT_2 - s) / root_k);
    let table = [
        (1, cos1, sin1, C64::new(s, c)),
        (2, -cos1, -sin1, C64::new(s, c)),
        (3, cos1, -sin1, C64::new(s, -c)),
        (4, -cos1, sin1, C64::new(s, -c)),
    ];
    Ok(table.map(|(k, cs, sn, f0_value)| {
        let mut theta = sn.atan2(cs);
        let z = C64::from_polar(1.0, theta);
        let g = gamma_lambdas_from(angle, z, f0_unchecked(z)).gamma;
        let dg = dgamma_dtheta(angle, z);
        if dg.norm() > 0.0 {
            theta -= (g / dg).re;
        }
        GammaRoot { k, theta, f0_value }
    }))
}

// ∂γ/∂θ = i·z·γ'(z) with γ'(z) = (2f̃₀ − 2S)·f̃₀'(z).
fn dgamma_dtheta(angle: DefectAngle, z: C64) -> C64 {
    let f = f0_unchecked(z);
    let z2 = z * z;
    let df = z * SQRT_2 * (1.0 - z2 / (z2 * z2 + 1.0).sqrt());
    C64::i() * z * (2.0 * f - 2.0 * angle.sin()) * df
}

/// `|∂γ/∂θ|²` at a root in closed form: `4C²(3 − 2√2S)²/(1 − √2S)²`.
pub fn dgamma_dtheta_sq_closed(angle: DefectAngle) -> f64 {
    let (c, k, g) = (angle.cos(), angle.kappa(), angle.gap());
    4.0 * c * c * k * k / (g * g)
}

/// `|∂γ/∂θ|²` at a root from the derivative of the closed-form `f̃₀`.
pub fn dgamma_dtheta_sq_numeric(angle: DefectAngle, root: &GammaRoot) -> f64 {
    dgamma_dtheta(angle, root.z()).norm_sqr()
}

/// Squared residue norm of `Ξ̃_x(z)φ` at one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueContribution {
    pub x: i64,
    pub k: u8,
    pub norm_sq: f64,
}

/// Residue norms at all four roots. Each is computed from the exact root
/// data and the closed-form derivative, and again from the polished root,
/// the principal-branch `f̃₀` and its derivative; the routes must agree.
pub fn residue_contributions(angle: DefectAngle, x: i64, phi: Amplitude2) -> Result<[ResidueContribution; 4]> {
    let roots = gamma_roots(angle)?;
    let closed_d = dgamma_dtheta_sq_closed(angle);
    let root_k = angle.kappa().sqrt();
    let (c, s) = (angle.cos(), angle.sin());
    let mut out = [ResidueContribution { x, k: 0, norm_sq: 0.0 }; 4];
    for (slot, root) in out.iter_mut().zip(roots.iter()) {
        let z_exact = match root.k {
            1 => C64::new(c, SQRT_2 - s),
            2 => C64::new(-c, s - SQRT_2),
            3 => C64::new(c, s - SQRT_2),
            _ => C64::new(-c, SQRT_2 - s),
        } / root_k;
        let analytic = xi_tilde_numerator(angle, z_exact, root.f0_value, x, phi).norm_sqr() / closed_d;

        let z = root.z();
        let numeric = xi_tilde_numerator(angle, z, f0_unchecked(z), x, phi).norm_sqr()
            / dgamma_dtheta_sq_numeric(angle, root);

        if (analytic - numeric).abs() > RESIDUE_ROUTE_TOL {
            return Err(Error::RouteMismatch {
                what: "residue norm",
                a: analytic,
                b: numeric,
            });
        }
        *slot = ResidueContribution {
            x,
            k: root.k,
            norm_sq: analytic,
        };
    }
    Ok(out)
}

pub fn residue_norm_sq(angle: DefectAngle, x: i64, phi: Amplitude2, k: u8) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::Precondition(format!("root index must be 1..=4, got {k}")));
    }
    Ok(residue_contributions(angle, x, phi)?[k as usize - 1].norm_sq)
}

/// Time-averaged limit measure in closed form.
pub fn time_averaged_limit_closed(angle: DefectAngle, x: i64) -> f64 {
    if !angle.localizes() {
        return 0.0;
    }
    let (s, k, g) = (angle.sin(), angle.kappa(), angle.gap());
    let base = 2.0 * g * g / (k * k);
    if x == 0 {
        base
    } else {
        base * (2.0 - SQRT_2 * s) * k.powi(-(x.unsigned_abs() as i32))
    }
}

/// Time-averaged limit measure as the sum of the four squared residues.
pub fn time_averaged_limit_residue(angle: DefectAngle, x: i64, phi: Amplitude2) -> Result<f64> {
    if !angle.localizes() {
        return Ok(0.0);
    }
    let phi = phi.normalized()?;
    Ok(residue_contributions(angle, x, phi)?.iter().map(|r| r.norm_sq).sum())
}

/// `μ̄_∞(x)`, checked between the residue sum and the closed form.
pub fn time_averaged_limit_measure(angle: DefectAngle, x: i64) -> Result<f64> {
    let closed = time_averaged_limit_closed(angle, x);
    let residue = time_averaged_limit_residue(angle, x, Amplitude2::real(1.0, 0.0))?;
    if (closed - residue).abs() > LIMIT_ROUTE_TOL {
        return Err(Error::RouteMismatch {
            what: "time-averaged limit measure",
            a: closed,
            b: residue,
        });
    }
    Ok(closed)
}

/// `Σ_x μ̄_∞(x) = 2(1 − √2S)/(3 − 2√2S)`, zero without localization.
pub fn tal_total_mass(angle: DefectAngle) -> f64 {
    if !angle.localizes() {
        return 0.0;
    }
    2.0 * angle.gap() / angle.kappa()
}

/// Profile summed over `|x| ≤ xmax` plus the two analytic geometric tails.
pub fn tal_total_mass_summed(angle: DefectAngle, xmax: u32) -> Result<f64> {
    let xmax = xmax as i64;
    let mut total = 0.0;
    for x in -xmax..=xmax {
        total += time_averaged_limit_measure(angle, x)?;
    }
    if angle.localizes() {
        let first = time_averaged_limit_closed(angle, xmax + 1);
        total += 2.0 * crate::geometric_tail(first, 1.0 / angle.kappa());
    }
    Ok(total)
}

/// True when `θ` lies on the arcs where the unit-circle form of `f̃₀` holds.
pub fn on_principal_arcs(theta: f64) -> bool {
    let t = theta.rem_euclid(std::f64::consts::TAU);
    (FRAC_PI_4..3.0 * FRAC_PI_4).contains(&t) || (5.0 * FRAC_PI_4..7.0 * FRAC_PI_4).contains(&t)
}
