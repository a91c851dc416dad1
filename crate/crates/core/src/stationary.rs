//! Closed-form eigenvectors `UΨ = λΨ` with `|λ| = 1` and the stationary
//! measures they produce.
//!
//! Every solution is pinned by `Ψ(0) = ᵀ[α, β]` with `β = ∓iα`. Away from
//! the origin the amplitude is geometric with ratio `−θ_s` on the right and
//! `θ_s` on the left, `|θ_s| = 1/√(3 − 2√2 S)`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64 as C64;

use crate::angle::DefectAngle;
use crate::error::Result;
use crate::walk::{Amplitude2, CoinField};

const I: C64 = C64::new(0.0, 1.0);

/// Relation between the two chiralities at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaSign {
    /// `β = −iα`
    MinusI,
    /// `β = +iα`
    PlusI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EigenBranch {
    pub beta: BetaSign,
    pub lambda: LambdaSign,
}

impl EigenBranch {
    pub const ALL: [EigenBranch; 4] = [
        EigenBranch::new(BetaSign::MinusI, LambdaSign::Plus),
        EigenBranch::new(BetaSign::MinusI, LambdaSign::Minus),
        EigenBranch::new(BetaSign::PlusI, LambdaSign::Plus),
        EigenBranch::new(BetaSign::PlusI, LambdaSign::Minus),
    ];

    pub const fn new(beta: BetaSign, lambda: LambdaSign) -> Self {
        Self { beta, lambda }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    pub angle: DefectAngle,
    pub branch: EigenBranch,
    /// `Ψ^L(0)`
    pub alpha: C64,
    pub lambda: C64,
    /// Geometric ratio of the left tail; the right tail decays by `−θ_s`.
    pub theta_s: C64,
}

impl EigenSolution {
    /// `Ψ^R(0)`, fixed by the branch.
    pub fn beta(&self) -> C64 {
        match self.branch.beta {
            BetaSign::MinusI => -I * self.alpha,
            BetaSign::PlusI => I * self.alpha,
        }
    }

    /// The large root `θ_l = −1/θ_s` of the characteristic quadratic.
    pub fn theta_l(&self) -> C64 {
        -1.0 / self.theta_s
    }

    /// Same vector with a different eigenvalue; only meaningful as a
    /// negative control for the residual check.
    pub fn with_lambda(&self, lambda: C64) -> Self {
        Self { lambda, ..*self }
    }
}

/// Builds the eigensolution on `branch` with `Ψ^L(0) = α`.
pub fn eigensolution(angle: DefectAngle, branch: EigenBranch, alpha: C64) -> Result<EigenSolution> {
    if alpha == C64::new(0.0, 0.0) {
        return Err(crate::Error::Precondition("alpha must be nonzero".into()));
    }
    let (c, s, k) = (angle.cos(), angle.sin(), angle.kappa());
    let sign = match branch.lambda {
        LambdaSign::Plus => 1.0,
        LambdaSign::Minus => -1.0,
    };
    let (lambda, numer) = match branch.beta {
        BetaSign::MinusI => (
            C64::new(c, SQRT_2 - s) * (sign / k.sqrt()),
            C64::new(SQRT_2 - s, -c),
        ),
        BetaSign::PlusI => (
            C64::new(c, s - SQRT_2) * (sign / k.sqrt()),
            C64::new(SQRT_2 - s, c),
        ),
    };
    let theta_s = numer / (lambda * k);
    Ok(EigenSolution {
        angle,
        branch,
        alpha,
        lambda,
        theta_s,
    })
}

/// `Ψ(x)` for the solution `sol`.
pub fn eval_amplitude(sol: &EigenSolution, x: i64) -> Amplitude2 {
    let (c, s) = (sol.angle.cos(), sol.angle.sin());
    let (alpha, beta) = (sol.alpha, sol.beta());
    match x {
        0 => Amplitude2::new(alpha, beta),
        x if x >= 1 => {
            let r = (-sol.theta_s).powi(x as i32);
            let right = alpha * (1.0 - SQRT_2 * s) + beta * (SQRT_2 * c);
            Amplitude2::new(alpha * r, right * r)
        }
        x => {
            let r = sol.theta_s.powi((-x) as i32);
            let left = alpha * (SQRT_2 * c) + beta * (SQRT_2 * s - 1.0);
            Amplitude2::new(left * r, beta * r)
        }
    }
}

/// Largest local residual of `λΨ(x) = P_{x+1}Ψ(x+1) + Q_{x−1}Ψ(x−1)` over
/// `|x| ≤ W − 1`.
///
/// The residual at `x` is measured relative to `max ‖Ψ(y)‖, |y − x| ≤ 1`.
/// For ξ > π/4 the solution grows geometrically in `|x|`, and only the
/// relative residual stays at rounding level.
pub fn verify_eigen_residual(sol: &EigenSolution, window: i64) -> f64 {
    let field = CoinField::OneDefect(sol.angle);
    let mut worst = 0.0f64;
    for x in -(window - 1)..=(window - 1) {
        let here = eval_amplitude(sol, x);
        let right = eval_amplitude(sol, x + 1);
        let left = eval_amplitude(sol, x - 1);
        let (p, _) = field.coin_at(x + 1).split();
        let (_, q) = field.coin_at(x - 1).split();
        let rhs = p.apply(right).add(&q.apply(left));
        let diff = here.scale(sol.lambda).sub(&rhs).norm();
        let scale = here.norm().max(right.norm()).max(left.norm());
        if scale > 0.0 {
            worst = worst.max(diff / scale);
        }
    }
    worst
}

/// Stationary measure with `α = c/√2`, `β = ±ic/√2`.
pub fn stationary_measure(angle: DefectAngle, c: C64, x: i64) -> f64 {
    let c2 = c.norm_sqr();
    if x == 0 {
        c2
    } else {
        (2.0 - SQRT_2 * angle.sin()) * c2 * angle.kappa().powi(-(x.unsigned_abs() as i32))
    }
}

/// `Σ_x μ(x) = |c|² (3 − 2√2S)/(1 − √2S)`, finite only for ξ ∈ (0, π/4).
pub fn stationary_total_mass(angle: DefectAngle, c: C64) -> Result<f64> {
    let angle = angle.require_localized()?;
    Ok(c.norm_sqr() * angle.kappa() / angle.gap())
}

/// Partial sum over `|x| ≤ xmax` plus the exact geometric remainder.
pub fn stationary_mass_summed(angle: DefectAngle, c: C64, xmax: i64) -> Result<f64> {
    let angle = angle.require_localized()?;
    let partial: f64 = (-xmax..=xmax).map(|x| stationary_measure(angle, c, x)).sum();
    let first = stationary_measure(angle, c, xmax + 1);
    Ok(partial + 2.0 * crate::geometric_tail(first, 1.0 / angle.kappa()))
}

/// Normalized stationary measure (total mass 1). The normalizing `|c|²` is
/// taken as the reciprocal of [`stationary_total_mass`] at `|c| = 1`.
pub fn stationary_prob_measure(angle: DefectAngle, x: i64) -> Result<f64> {
    let mass = stationary_total_mass(angle, C64::new(1.0, 0.0))?;
    Ok(stationary_measure(angle, C64::new(mass.recip().sqrt(), 0.0), x))
}
