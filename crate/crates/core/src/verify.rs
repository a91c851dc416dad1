//! Every cross-route invariant of the crate as a runnable check.
//!
//! [`suite`] lists the checks; each is a plain function so callers can run
//! them in any order or in parallel. [`run`] executes them sequentially.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI, SQRT_2};

use crate::angle::DefectAngle;
use crate::error::Result;
use crate::genfun::{
    contfrac_f, dgamma_dtheta_sq_closed, dgamma_dtheta_sq_numeric, f0_tilde, gamma_and_lambdas, gamma_roots,
    tal_total_mass, tal_total_mass_summed, time_averaged_limit_closed, time_averaged_limit_residue, Side,
    DEFAULT_DEPTH,
};
use crate::oracle::{enumerated_series, HalfLine};
use crate::pathsum::{
    cgmv_limit, phase_step, return_amplitude_composition, return_amplitudes_renewal, return_prob_limit, theta0,
    CgmvBranch, CompositionSign, ReturnSeries,
};
use crate::series::{first_return_series_plus, rstar_closed, rstar_series};
use crate::stationary::{eigensolution, stationary_mass_summed, stationary_measure, verify_eigen_residual, EigenBranch};
use crate::walk::{cesaro_average, evolve, origin_amplitudes, Amplitude2, CoinField, WalkState};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Horizon of the Cesàro and long-time return checks.
    pub horizon: usize,
    /// Perturb the eigenvalue in the stationary residual check so that it
    /// fails; used to confirm that failures propagate.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            horizon: 2000,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn check(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

/// One named invariant.
#[derive(Clone, Copy)]
pub struct Invariant {
    pub name: &'static str,
    pub run: fn(&VerifyOptions) -> Result<Outcome>,
}

impl Invariant {
    /// Runs the check, folding errors into a failed outcome.
    pub fn evaluate(&self, options: &VerifyOptions) -> CheckResult {
        let outcome = (self.run)(options).unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
        CheckResult {
            name: self.name,
            passed: outcome.passed,
            detail: outcome.detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn suite() -> Vec<Invariant> {
    vec![
        Invariant { name: "stationary eigenvectors solve the eigen-equation", run: eigen_residual },
        Invariant { name: "eigen-residual rejects a perturbed eigenvalue", run: eigen_negative_control },
        Invariant { name: "r* series equals its closed form", run: rstar_exact },
        Invariant { name: "first-return series equals path enumeration", run: path_oracle },
        Invariant { name: "return amplitude: simulation, renewal, generating function", run: triple_oracle },
        Invariant { name: "composition sum uses the block eigenvalues", run: composition_sign },
        Invariant { name: "return probability approaches its limit", run: return_limit },
        Invariant { name: "return amplitude rotates by theta0 per step", run: asymptotic_phase },
        Invariant { name: "CGMV branches sum to the return limit", run: cgmv_sum },
        Invariant { name: "continued fraction equals closed-form f0", run: continued_fraction },
        Invariant { name: "gamma has four unit-circle roots", run: roots },
        Invariant { name: "residue sum equals closed limit measure for every qubit", run: residue_sum },
        Invariant { name: "Cesaro averages converge to the limit measure", run: cesaro },
        Invariant { name: "total masses", run: total_masses },
        Invariant { name: "stationary measure matches limit measure at |c| = sqrt2 (1 - sqrt2 S)/(3 - 2 sqrt2 S)", run: stationary_link },
        Invariant { name: "evolution is unitary and the pi/4 defect is the Hadamard walk", run: unitarity },
    ]
}

pub fn run(options: &VerifyOptions) -> Report {
    Report {
        checks: suite().iter().map(|inv| inv.evaluate(options)).collect(),
    }
}

fn ang(xi: f64) -> DefectAngle {
    DefectAngle::new(xi).expect("grid angles are valid")
}

fn grid() -> [f64; 5] {
    [FRAC_PI_8, FRAC_PI_6, PI / 5.0, FRAC_PI_4, PI / 3.0]
}

/// Qubits used wherever a result must not depend on the initial state.
pub fn probe_qubits() -> Vec<Amplitude2> {
    let h = 1.0 / SQRT_2;
    vec![
        Amplitude2::real(1.0, 0.0),
        Amplitude2::real(0.0, 1.0),
        Amplitude2::new(C64::new(h, 0.0), C64::new(0.0, h)),
        Amplitude2::new(C64::new(h, 0.0), C64::new(0.0, -h)),
        Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8)),
    ]
}

fn eigen_residual(opts: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0, PI / 3.0, 0.4 * PI] {
        for branch in EigenBranch::ALL {
            let mut sol = eigensolution(ang(xi), branch, C64::new(1.0, 0.0))?;
            if opts.inject_fault {
                sol = sol.with_lambda(sol.lambda * 1.01);
            }
            worst = worst.max(verify_eigen_residual(&sol, 50));
        }
    }
    Ok(Outcome::check(worst < 1e-12, format!("max residual {worst:.2e} (tol 1e-12)")))
}

fn eigen_negative_control(_: &VerifyOptions) -> Result<Outcome> {
    let sol = eigensolution(ang(FRAC_PI_6), EigenBranch::ALL[0], C64::new(1.0, 0.0))?;
    let r = verify_eigen_residual(&sol.with_lambda(sol.lambda * 1.01), 50);
    Ok(Outcome::check(r > 1e-3, format!("residual with lambda*1.01 is {r:.2e} (must exceed 1e-3)")))
}

fn rstar_exact(_: &VerifyOptions) -> Result<Outcome> {
    let series = rstar_series(200);
    let bad = (1..=200u64).filter(|&n| series.coeff(n as usize) != Some(&rstar_closed(n))).count();
    Ok(Outcome::check(bad == 0, format!("{bad} mismatches for n <= 200")))
}

fn path_oracle(_: &VerifyOptions) -> Result<Outcome> {
    let ok = enumerated_series(HalfLine::Positive, 12)? == first_return_series_plus(12);
    Ok(Outcome::check(ok, "exact rational comparison, n <= 12"))
}

fn triple_oracle(_: &VerifyOptions) -> Result<Outcome> {
    let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let mut worst = 0.0f64;
    for xi in grid() {
        let a = ang(xi);
        let sim = origin_amplitudes(&CoinField::OneDefect(a), phi, 60)?;
        let renewal = return_amplitudes_renewal(a, phi, 30);
        let series = ReturnSeries::new(a, 30).amplitudes(phi);
        for n in 0..=30 {
            worst = worst
                .max(renewal[n].sub(&sim[2 * n]).norm())
                .max(series[n].sub(&sim[2 * n]).norm())
                .max(renewal[n].sub(&series[n]).norm());
        }
    }
    Ok(Outcome::check(worst < 1e-10, format!("max pairwise difference {worst:.2e} (tol 1e-10)")))
}

fn composition_sign(_: &VerifyOptions) -> Result<Outcome> {
    let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let (mut eig, mut neg) = (0.0f64, 0.0f64);
    for xi in grid() {
        let a = ang(xi);
        let sim = origin_amplitudes(&CoinField::OneDefect(a), phi, 24)?;
        for n in 1..=12 {
            let e = return_amplitude_composition(a, phi, n, CompositionSign::Eigenvalue);
            let m = return_amplitude_composition(a, phi, n, CompositionSign::Negated);
            eig = eig.max(e.sub(&sim[2 * n]).norm());
            neg = neg.max(m.sub(&sim[2 * n]).norm());
        }
    }
    Ok(Outcome::check(
        eig < 1e-12 && neg > 1e-3,
        format!("eigenvalue form {eig:.2e}, negated form {neg:.2e}"),
    ))
}

fn return_limit(opts: &VerifyOptions) -> Result<Outcome> {
    let n = opts.horizon;
    let phi = Amplitude2::real(1.0, 0.0);
    let a = ang(FRAC_PI_6);
    let p = ReturnSeries::new(a, n).amplitude(phi, n).expect("in range").norm_sqr();
    let limit = return_prob_limit(a);
    let rel = (p - limit).abs() / limit;
    let h = ReturnSeries::new(ang(FRAC_PI_4), n).amplitude(phi, n).expect("in range").norm_sqr();
    Ok(Outcome::check(
        rel < 0.02 && h < 0.01,
        format!("pi/6: {p:.5} vs {limit:.5} ({:.2}%); pi/4: {h:.2e}", 100.0 * rel),
    ))
}

fn asymptotic_phase(opts: &VerifyOptions) -> Result<Outcome> {
    let a = ang(FRAC_PI_6);
    let t0 = theta0(a)?.theta0;
    let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let n = opts.horizon;
    let amps = ReturnSeries::new(a, n).amplitudes(phi);
    let start = (3 * n) / 4;
    let worst = (start..n)
        .map(|m| (phase_step(&amps[m], &amps[m + 1]) - t0).abs())
        .fold(0.0f64, f64::max);
    Ok(Outcome::check(worst < 1e-2, format!("max |step - theta0| = {worst:.2e} over n in [{start}, {n}]")))
}

fn cgmv_sum(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for j in 1..20 {
        let a = ang(FRAC_PI_4 * j as f64 / 20.0);
        for phi in probe_qubits() {
            let sum = cgmv_limit(a, phi, CgmvBranch::MPlus)? + cgmv_limit(a, phi, CgmvBranch::MMinus)?;
            worst = worst.max((sum - return_prob_limit(a)).abs());
        }
    }
    Ok(Outcome::check(worst < 1e-12, format!("max difference {worst:.2e} (tol 1e-12)")))
}

fn continued_fraction(_: &VerifyOptions) -> Result<Outcome> {
    let field = CoinField::one_defect(FRAC_PI_6)?;
    let mut worst = 0.0f64;
    for z in [C64::new(0.5, 0.0), C64::new(0.2, 0.6), C64::new(-0.4, -0.3)] {
        let want = f0_tilde(z)?;
        for side in [Side::Plus, Side::Minus] {
            worst = worst.max((contfrac_f(&field, 0, side, z, DEFAULT_DEPTH)? - want).norm());
        }
    }
    Ok(Outcome::check(worst < 1e-10, format!("max difference {worst:.2e} (tol 1e-10)")))
}

fn roots(_: &VerifyOptions) -> Result<Outcome> {
    let (mut g, mut f, mut d) = (0.0f64, 0.0f64, 0.0f64);
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0] {
        let a = ang(xi);
        let closed = dgamma_dtheta_sq_closed(a);
        for r in gamma_roots(a)? {
            g = g.max(gamma_and_lambdas(a, r.z())?.gamma.norm());
            f = f.max((f0_tilde(r.z())? - r.f0_value).norm());
            d = d.max((dgamma_dtheta_sq_numeric(a, &r) - closed).abs() / closed);
        }
    }
    Ok(Outcome::check(
        g < 1e-10 && f < 1e-10 && d < 1e-9,
        format!("|gamma| {g:.1e}, f0 value {f:.1e}, derivative {d:.1e}"),
    ))
}

fn residue_sum(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0] {
        let a = ang(xi);
        for x in -20..=20 {
            let closed = time_averaged_limit_closed(a, x);
            for phi in probe_qubits() {
                worst = worst.max((time_averaged_limit_residue(a, x, phi)? - closed).abs());
            }
        }
    }
    Ok(Outcome::check(worst < 1e-10, format!("max difference {worst:.2e} over |x| <= 20, 5 qubits")))
}

fn cesaro(opts: &VerifyOptions) -> Result<Outcome> {
    let a = ang(FRAC_PI_6);
    let field = CoinField::OneDefect(a);
    let phi = Amplitude2::real(1.0, 0.0);
    let sites = [0, 1, -1, 2, -2];
    let horizons: Vec<usize> = [8, 4, 2, 1].iter().map(|d| (opts.horizon / d).max(1)).collect();
    let mut errors: Vec<[f64; 5]> = Vec::new();
    for &n in &horizons {
        let profile = cesaro_average(&field, phi, n)?;
        let mut row = [0.0; 5];
        for (slot, &x) in row.iter_mut().zip(&sites) {
            *slot = (profile.get(x) - time_averaged_limit_closed(a, x)).abs();
        }
        errors.push(row);
    }
    let decreasing = errors.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| b < a));
    let last = errors.last().expect("nonempty");
    let rel = sites
        .iter()
        .zip(last)
        .map(|(&x, e)| e / time_averaged_limit_closed(a, x))
        .fold(0.0f64, f64::max);
    Ok(Outcome::check(
        decreasing && rel < 0.05,
        format!("N = {:?}: monotone {decreasing}, worst relative error at N = {} is {:.2}%", horizons, opts.horizon, 100.0 * rel),
    ))
}

fn total_masses(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0] {
        let a = ang(xi);
        worst = worst.max((tal_total_mass_summed(a, 200)? - tal_total_mass(a)).abs());
        let mass = crate::stationary::stationary_total_mass(a, C64::new(1.0, 0.0))?;
        let c = C64::new(mass.recip().sqrt(), 0.0);
        worst = worst.max((stationary_mass_summed(a, c, 200)? - 1.0).abs());
    }
    Ok(Outcome::check(worst < 1e-10, format!("max deviation {worst:.2e} (tol 1e-10)")))
}

fn stationary_link(_: &VerifyOptions) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0] {
        let a = ang(xi);
        let c = C64::new(SQRT_2 * a.gap() / a.kappa(), 0.0);
        for x in -50..=50 {
            worst = worst.max((stationary_measure(a, c, x) - time_averaged_limit_closed(a, x)).abs());
        }
    }
    Ok(Outcome::check(worst < 1e-12, format!("max difference {worst:.2e} over |x| <= 50")))
}

fn unitarity(_: &VerifyOptions) -> Result<Outcome> {
    let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let start = WalkState::point_mass(phi, 201)?;
    let mut drift = 0.0f64;
    for field in [CoinField::one_defect(FRAC_PI_6)?, CoinField::wojcik(0.3)?, CoinField::Hadamard] {
        drift = drift.max((evolve(&start, &field, 200)?.norm_sqr() - 1.0).abs());
    }
    let bitwise = evolve(&start, &CoinField::one_defect(FRAC_PI_4)?, 200)? == evolve(&start, &CoinField::Hadamard, 200)?;
    Ok(Outcome::check(
        drift < 1e-12 && bitwise,
        format!("norm drift {drift:.2e} after 200 steps, pi/4 bitwise equal: {bitwise}"),
    ))
}
