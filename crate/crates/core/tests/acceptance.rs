//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Tolerances and runtime budgets are fixed below.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qwlab_core::genfun::{tal_total_mass, tal_total_mass_summed, time_averaged_limit_closed, time_averaged_limit_residue};
use qwlab_core::oracle::{enumerated_series, HalfLine};
use qwlab_core::pathsum::{cgmv_limit, return_amplitudes_renewal, return_prob_limit, CgmvBranch, ReturnSeries};
use qwlab_core::series::{first_return_series_plus, rstar_closed, rstar_series};
use qwlab_core::stationary::{
    eigensolution, stationary_mass_summed, stationary_measure, stationary_total_mass, verify_eigen_residual, EigenBranch,
};
use qwlab_core::walk::{cesaro_average, origin_amplitudes};
use qwlab_core::{Amplitude2, CoinField, DefectAngle, Result, C64};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        passed,
        detail: detail.into(),
    })
}

fn ang(xi: f64) -> DefectAngle {
    DefectAngle::new(xi).unwrap()
}

fn qubits() -> [Amplitude2; 5] {
    let h = 1.0 / SQRT_2;
    [
        Amplitude2::real(1.0, 0.0),
        Amplitude2::real(0.0, 1.0),
        Amplitude2::new(C64::new(h, 0.0), C64::new(0.0, h)),
        Amplitude2::new(C64::new(h, 0.0), C64::new(0.0, -h)),
        Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8)),
    ]
}

fn stationary_residual() -> Result<Verdict> {
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0, PI / 3.0, 0.4 * PI] {
        for branch in EigenBranch::ALL {
            let sol = eigensolution(ang(xi), branch, C64::new(1.0, 0.0))?;
            worst = worst.max(verify_eigen_residual(&sol, 50));
        }
    }
    verdict(worst < 1e-12, format!("max residual {worst:.2e} over |x| <= 49, 5 angles x 4 branches"))
}

fn rstar_coefficients() -> Result<Verdict> {
    let series = rstar_series(200);
    let mismatches = (1..=200u64)
        .filter(|&n| series.coeff(n as usize) != Some(&rstar_closed(n)))
        .count();
    let q = |n: usize| series.coeff(n).unwrap().to_string();
    let known = q(1) == "-1" && q(3) == "1/2" && q(7) == "-1/8";
    verdict(
        mismatches == 0 && known,
        format!("{mismatches} mismatches for n <= 200; r1 = {}, r3 = {}, r7 = {}", q(1), q(3), q(7)),
    )
}

fn triple_oracle() -> Result<Verdict> {
    let phi = qubits()[4];
    let mut worst = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0, FRAC_PI_4, PI / 3.0] {
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
    verdict(worst < 1e-10, format!("max pairwise difference {worst:.2e} for n <= 30"))
}

fn return_probability() -> Result<Verdict> {
    let phi = qubits()[0];
    let a = ang(FRAC_PI_6);
    let p = ReturnSeries::new(a, 2000).amplitude(phi, 2000).unwrap().norm_sqr();
    let limit = return_prob_limit(a);
    let rel = (p - limit).abs() / limit;
    let h = ReturnSeries::new(ang(FRAC_PI_4), 2000).amplitude(phi, 2000).unwrap().norm_sqr();
    verdict(
        rel < 0.02 && h < 0.01 && (limit - 0.13645).abs() < 1e-5,
        format!("pi/6: |Psi|^2 = {p:.5} vs {limit:.5} ({:.2}%); pi/4: {h:.2e}", 100.0 * rel),
    )
}

fn limit_measure() -> Result<Verdict> {
    let mut worst = 0.0f64;
    let a = ang(FRAC_PI_6);
    for x in -20..=20 {
        let closed = time_averaged_limit_closed(a, x);
        for phi in qubits() {
            worst = worst.max((time_averaged_limit_residue(a, x, phi)? - closed).abs());
        }
    }
    let profile = cesaro_average(&CoinField::OneDefect(a), qubits()[0], 2000)?;
    let rel = [0, 1, -1, 2, -2]
        .iter()
        .map(|&x| (profile.get(x) / time_averaged_limit_closed(a, x) - 1.0).abs())
        .fold(0.0f64, f64::max);
    verdict(
        worst < 1e-10 && rel < 0.05,
        format!("residue vs closed {worst:.2e}; Cesaro N = 2000 worst relative error {:.2}%", 100.0 * rel),
    )
}

fn qubit_independence() -> Result<Verdict> {
    let mut spread = 0.0f64;
    for xi in [FRAC_PI_8, FRAC_PI_6, PI / 5.0] {
        let a = ang(xi);
        for x in -20..=20 {
            let values: Vec<f64> = qubits()
                .iter()
                .map(|&phi| time_averaged_limit_residue(a, x, phi))
                .collect::<Result<_>>()?;
            let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
            spread = spread.max(hi - lo);
        }
    }
    verdict(spread < 1e-10, format!("max spread across 5 qubits {spread:.2e}"))
}

fn cgmv_consistency() -> Result<Verdict> {
    let mut worst = 0.0f64;
    for j in 1..40 {
        let a = ang(FRAC_PI_4 * j as f64 / 40.0);
        for phi in qubits() {
            let sum = cgmv_limit(a, phi, CgmvBranch::MPlus)? + cgmv_limit(a, phi, CgmvBranch::MMinus)?;
            worst = worst.max((sum - return_prob_limit(a)).abs());
        }
    }
    verdict(worst < 1e-12, format!("max difference {worst:.2e} on 39 angles x 5 qubits"))
}

fn stationary_link() -> Result<Verdict> {
    let a = ang(FRAC_PI_6);
    let c = C64::new((2.0 * a.gap() / a.kappa()).sqrt(), 0.0);
    let mut worst = 0.0f64;
    for x in -50..=50 {
        worst = worst.max((stationary_measure(a, c, x) - time_averaged_limit_closed(a, x)).abs());
    }
    let at0 = (stationary_measure(a, c, 0), time_averaged_limit_closed(a, 0));
    verdict(
        worst < 1e-12,
        format!(
            "max difference {worst:.2e}; x = 0: stationary {:.5} vs limit {:.5} (ratio {:.4})",
            at0.0,
            at0.1,
            at0.0 / at0.1
        ),
    )
}

fn total_masses() -> Result<Verdict> {
    let a = ang(FRAC_PI_6);
    let tal = (tal_total_mass_summed(a, 200)? - tal_total_mass(a)).abs();
    let closed = (tal_total_mass(a) - 2.0 * a.gap() / a.kappa()).abs();
    let norm = stationary_total_mass(a, C64::new(1.0, 0.0))?;
    let c = C64::new(norm.recip().sqrt(), 0.0);
    let stat = (stationary_mass_summed(a, c, 200)? - 1.0).abs();
    verdict(
        tal < 1e-10 && closed < 1e-15 && stat < 1e-10,
        format!("limit-measure mass off by {tal:.2e}, stationary probability mass off by {stat:.2e}"),
    )
}

fn path_oracle() -> Result<Verdict> {
    let enumerated = enumerated_series(HalfLine::Positive, 12)?;
    let closed = first_return_series_plus(12);
    let listing: Vec<String> = (1..=12).map(|n| enumerated.coeff(n).unwrap().to_string()).collect();
    verdict(enumerated == closed, format!("coefficients 1..=12: [{}]", listing.join(", ")))
}

type Criterion = (u8, &'static str, Duration, fn() -> Result<Verdict>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "stationary eigen-residual", Duration::from_secs(1), stationary_residual),
        (2, "r* coefficients", Duration::from_secs(1), rstar_coefficients),
        (3, "triple-oracle return amplitude", Duration::from_secs(10), triple_oracle),
        (4, "return-probability limit", Duration::from_secs(60), return_probability),
        (5, "time-averaged limit measure", Duration::from_secs(120), limit_measure),
        (6, "qubit independence", Duration::from_secs(60), qubit_independence),
        (7, "CGMV consistency", Duration::from_secs(60), cgmv_consistency),
        (8, "stationary/time-averaged link", Duration::from_secs(60), stationary_link),
        (9, "total masses", Duration::from_secs(60), total_masses),
        (10, "brute-force path oracle", Duration::from_secs(60), path_oracle),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(v) => (v.passed && elapsed <= budget, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {detail} [{:.2} s, budget {} s]",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
