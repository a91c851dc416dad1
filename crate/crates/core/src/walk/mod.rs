//! Exact amplitude evolution of a two-state walk on a finite window of Z.
//!
//! The window `[−W, W]` is chosen large enough that the support never
//! reaches it, so no amplitude is ever lost: the evolution on the window is
//! the evolution on Z.

mod coin;
mod state;

pub use coin::{coin_at, split, CoinField, CoinMatrix, CoinTable};
pub use state::{Amplitude2, MeasureProfile, WalkState};

use crate::error::{Error, Result};

/// One time step: `Ψ_{n+1}(x) = P_{x+1} Ψ_n(x+1) + Q_{x−1} Ψ_n(x−1)`.
///
/// Fails with [`Error::WindowOverflow`] if either boundary site carries
/// amplitude, since the step would then move weight off the window.
pub fn step(state: &WalkState, field: &CoinField) -> Result<WalkState> {
    let amps = state.amplitudes();
    let n = amps.len();
    let w = state.window() as i64;
    if !amps[0].is_zero() || !amps[n - 1].is_zero() {
        return Err(Error::WindowOverflow {
            time: state.time(),
            window: state.window(),
        });
    }

    let coins: Vec<CoinMatrix> = (-w..=w).map(|x| field.coin_at(x)).collect();
    let mut next = vec![Amplitude2::ZERO; n];
    for i in 0..n {
        if i + 1 < n {
            let (u, psi) = (&coins[i + 1], amps[i + 1]);
            next[i].left = u.a * psi.left + u.b * psi.right;
        }
        if i >= 1 {
            let (u, psi) = (&coins[i - 1], amps[i - 1]);
            next[i].right = u.c * psi.left + u.d * psi.right;
        }
    }
    Ok(WalkState::from_parts(state.time() + 1, state.window(), next))
}

/// `n` applications of [`step`].
pub fn evolve(state: &WalkState, field: &CoinField, n: usize) -> Result<WalkState> {
    let mut current = state.clone();
    for _ in 0..n {
        current = step(&current, field)?;
    }
    Ok(current)
}

/// Position measure `μ(x) = |Ψ^L(x)|² + |Ψ^R(x)|²`.
pub fn measure(state: &WalkState) -> MeasureProfile {
    let w = state.window() as i64;
    MeasureProfile::new(
        -w,
        state.amplitudes().iter().map(Amplitude2::norm_sqr).collect(),
    )
}

/// Cesàro average `(1/N) Σ_{n=0}^{N−1} μ_n` for the walk started from `φ` at
/// the origin.
pub fn cesaro_average(field: &CoinField, phi: Amplitude2, steps: usize) -> Result<MeasureProfile> {
    if steps == 0 {
        return Err(Error::Precondition("Cesàro average needs N >= 1".into()));
    }
    let phi = phi.normalized()?;
    let window = steps + 1;
    let mut state = WalkState::point_mass(phi, window)?;
    let mut acc = vec![0.0; 2 * window + 1];
    for n in 0..steps {
        for (slot, a) in acc.iter_mut().zip(state.amplitudes()) {
            *slot += a.norm_sqr();
        }
        if n + 1 < steps {
            state = step(&state, field)?;
        }
    }
    let inv = 1.0 / steps as f64;
    acc.iter_mut().for_each(|v| *v *= inv);
    Ok(MeasureProfile::new(-(window as i64), acc))
}

/// Origin amplitudes `Ψ_0(0), Ψ_1(0), …, Ψ_{steps}(0)` by direct simulation.
pub fn origin_amplitudes(field: &CoinField, phi: Amplitude2, steps: usize) -> Result<Vec<Amplitude2>> {
    let mut state = WalkState::point_mass(phi, steps + 1)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.origin());
    for _ in 0..steps {
        state = step(&state, field)?;
        out.push(state.origin());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn one_hadamard_step() {
        let s0 = WalkState::point_mass(Amplitude2::real(1.0, 0.0), 2).unwrap();
        let s1 = step(&s0, &CoinField::Hadamard).unwrap();
        assert_eq!(s1.time(), 1);
        assert!((s1.at(-1).left - FRAC_1_SQRT_2).norm() < 1e-15);
        assert_eq!(s1.at(-1).right, C64::new(0.0, 0.0));
        assert_eq!(s1.at(1).left, C64::new(0.0, 0.0));
        assert!((s1.at(1).right - FRAC_1_SQRT_2).norm() < 1e-15);

        let mu = measure(&s1);
        assert!((mu.get(-1) - 0.5).abs() < 1e-15);
        assert!((mu.get(1) - 0.5).abs() < 1e-15);
        assert!((mu.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_steps_return_to_origin() {
        let xi: f64 = 0.7;
        let (c, s) = (xi.cos(), xi.sin());
        let alpha = C64::new(0.6, 0.1);
        let beta = C64::new(-0.2, 0.77);
        let phi = Amplitude2::new(alpha, beta);
        let field = CoinField::one_defect(xi).unwrap();
        let s2 = evolve(&WalkState::point_mass(phi, 3).unwrap(), &field, 2).unwrap();
        let want_l = (alpha * s - beta * c) * FRAC_1_SQRT_2;
        let want_r = (alpha * c + beta * s) * FRAC_1_SQRT_2;
        assert!((s2.origin().left - want_l).norm() < 1e-15);
        assert!((s2.origin().right - want_r).norm() < 1e-15);
    }

    #[test]
    fn overflow_detected() {
        let s = WalkState::point_mass(Amplitude2::real(1.0, 0.0), 2).unwrap();
        let field = CoinField::Hadamard;
        let s2 = evolve(&s, &field, 2).unwrap();
        assert!(matches!(step(&s2, &field), Err(Error::WindowOverflow { .. })));
    }

    #[test]
    fn evolve_zero_and_composition() {
        let field = CoinField::one_defect(0.3).unwrap();
        let s = WalkState::point_mass(Amplitude2::real(0.6, 0.8), 6).unwrap();
        assert_eq!(evolve(&s, &field, 0).unwrap(), s);
        let twice = step(&step(&s, &field).unwrap(), &field).unwrap();
        assert_eq!(evolve(&s, &field, 2).unwrap(), twice);
    }

    #[test]
    fn zero_state_measure() {
        let mu = measure(&WalkState::zero(4));
        assert!(mu.values().iter().all(|v| *v == 0.0));
        assert_eq!(mu.total(), 0.0);
    }

    #[test]
    fn cesaro_single_step_is_initial() {
        let field = CoinField::one_defect(FRAC_PI_6).unwrap();
        let mu = cesaro_average(&field, Amplitude2::real(1.0, 0.0), 1).unwrap();
        assert_eq!(mu.get(0), 1.0);
        assert_eq!(mu.total(), 1.0);
    }

    #[test]
    fn odd_times_vanish_at_origin() {
        let field = CoinField::one_defect(0.4).unwrap();
        let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        for (n, a) in origin_amplitudes(&field, phi, 41).unwrap().iter().enumerate() {
            if n % 2 == 1 {
                assert!(a.is_zero(), "n = {n}");
            }
        }
    }

    #[test]
    fn quarter_pi_defect_is_hadamard_bitwise() {
        let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let s = WalkState::point_mass(phi, 60).unwrap();
        let a = evolve(&s, &CoinField::one_defect(FRAC_PI_4).unwrap(), 59).unwrap();
        let b = evolve(&s, &CoinField::Hadamard, 59).unwrap();
        assert_eq!(a, b);
    }

    fn qubit() -> impl Strategy<Value = Amplitude2> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 1e-3)
            .prop_map(|(a, b, c, d)| {
                Amplitude2::new(C64::new(a, b), C64::new(c, d)).normalized().unwrap()
            })
    }

    fn field() -> impl Strategy<Value = CoinField> {
        prop_oneof![
            (0.01..1.56f64).prop_map(|xi| CoinField::one_defect(xi).unwrap()),
            (0.01..0.99f64).prop_map(|phi| CoinField::wojcik(phi).unwrap()),
            Just(CoinField::Hadamard),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn norm_light_cone_parity(phi in qubit(), field in field(), n in 1usize..60) {
            let mut s = WalkState::point_mass(phi, n + 1).unwrap();
            for t in 1..=n {
                s = step(&s, &field).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
                for (x, a) in s.sites() {
                    if x.unsigned_abs() as usize > t || (x + t as i64) % 2 != 0 {
                        prop_assert!(a.is_zero());
                    }
                }
            }
        }
    }
}
