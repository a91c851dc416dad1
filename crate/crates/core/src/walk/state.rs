use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Two-component amplitude `ᵀ[Ψ^L, Ψ^R]` at one site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Amplitude2 {
    pub left: C64,
    pub right: C64,
}

impl Amplitude2 {
    pub const ZERO: Amplitude2 = Amplitude2 {
        left: C64::new(0.0, 0.0),
        right: C64::new(0.0, 0.0),
    };

    pub fn new(left: C64, right: C64) -> Self {
        Self { left, right }
    }

    pub fn real(left: f64, right: f64) -> Self {
        Self::new(left.into(), right.into())
    }

    /// `|Ψ^L|² + |Ψ^R|²`.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.left.norm_sqr() + self.right.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.left * k, self.right * k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.left + other.left, self.right + other.right)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.left - other.left, self.right - other.right)
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.left.conj() * other.left + self.right.conj() * other.right
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Precondition("qubit must be nonzero and finite".into()));
        }
        Ok(self.scale(C64::from(1.0 / n)))
    }

    pub fn is_zero(&self) -> bool {
        self.left == C64::new(0.0, 0.0) && self.right == C64::new(0.0, 0.0)
    }
}

/// Amplitudes on the window `[−W, W]` at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    time: usize,
    window: usize,
    amps: Vec<Amplitude2>,
}

impl WalkState {
    pub fn zero(window: usize) -> Self {
        Self {
            time: 0,
            window,
            amps: vec![Amplitude2::ZERO; 2 * window + 1],
        }
    }

    /// Point mass `φ` at the origin at time 0.
    pub fn point_mass(phi: Amplitude2, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precondition("window must be positive".into()));
        }
        let mut state = Self::zero(window);
        state.amps[window] = phi;
        Ok(state)
    }

    pub(crate) fn from_parts(time: usize, window: usize, amps: Vec<Amplitude2>) -> Self {
        debug_assert_eq!(amps.len(), 2 * window + 1);
        Self { time, window, amps }
    }

    #[inline]
    pub fn time(&self) -> usize {
        self.time
    }

    #[inline]
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn amplitudes(&self) -> &[Amplitude2] {
        &self.amps
    }

    /// Amplitude at site `x`; zero outside the window.
    pub fn at(&self, x: i64) -> Amplitude2 {
        let w = self.window as i64;
        if x < -w || x > w {
            return Amplitude2::ZERO;
        }
        self.amps[(x + w) as usize]
    }

    pub fn origin(&self) -> Amplitude2 {
        self.amps[self.window]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Amplitude2::norm_sqr).sum()
    }

    /// Sites `(x, Ψ(x))` in increasing order.
    pub fn sites(&self) -> impl Iterator<Item = (i64, &Amplitude2)> + '_ {
        let w = self.window as i64;
        self.amps.iter().enumerate().map(move |(i, a)| (i as i64 - w, a))
    }
}

/// Nonnegative weights per site together with their total.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureProfile {
    xmin: i64,
    values: Vec<f64>,
    total: f64,
}

impl MeasureProfile {
    pub fn new(xmin: i64, values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| *v >= 0.0));
        let total = values.iter().sum();
        Self { xmin, values, total }
    }

    /// Tabulates `f` on `[−xmax, xmax]`.
    pub fn tabulate(xmax: i64, f: impl Fn(i64) -> f64) -> Self {
        Self::new(-xmax, (-xmax..=xmax).map(f).collect())
    }

    pub fn get(&self, x: i64) -> f64 {
        let i = x - self.xmin;
        if i < 0 || i as usize >= self.values.len() {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn xmin(&self) -> i64 {
        self.xmin
    }

    pub fn xmax(&self) -> i64 {
        self.xmin + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.xmin + i as i64, *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_norm() {
        let phi = Amplitude2::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let s = WalkState::point_mass(phi, 3).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert_eq!(s.at(0), phi);
        assert_eq!(s.at(4), Amplitude2::ZERO);
        assert_eq!(s.sites().count(), 7);
    }

    #[test]
    fn profile_lookup() {
        let p = MeasureProfile::tabulate(2, |x| (x * x) as f64);
        assert_eq!(p.get(-2), 4.0);
        assert_eq!(p.get(3), 0.0);
        assert_eq!(p.total(), 10.0);
        assert_eq!(p.xmax(), 2);
    }

    #[test]
    fn zero_qubit_cannot_normalize() {
        assert!(Amplitude2::ZERO.normalized().is_err());
    }
}
