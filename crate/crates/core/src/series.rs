//! Truncated formal power series and the first-return generating functions
//! of the Hadamard walk on a half line.
//!
//! A [`PowerSeries`] of order `T` stores the coefficients of `z^0 … z^T`;
//! everything beyond `T` is unknown, so binary operations truncate to the
//! smaller order of their operands. Over [`BigRational`] all arithmetic is
//! exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Truncation order used when callers do not pick one.
pub const DEFAULT_TRUNCATION: usize = 256;

/// Coefficient ring for [`PowerSeries`].
pub trait Coefficient: Clone + Num + Neg<Output = Self> {}

impl<T: Clone + Num + Neg<Output = T>> Coefficient for T {}

pub type RationalSeries = PowerSeries<BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> PowerSeries<T> {
    /// Series with the given leading coefficients, zero-padded or cut to `order`.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    /// `coeff · z^power`, truncated at `order`.
    pub fn monomial(coeff: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `[z^n]`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Multiplies by `z^k`; the known range grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `z^k`. The first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroLowOrder { shift: k });
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse by the triangular recurrence
    /// `g_n = −(1/b_0) Σ_{k=1}^{n} b_k g_{n−k}`.
    pub fn inverse(&self) -> Result<Self> {
        let b0 = &self.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = T::one() / b0.clone();
        let n = self.coeffs.len();
        let mut g: Vec<T> = Vec::with_capacity(n);
        g.push(inv0.clone());
        for m in 1..n {
            let mut acc = T::zero();
            for k in 1..=m {
                let b = &self.coeffs[k];
                if !b.is_zero() {
                    acc = acc + b.clone() * g[m - k].clone();
                }
            }
            g.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: g })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Principal square root (`s(0) = 1`) by Newton iteration
    /// `s ← (s + a/s)/2`, doubling the number of correct terms each round.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadLeadingCoefficient);
        }
        let target = self.coeffs.len();
        let two = T::one() + T::one();
        let half = T::one() / two;
        let mut s = PowerSeries::one(0);
        let mut terms = 1;
        while terms < target {
            terms = (2 * terms).min(target);
            let a = self.truncate(terms - 1);
            let s_ext = PowerSeries::new(s.coeffs, terms - 1);
            let quotient = a.div(&s_ext)?;
            s = (&s_ext + &quotient).scale(&half);
        }
        Ok(PowerSeries::new(s.coeffs, target - 1))
    }

    /// Coefficientwise conversion into another ring.
    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> PowerSeries<U> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: Coefficient> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn add(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].clone() + rhs.coeffs[n].clone())
            .collect();
        PowerSeries { coeffs }
    }
}

impl<T: Coefficient> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn sub(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].clone() - rhs.coeffs[n].clone())
            .collect();
        PowerSeries { coeffs }
    }
}

impl<T: Coefficient> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn neg(self) -> PowerSeries<T> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl<T: Coefficient> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn mul(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        PowerSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coefficient> $tr for PowerSeries<T> {
            type Output = PowerSeries<T>;

            fn $m(self, rhs: PowerSeries<T>) -> PowerSeries<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `1 + z^k` to order `order`.
pub fn one_plus_z_pow(k: usize, order: usize) -> RationalSeries {
    &RationalSeries::one(order) + &RationalSeries::monomial(BigRational::one(), k, order)
}

/// `√(1 + z^k)` by Newton iteration.
pub fn sqrt_one_plus_z_pow(k: usize, order: usize) -> RationalSeries {
    one_plus_z_pow(k, order)
        .sqrt()
        .expect("constant term is one")
}

/// `√(1 + z^k)` from the binomial recurrence
/// `[u^{j+1}] = [u^j] · (1/2 − j)/(j + 1)`. Linear in the order, so it is
/// the route of choice for long series; it agrees with
/// [`sqrt_one_plus_z_pow`] coefficient for coefficient.
pub fn binomial_sqrt_one_plus_z_pow(k: usize, order: usize) -> RationalSeries {
    assert!(k >= 1);
    let mut s = RationalSeries::zero(order);
    let mut c = BigRational::one();
    let mut j: i64 = 0;
    while (j as usize) * k <= order {
        s.coeffs[j as usize * k] = c.clone();
        c *= rat(1 - 2 * j, 2 * (j + 1));
        j += 1;
    }
    s
}

/// `Σ_{n≥1} r*_n z^n = (−1 − z² + √(1 + z⁴))/z`, known through `z^order`.
pub fn rstar_series(order: usize) -> RationalSeries {
    let root = sqrt_one_plus_z_pow(4, order + 1);
    let numer = &root - &one_plus_z_pow(2, order + 1);
    numer.shift_down(1).expect("numerator has no constant term")
}

/// Closed form of `r*_n`:
/// `−1` at `n = 1`, `(−1)^{m−1} (2m−2)!/(2^{2m−1} (m−1)! m!)` at `n = 4m − 1`,
/// and `0` otherwise (including `n = 0`, where the series has no term).
pub fn rstar_closed(n: u64) -> BigRational {
    if n == 1 {
        return -BigRational::one();
    }
    if n < 3 || !(n + 1).is_multiple_of(4) {
        return BigRational::zero();
    }
    let m = (n + 1) / 4;
    let numer = factorial(2 * m - 2);
    let denom = (BigInt::one() << (2 * m - 1) as usize) * factorial(m - 1) * factorial(m);
    let value = BigRational::new(numer, denom);
    if m % 2 == 1 {
        value
    } else {
        -value
    }
}

/// First-return weights from site 1 to the origin through `x ≥ 1`:
/// `Σ r^{(∞,1)}_n z^n = (−1 + √(1 + z⁴))/z`.
pub fn first_return_series_plus(order: usize) -> RationalSeries {
    let root = sqrt_one_plus_z_pow(4, order + 1);
    let numer = &root - &RationalSeries::one(order + 1);
    numer.shift_down(1).expect("numerator has no constant term")
}

/// The mirror series `s^{(−∞,−1)}`, which is exactly the negation of
/// [`first_return_series_plus`].
pub fn first_return_series_minus(order: usize) -> RationalSeries {
    -&first_return_series_plus(order)
}

/// Nearest `f64` to an exact rational, robust to numerators and
/// denominators far outside the `f64` range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both parts down to ~64 significant bits before dividing.
    let (n, d) = (q.numer(), q.denom());
    let shift = |x: &BigInt| x.bits().saturating_sub(64);
    let (sn, sd) = (shift(n), shift(d));
    let nf = (n.abs() >> sn as usize).to_f64().unwrap_or(0.0);
    let df = (d.abs() >> sd as usize).to_f64().unwrap_or(1.0);
    let sign = if n.is_negative() != d.is_negative() { -1.0 } else { 1.0 };
    sign * nf / df * 2f64.powi(sn as i32 - sd as i32)
}
