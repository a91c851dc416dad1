//! Exhaustive path enumeration for the absorbed Hadamard walk.
//!
//! Every path from `±1` that stays strictly on one side of the origin and
//! reaches it for the first time at step `n` contributes the ordered product
//! of its step matrices (latest step leftmost). With the Hadamard factor
//! `1/√2` pulled out, each weight is an integer matrix, so the projections
//! onto the `R` and `S` basis matrices come out as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::RationalSeries;

/// Longest path length the enumerator accepts.
pub const MAX_PATH_LEN: usize = 24;

type IMat = [[i64; 2]; 2];

// √2·P and √2·Q for the Hadamard coin.
const P_INT: IMat = [[1, 1], [0, 0]];
const Q_INT: IMat = [[0, 0], [1, -1]];

fn imul(a: &IMat, b: &IMat) -> IMat {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn iadd(a: &IMat, b: &IMat) -> IMat {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

/// Which half line the absorbed walk lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    /// Start at `1`, stay in `x ≥ 1`.
    Positive,
    /// Start at `−1`, stay in `x ≤ −1`.
    Negative,
}

/// Sum of integer path weights `√2^n · Ξ_n` together with the number of
/// paths visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSum {
    pub weight: [[i64; 2]; 2],
    pub paths: u64,
}

/// Enumerates every length-`n` first-passage path to the origin.
pub fn enumerate_first_passage(side: HalfLine, n: usize) -> Result<PathSum> {
    if n == 0 || n > MAX_PATH_LEN {
        return Err(Error::Precondition(format!(
            "path length must lie in 1..={MAX_PATH_LEN}, got {n}"
        )));
    }
    let sign: i64 = match side {
        HalfLine::Positive => 1,
        HalfLine::Negative => -1,
    };
    let mut acc = PathSum {
        weight: [[0; 2]; 2],
        paths: 0,
    };
    walk(sign, n, 1, [[1, 0], [0, 1]], &mut acc);
    Ok(acc)
}

// `pos` is the distance from the origin measured into the half line.
fn walk(sign: i64, remaining: usize, pos: i64, prod: IMat, acc: &mut PathSum) {
    if pos == 0 {
        if remaining == 0 {
            acc.weight = iadd(&acc.weight, &prod);
            acc.paths += 1;
        }
        return;
    }
    if remaining == 0 || pos > remaining as i64 {
        return;
    }
    // P moves the walker left, Q moves it right.
    let (toward, away) = if sign > 0 { (P_INT, Q_INT) } else { (Q_INT, P_INT) };
    walk(sign, remaining - 1, pos - 1, imul(&toward, &prod), acc);
    walk(sign, remaining - 1, pos + 1, imul(&away, &prod), acc);
}

fn scaled(value: i64, n: usize) -> BigRational {
    // value / √2^{n+1}; parity makes n + 1 even whenever value ≠ 0.
    if value == 0 {
        return BigRational::zero();
    }
    assert!(n % 2 == 1, "nonzero first-passage weight at even length");
    let denom = BigInt::one() << n.div_ceil(2);
    BigRational::new(BigInt::from(value), denom)
}

/// `r^{(∞,1)}_n = ⟨R, Ξ^{(∞,1)}_n⟩` by enumeration.
pub fn first_return_coeff_plus(n: usize) -> Result<BigRational> {
    let m = enumerate_first_passage(HalfLine::Positive, n)?.weight;
    Ok(scaled(m[0][0] - m[0][1], n))
}

/// `s^{(−∞,−1)}_n = ⟨S, Ξ^{(−∞,−1)}_n⟩` by enumeration.
pub fn first_return_coeff_minus(n: usize) -> Result<BigRational> {
    let m = enumerate_first_passage(HalfLine::Negative, n)?.weight;
    Ok(scaled(m[1][0] + m[1][1], n))
}

/// The enumerated coefficients `1..=order` assembled into a series.
pub fn enumerated_series(side: HalfLine, order: usize) -> Result<RationalSeries> {
    let mut coeffs = vec![BigRational::zero()];
    for n in 1..=order {
        coeffs.push(match side {
            HalfLine::Positive => first_return_coeff_plus(n)?,
            HalfLine::Negative => first_return_coeff_minus(n)?,
        });
    }
    Ok(RationalSeries::new(coeffs, order))
}
