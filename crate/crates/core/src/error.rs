use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside the interval where the requested quantity is defined.
    #[error("{what} = {value} is outside the valid interval {interval}")]
    Domain {
        what: &'static str,
        value: f64,
        interval: &'static str,
    },

    #[error("support reached the window boundary at time {time} (window {window})")]
    WindowOverflow { time: usize, window: usize },

    #[error("coin is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("square root needs a series with constant term 1")]
    BadLeadingCoefficient,

    #[error("series cannot be inverted: zero constant term")]
    NotInvertible,

    #[error("series has a nonzero coefficient below z^{shift}, cannot divide by z^{shift}")]
    NonzeroLowOrder { shift: usize },

    #[error("|gamma(z)| = {modulus:e} at z = {z}: evaluation point is a pole")]
    Pole { z: String, modulus: f64 },

    #[error("theta = {theta} lies outside the arcs where the unit-circle form of f0 holds")]
    BranchAmbiguity { theta: f64 },

    #[error("continued fraction did not settle: successive depths differ by {diff:e}")]
    Divergence { diff: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what}: independent routes disagree ({a} vs {b})")]
    RouteMismatch { what: &'static str, a: f64, b: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
