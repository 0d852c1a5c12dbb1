use thiserror::Error;

/// Errors raised by the numerical kernel and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({c1}, {c2}) lies outside the domain of surface `{surface}`")]
    Domain { surface: String, c1: f64, c2: f64 },

    #[error("direction vector is zero")]
    ZeroVector,

    #[error("slope metric is not strongly convex here: b = {b} (needs b < 1/2)")]
    ConvexityViolation { b: f64 },

    #[error("ratio s = {s} is outside the admissible range s < 1/2")]
    Range { s: f64 },

    #[error("limacon with c = {c}, a = {a} is not strongly convex (needs c > 2a)")]
    NonConvexLimacon { c: f64, a: f64 },

    #[error("spray denominator (2b^2+1)alpha - 3beta = {value} is degenerate")]
    DegenerateDenominator { value: f64 },

    #[error("initial state is not unit speed (F = {speed})")]
    NotUnitSpeed { speed: f64 },

    #[error("no unit direction at u = {u} has Clairaut constant {nu} (|nu| <= {max})")]
    Unattainable { u: f64, nu: f64, max: f64 },

    #[error("Clairaut constant {nu} is hit more than once on the requested branch")]
    AmbiguousBranch { nu: f64 },

    #[error("adaptive quadrature did not reach tolerance (estimate {error:e} after {intervals} intervals)")]
    QuadratureFailure { error: f64, intervals: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
