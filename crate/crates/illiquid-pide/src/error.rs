//! Error types shared across the engine.

use thiserror::Error;

/// Errors produced by model construction, quadrature, the PIDE solver and
/// the hedging machinery.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A model or market parameter violates its construction invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Density evaluation at a point where the Lévy density is singular.
    #[error("Lévy density is singular at z = 0 for this model")]
    SingularDensity,

    /// The zero measure carries no admissibility envelope.
    #[error("the zero Lévy measure has no admissibility envelope")]
    NoEnvelope,

    /// Operation requires a finite-activity measure but got an
    /// infinite-activity one (or vice versa).
    #[error("activity-class mismatch: {0}")]
    ActivityClass(String),

    /// An exponential-moment integral diverges for the given parameters.
    #[error("integrability failure: {0}")]
    Integrability(String),

    /// The jump-displacement fixed point did not contract.
    #[error("fixed-point iteration failed to converge within {max_iter} iterations (residual {residual:e})")]
    ContractionFailure { max_iter: usize, residual: f64 },

    /// Effective volatility denominator reached or crossed zero.
    #[error("effective volatility blow-up: rho * S dphi/dS = {0} >= 1")]
    VolatilityBlowUp(f64),

    /// A jump would take the equilibrium price non-positive.
    #[error("transformed jump undefined: 1 + H/S = {0} <= 0")]
    JumpDomain(f64),

    /// Query point lies outside the interior band of the solution grid.
    #[error("point x = {x} outside interior band [{lo}, {hi}]")]
    OutsideBand { x: f64, lo: f64, hi: f64 },

    /// Scheme assembly produced a row that cannot be solved reliably.
    #[error("scheme instability at time level {level}, node {node}: {detail}")]
    SchemeInstability {
        level: usize,
        node: i32,
        detail: String,
    },

    /// No implied volatility reproduces the given price.
    #[error("price {price} outside the arbitrage band ({lo}, {hi})")]
    NoImpliedVol { price: f64, lo: f64, hi: f64 },

    /// A run configuration violates one or more constraints.
    #[error("configuration rejected:\n{}", .0.join("\n"))]
    ConfigRejected(Vec<String>),

    /// I/O failure while reading configuration or writing reports.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
