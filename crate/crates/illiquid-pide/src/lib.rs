//! Pricing and hedging engine for European options in illiquid markets
//! with jumps.
//!
//! The underlying asset follows a Lévy jump-diffusion whose equilibrium
//! price is perturbed by a large trader's hedging demand (the Frey–Stremme
//! feedback mechanism). Option prices solve a fully nonlinear parabolic
//! partial integro-differential equation that this crate discretizes with a
//! semi-implicit upwind finite-difference scheme: differential terms are
//! treated implicitly through a tridiagonal solve, the nonlocal jump
//! integral explicitly from the previous time level.
//!
//! Entry points:
//! - [`levy`] — Merton, Kou and Variance Gamma measures, their quadrature
//!   and martingale drift;
//! - [`feedback`] — large-trader quantities: jump displacement `H`,
//!   effective volatility, transformed jump and drift correction;
//! - [`solver`] — the PIDE time-marcher and price surface;
//! - [`hedging`] — delta and variance-minimizing strategies with tracking
//!   error decomposition;
//! - [`montecarlo`] — independent risk-neutral simulation for the
//!   no-feedback cases;
//! - [`implied_vol`] — Black–Scholes closed form and smile construction;
//! - [`config`], [`commands`], [`validate`] — the CLI layer.
//!
//! Each major capability has a runnable demo under `examples/`.

pub mod commands;
pub mod config;
pub mod error;
pub mod feedback;
pub mod hedging;
pub mod implied_vol;
pub mod levy;
pub mod montecarlo;
pub mod solver;
pub mod validate;

pub use error::{Error, Result};
