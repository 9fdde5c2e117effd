//! Floating-point verification layer.
//!
//! Everything here runs in `f64` with compensated summation. The quadrature
//! engine is composite Gauss–Legendre over a fixed panel decomposition;
//! panels may be evaluated on a rayon pool, but the reduction is always
//! performed sequentially in panel order, so results do not depend on the
//! number of worker threads.

mod autocorr;
mod gauss;
mod special;
mod verify;

pub use autocorr::{
    a_deriv_numeric, a_numeric, first_factor, g_numeric, h_deriv, h_deriv_closed, h_deriv_series,
    A_DERIV_MAX, H_DERIV_MAX,
};
pub use gauss::{gauss_legendre, integrate, moment_panels, neumaier_sum, uniform_panels, Panel};
pub use special::{
    complex_log_gamma, critical_point, gamma_abs_sq_half, xi_big, zeta_em, zeta_half_line,
    zeta_half_line_with, CriticalPoint, ZETA_T_MAX,
};
pub use verify::{
    cotangent_sum, moment_quadrature, moment_report, moment_tail_bound, ramanujan_lhs,
    ramanujan_identity_residual, reciprocity_residual, MomentReport, TAIL_C0, TAIL_C1,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid quadrature configuration: {0}")]
    Config(String),
    #[error("t = {0} is outside the supported range |t| <= {ZETA_T_MAX}")]
    ZetaRange(f64),
    #[error("log Gamma has a pole at s = {0}")]
    Pole(f64),
    #[error("{what} = {value} is outside the supported range")]
    Range { what: &'static str, value: f64 },
    #[error("argument must be positive (got {0})")]
    NonPositive(f64),
    #[error("{what} = {got} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, got: usize, max: usize },
    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: u64, k: u64 },
    #[error("tail bound {bound:e} at T = {cutoff} exceeds tol/10 = {limit:e}")]
    TailTooLarge { bound: f64, cutoff: f64, limit: f64 },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Moment(#[from] crate::moments::MomentError),
}

/// Quadrature and evaluator settings.
///
/// `panel_count` panels cover `[0, min(T, 50)]`; beyond that panels are
/// twice as wide. `threads = 0` uses the global rayon pool.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadConfig {
    pub cutoff: f64,
    pub panel_order: usize,
    pub panel_count: usize,
    pub zeta_terms: usize,
    pub zeta_corrections: usize,
    pub tol: f64,
    pub threads: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            cutoff: 120.0,
            panel_order: 20,
            panel_count: 100,
            zeta_terms: 20,
            zeta_corrections: 8,
            tol: 1e-8,
            threads: 0,
        }
    }
}

impl QuadConfig {
    pub const MAX_CORRECTIONS: usize = 30;
    pub const MAX_PANEL_ORDER: usize = 128;

    pub fn validate(&self) -> Result<(), QuadError> {
        let bad = |m: &str| Err(QuadError::Config(m.to_string()));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol must be a positive finite number");
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return bad("cutoff T must be a positive finite number");
        }
        if self.cutoff > ZETA_T_MAX {
            return bad("cutoff T exceeds the zeta evaluator's range");
        }
        if self.panel_order < 8 || self.panel_order > Self::MAX_PANEL_ORDER {
            return bad("panel order must lie in 8..=128");
        }
        if self.panel_count == 0 {
            return bad("panel count must be positive");
        }
        if self.zeta_terms == 0 {
            return bad("zeta main-sum length must be positive");
        }
        if self.zeta_corrections == 0 || self.zeta_corrections > Self::MAX_CORRECTIONS {
            return bad("zeta correction count must lie in 1..=30");
        }
        Ok(())
    }

    /// Runs `op` on a pool with `threads` workers (or the global pool).
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> Result<R, QuadError> {
        gauss::with_threads(self.threads, op)
    }
}
