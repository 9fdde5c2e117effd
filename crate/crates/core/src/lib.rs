//! Exact closed forms for the weighted moments of `|Gamma(s) zeta(s)|^2`
//! on the critical line and for the derivatives at 1 of the exponential
//! auto-correlation function, together with an independent quadrature
//! layer that checks them numerically.

pub mod cli;
pub mod exactnum;
pub mod moments;
pub mod numquad;
pub mod symconst;
