//! The auto-correlation `A(v)`, its derivatives at 1, and `G(v) = e^v A(e^{2v})`.
//!
//! Write `h(x) = 1/(e^x - 1)` and `g(x) = 1/x - h(x)`. Near zero both
//! `g` and the derivative factor `(-1)^k k!/x - x^k h^{(k)}(x)` are bounded,
//! but the naive formulas subtract two huge numbers; below `x = 1` they are
//! evaluated from the Laurent–Bernoulli expansion of `h` instead, where the
//! singular parts cancel term by term.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::gauss::{integrate, uniform_panels};
use super::{QuadConfig, QuadError};
use crate::exactnum::{alpha, bernoulli, factorial, Rat};

/// Largest derivative order accepted by [`h_deriv`].
pub const H_DERIV_MAX: usize = 20;
/// Largest derivative order accepted by [`a_deriv_numeric`].
pub const A_DERIV_MAX: usize = 8;

const SERIES_TERMS: usize = 100;
const SERIES_BELOW: f64 = 1.0;
const DERIV_CUTOFF: f64 = 80.0;

/// `B_n / n!` for `n < SERIES_TERMS`.
fn bernoulli_over_factorial() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        (0..SERIES_TERMS)
            .map(|n| (bernoulli(n) / Rat::from(factorial(n as u64))).to_f64().expect("finite"))
            .collect()
    })
}

/// `alpha_{k,p}` as floats, indexed `[k][p]`.
fn alpha_table() -> &'static [Vec<f64>] {
    static C: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    C.get_or_init(|| {
        (0..=H_DERIV_MAX)
            .map(|k| (0..=k).map(|p| alpha(k, p).to_f64().expect("finite")).collect())
            .collect()
    })
}

/// `(m)(m-1)...(m-k+1)`.
fn falling(m: usize, k: usize) -> f64 {
    (0..k).map(|i| (m - i) as f64).product()
}

fn signed_factorial(k: usize) -> f64 {
    let f: f64 = (1..=k).map(|i| i as f64).product();
    if k % 2 == 0 {
        f
    } else {
        -f
    }
}

/// `sum_{n > k} (B_n/n!) (n-1)!/(n-1-k)! x^{n-1}`: the regular part of
/// `x^k h^{(k)}(x)`.
fn regular_part(k: usize, x: f64) -> f64 {
    let b = bernoulli_over_factorial();
    let mut sum = 0.0;
    let mut xp = x.powi(k as i32);
    for (n, bn) in b.iter().enumerate().skip(k + 1) {
        if *bn != 0.0 {
            sum += bn * falling(n - 1, k) * xp;
        }
        xp *= x;
    }
    sum
}

fn check_h_args(k: usize, x: f64) -> Result<(), QuadError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(QuadError::NonPositive(x));
    }
    if k > H_DERIV_MAX {
        return Err(QuadError::TooLarge { what: "derivative order", got: k, max: H_DERIV_MAX });
    }
    Ok(())
}

/// `h^{(k)}(x)` from the Laurent–Bernoulli series (accurate for `x < 2`).
pub fn h_deriv_series(k: usize, x: f64) -> Result<f64, QuadError> {
    check_h_args(k, x)?;
    Ok(signed_factorial(k) / x.powi(k as i32 + 1) + regular_part(k, x) / x.powi(k as i32))
}

/// `h^{(k)}(x) = sum_p alpha_{k,p} e^{px} / (e^x - 1)^{p+1}`.
pub fn h_deriv_closed(k: usize, x: f64) -> Result<f64, QuadError> {
    check_h_args(k, x)?;
    let one_minus = -(-x).exp_m1();
    let q = 1.0 / one_minus;
    let h = (-x).exp() * q;
    if k == 0 {
        return Ok(h);
    }
    let mut sum = 0.0;
    let mut qp = 1.0;
    for a in &alpha_table()[k][1..] {
        qp *= q;
        sum += a * qp;
    }
    Ok(h * sum)
}

/// `k`-th derivative of `1/(e^x - 1)`.
pub fn h_deriv(k: usize, x: f64) -> Result<f64, QuadError> {
    if x < SERIES_BELOW {
        h_deriv_series(k, x)
    } else {
        h_deriv_closed(k, x)
    }
}

/// `(-1)^k k!/x - x^k h^{(k)}(x)`; for `k = 0` this is `g(x)`.
pub fn first_factor(k: usize, x: f64) -> Result<f64, QuadError> {
    check_h_args(k, x)?;
    if x < SERIES_BELOW {
        Ok(-regular_part(k, x))
    } else {
        Ok(signed_factorial(k) / x - x.powi(k as i32) * h_deriv_closed(k, x)?)
    }
}

fn g(x: f64) -> f64 {
    first_factor(0, x).expect("positive quadrature node")
}

/// `A(v) = int_0^inf g(xv) g(x) dx`, truncated at `X = 50/min(v,1)` with
/// the `1/(vX)` tail added back.
pub fn a_numeric(v: f64, cfg: &QuadConfig) -> Result<f64, QuadError> {
    cfg.validate()?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(QuadError::NonPositive(v));
    }
    if !(1e-4..=1e4).contains(&v) {
        return Err(QuadError::Range { what: "v", value: v });
    }
    let cutoff = 50.0 / v.min(1.0);
    let width = 0.5 / v.max(1.0);
    let panels = uniform_panels(0.0, cutoff, width);
    let body = cfg.install(|| integrate(|x| g(x * v) * g(x), &panels, cfg.panel_order))?;
    Ok(body + 1.0 / (v * cutoff))
}

/// `A^{(k)}(1) = int_0^inf ((-1)^k k!/x - x^k h^{(k)}(x)) g(x) dx`.
pub fn a_deriv_numeric(k: usize, cfg: &QuadConfig) -> Result<f64, QuadError> {
    cfg.validate()?;
    if k > A_DERIV_MAX {
        return Err(QuadError::TooLarge { what: "derivative order k", got: k, max: A_DERIV_MAX });
    }
    let panels = uniform_panels(0.0, DERIV_CUTOFF, 0.5);
    let body = cfg.install(|| {
        integrate(
            |x| first_factor(k, x).expect("positive quadrature node") * g(x),
            &panels,
            cfg.panel_order,
        )
    })?;
    Ok(body + signed_factorial(k) / DERIV_CUTOFF)
}

/// `G(v) = e^v A(e^{2v})`.
pub fn g_numeric(v: f64, cfg: &QuadConfig) -> Result<f64, QuadError> {
    Ok(v.exp() * a_numeric((2.0 * v).exp(), cfg)?)
}
