use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::gauss::neumaier_sum;
use super::{QuadConfig, QuadError};
use crate::exactnum::{bernoulli, factorial, Rat};

/// Largest `|t|` accepted by the critical-line zeta evaluator.
pub const ZETA_T_MAX: f64 = 1e4;

const STIRLING_TERMS: usize = 12;
const SHIFT_TO: f64 = 15.0;

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("finite rational")
}

/// `B_{2j} / (2j)!` for `j = 1..=MAX_CORRECTIONS`.
fn em_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        (1..=QuadConfig::MAX_CORRECTIONS)
            .map(|j| to_f64(&(bernoulli(2 * j) / Rat::from(factorial(2 * j as u64)))))
            .collect()
    })
}

/// `B_{2j} / (2j (2j-1))`.
fn stirling_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        (1..=STIRLING_TERMS)
            .map(|j| to_f64(&bernoulli(2 * j)) / ((2 * j) * (2 * j - 1)) as f64)
            .collect()
    })
}

/// `|Gamma(1/2 + it)|^2 = 2 pi / (e^{pi t} + e^{-pi t})`, without overflow.
pub fn gamma_abs_sq_half(t: f64) -> f64 {
    let e = (-PI * t.abs()).exp();
    2.0 * PI * e / (1.0 + e * e)
}

/// Euler–Maclaurin `zeta(s)` with `n - 1` explicit terms and `m` Bernoulli
/// corrections.
pub fn zeta_em(s: Complex64, n: usize, m: usize) -> Complex64 {
    assert!(m <= QuadConfig::MAX_CORRECTIONS);
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for k in 1..n {
        let v = (-s * (k as f64).ln()).exp();
        re.push(v.re);
        im.push(v.im);
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    let mut tail = n_pow * nf / (s - 1.0) + n_pow * 0.5;
    let mut poch = s;
    let mut n_term = n_pow / nf;
    for (j, c) in em_coeffs().iter().take(m).enumerate() {
        tail += poch * n_term * *c;
        let a = (2 * j + 1) as f64;
        poch *= (s + a) * (s + a + 1.0);
        n_term /= nf * nf;
    }
    re.push(tail.re);
    im.push(tail.im);
    Complex64::new(neumaier_sum(re), neumaier_sum(im))
}

/// `zeta(1/2 + it)` with main-sum length `max(terms, ceil(1.3|t|))`.
pub fn zeta_half_line_with(t: f64, terms: usize, corrections: usize) -> Result<Complex64, QuadError> {
    if !(t.abs() <= ZETA_T_MAX) {
        return Err(QuadError::ZetaRange(t));
    }
    let n = terms.max((1.3 * t.abs()).ceil() as usize);
    Ok(zeta_em(Complex64::new(0.5, t), n, corrections))
}

pub fn zeta_half_line(t: f64) -> Result<Complex64, QuadError> {
    let cfg = QuadConfig::default();
    zeta_half_line_with(t, cfg.zeta_terms, cfg.zeta_corrections)
}

/// `log Gamma(s)`: the branch continuous in `s` and real on the positive axis.
pub fn complex_log_gamma(s: Complex64) -> Result<Complex64, QuadError> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(QuadError::Pole(s.re));
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_TO {
        shift += z.ln();
        z += 1.0;
    }
    let mut series = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for c in stirling_coeffs() {
        series += p * *c;
        p *= inv2;
    }
    Ok(series - shift)
}

/// `Xi(t) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s)` at `s = 1/2 + it`.
pub fn xi_big(t: f64) -> Result<f64, QuadError> {
    let z = zeta_half_line(t)?;
    let s = Complex64::new(0.5, t);
    let pre = 0.5 * (-0.25 - t * t);
    let log_part = -(s * 0.5) * PI.ln() + complex_log_gamma(s * 0.5)?;
    let v = log_part.exp() * z * pre;
    assert!(v.im.abs() <= 1e-10 * v.re.abs().max(1.0), "Xi({t}) has imaginary part {}", v.im);
    Ok(v.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub t: f64,
    pub zeta_value: Complex64,
    pub abs_sq_weight: f64,
}

pub fn critical_point(t: f64) -> Result<CriticalPoint, QuadError> {
    Ok(CriticalPoint { t, zeta_value: zeta_half_line(t)?, abs_sq_weight: gamma_abs_sq_half(t) })
}
