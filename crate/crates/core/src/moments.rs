//! Closed forms: the moment coefficients `T_{N,j}`, the normalized moments
//! `m_N = (-4)^N / (2 pi) * int t^{2N} |Gamma zeta(1/2+it)|^2 dt`, the
//! derivatives `A^{(k)}(1)` of the exponential auto-correlation, the
//! Taylor coefficients `psi_k` of the period function at 1 and `R^{(k)}(1)`.
//!
//! Two routes reach the moments. [`moment_closed`] assembles them from
//! [`tcoef`]; [`g_deriv_at_0`] never touches `tcoef` and instead pushes the
//! sequence of bracketed `A^{(k)}(1)` terms through the `E` and `L`
//! operators. Their exact agreement is the main consistency check.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{
    bernoulli, binomial, factorial, harmonic, seq_e, seq_l, sign, stirling2, ExactError, Int, Rat,
};
use crate::symconst::{self, constant_c, pi_approx, ConstSymbol, Decimal, SymError, SymVal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("T_{{N,j}} is defined for j >= 2 (got j = {0})")]
    TcoefIndex(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `m_N` as an exact symbolic value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedMoment {
    pub n: usize,
    pub value: SymVal,
}

/// `A^{(k)}(1)` as an exact symbolic value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivAtOne {
    pub k: usize,
    pub value: SymVal,
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn assert_even_zeta(v: &SymVal) {
    assert!(!v.has_odd_zeta(), "closed form carries an odd zeta value: {v}");
}

/// `T_{N,j} = (j-1)! sum_{n=2}^N C(N,n) 2^n [(-1)^n S(n+1,j) + (-1)^j S(n,j-1)]`.
///
/// Zero for `j > N` (and so for `N < 2`).
pub fn tcoef(n: usize, j: usize) -> Result<Int, MomentError> {
    if j < 2 {
        return Err(MomentError::TcoefIndex(j));
    }
    if j > n {
        return Ok(Int::zero());
    }
    let mut sum = Int::zero();
    for m in 2..=n {
        let bracket = sign(m) * stirling2(m + 1, j as i64) + sign(j) * stirling2(m, j as i64 - 1);
        sum += binomial(n as u64, m as u64) * (bracket << m);
    }
    Ok(factorial(j as u64 - 1) * sum)
}

/// `zeta(j) B_j / j`; zero for odd `j >= 3`.
pub fn zeta_bernoulli(j: usize) -> SymVal {
    let c = bernoulli(j) / Rat::from_integer(Int::from(j));
    SymVal::term(ConstSymbol::Zeta(j as u32), c)
}

/// `m_N = log(2 pi) - gamma - 4N + (4^N/2 - 1) B_{2N} + sum_{j=2}^{2N} T_{2N,j} zeta(j) B_j / j`.
pub fn moment_closed(n: usize) -> NormalizedMoment {
    let two_n = 2 * n;
    let mut rational = Rat::from_integer(Int::from(-4 * n as i64));
    let four_pow_half = Rat::new(Int::one() << (2 * n), Int::from(2));
    rational += (four_pow_half - Rat::one()) * bernoulli(two_n);
    let mut value = &(&SymVal::symbol(ConstSymbol::Log2Pi) - &SymVal::symbol(ConstSymbol::EulerGamma))
        + &SymVal::rational(rational);
    for j in 2..=two_n {
        let t = tcoef(two_n, j).expect("j >= 2");
        if !t.is_zero() {
            value = &value + &zeta_bernoulli(j).scale(&Rat::from(t));
        }
    }
    assert_even_zeta(&value);
    NormalizedMoment { n, value }
}

/// Decimal value of `M_{2N} = 2 pi (-1)^N 4^{-N} m_N` to `digits` significant
/// digits, with the working precision starting at `precision` digits.
pub fn moment_value_at(n: usize, digits: u32, precision: u32) -> Result<Decimal, MomentError> {
    let m = moment_closed(n).value;
    let factor = Rat::new(sign(n) * Int::from(2), Int::one() << (2 * n));
    let d = symconst::refine(digits, precision, |work| {
        Ok(m.approximate(work)?.mul(&pi_approx(work)).scale(&factor))
    })?;
    Ok(d)
}

/// [`moment_value_at`] with a 30-digit working-precision floor.
pub fn moment_value(n: usize, digits: u32) -> Result<Decimal, MomentError> {
    moment_value_at(n, digits, 30)
}

/// `beta_k = sum_{j=2}^k C(k, j-1) zeta(j) B_j / j`.
pub fn beta(k: usize) -> SymVal {
    (2..=k).fold(SymVal::zero(), |acc, j| {
        &acc + &zeta_bernoulli(j).scale(&Rat::from(binomial(k as u64, j as u64 - 1)))
    })
}

/// `c_k = (1 + [k = 0]) C`.
pub fn seq_c(n: usize) -> Vec<SymVal> {
    let c = constant_c();
    (0..=n)
        .map(|k| if k == 0 { c.scale(&rat(2, 1)) } else { c.clone() })
        .collect()
}

/// `iota_k = 1/(k+1)`.
pub fn seq_iota(n: usize) -> Vec<Rat> {
    (0..=n).map(|k| rat(1, k as i64 + 1)).collect()
}

/// `eta_k = H_{k-1}`.
pub fn seq_eta(n: usize) -> Vec<Rat> {
    (0..=n)
        .map(|k| harmonic(k as i64 - 1).expect("k - 1 >= -1"))
        .collect()
}

pub fn seq_beta(n: usize) -> Vec<SymVal> {
    (0..=n).map(beta).collect()
}

/// The bracket `c_k - (iota_k + eta_k)/2 + beta_k`, so that
/// `A^{(k)}(1) = (-1)^k k! * bracket`.
pub fn a_deriv_bracket(k: usize) -> SymVal {
    let c = if k == 0 { constant_c().scale(&rat(2, 1)) } else { constant_c() };
    let mut rational = -rat(1, 2 * (k as i64 + 1));
    rational -= harmonic(k as i64 - 1).expect("k - 1 >= -1") * rat(1, 2);
    &(&c + &SymVal::rational(rational)) + &beta(k)
}

/// `A^{(k)}(1) = (-1)^k k! ((1+[k=0])C - 1/(2(k+1)) - H_{k-1}/2 + beta_k)`.
pub fn a_deriv_closed(k: usize) -> DerivAtOne {
    let value = a_deriv_bracket(k).scale(&Rat::from(sign(k) * factorial(k as u64)));
    assert_even_zeta(&value);
    DerivAtOne { k, value }
}

/// Taylor coefficient `psi_k` of the period function around 1:
/// `(-1)^k/(k+1) + 2 sum_{j=1}^{k-1} (-1)^{k-j} C(k,j) zeta(j+1) B_{j+1}/(j+1)`.
pub fn psi_coeff(k: usize) -> SymVal {
    let mut value = SymVal::rational(Rat::from(sign(k)) * rat(1, k as i64 + 1));
    for j in 1..k {
        let c = Rat::from(sign(k - j) * binomial(k as u64, j as u64) * Int::from(2));
        value = &value + &zeta_bernoulli(j + 1).scale(&c);
    }
    value
}

/// `R^{(k)}(1) = (-1)^k k! (C - H_{k-1}/2)` for `k >= 1`, and `R(1) = 2C`.
pub fn r_deriv_at_1(k: usize) -> SymVal {
    if k == 0 {
        return constant_c().scale(&rat(2, 1));
    }
    let half_h = harmonic(k as i64 - 1).expect("k >= 1") * rat(1, 2);
    (&constant_c() - &SymVal::rational(half_h)).scale(&Rat::from(sign(k) * factorial(k as u64)))
}

/// `A^{(k)}(1) = -(k!/2) psi_k + R^{(k)}(1)`.
pub fn psi_route_a_deriv(k: usize) -> SymVal {
    let half_fact = Rat::new(factorial(k as u64), Int::from(2));
    &psi_coeff(k).scale(&-half_fact) + &r_deriv_at_1(k)
}

/// `G^{(N)}(0) = (L o E (c - (iota + eta)/2 + beta))_N`.
pub fn g_deriv_at_0(n: usize) -> SymVal {
    let u: Vec<SymVal> = (0..=n).map(a_deriv_bracket).collect();
    let e = seq_e(&u, n).expect("length n + 1");
    let value = seq_l(&e, n).expect("length n + 1");
    assert_even_zeta(&value);
    value
}
