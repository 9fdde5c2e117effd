//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own evaluators.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Borwein's accelerated alternating series:
/// `zeta(s) = eta(s) / (1 - 2^{1-s})` with `n` terms.
pub fn zeta_eta_oracle(s: Complex64, n: usize) -> Complex64 {
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * (d[k] - dn) / dn;
        sum += (-s * ((k + 1) as f64).ln()).exp() * w;
    }
    let eta = -sum;
    let two = (Complex64::new(1.0, 0.0) - s) * 2f64.ln();
    eta / (Complex64::new(1.0, 0.0) - two.exp())
}

pub fn zeta_half_oracle(t: f64) -> Complex64 {
    zeta_eta_oracle(Complex64::new(0.5, t), 220)
}

/// `S(n, k) = (1/k!) sum_i (-1)^{k-i} C(k, i) i^n`.
pub fn stirling2_explicit(n: usize, k: usize) -> BigInt {
    let mut sum = BigInt::zero();
    let mut c = BigInt::one();
    for i in 0..=k {
        let p = num_traits::pow(BigInt::from(i), n);
        if (k - i) % 2 == 0 { sum += &c * p } else { sum -= &c * p }
        c = c * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    sum / fact
}

pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `T_{N,j}` from the defining sum with explicit Stirling numbers.
pub fn tcoef_oracle(n: usize, j: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for m in 2..=n {
        let a = stirling2_explicit(m + 1, j);
        let b = if j >= 1 { stirling2_explicit(m, j - 1) } else { BigInt::zero() };
        let a = if m % 2 == 0 { a } else { -a };
        let b = if j % 2 == 0 { b } else { -b };
        sum += binom(n, m) * (BigInt::one() << m) * (a + b);
    }
    let fact: BigInt = (1..j).map(BigInt::from).product();
    fact * sum
}

/// Akiyama–Tanigawa Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli_oracle(n: usize) -> Rat {
    let mut a: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = Rat::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
    }
    if n == 1 { -a[0].clone() } else { a[0].clone() }
}

/// High-precision reference values computed independently (50-digit
/// arithmetic) for the constants and moment integrals.
pub const C_CONST: f64 = 0.630_330_700_753_906_3;
pub const ZETA2: f64 = 1.644_934_066_848_226_4;
