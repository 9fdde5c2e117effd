//! Exact integer and rational combinatorics.
//!
//! Bernoulli numbers (with `B_1 = -1/2`), Stirling numbers of both kinds,
//! binomials, harmonic numbers and the `K_{k,j}` / `alpha_{k,p}`
//! coefficients. Everything here is exact; there is no floating point in
//! this module.
//!
//! The memo tables are shared process-wide. Rows are appended under a
//! write lock and never modified afterwards, so readers always observe
//! immutable data.

mod series;
mod seq;
mod table;

pub use series::{series_compose_one_minus_exp, PowerSeries};
pub use seq::{seq_e, seq_l, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use table::{Memo, Triangle};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("harmonic number H_{0} is undefined (index must be >= -1)")]
    HarmonicIndex(i64),
    #[error("K_{{{k},{j}}} requires 1 <= k and 0 <= j <= k")]
    KcoefRange { k: i64, j: i64 },
    #[error("sequence of length {len} is too short for index {needed}")]
    SequenceTooShort { len: usize, needed: usize },
    #[error("composition needs an inner series with zero constant term")]
    NonZeroConstantTerm,
}

static STIRLING2: Triangle = Triangle::new(|prev, _n, k| {
    // S(n+1,k) = S(n,k-1) + k S(n,k)
    let left = if k == 0 { Int::zero() } else { prev[k - 1].clone() };
    let here = prev.get(k).cloned().unwrap_or_default();
    left + here * Int::from(k)
});

static STIRLING1: Triangle = Triangle::new(|prev, n, k| {
    // s(n+1,k) = s(n,k-1) - n s(n,k)
    let left = if k == 0 { Int::zero() } else { prev[k - 1].clone() };
    let here = prev.get(k).cloned().unwrap_or_default();
    left - here * Int::from(n)
});

static BINOMIAL: Triangle = Triangle::new(|prev, _n, k| {
    let left = if k == 0 { Int::zero() } else { prev[k - 1].clone() };
    let here = prev.get(k).cloned().unwrap_or_default();
    left + here
});

static BERNOULLI: Memo<Rat> = Memo::new(|done: &[Rat]| {
    let n = done.len();
    if n == 0 {
        return Rat::one();
    }
    // sum_{k=0}^{n} C(n+1,k) B_k = 0
    let mut acc = Rat::zero();
    for (k, b) in done.iter().enumerate() {
        if !b.is_zero() {
            acc += Rat::from(binomial(n as u64 + 1, k as u64)) * b;
        }
    }
    -acc / Rat::from_integer(Int::from(n + 1))
});

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rat {
    BERNOULLI.get(n)
}

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    BINOMIAL.get(n as usize, k as usize)
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

/// Stirling number of the second kind `S(n, k)`; zero outside `0 <= k <= n`.
pub fn stirling2(n: usize, k: i64) -> Int {
    if k < 0 || k as usize > n {
        return Int::zero();
    }
    STIRLING2.get(n, k as usize)
}

/// Signed Stirling number of the first kind `s(n, k)`; zero outside `0 <= k <= n`.
pub fn stirling1(n: usize, k: i64) -> Int {
    if k < 0 || k as usize > n {
        return Int::zero();
    }
    STIRLING1.get(n, k as usize)
}

/// Harmonic number with `H_{-1} = H_0 = 0`.
pub fn harmonic(k: i64) -> Result<Rat, ExactError> {
    if k < -1 {
        return Err(ExactError::HarmonicIndex(k));
    }
    Ok((1..=k.max(0)).fold(Rat::zero(), |acc, j| {
        acc + Rat::new(Int::one(), Int::from(j))
    }))
}

/// `K_{k,j} = C(k,j) B_{k-j} / k + [j = k-1]`.
pub fn kcoef(k: i64, j: i64) -> Result<Rat, ExactError> {
    if k < 1 || j < 0 || j > k {
        return Err(ExactError::KcoefRange { k, j });
    }
    let (ku, ju) = (k as u64, j as u64);
    let mut value = Rat::new(binomial(ku, ju), Int::from(ku)) * bernoulli((ku - ju) as usize);
    if j == k - 1 {
        value += Rat::one();
    }
    Ok(value)
}

/// `alpha_{k,p} = (-1)^p S(k,p) p!` for `1 <= p <= k`, zero otherwise.
pub fn alpha(k: usize, p: usize) -> Int {
    if p == 0 || p > k {
        return Int::zero();
    }
    let v = stirling2(k, p as i64) * factorial(p as u64);
    if p % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `B_N(1/2)` through the polynomial sum `sum_n C(N,n) B_n 2^{n-N}`.
pub fn bernoulli_poly_half_by_sum(n: usize) -> Rat {
    let total = (0..=n).fold(Rat::zero(), |acc, k| {
        acc + Rat::from(binomial(n as u64, k as u64) * (Int::one() << k)) * bernoulli(k)
    });
    total / Rat::from(Int::one() << n)
}

/// `B_N(1/2)` through the closed form `(2^{1-N} - 1) B_N`.
pub fn bernoulli_poly_half_closed(n: usize) -> Rat {
    let two_pow = Rat::from(Int::one() << n);
    (Rat::from_integer(Int::from(2)) / two_pow - Rat::one()) * bernoulli(n)
}

/// `B_N(1/2)`, computed by both routes which must agree.
pub fn bernoulli_poly_half(n: usize) -> Rat {
    let by_sum = bernoulli_poly_half_by_sum(n);
    let closed = bernoulli_poly_half_closed(n);
    assert_eq!(by_sum, closed, "B_{n}(1/2): polynomial sum and closed form disagree");
    by_sum
}

/// `(-1)^n` as an exact integer.
pub(crate) fn sign(n: usize) -> Int {
    if n % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    /// Akiyama–Tanigawa transform; produces B_n with B_1 = +1/2.
    fn akiyama_tanigawa(n: usize) -> Rat {
        let mut a: Vec<Rat> = (0..=n).map(|m| r(1, m as i64 + 1)).collect();
        for m in 0..=n {
            a[m] = r(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = Rat::from_integer(Int::from(j)) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(3), r(0, 1));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(6), r(1, 42));
        assert_eq!(bernoulli(12), r(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in 0..=40 {
            let mut expected = akiyama_tanigawa(n);
            if n == 1 {
                expected = -expected;
            }
            assert_eq!(bernoulli(n), expected, "n = {n}");
        }
    }

    #[test]
    fn poly_half() {
        assert_eq!(bernoulli_poly_half(0), r(1, 1));
        assert_eq!(bernoulli_poly_half(1), r(0, 1));
        assert_eq!(bernoulli_poly_half(2), r(-1, 12));
        for n in 0..=25 {
            assert_eq!(bernoulli_poly_half_by_sum(n), bernoulli_poly_half_closed(n));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), Int::from(7));
        assert_eq!(stirling2(5, 3), Int::from(25));
        assert_eq!(stirling1(4, 2), Int::from(11));
        assert_eq!(stirling1(4, 1), Int::from(-6));
        assert_eq!(stirling1(5, 2), Int::from(-50));
        for n in 0..20 {
            assert_eq!(stirling2(n, n as i64), Int::one());
            assert_eq!(stirling1(n, n as i64), Int::one());
            assert!(stirling2(n, n as i64 + 1).is_zero());
            assert!(stirling2(n, -1).is_zero());
            assert!(stirling1(n, -3).is_zero());
        }
        assert!(stirling2(3, 0).is_zero());
        assert_eq!(stirling2(0, 0), Int::one());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(-1).unwrap(), r(0, 1));
        assert_eq!(harmonic(0).unwrap(), r(0, 1));
        assert_eq!(harmonic(1).unwrap(), r(1, 1));
        assert_eq!(harmonic(4).unwrap(), r(25, 12));
        assert_eq!(harmonic(-2), Err(ExactError::HarmonicIndex(-2)));
    }

    #[test]
    fn kcoef_values() {
        for k in 1..15 {
            assert_eq!(kcoef(k + 1, k).unwrap(), r(1, 2));
            assert_eq!(kcoef(k + 1, k + 1).unwrap(), r(1, k + 1));
        }
        assert_eq!(kcoef(4, 1).unwrap(), r(0, 1));
        assert!(kcoef(3, 4).is_err());
        assert!(kcoef(0, 0).is_err());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(1, 1), Int::from(-1));
        assert_eq!(alpha(4, 2), Int::from(14));
        assert_eq!(alpha(3, 3), Int::from(-6));
        assert!(alpha(3, 0).is_zero());
        assert!(alpha(3, 4).is_zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Int::from(10));
        assert_eq!(binomial(0, 0), Int::one());
        assert!(binomial(2, 3).is_zero());
        assert_eq!(binomial(40, 20), "137846528820".parse::<Int>().unwrap());
    }
}
