//! The `E` and `L` sequence operators.
//!
//! `E(u)_n = sum_{k=0}^n S(n,k) (-1)^k k! u_k` and
//! `L(u)_N = sum_{n=0}^N C(N,n) 2^n u_n`, for sequences over any scalar
//! that is a module over the rationals.

use num_traits::Zero;

use super::{binomial, factorial, sign, stirling2, ExactError, Int, Rat};

/// A value that can be added and scaled by exact rationals.
pub trait Scalar: Clone {
    fn additive_identity() -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Rat);
}

impl Scalar for Rat {
    fn additive_identity() -> Self {
        <Rat as Zero>::zero()
    }

    fn add_scaled(&mut self, other: &Self, c: &Rat) {
        if !c.is_zero() {
            *self += other * c;
        }
    }
}

fn check_len<T>(u: &[T], n: usize) -> Result<(), ExactError> {
    if u.len() < n + 1 {
        return Err(ExactError::SequenceTooShort { len: u.len(), needed: n });
    }
    Ok(())
}

/// `E(u)_0, ..., E(u)_N`.
pub fn seq_e<T: Scalar>(u: &[T], n: usize) -> Result<Vec<T>, ExactError> {
    check_len(u, n)?;
    let weights: Vec<Int> = (0..=n).map(|k| sign(k) * factorial(k as u64)).collect();
    let out = (0..=n)
        .map(|m| {
            let mut acc = T::additive_identity();
            for k in 0..=m {
                let s = stirling2(m, k as i64);
                if s.is_zero() {
                    continue;
                }
                acc.add_scaled(&u[k], &Rat::from(s * &weights[k]));
            }
            acc
        })
        .collect();
    Ok(out)
}

/// `L(u)_N`.
pub fn seq_l<T: Scalar>(u: &[T], n: usize) -> Result<T, ExactError> {
    check_len(u, n)?;
    let mut acc = T::additive_identity();
    for (m, um) in u.iter().take(n + 1).enumerate() {
        let w = binomial(n as u64, m as u64) << m;
        acc.add_scaled(um, &Rat::from(w));
    }
    Ok(acc)
}
