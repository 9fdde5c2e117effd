use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{factorial, ExactError, Int, Rat};

/// Truncated power series `sum_{n <= order} c_n t^n` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Builds a series of the given order, padding with zeros or truncating.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `1 - e^{-t}` truncated at `order`.
    pub fn one_minus_exp_neg(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| {
                if n == 0 {
                    Rat::zero()
                } else {
                    let c = Rat::new(Int::one(), factorial(n as u64));
                    if n % 2 == 1 {
                        c
                    } else {
                        -c
                    }
                }
            })
            .collect();
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    /// `self(inner(t))`, truncated at the smaller of the two orders.
    ///
    /// The inner series must have a zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries, ExactError> {
        if !inner.coeffs[0].is_zero() {
            return Err(ExactError::NonZeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = PowerSeries::new(inner.coeffs.clone(), order);
        // Horner; terms of degree > order vanish because inner(0) = 0.
        let mut acc = PowerSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        PowerSeries { coeffs }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

/// Expansion of `t -> F(1 - e^{-t})` to the order of `f`.
pub fn series_compose_one_minus_exp(f: &PowerSeries) -> PowerSeries {
    f.compose(&PowerSeries::one_minus_exp_neg(f.order()))
        .expect("1 - e^{-t} has zero constant term")
}
