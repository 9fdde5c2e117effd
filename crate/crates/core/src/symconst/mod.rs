//! Rational linear combinations of the constants that appear in the closed
//! forms: `1`, `log(2 pi)`, Euler's `gamma`, `zeta(j)` and even powers of `pi`.
//!
//! A [`SymVal`] is either in *zeta form* (may contain `zeta(j)`, never `pi^e`)
//! or in *pi form* (may contain `pi^e`, never an even `zeta(2j)`). Values built
//! only from `1`, `log(2 pi)` and `gamma` belong to both.

mod eval;
mod serde_impl;

pub use eval::{
    eval_numeric, eval_numeric_at, pi_approx, symbol_approx, Approx, Decimal, MAX_DIGITS,
};
pub use serde_impl::{fraction_string, parse_fraction};

pub(crate) use eval::refine;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{bernoulli, factorial, Int, Rat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("cannot combine a zeta-form value with a pi-form value")]
    MixedForms,
    #[error("product of two non-rational symbolic values is not supported")]
    NonLinearProduct,
    #[error("odd zeta value zeta({0}) has no pi-power reduction")]
    OddZeta(u32),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("requested {0} digits; supported range is 1..={max}", max = MAX_DIGITS)]
    UnsupportedPrecision(u32),
    #[error("could not reach {0} correct digits within the working-precision ceiling")]
    PrecisionExhausted(u32),
    #[error("malformed fraction {0:?}")]
    BadFraction(String),
}

/// Basis element of the symbolic value space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstSymbol {
    Unit,
    Log2Pi,
    EulerGamma,
    /// `zeta(j)`, `j >= 2`.
    Zeta(u32),
    /// `pi^e`, `e` even and positive.
    PiPow(u32),
}

impl ConstSymbol {
    pub fn zeta(j: u32) -> Result<Self, SymError> {
        if j < 2 {
            return Err(SymError::InvalidSymbol(format!("zeta({j})")));
        }
        Ok(ConstSymbol::Zeta(j))
    }

    pub fn pi_pow(e: u32) -> Result<Self, SymError> {
        if e == 0 || e % 2 == 1 {
            return Err(SymError::InvalidSymbol(format!("pi^{e}")));
        }
        Ok(ConstSymbol::PiPow(e))
    }

    /// Key used in the JSON encoding.
    pub fn name(&self) -> String {
        match self {
            ConstSymbol::Unit => "unit".into(),
            ConstSymbol::Log2Pi => "log2pi".into(),
            ConstSymbol::EulerGamma => "gamma".into(),
            ConstSymbol::Zeta(j) => format!("zeta{j}"),
            ConstSymbol::PiPow(e) => format!("pi{e}"),
        }
    }

    pub fn from_name(name: &str) -> Result<Self, SymError> {
        let bad = || SymError::InvalidSymbol(name.to_string());
        match name {
            "unit" => Ok(ConstSymbol::Unit),
            "log2pi" => Ok(ConstSymbol::Log2Pi),
            "gamma" => Ok(ConstSymbol::EulerGamma),
            _ => {
                if let Some(j) = name.strip_prefix("zeta") {
                    ConstSymbol::zeta(j.parse().map_err(|_| bad())?)
                } else if let Some(e) = name.strip_prefix("pi") {
                    ConstSymbol::pi_pow(e.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }

    fn label(&self) -> String {
        match self {
            ConstSymbol::Unit => String::new(),
            ConstSymbol::Log2Pi => "log(2π)".into(),
            ConstSymbol::EulerGamma => "γ".into(),
            ConstSymbol::Zeta(j) => format!("ζ({j})"),
            ConstSymbol::PiPow(e) => format!("π^{e}"),
        }
    }

    fn display_rank(&self) -> (u8, u32) {
        match self {
            ConstSymbol::Log2Pi => (0, 0),
            ConstSymbol::EulerGamma => (1, 0),
            ConstSymbol::Unit => (2, 0),
            ConstSymbol::Zeta(j) => (3, *j),
            ConstSymbol::PiPow(e) => (3, *e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Only `1`, `log(2 pi)`, `gamma` and odd zeta values.
    Neutral,
    Zeta,
    Pi,
}

/// Finite rational combination of [`ConstSymbol`]s. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymVal {
    terms: BTreeMap<ConstSymbol, Rat>,
}

impl SymVal {
    pub fn zero() -> Self {
        SymVal::default()
    }

    pub fn rational(c: Rat) -> Self {
        SymVal::term(ConstSymbol::Unit, c)
    }

    pub fn term(sym: ConstSymbol, c: Rat) -> Self {
        let mut v = SymVal::zero();
        v.add_term(sym, &c);
        v
    }

    pub fn symbol(sym: ConstSymbol) -> Self {
        SymVal::term(sym, Rat::one())
    }

    pub fn coeff(&self, sym: ConstSymbol) -> Rat {
        self.terms.get(&sym).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ConstSymbol, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value is a plain rational number.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&ConstSymbol::Unit).cloned(),
            _ => None,
        }
    }

    pub fn form(&self) -> Form {
        let mut form = Form::Neutral;
        for sym in self.terms.keys() {
            match sym {
                ConstSymbol::PiPow(_) => form = Form::Pi,
                ConstSymbol::Zeta(j) if j % 2 == 0 => form = Form::Zeta,
                _ => {}
            }
        }
        form
    }

    fn compatible(&self, other: &SymVal) -> bool {
        !matches!(
            (self.form(), other.form()),
            (Form::Zeta, Form::Pi) | (Form::Pi, Form::Zeta)
        )
    }

    fn add_term(&mut self, sym: ConstSymbol, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    fn add_scaled_unchecked(&mut self, other: &SymVal, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (sym, coef) in &other.terms {
            self.add_term(*sym, &(coef * c));
        }
    }

    pub fn try_add(&self, other: &SymVal) -> Result<SymVal, SymError> {
        if !self.compatible(other) {
            return Err(SymError::MixedForms);
        }
        let mut out = self.clone();
        out.add_scaled_unchecked(other, &Rat::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &SymVal) -> Result<SymVal, SymError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Rat) -> SymVal {
        let mut out = SymVal::zero();
        out.add_scaled_unchecked(self, c);
        out
    }

    /// Product of two values; defined only when one factor is rational.
    pub fn try_mul(&self, other: &SymVal) -> Result<SymVal, SymError> {
        if let Some(c) = other.as_rational() {
            Ok(self.scale(&c))
        } else if let Some(c) = self.as_rational() {
            Ok(other.scale(&c))
        } else {
            Err(SymError::NonLinearProduct)
        }
    }

    /// Whether any odd `zeta(j)` carries a nonzero coefficient.
    pub fn has_odd_zeta(&self) -> bool {
        self.terms
            .keys()
            .any(|s| matches!(s, ConstSymbol::Zeta(j) if j % 2 == 1))
    }

    /// Renders with `C = (log(2 pi) - gamma)/2` when the `log(2 pi)` and
    /// `gamma` coefficients are opposite, e.g. `2C - 4/3 + (1/3)ζ(2)`.
    pub fn display_in_c(&self) -> String {
        let a = self.coeff(ConstSymbol::Log2Pi);
        let b = self.coeff(ConstSymbol::EulerGamma);
        if a.is_zero() || a != -b.clone() {
            return self.to_string();
        }
        let mut items: Vec<(String, Rat)> = vec![("C".into(), a * Rat::from_integer(Int::from(2)))];
        items.extend(self.ordered_items().into_iter().filter(|(l, _)| l != "log(2π)" && l != "γ"));
        render(&items)
    }

    fn ordered_items(&self) -> Vec<(String, Rat)> {
        let mut syms: Vec<_> = self.terms.iter().collect();
        syms.sort_by_key(|(s, _)| s.display_rank());
        syms.into_iter().map(|(s, c)| (s.label(), c.clone())).collect()
    }
}

fn render(items: &[(String, Rat)]) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (label, c)) in items.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(label);
        } else if mag.is_integer() {
            out.push_str(&format!("{}{}", mag, label));
        } else {
            out.push_str(&format!("({}){}", mag, label));
        }
    }
    out
}

impl fmt::Display for SymVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.ordered_items()))
    }
}

impl Neg for &SymVal {
    type Output = SymVal;

    fn neg(self) -> SymVal {
        self.scale(&-Rat::one())
    }
}

impl Neg for SymVal {
    type Output = SymVal;

    fn neg(self) -> SymVal {
        -&self
    }
}

/// Panics on mixed forms; use [`SymVal::try_add`] for a checked sum.
impl Add for &SymVal {
    type Output = SymVal;

    fn add(self, rhs: &SymVal) -> SymVal {
        self.try_add(rhs).expect("mixed zeta/pi forms")
    }
}

impl Add for SymVal {
    type Output = SymVal;

    fn add(self, rhs: SymVal) -> SymVal {
        &self + &rhs
    }
}

impl Sub for &SymVal {
    type Output = SymVal;

    fn sub(self, rhs: &SymVal) -> SymVal {
        self.try_sub(rhs).expect("mixed zeta/pi forms")
    }
}

impl Sub for SymVal {
    type Output = SymVal;

    fn sub(self, rhs: SymVal) -> SymVal {
        &self - &rhs
    }
}

impl Mul<&Rat> for &SymVal {
    type Output = SymVal;

    fn mul(self, rhs: &Rat) -> SymVal {
        self.scale(rhs)
    }
}

impl Scalar for SymVal {
    fn additive_identity() -> Self {
        SymVal::zero()
    }

    fn add_scaled(&mut self, other: &Self, c: &Rat) {
        assert!(self.compatible(other), "mixed zeta/pi forms");
        self.add_scaled_unchecked(other, c);
    }
}

/// `C = (log(2 pi) - gamma) / 2`.
pub fn constant_c() -> SymVal {
    let half = Rat::new(Int::one(), Int::from(2));
    &SymVal::term(ConstSymbol::Log2Pi, half.clone()) - &SymVal::term(ConstSymbol::EulerGamma, half)
}

/// Rational `q` with `zeta(2m) = q pi^{2m}`.
pub fn zeta_even_pi_coeff(m: u32) -> Rat {
    let m = m as usize;
    // 2 (2m)! zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m}
    let c = bernoulli(2 * m) * Rat::from(Int::one() << (2 * m))
        / Rat::from(factorial(2 * m as u64) * Int::from(2));
    if m % 2 == 0 {
        -c
    } else {
        c
    }
}

/// Replaces every `zeta(2m)` by its rational multiple of `pi^{2m}`.
pub fn reduce_zeta_even(v: &SymVal) -> Result<SymVal, SymError> {
    let mut out = SymVal::zero();
    for (sym, c) in v.terms() {
        match *sym {
            ConstSymbol::Zeta(j) if j % 2 == 1 => return Err(SymError::OddZeta(j)),
            ConstSymbol::Zeta(j) => {
                out.add_term(ConstSymbol::PiPow(j), &(c * zeta_even_pi_coeff(j / 2)));
            }
            s => out.add_term(s, c),
        }
    }
    Ok(out)
}
