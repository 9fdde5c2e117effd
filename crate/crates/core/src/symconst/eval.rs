//! High-precision numerical evaluation of symbolic values.
//!
//! Constants are generated on demand in fixed-point big-integer arithmetic
//! (Machin for `pi`, `atanh` series for the logarithms, Brent–McMillan for
//! `gamma`). Values travel as [`Approx`]: an exact rational together with a
//! rigorous bound on its distance to the true number.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{zeta_even_pi_coeff, ConstSymbol, SymError, SymVal};
use crate::exactnum::{Int, Rat};

/// Largest number of significant digits [`eval_numeric`] will produce.
pub const MAX_DIGITS: u32 = 1000;

/// Extra fixed-point digits carried while generating constants.
const GUARD: u32 = 12;

/// Default floor on the working precision, in decimal digits.
const DEFAULT_PRECISION: u32 = 30;

fn pow10(e: u32) -> Int {
    num_traits::pow(Int::from(10), e as usize)
}

fn pow10_rat(e: i64) -> Rat {
    if e >= 0 {
        Rat::from(pow10(e as u32))
    } else {
        Rat::new(Int::one(), pow10((-e) as u32))
    }
}

/// A rational approximation with an absolute error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approx {
    value: Rat,
    err: Rat,
}

impl Approx {
    pub fn exact(value: Rat) -> Self {
        Approx { value, err: Rat::zero() }
    }

    pub fn new(value: Rat, err: Rat) -> Self {
        Approx { value, err: err.abs() }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn err(&self) -> &Rat {
        &self.err
    }

    pub fn add(&self, other: &Approx) -> Approx {
        Approx { value: &self.value + &other.value, err: &self.err + &other.err }
    }

    pub fn scale(&self, c: &Rat) -> Approx {
        Approx { value: &self.value * c, err: &self.err * c.abs() }
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        let err = self.value.abs() * &other.err + other.value.abs() * &self.err + &self.err * &other.err;
        Approx { value: &self.value * &other.value, err }
    }

    /// Rounds the value to a multiple of `10^-digits`, widening the bound.
    pub fn rounded(&self, digits: u32) -> Approx {
        let scale = Rat::from(pow10(digits));
        let value = (&self.value * &scale).round() / scale;
        let err = &self.err + (&value - &self.value).abs();
        Approx { value, err }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// Rounds to `sig` significant digits if the error bound allows it.
    pub fn to_decimal(&self, sig: u32) -> Option<Decimal> {
        if self.value.is_zero() {
            return self.err.is_zero().then(Decimal::zero);
        }
        let margin = Rat::from(pow10(sig + 1));
        if &self.err * margin >= self.value.abs() {
            return None;
        }
        Some(Decimal::round_rational(&self.value, sig))
    }
}

/// A decimal number `mantissa * 10^exponent` carrying a fixed number of
/// significant digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mantissa: Int,
    exponent: i64,
}

impl Decimal {
    pub fn zero() -> Self {
        Decimal { mantissa: Int::zero(), exponent: 0 }
    }

    /// Round-half-away-from-zero to `sig` significant digits.
    pub fn round_rational(x: &Rat, sig: u32) -> Decimal {
        assert!(sig >= 1);
        if x.is_zero() {
            return Decimal::zero();
        }
        let ax = x.abs();
        let mut e = ax.numer().to_string().len() as i64 - ax.denom().to_string().len() as i64;
        while pow10_rat(e) > ax {
            e -= 1;
        }
        while pow10_rat(e + 1) <= ax {
            e += 1;
        }
        let shift = sig as i64 - 1 - e;
        let mut mantissa = (x * pow10_rat(shift)).round().to_integer();
        let mut exponent = -shift;
        if mantissa.abs() == pow10(sig) {
            mantissa /= Int::from(10);
            exponent += 1;
        }
        Decimal { mantissa, exponent }
    }

    pub fn mantissa(&self) -> &Int {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rat {
        Rat::from(self.mantissa.clone()) * pow10_rat(self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return f.write_str("0");
        }
        let digits = self.mantissa.abs().to_string();
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let len = digits.len() as i64;
        // digits before the decimal point
        let point = len + self.exponent;
        if self.exponent >= 0 && point <= 21 {
            write!(f, "{sign}{digits}{}", "0".repeat(self.exponent as usize))
        } else if point > 0 && point <= 21 {
            let (int, frac) = digits.split_at(point as usize);
            write!(f, "{sign}{int}.{frac}")
        } else if point <= 0 && point > -6 {
            write!(f, "{sign}0.{}{digits}", "0".repeat((-point) as usize))
        } else {
            let (lead, rest) = digits.split_at(1);
            if rest.is_empty() {
                write!(f, "{sign}{lead}e{}", point - 1)
            } else {
                write!(f, "{sign}{lead}.{rest}e{}", point - 1)
            }
        }
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct Constants {
    digits: u32,
    pi: Approx,
    log2pi: Approx,
    gamma: Approx,
}

static CONSTANTS: Mutex<Vec<Arc<Constants>>> = Mutex::new(Vec::new());

fn constants(digits: u32) -> Arc<Constants> {
    let mut cache = CONSTANTS.lock().expect("constant cache poisoned");
    if let Some(c) = cache.iter().find(|c| c.digits >= digits) {
        return Arc::clone(c);
    }
    let digits = digits.div_ceil(64) * 64;
    let c = Arc::new(compute_constants(digits));
    cache.push(Arc::clone(&c));
    c
}

/// `sum_k (-1)^k s / ((2k+1) m^{2k+1})` when `alternating`, else without signs.
fn arctan_inv(m: u32, s: &Int, alternating: bool) -> Int {
    let m2 = Int::from(m) * Int::from(m);
    let mut power = s / Int::from(m);
    let mut sum = Int::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / Int::from(2 * k + 1);
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &m2;
        k += 1;
    }
    sum
}

/// `atanh(y)` for a fixed-point `y` with `|y|` well below 1.
fn atanh_fixed(y: &Int, s: &Int) -> Int {
    let y2 = y * y / s;
    let mut power = y.clone();
    let mut sum = Int::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / Int::from(2 * k + 1);
        power = power * &y2 / s;
        k += 1;
    }
    sum
}

/// Brent–McMillan: `gamma = U/V - log n` with error about `pi e^{-4n}`.
fn euler_gamma_fixed(s: &Int, fixed_digits: u32, ln2: &Int) -> Int {
    let needed = (fixed_digits as f64 * std::f64::consts::LN_10 + 10.0) / 4.0;
    let e = needed.log2().ceil().max(1.0) as u32;
    let n = Int::one() << e;
    let ln_n = ln2 * Int::from(e);
    let n2 = &n * &n;
    let mut a = -ln_n;
    let mut b = s.clone();
    let mut u = a.clone();
    let mut v = b.clone();
    let mut k = 1u64;
    loop {
        let kk = Int::from(k);
        b = b * &n2 / (&kk * &kk);
        a = (a * &n2 / &kk + &b) / &kk;
        if b.is_zero() && a.is_zero() && kk > n {
            break;
        }
        u += &a;
        v += &b;
        k += 1;
    }
    u * s / v
}

fn compute_constants(digits: u32) -> Constants {
    let fixed = digits + GUARD;
    let s = pow10(fixed);
    let pi = Int::from(16) * arctan_inv(5, &s, true) - Int::from(4) * arctan_inv(239, &s, true);
    let ln2 = Int::from(2) * arctan_inv(3, &s, false);
    let ln3_2 = Int::from(2) * arctan_inv(5, &s, false);
    let ln6 = Int::from(2) * &ln2 + ln3_2;
    let three = Int::from(3) * &s;
    let y = (&pi - &three) * &s / (&pi + &three);
    let log2pi = ln6 + Int::from(2) * atanh_fixed(&y, &s);
    let gamma = euler_gamma_fixed(&s, fixed, &ln2);

    let err = Rat::new(Int::one(), pow10(digits));
    let approx = |x: Int| Approx::new(Rat::new(x, s.clone()), err.clone());
    Constants { digits, pi: approx(pi), log2pi: approx(log2pi), gamma: approx(gamma) }
}

/// `pi` to within `10^-work`.
pub fn pi_approx(work: u32) -> Approx {
    constants(work).pi.clone()
}

fn pi_power(e: u32, work: u32) -> Approx {
    let pi = pi_approx(work + GUARD);
    let mut acc = Approx::exact(Rat::one());
    for _ in 0..e {
        acc = acc.mul(&pi).rounded(work + GUARD);
    }
    acc
}

/// Approximation of a single basis constant at roughly `work` digits.
pub fn symbol_approx(sym: ConstSymbol, work: u32) -> Result<Approx, SymError> {
    Ok(match sym {
        ConstSymbol::Unit => Approx::exact(Rat::one()),
        ConstSymbol::Log2Pi => constants(work).log2pi.clone(),
        ConstSymbol::EulerGamma => constants(work).gamma.clone(),
        ConstSymbol::PiPow(e) => pi_power(e, work),
        ConstSymbol::Zeta(j) if j % 2 == 1 => return Err(SymError::OddZeta(j)),
        ConstSymbol::Zeta(j) => pi_power(j, work).scale(&zeta_even_pi_coeff(j / 2)),
    })
}

impl SymVal {
    /// Sum of the coefficients times their constants, each constant known
    /// to about `work` digits.
    pub fn approximate(&self, work: u32) -> Result<Approx, SymError> {
        let mut acc = Approx::exact(Rat::zero());
        for (sym, c) in self.terms() {
            acc = acc.add(&symbol_approx(*sym, work)?.scale(c));
        }
        Ok(acc)
    }
}

/// Evaluates `v` to `digits` significant digits, with the working precision
/// starting at `precision` digits and raised until the error bound suffices.
pub fn eval_numeric_at(v: &SymVal, digits: u32, precision: u32) -> Result<Decimal, SymError> {
    refine(digits, precision, |work| v.approximate(work))
}

/// [`eval_numeric_at`] with the default working-precision floor.
pub fn eval_numeric(v: &SymVal, digits: u32) -> Result<Decimal, SymError> {
    eval_numeric_at(v, digits, DEFAULT_PRECISION)
}

/// Repeats `approx` at doubling working precision until `digits` significant
/// digits are certified.
pub(crate) fn refine<F>(digits: u32, precision: u32, approx: F) -> Result<Decimal, SymError>
where
    F: Fn(u32) -> Result<Approx, SymError>,
{
    if digits == 0 || digits > MAX_DIGITS {
        return Err(SymError::UnsupportedPrecision(digits));
    }
    let mut work = digits.max(precision) + 10;
    loop {
        if let Some(d) = approx(work)?.to_decimal(digits) {
            return Ok(d);
        }
        work *= 2;
        if work > 8 * MAX_DIGITS {
            return Err(SymError::PrecisionExhausted(digits));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symconst::constant_c;

    // Reference digits from an independent multiprecision library.
    const PI_50: &str = "3.1415926535897932384626433832795028841971693993751";
    const GAMMA_50: &str = "0.57721566490153286060651209008240243104215933593992";
    const LOG2PI_50: &str = "1.8378770664093454835606594728112352797227949472756";

    #[test]
    fn constants_match_reference_digits() {
        assert_eq!(eval_numeric(&SymVal::symbol(ConstSymbol::PiPow(2)), 3).unwrap().to_string(), "9.87");
        let d = |s| eval_numeric(&SymVal::symbol(s), 50).unwrap().to_string();
        assert_eq!(d(ConstSymbol::EulerGamma), GAMMA_50);
        assert_eq!(d(ConstSymbol::Log2Pi), LOG2PI_50);
        let pi = refine(50, 30, |w| Ok(pi_approx(w))).unwrap();
        assert_eq!(pi.to_string(), PI_50);
    }

    #[test]
    fn high_precision_is_consistent() {
        let lo = eval_numeric(&SymVal::symbol(ConstSymbol::EulerGamma), 40).unwrap();
        let hi = eval_numeric_at(&SymVal::symbol(ConstSymbol::EulerGamma), 300, 300).unwrap();
        assert_eq!(lo, Decimal::round_rational(&hi.to_rational(), 40));
    }

    #[test]
    fn c_digits() {
        assert_eq!(eval_numeric(&constant_c(), 7).unwrap().to_string(), "0.6303307");
        let a1 = &constant_c().scale(&Rat::from_integer(2.into())) - &SymVal::rational(Rat::new(1.into(), 2.into()));
        assert_eq!(eval_numeric(&a1, 7).unwrap().to_string(), "0.7606614");
        assert_eq!(eval_numeric(&SymVal::symbol(ConstSymbol::Zeta(2)), 10).unwrap().to_string(), "1.644934067");
    }

    #[test]
    fn unsupported_precision() {
        let v = constant_c();
        assert_eq!(eval_numeric(&v, 0), Err(SymError::UnsupportedPrecision(0)));
        assert_eq!(eval_numeric(&v, MAX_DIGITS + 1), Err(SymError::UnsupportedPrecision(MAX_DIGITS + 1)));
        assert_eq!(
            eval_numeric(&SymVal::symbol(ConstSymbol::Zeta(3)), 10),
            Err(SymError::OddZeta(3))
        );
    }

    #[test]
    fn decimal_rendering() {
        let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
        assert_eq!(Decimal::round_rational(&r(2, 3), 4).to_string(), "0.6667");
        assert_eq!(Decimal::round_rational(&r(-9995, 1), 3).to_string(), "-10000");
        assert_eq!(Decimal::round_rational(&r(1, 8000), 2).to_string(), "0.00013");
        assert_eq!(Decimal::round_rational(&r(1, 10_000_000), 1).to_string(), "1e-7");
        assert_eq!(Decimal::round_rational(&r(940337, 1000), 6).to_string(), "940.337");
        assert_eq!(Decimal::zero().to_string(), "0");
        assert!((Decimal::round_rational(&r(22, 7), 12).to_f64() - 22.0 / 7.0).abs() < 1e-11);
    }
}
