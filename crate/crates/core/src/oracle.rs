//! Reference values by exact rational arithmetic.
//!
//! Nothing here reuses the digit-string conversion paths: the enclosing
//! interval is found by scaling the rational and taking an integer floor,
//! and decimal cut-offs by floor and ceiling at a power of ten. Agreement
//! with [`crate::parse`] and [`crate::render`] is therefore evidence rather
//! than a restatement.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decimal::DecimalScientific;
use crate::digitstring::{DigitRole, DigitString};
use crate::error::Error;
use crate::floatkit::{next_up, FloatClass, FloatFormat, FloatInterval, FloatValue, Sign};
use crate::parse::Rational;

/// `2^e` as an exact rational.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `10^e` as an exact rational.
pub fn pow10(e: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(10u8), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn signed(magnitude: BigRational, sign: Sign) -> BigRational {
    if sign.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// The value of a digit string in its role: `sum d_i 10^-i` or the integer.
pub fn digit_string_value(m: &DigitString) -> BigRational {
    let integer = m.digits().iter().fold(BigInt::zero(), |acc, &d| acc * 10 + d);
    match m.role() {
        DigitRole::Integer => BigRational::from_integer(integer),
        DigitRole::Fraction => BigRational::from_integer(integer) * pow10(-(m.len() as i64)),
    }
}

/// `sign * 10^e * 0.d1...dn`.
pub fn exact_value(d: &DecimalScientific) -> BigRational {
    signed(digit_string_value(d.mantissa()) * pow10(d.exponent()), d.sign())
}

/// `sign * m * 2^e`.
pub fn float_exact_value(f: &FloatValue) -> Result<BigRational, Error> {
    if f.class() == FloatClass::Infinity {
        return Err(Error::NotFinite);
    }
    let magnitude = BigRational::from_integer(BigInt::from(f.significand())) * pow2(i64::from(f.exponent()));
    Ok(signed(magnitude, f.sign()))
}

pub fn rational_value(r: &Rational) -> BigRational {
    let magnitude = BigRational::new(BigInt::from(r.numerator().clone()), BigInt::from(r.denominator().clone()));
    signed(magnitude, r.sign())
}

/// Position of the leading bit of a positive rational: the `L` with
/// `2^L <= x < 2^(L+1)`.
fn leading_bit(x: &BigRational) -> i64 {
    let guess = x.numer().bits() as i64 - x.denom().bits() as i64;
    if *x >= pow2(guess) {
        guess
    } else {
        guess - 1
    }
}

/// The narrowest interval of `fmt` values containing `x`.
///
/// For `x > 0` the lower bound is `floor(x / 2^e) * 2^e` with `e` the
/// exponent of the last significand bit at `x`'s magnitude, clamped at the
/// subnormal quantum; magnitudes beyond the largest finite value get an
/// infinite bound.
pub fn narrowest_interval_reference(x: &BigRational, fmt: &FloatFormat) -> FloatInterval {
    if x.is_zero() {
        return FloatInterval::point(FloatValue::zero(Sign::Positive));
    }
    let sign = if x.is_negative() { Sign::Negative } else { Sign::Positive };
    let a = x.abs();
    let lead = leading_bit(&a);
    let magnitude = if lead > i64::from(fmt.emax()) {
        FloatInterval::new(FloatValue::largest_finite(fmt, Sign::Positive), FloatValue::infinity(Sign::Positive))
    } else {
        let e = (lead - i64::from(fmt.significand_bits()) + 1).max(i64::from(fmt.quantum_exponent()));
        let scaled = &a / pow2(e);
        let m = scaled.floor().to_integer();
        let exact = scaled.is_integer();
        let m = m.to_u64().expect("below 2^p");
        let lb = FloatValue::from_parts(Sign::Positive, m, e, fmt).expect("on the format grid");
        let ub = if exact { lb } else { next_up(&lb, fmt) };
        FloatInterval::new(lb, ub)
    }
    .expect("ordered");
    if sign.is_negative() {
        magnitude.negate()
    } else {
        magnitude
    }
}

/// The decimal exponent `E` with `10^(E-1) <= x < 10^E` for positive `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    // log10(2) underestimates by at most one decade either way
    let guess = ((leading_bit(x) as f64 + 1.0) * std::f64::consts::LOG10_2).ceil() as i64;
    let mut e = guess;
    while *x >= pow10(e) {
        e += 1;
    }
    while *x < pow10(e - 1) {
        e -= 1;
    }
    e
}

/// Rounds `x` to `n` significant decimal digits at the scale of its own
/// leading digit, toward `-inf` (`up == false`) or `+inf`.
pub fn decimal_round(x: &BigRational, n: usize, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let a = x.abs();
    let unit = pow10(decimal_exponent(&a) - n as i64);
    let steps = x / &unit;
    let rounded = if up { steps.ceil() } else { steps.floor() };
    rounded * unit
}

/// Greatest numeral of at most `n` significant digits that is `<= x`.
pub fn decimal_floor(x: &BigRational, n: usize) -> BigRational {
    decimal_round(x, n, false)
}

/// Least numeral of at most `n` significant digits that is `>= x`.
pub fn decimal_ceil(x: &BigRational, n: usize) -> BigRational {
    decimal_round(x, n, true)
}

/// Number of significant decimal digits in `x` (zero for zero); `None`
/// when the expansion does not terminate.
pub fn significant_digits(x: &BigRational) -> Option<usize> {
    if x.is_zero() {
        return Some(0);
    }
    let mut denom: BigInt = x.denom().clone();
    let mut shift = 0u32;
    for p in [2u8, 5] {
        let p = BigInt::from(p);
        while denom.is_multiple_of(&p) {
            denom /= &p;
            shift += 1;
        }
    }
    if !denom.is_one() {
        return None;
    }
    // x * 10^shift is an integer; count its digits without trailing zeros
    let mut integer = (x.abs() * pow10(i64::from(shift))).to_integer();
    let ten = BigInt::from(10u8);
    while integer.is_multiple_of(&ten) {
        integer /= &ten;
    }
    Some(integer.to_string().len())
}

/// Checks that `iv` is bit-for-bit the reference enclosure of `x`.
pub fn verify_enclosure(x: &BigRational, iv: &FloatInterval, fmt: &FloatFormat) -> Result<(), String> {
    let reference = narrowest_interval_reference(x, fmt);
    if reference == *iv {
        Ok(())
    } else {
        Err(format!("expected {reference:?}, got {iv:?}"))
    }
}

/// Compares an optionally infinite float against an exact value.
pub fn compare_bound(f: &FloatValue, x: &BigRational) -> Ordering {
    match float_exact_value(f) {
        Ok(v) => v.cmp(x),
        Err(_) if f.is_negative() => Ordering::Less,
        Err(_) => Ordering::Greater,
    }
}

/// `p / q` as an exact rational, for building test values.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    const F32: FloatFormat = FloatFormat::BINARY32;

    fn dec(sign: Sign, digits: &str, e: i64) -> DecimalScientific {
        DecimalScientific::new(sign, DigitString::parse_fraction(digits).unwrap(), e)
    }

    fn pos(m: u64, e: i64) -> FloatValue {
        FloatValue::from_parts(Sign::Positive, m, e, &F32).unwrap()
    }

    #[test]
    fn exact_value_examples() {
        assert_eq!(exact_value(&dec(Sign::Positive, "123", -1)), ratio(123, 10000));
        assert_eq!(exact_value(&dec(Sign::Positive, "5", 0)), ratio(1, 2));
        assert_eq!(exact_value(&dec(Sign::Negative, "1", 1)), ratio(-1, 1));
    }

    #[test]
    fn float_value_examples() {
        assert_eq!(float_exact_value(&pos(3, -2)).unwrap(), ratio(3, 4));
        assert_eq!(float_exact_value(&pos(1, -149)).unwrap(), pow2(-149));
        let lb = float_exact_value(&pos(0xaaaaaa, -25)).unwrap();
        assert_eq!(lb, ratio(11184810, 1 << 25));
        assert_eq!(lb, exact_value(&dec(Sign::Positive, "333333313465118408203125", 0)));
    }

    #[test]
    fn reference_intervals() {
        let half = narrowest_interval_reference(&ratio(1, 2), &F32);
        assert!(half.is_degenerate());
        assert_eq!(half.lb(), &pos(1, -1));
        let third = narrowest_interval_reference(&ratio(1, 3), &F32);
        assert_eq!((third.lb(), third.ub()), (&pos(0xaaaaaa, -25), &pos(0xaaaaab, -25)));
        let seventh = narrowest_interval_reference(&ratio(1, 7), &F32);
        assert_eq!((seventh.lb().significand(), seventh.ub().significand()), (0x924924, 0x924925));
        let over = narrowest_interval_reference(&(pow2(128) * ratio(-1, 1)), &F32);
        assert_eq!(over.lb(), &FloatValue::infinity(Sign::Negative));
        let under = narrowest_interval_reference(&pow2(-151), &F32);
        assert!(under.lb().is_zero());
    }

    #[test]
    fn decimal_rounding() {
        let x = ratio(1, 3);
        assert_eq!(decimal_floor(&x, 5), ratio(33333, 100000));
        assert_eq!(decimal_ceil(&x, 5), ratio(33334, 100000));
        assert_eq!(decimal_ceil(&ratio(999, 1000), 1), ratio(1, 1));
        assert_eq!(decimal_floor(&ratio(-999, 1000), 1), ratio(-1, 1));
        assert_eq!(decimal_ceil(&ratio(-999, 1000), 1), ratio(-9, 10));
        assert_eq!(decimal_floor(&ratio(1000, 1), 2), ratio(1000, 1));
    }

    #[test]
    fn digit_counts() {
        assert_eq!(significant_digits(&ratio(1875, 100)), Some(4));
        assert_eq!(significant_digits(&ratio(1200, 1)), Some(2));
        assert_eq!(significant_digits(&ratio(1, 3)), None);
        assert_eq!(significant_digits(&BigRational::zero()), Some(0));
    }
}
