//! Format-parametric binary floating-point values.
//!
//! A [`FloatValue`] is an exact `sign * m * 2^e` record tied to a
//! [`FloatFormat`] only through its normalization, so every operation here
//! is integer arithmetic and exact at the subnormal and overflow edges.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Sign of a value; zero and infinity carry one too.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

/// A binary floating-point format: `p` significand bits counting the
/// leading one, and the range `[emin, emax]` of normalized exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatFormat {
    significand_bits: u32,
    emin: i32,
    emax: i32,
}

impl FloatFormat {
    pub const BINARY32: FloatFormat = FloatFormat { significand_bits: 24, emin: -126, emax: 127 };
    pub const BINARY64: FloatFormat = FloatFormat { significand_bits: 53, emin: -1022, emax: 1023 };

    /// Significands are kept in a `u64`, so `p` may not exceed 63.
    pub fn new(significand_bits: u32, emin: i32, emax: i32) -> Result<Self, Error> {
        if !(2..=63).contains(&significand_bits) {
            return Err(Error::InvalidFormat("significand bits must lie in 2..=63"));
        }
        if emin >= 0 || emax <= 0 {
            return Err(Error::InvalidFormat("exponent range must satisfy emin < 0 < emax"));
        }
        Ok(FloatFormat { significand_bits, emin, emax })
    }

    pub fn significand_bits(&self) -> u32 {
        self.significand_bits
    }

    pub fn emin(&self) -> i32 {
        self.emin
    }

    pub fn emax(&self) -> i32 {
        self.emax
    }

    /// Exponent `e` of `m * 2^e` for subnormals: the weight of the last
    /// significand bit at the bottom of the range.
    pub fn quantum_exponent(&self) -> i32 {
        self.emin - (self.significand_bits as i32 - 1)
    }

    /// Largest `e` of `m * 2^e` for a finite value.
    pub fn top_exponent(&self) -> i32 {
        self.emax - (self.significand_bits as i32 - 1)
    }

    /// `2^(p-1)`, the least normal significand.
    pub fn hidden_bit(&self) -> u64 {
        1 << (self.significand_bits - 1)
    }

    /// `2^p`, one past the greatest significand.
    pub fn significand_limit(&self) -> u64 {
        1 << self.significand_bits
    }
}

impl fmt::Display for FloatFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == FloatFormat::BINARY32 {
            f.write_str("binary32")
        } else if *self == FloatFormat::BINARY64 {
            f.write_str("binary64")
        } else {
            write!(f, "binary(p={}, emin={}, emax={})", self.significand_bits, self.emin, self.emax)
        }
    }
}

impl FromStr for FloatFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary32" | "single" | "f32" => Ok(FloatFormat::BINARY32),
            "binary64" | "double" | "f64" => Ok(FloatFormat::BINARY64),
            _ => Err(Error::InvalidFormat("expected binary32 or binary64")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FloatClass {
    Zero,
    Subnormal,
    Normal,
    Infinity,
}

/// `sign * significand * 2^exponent`, normalized for some format.
///
/// Normal values have `2^(p-1) <= significand < 2^p`; subnormals have a
/// smaller significand and the format's quantum exponent. Zero and infinity
/// keep `significand == 0` and `exponent == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatValue {
    class: FloatClass,
    sign: Sign,
    significand: u64,
    exponent: i32,
}

impl FloatValue {
    pub fn zero(sign: Sign) -> Self {
        FloatValue { class: FloatClass::Zero, sign, significand: 0, exponent: 0 }
    }

    pub fn infinity(sign: Sign) -> Self {
        FloatValue { class: FloatClass::Infinity, sign, significand: 0, exponent: 0 }
    }

    pub fn largest_finite(fmt: &FloatFormat, sign: Sign) -> Self {
        FloatValue {
            class: FloatClass::Normal,
            sign,
            significand: fmt.significand_limit() - 1,
            exponent: fmt.top_exponent(),
        }
    }

    pub fn smallest_subnormal(fmt: &FloatFormat, sign: Sign) -> Self {
        FloatValue {
            class: FloatClass::Subnormal,
            sign,
            significand: 1,
            exponent: fmt.quantum_exponent(),
        }
    }

    /// Builds `sign * m * 2^e`, failing unless the value is exactly a finite
    /// member of `fmt`.
    pub fn from_parts(sign: Sign, m: u64, e: i64, fmt: &FloatFormat) -> Result<Self, Error> {
        if m == 0 {
            return Ok(FloatValue::zero(sign));
        }
        let not_representable = || Error::NotRepresentable(fmt.to_string());
        let quantum = i64::from(fmt.quantum_exponent());
        let (mut m, mut e) = (m, e);

        if m < fmt.hidden_bit() && e > quantum {
            let room = i64::from(m.leading_zeros() - (64 - fmt.significand_bits));
            let shift = room.min(e - quantum);
            m <<= shift;
            e -= shift;
        }
        while m >= fmt.significand_limit() || e < quantum {
            if m & 1 != 0 {
                return Err(not_representable());
            }
            m >>= 1;
            e += 1;
        }
        if e > i64::from(fmt.top_exponent()) {
            return Err(not_representable());
        }
        let class = if m >= fmt.hidden_bit() { FloatClass::Normal } else { FloatClass::Subnormal };
        Ok(FloatValue { class, sign, significand: m, exponent: e as i32 })
    }

    pub fn class(&self) -> FloatClass {
        self.class
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn significand(&self) -> u64 {
        self.significand
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.class == FloatClass::Zero
    }

    pub fn is_finite(&self) -> bool {
        self.class != FloatClass::Infinity
    }

    pub fn is_negative(&self) -> bool {
        self.sign.is_negative()
    }

    pub fn negate(&self) -> Self {
        FloatValue { sign: self.sign.flip(), ..*self }
    }

    pub fn abs(&self) -> Self {
        FloatValue { sign: Sign::Positive, ..*self }
    }

    /// Numeric order. Both zeros compare equal.
    pub fn numeric_cmp(&self, other: &FloatValue) -> Ordering {
        let signed = |v: &FloatValue| if v.is_zero() { 0 } else if v.is_negative() { -1 } else { 1 };
        let (a, b) = (signed(self), signed(other));
        if a != b || a == 0 {
            return a.cmp(&b);
        }
        let magnitude = magnitude_cmp(self, other);
        if a < 0 {
            magnitude.reverse()
        } else {
            magnitude
        }
    }

    pub fn numeric_eq(&self, other: &FloatValue) -> bool {
        self.numeric_cmp(other) == Ordering::Equal
    }
}

fn magnitude_cmp(a: &FloatValue, b: &FloatValue) -> Ordering {
    match (a.class, b.class) {
        (FloatClass::Infinity, FloatClass::Infinity) => return Ordering::Equal,
        (FloatClass::Infinity, _) => return Ordering::Greater,
        (_, FloatClass::Infinity) => return Ordering::Less,
        _ => {}
    }
    let lead = |v: &FloatValue| i64::from(v.exponent) + 63 - i64::from(v.significand.leading_zeros());
    lead(a).cmp(&lead(b)).then_with(|| {
        // equal leading bit positions, so the exponents differ by < 64
        let base = a.exponent.min(b.exponent);
        let wide = |v: &FloatValue| u128::from(v.significand) << (v.exponent - base);
        wide(a).cmp(&wide(b))
    })
}

/// The least value of `fmt` strictly greater than `x`.
///
/// The largest finite value steps to `+inf`; `+inf` is its own successor and
/// `-inf` steps to the most negative finite value.
pub fn next_up(x: &FloatValue, fmt: &FloatFormat) -> FloatValue {
    match x.class {
        FloatClass::Infinity if x.is_negative() => FloatValue::largest_finite(fmt, Sign::Negative),
        FloatClass::Infinity => *x,
        FloatClass::Zero => FloatValue::smallest_subnormal(fmt, Sign::Positive),
        _ if !x.is_negative() => {
            let mut m = x.significand + 1;
            let mut e = x.exponent;
            if m == fmt.significand_limit() {
                m = fmt.hidden_bit();
                e += 1;
                if e > fmt.top_exponent() {
                    return FloatValue::infinity(Sign::Positive);
                }
            }
            with_significand(Sign::Positive, m, e, fmt)
        }
        _ => {
            if x.significand == fmt.hidden_bit() && x.exponent > fmt.quantum_exponent() {
                return with_significand(Sign::Negative, fmt.significand_limit() - 1, x.exponent - 1, fmt);
            }
            let m = x.significand - 1;
            if m == 0 {
                FloatValue::zero(Sign::Negative)
            } else {
                with_significand(Sign::Negative, m, x.exponent, fmt)
            }
        }
    }
}

/// The greatest value of `fmt` strictly less than `x`.
pub fn next_down(x: &FloatValue, fmt: &FloatFormat) -> FloatValue {
    next_up(&x.negate(), fmt).negate()
}

fn with_significand(sign: Sign, m: u64, e: i32, fmt: &FloatFormat) -> FloatValue {
    let class = if m >= fmt.hidden_bit() { FloatClass::Normal } else { FloatClass::Subnormal };
    FloatValue { class, sign, significand: m, exponent: e }
}

/// `2^(1-p)`: the gap between one and its successor.
pub fn machine_epsilon(fmt: &FloatFormat) -> FloatValue {
    with_significand(Sign::Positive, fmt.hidden_bit(), 2 - 2 * fmt.significand_bits as i32, fmt)
}

/// Splits a finite value into `(m, e)` with `|f| = m * 2^e`.
///
/// Normal values give `2^(p-1) <= m < 2^p`; subnormals give the quantum
/// exponent. Zero gives `(0, 0)`.
pub fn decompose(f: &FloatValue, fmt: &FloatFormat) -> Result<(u64, i32), Error> {
    match f.class {
        FloatClass::Infinity => Err(Error::NotFinite),
        FloatClass::Zero => Ok((0, 0)),
        _ => {
            let canonical = FloatValue::from_parts(f.sign, f.significand, i64::from(f.exponent), fmt)?;
            Ok((canonical.significand, canonical.exponent))
        }
    }
}

/// A closed interval `[lb, ub]` of format values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatInterval {
    lb: FloatValue,
    ub: FloatValue,
}

impl FloatInterval {
    pub fn new(lb: FloatValue, ub: FloatValue) -> Result<Self, Error> {
        if lb.numeric_cmp(&ub) == Ordering::Greater {
            return Err(Error::InvertedInterval);
        }
        Ok(FloatInterval { lb, ub })
    }

    pub fn point(x: FloatValue) -> Self {
        FloatInterval { lb: x, ub: x }
    }

    pub fn lb(&self) -> &FloatValue {
        &self.lb
    }

    pub fn ub(&self) -> &FloatValue {
        &self.ub
    }

    pub fn is_degenerate(&self) -> bool {
        self.lb.numeric_eq(&self.ub)
    }

    /// `[-ub, -lb]`.
    pub fn negate(&self) -> Self {
        FloatInterval { lb: self.ub.negate(), ub: self.lb.negate() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F32: FloatFormat = FloatFormat::BINARY32;
    const F64: FloatFormat = FloatFormat::BINARY64;

    fn pos(m: u64, e: i64, fmt: &FloatFormat) -> FloatValue {
        FloatValue::from_parts(Sign::Positive, m, e, fmt).unwrap()
    }

    #[test]
    fn format_constants() {
        assert_eq!(F32.quantum_exponent(), -149);
        assert_eq!(F32.top_exponent(), 104);
        assert_eq!(F64.quantum_exponent(), -1074);
        assert_eq!(F64.top_exponent(), 971);
        assert!(FloatFormat::new(1, -2, 3).is_err());
        assert!(FloatFormat::new(11, 2, 3).is_err());
        assert_eq!("binary64".parse::<FloatFormat>().unwrap(), F64);
    }

    #[test]
    fn from_parts_normalizes() {
        let three_quarters = pos(3, -2, &F32);
        assert_eq!((three_quarters.significand(), three_quarters.exponent()), (12582912, -24));
        assert_eq!(three_quarters.class(), FloatClass::Normal);
        let tiny = pos(1, -149, &F32);
        assert_eq!(tiny.class(), FloatClass::Subnormal);
        assert_eq!(pos(1 << 30, -179, &F32), tiny);
        assert!(FloatValue::from_parts(Sign::Positive, 1, -150, &F32).is_err());
        assert!(FloatValue::from_parts(Sign::Positive, (1 << 24) + 1, 0, &F32).is_err());
        assert!(FloatValue::from_parts(Sign::Positive, 1, 128, &F32).is_err());
        assert!(FloatValue::from_parts(Sign::Positive, 1, 127, &F32).is_ok());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&pos(3, -2, &F32), &F32).unwrap(), (12582912, -24));
        assert_eq!(decompose(&pos(1, 0, &F32), &F32).unwrap(), (1 << 23, -23));
        assert_eq!(decompose(&pos(1, -149, &F32), &F32).unwrap(), (1, -149));
        assert_eq!(decompose(&FloatValue::zero(Sign::Positive), &F32).unwrap(), (0, 0));
        assert!(decompose(&FloatValue::infinity(Sign::Positive), &F32).is_err());
    }

    #[test]
    fn next_up_examples() {
        let one = pos(1, 0, &F32);
        assert_eq!(next_up(&one, &F32), pos((1 << 23) + 1, -23, &F32));
        let max = FloatValue::largest_finite(&F32, Sign::Positive);
        assert_eq!(next_up(&max, &F32), FloatValue::infinity(Sign::Positive));
        // lb of the interval around 1/3 is 0x2aaaaa after the point at 2^-2
        let lb = pos(0xaaaaaa, -25, &F32);
        assert_eq!(next_up(&lb, &F32), pos(0xaaaaab, -25, &F32));
    }

    #[test]
    fn next_up_crosses_boundaries() {
        let zero = FloatValue::zero(Sign::Positive);
        let tiny = FloatValue::smallest_subnormal(&F32, Sign::Positive);
        assert_eq!(next_up(&zero, &F32), tiny);
        assert_eq!(next_up(&tiny.negate(), &F32), FloatValue::zero(Sign::Negative));
        let top_sub = pos((1 << 23) - 1, -149, &F32);
        let min_normal = pos(1, -126, &F32);
        assert_eq!(next_up(&top_sub, &F32), min_normal);
        assert_eq!(next_up(&min_normal.negate(), &F32), top_sub.negate());
        let two = pos(2, 0, &F32);
        assert_eq!(next_up(&two.negate(), &F32), pos((1 << 24) - 1, -23, &F32).negate());
        assert_eq!(next_down(&two, &F32), pos((1 << 24) - 1, -23, &F32));
        assert_eq!(
            next_up(&FloatValue::infinity(Sign::Negative), &F32),
            FloatValue::largest_finite(&F32, Sign::Negative)
        );
    }

    #[test]
    fn machine_epsilon_values() {
        assert_eq!(machine_epsilon(&F32), pos(1, -23, &F32));
        assert_eq!(machine_epsilon(&F64), pos(1, -52, &F64));
        let one = pos(1, 0, &F32);
        assert_eq!(next_up(&one, &F32).numeric_cmp(&pos((1 << 23) + 1, -23, &F32)), Ordering::Equal);
    }

    #[test]
    fn ordering() {
        let a = pos(3, -2, &F32);
        let b = pos(1, 0, &F32);
        assert_eq!(a.numeric_cmp(&b), Ordering::Less);
        assert_eq!(b.negate().numeric_cmp(&a.negate()), Ordering::Less);
        assert!(FloatValue::zero(Sign::Negative).numeric_eq(&FloatValue::zero(Sign::Positive)));
        assert_eq!(
            FloatValue::infinity(Sign::Negative).numeric_cmp(&b.negate()),
            Ordering::Less
        );
        assert!(FloatInterval::new(b, a).is_err());
        let iv = FloatInterval::new(a, b).unwrap();
        assert_eq!(iv.negate().lb(), &b.negate());
    }
}
