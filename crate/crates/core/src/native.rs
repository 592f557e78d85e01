//! Adapters between machine floats and [`FloatValue`].
//!
//! The arithmetic route ([`decompose_native`], [`from_value`]) only doubles
//! and halves, which is exact; the bit route ([`value_from_bits`],
//! [`value_to_bits`]) reads the IEEE interchange encoding and serves as an
//! independent cross-check and as an endian-neutral textual input.

use std::fmt;

use num_traits::Float;

use crate::error::Error;
use crate::floatkit::{FloatClass, FloatFormat, FloatInterval, FloatValue, Sign};

/// A machine float type with a known IEEE binary format.
pub trait BinaryFloat: Float + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const FORMAT: FloatFormat;

    fn to_bits_u64(self) -> u64;

    fn from_bits_u64(bits: u64) -> Self;
}

impl BinaryFloat for f32 {
    const FORMAT: FloatFormat = FloatFormat::BINARY32;

    fn to_bits_u64(self) -> u64 {
        u64::from(self.to_bits())
    }

    fn from_bits_u64(bits: u64) -> Self {
        f32::from_bits(bits as u32)
    }
}

impl BinaryFloat for f64 {
    const FORMAT: FloatFormat = FloatFormat::BINARY64;

    fn to_bits_u64(self) -> u64 {
        self.to_bits()
    }

    fn from_bits_u64(bits: u64) -> Self {
        f64::from_bits(bits)
    }
}

fn two<F: Float>() -> F {
    F::one() + F::one()
}

/// Returns `(m, e)` with `|f| = m * 2^e`, found by scaling `f` into
/// `[2^(p-1), 2^p)` with exact doublings and halvings.
///
/// Subnormals are shifted back onto the format's quantum exponent, so the
/// result matches [`crate::floatkit::decompose`].
pub fn decompose_native<F: BinaryFloat>(f: F) -> Result<(u64, i32), Error> {
    if f.is_nan() {
        return Err(Error::NotANumber);
    }
    if f.is_infinite() {
        return Err(Error::NotFinite);
    }
    if f.is_zero() {
        return Ok((0, 0));
    }
    let fmt = F::FORMAT;
    let low = F::from(fmt.hidden_bit()).ok_or(Error::NotFinite)?;
    let high = low * two();
    let mut x = f.abs();
    let mut e = 0i32;
    while x < low {
        x = x * two();
        e -= 1;
    }
    while x >= high {
        x = x / two();
        e += 1;
    }
    let mut m = x.to_u64().ok_or(Error::NotFinite)?;
    while e < fmt.quantum_exponent() {
        m >>= 1;
        e += 1;
    }
    Ok((m, e))
}

pub fn to_value<F: BinaryFloat>(f: F) -> Result<FloatValue, Error> {
    let sign = if f.is_sign_negative() { Sign::Negative } else { Sign::Positive };
    if f.is_infinite() {
        return Ok(FloatValue::infinity(sign));
    }
    let (m, e) = decompose_native(f)?;
    FloatValue::from_parts(sign, m, i64::from(e), &F::FORMAT)
}

/// Recomposes a value of `F::FORMAT` as a machine float.
pub fn from_value<F: BinaryFloat>(v: &FloatValue) -> F {
    let magnitude = match v.class() {
        FloatClass::Zero => F::zero(),
        FloatClass::Infinity => F::infinity(),
        _ => {
            let mut x = F::from(v.significand()).unwrap_or_else(F::nan);
            let mut e = v.exponent();
            while e > 0 {
                x = x * two();
                e -= 1;
            }
            while e < 0 {
                x = x / two();
                e += 1;
            }
            x
        }
    };
    if v.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Width of the biased exponent field of an IEEE interchange format.
fn exponent_field_bits(fmt: &FloatFormat) -> Result<u32, Error> {
    let bias = fmt.emax();
    let w = (bias as u32 + 1).trailing_zeros() + 1;
    let total = 1 + w + fmt.significand_bits() - 1;
    if (bias + 1).count_ones() != 1 || fmt.emin() != 1 - bias || total > 64 {
        return Err(Error::InvalidFormat("not an IEEE interchange format"));
    }
    Ok(w)
}

/// Decodes an IEEE interchange bit pattern.
pub fn value_from_bits(bits: u64, fmt: &FloatFormat) -> Result<FloatValue, Error> {
    let w = exponent_field_bits(fmt)?;
    let frac_bits = fmt.significand_bits() - 1;
    let total = 1 + w + frac_bits;
    if total < 64 && bits >> total != 0 {
        return Err(Error::Syntax { position: 0, message: "bit pattern too wide for format" });
    }
    let sign = if (bits >> (total - 1)) & 1 == 1 { Sign::Negative } else { Sign::Positive };
    let field = (bits >> frac_bits) & ((1 << w) - 1);
    let fraction = bits & ((1 << frac_bits) - 1);
    if field == (1 << w) - 1 {
        return if fraction == 0 { Ok(FloatValue::infinity(sign)) } else { Err(Error::NotANumber) };
    }
    if field == 0 {
        return FloatValue::from_parts(sign, fraction, i64::from(fmt.quantum_exponent()), fmt);
    }
    let e = field as i64 - i64::from(fmt.emax()) - i64::from(frac_bits);
    FloatValue::from_parts(sign, fraction | fmt.hidden_bit(), e, fmt)
}

/// Encodes a value of `fmt` as its IEEE interchange bit pattern.
pub fn value_to_bits(v: &FloatValue, fmt: &FloatFormat) -> Result<u64, Error> {
    let w = exponent_field_bits(fmt)?;
    let frac_bits = fmt.significand_bits() - 1;
    let sign = u64::from(v.is_negative()) << (w + frac_bits);
    let body = match v.class() {
        FloatClass::Zero => 0,
        FloatClass::Infinity => ((1u64 << w) - 1) << frac_bits,
        FloatClass::Subnormal => v.significand(),
        FloatClass::Normal => {
            let field = (i64::from(v.exponent()) + i64::from(frac_bits) + i64::from(fmt.emax())) as u64;
            (field << frac_bits) | (v.significand() - fmt.hidden_bit())
        }
    };
    Ok(sign | body)
}

/// An interval of machine floats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<F> {
    pub lb: F,
    pub ub: F,
}

impl<F: BinaryFloat> Interval<F> {
    pub fn from_float_interval(iv: &FloatInterval) -> Self {
        Interval { lb: from_value(iv.lb()), ub: from_value(iv.ub()) }
    }

    pub fn to_float_interval(&self) -> Result<FloatInterval, Error> {
        FloatInterval::new(to_value(self.lb)?, to_value(self.ub)?)
    }

    pub fn contains(&self, x: F) -> bool {
        self.lb <= x && x <= self.ub
    }

    pub fn is_degenerate(&self) -> bool {
        self.lb == self.ub
    }
}

impl<F: BinaryFloat> fmt::Display for Interval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lb, self.ub)
    }
}
