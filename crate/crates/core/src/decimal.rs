//! Decimal numerals in normalized scientific form.

use std::fmt;

use crate::digitstring::DigitString;
use crate::floatkit::Sign;

/// Exponents inside this range print positionally, others as `0.ddd e N`.
const POSITIONAL_EXPONENTS: std::ops::RangeInclusive<i64> = -5..=21;

/// `sign * 10^exponent * 0.d1 d2 ... dn` with `d1 != 0`.
///
/// Zero has an empty mantissa, exponent 0 and a positive sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalScientific {
    sign: Sign,
    mantissa: DigitString,
    exponent: i64,
}

impl DecimalScientific {
    pub fn zero() -> Self {
        DecimalScientific { sign: Sign::Positive, mantissa: DigitString::zero_fraction(), exponent: 0 }
    }

    /// Normalizes the given mantissa so that its first digit is nonzero,
    /// moving the exponent to compensate.
    pub fn new(sign: Sign, mantissa: DigitString, exponent: i64) -> Self {
        let mut mantissa = mantissa.into_fraction();
        if mantissa.is_zero() {
            return DecimalScientific::zero();
        }
        let mut exponent = exponent;
        while mantissa.drop_leading_zero() {
            exponent = exponent.saturating_sub(1);
        }
        DecimalScientific { sign, mantissa, exponent }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mantissa(&self) -> &DigitString {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.sign.is_negative()
    }

    pub fn negate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        DecimalScientific { sign: self.sign.flip(), ..self.clone() }
    }

    pub fn abs(&self) -> Self {
        DecimalScientific { sign: Sign::Positive, ..self.clone() }
    }

    /// Whether [`fmt::Display`] uses positional notation for this value.
    pub fn is_positional(&self) -> bool {
        self.is_zero() || POSITIONAL_EXPONENTS.contains(&self.exponent)
    }
}

impl fmt::Display for DecimalScientific {
    /// Positional for moderate exponents (`0.0123`, `12500`), otherwise the
    /// normalized mantissa with an exponent (`0.1401298e-44`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.is_negative() {
            f.write_str("-")?;
        }
        let digits = self.mantissa.to_string();
        if !self.is_positional() {
            return write!(f, "0.{}e{}", digits, self.exponent);
        }
        let e = self.exponent;
        if e <= 0 {
            write!(f, "0.{}{}", "0".repeat(e.unsigned_abs() as usize), digits)
        } else {
            let e = e as usize;
            if digits.len() <= e {
                write!(f, "{}{}", digits, "0".repeat(e - digits.len()))
            } else {
                write!(f, "{}.{}", &digits[..e], &digits[e..])
            }
        }
    }
}
