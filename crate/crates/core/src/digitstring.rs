//! Exact arithmetic on sequences of decimal digits.
//!
//! A [`DigitString`] is either a fraction `0.d1 d2 ... dn` or a nonnegative
//! integer `d1 d2 ... dn`. Only the operations needed for radix conversion
//! are provided: doubling, halving and the digit shuffling that goes with
//! moving a decimal point. None of them round and none of them overflow.

use std::fmt;

use crate::error::Error;

/// How the digits of a [`DigitString`] are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DigitRole {
    /// `sum d_i 10^-i`; never carries trailing zeros.
    Fraction,
    /// `sum d_i 10^(n-i)`; never carries leading zeros.
    Integer,
}

/// A sequence of decimal digits, each stored as a small integer in `0..=9`.
///
/// Zero is the empty sequence in both roles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u8>,
    role: DigitRole,
}

impl DigitString {
    /// The empty fraction, i.e. zero.
    pub fn zero_fraction() -> Self {
        DigitString { digits: Vec::new(), role: DigitRole::Fraction }
    }

    /// The empty integer, i.e. zero.
    pub fn zero_integer() -> Self {
        DigitString { digits: Vec::new(), role: DigitRole::Integer }
    }

    /// Builds a fraction from digit values, dropping trailing zeros.
    pub fn fraction(digits: impl Into<Vec<u8>>) -> Result<Self, Error> {
        let digits = digits.into();
        check_digits(&digits)?;
        let mut s = DigitString { digits, role: DigitRole::Fraction };
        s.trim_trailing_zeros();
        Ok(s)
    }

    /// Builds an integer from digit values, dropping leading zeros.
    pub fn integer(digits: impl Into<Vec<u8>>) -> Result<Self, Error> {
        let digits = digits.into();
        check_digits(&digits)?;
        let mut s = DigitString { digits, role: DigitRole::Integer };
        s.trim_leading_zeros();
        Ok(s)
    }

    /// Reads ASCII digits as a fraction, e.g. `"123"` is 0.123.
    pub fn parse_fraction(text: &str) -> Result<Self, Error> {
        Self::fraction(ascii_digits(text)?)
    }

    /// Reads ASCII digits as an integer, e.g. `"123"` is 123.
    pub fn parse_integer(text: &str) -> Result<Self, Error> {
        Self::integer(ascii_digits(text)?)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn role(&self) -> DigitRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// True when the denoted value is zero.
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn leading_digit(&self) -> Option<u8> {
        self.digits.first().copied()
    }

    /// Reinterprets an integer's digits as the fraction `0.d1...dn`.
    ///
    /// The value is divided by `10^len`; trailing zeros are dropped.
    pub fn into_fraction(mut self) -> Self {
        self.role = DigitRole::Fraction;
        self.trim_trailing_zeros();
        self
    }

    /// Doubles a fraction in place and returns the carry out of the units
    /// position. `carry + 0.new = 2 * 0.old` holds exactly.
    pub fn mul2_in_place(&mut self) -> u8 {
        debug_assert_eq!(self.role, DigitRole::Fraction);
        let mut carry = 0u8;
        for d in self.digits.iter_mut().rev() {
            let doubled = 2 * *d + carry;
            *d = doubled % 10;
            carry = doubled / 10;
        }
        self.trim_trailing_zeros();
        carry
    }

    /// Doubles a fraction: `(0.m', carry)` with `carry + 0.m' = 2 * 0.m`.
    pub fn mul2(&self) -> (Self, u8) {
        let mut out = self.clone();
        let carry = out.mul2_in_place();
        (out, carry)
    }

    /// Halves a fraction in place. The result may start with a zero digit,
    /// which the caller strips when it moves the decimal point.
    pub fn div2_in_place(&mut self) {
        debug_assert_eq!(self.role, DigitRole::Fraction);
        let mut borrow = 0u8;
        for d in self.digits.iter_mut() {
            // an odd predecessor leaves 10 behind, worth 5 at this position
            let half = *d / 2 + borrow;
            borrow = if *d % 2 == 1 { 5 } else { 0 };
            *d = half;
        }
        if borrow != 0 {
            self.digits.push(borrow);
        }
        self.trim_trailing_zeros();
    }

    /// Halves a fraction exactly.
    pub fn div2(&self) -> Self {
        let mut out = self.clone();
        out.div2_in_place();
        out
    }

    /// Doubles an integer exactly.
    pub fn double_integer(&self) -> Self {
        debug_assert_eq!(self.role, DigitRole::Integer);
        let mut digits = Vec::with_capacity(self.digits.len() + 1);
        let mut carry = 0u8;
        for &d in self.digits.iter().rev() {
            let doubled = 2 * d + carry;
            digits.push(doubled % 10);
            carry = doubled / 10;
        }
        if carry != 0 {
            digits.push(carry);
        }
        digits.reverse();
        DigitString { digits, role: DigitRole::Integer }
    }

    /// Inserts a leading `1`: for a fraction this maps `0.m` to `0.1m`,
    /// i.e. `(1 + 0.m) / 10`.
    pub fn prepend_unit(&mut self) {
        self.digits.insert(0, 1);
    }

    /// Removes a leading zero digit if there is one; for a fraction this
    /// multiplies the value by ten. Returns whether a digit was removed.
    pub fn drop_leading_zero(&mut self) -> bool {
        if self.digits.first() == Some(&0) {
            self.digits.remove(0);
            true
        } else {
            false
        }
    }

    /// Keeps the first `n` digits and discards the rest.
    pub fn truncate(&mut self, n: usize) {
        self.digits.truncate(n);
        if self.role == DigitRole::Fraction {
            self.trim_trailing_zeros();
        }
    }

    fn trim_trailing_zeros(&mut self) {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
    }

    fn trim_leading_zeros(&mut self) {
        let zeros = self.digits.iter().take_while(|&&d| d == 0).count();
        self.digits.drain(..zeros);
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", char::from(b'0' + d))?;
        }
        Ok(())
    }
}

fn check_digits(digits: &[u8]) -> Result<(), Error> {
    match digits.iter().position(|&d| d > 9) {
        Some(position) => Err(Error::Syntax { position, message: "digit out of range" }),
        None => Ok(()),
    }
}

fn ascii_digits(text: &str) -> Result<Vec<u8>, Error> {
    text.bytes()
        .enumerate()
        .map(|(position, b)| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::Syntax { position, message: "expected a decimal digit" })
            }
        })
        .collect()
}
