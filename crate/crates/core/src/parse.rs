//! Decimal and rational input: the narrowest interval of format values
//! that contains the exact value written.
//!
//! Both routes reduce the input to `2^k * x` with `x` in `[0.5, 1)` and
//! then peel off binary digits of `x` by repeated doubling: of a decimal
//! digit string for numerals, of `p` against `q` for fractions. The first
//! `p` bits (fewer below the normal range) make the lower bound; whether
//! anything is left over decides between a point and `[lb, next_up(lb)]`.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::decimal::DecimalScientific;
use crate::digitstring::DigitString;
use crate::error::Error;
use crate::floatkit::{next_up, FloatFormat, FloatInterval, FloatValue, Sign};

/// Reads a decimal numeral: optional sign, digits with an optional point,
/// then an optional `e`/`E` exponent with its own optional sign.
///
/// At least one mantissa digit is required. The result is normalized so
/// that its first digit is nonzero; all-zero numerals give canonical zero.
pub fn parse_numeral(text: &str) -> Result<DecimalScientific, Error> {
    let bytes = text.as_bytes();
    let syntax = |position, message| Error::Syntax { position, message };
    let mut pos = 0;

    let sign = match bytes.first() {
        Some(b'-') => {
            pos += 1;
            Sign::Negative
        }
        Some(b'+') => {
            pos += 1;
            Sign::Positive
        }
        _ => Sign::Positive,
    };

    let mut digits = Vec::new();
    let mut integer_digits: i64 = 0;
    let mut seen_point = false;
    while let Some(&b) = bytes.get(pos) {
        match b {
            b'0'..=b'9' => {
                digits.push(b - b'0');
                if !seen_point {
                    integer_digits += 1;
                }
            }
            b'.' if !seen_point => seen_point = true,
            b'.' => return Err(syntax(pos, "second decimal point")),
            b'e' | b'E' => break,
            _ => return Err(syntax(pos, "unexpected character in mantissa")),
        }
        pos += 1;
    }
    if digits.is_empty() {
        return Err(syntax(pos, "expected at least one digit"));
    }

    let mut exponent: i64 = 0;
    if pos < bytes.len() {
        // bytes[pos] is the exponent marker
        pos += 1;
        let negative = match bytes.get(pos) {
            Some(b'-') => {
                pos += 1;
                true
            }
            Some(b'+') => {
                pos += 1;
                false
            }
            _ => false,
        };
        let start = pos;
        while let Some(&b) = bytes.get(pos) {
            if !b.is_ascii_digit() {
                return Err(syntax(pos, "unexpected character in exponent"));
            }
            // Far beyond any format's range; saturating keeps arithmetic safe.
            exponent = exponent.saturating_mul(10).saturating_add(i64::from(b - b'0')).min(1 << 53);
            pos += 1;
        }
        if pos == start {
            return Err(syntax(pos, "expected exponent digits"));
        }
        if negative {
            exponent = -exponent;
        }
    }

    let mantissa = DigitString::fraction(digits)?;
    Ok(DecimalScientific::new(sign, mantissa, integer_digits + exponent))
}

/// A signed fraction `p/q` of arbitrary-precision integers, `q > 0`.
///
/// The fraction need not be in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    sign: Sign,
    numerator: BigUint,
    denominator: BigUint,
}

impl Rational {
    pub fn new(sign: Sign, numerator: BigUint, denominator: BigUint) -> Result<Self, Error> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational { sign, numerator, denominator })
    }

    pub fn from_integers(p: i64, q: i64) -> Result<Self, Error> {
        let sign = if (p < 0) != (q < 0) { Sign::Negative } else { Sign::Positive };
        Rational::new(sign, BigUint::from(p.unsigned_abs()), BigUint::from(q.unsigned_abs()))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// `P/Q` with optional signs on either part; a bare `P` means `P/1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn signed_integer(text: &str, offset: usize) -> Result<(bool, BigUint), Error> {
            let (negative, body, skip) = match text.as_bytes().first() {
                Some(b'-') => (true, &text[1..], 1),
                Some(b'+') => (false, &text[1..], 1),
                _ => (false, text, 0),
            };
            if body.is_empty() {
                return Err(Error::Syntax { position: offset + skip, message: "expected digits" });
            }
            if let Some(i) = body.bytes().position(|b| !b.is_ascii_digit()) {
                return Err(Error::Syntax { position: offset + skip + i, message: "expected a decimal digit" });
            }
            let value = BigUint::parse_bytes(body.as_bytes(), 10)
                .ok_or(Error::Syntax { position: offset + skip, message: "expected digits" })?;
            Ok((negative, value))
        }

        let (p_text, q_text) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let (p_negative, p) = signed_integer(p_text, 0)?;
        let (q_negative, q) = match q_text {
            Some(q) => signed_integer(q, p_text.len() + 1)?,
            None => (false, BigUint::from(1u32)),
        };
        let sign = if p_negative != q_negative { Sign::Negative } else { Sign::Positive };
        Rational::new(sign, p, q)
    }
}

/// Finds `k` and `r'` with `r = r' * 2^k` and `0.5 <= |r'| < 1`, using only
/// doublings of `p` and `q`.
pub fn scale_to_unit_interval(r: &Rational) -> Result<(Rational, i64), Error> {
    if r.is_zero() {
        return Err(Error::Zero);
    }
    let mut p = r.numerator.clone();
    let mut q = r.denominator.clone();
    // Line the leading bits up in one shift, then finish one doubling at a time.
    let shift = p.bits() as i64 - q.bits() as i64;
    let mut k = shift;
    if shift > 0 {
        q <<= shift as u64;
    } else {
        p <<= shift.unsigned_abs();
    }
    while &p << 1u8 < q {
        p <<= 1u8;
        k -= 1;
    }
    while p >= q {
        q <<= 1u8;
        k += 1;
    }
    Ok((Rational { sign: r.sign, numerator: p, denominator: q }, k))
}

/// A stream of binary digits of a value in `[0, 1)`, most significant first.
pub trait BitSource {
    fn next_bit(&mut self) -> u8;

    /// True once every remaining digit is zero.
    fn is_exhausted(&self) -> bool;
}

/// Binary digits of a decimal fraction `0.d1...dn`: each doubling carries
/// the next bit out of the units position.
#[derive(Clone, Debug)]
pub struct MantissaBits {
    mantissa: DigitString,
}

impl MantissaBits {
    pub fn new(mantissa: DigitString) -> Self {
        MantissaBits { mantissa }
    }

    /// What is left to convert, as a fraction.
    pub fn remainder(&self) -> &DigitString {
        &self.mantissa
    }
}

impl BitSource for MantissaBits {
    fn next_bit(&mut self) -> u8 {
        self.mantissa.mul2_in_place()
    }

    fn is_exhausted(&self) -> bool {
        self.mantissa.is_empty()
    }
}

impl Iterator for MantissaBits {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_bit())
    }
}

/// Binary digits of `p/q` for `0 <= p < q`: double `p`, and when it
/// reaches `q` emit a one and subtract.
#[derive(Clone, Debug)]
pub struct RationalBits {
    remainder: BigUint,
    denominator: BigUint,
}

impl RationalBits {
    pub fn new(p: BigUint, q: BigUint) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if p >= q {
            return Err(Error::NotRepresentable("[0, 1)".into()));
        }
        Ok(RationalBits { remainder: p, denominator: q })
    }

    /// The current `p`: after `i` digits the unconverted part of the value
    /// is `(p/q) * 2^-i`.
    pub fn remainder(&self) -> &BigUint {
        &self.remainder
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }
}

impl BitSource for RationalBits {
    fn next_bit(&mut self) -> u8 {
        if self.remainder.is_zero() {
            return 0;
        }
        self.remainder <<= 1u8;
        if self.remainder >= self.denominator {
            self.remainder -= &self.denominator;
            1
        } else {
            0
        }
    }

    fn is_exhausted(&self) -> bool {
        self.remainder.is_zero()
    }
}

impl Iterator for RationalBits {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_bit())
    }
}

/// Records every bit drawn from the wrapped source.
struct Recording<'a, S> {
    inner: S,
    bits: &'a mut Vec<u8>,
}

impl<S: BitSource> BitSource for Recording<'_, S> {
    fn next_bit(&mut self) -> u8 {
        let bit = self.inner.next_bit();
        self.bits.push(bit);
        bit
    }

    fn is_exhausted(&self) -> bool {
        self.inner.is_exhausted()
    }
}

/// Encloses the positive value `2^k * 0.b1 b2 ...` (with `b1 = 1`) drawn
/// from `source`.
///
/// Normal results keep `p` bits. Below the normal range only the bits
/// weighing at least the smallest subnormal are kept, and if none are
/// the value lies strictly inside `(0, smallest subnormal)`.
fn assemble(source: &mut impl BitSource, k: i64, fmt: &FloatFormat) -> FloatInterval {
    let p = i64::from(fmt.significand_bits());
    let lead = k - 1;
    if lead > i64::from(fmt.emax()) {
        return overflow_interval(fmt);
    }
    let keep = if lead >= i64::from(fmt.emin()) { p } else { p - (i64::from(fmt.emin()) - lead) };
    if keep <= 0 {
        return underflow_interval(fmt);
    }
    let mut m: u64 = 0;
    for _ in 0..keep {
        if source.is_exhausted() {
            m <<= 1;
        } else {
            m = (m << 1) | u64::from(source.next_bit());
        }
    }
    let lb = FloatValue::from_parts(Sign::Positive, m, k - keep, fmt)
        .expect("kept bits always fit the format");
    let ub = if source.is_exhausted() { lb } else { next_up(&lb, fmt) };
    FloatInterval::new(lb, ub).expect("successor is never below its argument")
}

fn overflow_interval(fmt: &FloatFormat) -> FloatInterval {
    FloatInterval::new(FloatValue::largest_finite(fmt, Sign::Positive), FloatValue::infinity(Sign::Positive))
        .expect("ordered")
}

fn underflow_interval(fmt: &FloatFormat) -> FloatInterval {
    FloatInterval::new(FloatValue::zero(Sign::Positive), FloatValue::smallest_subnormal(fmt, Sign::Positive))
        .expect("ordered")
}

fn with_sign(iv: FloatInterval, sign: Sign) -> FloatInterval {
    if sign.is_negative() {
        iv.negate()
    } else {
        iv
    }
}

/// The narrowest interval of `fmt` values containing `p/q`.
///
/// Magnitudes beyond the largest finite value get an infinite bound.
pub fn rational_to_interval(r: &Rational, fmt: &FloatFormat) -> FloatInterval {
    if r.is_zero() {
        return FloatInterval::point(FloatValue::zero(Sign::Positive));
    }
    let (unit, k) = scale_to_unit_interval(r).expect("nonzero");
    let mut bits = RationalBits { remainder: unit.numerator, denominator: unit.denominator };
    with_sign(assemble(&mut bits, k, fmt), r.sign)
}

/// Exchanges the decimal exponent for a binary one:
/// `10^dec_exp * 0.m = 2^bin_exp * 0.m'`, exactly.
///
/// Negative decimal exponents are worked off by doubling the mantissa and
/// absorbing each carry as a leading digit; positive ones by halving and
/// dropping each leading zero that appears.
pub fn binarize_exponent(m: DigitString, dec_exp: i64) -> (DigitString, i64) {
    let mut m = m;
    let mut dec_exp = dec_exp;
    let mut bin_exp = 0i64;
    if m.is_empty() {
        return (m, 0);
    }
    while dec_exp < 0 {
        let carry = m.mul2_in_place();
        bin_exp -= 1;
        if carry != 0 {
            dec_exp += 1;
            m.prepend_unit();
        }
    }
    while dec_exp > 0 {
        m.div2_in_place();
        bin_exp += 1;
        if m.drop_leading_zero() {
            dec_exp -= 1;
        }
    }
    (m, bin_exp)
}

/// Doubles the mantissa until `0.5 <= 0.m < 1`, lowering the binary
/// exponent to match.
pub fn normalize_mantissa(m: DigitString, bin_exp: i64) -> (DigitString, i64) {
    let mut m = m;
    let mut bin_exp = bin_exp;
    while m.leading_digit().is_some_and(|d| d < 5) {
        let carry = m.mul2_in_place();
        debug_assert_eq!(carry, 0);
        bin_exp -= 1;
    }
    (m, bin_exp)
}

/// Intermediate states of a decimal conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionTrace {
    /// Mantissa and binary exponent after binarization.
    pub binarized: Option<(DigitString, i64)>,
    /// Mantissa and binary exponent after normalization.
    pub normalized: Option<(DigitString, i64)>,
    /// Significand bits drawn, leading one first.
    pub bits: Vec<u8>,
    pub interval: FloatInterval,
}

/// The narrowest interval of `fmt` values containing the numeral's value.
///
/// Magnitudes above the largest finite value get an infinite bound;
/// nonzero magnitudes below the smallest subnormal give `[0, tiny]`.
pub fn decimal_to_interval(d: &DecimalScientific, fmt: &FloatFormat) -> FloatInterval {
    convert_decimal(d, fmt, None)
}

/// Like [`decimal_to_interval`], keeping the intermediate states.
pub fn decimal_to_interval_traced(d: &DecimalScientific, fmt: &FloatFormat) -> ConversionTrace {
    let mut trace = ConversionTrace {
        binarized: None,
        normalized: None,
        bits: Vec::new(),
        interval: FloatInterval::point(FloatValue::zero(Sign::Positive)),
    };
    trace.interval = convert_decimal(d, fmt, Some(&mut trace));
    trace
}

fn convert_decimal(d: &DecimalScientific, fmt: &FloatFormat, trace: Option<&mut ConversionTrace>) -> FloatInterval {
    if d.is_zero() {
        return FloatInterval::point(FloatValue::zero(Sign::Positive));
    }
    // The value lies in [10^(e-1), 10^e). Exponents this far out are
    // decided without running the digit loops; the margins absorb the
    // rounding in the logarithm.
    let e = d.exponent() as f64;
    if (e - 1.0) * std::f64::consts::LOG2_10 > f64::from(fmt.emax()) + 2.0 {
        return with_sign(overflow_interval(fmt), d.sign());
    }
    if e * std::f64::consts::LOG2_10 < f64::from(fmt.quantum_exponent()) - 2.0 {
        return with_sign(underflow_interval(fmt), d.sign());
    }

    let (m, bin_exp) = binarize_exponent(d.mantissa().clone(), d.exponent());
    let binarized = trace.is_some().then(|| (m.clone(), bin_exp));
    let (m, k) = normalize_mantissa(m, bin_exp);
    let magnitude = match trace {
        Some(trace) => {
            trace.binarized = binarized;
            trace.normalized = Some((m.clone(), k));
            let mut source = Recording { inner: MantissaBits::new(m), bits: &mut trace.bits };
            assemble(&mut source, k, fmt)
        }
        None => assemble(&mut MantissaBits::new(m), k, fmt),
    };
    with_sign(magnitude, d.sign())
}
