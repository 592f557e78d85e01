//! Decimal output of floats and intervals.
//!
//! Every finite binary value has a terminating decimal expansion, found
//! here with the same exact doubling and halving of digit strings used for
//! input. Shorter numerals are obtained by cutting that expansion off, with
//! the direction of the cut chosen per bound so intervals only grow.

use std::fmt;

use crate::decimal::DecimalScientific;
use crate::digitstring::DigitString;
use crate::error::Error;
use crate::floatkit::{decompose, FloatClass, FloatFormat, FloatInterval, FloatValue, Sign};

/// The base-ten digits of `m`, most significant first.
pub fn decimalize_integer(m: u64) -> DigitString {
    let mut digits = Vec::new();
    let mut n = m;
    while n > 0 {
        digits.push((n % 10) as u8);
        n /= 10;
    }
    digits.reverse();
    DigitString::integer(digits).expect("remainders are digits")
}

/// The decimal exponent that turns the integer `d1...dn` into the fraction
/// `0.d1...dn`: its length.
pub fn integer_to_fraction_exponent(m: &DigitString) -> i64 {
    m.len() as i64
}

/// Folds `2^bin_exp` into the decimal exponent:
/// `2^bin_exp * 10^dec_exp * 0.m = 10^dec_exp' * 0.m'`, exactly.
pub fn decimalize_exponent(m: DigitString, bin_exp: i64, dec_exp: i64) -> (DigitString, i64) {
    let mut m = m;
    let mut bin_exp = bin_exp;
    let mut dec_exp = dec_exp;
    if m.is_empty() {
        return (m, dec_exp);
    }
    while bin_exp > 0 {
        bin_exp -= 1;
        if m.mul2_in_place() == 1 {
            dec_exp += 1;
            m.prepend_unit();
        }
    }
    while bin_exp < 0 {
        m.div2_in_place();
        bin_exp += 1;
        if m.drop_leading_zero() {
            dec_exp -= 1;
        }
    }
    (m, dec_exp)
}

/// The decimal numeral exactly equal to a finite `f`.
pub fn float_to_exact_decimal(f: &FloatValue, fmt: &FloatFormat) -> Result<DecimalScientific, Error> {
    if f.is_zero() {
        return Ok(DecimalScientific::zero());
    }
    let (m, e) = decompose(f, fmt)?;
    let integer = decimalize_integer(m);
    let dec_exp = integer_to_fraction_exponent(&integer);
    let (mantissa, dec_exp) = decimalize_exponent(integer.into_fraction(), i64::from(e), dec_exp);
    Ok(DecimalScientific::new(f.sign(), mantissa, dec_exp))
}

/// Which way to cut a numeral short, on the number line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Down,
    Up,
}

/// The nearest numeral of at most `n` significant digits (at the scale of
/// `d`'s leading digit) lying on the requested side of `d`.
///
/// Values that already fit are returned unchanged. A carry out of the
/// leading digit moves the exponent up: `0.999` cut upward to one digit is
/// `0.1e1`.
pub fn truncate_directed(d: &DecimalScientific, n: usize, direction: Direction) -> Result<DecimalScientific, Error> {
    if n == 0 {
        return Err(Error::ZeroDigits);
    }
    if d.mantissa().len() <= n {
        return Ok(d.clone());
    }
    let away_from_zero = match direction {
        Direction::Down => d.is_negative(),
        Direction::Up => !d.is_negative(),
    };
    let mut digits = d.mantissa().digits()[..n].to_vec();
    let mut exponent = d.exponent();
    if away_from_zero {
        let mut position = n;
        loop {
            if position == 0 {
                digits.insert(0, 1);
                digits.pop();
                exponent += 1;
                break;
            }
            position -= 1;
            if digits[position] == 9 {
                digits[position] = 0;
            } else {
                digits[position] += 1;
                break;
            }
        }
    }
    let mantissa = DigitString::fraction(digits)?;
    Ok(DecimalScientific::new(d.sign(), mantissa, exponent))
}

/// One end of a decimal interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DecimalBound {
    Finite(DecimalScientific),
    Infinite(Sign),
}

impl fmt::Display for DecimalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecimalBound::Finite(d) => d.fmt(f),
            DecimalBound::Infinite(Sign::Positive) => f.write_str("inf"),
            DecimalBound::Infinite(Sign::Negative) => f.write_str("-inf"),
        }
    }
}

fn exact_bound(v: &FloatValue, fmt: &FloatFormat) -> Result<DecimalBound, Error> {
    if v.class() == FloatClass::Infinity {
        return Ok(DecimalBound::Infinite(v.sign()));
    }
    float_to_exact_decimal(v, fmt).map(DecimalBound::Finite)
}

/// The narrowest interval with `n`-digit decimal bounds containing `iv`:
/// the lower bound is cut downward and the upper bound upward.
pub fn interval_to_decimal(
    iv: &FloatInterval,
    n: usize,
    fmt: &FloatFormat,
) -> Result<(DecimalBound, DecimalBound), Error> {
    let cut = |v: &FloatValue, direction| -> Result<DecimalBound, Error> {
        match exact_bound(v, fmt)? {
            DecimalBound::Finite(d) => truncate_directed(&d, n, direction).map(DecimalBound::Finite),
            infinite => Ok(infinite),
        }
    };
    Ok((cut(iv.lb(), Direction::Down)?, cut(iv.ub(), Direction::Up)?))
}

/// The bounds of an interval written once with their shared leading part
/// factored out, as in `0.3333333[13465118408203125,432674407958984375]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketRendering {
    pub prefix: String,
    pub low_tail: String,
    pub high_tail: String,
    /// Exponent marker shared by both bounds, written after the brackets.
    pub suffix: String,
    /// Plain `[lo,hi]`, used when the bounds share no leading digit.
    pub fallback: Option<String>,
}

impl BracketRendering {
    fn plain(lo: &str, hi: &str) -> Self {
        BracketRendering {
            prefix: String::new(),
            low_tail: lo.to_string(),
            high_tail: hi.to_string(),
            suffix: String::new(),
            fallback: Some(format!("[{lo},{hi}]")),
        }
    }

    pub fn low(&self) -> String {
        format!("{}{}{}", self.prefix, self.low_tail, self.suffix)
    }

    pub fn high(&self) -> String {
        format!("{}{}{}", self.prefix, self.high_tail, self.suffix)
    }
}

impl fmt::Display for BracketRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fallback {
            Some(plain) => f.write_str(plain),
            None => write!(f, "{}[{},{}]{}", self.prefix, self.low_tail, self.high_tail, self.suffix),
        }
    }
}

fn common_prefix_len(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count()
}

/// Factors the common leading part out of two decimal bounds.
///
/// Bounds of different sign or exponent, or with different leading
/// digits, fall back to the plain `[lo,hi]` form.
pub fn bracket_notation(lo: &DecimalScientific, hi: &DecimalScientific) -> BracketRendering {
    let (lo_text, hi_text) = (lo.to_string(), hi.to_string());
    let comparable = lo.sign() == hi.sign()
        && lo.exponent() == hi.exponent()
        && lo.mantissa().leading_digit() == hi.mantissa().leading_digit();
    if !comparable {
        return BracketRendering::plain(&lo_text, &hi_text);
    }
    let (lo_body, hi_body, suffix) = if lo.is_positional() {
        (lo_text.as_str(), hi_text.as_str(), "")
    } else {
        let split = |t: &str| t.rfind('e').expect("scientific form carries an exponent");
        let (l, h) = (split(&lo_text), split(&hi_text));
        (&lo_text[..l], &hi_text[..h], &lo_text[l..])
    };
    let shared = common_prefix_len(lo_body, hi_body);
    BracketRendering {
        prefix: lo_body[..shared].to_string(),
        low_tail: lo_body[shared..].to_string(),
        high_tail: hi_body[shared..].to_string(),
        suffix: suffix.to_string(),
        fallback: None,
    }
}

/// Bracket rendering for bounds that may be infinite.
pub fn bracket_bounds(lo: &DecimalBound, hi: &DecimalBound) -> BracketRendering {
    match (lo, hi) {
        (DecimalBound::Finite(l), DecimalBound::Finite(h)) => bracket_notation(l, h),
        _ => BracketRendering::plain(&lo.to_string(), &hi.to_string()),
    }
}

/// Writes the fraction bits of a significand as in `1.2aaaab`: a leading
/// partial group of `(p-1) mod 4` bits (one octal digit for binary32), then
/// hexadecimal digits.
fn fraction_digits(fraction: u64, bits: u32) -> String {
    let lead = bits % 4;
    let mut out = String::new();
    if lead > 0 {
        out.push(char::from_digit((fraction >> (bits - lead)) as u32, 16).expect("small"));
    }
    let mut remaining = bits - lead;
    while remaining > 0 {
        remaining -= 4;
        out.push(char::from_digit(((fraction >> remaining) & 0xf) as u32, 16).expect("nibble"));
    }
    out
}

/// `2^(E) * 1.OHHHHH` for a normal value: the unbiased exponent, then the
/// significand's fraction bits as an octal digit and five hex digits
/// (binary32), or thirteen hex digits (binary64).
pub fn paper_hex_rendering(f: &FloatValue, fmt: &FloatFormat) -> Result<String, Error> {
    if f.class() != FloatClass::Normal {
        return Err(Error::NotNormal);
    }
    let (m, e) = decompose(f, fmt)?;
    let bits = fmt.significand_bits() - 1;
    let sign = if f.is_negative() { "-" } else { "" };
    Ok(format!("{sign}2^({}) * 1.{}", e + bits as i32, fraction_digits(m - fmt.hidden_bit(), bits)))
}

/// Like [`paper_hex_rendering`] but total: subnormals print with a leading
/// `0.` at the minimum exponent, zeros as `0` and infinities as `inf`.
pub fn hex_rendering(f: &FloatValue, fmt: &FloatFormat) -> String {
    let sign = if f.is_negative() { "-" } else { "" };
    match f.class() {
        FloatClass::Normal => paper_hex_rendering(f, fmt).expect("normal"),
        FloatClass::Zero => "0".to_string(),
        FloatClass::Infinity => format!("{sign}inf"),
        FloatClass::Subnormal => {
            let bits = fmt.significand_bits() - 1;
            format!("{sign}2^({}) * 0.{}", fmt.emin(), fraction_digits(f.significand(), bits))
        }
    }
}

/// Bracket form of [`hex_rendering`] for an interval, as in
/// `2^(-2) * 1.2aaaa[a,b]`; a point prints as `2^(-1) * 1.000000[,]`.
pub fn hex_bracket(iv: &FloatInterval, fmt: &FloatFormat) -> String {
    let lo = hex_rendering(iv.lb(), fmt);
    let hi = hex_rendering(iv.ub(), fmt);
    let head = |s: &str| s.find('.').map(|i| i + 1);
    match (head(&lo), head(&hi)) {
        (Some(l), Some(h)) if lo[..l] == hi[..h] => {
            let shared = common_prefix_len(&lo, &hi);
            format!("{}[{},{}]", &lo[..shared], &lo[shared..], &hi[shared..])
        }
        _ if lo == hi => format!("{lo}[,]"),
        _ => format!("[{lo},{hi}]"),
    }
}
