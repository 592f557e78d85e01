//! Decimal input and output for interval arithmetic.
//!
//! Reading a numeral such as `0.1` into an interval variable must produce
//! bounds that actually contain one tenth; writing an interval with a few
//! digits must round the lower bound down and the upper bound up. This
//! crate does both without touching the FPU rounding mode:
//!
//! * [`parse`] turns decimal numerals and fractions `p/q` into the
//!   narrowest enclosing interval of binary floating-point values;
//! * [`render`] writes floats as exact decimals, cuts them to `n` digits in
//!   a chosen direction and prints intervals in bracket notation;
//! * [`oracle`] recomputes the same answers with big rationals.
//!
//! The core works on format-agnostic [`FloatValue`]s. The functions at the
//! crate root are generic over the machine float type:
//!
//! ```
//! use decinterval::{parse_interval, Interval32};
//!
//! let tenth: Interval32 = parse_interval("0.1").unwrap();
//! assert!(tenth.lb < tenth.ub);
//! assert_eq!(tenth.ub, 0.1f32); // round-to-nearest happens to pick ub
//! ```

pub mod cli;
pub mod decimal;
pub mod digitstring;
pub mod error;
pub mod floatkit;
pub mod literal;
pub mod native;
pub mod oracle;
pub mod parse;
pub mod render;

pub use decimal::DecimalScientific;
pub use digitstring::{DigitRole, DigitString};
pub use error::Error;
pub use floatkit::{FloatClass, FloatFormat, FloatInterval, FloatValue, Sign};
pub use native::{BinaryFloat, Interval};
pub use parse::Rational;
pub use render::{BracketRendering, DecimalBound, Direction};

pub type Interval32 = Interval<f32>;
pub type Interval64 = Interval<f64>;

/// The narrowest `F` interval containing the value of a decimal numeral.
pub fn parse_interval<F: BinaryFloat>(text: &str) -> Result<Interval<F>, Error> {
    let d = parse::parse_numeral(text)?;
    Ok(Interval::from_float_interval(&parse::decimal_to_interval(&d, &F::FORMAT)))
}

/// The narrowest `F` interval containing `p/q`.
pub fn rational_interval<F: BinaryFloat>(p: i64, q: i64) -> Result<Interval<F>, Error> {
    let r = Rational::from_integers(p, q)?;
    Ok(Interval::from_float_interval(&parse::rational_to_interval(&r, &F::FORMAT)))
}

/// The decimal numeral exactly equal to `x`.
pub fn exact_decimal<F: BinaryFloat>(x: F) -> Result<DecimalScientific, Error> {
    render::float_to_exact_decimal(&native::to_value(x)?, &F::FORMAT)
}

/// `iv` widened to bounds of `digits` significant decimal digits.
pub fn outward_decimal<F: BinaryFloat>(iv: &Interval<F>, digits: usize) -> Result<(DecimalBound, DecimalBound), Error> {
    render::interval_to_decimal(&iv.to_float_interval()?, digits, &F::FORMAT)
}

/// `iv` in bracket notation with bounds of `digits` significant digits,
/// e.g. `0.3333[3,4]`.
pub fn bracket<F: BinaryFloat>(iv: &Interval<F>, digits: usize) -> Result<BracketRendering, Error> {
    let (lo, hi) = outward_decimal(iv, digits)?;
    Ok(render::bracket_bounds(&lo, &hi))
}
