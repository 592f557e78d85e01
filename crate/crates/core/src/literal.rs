//! The conversion loops written directly in machine floating point.
//!
//! Here the significand is accumulated in a float `frac` by adding
//! successive powers `pwr = 2^-i`. Every addition is exact as long as
//! the bit being added is representable next to `frac`, so with
//! [`StopRule::ExactAddition`] and a result in the normal range these
//! functions agree bit-for-bit with [`crate::parse`].
//!
//! [`StopRule::WhileSumGrows`] keeps going while `frac + pwr > frac`. That
//! test still passes when `pwr` is the last representable bit, so one more
//! bit gets added; it weighs half an ulp and ties-to-even can round `frac`
//! up past the value being converted.

use num_traits::Float;

use crate::digitstring::DigitString;
use crate::parse::{binarize_exponent, normalize_mantissa};

fn two<F: Float>() -> F {
    F::one() + F::one()
}

/// `2^(1-p)`, found by halving until adding to one makes no difference.
pub fn machine_epsilon<F: Float>() -> F {
    let mut eps = F::one();
    while F::one() + eps > F::one() {
        eps = eps / two();
    }
    eps * two()
}

/// The successor of a positive normal `x` below the largest finite value.
pub fn next_float<F: Float>(x: F) -> F {
    let mut x = x;
    let mut scale = F::one();
    while x < F::one() {
        x = x * two();
        scale = scale / two();
    }
    while x >= two() {
        x = x / two();
        scale = scale * two();
    }
    (x + machine_epsilon::<F>()) * scale
}

/// When the digit loop stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// Continue while `frac + pwr > frac` for the previous power.
    WhileSumGrows,
    /// Continue while the next power can be added to `frac` exactly.
    ExactAddition,
}

impl StopRule {
    fn keep_going<F: Float>(self, frac: F, pwr: F) -> bool {
        match self {
            StopRule::WhileSumGrows => frac + pwr > frac,
            StopRule::ExactAddition => {
                let next = pwr / two();
                (frac + next) - frac == next
            }
        }
    }
}

fn scale_by_power_of_two<F: Float>(x: F, e: i64) -> F {
    let mut x = x;
    let mut e = e;
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

/// Encloses `p/q` for positive `p` and `q`; returns `(lb, ub)`.
pub fn convert_rational<F: Float>(p: u64, q: u64, rule: StopRule) -> (F, F) {
    let (mut p, mut q) = (u128::from(p), u128::from(q));
    let mut k = 0i64;
    while q > p {
        p *= 2;
        k -= 1;
    }
    while p >= q {
        q *= 2;
        k += 1;
    }
    let mut frac = F::zero();
    let mut pwr = F::one();
    while p > 0 && rule.keep_going(frac, pwr) {
        pwr = pwr / two();
        p *= 2;
        if p >= q {
            p -= q;
            frac = frac + pwr;
        }
    }
    let lb = scale_by_power_of_two(frac, k);
    if p == 0 {
        (lb, lb)
    } else {
        (lb, next_float(lb))
    }
}

/// Encloses the positive `10^exp * 0.mantissa`; returns `(lb, ub)`.
pub fn convert_decimal<F: Float>(mantissa: &DigitString, exp: i64, rule: StopRule) -> (F, F) {
    let (m, bin_exp) = binarize_exponent(mantissa.clone(), exp);
    let (mut m, k) = normalize_mantissa(m, bin_exp);
    let mut frac = F::zero();
    let mut pwr = F::one();
    while !m.is_empty() && rule.keep_going(frac, pwr) {
        pwr = pwr / two();
        if m.mul2_in_place() != 0 {
            frac = frac + pwr;
        }
    }
    let lb = scale_by_power_of_two(frac, k);
    if m.is_empty() {
        (lb, lb)
    } else {
        (lb, next_float(lb))
    }
}
