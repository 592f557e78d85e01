//! Acceptance suite. Runs every criterion, prints one `PASS`/`FAIL` line
//! per criterion and exits nonzero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use decinterval::cli::table;
use decinterval::oracle::{
    compare_bound, decimal_ceil, decimal_floor, digit_string_value, exact_value, float_exact_value,
    narrowest_interval_reference, rational_value, ratio,
};
use decinterval::parse::{decimal_to_interval, decimal_to_interval_traced, parse_numeral, rational_to_interval, RationalBits};
use decinterval::render::{bracket_notation, float_to_exact_decimal, interval_to_decimal};
use decinterval::{
    DecimalBound, DecimalScientific, DigitRole, DigitString, FloatClass, FloatFormat, FloatInterval, FloatValue,
    Rational, Sign,
};

const FORMATS: [FloatFormat; 2] = [FloatFormat::BINARY32, FloatFormat::BINARY64];
const GOLDEN: &str = include_str!("golden/sioresults.txt");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(elapsed: Duration, budget: Duration, detail: String) -> Outcome {
    if elapsed < budget {
        Ok(format!("{detail}, {:.2?}", elapsed))
    } else {
        Err(format!("{detail}, but took {:.2?} (budget {:.0?})", elapsed, budget))
    }
}

/// Splits `total` samples over the available cores; each worker gets its
/// own deterministic stream.
fn parallel<T: Send>(total: usize, seed: u64, work: impl Fn(&mut ChaCha8Rng, usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let per = total.div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let work = &work;
                s.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (w as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                    work(&mut rng, per.min(total.saturating_sub(w * per)))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn first_error(results: Vec<Result<usize, String>>) -> Result<usize, String> {
    results.into_iter().try_fold(0, |acc, r| r.map(|n| acc + n))
}

fn golden_table() -> Outcome {
    let start = Instant::now();
    let ours = table(&FloatFormat::BINARY32).map_err(|e| format!("{e:?}"))?;
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = GOLDEN
        .lines()
        .zip(ours.lines())
        .filter(|(g, o)| g != o)
        .map(|(g, o)| format!("expected {g:?}, got {o:?}"))
        .collect();
    if !mismatches.is_empty() || GOLDEN.lines().count() != ours.lines().count() {
        return Err(mismatches.join("; "));
    }
    within(elapsed, Duration::from_secs(1), "all rows byte-exact".into())
}

fn third_bounds() -> (DecimalScientific, DecimalScientific) {
    let fmt = FloatFormat::BINARY32;
    let iv = rational_to_interval(&Rational::from_integers(1, 3).unwrap(), &fmt);
    (float_to_exact_decimal(iv.lb(), &fmt).unwrap(), float_to_exact_decimal(iv.ub(), &fmt).unwrap())
}

fn exact_third() -> Outcome {
    let start = Instant::now();
    let (lo, hi) = third_bounds();
    let got = (lo.mantissa().to_string(), hi.mantissa().to_string());
    let want = ("333333313465118408203125".to_string(), "3333333432674407958984375".to_string());
    if got != want || lo.exponent() != 0 || hi.exponent() != 0 {
        return Err(format!("got {got:?} with exponents {} and {}", lo.exponent(), hi.exponent()));
    }
    within(start.elapsed(), Duration::from_secs(1), "both mantissas byte-exact".into())
}

fn bracket_third() -> Outcome {
    let (lo, hi) = third_bounds();
    let got = bracket_notation(&lo, &hi).to_string();
    if got == "0.3333333[13465118408203125,432674407958984375]" {
        Ok(got)
    } else {
        Err(format!("got {got}"))
    }
}

fn worked_binarization() -> Outcome {
    let d = parse_numeral("0.0123").unwrap();
    if (d.mantissa().to_string().as_str(), d.exponent()) != ("123", -1) {
        return Err(format!("numeral read as {d:?}"));
    }
    let trace = decimal_to_interval_traced(&d, &FloatFormat::BINARY32);
    let state = |s: &Option<(DigitString, i64)>| s.as_ref().map(|(m, e)| (m.to_string(), *e));
    let binarized = state(&trace.binarized);
    let normalized = state(&trace.normalized);
    if binarized != Some(("1968".into(), -4)) {
        return Err(format!("binarized to {binarized:?}"));
    }
    if normalized != Some(("7872".into(), -6)) {
        return Err(format!("normalized to {normalized:?}"));
    }
    if trace.bits.get(..5) != Some(&[1, 1, 0, 0, 1][..]) {
        return Err(format!("bits begin {:?}", &trace.bits[..trace.bits.len().min(5)]));
    }
    Ok("(1968, 2^-4) -> (7872, 2^-6) -> 0.11001...".into())
}

fn three_sevenths() -> Outcome {
    let bits: Vec<u8> = RationalBits::new(BigUint::from(3u8), BigUint::from(7u8)).unwrap().take(30).collect();
    let want: Vec<u8> = [0, 1, 1].iter().copied().cycle().take(30).collect();
    if bits != want {
        return Err(format!("got {bits:?}"));
    }
    let fmt = FloatFormat::BINARY32;
    let iv = rational_to_interval(&Rational::from_integers(3, 7).unwrap(), &fmt);
    if iv != narrowest_interval_reference(&ratio(3, 7), &fmt) {
        return Err(format!("interval {iv:?} disagrees with the reference"));
    }
    Ok("30 bits of 011 011 ...".into())
}

fn random_fraction(rng: &mut ChaCha8Rng, len: usize) -> DigitString {
    DigitString::fraction((0..len).map(|_| rng.gen_range(0..10u8)).collect::<Vec<_>>()).unwrap()
}

fn random_decimal(rng: &mut ChaCha8Rng, exponent_range: i64) -> DecimalScientific {
    let len = rng.gen_range(1..=40);
    let mut digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..10u8)).collect();
    digits[0] = rng.gen_range(1..10u8);
    let sign = if rng.gen() { Sign::Negative } else { Sign::Positive };
    let exponent = rng.gen_range(-exponent_range..=exponent_range);
    DecimalScientific::new(sign, DigitString::fraction(digits).unwrap(), exponent)
}

fn containment() -> Outcome {
    const SAMPLES: usize = 100_000;
    let start = Instant::now();
    for (fmt, range, seed) in [(FloatFormat::BINARY32, 60, 6032), (FloatFormat::BINARY64, 350, 6064)] {
        first_error(parallel(SAMPLES, seed, |rng, n| {
            for _ in 0..n {
                let d = random_decimal(rng, range);
                let got = decimal_to_interval(&d, &fmt);
                let want = narrowest_interval_reference(&exact_value(&d), &fmt);
                if got != want {
                    return Err(format!("{fmt} {d}: got {got:?}, expected {want:?}"));
                }
            }
            Ok(n)
        }))?;
    }
    within(start.elapsed(), Duration::from_secs(60), format!("{SAMPLES} numerals per format bit-exact"))
}

/// A finite float with bits drawn uniformly, or, one time in twenty, a
/// subnormal.
fn random_float(rng: &mut ChaCha8Rng, fmt: &FloatFormat) -> FloatValue {
    let sign = if rng.gen() { Sign::Negative } else { Sign::Positive };
    let p = fmt.significand_bits();
    let quantum = i64::from(fmt.quantum_exponent());
    if rng.gen_ratio(1, 20) {
        let m = rng.gen_range(1..fmt.hidden_bit());
        return FloatValue::from_parts(sign, m, quantum, fmt).unwrap();
    }
    let m = rng.gen_range(0..fmt.hidden_bit()) | fmt.hidden_bit();
    let e = rng.gen_range(quantum..=i64::from(fmt.emax()) - i64::from(p) + 1);
    FloatValue::from_parts(sign, m, e, fmt).unwrap()
}

fn round_trip() -> Outcome {
    const SAMPLES: usize = 100_000;
    let start = Instant::now();
    let mut subnormals = Vec::new();
    for (fmt, seed) in [(FloatFormat::BINARY32, 7032), (FloatFormat::BINARY64, 7064)] {
        let count = first_error(parallel(SAMPLES, seed, |rng, n| {
            let mut subnormal = 0;
            for _ in 0..n {
                let f = random_float(rng, &fmt);
                subnormal += usize::from(f.class() == FloatClass::Subnormal);
                let d = float_to_exact_decimal(&f, &fmt).map_err(|e| e.to_string())?;
                let back = decimal_to_interval(&d, &fmt);
                if !(back.is_degenerate() && back.lb() == &f) {
                    return Err(format!("{fmt} {f:?} -> {d} -> {back:?}"));
                }
            }
            Ok(subnormal)
        }))?;
        if count < 1000 {
            return Err(format!("only {count} subnormals drawn for {fmt}"));
        }
        subnormals.push(count);
    }
    Ok(format!("{SAMPLES} floats per format, subnormals {subnormals:?}, {:.2?}", start.elapsed()))
}

fn bound_value(b: &DecimalBound) -> Option<BigRational> {
    match b {
        DecimalBound::Finite(d) => Some(exact_value(d)),
        DecimalBound::Infinite(_) => None,
    }
}

fn check_outward(iv: &FloatInterval, n: usize, fmt: &FloatFormat) -> Result<(), String> {
    let (lo, hi) = interval_to_decimal(iv, n, fmt).map_err(|e| e.to_string())?;
    let lb = float_exact_value(iv.lb()).map_err(|e| e.to_string())?;
    let ub = float_exact_value(iv.ub()).map_err(|e| e.to_string())?;
    let (Some(lo_v), Some(hi_v)) = (bound_value(&lo), bound_value(&hi)) else {
        return Err(format!("infinite bound for finite {iv:?}"));
    };
    if !(lo_v <= lb && lb <= ub && ub <= hi_v) {
        return Err(format!("n={n}: [{lo}, {hi}] does not enclose {iv:?}"));
    }
    if lo_v != decimal_floor(&lb, n) || hi_v != decimal_ceil(&ub, n) {
        return Err(format!("n={n}: [{lo}, {hi}] is not the tightest enclosure of {iv:?}"));
    }
    for (label, b) in [("lo", &lo), ("hi", &hi)] {
        if let DecimalBound::Finite(d) = b {
            if d.mantissa().len() > n {
                return Err(format!("n={n}: {label} {d} has more than {n} digits"));
            }
        }
    }
    Ok(())
}

fn random_interval(rng: &mut ChaCha8Rng, fmt: &FloatFormat) -> FloatInterval {
    let a = random_float(rng, fmt);
    let b = match rng.gen_range(0..3) {
        0 => a,
        1 => decinterval::floatkit::next_up(&a, fmt),
        _ => random_float(rng, fmt),
    };
    let (lb, ub) = if a.numeric_cmp(&b).is_le() { (a, b) } else { (b, a) };
    FloatInterval::new(lb, ub).unwrap()
}

fn outward_truncation() -> Outcome {
    const INTERVALS: usize = 10_000;
    let start = Instant::now();
    for (fmt, seed) in [(FloatFormat::BINARY32, 8032), (FloatFormat::BINARY64, 8064)] {
        first_error(parallel(INTERVALS, seed, |rng, count| {
            for _ in 0..count {
                let iv = random_interval(rng, &fmt);
                for n in 1..=20 {
                    check_outward(&iv, n, &fmt).map_err(|e| format!("{fmt}: {e}"))?;
                }
            }
            Ok(count)
        }))?;
    }
    Ok(format!("{INTERVALS} intervals per format, n = 1..=20, {:.2?}", start.elapsed()))
}

fn digit_identities() -> Outcome {
    const SAMPLES: usize = 100_000;
    let start = Instant::now();
    let two = ratio(2, 1);
    first_error(parallel(SAMPLES, 9000, |rng, n| {
        for _ in 0..n {
            let len = rng.gen_range(0..=60);
            let m = random_fraction(rng, len);
            let v = digit_string_value(&m);
            let (doubled, carry) = m.mul2();
            if digit_string_value(&doubled) + ratio(i64::from(carry), 1) != &v * &two {
                return Err(format!("mul2({m}) = {carry} + 0.{doubled}"));
            }
            let halved = m.div2();
            if digit_string_value(&halved) * &two != v {
                return Err(format!("div2({m}) = 0.{halved}"));
            }
            if halved.mul2() != (m.clone(), 0) {
                return Err(format!("mul2(div2({m})) != {m}"));
            }
            let integer = DigitString::integer(m.digits().to_vec()).unwrap();
            let twice = integer.double_integer();
            if twice.role() != DigitRole::Integer || digit_string_value(&twice) != digit_string_value(&integer) * &two {
                return Err(format!("double_integer({integer}) = {twice}"));
            }
            for s in [&doubled, &halved] {
                if s.digits().last() == Some(&0) || s.digits().iter().any(|&d| d > 9) {
                    return Err(format!("non-canonical result {s:?} from {m}"));
                }
            }
        }
        Ok(n)
    }))?;
    Ok(format!("{SAMPLES} digit strings, {:.2?}", start.elapsed()))
}

/// Numerals covering the ends and seams of both formats.
fn edge_numerals() -> Vec<(FloatFormat, String)> {
    let mut cases = Vec::new();
    let fixed32 = [
        "1e-45", "1.4e-45", "1.401298464324817e-45", "7e-46", "7.006492321624085e-46", "7.1e-46", "1e-46",
        "2.8e-45", "1.1754942e-38", "1.1754943e-38", "1.1754944e-38", "1.17549435e-38",
        "3.4028234e38", "3.4028235e38", "3.40282356779733661637539395458142568448e38", "3.4028236e38",
        "3.5e38", "1e39", "-1e39", "1e100000", "-1e-100000", "0", "-0.0", "1", "0.5", "16777216", "16777217",
        "33554431", "0.1", "-0.1",
    ];
    let fixed64 = [
        "5e-324", "4.9e-324", "2.4703282292062327e-324", "2.4703282292062328e-324", "2e-324", "1e-330",
        "2.2250738585072009e-308", "2.2250738585072014e-308", "2.225073858507201e-308",
        "1.7976931348623157e308", "1.7976931348623158e308", "1.797693134862315807e308", "1.8e308", "1e400",
        "-1e400", "9007199254740993", "9007199254740992", "0.1", "1e23", "8.98846567431158e307",
    ];
    cases.extend(fixed32.iter().map(|s| (FloatFormat::BINARY32, s.to_string())));
    cases.extend(fixed64.iter().map(|s| (FloatFormat::BINARY64, s.to_string())));
    for fmt in FORMATS {
        let quantum = i64::from(fmt.quantum_exponent());
        let p = i64::from(fmt.significand_bits());
        let seams = [
            FloatValue::smallest_subnormal(&fmt, Sign::Positive),
            FloatValue::from_parts(Sign::Positive, 2, quantum, &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, fmt.hidden_bit() - 1, quantum, &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, fmt.hidden_bit(), quantum, &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, fmt.hidden_bit() + 1, quantum, &fmt).unwrap(),
            FloatValue::largest_finite(&fmt, Sign::Positive),
            FloatValue::from_parts(Sign::Positive, 1, i64::from(fmt.emax()), &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, 1, 0, &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, 1, p, &fmt).unwrap(),
            FloatValue::from_parts(Sign::Positive, 1, -p, &fmt).unwrap(),
        ];
        for v in seams {
            let d = float_to_exact_decimal(&v, &fmt).unwrap();
            let mut digits = d.mantissa().digits().to_vec();
            let exact = d.to_string();
            digits.push(1);
            let above = DecimalScientific::new(Sign::Positive, DigitString::fraction(digits.clone()).unwrap(), d.exponent());
            digits.truncate(digits.len().saturating_sub(2).max(1));
            let below = DecimalScientific::new(Sign::Positive, DigitString::fraction(digits).unwrap(), d.exponent());
            for s in [exact.clone(), format!("-{exact}"), above.to_string(), below.to_string()] {
                cases.push((fmt, s));
            }
        }
    }
    cases
}

fn edge_sweep() -> Outcome {
    let numerals = edge_numerals();
    for (fmt, s) in &numerals {
        let d = parse_numeral(s).map_err(|e| format!("{s}: {e}"))?;
        let x = exact_value(&d);
        let iv = decimal_to_interval(&d, fmt);
        let want = narrowest_interval_reference(&x, fmt);
        if iv != want {
            return Err(format!("{fmt} {s}: got {iv:?}, expected {want:?}"));
        }
        if compare_bound(iv.lb(), &x).is_gt() || compare_bound(iv.ub(), &x).is_lt() {
            return Err(format!("{fmt} {s}: {iv:?} misses the value"));
        }
    }
    let rationals = [(1i64, 1i64 << 40), (-1, 3), (i64::MAX, 1), (1, i64::MAX), (7, 1), (0, 5)];
    for fmt in FORMATS {
        for (p, q) in rationals {
            let r = Rational::from_integers(p, q).unwrap();
            let iv = rational_to_interval(&r, &fmt);
            let want = narrowest_interval_reference(&rational_value(&r), &fmt);
            if iv != want {
                return Err(format!("{fmt} {p}/{q}: got {iv:?}, expected {want:?}"));
            }
        }
    }
    Ok(format!("{} numerals and {} fractions", numerals.len(), 2 * rationals.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden table", golden_table),
        ("exact decimal of 1/3 bounds", exact_third),
        ("bracket notation of 1/3", bracket_third),
        ("worked binarization of 0.0123", worked_binarization),
        ("binary expansion of 3/7", three_sevenths),
        ("containment and tightness", containment),
        ("round trip", round_trip),
        ("outward truncation", outward_truncation),
        ("digit-string exactness", digit_identities),
        ("edge sweep", edge_sweep),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
