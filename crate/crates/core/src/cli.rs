//! Command-line front end.
//!
//! Each command takes its operand as an argument or, when the argument is
//! omitted, reads one operand per line from standard input and writes one
//! tab-separated record per line. Exit codes: 0 success, 1 malformed input
//! or arguments, 2 input outside the domain (NaN, zero denominator, ...),
//! 3 a `--check` mismatch against the rational reference.

use std::io::{BufRead, Write};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::floatkit::{FloatFormat, FloatInterval, FloatValue};
use crate::native::{self, BinaryFloat};
use crate::oracle;
use crate::parse::{self, Rational};
use crate::render::{self, DecimalBound};

#[derive(Debug, Parser)]
#[command(name = "decinterval", version, about = "Outward-rounded decimal I/O for floating-point intervals")]
pub struct Request {
    /// Floating-point format: binary32 or binary64.
    #[arg(long, global = true, default_value = "binary32", value_parser = parse_format)]
    pub format: FloatFormat,

    /// Significant digits for print-interval bounds.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,

    /// Recompute every result with exact rationals; exit 3 on mismatch.
    #[arg(long, global = true)]
    pub check: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Narrowest interval containing a decimal numeral.
    Parse {
        #[arg(allow_hyphen_values = true)]
        numeral: Option<String>,
    },
    /// Narrowest interval containing a fraction P/Q.
    ParseRational {
        #[arg(allow_hyphen_values = true)]
        fraction: Option<String>,
    },
    /// Exact decimal value of a float, given as bits:HEX or a representable numeral.
    Print {
        #[arg(allow_hyphen_values = true)]
        float: Option<String>,
    },
    /// Outward-rounded decimal bounds of the interval [LO, HI].
    PrintInterval {
        #[arg(allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// The table of narrowest intervals around 1/2 ... 1/11.
    Table,
}

fn parse_format(s: &str) -> Result<FloatFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed command, classified by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Syntax(String),
    Domain(String),
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Syntax(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Syntax(m) | Failure::Domain(m) | Failure::Check(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_syntax() {
            Failure::Syntax(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

/// Labelled results of one command: printed one per line for a single
/// operand, or as tab-separated fields in batch mode.
type Fields = Vec<(&'static str, String)>;

/// Runs a parsed request. Returns the process exit code.
pub fn run(request: &Request, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(request, input, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}

fn execute(
    request: &Request,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Domain(format!("i/o: {e}"));
    let single = |fields: Fields, out: &mut dyn Write| -> Result<i32, Failure> {
        for (label, value) in fields {
            if label.is_empty() {
                writeln!(out, "{value}").map_err(io)?;
            } else {
                writeln!(out, "{label} = {value}").map_err(io)?;
            }
        }
        Ok(0)
    };
    match &request.command {
        Command::Table => {
            write!(out, "{}", table(&request.format)?).map_err(io)?;
            Ok(0)
        }
        Command::Parse { numeral: Some(text) } => single(parse_numeral_command(request, text)?, out),
        Command::ParseRational { fraction: Some(text) } => single(parse_rational_command(request, text)?, out),
        Command::Print { float: Some(text) } => single(print_command(request, text)?, out),
        Command::PrintInterval { lo: Some(lo), hi: Some(hi) } => {
            single(print_interval_command(request, lo, hi)?, out)
        }
        Command::PrintInterval { lo: Some(_), hi: None } => {
            Err(Failure::Syntax("print-interval takes two operands, LO and HI".into()))
        }
        _ => batch(request, input, out, err),
    }
}

fn batch(request: &Request, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Domain(format!("i/o: {e}"));
    let mut code = 0;
    for line in input.lines() {
        let line = line.map_err(io)?;
        let operand = line.trim();
        if operand.is_empty() {
            continue;
        }
        let result = match &request.command {
            Command::Parse { .. } => parse_numeral_command(request, operand),
            Command::ParseRational { .. } => parse_rational_command(request, operand),
            Command::Print { .. } => print_command(request, operand),
            Command::PrintInterval { .. } => match operand.split_whitespace().collect::<Vec<_>>()[..] {
                [lo, hi] => print_interval_command(request, lo, hi),
                _ => Err(Failure::Syntax("expected two operands, LO and HI".into())),
            },
            Command::Table => unreachable!("table takes no input"),
        };
        match result {
            Ok(fields) => {
                let values: Vec<String> = fields.into_iter().map(|(_, v)| v).collect();
                writeln!(out, "{operand}\t{}", values.join("\t")).map_err(io)?;
            }
            Err(failure @ Failure::Check(_)) => return Err(failure),
            Err(failure) => {
                writeln!(out, "{operand}\tERR\t{}", failure.message()).map_err(io)?;
                let _ = writeln!(err, "error: {operand}: {}", failure.message());
                code = code.max(failure.exit_code());
            }
        }
    }
    Ok(code)
}

fn exact_text(v: &FloatValue, fmt: &FloatFormat) -> Result<String, Failure> {
    if !v.is_finite() {
        return Ok(DecimalBound::Infinite(v.sign()).to_string());
    }
    Ok(render::float_to_exact_decimal(v, fmt)?.to_string())
}

fn exact_bound(v: &FloatValue, fmt: &FloatFormat) -> Result<DecimalBound, Failure> {
    if !v.is_finite() {
        return Ok(DecimalBound::Infinite(v.sign()));
    }
    Ok(DecimalBound::Finite(render::float_to_exact_decimal(v, fmt)?))
}

fn interval_fields(iv: &FloatInterval, fmt: &FloatFormat) -> Result<Fields, Failure> {
    let bracket = render::bracket_bounds(&exact_bound(iv.lb(), fmt)?, &exact_bound(iv.ub(), fmt)?);
    let both = |v: &FloatValue| -> Result<String, Failure> {
        if v.is_finite() {
            Ok(format!("{} = {}", render::hex_rendering(v, fmt), exact_text(v, fmt)?))
        } else {
            exact_text(v, fmt)
        }
    };
    Ok(vec![
        ("lb", both(iv.lb())?),
        ("ub", both(iv.ub())?),
        ("bracket", bracket.to_string()),
    ])
}

fn check_enclosure(request: &Request, exact: &num_rational::BigRational, iv: &FloatInterval) -> Result<(), Failure> {
    if request.check {
        oracle::verify_enclosure(exact, iv, &request.format).map_err(Failure::Check)?;
    }
    Ok(())
}

fn parse_numeral_command(request: &Request, text: &str) -> Result<Fields, Failure> {
    let d = parse::parse_numeral(text)?;
    let iv = parse::decimal_to_interval(&d, &request.format);
    check_enclosure(request, &oracle::exact_value(&d), &iv)?;
    interval_fields(&iv, &request.format)
}

fn parse_rational_command(request: &Request, text: &str) -> Result<Fields, Failure> {
    let r: Rational = text.parse()?;
    let iv = parse::rational_to_interval(&r, &request.format);
    check_enclosure(request, &oracle::rational_value(&r), &iv)?;
    interval_fields(&iv, &request.format)
}

/// Reads a float operand as an enclosure: `bits:HEX` (the IEEE encoding,
/// most significant digit first) is a point, a decimal numeral gives its
/// narrowest interval.
fn float_operand(text: &str, fmt: &FloatFormat) -> Result<FloatInterval, Failure> {
    if let Some(hex) = text.strip_prefix("bits:") {
        let bad = || Failure::Syntax(format!("bad bit pattern '{hex}'"));
        if hex.is_empty() || hex.len() > 16 {
            return Err(bad());
        }
        let bits = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
        return Ok(FloatInterval::point(native::value_from_bits(bits, fmt)?));
    }
    Ok(parse::decimal_to_interval(&parse::parse_numeral(text)?, fmt))
}

fn print_command(request: &Request, text: &str) -> Result<Fields, Failure> {
    let fmt = &request.format;
    let iv = float_operand(text, fmt)?;
    if !iv.is_degenerate() {
        return Err(Error::NotRepresentable(fmt.to_string()).into());
    }
    let value = *iv.lb();
    let exact = exact_text(&value, fmt)?;
    if request.check && value.is_finite() {
        let d = render::float_to_exact_decimal(&value, fmt)?;
        if oracle::exact_value(&d) != oracle::float_exact_value(&value)? {
            return Err(Failure::Check(format!("decimal {exact} differs from the float")));
        }
    }
    Ok(vec![("", exact)])
}

fn print_interval_command(request: &Request, lo: &str, hi: &str) -> Result<Fields, Failure> {
    let fmt = &request.format;
    let lb = *float_operand(lo, fmt)?.lb();
    let ub = *float_operand(hi, fmt)?.ub();
    let iv = FloatInterval::new(lb, ub)?;
    let n = request.digits as usize;
    let (lo_dec, hi_dec) = render::interval_to_decimal(&iv, n, fmt)?;
    if request.check {
        check_outward(&iv, &lo_dec, &hi_dec, n)?;
    }
    let bracket = render::bracket_bounds(&lo_dec, &hi_dec);
    Ok(vec![("interval", format!("[{lo_dec}, {hi_dec}]")), ("bracket", bracket.to_string())])
}

fn check_outward(iv: &FloatInterval, lo: &DecimalBound, hi: &DecimalBound, n: usize) -> Result<(), Failure> {
    let expect = |bound: &FloatValue, got: &DecimalBound, up: bool| -> Result<(), Failure> {
        match (oracle::float_exact_value(bound), got) {
            (Ok(x), DecimalBound::Finite(d)) => {
                let want = oracle::decimal_round(&x, n, up);
                if oracle::exact_value(d) == want {
                    Ok(())
                } else {
                    Err(Failure::Check(format!("bound {d} should equal {want}")))
                }
            }
            (Err(_), DecimalBound::Infinite(_)) => Ok(()),
            _ => Err(Failure::Check("finite and infinite bounds mixed up".into())),
        }
    };
    expect(iv.lb(), lo, false)?;
    expect(iv.ub(), hi, true)
}

const TABLE_HEADER: &str = "\
1/i     floating-point number     narrowest interval
        produced by standard      containing 1/i
        I/O library via compiler
--------------------------------------------------------
";

fn compiler_value<F: BinaryFloat>(i: u32) -> Result<FloatValue, Error> {
    let divisor = F::from(i).ok_or(Error::NotFinite)?;
    native::to_value(F::one() / divisor)
}

/// Rows for `1/2 ... 1/11`: the float a compiler produces for the literal
/// (round to nearest, via machine division) beside the narrowest interval.
pub fn table(fmt: &FloatFormat) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for i in 2..=11u32 {
        let compiler = if *fmt == FloatFormat::BINARY32 {
            compiler_value::<f32>(i)?
        } else if *fmt == FloatFormat::BINARY64 {
            compiler_value::<f64>(i)?
        } else {
            return Err(Failure::Domain(format!("no machine type for {fmt}")));
        };
        let iv = parse::rational_to_interval(&Rational::from_integers(1, i64::from(i))?, fmt);
        rows.push((format!("1/{i}"), render::paper_hex_rendering(&compiler, fmt)?, render::hex_bracket(&iv, fmt)));
    }
    let width = rows.iter().map(|(_, c, _)| c.len()).max().unwrap_or(0) + 9;
    let mut text = String::from(TABLE_HEADER);
    for (label, compiler, narrow) in rows {
        text.push_str(&format!("{label:<8}{compiler:<width$}{narrow}\n"));
    }
    Ok(text)
}
