//! Text format for line arrangements.
//!
//! ```text
//! # comment
//! lines 3 precision 256
//! 1 tan(-1/6*pi)
//! -1.86 0.001
//! 0 0
//! ```
//!
//! Each line holds the slope and the anchor. Literals are decimals (with an
//! optional exponent), rationals `p/q`, or `tan(p/q*pi)`. Derived slopes
//! are written as decimals carrying the full working precision.

use std::fmt::Write as _;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{Evaluator, GeometryError, Line, LineArrangement, Scalar};

fn parse_error(line: usize, message: impl Into<String>) -> GeometryError {
    GeometryError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int}{frac}");
    let mut value =
        Rational::from(Integer::from_str(if all.is_empty() { "0" } else { &all }).ok()?);
    let shift = exp - frac.len() as i32;
    let ten = Integer::from(10).pow(shift.unsigned_abs());
    if shift >= 0 {
        value *= ten;
    } else {
        value /= ten;
    }
    Some(if neg { -value } else { value })
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Integer::from_str(p.trim()).ok()?;
            let q = Integer::from_str(q.trim()).ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::from((p, q)))
        }
        None => parse_decimal(s),
    }
}

/// Parses one literal.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("tan(").and_then(|r| r.strip_suffix(')')) {
        let r = inner.trim().strip_suffix("pi")?.trim_end();
        let r = r.strip_suffix('*')?;
        let r = parse_rational(r)?;
        if r.clone().abs() >= (1, 2) {
            return None;
        }
        return Some(Scalar::TanPi(r));
    }
    parse_rational(s).map(Scalar::Exact)
}

fn write_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        return r.numer().to_string();
    }
    // Finite decimal when the denominator is 2^a 5^b.
    let mut d = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while d.is_divisible_u(2) {
        d /= 2;
        twos += 1;
    }
    while d.is_divisible_u(5) {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let k = twos.max(fives);
    let scaled = Rational::from(r * Integer::from(10).pow(k));
    let mut digits = scaled.numer().clone().abs().to_string();
    while digits.len() <= k as usize {
        digits.insert(0, '0');
    }
    let split = digits.len() - k as usize;
    let sign = if *r < 0 { "-" } else { "" };
    format!("{sign}{}.{}", &digits[..split], &digits[split..])
}

fn write_scalar(s: &Scalar, ev: &mut Evaluator, digits: usize) -> Result<String, GeometryError> {
    Ok(match s {
        Scalar::Exact(r) => write_rational(r),
        Scalar::TanPi(r) => format!("tan({}/{}*pi)", r.numer(), r.denom()),
        Scalar::Derived(_) => ev.eval(s)?.to_decimal(digits),
    })
}

impl LineArrangement {
    pub fn parse(text: &str) -> Result<Self, GeometryError> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = rows
            .next()
            .ok_or_else(|| parse_error(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (k, precision) = match fields.as_slice() {
            ["lines", k, "precision", p] => (
                k.parse::<usize>()
                    .map_err(|_| parse_error(hline, format!("bad line count {k:?}")))?,
                p.parse::<u32>()
                    .map_err(|_| parse_error(hline, format!("bad precision {p:?}")))?,
            ),
            ["lines", k] => (
                k.parse::<usize>()
                    .map_err(|_| parse_error(hline, format!("bad line count {k:?}")))?,
                super::DEFAULT_PRECISION,
            ),
            _ => return Err(parse_error(hline, "header must be \"lines k precision p\"")),
        };
        let mut lines = Vec::with_capacity(k);
        for (line_no, row) in rows {
            if lines.len() == k {
                return Err(parse_error(line_no, "more lines than the header declares"));
            }
            let parts: Vec<&str> = row.split_whitespace().collect();
            let [m, a] = parts.as_slice() else {
                return Err(parse_error(line_no, "expected \"slope anchor\""));
            };
            let m =
                parse_scalar(m).ok_or_else(|| parse_error(line_no, format!("bad slope {m:?}")))?;
            let a =
                parse_scalar(a).ok_or_else(|| parse_error(line_no, format!("bad anchor {a:?}")))?;
            lines.push(Line::new(m, a));
        }
        if lines.len() != k {
            return Err(parse_error(
                text.lines().count().max(1),
                format!("expected {k} lines, got {}", lines.len()),
            ));
        }
        Ok(LineArrangement::new(lines, precision))
    }

    pub fn to_text(&self) -> Result<String, GeometryError> {
        let mut ev = Evaluator::new(self.precision);
        let digits = (self.precision as f64 * std::f64::consts::LOG10_2) as usize + 5;
        let mut out = format!("lines {} precision {}\n", self.lines.len(), self.precision);
        for l in &self.lines {
            let m = write_scalar(&l.slope, &mut ev, digits)?;
            let a = write_scalar(&l.anchor, &mut ev, digits)?;
            writeln!(out, "{m} {a}").expect("writing to a String");
        }
        Ok(out)
    }
}

impl FromStr for LineArrangement {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LineArrangement::parse(s)
    }
}
