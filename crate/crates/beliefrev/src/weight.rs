//! Arithmetic modes for masses and beliefs.
//!
//! Every operation in this crate is generic over [`Weight`], with two
//! implementations: `f64` (floating mode, tolerance-based comparisons) and
//! [`num::BigRational`] (exact mode, used by oracles and the acceptance
//! suite). In exact mode the default tolerance is zero, so every
//! tolerance-based check degenerates to exact equality.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Scalar type for masses, beliefs and plausibilities.
pub trait Weight:
    Clone
    + PartialOrd
    + Signed
    + AddAssign
    + SubAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Parses a decimal string (`"0.1875"`, `"1e-3"`) or a fraction (`"3/16"`).
    ///
    /// Exact mode parses decimals exactly; floating mode goes through `f64`.
    fn parse_decimal(text: &str) -> Result<Self>;

    fn to_f64(&self) -> f64;

    /// Default tolerance for sum checks and zero tests: `1e-9` floating, `0` exact.
    fn default_tolerance() -> Self;

    /// Renders the value so that re-parsing it with [`Weight::parse_decimal`]
    /// recovers it exactly.
    fn render(&self) -> String;

    /// Zero test at the default tolerance. Denominator guards use this so
    /// that floating dust does not masquerade as usable mass.
    fn is_negligible(&self) -> bool {
        self.abs() <= Self::default_tolerance()
    }
}

/// `|a - b| <= tol`.
pub fn within_tol<T: Weight>(a: &T, b: &T, tol: &T) -> bool {
    (a.clone() - b.clone()).abs() <= *tol
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn parse_decimal(text: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|e| Error::NumberParse {
                text: s.to_string(),
                reason: e.to_string(),
            })
        };
        let value = match text.split_once('/') {
            Some((numer, denom)) => {
                let d = parse(denom)?;
                if d == 0.0 {
                    return Err(Error::NumberParse {
                        text: text.to_string(),
                        reason: "zero denominator".to_string(),
                    });
                }
                parse(numer)? / d
            }
            None => parse(text)?,
        };
        if !value.is_finite() {
            return Err(Error::NumberParse {
                text: text.to_string(),
                reason: "not a finite number".to_string(),
            });
        }
        Ok(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn default_tolerance() -> Self {
        1e-9
    }

    fn render(&self) -> String {
        // `Display` for f64 is the shortest string that round-trips.
        format!("{self}")
    }
}

impl Weight for BigRational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse_decimal(text: &str) -> Result<Self> {
        parse_rational(text.trim()).ok_or_else(|| Error::NumberParse {
            text: text.to_string(),
            reason: "expected a decimal like 0.25, an exponent form like 1e-3, or a fraction like 1/4".to_string(),
        })
    }

    fn to_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn default_tolerance() -> Self {
        BigRational::zero()
    }

    fn render(&self) -> String {
        render_rational(self)
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((numer, denom)) = text.split_once('/') {
        let n: BigInt = numer.trim().parse().ok()?;
        let d: BigInt = denom.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }

    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };

    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };

    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }

    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let mut denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    if exponent >= 0 {
        numer *= BigInt::from(10u32).pow(exponent as u32);
    } else {
        denom *= BigInt::from(10u32).pow(exponent.unsigned_abs());
    }
    Some(BigRational::new(numer, denom))
}

fn render_rational(value: &BigRational) -> String {
    if value.is_integer() {
        return value.to_integer().to_string();
    }
    // Decimal expansion terminates iff the reduced denominator is 2^a * 5^b.
    let mut d = value.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }

    let digits = twos.max(fives);
    let scaled = (value.numer() * BigInt::from(10u32).pow(digits)) / value.denom();
    let negative = scaled.is_negative();
    let mut text = scaled.abs().to_string();
    let digits = digits as usize;
    if text.len() <= digits {
        text = format!("{}{}", "0".repeat(digits - text.len() + 1), text);
    }
    let point = text.len() - digits;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&text[..point]);
    out.push('.');
    out.push_str(text[point..].trim_end_matches('0'));
    if out.ends_with('.') {
        out.pop();
    }
    out
}
