//! Exact rationals as `"p/q"` strings and their decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Rational {
    BigRational::new(p.into(), q.into())
}

/// Always `p/q` with `q >= 1`, reduced.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Decimal rendering rounded to `digits` significant digits, e.g.
/// `3.40212345678` or `1.23456789012e-7`.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    // mantissa digits: round(a * 10^(digits-1-e))
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if BigInt::from(2) * rem >= *scaled.denom() {
        m += 1;
    }
    let mut ms = m.to_string();
    if ms.len() > digits {
        // rounding carried into a new digit
        e += 1;
        ms.truncate(digits);
    }
    let trimmed = ms.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
    let body = if (-5..=15).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            let padded = format!("{:0<width$}", trimmed, width = int_len);
            let (ip, fp) = padded.split_at(int_len);
            if fp.is_empty() {
                ip.to_string()
            } else {
                format!("{ip}.{fp}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), trimmed)
        }
    } else {
        let (h, t) = trimmed.split_at(1);
        if t.is_empty() {
            format!("{h}e{e}")
        } else {
            format!("{h}.{t}e{e}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
