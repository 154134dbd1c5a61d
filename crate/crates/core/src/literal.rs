//! Text literals for complex scalars and quaternions.
//!
//! A complex literal is `a`, `bj` or `a+bj` / `a-bj`, where each part is a
//! signed decimal (`-12.5`) or a signed ratio (`-1/3`). Quaternions are written
//! scalar-first as `[c0, c1, c2, c3]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Parses an unsigned decimal or ratio such as `12`, `0.125` or `7/3`.
pub fn parse_unsigned_real(src: &str) -> Option<BigRational> {
    if let Some((n, d)) = src.split_once('/') {
        let n = parse_unsigned_real(n)?;
        let d = parse_unsigned_real(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (int_part, frac_part) = match src.split_once('.') {
        Some((i, f)) => (i, f),
        None => (src, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer, denom))
}

fn parse_signed_real(src: &str) -> Option<BigRational> {
    let src = src.trim();
    match src.strip_prefix('-') {
        Some(rest) => parse_unsigned_real(rest.trim_start()).map(|q| -q),
        None => parse_unsigned_real(src.strip_prefix('+').unwrap_or(src).trim_start()),
    }
}

/// Parses a complex literal into exact rational parts.
pub fn parse_complex_parts(src: &str) -> Result<(BigRational, BigRational)> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Literal(format!("invalid complex literal `{src}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some(body) = s.strip_suffix('j') {
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_signed_real(&body[..i]).ok_or_else(bad)?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_signed_real(other).ok_or_else(bad)?,
        };
        Ok((re, im))
    } else {
        Ok((parse_signed_real(&s).ok_or_else(bad)?, BigRational::zero()))
    }
}

pub fn parse_complex<S: Scalar>(src: &str) -> Result<S> {
    let (re, im) = parse_complex_parts(src)?;
    Ok(S::from_rationals(&re, &im))
}

/// Parses `[c0, c1, c2, c3]`.
pub fn parse_quaternion<S: Scalar>(src: &str) -> Result<Quaternion<S>> {
    let inner = src
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Literal(format!("quaternion literal must be bracketed: `{src}`")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Literal(format!(
            "quaternion literal needs 4 components, got {}: `{src}`",
            parts.len()
        )));
    }
    let mut c = Vec::with_capacity(4);
    for p in parts {
        c.push(parse_complex::<S>(p)?);
    }
    let [c0, c1, c2, c3]: [S; 4] = c.try_into().expect("four components");
    Ok(Quaternion::new(c0, c1, c2, c3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex_parts("3").unwrap(), (q(3, 1), q(0, 1)));
        assert_eq!(parse_complex_parts("-5j").unwrap(), (q(0, 1), q(-5, 1)));
        assert_eq!(parse_complex_parts("2-3j").unwrap(), (q(2, 1), q(-3, 1)));
        assert_eq!(
            parse_complex_parts("-0.5 + 1/4j").unwrap(),
            (q(-1, 2), q(1, 4))
        );
        assert_eq!(parse_complex_parts("j").unwrap(), (q(0, 1), q(1, 1)));
        assert_eq!(parse_complex_parts("1.25").unwrap(), (q(5, 4), q(0, 1)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1..2", "3jj", "1/0", "--2"] {
            assert!(parse_complex_parts(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn quaternion_literal() {
        let a: Quaternion<Exact> = parse_quaternion("[0, -5j, -3, 0]").unwrap();
        assert_eq!(a.to_string(), "[0, -5j, -3, 0]");
        assert!(parse_quaternion::<Exact>("[1,2,3]").is_err());
    }
}
