//! Text forms of scalars, coefficient lists, sample regions and index families.
//!
//! Scalars are parsed exactly: `3`, `-0.25`, `1e-3`, `1/3`, `2-i`, `1/2+3/4i`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use pade_core::{Descriptor, Exact, IndexFamily, Polynomial, Scalar};

use crate::error::CliError;

fn arg_err(msg: impl Into<String>) -> CliError {
    CliError::Arg(msg.into())
}

/// A plain decimal such as `12`, `-0.5` or `2.5e-3`, as an exact rational.
fn decimal(s: &str) -> Result<BigRational, CliError> {
    let bad = || arg_err(format!("invalid number `{s}`"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(all * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(all, Pow::pow(&ten, scale.unsigned_abs()))
    };
    Ok(value * BigRational::from_integer(BigInt::from(sign)))
}

/// `a` or `a/b` with decimal `a`, `b`.
fn real(s: &str) -> Result<BigRational, CliError> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = decimal(d)?;
            if d.is_zero() {
                return Err(arg_err(format!("zero denominator in `{s}`")));
            }
            Ok(decimal(n)? / d)
        }
        None => decimal(s),
    }
}

/// Splits at `+`/`-` signs that start a new term (not exponent signs).
fn terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && prev != b'e' && prev != b'E' && prev != b'/' {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

pub fn scalar(text: &str) -> Result<Exact, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(arg_err("empty scalar"));
    }
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    for term in terms(&compact) {
        match term.strip_suffix('i') {
            Some(body) => {
                let coeff = match body {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => real(body)?,
                };
                im += coeff;
            }
            None => re += real(term)?,
        }
    }
    Ok(Complex::new(re, im))
}

pub fn point(text: &str) -> Result<Complex64, CliError> {
    Ok(scalar(text)?.to_c64())
}

/// A nonnegative real such as a radius.
pub fn real_value(text: &str) -> Result<f64, CliError> {
    let z = scalar(text)?;
    if !z.im.is_zero() {
        return Err(arg_err(format!("expected a real number, got `{text}`")));
    }
    Ok(z.to_c64().re)
}

/// Comma-separated coefficients in ascending powers of `z`.
pub fn polynomial<S: Scalar>(text: &str) -> Result<Polynomial<S>, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| scalar(c).map(|x| S::from_exact(&x)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(coeffs))
}

/// Semicolon-separated scalars.
pub fn scalar_list(text: &str) -> Result<Vec<Exact>, CliError> {
    text.split(';').map(scalar).collect()
}

/// `disk:C:R`, `annulus:C:R1:R2`, `circle:C:R[:COUNT]` or `points:Z1;Z2;…`.
pub fn region(text: &str, density: usize) -> Result<Descriptor, CliError> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| arg_err(format!("region `{text}` needs the form kind:…")))?;
    let parts: Vec<&str> = rest.split(':').collect();
    let wrong = || arg_err(format!("malformed {kind} region `{text}`"));
    match kind {
        "disk" => match parts.as_slice() {
            [c, r] => Ok(Descriptor::Disk { center: point(c)?, radius: real_value(r)?, density }),
            _ => Err(wrong()),
        },
        "annulus" => match parts.as_slice() {
            [c, r1, r2] => Ok(Descriptor::Annulus {
                center: point(c)?,
                r_in: real_value(r1)?,
                r_out: real_value(r2)?,
                density,
            }),
            _ => Err(wrong()),
        },
        "circle" => {
            let (c, r, count) = match parts.as_slice() {
                [c, r] => (c, r, 4 * density),
                [c, r, n] => (c, r, n.parse().map_err(|_| wrong())?),
                _ => return Err(wrong()),
            };
            Ok(Descriptor::Circle { center: point(c)?, radius: real_value(r)?, count })
        }
        "points" => Ok(Descriptor::Explicit {
            points: rest.split(';').map(point).collect::<Result<_, _>>()?,
        }),
        _ => Err(arg_err(format!("unknown region kind `{kind}`"))),
    }
}

/// `diagonal`, `row:Q`, `column:P` or `explicit:P/Q,P/Q,…`.
pub fn family(text: &str) -> Result<IndexFamily, CliError> {
    let index = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| arg_err(format!("invalid index `{s}` in family `{text}`")))
    };
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    match kind {
        "diagonal" if rest.is_empty() => Ok(IndexFamily::Diagonal),
        "row" => Ok(IndexFamily::Row(index(rest)?)),
        "column" => Ok(IndexFamily::Column(index(rest)?)),
        "explicit" => {
            let pairs = rest
                .split(',')
                .map(|pair| {
                    let (p, q) = pair
                        .split_once('/')
                        .ok_or_else(|| arg_err(format!("index pair `{pair}` needs the form p/q")))?;
                    Ok((index(p)?, index(q)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(IndexFamily::Explicit(pairs))
        }
        _ => Err(arg_err(format!("unknown index family `{text}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pade_core::scalar::exact;

    #[test]
    fn scalars() {
        assert_eq!(scalar("1/2").unwrap(), exact((1, 2), (0, 1)));
        assert_eq!(scalar("0.5").unwrap(), exact((1, 2), (0, 1)));
        assert_eq!(scalar("-2.5e-1").unwrap(), exact((-1, 4), (0, 1)));
        assert_eq!(scalar("1/2+3/4i").unwrap(), exact((1, 2), (3, 4)));
        assert_eq!(scalar("i").unwrap(), exact((0, 1), (1, 1)));
        assert_eq!(scalar("2-i").unwrap(), exact((2, 1), (-1, 1)));
        assert_eq!(scalar("-1/4i").unwrap(), exact((0, 1), (-1, 4)));
        assert_eq!(scalar("1e2").unwrap(), exact((100, 1), (0, 1)));
        assert_eq!(scalar(" 1 + i ").unwrap(), exact((1, 1), (1, 1)));
    }

    #[test]
    fn bad_scalars() {
        for s in ["", "x", "1/0", "1..2", "e3", "--1", "1/"] {
            assert!(scalar(s).is_err(), "{s}");
        }
    }

    #[test]
    fn polynomial_list() {
        let p: Polynomial<Exact> = polynomial("-1, 0, 1").unwrap();
        assert_eq!(p, Polynomial::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn regions_and_families() {
        assert_eq!(
            region("disk:0:1/2", 16).unwrap(),
            Descriptor::Disk { center: Complex64::new(0.0, 0.0), radius: 0.5, density: 16 }
        );
        assert!(matches!(region("circle:i:1:8", 4).unwrap(), Descriptor::Circle { count: 8, .. }));
        assert!(matches!(region("points:0;1/4i", 4).unwrap(), Descriptor::Explicit { points } if points.len() == 2));
        assert!(region("square:0:1", 4).is_err());
        assert_eq!(family("row:1").unwrap(), IndexFamily::Row(1));
        assert_eq!(family("explicit:0/1,1/2").unwrap(), IndexFamily::Explicit(vec![(0, 1), (1, 2)]));
        assert!(family("diagonal:3").is_err());
    }
}
