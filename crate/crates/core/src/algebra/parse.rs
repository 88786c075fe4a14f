//! Polynomial text input.
//!
//! Two spellings are accepted: a coefficient list `c0,c1,...,cn` (lowest
//! degree first) or a symbolic sum such as `x^4 - 41*x^2 + 144`. Whitespace is
//! ignored and `*` between a coefficient and `x` is optional.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str) -> Result<Poly<BigInt>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let p = if s.contains('x') || s.contains('X') {
        parse_symbolic(&s.to_ascii_lowercase())?
    } else {
        parse_list(&s)?
    };
    Ok(p)
}

fn parse_int(tok: &str) -> Result<BigInt> {
    BigInt::from_str(tok).map_err(|_| Error::Parse(format!("not an integer coefficient: {tok:?}")))
}

fn parse_list(s: &str) -> Result<Poly<BigInt>> {
    let s = s.trim_start_matches('[').trim_end_matches(']');
    let coeffs = s.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn parse_symbolic(s: &str) -> Result<Poly<BigInt>> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while i < bytes.len() {
        let mut neg = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            neg = bytes[i] == b'-';
            i += 1;
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {i}")));
        }
        first = false;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if i > start { parse_int(&s[start..i])? } else { BigInt::one() };
        let has_digits = i > start;
        if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'/') {
            return Err(Error::Parse("non-integer coefficient".into()));
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_digits {
                return Err(Error::Parse(format!("dangling '*' at offset {i}")));
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != b'x' {
                return Err(Error::Parse("expected 'x' after '*'".into()));
            }
        }
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && (bytes[i] == b'^' || bytes[i] == b'*') {
                if bytes[i] == b'*' && bytes.get(i + 1) != Some(&b'*') {
                    return Err(Error::Parse("unexpected '*' after x".into()));
                }
                i += if bytes[i] == b'*' { 2 } else { 1 };
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(Error::Parse("missing exponent".into()));
                }
                exp = s[es..i]
                    .parse()
                    .map_err(|_| Error::Parse("exponent out of range".into()))?;
                if exp > 4096 {
                    return Err(Error::Parse("exponent out of range".into()));
                }
            }
        } else if !has_digits {
            return Err(Error::Parse(format!("expected a term at offset {start}")));
        }
        if neg {
            coeff = -coeff;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coeff;
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!(parse_poly("x^4 - 41*x^2 + 144").unwrap(), zp(&[144, 0, -41, 0, 1]));
        assert_eq!(parse_poly("x^4-41x^2+144").unwrap(), zp(&[144, 0, -41, 0, 1]));
        assert_eq!(parse_poly(" -x^3 + x  - 1 ").unwrap(), zp(&[-1, 1, 0, -1]));
        assert_eq!(parse_poly("x**2+1").unwrap(), zp(&[1, 0, 1]));
        assert_eq!(parse_poly("2*x + x + 3").unwrap(), zp(&[3, 3]));
        assert_eq!(
            parse_poly("x^6 - x^5 - 2*x^4 + x^3 + 7*x^2 - 6*x + 4").unwrap(),
            zp(&[4, -6, 7, 1, -2, -1, 1])
        );
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_poly("144,0,-41,0,1").unwrap(), zp(&[144, 0, -41, 0, 1]));
        assert_eq!(parse_poly("[1, 0, 1]").unwrap(), zp(&[1, 0, 1]));
        assert_eq!(parse_poly("7").unwrap(), zp(&[7]));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x^2 + 1.5", "1/2*x + 1", "x^ + 1", "1,2,a", "x^2 ++ 1", "y^2", "*x"] {
            assert!(parse_poly(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_parses_back() {
        let p = zp(&[4, -6, 7, 1, -2, -1, 1]);
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
