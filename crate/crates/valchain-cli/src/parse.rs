//! Exact text parsers for values, field elements, and polynomials in T.
//! The grammars cover both hand-written forms ("T^2-5", "5*T^2+T+25",
//! "1/2+1/3*sqrt(2)") and everything the library's Display impls produce,
//! so serialization round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;

use valchain_core::error::{Error, Result};
use valchain_core::field::{FieldElem, FpPoly, RatFun, ValuedField};
use valchain_core::poly::Poly;
use valchain_core::value::Value;

const MAX_EXPONENT: usize = 4096;

fn bad(what: &str, text: &str) -> Error {
    Error::Parse(format!("{what}: {text:?}"))
}

fn strip_spaces(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Strips one layer of outer parentheses if they enclose the whole chunk.
fn strip_outer_parens(s: &str) -> &str {
    if !s.starts_with('(') || !s.ends_with(')') {
        return s;
    }
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return if i == s.len() - 1 { strip_outer_parens(&s[1..s.len() - 1]) } else { s };
                }
            }
            _ => {}
        }
    }
    s
}

/// Splits a sum into signed chunks at top-level + and - signs.
fn split_signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    if s.is_empty() {
        return Err(bad("empty expression", s));
    }
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut sign = 1i64;
    let mut start = 0usize;
    let bytes = s.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.checked_sub(1).ok_or_else(|| bad("unbalanced parens", s))?,
            b'+' | b'-' if depth == 0 && i > start => {
                out.push((sign, s[start..i].to_string()));
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            b'-' if depth == 0 && i == start => {
                sign = -sign;
                start = i + 1;
            }
            b'+' if depth == 0 && i == start => {
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err(bad("unbalanced parens", s));
    }
    if start >= s.len() {
        return Err(bad("dangling sign", s));
    }
    out.push((sign, s[start..].to_string()));
    Ok(out)
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = strip_outer_parens(text);
    if t.is_empty() {
        return Err(bad("empty rational", text));
    }
    let (n, d) = match t.split_once('/') {
        None => (t, "1"),
        Some(pair) => pair,
    };
    let n: BigInt = n.parse().map_err(|_| bad("not a rational", text))?;
    let d: BigInt = d.parse().map_err(|_| bad("not a rational", text))?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator", text));
    }
    Ok(BigRational::new(n, d))
}

/// Value text: "inf", a rational, or a quadratic "a+b*sqrt(d)" in the forms
/// the Display impl emits ("sqrt(2)", "-2*sqrt(5)", "1/2-1/3*sqrt(3)").
pub fn parse_value(text: &str) -> Result<Value> {
    let s = strip_spaces(text);
    if s.is_empty() {
        return Err(bad("empty value", text));
    }
    if s == "inf" {
        return Ok(Value::Infinity);
    }
    let Some(i) = s.find("sqrt(") else {
        return Ok(Value::Fin(parse_rational(&s)?));
    };
    if !s.ends_with(')') {
        return Err(bad("trailing text after sqrt", text));
    }
    let d: u64 = s[i + 5..s.len() - 1]
        .parse()
        .map_err(|_| bad("radicand must be a positive integer", text))?;
    let prefix = &s[..i];
    let (a, b) = if prefix.is_empty() {
        (BigRational::from_integer(0.into()), BigRational::from_integer(1.into()))
    } else if let Some(r) = prefix.strip_suffix('*') {
        // "b*", "a+b*", or "a-b*": the separator is the last sign past index 0.
        match r.rfind(['+', '-']).filter(|&j| j > 0) {
            None => (BigRational::from_integer(0.into()), parse_rational(r)?),
            Some(j) => {
                let b = parse_rational(&r[j + 1..])?;
                let b = if r.as_bytes()[j] == b'-' { -b } else { b };
                (parse_rational(&r[..j])?, b)
            }
        }
    } else if let Some(r) = prefix.strip_suffix('+') {
        let a = if r.is_empty() {
            return Err(bad("dangling sign before sqrt", text));
        } else {
            parse_rational(r)?
        };
        (a, BigRational::from_integer(1.into()))
    } else if let Some(r) = prefix.strip_suffix('-') {
        let a = if r.is_empty() {
            BigRational::from_integer(0.into())
        } else {
            parse_rational(r)?
        };
        (a, BigRational::from_integer((-1).into()))
    } else {
        return Err(bad("malformed quadratic value", text));
    };
    Value::quad(a, b, d)
}

/// A polynomial in t over F_p: sums of "c", "t", "c*t^k".
fn parse_fp_poly(p: u64, text: &str) -> Result<FpPoly> {
    let s = strip_outer_parens(text);
    let mut coeffs: Vec<u64> = Vec::new();
    for (sign, chunk) in split_signed_terms(s)? {
        let (coef, exp) = match chunk.find('t') {
            None => (chunk.parse::<i64>().map_err(|_| bad("bad coefficient", &chunk))?, 0usize),
            Some(ti) => {
                let head = chunk[..ti].strip_suffix('*').unwrap_or(&chunk[..ti]);
                let coef = if head.is_empty() {
                    1
                } else {
                    head.parse::<i64>().map_err(|_| bad("bad coefficient", &chunk))?
                };
                let tail = &chunk[ti + 1..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent", &chunk))?
                };
                (coef, exp)
            }
        };
        if exp > MAX_EXPONENT {
            return Err(bad("exponent too large", &chunk));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let c = (sign * coef).rem_euclid(p as i64) as u64;
        coeffs[exp] = (coeffs[exp] + c) % p;
    }
    Ok(FpPoly::new(p, coeffs))
}

/// Element text: a rational for the p-adic field; a rational function in t
/// ("t^2+1", "(t+1)/(t^2)") for the Laurent field.
pub fn parse_elem(field: ValuedField, text: &str) -> Result<FieldElem> {
    let s = strip_spaces(text);
    let s = strip_outer_parens(&s);
    if s.is_empty() {
        return Err(bad("empty element", text));
    }
    match field {
        ValuedField::PAdicRationals(_) => Ok(FieldElem::Rat(parse_rational(s)?)),
        ValuedField::LaurentRationalFunctions(p) => {
            let mut depth = 0usize;
            let mut slash = None;
            for (i, c) in s.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    '/' if depth == 0 => {
                        slash = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let (num, den) = match slash {
                None => (parse_fp_poly(p, s)?, FpPoly::one(p)),
                Some(i) => (parse_fp_poly(p, &s[..i])?, parse_fp_poly(p, &s[i + 1..])?),
            };
            if den.is_zero() {
                return Err(bad("zero denominator", text));
            }
            Ok(FieldElem::Fun(RatFun::new(num, den)))
        }
    }
}

/// Polynomial text in T over the base field: sums of "c", "T", "c*T^k" with
/// c in element syntax, possibly parenthesized.
pub fn parse_poly(field: ValuedField, text: &str) -> Result<Poly> {
    let s = strip_spaces(text);
    let mut acc = Poly::zero(field);
    for (sign, chunk) in split_signed_terms(&s)? {
        let (coef, exp) = match top_level_t(&chunk) {
            None => (parse_elem(field, &chunk)?, 0usize),
            Some(ti) => {
                let head = chunk[..ti].strip_suffix('*').unwrap_or(&chunk[..ti]);
                let coef = if head.is_empty() { field.one() } else { parse_elem(field, head)? };
                let tail = &chunk[ti + 1..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent", &chunk))?
                };
                (coef, exp)
            }
        };
        if exp > MAX_EXPONENT {
            return Err(bad("exponent too large", &chunk));
        }
        let coef = if sign < 0 { coef.neg() } else { coef };
        let mut coeffs = vec![field.zero(); exp];
        coeffs.push(coef);
        acc = acc.add(&Poly::new(field, coeffs));
    }
    Ok(acc)
}

/// Position of the variable T outside parentheses, if any.
fn top_level_t(chunk: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in chunk.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            'T' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Renders a value as a truncated decimal with the given number of fractional
/// digits (exact values stay authoritative; this is display only).
pub fn approx_decimal(v: &Value, digits: u32) -> String {
    use num_traits::{Signed, Zero};
    let Some((a, b, d)) = v.parts() else {
        return "inf".to_string();
    };
    let scale = BigInt::from(10u32).pow(digits);
    // sqrt(d) to `digits` places: isqrt(d * 10^(2*digits)) / 10^digits.
    let root = (BigInt::from(d) * &scale * &scale).sqrt();
    let approx = a + b * BigRational::new(root, scale.clone());
    let neg = approx.is_negative();
    let abs = approx.abs();
    let scaled = (abs.numer() * &scale) / abs.denom();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    let frac_str = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    let sign = if neg && (!int.is_zero() || frac_str.bytes().any(|b| b != b'0')) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac_str}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_round_trips() {
        for text in ["inf", "3/2", "-7", "0", "sqrt(2)", "-2*sqrt(5)", "1/2+1/3*sqrt(2)", "1/2-sqrt(3)"] {
            let v = parse_value(text).unwrap();
            assert_eq!(parse_value(&v.to_string()).unwrap(), v, "{text}");
        }
    }

    #[test]
    fn poly_forms_agree() {
        let f5 = ValuedField::PAdicRationals(5);
        let a = parse_poly(f5, "5*T^2+T+25").unwrap();
        let b = parse_poly(f5, &a.to_string()).unwrap();
        assert_eq!(a, b);
        let c = parse_poly(f5, "T^2-49/9").unwrap();
        assert_eq!(c.coeff(0), FieldElem::Rat(BigRational::new((-49).into(), 9.into())));
        assert!(c.is_monic());
    }

    #[test]
    fn laurent_elements_parse() {
        let f3 = ValuedField::LaurentRationalFunctions(3);
        let e = parse_elem(f3, "(t^2+1)/(t)").unwrap();
        assert_eq!(parse_elem(f3, &e.to_string()).unwrap(), e);
        let f = parse_poly(f3, "T^3-t").unwrap();
        assert_eq!(parse_poly(f3, &f.to_string()).unwrap(), f);
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn mixed_signs_inside_terms() {
        let f5 = ValuedField::PAdicRationals(5);
        let a = parse_poly(f5, "T^2 + (-5)").unwrap();
        let b = parse_poly(f5, "T^2-5").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn approximations_truncate() {
        assert_eq!(approx_decimal(&parse_value("sqrt(2)").unwrap(), 4), "1.4142");
        assert_eq!(approx_decimal(&parse_value("3/2").unwrap(), 2), "1.50");
        assert_eq!(approx_decimal(&parse_value("-1/3").unwrap(), 3), "-0.333");
        assert_eq!(approx_decimal(&Value::Infinity, 3), "inf");
    }
}
