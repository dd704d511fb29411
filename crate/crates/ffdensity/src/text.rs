//! Plain-text forms of every value the CLI reads or prints.
//!
//! Field elements are written by index: for a prime field that is the
//! residue `0..p`, for `F_{p^e}` the base-`p` digits of the index are the
//! coordinates in the power basis of the defining modulus. Polynomials in
//! `x` are written `x^3+x+1` (or as a coefficient list `[1,1,0,1]`, constant
//! first), rational functions `(x+1)/(x^2)`, places `(x)` or `inf`.

use std::collections::BTreeSet;

use ffdensity_core::density::TupleForm;
use ffdensity_core::eisenstein::PolyOverF;
use ffdensity_core::gf::prime_power;
use ffdensity_core::unimodular::PolyMatrix;
use ffdensity_core::zeta::LPolynomial;
use ffdensity_core::{
    BigInt, BigRational, DivisorOnT, GaloisField, Gf, HolomorphySpec, Place, Poly, RationalFunction,
    RationalFunctionField,
};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {what} `{input}`: {reason}")]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
    pub reason: String,
}

pub type ParseResult<T> = Result<T, ParseError>;

fn err<T>(what: &'static str, input: &str, reason: impl Into<String>) -> ParseResult<T> {
    Err(ParseError {
        what,
        input: input.to_string(),
        reason: reason.into(),
    })
}

/// Splits at `sep` outside of parentheses and brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Strips one pair of enclosing parentheses, if they wrap the whole string.
fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return t;
    }
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != t.len() - 1 {
                    return t;
                }
            }
            _ => {}
        }
    }
    &t[1..t.len() - 1]
}

/// Splits a sum into signed terms: `x^2-x+1` gives `[(+, x^2), (-, x), (+, 1)]`.
/// A sign with no term after it yields an empty term.
fn signed_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut pending = false;
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        if c == '+' || c == '-' {
            if !cur.is_empty() {
                out.push((negative, std::mem::take(&mut cur)));
            } else if pending || !out.is_empty() {
                out.push((negative, String::new()));
            }
            negative = c == '-';
            pending = true;
        } else {
            cur.push(c);
            pending = false;
        }
    }
    if !cur.is_empty() || pending || out.is_empty() {
        out.push((negative, cur));
    }
    out
}

pub fn parse_element(field: &GaloisField, s: &str) -> ParseResult<Gf> {
    let t = s.trim();
    let n: i64 = match t.parse() {
        Ok(n) => n,
        Err(_) => return err("field element", s, "expected an integer"),
    };
    if field.degree() == 1 || n < 0 {
        if field.degree() > 1 {
            return err(
                "field element",
                s,
                "negative indices are only allowed over prime fields",
            );
        }
        return Ok(field.from_int(n));
    }
    match u32::try_from(n).ok().and_then(|i| field.element(i).ok()) {
        Some(e) => Ok(e),
        None => err(
            "field element",
            s,
            format!("index out of range for F_{}", field.order()),
        ),
    }
}

pub fn format_element(a: Gf) -> String {
    a.index().to_string()
}

pub fn parse_poly(field: &GaloisField, s: &str) -> ParseResult<Poly> {
    parse_poly_in(field, s, 'x')
}

fn parse_poly_in(field: &GaloisField, s: &str, var: char) -> ParseResult<Poly> {
    let t = strip_parens(s);
    if t.is_empty() {
        return err("polynomial", s, "empty input");
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coeffs = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| parse_element(field, c))
                .collect::<ParseResult<Vec<_>>>()?
        };
        return Ok(Poly::from_coeffs(coeffs));
    }
    let mut coeffs: Vec<Gf> = Vec::new();
    for (negative, term) in signed_terms(t) {
        if term.is_empty() {
            return err("polynomial", s, "dangling sign");
        }
        let (c, k) = match term.find(var) {
            None => (parse_element(field, &term)?, 0usize),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let c = if head.is_empty() {
                    field.one()
                } else {
                    parse_element(field, head)?
                };
                let tail = &term[pos + var.len_utf8()..];
                let k = if tail.is_empty() {
                    1
                } else {
                    match tail.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()) {
                        Some(k) if k <= 1 << 16 => k,
                        _ => return err("polynomial", s, format!("bad exponent in `{term}`")),
                    }
                };
                (c, k)
            }
        };
        let c = if negative { field.neg(c) } else { c };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, field.zero());
        }
        coeffs[k] = field.add(coeffs[k], c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

pub fn format_poly(p: &Poly) -> String {
    format_poly_in(p, "x")
}

fn format_poly_in(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = c.index();
        terms.push(match (k, coef) {
            (0, _) => coef.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{coef}*{var}"),
            (_, 1) => format!("{var}^{k}"),
            _ => format!("{coef}*{var}^{k}"),
        });
    }
    terms.join("+")
}

/// Coefficient-list form, constant first: `[1,1,0,1]`.
pub fn format_poly_list(p: &Poly) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|c| c.index().to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_rational_function(ff: &RationalFunctionField, s: &str) -> ParseResult<RationalFunction> {
    let t = strip_parens(s);
    let parts = split_top(t, '/');
    match parts.as_slice() {
        [num] => Ok(RationalFunction::from_poly(parse_poly(ff.field(), num)?)),
        [num, den] => {
            let n = parse_poly(ff.field(), num)?;
            let d = parse_poly(ff.field(), den)?;
            match ff.fraction(&n, &d) {
                Ok(u) => Ok(u),
                Err(e) => err("rational function", s, e.to_string()),
            }
        }
        _ => err("rational function", s, "more than one `/`"),
    }
}

pub fn format_rational_function(u: &RationalFunction) -> String {
    if u.den().is_one() {
        format_poly(u.num())
    } else {
        format!("({})/({})", format_poly(u.num()), format_poly(u.den()))
    }
}

pub fn parse_poly_over_f(ff: &RationalFunctionField, s: &str) -> ParseResult<PolyOverF> {
    let t = s.trim();
    let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return err("polynomial over F", s, "expected `[a_0, ..., a_n]`");
    };
    let coeffs = split_top(inner, ',')
        .into_iter()
        .map(|c| parse_rational_function(ff, c))
        .collect::<ParseResult<Vec<_>>>()?;
    PolyOverF::new(coeffs).or_else(|e| err("polynomial over F", s, e.to_string()))
}

pub fn format_poly_over_f(f: &PolyOverF) -> String {
    let parts: Vec<String> = f.coeffs().iter().map(format_rational_function).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_place(ff: &RationalFunctionField, s: &str) -> ParseResult<Place> {
    let t = s.trim();
    if matches!(t, "inf" | "infinity" | "∞" | "P_inf") {
        return Ok(Place::Infinity);
    }
    let p = parse_poly(ff.field(), t)?;
    ff.finite_place(p).or_else(|e| err("place", s, e.to_string()))
}

pub fn format_place(p: &Place) -> String {
    match p {
        Place::Infinity => "inf".into(),
        Place::Finite(p) => format!("({})", format_poly(p)),
    }
}

pub fn parse_spec(s: &str) -> ParseResult<HolomorphySpec> {
    let mut q = None;
    let mut excluded = None;
    let mut modulus = None;
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((key, value)) = part.split_once('=') else {
            return err("spec", s, format!("expected key=value, got `{part}`"));
        };
        match key.trim() {
            "q" => match value.trim().parse::<u64>() {
                Ok(v) => q = Some(v),
                Err(_) => return err("spec", s, "q must be a positive integer"),
            },
            "excluded" | "T" => excluded = Some(value.trim().to_string()),
            "modulus" => modulus = Some(value.trim().to_string()),
            other => return err("spec", s, format!("unknown key `{other}`")),
        }
    }
    let Some(q) = q else {
        return err("spec", s, "missing q");
    };
    let field = match modulus {
        None => GaloisField::with_order(q).or_else(|e| err("spec", s, e.to_string()))?,
        Some(m) => {
            let Some((p, e)) = prime_power(q) else {
                return err("spec", s, "q is not a prime power");
            };
            let coeffs: Vec<u32> = m
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .or_else(|_| err("spec", s, "modulus must be a list of integers"))?;
            if coeffs.len() != e as usize + 1 {
                return err("spec", s, format!("modulus must have degree {e}"));
            }
            GaloisField::extension(p, &coeffs).or_else(|e| err("spec", s, e.to_string()))?
        }
    };
    let ff = RationalFunctionField::new(field);
    let excluded = excluded.unwrap_or_else(|| "inf".into());
    let places = split_top(&excluded, ',')
        .into_iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_place(&ff, p))
        .collect::<ParseResult<BTreeSet<_>>>()?;
    HolomorphySpec::new(ff, places).or_else(|e| err("spec", s, e.to_string()))
}

pub fn format_spec(spec: &HolomorphySpec) -> String {
    let field = spec.function_field().field();
    let places: Vec<String> = spec.excluded().iter().map(format_place).collect();
    let mut out = format!("q={}; excluded={}", field.order(), places.join(","));
    if field.degree() > 1 {
        let m: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
        out.push_str(&format!("; modulus={}", m.join(",")));
    }
    out
}

pub fn parse_divisor(spec: &HolomorphySpec, s: &str) -> ParseResult<DivisorOnT> {
    let t = s.trim();
    if t.is_empty() || t == "0" {
        return Ok(DivisorOnT::zero());
    }
    let ff = spec.function_field();
    let mut terms = Vec::new();
    for term in split_top(t, '+') {
        let term = term.trim();
        let (n, place) = match split_top(term, '*').as_slice() {
            [place] => (1, *place),
            [n, place] => match n.trim().parse::<u64>() {
                Ok(n) => (n, *place),
                Err(_) => return err("divisor", s, format!("bad coefficient in `{term}`")),
            },
            _ => return err("divisor", s, format!("bad term `{term}`")),
        };
        terms.push((parse_place(ff, place)?, n));
    }
    DivisorOnT::new(spec, terms).or_else(|e| err("divisor", s, e.to_string()))
}

pub fn format_divisor(d: &DivisorOnT) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = d
        .terms()
        .map(|(p, n)| {
            if n == 1 {
                format_place(p)
            } else {
                format!("{n}*{}", format_place(p))
            }
        })
        .collect();
    parts.join("+")
}

pub fn parse_matrix(spec: &HolomorphySpec, s: &str) -> ParseResult<PolyMatrix> {
    let ff = spec.function_field();
    let rows = split_top(s.trim(), ';')
        .into_iter()
        .map(|row| {
            split_top(row, ',')
                .into_iter()
                .map(|e| parse_rational_function(ff, e))
                .collect::<ParseResult<Vec<_>>>()
        })
        .collect::<ParseResult<Vec<_>>>()?;
    PolyMatrix::from_rows(spec, rows).or_else(|e| err("matrix", s, e.to_string()))
}

pub fn format_matrix(m: &PolyMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(format_rational_function)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_lpoly(s: &str) -> ParseResult<LPolynomial> {
    let coeffs = s
        .trim()
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|c| c.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .or_else(|_| err("L-polynomial", s, "expected comma-separated integers"))?;
    LPolynomial::new(coeffs).or_else(|e| err("L-polynomial", s, e.to_string()))
}

pub fn format_lpoly(l: &LPolynomial) -> String {
    l.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

/// Forms in `y0, y1, ...`, e.g. `y0*y1^2+2*y3`.
pub fn parse_tuple_form(field: &GaloisField, s: &str) -> ParseResult<TupleForm> {
    let t = s.trim();
    let mut terms = Vec::new();
    for (negative, term) in signed_terms(t) {
        if term.is_empty() {
            return err("tuple form", s, "dangling sign");
        }
        let mut c = field.one();
        let mut exps: Vec<u32> = Vec::new();
        for factor in term.split('*') {
            if let Some(rest) = factor.strip_prefix('y') {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().ok()),
                    None => (rest, Some(1)),
                };
                let (Ok(i), Some(e)) = (idx.parse::<usize>(), e) else {
                    return err("tuple form", s, format!("bad factor `{factor}`"));
                };
                if i > 64 {
                    return err("tuple form", s, "coordinate index too large");
                }
                if exps.len() <= i {
                    exps.resize(i + 1, 0);
                }
                exps[i] += e;
            } else {
                c = field.mul(c, parse_element(field, factor)?);
            }
        }
        terms.push((if negative { field.neg(c) } else { c }, exps));
    }
    Ok(TupleForm::new(terms))
}

pub fn format_tuple_form(f: &TupleForm) -> String {
    if f.terms().is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = f
        .terms()
        .iter()
        .map(|(c, exps)| {
            let mut factors: Vec<String> = Vec::new();
            if c.index() != 1 || exps.iter().all(|&e| e == 0) {
                factors.push(c.index().to_string());
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("y{i}")),
                    _ => factors.push(format!("y{i}^{e}")),
                }
            }
            factors.join("*")
        })
        .collect();
    parts.join("+")
}

pub fn parse_rational(s: &str) -> ParseResult<BigRational> {
    let t = s.trim();
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    match (n.trim().parse::<BigInt>(), d.trim().parse::<BigInt>()) {
        (Ok(n), Ok(d)) if !d.is_zero() => Ok(BigRational::new(n, d)),
        _ => err("rational", s, "expected num/den"),
    }
}

/// Always `num/den`, even for integers.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
