//! Input parsing: rational strings, polynomial expressions, and chain files.

use std::fs;
use std::str::FromStr;

use maclane::exactnum::{Rational, RationalPoly, Value};
use maclane::limitfam::FamilyStream;
use maclane::valuation::InductiveValuation;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{Map, Value as Json};

use crate::Failure;

const MAX_EXPONENT: usize = 4096;

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| format!("bad integer '{}'", t)),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator in '{}'", t))?;
            let d =
                BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator in '{}'", t))?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{}'", t));
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn parse_value(s: &str) -> Result<Value, String> {
    if s.trim() == "inf" {
        Ok(Value::Infinity)
    } else {
        parse_rational(s).map(Value::Finite)
    }
}

pub fn value_str(v: &Value) -> String {
    match v {
        Value::Finite(r) => r.to_string(),
        Value::Infinity => "inf".into(),
    }
}

/// Resolves an `@path` argument to the file's contents.
pub fn read_arg(raw: &str) -> Result<String, String> {
    match raw.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path, e))
        }
        None => Ok(raw.to_string()),
    }
}

/// A polynomial argument: a JSON coefficient array, an expression, or an
/// `@file` containing either.
pub fn parse_poly_arg(raw: &str) -> Result<RationalPoly, String> {
    let text = read_arg(raw)?;
    let t = text.trim();
    if t.starts_with('[') {
        let arr: Vec<String> = serde_json::from_str(t).map_err(|e| format!("poly: {}", e))?;
        let coeffs = arr
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s).map_err(|e| format!("poly[{}]: {}", i, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalPoly::from_coeffs(coeffs))
    } else {
        parse_poly_text(t)
    }
}

pub fn poly_coeff_strings(f: &RationalPoly) -> Vec<String> {
    f.coeffs().iter().map(ToString::to_string).collect()
}

/// Recursive-descent parser for the expression grammar documented in
/// `--help`: sums of terms, terms multiply factors (juxtaposition allowed),
/// factors raise atoms to integer powers, atoms are rationals, `x`, or
/// parenthesized expressions.
struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

pub fn parse_poly_text(s: &str) -> Result<RationalPoly, String> {
    let mut p = ExprParser {
        bytes: s.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> ExprParser<'a> {
    fn fail(&self, msg: &str) -> String {
        format!("poly: {} at offset {}", msg, self.pos)
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, String> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        BigInt::from_str(s).map_err(|_| self.fail("bad integer"))
    }

    fn number(&mut self) -> Result<Rational, String> {
        let n = self.digits()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.fail("zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        self.pos = save;
        Ok(Rational::from_integer(n))
    }

    fn atom(&mut self) -> Result<RationalPoly, String> {
        self.skip_ws();
        match self.peek() {
            Some(b'0'..=b'9') => self.number().map(RationalPoly::constant),
            Some(b'x') => {
                self.pos += 1;
                Ok(RationalPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.fail("expected a rational, 'x', or '('")),
        }
    }

    fn factor(&mut self) -> Result<RationalPoly, String> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.digits()?;
        let k = e
            .to_usize()
            .filter(|&k| k <= MAX_EXPONENT)
            .ok_or_else(|| self.fail("exponent too large"))?;
        Ok(base.pow(k))
    }

    fn term(&mut self) -> Result<RationalPoly, String> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'0'..=b'9') | Some(b'x') | Some(b'(') => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<RationalPoly, String> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

fn as_obj<'a>(v: &'a Json, path: &str) -> Result<&'a Map<String, Json>, Failure> {
    v.as_object()
        .ok_or_else(|| Failure::Parse(format!("{}: expected an object", path)))
}

fn field<'a>(m: &'a Map<String, Json>, key: &str, path: &str) -> Result<&'a Json, Failure> {
    m.get(key)
        .ok_or_else(|| Failure::Parse(format!("{}.{}: missing", path, key)))
}

fn as_str<'a>(v: &'a Json, path: &str) -> Result<&'a str, Failure> {
    v.as_str()
        .ok_or_else(|| Failure::Parse(format!("{}: expected a string", path)))
}

fn as_u64(v: &Json, path: &str) -> Result<u64, Failure> {
    v.as_u64()
        .ok_or_else(|| Failure::Parse(format!("{}: expected a nonnegative integer", path)))
}

fn check_keys(m: &Map<String, Json>, allowed: &[&str], path: &str) -> Result<(), Failure> {
    for key in m.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Failure::Parse(format!("{}.{}: unknown key", path, key)));
        }
    }
    Ok(())
}

fn rational_field(m: &Map<String, Json>, key: &str, path: &str) -> Result<Rational, Failure> {
    let s = as_str(field(m, key, path)?, &format!("{}.{}", path, key))?;
    parse_rational(s).map_err(|e| Failure::Parse(format!("{}.{}: {}", path, key, e)))
}

fn value_field(m: &Map<String, Json>, key: &str, path: &str) -> Result<Value, Failure> {
    let s = as_str(field(m, key, path)?, &format!("{}.{}", path, key))?;
    parse_value(s).map_err(|e| Failure::Parse(format!("{}.{}: {}", path, key, e)))
}

fn parse_poly_json(v: &Json, path: &str) -> Result<RationalPoly, Failure> {
    match v {
        Json::Array(items) => {
            let coeffs = items
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let s = as_str(c, &format!("{}[{}]", path, i))?;
                    parse_rational(s)
                        .map_err(|e| Failure::Parse(format!("{}[{}]: {}", path, i, e)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RationalPoly::from_coeffs(coeffs))
        }
        Json::String(s) => {
            parse_poly_text(s).map_err(|e| Failure::Parse(format!("{}: {}", path, e)))
        }
        _ => Err(Failure::Parse(format!(
            "{}: expected a coefficient array or an expression string",
            path
        ))),
    }
}

/// The digit-family description echoed back in chain output.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySpec {
    pub theta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<u64>,
}

pub enum DemoKind {
    Sqrt { of: Rational },
    Rational { theta: Rational },
}

pub struct DemoInput {
    pub p: u64,
    pub stream: FamilyStream,
    pub spec: FamilySpec,
    pub kind: DemoKind,
}

fn canonical_root(p: u64, of: &Rational) -> Option<u64> {
    let pm = BigInt::from(p);
    let om = (((of.numer() % &pm) + &pm) % &pm).to_u64()?;
    (1..p).find(|&r| {
        let rr = (u128::from(r) * u128::from(r) % u128::from(p)) as u64;
        rr == om && (2 * u128::from(r)) % u128::from(p) != 0
    })
}

/// Reads the `theta`/`of`/`root` fields of a family description; key
/// whitelisting is up to the caller.
fn parse_family(
    m: &Map<String, Json>,
    path: &str,
    p: u64,
) -> Result<(FamilyStream, FamilySpec, DemoKind), Failure> {
    let theta = as_str(field(m, "theta", path)?, &format!("{}.theta", path))?;
    if theta == "sqrt" {
        let of = rational_field(m, "of", path)?;
        let root = match m.get("root") {
            Some(v) => as_u64(v, &format!("{}.root", path))?,
            None if of.is_integer() => canonical_root(p, &of).ok_or_else(|| {
                Failure::Domain(maclane::Error::InvalidTheta(format!(
                    "no simple square root of {} modulo {}",
                    of, p
                )))
            })?,
            // hensel rejects the non-integer radicand below
            None => 0,
        };
        let f = RationalPoly::from_coeffs(vec![-of.clone(), Rational::zero(), Rational::one()]);
        let stream = FamilyStream::hensel(p, f, root).map_err(Failure::from)?;
        let spec = FamilySpec {
            theta: "sqrt".into(),
            of: Some(of.to_string()),
            root: Some(root),
        };
        Ok((stream, spec, DemoKind::Sqrt { of }))
    } else {
        for key in ["of", "root"] {
            if m.contains_key(key) {
                return Err(Failure::Parse(format!(
                    "{}.{}: only allowed when theta is \"sqrt\"",
                    path, key
                )));
            }
        }
        let t = parse_rational(theta)
            .map_err(|e| Failure::Parse(format!("{}.theta: {}", path, e)))?;
        let stream = FamilyStream::digits_rational(p, t.clone()).map_err(Failure::from)?;
        let spec = FamilySpec {
            theta: t.to_string(),
            of: None,
            root: None,
        };
        Ok((stream, spec, DemoKind::Rational { theta: t }))
    }
}

pub fn parse_chain_text(text: &str) -> Result<InductiveValuation, Failure> {
    let v: Json =
        serde_json::from_str(text).map_err(|e| Failure::Parse(format!("chain: {}", e)))?;
    let m = as_obj(&v, "chain")?;
    check_keys(m, &["p", "base", "steps"], "chain")?;
    let p = as_u64(field(m, "p", "chain")?, "chain.p")?;
    let base = as_obj(field(m, "base", "chain")?, "chain.base")?;
    check_keys(base, &["a", "gamma"], "chain.base")?;
    let a = rational_field(base, "a", "chain.base")?;
    let g0 = value_field(base, "gamma", "chain.base")?;
    let mut mu = InductiveValuation::depth_zero(p, a, g0).map_err(Failure::from)?;

    let steps = match m.get("steps") {
        None => return Ok(mu),
        Some(v) => v
            .as_array()
            .ok_or_else(|| Failure::Parse("chain.steps: expected an array".into()))?,
    };
    for (i, sv) in steps.iter().enumerate() {
        let path = format!("chain.steps[{}]", i);
        let sm = as_obj(sv, &path)?;
        check_keys(sm, &["kind", "phi", "gamma", "family"], &path)?;
        let kind = as_str(field(sm, "kind", &path)?, &format!("{}.kind", path))?;
        let phi = parse_poly_json(field(sm, "phi", &path)?, &format!("{}.phi", path))?;
        let gamma = value_field(sm, "gamma", &path)?;
        match kind {
            "ordinary" => {
                if sm.contains_key("family") {
                    return Err(Failure::Parse(format!(
                        "{}.family: only allowed on limit steps",
                        path
                    )));
                }
                mu = mu.augment(phi, gamma).map_err(Failure::from)?;
            }
            "limit" => {
                let fm = as_obj(field(sm, "family", &path)?, &format!("{}.family", path))?;
                check_keys(fm, &["theta", "of", "root"], &format!("{}.family", path))?;
                let (stream, _, _) = parse_family(fm, &format!("{}.family", path), p)?;
                mu = mu.augment_limit(stream, phi, gamma).map_err(Failure::from)?;
            }
            other => {
                return Err(Failure::Parse(format!(
                    "{}.kind: expected \"ordinary\" or \"limit\", got \"{}\"",
                    path, other
                )))
            }
        }
    }
    Ok(mu)
}

pub fn parse_demo_input(text: &str) -> Result<DemoInput, Failure> {
    let v: Json =
        serde_json::from_str(text).map_err(|e| Failure::Parse(format!("input: {}", e)))?;
    let m = as_obj(&v, "input")?;
    check_keys(m, &["p", "theta", "of", "root"], "input")?;
    let p = match m.get("p") {
        Some(v) => as_u64(v, "input.p")?,
        None => 7,
    };
    let (stream, spec, kind) = parse_family(m, "input", p)?;
    Ok(DemoInput {
        p,
        stream,
        spec,
        kind,
    })
}
