//! Exact rational arithmetic: scalars, extended values, value groups, and
//! dense polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p-adic order of a nonzero integer: the exact power of `p` dividing it.
pub fn int_ord_p(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "ord_p of zero integer");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut ord = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return ord;
        }
        n = q;
        ord += 1;
    }
}

/// p-adic order of a nonzero rational.
pub fn ord_p(r: &Rational, p: u64) -> i64 {
    int_ord_p(r.numer(), p) - int_ord_p(r.denom(), p)
}

/// The p-adic valuation of a rational, with `v(0)` equal to infinity.
pub fn padic_value(r: &Rational, p: u64) -> Value {
    if r.is_zero() {
        Value::Infinity
    } else {
        Value::Finite(rat_int(ord_p(r, p)))
    }
}

/// Nonnegative gcd of two rationals: the generator of the group they span.
/// `gcd(a/b, c/d) = gcd(ad, cb) / bd` after reduction.
pub(crate) fn mod_p(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let r = ((n % &pb) + &pb) % &pb;
    r.to_u64().expect("reduced residue fits in u64")
}

pub(crate) fn inv_mod_p(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let r = ((n % &pb) + &pb) % &pb;
    r.modpow(&BigInt::from(p - 2), &pb)
        .to_u64()
        .expect("reduced residue fits in u64")
}

pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let denom = a.denom() * b.denom();
    let numer = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(numer, denom)
}

/// An element of the value group extended with a single top element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(Rational),
    Infinity,
}

impl Value {
    pub fn zero() -> Value {
        Value::Finite(Rational::zero())
    }

    pub fn finite(r: Rational) -> Value {
        Value::Finite(r)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Value::Finite(r) => Some(r),
            Value::Infinity => None,
        }
    }

    /// Adds `s` copies of `gamma` (which may itself be infinite).
    pub fn add_scaled(&self, gamma: &Value, s: usize) -> Value {
        match (self, gamma) {
            (Value::Infinity, _) | (_, Value::Infinity) if s > 0 => Value::Infinity,
            (Value::Infinity, _) => Value::Infinity,
            (Value::Finite(a), Value::Finite(g)) => {
                Value::Finite(a + g * rat_int(s as i64))
            }
            (Value::Finite(a), Value::Infinity) => {
                // s == 0 here; gamma does not contribute.
                Value::Finite(a.clone())
            }
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
            (Value::Infinity, Value::Finite(_)) => Ordering::Greater,
            (Value::Finite(_), Value::Infinity) => Ordering::Less,
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for &Value {
    type Output = Value;
    fn add(self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(r) => write!(f, "{}", r),
            Value::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Value> {
        let s = s.trim();
        if s == "inf" || s == "oo" || s == "infinity" {
            return Ok(Value::Infinity);
        }
        let r = Rational::from_str(s)
            .map_err(|e| Error::Internal(format!("bad rational '{}': {}", s, e)))?;
        Ok(Value::Finite(r))
    }
}

/// A finitely generated subgroup of (Q, +), stored by its nonnegative
/// generator. Generator zero denotes the trivial group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueGroup {
    generator: Rational,
}

impl ValueGroup {
    /// The group Z of integers.
    pub fn integers() -> ValueGroup {
        ValueGroup { generator: Rational::one() }
    }

    pub fn from_generator(g: Rational) -> ValueGroup {
        ValueGroup { generator: g.abs() }
    }

    pub fn generator(&self) -> &Rational {
        &self.generator
    }

    /// The group generated by this one together with `gamma`.
    pub fn join(&self, gamma: &Rational) -> ValueGroup {
        ValueGroup { generator: rational_gcd(&self.generator, gamma) }
    }

    pub fn contains(&self, gamma: &Rational) -> bool {
        if gamma.is_zero() {
            return true;
        }
        if self.generator.is_zero() {
            return false;
        }
        (gamma / &self.generator).is_integer()
    }

    /// Index `(self : sub)` of a subgroup. Panics unless `sub` is a nonzero
    /// subgroup of `self`.
    pub fn index_over(&self, sub: &ValueGroup) -> u64 {
        assert!(!sub.generator.is_zero(), "index over the trivial group");
        let q = &sub.generator / &self.generator;
        assert!(q.is_integer(), "not a subgroup");
        let q = q.to_integer();
        u64::try_from(q).expect("group index overflow")
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator)
    }
}

/// Dense univariate polynomial over Q. Coefficients are stored in ascending
/// order with no trailing zeros; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> RationalPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> RationalPoly {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> RationalPoly {
        RationalPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> RationalPoly {
        RationalPoly::from_coeffs(vec![c])
    }

    pub fn x() -> RationalPoly {
        RationalPoly::monomial(Rational::one(), 1)
    }

    /// The linear key `x - a`.
    pub fn x_minus(a: &Rational) -> RationalPoly {
        RationalPoly::from_coeffs(vec![-a.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> RationalPoly {
        if c.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        RationalPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> RationalPoly {
        if c.is_zero() {
            return RationalPoly::zero();
        }
        RationalPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient. Panics on the zero polynomial.
    pub fn monic(&self) -> RationalPoly {
        let lead = self.leading().expect("monic of zero polynomial").clone();
        self.scale(&lead.recip())
    }

    pub fn pow(&self, mut k: usize) -> RationalPoly {
        let mut base = self.clone();
        let mut acc = RationalPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and
    /// `deg r < deg d`. Panics if `d` is zero.
    pub fn div_rem(&self, d: &RationalPoly) -> (RationalPoly, RationalPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RationalPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for j in 0..dd {
                let t = &q * &d.coeffs[j];
                rem[i - dd + j] -= t;
            }
            rem[i] = Rational::zero();
            quot[i - dd] = q;
        }
        (RationalPoly::from_coeffs(quot), RationalPoly::from_coeffs(rem))
    }

    /// Coefficients `a_s` of the expansion `self = sum_s a_s * phi^s` with
    /// `deg a_s < deg phi`. The zero polynomial expands to an empty list.
    pub fn phi_expand(&self, phi: &RationalPoly) -> Vec<RationalPoly> {
        assert!(phi.degree().map_or(false, |d| d >= 1), "expansion base must be nonconstant");
        let mut out = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(phi);
            out.push(r);
            rest = q;
        }
        out
    }

    pub fn derivative(&self) -> RationalPoly {
        if self.coeffs.len() <= 1 {
            return RationalPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        RationalPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd via the Euclidean algorithm. Returns zero only if both
    /// inputs are zero.
    pub fn gcd_monic(&self, other: &RationalPoly) -> RationalPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd_monic(&self.derivative()).is_constant()
    }

    /// Checks non-integral inputs early for routines that need Z[x].
    pub fn require_integer_coeffs(&self) -> Result<()> {
        if self.has_integer_coeffs() {
            Ok(())
        } else {
            Err(Error::NonIntegralCoefficients)
        }
    }
}

impl std::ops::Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, other: &RationalPoly) -> RationalPoly {
        self + &(-other)
    }
}

impl std::ops::Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

fn fmt_coeff(c: &Rational) -> String {
    format!("{}", c)
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_coeff(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(s: &'a str) -> Self {
        PolyParser { bytes: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Internal(format!("polynomial parse error at byte {}: {}", self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        BigInt::from_str(s).map_err(|e| self.err(&format!("bad integer: {}", e)))
    }

    /// One term: an optional rational coefficient, an optional `*`, and an
    /// optional power of x. At least one of coefficient or x must appear.
    fn term(&mut self) -> Result<RationalPoly> {
        self.skip_ws();
        let mut coeff: Option<Rational> = None;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let n = self.integer()?;
            self.skip_ws();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                coeff = Some(Rational::new(n, d));
            } else {
                coeff = Some(Rational::from_integer(n));
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
        }
        if self.peek() == Some(b'x') {
            self.pos += 1;
            self.skip_ws();
            let mut power = 1usize;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let e = self.integer()?;
                power = usize::try_from(e).map_err(|_| self.err("exponent too large"))?;
            }
            let c = coeff.unwrap_or_else(Rational::one);
            Ok(RationalPoly::monomial(c, power))
        } else if let Some(c) = coeff {
            Ok(RationalPoly::constant(c))
        } else {
            Err(self.err("expected a coefficient or x"))
        }
    }

    fn poly(&mut self) -> Result<RationalPoly> {
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
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                None => return Ok(acc),
                Some(c) => return Err(self.err(&format!("unexpected byte '{}'", c as char))),
            }
        }
    }
}

impl FromStr for RationalPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<RationalPoly> {
        PolyParser::new(s).poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> RationalPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ord_p_of_rationals() {
        assert_eq!(ord_p(&rat(98, 5), 7), 2);
        assert_eq!(ord_p(&rat(5, 8), 2), -3);
        assert_eq!(ord_p(&rat_int(1), 3), 0);
        assert_eq!(padic_value(&rat_int(0), 5), Value::Infinity);
        assert_eq!(padic_value(&rat(50, 3), 5), Value::Finite(rat_int(2)));
    }

    #[test]
    fn value_ordering() {
        assert!(Value::Infinity > Value::Finite(rat_int(1_000_000)));
        assert!(Value::Finite(rat(1, 2)) < Value::Finite(rat(2, 3)));
        assert_eq!(&Value::Finite(rat(1, 2)) + &Value::Infinity, Value::Infinity);
    }

    #[test]
    fn value_group_join_and_index() {
        let z = ValueGroup::integers();
        let half = z.join(&rat(1, 2));
        assert_eq!(half.generator(), &rat(1, 2));
        assert_eq!(half.index_over(&z), 2);
        let sixth = half.join(&rat(1, 3));
        assert_eq!(sixth.generator(), &rat(1, 6));
        assert_eq!(sixth.index_over(&half), 3);
        assert!(sixth.contains(&rat(5, 6)));
        assert!(!half.contains(&rat(1, 3)));
    }

    #[test]
    fn div_rem_example() {
        let f = p("x^2 - 7");
        let d = p("x - 3");
        let (q, r) = f.div_rem(&d);
        assert_eq!(q, p("x + 3"));
        assert_eq!(r, p("2"));
    }

    #[test]
    fn phi_expand_example() {
        let f = p("x^3 + 2x + 1");
        let phi = p("x^2 + 1");
        let parts = f.phi_expand(&phi);
        assert_eq!(parts, vec![p("x + 1"), p("x")]);
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^2 - 7", "x^2 + x + 1", "1/2*x^3 - 2*x + 5", "-3", "x", "0"] {
            let f = p(s);
            let shown = format!("{}", f);
            assert_eq!(p(&shown), f, "round trip failed for {}", s);
        }
        assert_eq!(format!("{}", p("x^2-7")), "x^2 - 7");
        assert_eq!(format!("{}", p("3/4x^2 + x")), "3/4*x^2 + x");
    }

    #[test]
    fn squarefree_detection() {
        assert!(p("x^2 - 7").is_squarefree());
        assert!(!p("x^2 - 2x + 1").is_squarefree());
        assert!(p("x").is_squarefree());
    }

    #[test]
    fn monic_and_gcd() {
        let g = p("2x^2 - 2").gcd_monic(&p("3x - 3"));
        assert_eq!(g, p("x - 1"));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
        prop::collection::vec((-20i64..=20, 1i64..=6), 0..=max_deg + 1)
            .prop_map(|cs| RationalPoly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn div_rem_round_trip(f in arb_poly(6), g in arb_poly(3)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g);
            prop_assert_eq!(&(&q * &g) + &r, f);
            if !r.is_zero() {
                prop_assert!(r.deg() < g.deg());
            }
        }

        #[test]
        fn phi_expand_reassembles(f in arb_poly(8), g in arb_poly(3)) {
            prop_assume!(g.degree().map_or(false, |d| d >= 1));
            let parts = f.phi_expand(&g);
            let mut acc = RationalPoly::zero();
            for (s, a) in parts.iter().enumerate() {
                if !a.is_zero() {
                    prop_assert!(a.deg() < g.deg());
                }
                acc = &acc + &(a * &g.pow(s));
            }
            prop_assert_eq!(acc, f);
        }
    }
}
