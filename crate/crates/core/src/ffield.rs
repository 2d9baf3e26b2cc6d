//! Finite fields of small characteristic, polynomial factorization over them,
//! and field embeddings.
//!
//! Every field is represented flat, as F_p[y] modulo a monic irreducible
//! polynomial over the prime field. Towers are handled through explicit
//! embeddings, so an extension of an extension is still stored as a simple
//! extension of F_p. The defining modulus is chosen deterministically (first
//! irreducible in a fixed enumeration), which keeps every derived object
//! reproducible across runs.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Description of a finite field F_{p^k} = F_p[y] / (modulus).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    p: u64,
    k: usize,
    /// Monic defining polynomial over F_p, ascending coefficients, length k+1.
    modulus: Vec<u64>,
}

/// Shared handle to a field description. Equality of the pointed-to
/// descriptions is what makes two handles "the same field".
pub type Field = Arc<FieldDesc>;

impl FieldDesc {
    /// The prime field F_p, presented as F_p[y]/(y).
    pub fn prime(p: u64) -> Field {
        assert!(p >= 2, "characteristic must be at least 2");
        Arc::new(FieldDesc { p, k: 1, modulus: vec![0, 1] })
    }

    /// The field F_{p^k} with the first monic irreducible modulus of degree k
    /// in the enumeration y^k + c, where c runs over polynomials of degree
    /// below k ordered by their base-p digit value.
    pub fn extension(p: u64, k: usize) -> Field {
        assert!(k >= 1, "extension degree must be positive");
        if k == 1 {
            return FieldDesc::prime(p);
        }
        let prime = FieldDesc::prime(p);
        let mut counter: u64 = 0;
        loop {
            let mut modulus = vec![0u64; k + 1];
            modulus[k] = 1;
            let mut n = counter;
            let mut i = 0;
            while n > 0 {
                modulus[i] = n % p;
                n /= p;
                i += 1;
            }
            assert!(i <= k, "exhausted modulus candidates");
            let candidate = FqPoly::from_fp_coeffs(&prime, &modulus);
            if fq_is_irreducible(&candidate) {
                return Arc::new(FieldDesc { p, k, modulus });
            }
            counter += 1;
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field cardinality p^k.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn assert_same_field(a: &Field, b: &Field) {
    assert!(same_field(a, b), "mixed elements of {} and {}", a, b);
}

// Scalar arithmetic in F_p.

fn sc_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sc_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn sc_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sc_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = sc_mul(acc, a, p);
        }
        a = sc_mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn sc_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero in GF({})", p);
    sc_pow(a, p - 2, p)
}

// Dense polynomial arithmetic over F_p on raw coefficient vectors, used for
// element representatives modulo the field modulus.

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = sc_add(out[i + j], sc_mul(x, y, p), p);
        }
    }
    fp_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let d = m.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for j in 0..d {
                let t = sc_mul(lead, m[j], p);
                r[shift + j] = sc_sub(r[shift + j], t, p);
            }
        }
        r.pop();
        fp_trim(&mut r);
    }
    r
}

/// Inverse of `a` modulo the monic irreducible `m`, by the extended
/// Euclidean algorithm.
fn fp_inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    fp_trim(&mut r1);
    assert!(!r1.is_empty(), "inverse of zero element");
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // Divide r0 by r1.
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let lead_inv = sc_inv(*r1.last().unwrap(), p);
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let c = sc_mul(*rem.last().unwrap(), lead_inv, p);
            let shift = rem.len() - r1.len();
            q[shift] = c;
            for (j, &mj) in r1.iter().enumerate() {
                let t = sc_mul(c, mj, p);
                rem[shift + j] = sc_sub(rem[shift + j], t, p);
            }
            fp_trim(&mut rem);
        }
        fp_trim(&mut q);
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        let qs = fp_mul(&q, &s1, p);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs.len()), 0);
        for (i, &c) in qs.iter().enumerate() {
            s2[i] = sc_sub(s2[i], c, p);
        }
        fp_trim(&mut s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 is the gcd, a nonzero constant because m is irreducible.
    assert!(r0.len() == 1, "modulus not coprime with element");
    let c = sc_inv(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&x| sc_mul(x, c, p)).collect();
    out = fp_rem(&out, m, p);
    out
}

/// An element of a finite field, stored as its representative of degree
/// below k over the prime field. The representative vector always has
/// length exactly k.
#[derive(Debug, Clone)]
pub struct FqElem {
    field: Field,
    rep: Vec<u64>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &FqElem) -> bool {
        same_field(&self.field, &other.field) && self.rep == other.rep
    }
}

impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.modulus.hash(state);
        self.rep.hash(state);
    }
}

impl FqElem {
    fn from_raw(field: &Field, mut rep: Vec<u64>) -> FqElem {
        rep = fp_rem(&rep, &field.modulus, field.p);
        rep.resize(field.k, 0);
        FqElem { field: field.clone(), rep }
    }

    pub fn zero(field: &Field) -> FqElem {
        FqElem { field: field.clone(), rep: vec![0; field.k] }
    }

    pub fn one(field: &Field) -> FqElem {
        FqElem::from_int(field, 1)
    }

    pub fn from_int(field: &Field, n: i64) -> FqElem {
        let p = field.p as i64;
        let c = n.rem_euclid(p) as u64;
        let mut rep = vec![0; field.k];
        rep[0] = c;
        FqElem { field: field.clone(), rep }
    }

    /// The class of y, the generator of the field over its prime field.
    pub fn gen(field: &Field) -> FqElem {
        FqElem::from_raw(field, vec![0, 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// The residue as an integer, when the element lies in the prime field.
    pub fn const_val(&self) -> Option<u64> {
        if self.rep[1..].iter().all(|&c| c == 0) {
            Some(self.rep[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> FqElem {
        assert!(!self.is_zero(), "inverse of zero in {}", self.field);
        let rep = fp_inv_mod(&self.rep, &self.field.modulus, self.field.p);
        FqElem::from_raw(&self.field, rep)
    }

    pub fn pow_u64(&self, mut e: u64) -> FqElem {
        let mut acc = FqElem::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> FqElem {
        let mut acc = FqElem::one(&self.field);
        let mut base = self.clone();
        let mut e = e.clone();
        while !e.is_zero() {
            if (&e % 2u32) == BigUint::one() {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Add for &FqElem {
    type Output = FqElem;
    fn add(self, other: &FqElem) -> FqElem {
        assert_same_field(&self.field, &other.field);
        let p = self.field.p;
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| sc_add(a, b, p))
            .collect();
        FqElem { field: self.field.clone(), rep }
    }
}

impl std::ops::Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, other: &FqElem) -> FqElem {
        assert_same_field(&self.field, &other.field);
        let p = self.field.p;
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| sc_sub(a, b, p))
            .collect();
        FqElem { field: self.field.clone(), rep }
    }
}

impl std::ops::Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, other: &FqElem) -> FqElem {
        assert_same_field(&self.field, &other.field);
        let prod = fp_mul(&self.rep, &other.rep, self.field.p);
        FqElem::from_raw(&self.field, prod)
    }
}

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.field.p;
        let rep = self.rep.iter().map(|&a| sc_sub(0, a, p)).collect();
        FqElem { field: self.field.clone(), rep }
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.const_val() {
            return write!(f, "{}", c);
        }
        let mut first = true;
        for k in (0..self.rep.len()).rev() {
            let c = self.rep[k];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || c != 1;
            if show_coeff {
                write!(f, "{}", c)?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "g")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial over a finite field, ascending coefficients
/// with no trailing zeros. Displayed in the variable y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FqElem>) -> FqPoly {
        for c in &coeffs {
            assert_same_field(&field.clone(), c.field());
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from prime-subfield coefficients.
    pub fn from_fp_coeffs(field: &Field, coeffs: &[u64]) -> FqPoly {
        let elems = coeffs
            .iter()
            .map(|&c| FqElem::from_int(field, (c % field.p) as i64))
            .collect();
        FqPoly::from_coeffs(field, elems)
    }

    pub fn zero(field: &Field) -> FqPoly {
        FqPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> FqPoly {
        FqPoly::constant(FqElem::one(field))
    }

    pub fn constant(c: FqElem) -> FqPoly {
        let field = c.field().clone();
        FqPoly::from_coeffs(&field, vec![c])
    }

    pub fn y(field: &Field) -> FqPoly {
        FqPoly::monomial(FqElem::one(field), 1)
    }

    pub fn monomial(c: FqElem, k: usize) -> FqPoly {
        let field = c.field().clone();
        if c.is_zero() {
            return FqPoly::zero(&field);
        }
        let mut coeffs = vec![FqElem::zero(&field); k + 1];
        coeffs[k] = c;
        FqPoly { field, coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FqElem::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &FqElem) -> FqPoly {
        if c.is_zero() {
            return FqPoly::zero(&self.field);
        }
        FqPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> FqPoly {
        let lead = self.leading().expect("monic of zero polynomial");
        self.scale(&lead.inv())
    }

    pub fn pow(&self, mut k: usize) -> FqPoly {
        let mut acc = FqPoly::one(&self.field);
        let mut base = self.clone();
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

    pub fn div_rem(&self, d: &FqPoly) -> (FqPoly, FqPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FqPoly::zero(&self.field), self.clone());
        }
        let mut quot = vec![FqElem::zero(&self.field); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for j in 0..dd {
                let t = &q * &d.coeffs[j];
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
            rem[i] = FqElem::zero(&self.field);
            quot[i - dd] = q;
        }
        (
            FqPoly::from_coeffs(&self.field, quot),
            FqPoly::from_coeffs(&self.field, rem),
        )
    }

    pub fn rem(&self, d: &FqPoly) -> FqPoly {
        self.div_rem(d).1
    }

    pub fn gcd_monic(&self, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> FqPoly {
        if self.coeffs.len() <= 1 {
            return FqPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let scalar = FqElem::from_int(&self.field, i as i64);
                c * &scalar
            })
            .collect();
        FqPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = FqElem::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// self^exp modulo m, by binary exponentiation.
    pub fn pow_mod(&self, exp: &BigUint, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::one(&self.field);
        let mut base = self.rem(m);
        let mut e = exp.clone();
        while !e.is_zero() {
            if (&e % 2u32) == BigUint::one() {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Applies an embedding coefficientwise, producing a polynomial over the
    /// target field.
    pub fn map_embed(&self, emb: &FieldEmbedding) -> FqPoly {
        let coeffs = self.coeffs.iter().map(|c| emb.map(c)).collect();
        FqPoly::from_coeffs(&emb.to, coeffs)
    }

    /// Roots in the coefficient field, in canonical order.
    pub fn roots(&self, seed: u64) -> Vec<FqElem> {
        fq_factor(self, seed)
            .into_iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| -&g.coeff(0))
            .collect()
    }
}

impl std::ops::Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        FqPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for &FqPoly {
    type Output = FqPoly;
    fn add(self, other: &FqPoly) -> FqPoly {
        assert_same_field(&self.field, &other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + &other.coeff(i));
        }
        FqPoly::from_coeffs(&self.field, coeffs)
    }
}

impl std::ops::Sub for &FqPoly {
    type Output = FqPoly;
    fn sub(self, other: &FqPoly) -> FqPoly {
        self + &(-other)
    }
}

impl std::ops::Mul for &FqPoly {
    type Output = FqPoly;
    fn mul(self, other: &FqPoly) -> FqPoly {
        assert_same_field(&self.field, &other.field);
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(&self.field);
        }
        let mut coeffs =
            vec![FqElem::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        FqPoly::from_coeffs(&self.field, coeffs)
    }
}

impl fmt::Display for FqPoly {
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
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !c.is_one();
            if show_coeff {
                if c.const_val().is_some() {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})", c)?;
                }
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "y")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Embedding of one finite field into another, determined by the image of
/// the source generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldEmbedding {
    from: Field,
    to: Field,
    gen_image: FqElem,
}

impl FieldEmbedding {
    pub fn identity(field: &Field) -> FieldEmbedding {
        FieldEmbedding {
            from: field.clone(),
            to: field.clone(),
            gen_image: FqElem::gen(field),
        }
    }

    /// Builds an embedding from a verified image of the generator. Panics if
    /// the image is not a root of the source modulus.
    pub fn new(from: &Field, to: &Field, gen_image: FqElem) -> FieldEmbedding {
        assert_same_field(gen_image.field(), to);
        let modulus = FqPoly::from_fp_coeffs(to, &from.modulus);
        assert!(
            modulus.eval(&gen_image).is_zero(),
            "generator image is not a root of the source modulus"
        );
        FieldEmbedding { from: from.clone(), to: to.clone(), gen_image }
    }

    pub fn from_field(&self) -> &Field {
        &self.from
    }

    pub fn to_field(&self) -> &Field {
        &self.to
    }

    pub fn map(&self, a: &FqElem) -> FqElem {
        assert_same_field(a.field(), &self.from);
        let mut acc = FqElem::zero(&self.to);
        for &c in a.rep().iter().rev() {
            let cc = FqElem::from_int(&self.to, c as i64);
            acc = &(&acc * &self.gen_image) + &cc;
        }
        acc
    }

    /// The composite embedding, mapping through `self` and then `next`.
    pub fn then(&self, next: &FieldEmbedding) -> FieldEmbedding {
        assert_same_field(&self.to, &next.from);
        FieldEmbedding {
            from: self.from.clone(),
            to: next.to.clone(),
            gen_image: next.map(&self.gen_image),
        }
    }
}

/// Canonical sort key for factors: degree first, then the coefficient
/// representatives from the constant term up.
fn factor_key(f: &FqPoly) -> (usize, Vec<Vec<u64>>) {
    (
        f.deg(),
        f.coeffs().iter().map(|c| c.rep().to_vec()).collect(),
    )
}

/// Deterministic irreducibility test over F_q (Rabin). Constants and the
/// zero polynomial are not irreducible.
pub fn fq_is_irreducible(f: &FqPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let field = f.field().clone();
    let q = field.order();
    let y = FqPoly::y(&field);
    // x^{q^n} must reduce to x modulo f.
    let qn = q.pow(n as u32);
    if y.pow_mod(&qn, &f) != y.rem(&f) {
        return false;
    }
    // For each prime divisor t of n, gcd(x^{q^{n/t}} - x, f) must be 1.
    let mut m = n;
    let mut prime_divs = vec![];
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            prime_divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for t in prime_divs {
        let e = q.pow((n / t) as u32);
        let g = &y.pow_mod(&e, &f) - &y.rem(&f);
        if !g.gcd_monic(&f).is_constant() {
            return false;
        }
    }
    true
}

/// p-th root of a polynomial whose derivative vanishes, i.e. one lying in
/// F_q[y^p].
fn pth_root(f: &FqPoly) -> FqPoly {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let k = field.degree();
    // Inverse Frobenius on coefficients is the (k-1)-fold Frobenius.
    let inv_frob_exp = BigUint::from(field.characteristic()).pow((k - 1) as u32);
    let mut coeffs = vec![];
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p != 0 {
            assert!(c.is_zero(), "pth_root of polynomial with nonzero derivative");
            continue;
        }
        coeffs.push(c.pow_big(&inv_frob_exp));
    }
    FqPoly::from_coeffs(&field, coeffs)
}

/// Squarefree decomposition in characteristic p. Returns pairwise coprime
/// monic squarefree parts with their multiplicities.
fn squarefree_decomposition(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out: Vec<(FqPoly, usize)> = vec![];
    let f = f.monic();
    if f.is_constant() {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(&f);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd_monic(&deriv);
    let mut w = f.div_rem(&c).0;
    let mut i = 1usize;
    while !w.is_constant() {
        let y = w.gcd_monic(&c);
        let z = w.div_rem(&y).0;
        if !z.is_constant() {
            out.push((z, i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_constant() {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial. Returns
/// pairs (product of irreducible factors of degree d, d).
fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let y = FqPoly::y(&field);
    let mut out = vec![];
    let mut rest = f.clone();
    let mut h = y.rem(&rest);
    let mut d = 0usize;
    while rest.degree().map_or(false, |n| n >= 1) {
        d += 1;
        if rest.deg() < 2 * d {
            // The remainder is itself irreducible.
            out.push((rest.clone(), rest.deg()));
            break;
        }
        h = h.pow_mod(&q, &rest);
        let g = (&h - &y.rem(&rest)).gcd_monic(&rest);
        if !g.is_constant() {
            out.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}

fn random_poly(field: &Field, deg_below: usize, rng: &mut ChaCha8Rng) -> FqPoly {
    let k = field.degree();
    let p = field.characteristic();
    let coeffs = (0..deg_below)
        .map(|_| {
            let rep: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            FqElem::from_raw(field, rep)
        })
        .collect();
    FqPoly::from_coeffs(field, coeffs)
}

/// Equal-degree splitting: factors a monic squarefree product of irreducible
/// polynomials all of degree d into those irreducibles.
fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let k = field.degree();
    loop {
        let a = random_poly(&field, n, rng);
        if a.is_constant() {
            continue;
        }
        let g = a.gcd_monic(f);
        let candidate = if !g.is_constant() && g.deg() < n {
            g
        } else if p == 2 {
            // Trace map over F_2: T(a) = a + a^2 + ... + a^{2^{kd-1}}.
            let mut t = a.rem(f);
            let mut cur = a.rem(f);
            for _ in 1..(k * d) {
                cur = (&cur * &cur).rem(f);
                t = &t + &cur;
            }
            t.gcd_monic(f)
        } else {
            let e = (field.order().pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f);
            (&b - &FqPoly::one(&field)).gcd_monic(f)
        };
        if !candidate.is_constant() && candidate.deg() < n {
            let rest = f.div_rem(&candidate).0;
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// Full factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities. The result is sorted canonically (degree, then
/// coefficient representatives), so it does not depend on the seed.
pub fn fq_factor(f: &FqPoly, seed: u64) -> Vec<(FqPoly, usize)> {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| factor_key(&a.0).cmp(&factor_key(&b.0)));
    out
}

/// Adjoins a root of a monic irreducible polynomial over `base`. Returns the
/// extension field, the embedding of `base` into it, and a root of the
/// polynomial there. Degree one extensions return the base field itself.
///
/// The root is the one attached to the canonically first linear factor, so
/// the output is deterministic.
pub fn extend_field(base: &Field, psi: &FqPoly) -> Result<(Field, FieldEmbedding, FqElem)> {
    assert_same_field(psi.field(), base);
    if !fq_is_irreducible(psi) {
        return Err(Error::NotIrreducible);
    }
    let psi = psi.monic();
    let d = psi.deg();
    if d == 1 {
        let root = -&psi.coeff(0);
        return Ok((base.clone(), FieldEmbedding::identity(base), root));
    }
    let p = base.characteristic();
    let new_k = base.degree() * d;
    let big = FieldDesc::extension(p, new_k);
    // Embed the base field: pick the canonical root of its modulus.
    let emb = if base.degree() == 1 {
        FieldEmbedding::new(base, &big, FqElem::zero(&big))
    } else {
        let base_mod = FqPoly::from_fp_coeffs(&big, base.modulus());
        let roots = base_mod.roots(0x5eed);
        let root = roots.first().cloned().ok_or_else(|| {
            Error::Internal("base modulus has no root in the extension".into())
        })?;
        FieldEmbedding::new(base, &big, root)
    };
    let psi_big = psi.map_embed(&emb);
    let roots = psi_big.roots(0x5eed);
    let root = roots
        .first()
        .cloned()
        .ok_or_else(|| Error::Internal("irreducible polynomial has no root upstairs".into()))?;
    Ok((big, emb, root))
}

/// Solves a square linear system over F_p by Gaussian elimination. The
/// matrix is given in row-major order with one extra column for the right
/// hand side. Returns None when the system is inconsistent; free variables
/// are set to zero.
fn fp_solve(mut m: Vec<Vec<u64>>, p: u64) -> Option<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = m[0].len() - 1;
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = sc_inv(m[row][col], p);
        for j in col..=cols {
            m[row][j] = sc_mul(m[row][j], inv, p);
        }
        for r in 0..rows {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for j in col..=cols {
                    let t = sc_mul(factor, m[row][j], p);
                    m[r][j] = sc_sub(m[r][j], t, p);
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero right hand side.
    for r in row..rows {
        if m[r][..cols].iter().all(|&c| c == 0) && m[r][cols] != 0 {
            return None;
        }
    }
    let mut sol = vec![0u64; cols];
    for r in 0..row {
        let c = pivot_col_of_row[r];
        sol[c] = m[r][cols];
    }
    Some(sol)
}

/// Coordinates of `elem` over the image of `emb`, with respect to the power
/// basis 1, z, ..., z^{d-1}. Fails when `elem` does not lie in that span.
pub fn relative_coords(
    emb: &FieldEmbedding,
    z: &FqElem,
    d: usize,
    elem: &FqElem,
) -> Result<Vec<FqElem>> {
    let big = emb.to_field().clone();
    let small = emb.from_field().clone();
    assert_same_field(z.field(), &big);
    assert_same_field(elem.field(), &big);
    let p = big.characteristic();
    let kl = big.degree();
    let ks = small.degree();
    // Unknowns: for each j < d and i < ks, the F_p coefficient of
    // emb(y_small^i) * z^j. Build the kl x (d*ks) system columnwise.
    let mut cols: Vec<Vec<u64>> = vec![];
    let mut zpow = FqElem::one(&big);
    for _ in 0..d {
        let mut gen_pow = FqElem::one(&small);
        for _ in 0..ks {
            let basis_elem = &emb.map(&gen_pow) * &zpow;
            cols.push(basis_elem.rep().to_vec());
            gen_pow = &gen_pow * &FqElem::gen(&small);
        }
        zpow = &zpow * z;
    }
    let ncols = cols.len();
    let mut matrix = vec![vec![0u64; ncols + 1]; kl];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..kl {
            matrix[i][j] = col[i];
        }
    }
    for i in 0..kl {
        matrix[i][ncols] = elem.rep()[i];
    }
    let sol = fp_solve(matrix, p)
        .ok_or_else(|| Error::Internal("element outside the requested span".into()))?;
    let mut coords = vec![];
    for j in 0..d {
        let rep: Vec<u64> = (0..ks).map(|i| sol[j * ks + i]).collect();
        coords.push(FqElem::from_raw(&small, rep));
    }
    Ok(coords)
}

/// Monic minimal polynomial of `z` over the image of `emb`, as a polynomial
/// with coefficients in the source field.
pub fn min_poly_over(emb: &FieldEmbedding, z: &FqElem) -> FqPoly {
    let small = emb.from_field().clone();
    let dmax = emb.to_field().degree() / small.degree();
    for d in 1..=dmax {
        let target = z.pow_u64(d as u64);
        if let Ok(coords) = relative_coords(emb, z, d, &target) {
            let mut coeffs: Vec<FqElem> = coords.iter().map(|c| -c).collect();
            coeffs.push(FqElem::one(&small));
            return FqPoly::from_coeffs(&small, coeffs);
        }
    }
    unreachable!("z generates at most the whole field");
}
