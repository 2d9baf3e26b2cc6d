//! Key polynomials and the graded calculus of an ordinary chain.
//!
//! The central object is the `Ladder`: per-node value groups, ramification
//! indices, normalizing monomials, and the tower of residue fields built
//! by adjoining the residual of each key to the field below. On top of it
//! sit the residual operator, key detection, lifting of residue-field
//! polynomials to key polynomials, and Newton polygons.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{
    inv_mod_p, mod_p, ord_p, Rational, RationalPoly, Value, ValueGroup,
};
use crate::ffield::{
    extend_field, fq_is_irreducible, relative_coords, Field, FieldDesc, FieldEmbedding, FqElem,
    FqPoly,
};
use crate::valuation::InductiveValuation;

/// A graded monomial `p^p_exp * prod X_l^t[l]`, exponents unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
struct MonoAcc {
    p_exp: i64,
    t: Vec<i64>,
}

impl MonoAcc {
    fn add_scaled(&mut self, other: &MonoAcc, k: i64) {
        debug_assert_eq!(self.t.len(), other.t.len());
        self.p_exp += k * other.p_exp;
        for (a, b) in self.t.iter_mut().zip(&other.t) {
            *a += k * b;
        }
    }

    fn is_trivial(&self) -> bool {
        self.p_exp == 0 && self.t.iter().all(|&x| x == 0)
    }
}

fn p_power(p: u64, k: i64) -> Rational {
    let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(pk)
    } else {
        Rational::new(BigInt::one(), pk)
    }
}

/// Node-by-node graded data of a purely ordinary chain, compressed first.
pub struct Ladder {
    chain: InductiveValuation,
    groups: Vec<ValueGroup>,
    e: Vec<u64>,
    u: Vec<MonoAcc>,
    fields: Vec<Field>,
    embeds: Vec<FieldEmbedding>,
    z: Vec<FqElem>,
    residuals: Vec<FqPoly>,
}

impl Ladder {
    pub fn new(mu: &InductiveValuation) -> Result<Ladder> {
        if mu.has_limit_step() {
            return Err(Error::LimitStepPresent);
        }
        let chain = mu.try_compress()?;
        let r = chain.depth();
        for n in 0..r {
            if chain.gamma_at(n).is_infinite() {
                return Err(Error::MlvViolation {
                    step: n,
                    condition: "only the final value may be infinite".into(),
                });
            }
        }
        let mut groups = Vec::with_capacity(r + 1);
        let mut e = Vec::with_capacity(r + 1);
        let mut cur = ValueGroup::integers();
        for n in 0..=r {
            let prev = cur.clone();
            if let Some(g) = chain.gamma_at(n).as_finite() {
                cur = cur.join(g);
            }
            groups.push(cur.clone());
            e.push(cur.index_over(&prev));
        }
        let p = chain.p();
        let mut ladder = Ladder {
            chain,
            groups,
            e,
            u: Vec::new(),
            fields: vec![FieldDesc::prime(p)],
            embeds: Vec::new(),
            z: Vec::new(),
            residuals: Vec::new(),
        };
        for l in 0..r {
            let gl = ladder.gamma_rat(l);
            let alpha = Rational::from_integer(BigInt::from(ladder.e[l])) * gl;
            let ul = ladder.mono_digits(l, &alpha)?;
            ladder.u.push(ul);
            let next_key = ladder.chain.key_at(l + 1);
            let parts = ladder.residual_parts_at(l, &next_key)?;
            if parts.s0 != 0 || parts.monic.deg() < 1 {
                return Err(Error::MlvViolation {
                    step: l + 1,
                    condition: "step polynomial is not a key of the node below".into(),
                });
            }
            if !fq_is_irreducible(&parts.monic) {
                return Err(Error::NotIrreducible);
            }
            let (bigger, emb, root) = extend_field(&ladder.fields[l], &parts.monic)?;
            ladder.fields.push(bigger);
            ladder.embeds.push(emb);
            ladder.z.push(root);
            ladder.residuals.push(parts.monic);
        }
        Ok(ladder)
    }

    /// The compressed chain the ladder describes.
    pub fn chain(&self) -> &InductiveValuation {
        &self.chain
    }

    pub fn depth(&self) -> usize {
        self.chain.depth()
    }

    /// Value group at node `n`.
    pub fn node_group(&self, n: usize) -> &ValueGroup {
        &self.groups[n]
    }

    /// Index of the group below node `n` inside the group at node `n`.
    pub fn group_index(&self, n: usize) -> u64 {
        self.e[n]
    }

    /// Residue field at each node; the last entry is the residue field of
    /// the chain itself.
    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn residue_field(&self) -> &Field {
        self.fields.last().expect("ladder has a base field")
    }

    /// Minimal polynomial adjoined at each step of the field tower.
    pub fn min_polys(&self) -> &[FqPoly] {
        &self.residuals
    }

    /// Root of each adjoined minimal polynomial, inside the next field.
    pub fn z_roots(&self) -> &[FqElem] {
        &self.z
    }

    /// The relation monomial at node `l` as `(p exponent, key exponents)`.
    pub fn relation_unit(&self, l: usize) -> Result<(i64, Vec<i64>)> {
        let ul = self.u_at(l)?;
        Ok((ul.p_exp, ul.t))
    }

    fn gamma_rat(&self, l: usize) -> Rational {
        self.chain
            .gamma_at(l)
            .as_finite()
            .expect("interior node values are finite")
            .clone()
    }

    fn u_at(&self, level: usize) -> Result<MonoAcc> {
        if level < self.u.len() {
            return Ok(self.u[level].clone());
        }
        let g = self
            .chain
            .gamma_at(level)
            .as_finite()
            .ok_or(Error::NotResiduallyTranscendental)?
            .clone();
        let alpha = Rational::from_integer(BigInt::from(self.e[level])) * g;
        self.mono_digits(level, &alpha)
    }

    /// Greedy digit expansion of `alpha` over the values of nodes below
    /// `level`, with the integer remainder going to the exponent of p.
    fn mono_digits(&self, level: usize, alpha: &Rational) -> Result<MonoAcc> {
        let mut t = vec![0i64; level];
        let mut rem = alpha.clone();
        for l in (0..level).rev() {
            let gl = self.gamma_rat(l);
            let below = if l == 0 {
                ValueGroup::integers()
            } else {
                self.groups[l - 1].clone()
            };
            let mut found = false;
            for cand in 0..self.e[l] {
                let adjusted = &rem - Rational::from_integer(BigInt::from(cand)) * &gl;
                if below.contains(&adjusted) {
                    t[l] = cand as i64;
                    rem = adjusted;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Internal(format!(
                    "value {} has no digit at node {}",
                    alpha, l
                )));
            }
        }
        if !rem.is_integer() {
            return Err(Error::Internal(format!(
                "value {} is not in the node group",
                alpha
            )));
        }
        let p_exp = rem
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Internal("p exponent overflows".into()))?;
        Ok(MonoAcc { p_exp, t })
    }

    fn embed_to(&self, a: &FqElem, from: usize, to: usize) -> FqElem {
        let mut x = a.clone();
        for l in from..to {
            x = self.embeds[l].map(&x);
        }
        x
    }

    /// Reduces every exponent into range using the relations
    /// `X_l^{e_l} = u_l z_l`; the raw monomial equals `eps` times the
    /// reduced one.
    fn canonicalize(&self, level: usize, mut acc: MonoAcc) -> (MonoAcc, FqElem) {
        let mut eps = FqElem::one(&self.fields[level]);
        for l in (0..level).rev() {
            let el = self.e[l] as i64;
            let q = acc.t[l].div_euclid(el);
            if q != 0 {
                acc.t[l] = acc.t[l].rem_euclid(el);
                let zq = if q > 0 {
                    self.z[l].pow_u64(q as u64)
                } else {
                    self.z[l].inv().pow_u64(q.unsigned_abs())
                };
                eps = &eps * &self.embed_to(&zq, l + 1, level);
                let ul = self.u[l].clone();
                acc.p_exp += q * ul.p_exp;
                for i in 0..l {
                    acc.t[i] += q * ul.t[i];
                }
            }
        }
        (acc, eps)
    }

    /// Unit of a value-zero monomial after reduction.
    fn unit_of_zero(&self, level: usize, acc: MonoAcc) -> Result<FqElem> {
        let (canon, eps) = self.canonicalize(level, acc);
        if !canon.is_trivial() {
            return Err(Error::Internal(
                "value-zero monomial did not reduce to one".into(),
            ));
        }
        Ok(eps)
    }

    fn residue_in_fp(&self, c: &Rational) -> FqElem {
        let p = self.chain.p();
        let num = mod_p(c.numer(), p);
        let den = inv_mod_p(c.denom(), p);
        let res = ((num as u128 * den as u128) % p as u128) as i64;
        FqElem::from_int(&self.fields[0], res)
    }

    /// Writes the initial form of `a` (nonzero, degree below the node
    /// degree) as `eps` times the canonical monomial of its value.
    fn unit_rep(&self, level: usize, a: &RationalPoly) -> Result<(FqElem, Rational)> {
        debug_assert!(!a.is_zero());
        debug_assert!(a.deg() < self.chain.degree_at(level));
        if level == 0 {
            let c = a.coeff(0);
            let k = ord_p(&c, self.chain.p());
            let unit = c / p_power(self.chain.p(), k);
            return Ok((self.residue_in_fp(&unit), Rational::from_integer(k.into())));
        }
        let l = level - 1;
        let phi = self.chain.key_at(l);
        let gl = self.gamma_rat(l);
        let mut parts: Vec<(usize, FqElem, Rational)> = Vec::new();
        for (s, a_s) in a.phi_expand(&phi).iter().enumerate() {
            if a_s.is_zero() {
                continue;
            }
            let (eps_s, alpha_s) = self.unit_rep(level - 1, a_s)?;
            parts.push((s, eps_s, alpha_s));
        }
        let alpha = parts
            .iter()
            .map(|(s, _, al)| al + Rational::from_integer(BigInt::from(*s)) * &gl)
            .min()
            .expect("nonzero polynomial has a nonzero coefficient");
        let target = self.mono_digits(level, &alpha)?;
        let mut eps = FqElem::zero(&self.fields[level]);
        for (s, eps_s, alpha_s) in &parts {
            let term = alpha_s + Rational::from_integer(BigInt::from(*s)) * &gl;
            if term != alpha {
                continue;
            }
            let mut acc = self.mono_digits(level - 1, alpha_s)?;
            acc.t.push(*s as i64);
            let (canon, delta) = self.canonicalize(level, acc);
            if canon != target {
                return Err(Error::Internal(
                    "achieving terms reduce to distinct monomials".into(),
                ));
            }
            eps = &eps + &(&self.embed_to(eps_s, level - 1, level) * &delta);
        }
        if eps.is_zero() {
            return Err(Error::Internal("initial form summed to zero".into()));
        }
        Ok((eps, alpha))
    }

    /// Inverse of `unit_rep`: a polynomial of degree below the node degree
    /// whose initial form is `eps` times the canonical monomial of `alpha`.
    fn realize(&self, level: usize, eps: &FqElem, alpha: &Rational) -> Result<RationalPoly> {
        if eps.is_zero() {
            return Err(Error::Internal("cannot realize the zero unit".into()));
        }
        if level == 0 {
            if !alpha.is_integer() {
                return Err(Error::Internal("depth-zero value must be an integer".into()));
            }
            let c = eps.rep()[0];
            let k = alpha
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Internal("p exponent overflows".into()))?;
            return Ok(RationalPoly::constant(
                Rational::from_integer(BigInt::from(c)) * p_power(self.chain.p(), k),
            ));
        }
        let l = level - 1;
        let el = self.e[l] as i64;
        let gl = self.gamma_rat(l);
        let phi = self.chain.key_at(l);
        let f_rel = self.fields[level].degree() / self.fields[l].degree();
        let coords = relative_coords(&self.embeds[l], &self.z[l], f_rel, eps)?;
        let digits = self.mono_digits(level, alpha)?;
        let t_star = digits.t[l];
        let rest = MonoAcc {
            p_exp: digits.p_exp,
            t: digits.t[..l].to_vec(),
        };
        let ul = self.u_at(l)?;
        let mut out = RationalPoly::zero();
        for (q, c_q) in coords.iter().enumerate() {
            if c_q.is_zero() {
                continue;
            }
            let beta = alpha
                - Rational::from_integer(BigInt::from(q as i64 * el + t_star)) * &gl;
            let mut acc = rest.clone();
            acc.add_scaled(&ul, -(q as i64));
            let (canon, w) = self.canonicalize(l, acc);
            if canon != self.mono_digits(l, &beta)? {
                return Err(Error::Internal(
                    "monomial residue mismatch during realization".into(),
                ));
            }
            let a_q = self.realize(l, &(c_q * &w), &beta)?;
            let exp = (q as i64 * el + t_star) as usize;
            out = &out + &(&a_q * &phi.pow(exp));
        }
        debug_assert!(out.deg() < self.chain.degree_at(level));
        Ok(out)
    }

    /// Residual computation at a given node.
    fn residual_parts_at(&self, level: usize, f: &RationalPoly) -> Result<ResidualParts> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let gamma = self
            .chain
            .gamma_at(level)
            .as_finite()
            .ok_or(Error::NotResiduallyTranscendental)?
            .clone();
        let phi = self.chain.key_at(level);
        let e = self.e[level] as usize;
        let ul = self.u_at(level)?;
        let mut parts: Vec<(usize, FqElem, Rational)> = Vec::new();
        for (s, a_s) in f.phi_expand(&phi).iter().enumerate() {
            if a_s.is_zero() {
                continue;
            }
            let (eps_s, alpha_s) = self.unit_rep(level, a_s)?;
            parts.push((s, eps_s, alpha_s));
        }
        let value = parts
            .iter()
            .map(|(s, _, al)| al + Rational::from_integer(BigInt::from(*s)) * &gamma)
            .min()
            .expect("nonzero polynomial has a nonzero coefficient");
        let achieving: Vec<&(usize, FqElem, Rational)> = parts
            .iter()
            .filter(|(s, _, al)| {
                al + Rational::from_integer(BigInt::from(*s)) * &gamma == value
            })
            .collect();
        let s0 = achieving[0].0;
        let smax = achieving.last().expect("achieving set is nonempty").0;
        for part in &achieving {
            if (part.0 - s0) % e != 0 {
                return Err(Error::Internal(
                    "achieving exponents are not aligned with the index".into(),
                ));
            }
        }
        let deg_r = (smax - s0) / e;
        let digits0 = self.mono_digits(level, &achieving[0].2)?;
        let eps0_inv = achieving[0].1.inv();
        let mut coeffs = vec![FqElem::zero(&self.fields[level]); deg_r + 1];
        for part in &achieving {
            let (s, eps_s, alpha_s) = (part.0, &part.1, &part.2);
            let j = (s - s0) / e;
            let mut acc = self.mono_digits(level, alpha_s)?;
            acc.add_scaled(&digits0, -1);
            acc.add_scaled(&ul, j as i64);
            let w = self.unit_of_zero(level, acc)?;
            coeffs[j] = &(eps_s * &eps0_inv) * &w;
        }
        if !coeffs[0].is_one() {
            return Err(Error::Internal("residual constant term is not one".into()));
        }
        let raw = FqPoly::from_coeffs(&self.fields[level], coeffs);
        let leading_unit = raw.leading().expect("residual is nonzero").clone();
        Ok(ResidualParts {
            value,
            s0,
            monic: raw.monic(),
            leading_unit,
        })
    }

    /// Public residual at an arbitrary node of the compressed chain.
    pub fn residual_at(&self, node: usize, f: &RationalPoly) -> Result<ResidualData> {
        let parts = self.residual_parts_at(node, f)?;
        Ok(ResidualData {
            value: Value::Finite(parts.value),
            s0: parts.s0,
            poly: parts.monic,
            leading_unit: parts.leading_unit,
        })
    }

    /// Normalizing monomial for the top node.
    pub fn normalizer(&self) -> Result<Normalizer> {
        let r = self.depth();
        if self.chain.last_gamma().is_infinite() {
            return Err(Error::NotResiduallyTranscendental);
        }
        let u = self.u_at(r)?;
        let exps: Vec<u32> = u.t.iter().map(|&x| x as u32).collect();
        let keys: Vec<RationalPoly> = (0..r).map(|n| self.chain.key_at(n)).collect();
        let norm = Normalizer {
            c: Rational::one(),
            p_exp: u.p_exp,
            exps,
            keys,
            p: self.chain.p(),
        };
        debug_assert!(norm.to_poly().is_constant() || norm.to_poly().deg() < self.chain.deg());
        Ok(norm)
    }
}

struct ResidualParts {
    value: Rational,
    s0: usize,
    monic: FqPoly,
    leading_unit: FqElem,
}

/// Residual of a polynomial against the top node of a chain: its value,
/// the power of the key dividing its initial form, and the residual
/// polynomial stored monic alongside the stripped leading unit.
#[derive(Debug, Clone)]
pub struct ResidualData {
    pub value: Value,
    pub s0: usize,
    pub poly: FqPoly,
    pub leading_unit: FqElem,
}

/// A monomial `c * p^p_exp * prod key_n^exps[n]` witnessing that the top
/// value times its index lies in the group below.
#[derive(Debug, Clone)]
pub struct Normalizer {
    pub c: Rational,
    pub p_exp: i64,
    pub exps: Vec<u32>,
    keys: Vec<RationalPoly>,
    p: u64,
}

impl Normalizer {
    pub fn to_poly(&self) -> RationalPoly {
        let mut out = RationalPoly::constant(&self.c * p_power(self.p, self.p_exp));
        for (key, &t) in self.keys.iter().zip(&self.exps) {
            if t > 0 {
                out = &out * &key.pow(t as usize);
            }
        }
        out
    }
}

/// One side of a Newton polygon: slope and horizontal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonSide {
    pub slope: Rational,
    pub length: usize,
}

/// Lower convex hull of the points `(s, mu(a_s))` of a key expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Value)>,
    pub sides: Vec<PolygonSide>,
}

/// Residual of `f` against the top node of `mu`.
pub fn residual(mu: &InductiveValuation, f: &RationalPoly) -> Result<ResidualData> {
    if mu.last_gamma().is_infinite() {
        return Err(Error::NotResiduallyTranscendental);
    }
    let ladder = Ladder::new(mu)?;
    ladder.residual_at(ladder.depth(), f)
}

/// Whether `f` and `g` share their initial form under `mu`.
pub fn equiv(mu: &InductiveValuation, f: &RationalPoly, g: &RationalPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f == g {
        return Ok(true);
    }
    let vf = mu.eval(f)?;
    if mu.eval(g)? != vf {
        return Ok(false);
    }
    Ok(mu.eval(&(f - g))? > vf)
}

/// Whether `chi` is a key polynomial for `mu`: either equivalent to the
/// current key, or with an irreducible residual of matching degree.
pub fn is_key(mu: &InductiveValuation, chi: &RationalPoly) -> Result<bool> {
    if chi.is_zero() || !chi.is_monic() {
        return Err(Error::NotMonic);
    }
    if chi.deg() < 1 {
        return Ok(false);
    }
    if mu.last_gamma().is_infinite() {
        return Ok(false);
    }
    let ladder = Ladder::new(mu)?;
    let m = ladder.chain().deg();
    if chi.deg() == m && equiv(ladder.chain(), chi, &ladder.chain().last_key())? {
        return Ok(true);
    }
    let rd = ladder.residual_at(ladder.depth(), chi)?;
    let deg_r = rd.poly.deg();
    let e = ladder.group_index(ladder.depth()) as usize;
    Ok(deg_r >= 1 && chi.deg() == m * e * deg_r && fq_is_irreducible(&rd.poly))
}

/// Normalizing monomial of `mu`.
pub fn normalizer(mu: &InductiveValuation) -> Result<Normalizer> {
    if mu.last_gamma().is_infinite() {
        return Err(Error::NotResiduallyTranscendental);
    }
    Ladder::new(mu)?.normalizer()
}

/// Lifts a monic irreducible residual polynomial (other than y) to a key
/// polynomial of the next degree.
pub fn lift(mu: &InductiveValuation, psi: &FqPoly) -> Result<RationalPoly> {
    if mu.last_gamma().is_infinite() {
        return Err(Error::NotResiduallyTranscendental);
    }
    let ladder = Ladder::new(mu)?;
    let field = ladder.residue_field();
    let pf = psi.field();
    if pf.characteristic() != field.characteristic()
        || pf.degree() != field.degree()
        || pf.modulus() != field.modulus()
    {
        return Err(Error::Internal(
            "residual polynomial lives in the wrong residue field".into(),
        ));
    }
    if psi.is_zero() || !psi.is_monic() {
        return Err(Error::NotMonic);
    }
    let g = psi.deg();
    if g == 1 && psi.coeff(0).is_zero() {
        return Err(Error::PsiIsY);
    }
    if g < 1 || !fq_is_irreducible(psi) {
        return Err(Error::NotIrreducible);
    }
    let r = ladder.depth();
    let e = ladder.group_index(r) as usize;
    let gamma = ladder
        .chain()
        .last_gamma()
        .as_finite()
        .expect("finite top value checked above")
        .clone();
    let phi = ladder.chain().last_key();
    let ul = ladder.u_at(r)?;
    let top_digits = ladder.mono_digits(
        r,
        &(Rational::from_integer(BigInt::from((g * e) as i64)) * &gamma),
    )?;
    let w_at = |j: usize| -> Result<FqElem> {
        let alpha_j = Rational::from_integer(BigInt::from(((g - j) * e) as i64)) * &gamma;
        let mut acc = ladder.mono_digits(r, &alpha_j)?;
        acc.add_scaled(&top_digits, -1);
        acc.add_scaled(&ul, j as i64);
        ladder.unit_of_zero(r, acc)
    };
    let w_g = w_at(g)?;
    let mut chi = phi.pow(e * g);
    for j in 0..g {
        let psi_j = psi.coeff(j);
        if psi_j.is_zero() {
            continue;
        }
        let delta = &w_g * &w_at(j)?.inv();
        let alpha_j = Rational::from_integer(BigInt::from(((g - j) * e) as i64)) * &gamma;
        let a_j = ladder.realize(r, &(&psi_j * &delta), &alpha_j)?;
        chi = &chi + &(&a_j * &phi.pow(e * j));
    }
    let check = ladder.residual_at(r, &chi)?;
    if check.s0 != 0 || check.poly != *psi {
        return Err(Error::Internal("lift postcondition failed".into()));
    }
    Ok(chi)
}

/// Newton polygon of `f` expanded in `phi`, built from the coefficients
/// with finite value.
pub fn newton_polygon(
    mu: &InductiveValuation,
    phi: &RationalPoly,
    f: &RationalPoly,
) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if phi.is_zero() || !phi.is_monic() || phi.deg() < 1 {
        return Err(Error::NotMonic);
    }
    let mut points: Vec<(usize, Rational)> = Vec::new();
    for (s, a_s) in f.phi_expand(phi).iter().enumerate() {
        if a_s.is_zero() {
            continue;
        }
        if let Some(v) = mu.eval(a_s)?.as_finite() {
            points.push((s, v.clone()));
        }
    }
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (x0, y0) = &hull[hull.len() - 2];
            let (x1, y1) = &hull[hull.len() - 1];
            let lhs = (y1 - y0) * Rational::from_integer(BigInt::from((pt.0 - x1) as i64));
            let rhs = (&pt.1 - y1) * Rational::from_integer(BigInt::from((x1 - x0) as i64));
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let sides = hull
        .windows(2)
        .map(|w| {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            PolygonSide {
                slope: (y1 - y0) / Rational::from_integer(BigInt::from((x1 - x0) as i64)),
                length: x1 - x0,
            }
        })
        .collect();
    let vertices = hull
        .into_iter()
        .map(|(s, v)| (s, Value::Finite(v)))
        .collect();
    Ok(NewtonPolygon { vertices, sides })
}
