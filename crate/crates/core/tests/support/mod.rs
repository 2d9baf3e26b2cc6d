//! Generators and oracles shared by the acceptance suite.

use std::sync::atomic::{AtomicUsize, Ordering};

use maclane::chain::MLVChain;
use maclane::exactnum::{rat, rat_int, Rational, RationalPoly, Value};
use maclane::ffield::{fq_is_irreducible, Field, FqElem, FqPoly};
use maclane::keypoly::{lift, Ladder};
use maclane::valuation::InductiveValuation;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

static NODES_CHECKED: AtomicUsize = AtomicUsize::new(0);

pub fn nodes_checked() -> usize {
    NODES_CHECKED.load(Ordering::SeqCst)
}

/// Compresses the chain and recomputes its invariants, which asserts the
/// node degree identity at every step; violations surface as panics.
pub fn assert_degree_identity(mu: &InductiveValuation) {
    let chain = MLVChain::compress(mu).expect("generated chain satisfies the chain conditions");
    let inv = chain
        .invariants()
        .expect("degree identity holds at every node");
    NODES_CHECKED.fetch_add(inv.m.len(), Ordering::SeqCst);
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let dens = [1i64, 1, 1, 2, 3, 5];
    let num = rng.gen_range(-50..=50i64);
    let den = dens[rng.gen_range(0..dens.len())];
    rat(num, den)
}

/// Random polynomial of degree at most `max_deg`; never the zero polynomial.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> RationalPoly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Rational> = (0..=d).map(|_| random_rational(rng)).collect();
    let f = RationalPoly::from_coeffs(coeffs);
    if f.is_zero() {
        RationalPoly::one()
    } else {
        f
    }
}

pub fn random_fq_elem(rng: &mut ChaCha8Rng, field: &Field) -> FqElem {
    let mut acc = FqElem::zero(field);
    let mut basis = FqElem::one(field);
    for _ in 0..field.degree() {
        let digit = rng.gen_range(0..field.characteristic()) as i64;
        acc = &acc + &(&basis * &FqElem::from_int(field, digit));
        basis = &basis * &FqElem::gen(field);
    }
    acc
}

/// Random monic irreducible polynomial of the given degree, never `y`.
pub fn random_irreducible(rng: &mut ChaCha8Rng, field: &Field, deg: usize) -> FqPoly {
    loop {
        let mut coeffs: Vec<FqElem> = (0..deg).map(|_| random_fq_elem(rng, field)).collect();
        coeffs.push(FqElem::one(field));
        let psi = FqPoly::from_coeffs(field, coeffs);
        if psi.deg() == 1 && psi.coeff(0).is_zero() {
            continue;
        }
        if fq_is_irreducible(&psi) {
            return psi;
        }
    }
}

/// Random key polynomial of `mu`, lifted from a random irreducible residual
/// factor of degree at most `max_psi_deg`.
pub fn random_key(
    rng: &mut ChaCha8Rng,
    mu: &InductiveValuation,
    max_psi_deg: usize,
) -> Option<RationalPoly> {
    let ladder = Ladder::new(mu).ok()?;
    let field = ladder.residue_field().clone();
    let d = if max_psi_deg >= 2 && rng.gen_bool(0.25) {
        2
    } else {
        1
    };
    let psi = random_irreducible(rng, &field, d);
    lift(mu, &psi).ok()
}

/// Random ordinary chain over p, at most `max_depth` augmentation steps,
/// with all key degrees bounded by `deg_cap`.
pub fn random_ordinary_chain(
    rng: &mut ChaCha8Rng,
    p: u64,
    max_depth: usize,
    deg_cap: usize,
) -> InductiveValuation {
    let a = rat_int(rng.gen_range(-9..=9));
    let dens = [1i64, 1, 2, 3];
    let den = dens[rng.gen_range(0..dens.len())];
    let g0 = rat(rng.gen_range(0..=6), den);
    let mut mu = InductiveValuation::depth_zero(p, a, Value::Finite(g0)).unwrap();
    let target = rng.gen_range(0..=max_depth);
    while mu.depth() < target {
        let Some(phi) = random_key(rng, &mu, 2) else {
            break;
        };
        if phi.deg() > deg_cap {
            break;
        }
        let Value::Finite(v) = mu.eval(&phi).unwrap() else {
            break;
        };
        let jump_dens = [1i64, 2, 3];
        let delta = rat(
            rng.gen_range(1..=4),
            jump_dens[rng.gen_range(0..jump_dens.len())],
        );
        let gamma = Value::Finite(&v + &delta);
        match mu.augment(phi, gamma) {
            Ok(next) => mu = next,
            Err(_) => break,
        }
    }
    mu
}

/// Splitting type of `x^2 - d` over the p-adic field, for odd p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticType {
    Ramified,
    Split,
    Inert,
}

/// Decides the splitting of `x^2 - d` by elementary means: the parity of
/// the valuation of `d` detects ramification, the Legendre symbol of the
/// unit part separates split from inert, and every claimed square root is
/// certified by a Newton iteration modulo p^8.
pub fn quadratic_oracle(d: i64, p: u64) -> QuadraticType {
    assert!(p % 2 == 1 && d != 0);
    let pi = i128::from(p);
    let mut u = i128::from(d);
    let mut k = 0u32;
    while u % pi == 0 {
        u /= pi;
        k += 1;
    }
    if k % 2 == 1 {
        return QuadraticType::Ramified;
    }
    let um = u.rem_euclid(pi) as u64;
    if pow_mod(um, (p - 1) / 2, p) != 1 {
        return QuadraticType::Inert;
    }
    let r0 = (1..p)
        .find(|&r| r * r % p == um % p)
        .expect("a quadratic residue has a root");
    let modulus = u128::from(p).pow(8);
    let mut r = u128::from(r0);
    let target = u.rem_euclid(modulus as i128) as u128;
    for _ in 0..6 {
        let deriv = (2 * r) % modulus;
        let inv = inv_mod(deriv, modulus);
        let residue = (r * r % modulus + modulus - target % modulus) % modulus;
        r = (r + modulus - residue * inv % modulus) % modulus;
    }
    assert_eq!(r * r % modulus, target, "oracle root fails its certificate");
    QuadraticType::Split
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = u128::from(m);
    let mut bb = u128::from(b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    acc as u64
}

fn inv_mod(a: u128, m: u128) -> u128 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "modular inverse of a non-unit");
    t.rem_euclid(m as i128) as u128
}
