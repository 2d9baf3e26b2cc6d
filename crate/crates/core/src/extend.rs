//! Decomposition of a monic squarefree integer polynomial over the p-adic
//! field, by refining key polynomials along Newton polygons.
//!
//! Each irreducible p-adic factor of the input is tracked by one leaf of a
//! refinement tree.  The tree starts with the irreducible factors of the
//! reduction mod p; a factor of multiplicity one separates immediately,
//! while higher multiplicity is resolved by lifting the factor to a key
//! polynomial, slicing the Newton polygon of the input against it, and
//! factoring the residual on each admissible side.  The input is squarefree,
//! so the clusters shrink at every level and the walk terminates.

use crate::chain::{ChainInvariants, MLVChain};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalPoly, Value, ValueGroup};
use crate::ffield::{fq_factor, FieldDesc, FqPoly};
use crate::keypoly::{is_key, lift, newton_polygon, residual, Ladder};
use crate::limitfam::FamilyStream;
use crate::valuation::InductiveValuation;
use num_traits::Zero;

const DEPTH_CAP: usize = 64;

/// One p-adic factor of the input, described by the inductive valuation
/// that separated it.
///
/// `chain` is the compressed approximant valuation, `terminal` the residual
/// factor that reached multiplicity one, `e` and `f` the ramification index
/// and residual degree of the factor, and `slope_history` the polygon
/// slopes chosen on the way down.  The product `e * f` is the degree of the
/// factor; there is no defect over a p-adic base.
#[derive(Debug, Clone)]
pub struct ExtensionLeaf {
    pub chain: MLVChain,
    pub terminal: FqPoly,
    pub e: u64,
    pub f: u64,
    pub slope_history: Vec<Rational>,
}

/// Result of asking a leaf for an exact chain of the factor it tracks.
#[derive(Debug, Clone)]
pub enum ExactOutcome {
    /// The factor lies in the rationals, so its valuation is a finite chain
    /// ending in an infinite value.
    Chain(MLVChain),
    /// The factor is irrational over the rationals; only the approximant is
    /// returned, together with a digit stream that refines it further when
    /// the factor corresponds to a simple root mod p.
    ApproximantOnly {
        chain: MLVChain,
        refinement: Option<FamilyStream>,
    },
}

/// All p-adic factors of one input polynomial.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub p: u64,
    pub degree: usize,
    pub leaves: Vec<ExtensionLeaf>,
}

impl ExtensionReport {
    /// The `(e, f)` pairs of the leaves, in canonical order.
    pub fn local_degrees(&self) -> Vec<(u64, u64)> {
        self.leaves.iter().map(|l| (l.e, l.f)).collect()
    }
}

impl ExtensionLeaf {
    /// Degree of the p-adic factor this leaf tracks.
    pub fn local_degree(&self) -> u64 {
        self.e * self.f
    }

    pub fn invariants(&self) -> Result<ChainInvariants> {
        self.chain.invariants()
    }

    /// Upgrades the approximant to an exact chain when possible.
    ///
    /// The upgrade succeeds when the approximant already ends in an
    /// infinite value or when `f` itself is a key of the approximant; the
    /// latter happens exactly when `f` is irreducible over the p-adic
    /// field, so this leaf is the only one.  Otherwise the approximant is
    /// returned as is, with a Hensel digit stream attached when the factor
    /// comes from a simple root of the reduction mod p.
    pub fn exact_chain(&self, f: &RationalPoly) -> Result<ExactOutcome> {
        let mu = self.chain.valuation();
        if mu.last_gamma().is_infinite() {
            return Ok(ExactOutcome::Chain(self.chain.clone()));
        }
        if is_key(mu, f)? {
            let full = mu.augment(f.clone(), Value::Infinity)?;
            return Ok(ExactOutcome::Chain(MLVChain::compress(&full)?));
        }
        let refinement = self.hensel_seed(f);
        Ok(ExactOutcome::ApproximantOnly {
            chain: self.chain.clone(),
            refinement,
        })
    }

    fn hensel_seed(&self, f: &RationalPoly) -> Option<FamilyStream> {
        let mu = self.chain.valuation();
        if mu.depth() != 0 || self.terminal.deg() != 1 {
            return None;
        }
        let dz = mu.depth_zero_data();
        let at_gauss = dz.a.is_zero()
            && dz.gamma.as_finite().map_or(false, |g| g.is_zero());
        if !at_gauss {
            return None;
        }
        let p = mu.p();
        let c = self.terminal.coeff(0).const_val()?;
        let root = (p - c % p) % p;
        FamilyStream::hensel(p, f.clone(), root).ok()
    }
}

/// Decomposes the p-adic algebra defined by a monic squarefree integer
/// polynomial into one leaf per irreducible p-adic factor.
///
/// The seed steers the randomized equal-degree splitting inside residual
/// factorizations; the set of leaves does not depend on it.
pub fn extensions(f: &RationalPoly, p: u64, seed: u64) -> Result<ExtensionReport> {
    if f.is_zero() || f.deg() < 1 {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    f.require_integer_coeffs()?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let gauss = InductiveValuation::gauss(p)?;
    let fbar = reduce_mod_p(f, p);
    let mut leaves = Vec::new();
    for (psi, mult) in fq_factor(&fbar, seed) {
        explore(&gauss, &psi, mult, Vec::new(), 1, f, seed, &mut leaves)?;
    }
    let total: u64 = leaves.iter().map(|l| l.e * l.f).sum();
    if total != f.deg() as u64 {
        return Err(Error::Internal(
            "local degrees do not sum to the input degree".into(),
        ));
    }
    leaves.sort_by(|a, b| {
        let ka = (&a.slope_history, a.e, a.f, a.terminal.to_string());
        let kb = (&b.slope_history, b.e, b.f, b.terminal.to_string());
        ka.cmp(&kb)
    });
    Ok(ExtensionReport {
        p,
        degree: f.deg(),
        leaves,
    })
}

fn reduce_mod_p(f: &RationalPoly, p: u64) -> FqPoly {
    let field = FieldDesc::prime(p);
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| crate::exactnum::mod_p(&c.to_integer(), p))
        .collect();
    FqPoly::from_fp_coeffs(&field, &coeffs)
}

#[allow(clippy::too_many_arguments)]
fn explore(
    mu: &InductiveValuation,
    psi: &FqPoly,
    mult: usize,
    slopes: Vec<Rational>,
    depth: usize,
    f: &RationalPoly,
    seed: u64,
    leaves: &mut Vec<ExtensionLeaf>,
) -> Result<()> {
    if mult == 1 {
        leaves.push(make_leaf(mu, psi, slopes)?);
        return Ok(());
    }
    if depth > DEPTH_CAP {
        return Err(Error::DepthCapExceeded(DEPTH_CAP));
    }
    let phi = if psi.deg() == 1 && psi.coeff(0).is_zero() {
        mu.last_key()
    } else {
        lift(mu, psi)?
    };
    let mut progressed = false;
    if f.div_rem(&phi).1.is_zero() {
        let full = mu.augment(phi.clone(), Value::Infinity)?;
        let mut leaf = make_leaf(mu, psi, slopes.clone())?;
        leaf.chain = MLVChain::compress(&full)?;
        leaves.push(leaf);
        progressed = true;
    }
    let vphi = mu.eval(&phi)?;
    let polygon = newton_polygon(mu, &phi, f)?;
    for side in &polygon.sides {
        let gamma = -&side.slope;
        if Value::Finite(gamma.clone()) <= vphi {
            continue;
        }
        progressed = true;
        let higher = mu.augment(phi.clone(), Value::Finite(gamma.clone()))?;
        let rd = residual(&higher, f)?;
        let mut deeper = slopes.clone();
        deeper.push(gamma);
        for (next, k) in fq_factor(&rd.poly, seed) {
            explore(&higher, &next, k, deeper.clone(), depth + 1, f, seed, leaves)?;
        }
    }
    if !progressed {
        return Err(Error::Internal("polygon refinement stalled".into()));
    }
    Ok(())
}

fn make_leaf(
    mu: &InductiveValuation,
    psi: &FqPoly,
    slopes: Vec<Rational>,
) -> Result<ExtensionLeaf> {
    let e = mu.value_group().index_over(&ValueGroup::integers());
    let ladder = Ladder::new(mu)?;
    let f = (ladder.residue_field().degree() * psi.deg()) as u64;
    Ok(ExtensionLeaf {
        chain: MLVChain::compress(mu)?,
        terminal: psi.clone(),
        e,
        f,
        slope_history: slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn poly(s: &str) -> RationalPoly {
        s.parse().unwrap()
    }

    fn summary(report: &ExtensionReport) -> Vec<(u64, u64, Vec<Rational>, String)> {
        report
            .leaves
            .iter()
            .map(|l| {
                (
                    l.e,
                    l.f,
                    l.slope_history.clone(),
                    l.terminal.to_string(),
                )
            })
            .collect()
    }

    #[test]
    fn split_quadratic_over_5() {
        let report = extensions(&poly("x^2+1"), 5, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(1, 1), (1, 1)]);
        assert_eq!(
            summary(&report),
            vec![
                (1, 1, vec![], "y + 2".to_string()),
                (1, 1, vec![], "y + 3".to_string()),
            ]
        );
    }

    #[test]
    fn ramified_quadratic_over_2() {
        let report = extensions(&poly("x^2+1"), 2, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(2, 1)]);
        let leaf = &report.leaves[0];
        assert_eq!(leaf.slope_history, vec![rat(1, 2)]);
        match leaf.exact_chain(&poly("x^2+1")).unwrap() {
            ExactOutcome::Chain(chain) => {
                let inv = chain.invariants().unwrap();
                assert_eq!(inv.e, vec![2]);
                assert_eq!(inv.f, vec![1]);
                assert!(chain.valuation().last_gamma().is_infinite());
            }
            other => panic!("expected an exact chain, got {:?}", other),
        }
    }

    #[test]
    fn inert_quadratic_over_7() {
        let report = extensions(&poly("x^2+1"), 7, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(1, 2)]);
        assert_eq!(report.leaves[0].terminal.to_string(), "y^2 + 1");
        match report.leaves[0].exact_chain(&poly("x^2+1")).unwrap() {
            ExactOutcome::Chain(chain) => {
                assert_eq!(
                    chain.defect_ledger().unwrap(),
                    crate::chain::DefectLedger { e: 1, f: 2, d: 1 }
                );
            }
            other => panic!("expected an exact chain, got {:?}", other),
        }
    }

    #[test]
    fn ramified_sqrt_seven() {
        let report = extensions(&poly("x^2-7"), 7, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(2, 1)]);
        assert_eq!(report.leaves[0].slope_history, vec![rat(1, 2)]);
        match report.leaves[0].exact_chain(&poly("x^2-7")).unwrap() {
            ExactOutcome::Chain(chain) => {
                assert_eq!(
                    chain.defect_ledger().unwrap(),
                    crate::chain::DefectLedger { e: 2, f: 1, d: 1 }
                );
            }
            other => panic!("expected an exact chain, got {:?}", other),
        }
    }

    #[test]
    fn split_sqrt_two_over_7_seeds_refinement() {
        let f = poly("x^2-2");
        let report = extensions(&f, 7, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(1, 1), (1, 1)]);
        assert_eq!(report.leaves[0].terminal.to_string(), "y + 3");
        assert_eq!(report.leaves[1].terminal.to_string(), "y + 4");
        match report.leaves[1].exact_chain(&f).unwrap() {
            ExactOutcome::ApproximantOnly { refinement, .. } => {
                let stream = refinement.expect("a simple root seeds a stream");
                assert_eq!(stream.digit_prefix(3).unwrap(), vec![3, 1, 2]);
                let (chi, beta) = stream.entry(1).unwrap();
                assert_eq!(chi, poly("x-3"));
                assert_eq!(beta, Value::Finite(rat(1, 1)));
            }
            other => panic!("expected an approximant, got {:?}", other),
        }
    }

    #[test]
    fn totally_ramified_cubic() {
        let report = extensions(&poly("x^3-2"), 2, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(3, 1)]);
        assert_eq!(report.leaves[0].slope_history, vec![rat(1, 3)]);
    }

    #[test]
    fn mixed_cubic_over_2() {
        let report = extensions(&poly("x^3-x^2+x-1"), 2, 0).unwrap();
        assert_eq!(
            summary(&report)
                .iter()
                .map(|(e, f, s, _)| (*e, *f, s.clone()))
                .collect::<Vec<_>>(),
            vec![
                (2, 1, vec![rat(1, 2)]),
                (1, 1, vec![rat(1, 1)]),
            ]
        );
    }

    #[test]
    fn exact_divisor_becomes_a_settled_leaf() {
        let f = poly("x^2-4x");
        let report = extensions(&f, 2, 0).unwrap();
        assert_eq!(report.local_degrees(), vec![(1, 1), (1, 1)]);
        let settled = &report.leaves[0];
        assert_eq!(settled.terminal.to_string(), "y");
        assert!(settled.slope_history.is_empty());
        assert!(settled.chain.valuation().last_gamma().is_infinite());
        match settled.exact_chain(&f).unwrap() {
            ExactOutcome::Chain(chain) => {
                assert_eq!(chain.valuation().depth(), 0);
            }
            other => panic!("expected an exact chain, got {:?}", other),
        }
        assert_eq!(report.leaves[1].slope_history, vec![rat(2, 1)]);
    }

    #[test]
    fn rejects_improper_inputs() {
        let err = |f: &RationalPoly, p: u64| extensions(f, p, 0).unwrap_err();
        assert_eq!(err(&poly("2x^2+1"), 5), Error::NotMonic);
        assert_eq!(err(&poly("x^2-1/2"), 5), Error::NonIntegralCoefficients);
        assert_eq!(err(&poly("x^2"), 5), Error::NotSquarefree);
        assert_eq!(err(&poly("x^2+1"), 6), Error::NotPrime(6));
        assert_eq!(err(&RationalPoly::zero(), 5), Error::ZeroPolynomial);
    }

    #[test]
    fn leaves_do_not_depend_on_the_seed() {
        let f = poly("x^6+x+3");
        let a = extensions(&f, 5, 0).unwrap();
        let b = extensions(&f, 5, 12345).unwrap();
        assert_eq!(summary(&a), summary(&b));
        let total: u64 = a.leaves.iter().map(|l| l.local_degree()).sum();
        assert_eq!(total, 6);
    }
}
