//! Validated MacLane chains and the numerical data attached to them.
//!
//! [`InductiveValuation`] is deliberately permissive: its constructors only
//! enforce the admissibility conditions needed for each single augmentation.
//! [`MLVChain`] layers the global chain conditions on top (key degrees grow,
//! every step polynomial is a key of the node below, limit families are not
//! absorbed) and exposes the derived data of a valid chain: ramification and
//! residual degree ladders, the defect ledger, and a presentation of the
//! graded algebra.

use crate::error::{Error, Result};
use crate::exactnum::{Value, ValueGroup};
use crate::ffield::FqPoly;
use crate::keypoly::{equiv, is_key, Ladder};
use crate::limitfam::ContinuousFamily;
use crate::valuation::InductiveValuation;

/// An inductive valuation whose augmentation steps satisfy the chain
/// conditions, so its numerical invariants are well defined.
#[derive(Debug, Clone)]
pub struct MLVChain {
    mu: InductiveValuation,
}

/// Per-node and per-step numerical data of a chain.
///
/// `m`, `gamma`, and `groups` have one entry per node; `e`, `f`, and `d`
/// have one entry per step, attached to the node below that step.  The
/// degree identity `m[n+1] = e[n] * f[n] * d[n] * m[n]` is checked at every
/// step and a violation is reported as an error rather than silently kept.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainInvariants {
    pub m: Vec<usize>,
    pub gamma: Vec<Value>,
    pub groups: Vec<ValueGroup>,
    pub e: Vec<u64>,
    pub f: Vec<usize>,
    pub d: Vec<u64>,
    pub kappa_min_polys: Vec<FqPoly>,
    pub kappa_degrees: Vec<usize>,
}

/// Ramification, residual degree, and defect totals of a chain whose final
/// value is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectLedger {
    pub e: u64,
    pub f: u64,
    pub d: u64,
}

/// One relation `x_n^power = unit * z_n` in the graded algebra, where `z_n`
/// is a root of `min_poly` over the residue field of the node below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRelation {
    pub node: usize,
    pub power: u64,
    pub unit: String,
    pub root: String,
    pub min_poly: String,
}

/// Generators and relations of the graded algebra of a chain.
///
/// There is one algebraic generator per step, named `x_n` with degree
/// `gamma[n]`; when the final value is finite there is one extra
/// transcendental generator on top.  The residue field tower is recorded by
/// the minimal polynomial adjoined at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    pub prime: u64,
    pub generators: Vec<(String, Value)>,
    pub relations: Vec<GradedRelation>,
    pub kappa_tower: Vec<String>,
    pub kappa_degrees: Vec<usize>,
    pub transcendental: Option<(String, Value)>,
}

impl MLVChain {
    /// Checks the chain conditions on `mu` as given, without rewriting it.
    ///
    /// An ordinary step must use a key polynomial of the node below, with
    /// strictly increasing degree from the second step on, and a value above
    /// the one already assigned.  A limit step must carry a family whose
    /// entries have the same degree as the key below, start with a key that
    /// is not equivalent to it, and take increasing values.  Only the final
    /// value may be infinite.
    pub fn validate(mu: &InductiveValuation) -> Result<MLVChain> {
        let r = mu.depth();
        for n in 1..=r {
            if n < r && mu.gamma_at(n).is_infinite() {
                return Err(Error::MlvViolation {
                    step: n,
                    condition: "only the final value may be infinite".into(),
                });
            }
            let below = mu.prefix(n);
            let step = &mu.steps()[n - 1];
            if let Some(stream) = step.stream() {
                validate_limit_step(&below, stream, mu, n)?;
            } else {
                if n >= 2 && mu.degree_at(n) <= mu.degree_at(n - 1) {
                    return Err(Error::MlvViolation {
                        step: n,
                        condition: "key degree does not increase".into(),
                    });
                }
                let phi = mu.key_at(n);
                if !is_key(&below, &phi)? {
                    return Err(Error::MlvViolation {
                        step: n,
                        condition: "step polynomial is not a key of the node below".into(),
                    });
                }
                if *mu.gamma_at(n) <= below.eval(&phi)? {
                    return Err(Error::MlvViolation {
                        step: n,
                        condition: "augmentation value does not exceed the value below".into(),
                    });
                }
            }
        }
        Ok(MLVChain { mu: mu.clone() })
    }

    /// Rewrites `mu` into canonical form and validates the result.
    ///
    /// The rewrite collapses redundant steps (a linear first key, two
    /// consecutive keys of the same degree, a family absorbing the node
    /// below it) and pulls a concrete approximant out of a family whose
    /// degree outgrew the node below, so chains that merely describe a
    /// valid valuation in a redundant way are accepted here.
    pub fn compress(mu: &InductiveValuation) -> Result<MLVChain> {
        let c = mu.try_compress()?;
        MLVChain::validate(&c)
    }

    pub fn valuation(&self) -> &InductiveValuation {
        &self.mu
    }

    pub fn into_valuation(self) -> InductiveValuation {
        self.mu
    }

    /// Numerical invariants of the canonical form of the chain.
    pub fn invariants(&self) -> Result<ChainInvariants> {
        let c = self.mu.try_compress()?;
        let r = c.depth();
        let limit_last = r > 0 && c.steps()[r - 1].is_limit();
        let ladder_chain = if limit_last { c.prefix(r) } else { c.clone() };
        let ladder = Ladder::new(&ladder_chain)?;

        let m: Vec<usize> = (0..=r).map(|n| c.degree_at(n)).collect();
        let gamma: Vec<Value> = (0..=r).map(|n| c.gamma_at(n).clone()).collect();
        let mut groups: Vec<ValueGroup> = (0..=ladder.depth())
            .map(|n| ladder.node_group(n).clone())
            .collect();
        if limit_last {
            let top = match c.gamma_at(r).as_finite() {
                Some(g) => groups[r - 1].join(g),
                None => groups[r - 1].clone(),
            };
            groups.push(top);
        }

        let mut e = Vec::with_capacity(r);
        let mut f = Vec::with_capacity(r);
        let mut d = Vec::with_capacity(r);
        let mut kappa_min_polys = Vec::with_capacity(r);
        for n in 0..r {
            let en = ladder.group_index(n);
            let (residual, dn, big) = if let Some(stream) = c.steps()[n].stream() {
                let (chi1, _) = stream.entry(1)?;
                let rd = ladder.residual_at(n, &chi1)?;
                if rd.poly.deg() != 1 {
                    return Err(Error::MlvViolation {
                        step: n + 1,
                        condition: "family representative has a nonlinear residual".into(),
                    });
                }
                if m[n + 1] % m[n] != 0 {
                    return Err(Error::MlvViolation {
                        step: n + 1,
                        condition: "node degree identity fails".into(),
                    });
                }
                (rd.poly, (m[n + 1] / m[n]) as u64, stream.stable_degree())
            } else {
                (ladder.min_polys()[n].clone(), 1, m[n + 1])
            };
            let fn_ = residual.deg();
            if m[n + 1] != (en as usize) * fn_ * (dn as usize) * m[n] {
                return Err(Error::MlvViolation {
                    step: n + 1,
                    condition: "node degree identity fails".into(),
                });
            }
            let em = (en as usize) * m[n];
            if big % em != 0 || big / em != fn_ {
                return Err(Error::MlvViolation {
                    step: n + 1,
                    condition: "residual degree cross-check fails".into(),
                });
            }
            e.push(en);
            f.push(fn_);
            d.push(dn);
            kappa_min_polys.push(residual);
        }

        let mut kappa_degrees = Vec::with_capacity(r + 1);
        let mut acc = 1usize;
        kappa_degrees.push(acc);
        for rp in &kappa_min_polys {
            acc *= rp.deg();
            kappa_degrees.push(acc);
        }

        Ok(ChainInvariants {
            m,
            gamma,
            groups,
            e,
            f,
            d,
            kappa_min_polys,
            kappa_degrees,
        })
    }

    /// Total ramification, residual degree, and defect of a chain whose
    /// final value is infinite.  Their product equals the degree of the
    /// final key.
    pub fn defect_ledger(&self) -> Result<DefectLedger> {
        let c = self.mu.try_compress()?;
        if !c.last_gamma().is_infinite() {
            return Err(Error::SupportRequired);
        }
        let inv = self.invariants()?;
        let e: u64 = inv.e.iter().product();
        let f: u64 = inv.f.iter().map(|&x| x as u64).product();
        let d: u64 = inv.d.iter().product();
        if e * f * d != c.deg() as u64 {
            return Err(Error::Internal(
                "defect factorization does not match the key degree".into(),
            ));
        }
        Ok(DefectLedger { e, f, d })
    }

    /// Presentation of the graded algebra of the canonical form.
    pub fn graded_presentation(&self) -> Result<GradedPresentation> {
        let c = self.mu.try_compress()?;
        let r = c.depth();
        let limit_last = r > 0 && c.steps()[r - 1].is_limit();
        let ladder_chain = if limit_last { c.prefix(r) } else { c.clone() };
        let ladder = Ladder::new(&ladder_chain)?;

        let mut generators = Vec::with_capacity(r);
        let mut relations = Vec::with_capacity(r);
        let mut kappa_tower = Vec::with_capacity(r);
        let mut kappa_degrees = Vec::with_capacity(r + 1);
        kappa_degrees.push(1usize);
        for n in 0..r {
            generators.push((format!("x_{}", n), c.gamma_at(n).clone()));
            let (p_exp, t) = ladder.relation_unit(n)?;
            let unit = render_monomial(c.p(), p_exp, &t);
            let (root, min_poly) = if let Some(stream) = c.steps()[n].stream() {
                let (chi1, _) = stream.entry(1)?;
                let rd = ladder.residual_at(n, &chi1)?;
                if rd.poly.deg() != 1 {
                    return Err(Error::MlvViolation {
                        step: n + 1,
                        condition: "family representative has a nonlinear residual".into(),
                    });
                }
                let root = -&rd.poly.coeff(0);
                (root.to_string(), rd.poly)
            } else {
                (
                    ladder.z_roots()[n].to_string(),
                    ladder.min_polys()[n].clone(),
                )
            };
            kappa_degrees.push(kappa_degrees[n] * min_poly.deg());
            relations.push(GradedRelation {
                node: n,
                power: ladder.group_index(n),
                unit,
                root,
                min_poly: min_poly.to_string(),
            });
            kappa_tower.push(min_poly.to_string());
        }

        let transcendental = if c.gamma_at(r).is_infinite() {
            None
        } else {
            Some((format!("q_{}", r), c.gamma_at(r).clone()))
        };

        Ok(GradedPresentation {
            prime: c.p(),
            generators,
            relations,
            kappa_tower,
            kappa_degrees,
            transcendental,
        })
    }
}

fn validate_limit_step(
    below: &InductiveValuation,
    stream: &crate::limitfam::FamilyStream,
    mu: &InductiveValuation,
    n: usize,
) -> Result<()> {
    let md = stream.stable_degree();
    if md != below.deg() {
        return Err(Error::MlvViolation {
            step: n,
            condition: "family stable degree does not match the key degree below".into(),
        });
    }
    let probe = match stream.available() {
        Some(k) => k.min(3),
        None => 3,
    };
    if probe == 0 {
        return Err(Error::MlvViolation {
            step: n,
            condition: "family stream is exhausted".into(),
        });
    }
    let mut prev: Option<Value> = None;
    for i in 1..=probe {
        let (chi, beta) = stream.entry(i)?;
        if !chi.is_monic() {
            return Err(Error::MlvViolation {
                step: n,
                condition: "family entry is not monic".into(),
            });
        }
        if chi.deg() != md {
            return Err(Error::MlvViolation {
                step: n,
                condition: "family entries must share one degree".into(),
            });
        }
        if let Some(ref p) = prev {
            if beta <= *p {
                return Err(Error::MlvViolation {
                    step: n,
                    condition: "family values must increase".into(),
                });
            }
        }
        if beta <= below.eval(&chi)? {
            return Err(Error::MlvViolation {
                step: n,
                condition: "family value does not exceed the value below".into(),
            });
        }
        if i == 1 {
            if !is_key(below, &chi)? {
                return Err(Error::MlvViolation {
                    step: n,
                    condition: "first family entry is not a key of the node below".into(),
                });
            }
            if equiv(below, &below.last_key(), &chi)? {
                return Err(Error::MlvViolation {
                    step: n,
                    condition: "family is absorbed by the key below".into(),
                });
            }
        }
        prev = Some(beta);
    }
    if mu.degree_at(n) <= md {
        return Err(Error::MlvViolation {
            step: n,
            condition: "key degree does not exceed the family degree".into(),
        });
    }
    let fam = ContinuousFamily::new(below.clone(), stream.clone());
    if *mu.gamma_at(n) <= fam.rho(1, &mu.key_at(n))? {
        return Err(Error::MlvViolation {
            step: n,
            condition: "augmentation value does not exceed the value along the family".into(),
        });
    }
    Ok(())
}

fn render_monomial(p: u64, p_exp: i64, t: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    if p_exp == 1 {
        parts.push(format!("{}", p));
    } else if p_exp != 0 {
        parts.push(format!("{}^{}", p, p_exp));
    }
    for (i, &ti) in t.iter().enumerate() {
        if ti == 1 {
            parts.push(format!("x_{}", i));
        } else if ti != 0 {
            parts.push(format!("x_{}^{}", i, ti));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int, RationalPoly};
    use crate::limitfam::FamilyStream;

    fn poly(s: &str) -> RationalPoly {
        s.parse().unwrap()
    }

    fn fin(n: i64, d: i64) -> Value {
        Value::Finite(rat(n, d))
    }

    fn half_gauss7() -> InductiveValuation {
        InductiveValuation::depth_zero(7, rat_int(0), fin(1, 2)).unwrap()
    }

    fn sqrt7_chain() -> InductiveValuation {
        half_gauss7()
            .augment(poly("x^2-7"), Value::Infinity)
            .unwrap()
    }

    fn sqrt2_chain() -> InductiveValuation {
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        InductiveValuation::gauss(7)
            .unwrap()
            .augment_limit(stream, poly("x^2-2"), Value::Infinity)
            .unwrap()
    }

    fn inert_chain(gamma: Value) -> InductiveValuation {
        InductiveValuation::gauss(2)
            .unwrap()
            .augment(poly("x^2+x+1"), gamma)
            .unwrap()
    }

    #[test]
    fn validate_accepts_ordinary_chain() {
        let chain = MLVChain::validate(&sqrt7_chain()).unwrap();
        assert_eq!(chain.valuation().depth(), 1);
    }

    #[test]
    fn validate_accepts_depth_zero() {
        let mu =
            InductiveValuation::depth_zero(5, rat(1, 3), fin(2, 1)).unwrap();
        assert!(MLVChain::validate(&mu).is_ok());
    }

    #[test]
    fn validate_flags_degree_stall() {
        let mu = InductiveValuation::gauss(7)
            .unwrap()
            .augment(poly("x-3"), fin(1, 1))
            .unwrap()
            .augment(poly("x-10"), fin(2, 1))
            .unwrap();
        match MLVChain::validate(&mu) {
            Err(Error::MlvViolation { step, condition }) => {
                assert_eq!(step, 2);
                assert!(condition.contains("degree"));
            }
            other => panic!("expected a chain violation, got {:?}", other),
        }
    }

    #[test]
    fn validate_flags_non_key_step() {
        let mu = InductiveValuation::gauss(5)
            .unwrap()
            .augment(poly("x^2+1"), fin(1, 1))
            .unwrap();
        match MLVChain::validate(&mu) {
            Err(Error::MlvViolation { step, condition }) => {
                assert_eq!(step, 1);
                assert!(condition.contains("not a key"));
            }
            other => panic!("expected a chain violation, got {:?}", other),
        }
    }

    #[test]
    fn validate_accepts_limit_chain() {
        let chain = MLVChain::validate(&sqrt2_chain()).unwrap();
        assert!(chain.valuation().has_limit_step());
    }

    #[test]
    fn validate_flags_absorbed_family() {
        let base =
            InductiveValuation::depth_zero(7, rat(3, 1), fin(1, 2)).unwrap();
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        let mu = base
            .augment_limit(stream, poly("x^2-2"), Value::Infinity)
            .unwrap();
        match MLVChain::validate(&mu) {
            Err(Error::MlvViolation { step, condition }) => {
                assert_eq!(step, 1);
                assert!(condition.contains("absorbed"));
            }
            other => panic!("expected a chain violation, got {:?}", other),
        }
    }

    #[test]
    fn validate_flags_family_degree_mismatch() {
        let entries = vec![
            (poly("x^2-2"), fin(1, 1)),
            (poly("x^2-58"), fin(2, 1)),
        ];
        let stream = FamilyStream::explicit(entries).unwrap();
        let mu = InductiveValuation::gauss(7)
            .unwrap()
            .augment_limit(stream, poly("x^4+2"), Value::Infinity)
            .unwrap();
        match MLVChain::validate(&mu) {
            Err(Error::MlvViolation { condition, .. }) => {
                assert!(condition.contains("stable degree"));
            }
            other => panic!("expected a chain violation, got {:?}", other),
        }
    }

    #[test]
    fn validate_flags_decreasing_family_values() {
        let entries = vec![(poly("x-3"), fin(2, 1)), (poly("x-10"), fin(1, 1))];
        let stream = FamilyStream::explicit(entries).unwrap();
        let mu = InductiveValuation::gauss(7)
            .unwrap()
            .augment_limit(stream, poly("x^2-2"), Value::Infinity)
            .unwrap();
        match MLVChain::validate(&mu) {
            Err(Error::MlvViolation { condition, .. }) => {
                assert!(condition.contains("increase"));
            }
            other => panic!("expected a chain violation, got {:?}", other),
        }
    }

    #[test]
    fn compress_collapses_linear_first_key() {
        let mu = InductiveValuation::gauss(2)
            .unwrap()
            .augment(poly("x"), fin(1, 2))
            .unwrap();
        let chain = MLVChain::compress(&mu).unwrap();
        assert_eq!(chain.valuation().depth(), 0);
        assert_eq!(*chain.valuation().last_gamma(), fin(1, 2));
    }

    #[test]
    fn compress_is_identity_on_valid_chains() {
        let mu = sqrt2_chain();
        let chain = MLVChain::compress(&mu).unwrap();
        assert_eq!(chain.valuation().depth(), 1);
        let stream = chain.valuation().steps()[0].stream().unwrap();
        let (chi, beta) = stream.entry(1).unwrap();
        assert_eq!(chi, poly("x-3"));
        assert_eq!(beta, fin(1, 1));
    }

    #[test]
    fn compress_rebases_absorbed_family() {
        let base =
            InductiveValuation::depth_zero(7, rat(3, 1), fin(1, 2)).unwrap();
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        let mu = base
            .augment_limit(stream, poly("x^2-2"), Value::Infinity)
            .unwrap();
        assert!(MLVChain::validate(&mu).is_err());
        let chain = MLVChain::compress(&mu).unwrap();
        let c = chain.valuation();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.depth_zero_data().a, rat(3, 1));
        assert_eq!(c.depth_zero_data().gamma, fin(1, 1));
        let stream = c.steps()[0].stream().unwrap();
        let (chi, beta) = stream.entry(1).unwrap();
        assert_eq!(chi, poly("x-10"));
        assert_eq!(beta, fin(2, 1));
    }

    #[test]
    fn invariants_of_ramified_quadratic() {
        let inv = MLVChain::validate(&sqrt7_chain())
            .unwrap()
            .invariants()
            .unwrap();
        assert_eq!(inv.m, vec![1, 2]);
        assert_eq!(inv.gamma, vec![fin(1, 2), Value::Infinity]);
        assert_eq!(inv.e, vec![2]);
        assert_eq!(inv.f, vec![1]);
        assert_eq!(inv.d, vec![1]);
        assert_eq!(inv.kappa_degrees, vec![1, 1]);
        assert!(inv.groups[0].contains(&rat(1, 2)));
        assert!(inv.groups[1].contains(&rat(1, 2)));
    }

    #[test]
    fn invariants_of_inert_quadratic() {
        let inv = MLVChain::validate(&inert_chain(fin(1, 1)))
            .unwrap()
            .invariants()
            .unwrap();
        assert_eq!(inv.m, vec![1, 2]);
        assert_eq!(inv.e, vec![1]);
        assert_eq!(inv.f, vec![2]);
        assert_eq!(inv.d, vec![1]);
        assert_eq!(inv.kappa_degrees, vec![1, 2]);
    }

    #[test]
    fn invariants_of_limit_chain() {
        let inv = MLVChain::validate(&sqrt2_chain())
            .unwrap()
            .invariants()
            .unwrap();
        assert_eq!(inv.m, vec![1, 2]);
        assert_eq!(inv.e, vec![1]);
        assert_eq!(inv.f, vec![1]);
        assert_eq!(inv.d, vec![2]);
        assert_eq!(inv.kappa_degrees, vec![1, 1]);
    }

    #[test]
    fn invariants_of_depth_zero() {
        let mu =
            InductiveValuation::depth_zero(5, rat_int(0), fin(1, 3))
                .unwrap();
        let inv = MLVChain::validate(&mu).unwrap().invariants().unwrap();
        assert_eq!(inv.m, vec![1]);
        assert!(inv.e.is_empty());
        assert!(inv.f.is_empty());
        assert!(inv.d.is_empty());
        assert!(inv.groups[0].contains(&rat(1, 3)));
        assert_eq!(inv.kappa_degrees, vec![1]);
    }

    #[test]
    fn defect_ledger_examples() {
        let ramified = MLVChain::validate(&sqrt7_chain()).unwrap();
        assert_eq!(
            ramified.defect_ledger().unwrap(),
            DefectLedger { e: 2, f: 1, d: 1 }
        );

        let limit = MLVChain::validate(&sqrt2_chain()).unwrap();
        assert_eq!(
            limit.defect_ledger().unwrap(),
            DefectLedger { e: 1, f: 1, d: 2 }
        );

        let inert = MLVChain::validate(&inert_chain(Value::Infinity)).unwrap();
        assert_eq!(
            inert.defect_ledger().unwrap(),
            DefectLedger { e: 1, f: 2, d: 1 }
        );

        let finite = MLVChain::validate(&inert_chain(fin(1, 1))).unwrap();
        assert_eq!(finite.defect_ledger(), Err(Error::SupportRequired));

        let point =
            InductiveValuation::depth_zero(7, rat(3, 1), Value::Infinity).unwrap();
        let point = MLVChain::validate(&point).unwrap();
        assert_eq!(
            point.defect_ledger().unwrap(),
            DefectLedger { e: 1, f: 1, d: 1 }
        );
    }

    #[test]
    fn graded_of_ramified_quadratic() {
        let g = MLVChain::validate(&sqrt7_chain())
            .unwrap()
            .graded_presentation()
            .unwrap();
        assert_eq!(g.prime, 7);
        assert_eq!(g.generators, vec![("x_0".to_string(), fin(1, 2))]);
        assert_eq!(
            g.relations,
            vec![GradedRelation {
                node: 0,
                power: 2,
                unit: "7".into(),
                root: "1".into(),
                min_poly: "y + 6".into(),
            }]
        );
        assert_eq!(g.kappa_tower, vec!["y + 6".to_string()]);
        assert_eq!(g.kappa_degrees, vec![1, 1]);
        assert_eq!(g.transcendental, None);
    }

    #[test]
    fn graded_of_inert_quadratic() {
        let g = MLVChain::validate(&inert_chain(fin(1, 1)))
            .unwrap()
            .graded_presentation()
            .unwrap();
        assert_eq!(g.generators, vec![("x_0".to_string(), fin(0, 1))]);
        assert_eq!(
            g.relations,
            vec![GradedRelation {
                node: 0,
                power: 1,
                unit: "1".into(),
                root: "g".into(),
                min_poly: "y^2 + y + 1".into(),
            }]
        );
        assert_eq!(g.kappa_degrees, vec![1, 2]);
        assert_eq!(g.transcendental, Some(("q_1".to_string(), fin(1, 1))));
    }

    #[test]
    fn graded_of_depth_zero() {
        let mu =
            InductiveValuation::depth_zero(5, rat_int(0), fin(1, 3))
                .unwrap();
        let g = MLVChain::validate(&mu)
            .unwrap()
            .graded_presentation()
            .unwrap();
        assert!(g.generators.is_empty());
        assert!(g.relations.is_empty());
        assert_eq!(g.transcendental, Some(("q_0".to_string(), fin(1, 3))));
    }

    #[test]
    fn graded_of_limit_chain() {
        let g = MLVChain::validate(&sqrt2_chain())
            .unwrap()
            .graded_presentation()
            .unwrap();
        assert_eq!(g.generators, vec![("x_0".to_string(), fin(0, 1))]);
        assert_eq!(
            g.relations,
            vec![GradedRelation {
                node: 0,
                power: 1,
                unit: "1".into(),
                root: "3".into(),
                min_poly: "y + 4".into(),
            }]
        );
        assert_eq!(g.transcendental, None);
    }

    #[test]
    fn graded_presentation_is_deterministic() {
        let a = MLVChain::validate(&sqrt7_chain())
            .unwrap()
            .graded_presentation()
            .unwrap();
        let b = MLVChain::validate(&sqrt7_chain())
            .unwrap()
            .graded_presentation()
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(format!("{:?}", a), format!("{:?}", b));
    }
}
