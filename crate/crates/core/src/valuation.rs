//! Inductive valuations on Q[x].
//!
//! A valuation is stored as a depth-zero base (center and value of `x - a`)
//! followed by a list of augmentation steps. Each step either augments by a
//! key polynomial and a larger value (ordinary) or augments through a
//! continuous family of approximants (limit). Evaluation recurses through
//! key-polynomial expansions down to p-adic values of rationals.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{padic_value, rat_int, Rational, RationalPoly, Value, ValueGroup};
use crate::limitfam::{self, ContinuousFamily, FamilyStream, StabilityReport};

/// The valued base field: Q with the p-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuedBase {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ValuedBase {
    pub fn new(p: u64) -> Result<ValuedBase> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ValuedBase { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// The depth-zero data: center `a` and the value assigned to `x - a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthZero {
    pub a: Rational,
    pub gamma: Value,
}

/// How a step extends its predecessor.
#[derive(Debug, Clone)]
pub enum StepKind {
    Ordinary,
    Limit(FamilyStream),
}

/// One augmentation step: the key polynomial, its new value, and the kind.
#[derive(Debug, Clone)]
pub struct AugStep {
    pub phi: RationalPoly,
    pub gamma: Value,
    pub kind: StepKind,
}

impl AugStep {
    pub fn is_limit(&self) -> bool {
        matches!(self.kind, StepKind::Limit(_))
    }

    pub fn stream(&self) -> Option<&FamilyStream> {
        match &self.kind {
            StepKind::Limit(s) => Some(s),
            StepKind::Ordinary => None,
        }
    }
}

/// An inductive valuation: depth-zero base plus augmentation steps.
#[derive(Debug, Clone)]
pub struct InductiveValuation {
    base: ValuedBase,
    depth_zero: DepthZero,
    steps: Vec<AugStep>,
}

impl InductiveValuation {
    /// The depth-zero valuation sending `x - a` to `gamma`.
    pub fn depth_zero(p: u64, a: Rational, gamma: Value) -> Result<InductiveValuation> {
        Ok(InductiveValuation {
            base: ValuedBase::new(p)?,
            depth_zero: DepthZero { a, gamma },
            steps: Vec::new(),
        })
    }

    /// The Gauss valuation: center 0, value 0.
    pub fn gauss(p: u64) -> Result<InductiveValuation> {
        Self::depth_zero(p, Rational::from_integer(0.into()), Value::zero())
    }

    /// Ordinary augmentation by `(phi, gamma)`. Checks that `phi` is monic
    /// and that `gamma` strictly exceeds the current value of `phi`; the
    /// full key-polynomial condition is checked by chain validation.
    pub fn augment(&self, phi: RationalPoly, gamma: Value) -> Result<InductiveValuation> {
        if phi.is_zero() || !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.last_gamma().is_infinite() {
            return Err(Error::NotNested(
                "cannot augment past an infinite value".into(),
            ));
        }
        let prev = self.eval(&phi)?;
        if gamma <= prev {
            return Err(Error::NotNested(format!(
                "new value {} does not exceed current value {} of the key",
                gamma, prev
            )));
        }
        let mut next = self.clone();
        next.steps.push(AugStep {
            phi,
            gamma,
            kind: StepKind::Ordinary,
        });
        Ok(next)
    }

    /// Limit augmentation through `stream` by `(phi, gamma)`. Checks that
    /// `phi` is monic of degree above the stable degree and that `gamma`
    /// exceeds the first approximant's value of `phi`.
    pub fn augment_limit(
        &self,
        stream: FamilyStream,
        phi: RationalPoly,
        gamma: Value,
    ) -> Result<InductiveValuation> {
        if phi.is_zero() || !phi.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.last_gamma().is_infinite() {
            return Err(Error::NotNested(
                "cannot augment past an infinite value".into(),
            ));
        }
        if phi.deg() <= stream.stable_degree() {
            return Err(Error::NotNested(format!(
                "limit key degree {} does not exceed the stable degree {}",
                phi.deg(),
                stream.stable_degree()
            )));
        }
        let family = ContinuousFamily::new(self.clone(), stream.clone());
        let rho1 = family.approximant(1)?.eval(&phi)?;
        if gamma <= rho1 {
            return Err(Error::NotNested(format!(
                "new value {} does not exceed the first approximant value {}",
                gamma, rho1
            )));
        }
        let mut next = self.clone();
        next.steps.push(AugStep {
            phi,
            gamma,
            kind: StepKind::Limit(stream),
        });
        Ok(next)
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn base(&self) -> &ValuedBase {
        &self.base
    }

    pub fn depth_zero_data(&self) -> &DepthZero {
        &self.depth_zero
    }

    pub fn steps(&self) -> &[AugStep] {
        &self.steps
    }

    /// Number of augmentation steps (depth of the chain).
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Number of nodes, counting the depth-zero node.
    pub fn node_count(&self) -> usize {
        self.steps.len() + 1
    }

    /// The key polynomial attached to node `n` (node 0 is the depth-zero
    /// node with key `x - a`).
    pub fn key_at(&self, n: usize) -> RationalPoly {
        if n == 0 {
            RationalPoly::x_minus(&self.depth_zero.a)
        } else {
            self.steps[n - 1].phi.clone()
        }
    }

    /// The value attached to node `n`.
    pub fn gamma_at(&self, n: usize) -> &Value {
        if n == 0 {
            &self.depth_zero.gamma
        } else {
            &self.steps[n - 1].gamma
        }
    }

    /// Degree of the key at node `n`.
    pub fn degree_at(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.steps[n - 1].phi.deg()
        }
    }

    /// The last key polynomial of the chain.
    pub fn last_key(&self) -> RationalPoly {
        self.key_at(self.depth())
    }

    /// The last value of the chain.
    pub fn last_gamma(&self) -> &Value {
        self.gamma_at(self.depth())
    }

    /// Degree of the valuation: degree of its last key.
    pub fn deg(&self) -> usize {
        self.degree_at(self.depth())
    }

    pub fn has_limit_step(&self) -> bool {
        self.steps.iter().any(|s| s.is_limit())
    }

    pub fn is_purely_ordinary(&self) -> bool {
        !self.has_limit_step()
    }

    /// The subchain consisting of the first `nodes` nodes (1 keeps just the
    /// depth-zero node).
    pub fn prefix(&self, nodes: usize) -> InductiveValuation {
        assert!(nodes >= 1 && nodes <= self.node_count());
        InductiveValuation {
            base: self.base,
            depth_zero: self.depth_zero.clone(),
            steps: self.steps[..nodes - 1].to_vec(),
        }
    }

    pub(crate) fn with_depth_zero(
        &self,
        depth_zero: DepthZero,
        steps: Vec<AugStep>,
    ) -> InductiveValuation {
        InductiveValuation {
            base: self.base,
            depth_zero,
            steps,
        }
    }

    /// Evaluates the valuation on `f` (0 maps to infinity).
    pub fn eval(&self, f: &RationalPoly) -> Result<Value> {
        let mut ev = Evaluator::new(self, limitfam::DEFAULT_STABILITY_BUDGET);
        ev.value_at(self.depth(), f)
    }

    /// The value group, computed on the compressed chain; infinite values
    /// contribute nothing.
    pub fn value_group(&self) -> ValueGroup {
        let c = self.compress_raw();
        let mut g = ValueGroup::integers();
        for n in 0..c.node_count() {
            if let Value::Finite(r) = c.gamma_at(n) {
                g = g.join(r);
            }
        }
        g
    }

    /// Relative ramification index: index of the value group generated
    /// below the last finite value inside the full value group.
    pub fn e_rel(&self) -> Result<u64> {
        let c = self.compress_raw();
        if c.last_gamma().is_infinite() {
            return Err(Error::NotResiduallyTranscendental);
        }
        let mut below = ValueGroup::integers();
        for n in 0..c.node_count() - 1 {
            if let Value::Finite(r) = c.gamma_at(n) {
                below = below.join(r);
            }
        }
        let full = c.value_group();
        Ok(full.index_over(&below))
    }

    /// Structural equality of the valuations defined by two purely
    /// ordinary chains, decided stepwise after compression.
    pub fn equals(&self, other: &InductiveValuation) -> Result<bool> {
        if self.has_limit_step() || other.has_limit_step() {
            return Err(Error::LimitStepPresent);
        }
        if self.p() != other.p() {
            return Ok(false);
        }
        let a = self.compress_raw();
        let b = other.compress_raw();
        if a.depth() != b.depth() {
            return Ok(false);
        }
        // Depth-zero centers agree when v(a - b) is at least the common value.
        if a.depth_zero.gamma != b.depth_zero.gamma {
            return Ok(false);
        }
        let diff = &a.depth_zero.a - &b.depth_zero.a;
        if padic_value(&diff, a.p()) < a.depth_zero.gamma {
            return Ok(false);
        }
        for n in 1..a.node_count() {
            let sa = &a.steps[n - 1];
            let sb = &b.steps[n - 1];
            if sa.phi.deg() != sb.phi.deg() || sa.gamma != sb.gamma {
                return Ok(false);
            }
            let diff = &sb.phi - &sa.phi;
            let prev = a.prefix(n);
            if prev.eval(&diff)? < sa.gamma {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `chi` divides `f` in the graded sense: augmenting by `chi`
    /// raises the value of `f` if and only if it does.
    pub fn divides_probe(&self, chi: &RationalPoly, f: &RationalPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let v = self.eval(chi)?;
        let bumped = match &v {
            Value::Finite(r) => Value::Finite(r + rat_int(1)),
            Value::Infinity => return Err(Error::NotResiduallyTranscendental),
        };
        let probe = self.augment(chi.clone(), bumped)?;
        Ok(probe.eval(f)? > self.eval(f)?)
    }

    /// Rewrites the chain to canonical form: collapses same-degree ordinary
    /// steps, absorbs redundant steps below limit steps, and pulls family
    /// entries out when a limit step sits over a node of smaller degree.
    pub(crate) fn compress_raw(&self) -> InductiveValuation {
        self.try_compress()
            .expect("compression budget exhausted on adversarial family stream")
    }

    pub(crate) fn try_compress(&self) -> Result<InductiveValuation> {
        let mut dz = self.depth_zero.clone();
        let mut steps = self.steps.clone();
        let mut limit_rewrites = 0usize;
        'outer: loop {
            // A first ordinary step of degree one re-centers the depth-zero node.
            if let Some(first) = steps.first() {
                if !first.is_limit() && first.phi.deg() == 1 {
                    let b = -first.phi.coeff(0);
                    dz = DepthZero {
                        a: b,
                        gamma: first.gamma.clone(),
                    };
                    steps.remove(0);
                    continue;
                }
            }
            // Consecutive same-degree ordinary steps keep only the later pair.
            for i in 1..steps.len() {
                if !steps[i - 1].is_limit()
                    && !steps[i].is_limit()
                    && steps[i - 1].phi.deg() == steps[i].phi.deg()
                {
                    steps.remove(i - 1);
                    continue 'outer;
                }
            }
            // Limit-step rewrites.
            for i in 0..steps.len() {
                if !steps[i].is_limit() {
                    continue;
                }
                let stream = steps[i].stream().unwrap().clone();
                let m_f = stream.stable_degree();
                let below_deg = if i == 0 { 1 } else { steps[i - 1].phi.deg() };
                let current = self.with_depth_zero(dz.clone(), steps[..i].to_vec());
                if m_f == below_deg {
                    // Absorb the node below when its key is equivalent to the
                    // first family entry.
                    let (chi1, beta1) = stream.entry(1)?;
                    let key_below = current.key_at(i);
                    let diff = &chi1 - &key_below;
                    let val_key = current.eval(&key_below)?;
                    let equivalent =
                        current.eval(&diff)? > val_key && current.eval(&chi1)? == val_key;
                    if equivalent {
                        limit_rewrites += 1;
                        if limit_rewrites > 16 {
                            return Err(Error::MlvViolation {
                                step: i + 1,
                                condition: "family entries stay equivalent to the key below"
                                    .into(),
                            });
                        }
                        if i == 0 {
                            let b = -chi1.coeff(0);
                            dz = DepthZero { a: b, gamma: beta1 };
                            steps[0].kind = StepKind::Limit(stream.offset(1));
                        } else {
                            steps.remove(i - 1);
                        }
                        continue 'outer;
                    }
                } else if m_f > below_deg {
                    // Pull the first family entry out as an ordinary step.
                    limit_rewrites += 1;
                    if limit_rewrites > 16 {
                        return Err(Error::MlvViolation {
                            step: i + 1,
                            condition: "family stream does not reach the chain degree".into(),
                        });
                    }
                    let (chi1, beta1) = stream.entry(1)?;
                    steps.insert(
                        i,
                        AugStep {
                            phi: chi1,
                            gamma: beta1,
                            kind: StepKind::Ordinary,
                        },
                    );
                    steps[i + 1].kind = StepKind::Limit(stream.offset(1));
                    continue 'outer;
                }
            }
            break;
        }
        Ok(self.with_depth_zero(dz, steps))
    }
}

impl fmt::Display for InductiveValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v[p={}, x-({}) -> {}]",
            self.p(),
            self.depth_zero.a,
            self.depth_zero.gamma
        )?;
        for s in &self.steps {
            let tag = if s.is_limit() { "lim " } else { "" };
            write!(f, " + [{}{} -> {}]", tag, s.phi, s.gamma)?;
        }
        Ok(())
    }
}

/// Per-call evaluator with memoization per chain node.
struct Evaluator<'a> {
    chain: &'a InductiveValuation,
    memo: Vec<HashMap<RationalPoly, Value>>,
    stable_memo: Vec<HashMap<RationalPoly, Value>>,
    families: Vec<Option<ContinuousFamily>>,
    budget: usize,
}

impl<'a> Evaluator<'a> {
    fn new(chain: &'a InductiveValuation, budget: usize) -> Evaluator<'a> {
        let nodes = chain.node_count();
        Evaluator {
            chain,
            memo: vec![HashMap::new(); nodes],
            stable_memo: vec![HashMap::new(); nodes],
            families: vec![None; nodes],
            budget,
        }
    }

    fn value_at(&mut self, node: usize, f: &RationalPoly) -> Result<Value> {
        if f.is_zero() {
            return Ok(Value::Infinity);
        }
        if let Some(v) = self.memo[node].get(f) {
            return Ok(v.clone());
        }
        let v = if node == 0 {
            let dz = &self.chain.depth_zero;
            let p = self.chain.p();
            let coeffs = f.phi_expand(&RationalPoly::x_minus(&dz.a));
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| padic_value(&c.coeff(0), p).add_scaled(&dz.gamma, s))
                .min()
                .expect("nonzero polynomial has a nonzero coefficient")
        } else {
            let step = &self.chain.steps[node - 1];
            let phi = step.phi.clone();
            let gamma = step.gamma.clone();
            let limit = step.is_limit();
            let coeffs = f.phi_expand(&phi);
            let mut best: Option<Value> = None;
            for (s, a_s) in coeffs.iter().enumerate() {
                if a_s.is_zero() {
                    continue;
                }
                let inner = if limit {
                    self.stable_at(node, a_s)?
                } else {
                    self.value_at(node - 1, a_s)?
                };
                let term = inner.add_scaled(&gamma, s);
                best = Some(match best {
                    None => term,
                    Some(b) => b.min(term),
                });
            }
            best.expect("nonzero polynomial has a nonzero expansion coefficient")
        };
        self.memo[node].insert(f.clone(), v.clone());
        Ok(v)
    }

    /// Stable value of `f` along the family attached to the limit step at
    /// `node`.
    fn stable_at(&mut self, node: usize, f: &RationalPoly) -> Result<Value> {
        if let Some(v) = self.stable_memo[node].get(f) {
            return Ok(v.clone());
        }
        if self.families[node].is_none() {
            let stream = self.chain.steps[node - 1]
                .stream()
                .expect("limit step carries a stream")
                .clone();
            let base = self.chain.prefix(node);
            self.families[node] = Some(ContinuousFamily::new(base, stream));
        }
        let fam = self.families[node].as_ref().unwrap();
        let v = match limitfam::stable_value(fam, f, self.budget)? {
            StabilityReport::Stable { value, .. } => value,
            StabilityReport::UnstableWithin { .. } => {
                return Err(Error::UnstableCoefficient(f.to_string()))
            }
        };
        self.stable_memo[node].insert(f.clone(), v.clone());
        Ok(v)
    }
}
