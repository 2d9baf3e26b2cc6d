//! Continuous families of augmentations and stability analysis.
//!
//! A family stream produces an increasing sequence of approximant pairs
//! `(chi_i, beta_i)`. Attached to a base valuation it yields the sequence
//! of augmented valuations `rho_i`; values that become constant along the
//! sequence are stable, and the stable values define the limit behavior.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{inv_mod_p, mod_p, Rational, RationalPoly, Value};
use crate::valuation::InductiveValuation;

/// Default number of approximants examined before declaring a value
/// unstable within budget.
pub const DEFAULT_STABILITY_BUDGET: usize = 64;

type DigitCallback = dyn Fn(usize) -> u64 + Send + Sync;

enum DigitSource {
    /// p-adic digits of a rational number.
    RationalTheta { theta: Rational },
    /// Digits produced by Newton iteration from a simple root mod p.
    Hensel { f: RationalPoly, root: u64 },
    /// Externally supplied digits; each must lie in `1..p`.
    Callback(Arc<DigitCallback>),
}

enum StreamSource {
    Explicit(Vec<(RationalPoly, Value)>),
    Digits { p: u64, source: DigitSource },
}

struct DigitCache {
    digits: Vec<u64>,
    /// centers[i] is the center of entry i+1.
    centers: Vec<BigInt>,
    /// Remaining tail for the rational source.
    theta_rem: Option<Rational>,
    /// Current Newton iterate for the Hensel source.
    hensel_center: Option<BigInt>,
}

struct StreamInner {
    source: StreamSource,
    cache: Mutex<DigitCache>,
    descr: String,
}

/// A shareable stream of approximant pairs, one-indexed. Offsetting a
/// stream skips initial entries while keeping their original values.
#[derive(Clone)]
pub struct FamilyStream {
    inner: Arc<StreamInner>,
    shift: usize,
}

impl FamilyStream {
    /// A stream given by an explicit list of pairs.
    pub fn explicit(entries: Vec<(RationalPoly, Value)>) -> Result<FamilyStream> {
        if entries.is_empty() {
            return Err(Error::InvalidTheta("explicit stream is empty".into()));
        }
        let deg = entries[0].0.deg();
        for (chi, _) in &entries {
            if chi.is_zero() || !chi.is_monic() {
                return Err(Error::InvalidTheta(
                    "explicit stream entries must be monic".into(),
                ));
            }
            if chi.deg() != deg {
                return Err(Error::InvalidTheta(
                    "explicit stream entries must share one degree".into(),
                ));
            }
        }
        let descr = format!("explicit({} entries, degree {})", entries.len(), deg);
        Ok(FamilyStream::from_source(
            StreamSource::Explicit(entries),
            descr,
        ))
    }

    /// The digit stream of a rational number theta with p not dividing
    /// its denominator.
    pub fn digits_rational(p: u64, theta: Rational) -> Result<FamilyStream> {
        check_prime(p)?;
        if mod_p(theta.denom(), p) == 0 {
            return Err(Error::InvalidTheta(format!(
                "denominator of {} is divisible by {}",
                theta, p
            )));
        }
        let descr = format!("digits(p={}, theta={})", p, theta);
        Ok(FamilyStream::from_source(
            StreamSource::Digits {
                p,
                source: DigitSource::RationalTheta { theta },
            },
            descr,
        ))
    }

    /// The digit stream refining a simple root of `f` modulo `p` by Newton
    /// iteration.
    pub fn hensel(p: u64, f: RationalPoly, root: u64) -> Result<FamilyStream> {
        check_prime(p)?;
        f.require_integer_coeffs()?;
        if f.deg() < 1 {
            return Err(Error::InvalidTheta(
                "hensel stream needs a nonconstant polynomial".into(),
            ));
        }
        let r = root % p;
        let at = |g: &RationalPoly, x: u64| -> BigInt {
            g.eval(&Rational::from_integer(BigInt::from(x))).to_integer()
        };
        if mod_p(&at(&f, r), p) != 0 {
            return Err(Error::InvalidTheta(format!(
                "{} is not a root of {} modulo {}",
                r, f, p
            )));
        }
        if mod_p(&at(&f.derivative(), r), p) == 0 {
            return Err(Error::InvalidTheta(format!(
                "{} is not a simple root of {} modulo {}",
                r, f, p
            )));
        }
        let descr = format!("hensel(p={}, f={}, root={})", p, f, r);
        Ok(FamilyStream::from_source(
            StreamSource::Digits {
                p,
                source: DigitSource::Hensel { f, root: r },
            },
            descr,
        ))
    }

    /// A digit stream driven by a callback; digit j must lie in `1..p`.
    pub fn from_digits<F>(p: u64, digits: F) -> Result<FamilyStream>
    where
        F: Fn(usize) -> u64 + Send + Sync + 'static,
    {
        check_prime(p)?;
        let descr = format!("digits(p={}, callback)", p);
        Ok(FamilyStream::from_source(
            StreamSource::Digits {
                p,
                source: DigitSource::Callback(Arc::new(digits)),
            },
            descr,
        ))
    }

    fn from_source(source: StreamSource, descr: String) -> FamilyStream {
        FamilyStream {
            inner: Arc::new(StreamInner {
                source,
                cache: Mutex::new(DigitCache {
                    digits: Vec::new(),
                    centers: Vec::new(),
                    theta_rem: None,
                    hensel_center: None,
                }),
                descr,
            }),
            shift: 0,
        }
    }

    /// The stream with its first `k` entries skipped.
    pub fn offset(&self, k: usize) -> FamilyStream {
        FamilyStream {
            inner: Arc::clone(&self.inner),
            shift: self.shift + k,
        }
    }

    /// Common degree of every entry polynomial.
    pub fn stable_degree(&self) -> usize {
        match &self.inner.source {
            StreamSource::Explicit(entries) => entries[0].0.deg(),
            StreamSource::Digits { .. } => 1,
        }
    }

    /// Number of entries left, or `None` for an unbounded stream.
    pub fn available(&self) -> Option<usize> {
        match &self.inner.source {
            StreamSource::Explicit(entries) => Some(entries.len().saturating_sub(self.shift)),
            StreamSource::Digits { .. } => None,
        }
    }

    /// Entry `i` (one-indexed, after any offset).
    pub fn entry(&self, i: usize) -> Result<(RationalPoly, Value)> {
        if i == 0 {
            return Err(Error::Internal("stream entries are one-indexed".into()));
        }
        let j = i + self.shift;
        match &self.inner.source {
            StreamSource::Explicit(entries) => entries
                .get(j - 1)
                .cloned()
                .ok_or_else(|| Error::Internal(format!("explicit stream exhausted at entry {}", j))),
            StreamSource::Digits { p, source } => {
                let center = self.center_at(*p, source, j)?;
                let chi = RationalPoly::x_minus(&Rational::from_integer(center));
                let beta = Value::Finite(Rational::from_integer(BigInt::from(j)));
                Ok((chi, beta))
            }
        }
    }

    /// The first `n` digits of a digit stream.
    pub fn digit_prefix(&self, n: usize) -> Result<Vec<u64>> {
        match &self.inner.source {
            StreamSource::Explicit(_) => Err(Error::Internal(
                "explicit streams carry no digits".into(),
            )),
            StreamSource::Digits { p, source } => {
                self.ensure_digits(*p, source, n)?;
                let cache = self.inner.cache.lock().unwrap();
                Ok(cache.digits[..n].to_vec())
            }
        }
    }

    /// Center of digit entry `j`: the sum of the first `j` digit terms.
    fn center_at(&self, p: u64, source: &DigitSource, j: usize) -> Result<BigInt> {
        self.ensure_digits(p, source, j)?;
        let cache = self.inner.cache.lock().unwrap();
        Ok(cache.centers[j - 1].clone())
    }

    fn ensure_digits(&self, p: u64, source: &DigitSource, upto: usize) -> Result<()> {
        let mut cache = self.inner.cache.lock().unwrap();
        while cache.digits.len() < upto {
            let k = cache.digits.len();
            let c = match source {
                DigitSource::RationalTheta { theta } => {
                    let rem = cache
                        .theta_rem
                        .get_or_insert_with(|| theta.clone())
                        .clone();
                    let c = mod_p(
                        &(rem.numer() * BigInt::from(inv_mod_p(rem.denom(), p))),
                        p,
                    );
                    let next = (&rem - Rational::from_integer(BigInt::from(c)))
                        / Rational::from_integer(BigInt::from(p));
                    cache.theta_rem = Some(next);
                    c
                }
                DigitSource::Hensel { f, root } => {
                    if k == 0 {
                        cache.hensel_center = Some(BigInt::from(*root));
                        *root
                    } else {
                        let a = cache.hensel_center.clone().expect("iterate initialized");
                        let fa = f.eval(&Rational::from_integer(a.clone())).to_integer();
                        let pk = BigInt::from(p).pow(k as u32);
                        let q = &fa / &pk;
                        let fpa = f
                            .derivative()
                            .eval(&Rational::from_integer(a.clone()))
                            .to_integer();
                        let c = mod_p(&(-q * BigInt::from(inv_mod_p(&fpa, p))), p);
                        cache.hensel_center = Some(a + BigInt::from(c) * pk);
                        c
                    }
                }
                DigitSource::Callback(cb) => {
                    let c = cb(k);
                    if c == 0 || c >= p {
                        return Err(Error::InvalidTheta(format!(
                            "callback digit {} at position {} is outside 1..{}",
                            c, k, p
                        )));
                    }
                    c
                }
            };
            let term = BigInt::from(c) * BigInt::from(p).pow(k as u32);
            let center = match cache.centers.last() {
                Some(prev) => prev + term,
                None => term,
            };
            cache.digits.push(c);
            cache.centers.push(center);
        }
        Ok(())
    }
}

fn check_prime(p: u64) -> Result<()> {
    crate::valuation::ValuedBase::new(p).map(|_| ())
}

impl fmt::Debug for FamilyStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilyStream({}", self.inner.descr)?;
        if self.shift > 0 {
            write!(f, ", shift {}", self.shift)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FamilyStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.descr)?;
        if self.shift > 0 {
            write!(f, " >> {}", self.shift)?;
        }
        Ok(())
    }
}

/// A family stream attached to the valuation it augments.
#[derive(Debug, Clone)]
pub struct ContinuousFamily {
    base: InductiveValuation,
    stream: FamilyStream,
}

impl ContinuousFamily {
    pub fn new(base: InductiveValuation, stream: FamilyStream) -> ContinuousFamily {
        ContinuousFamily { base, stream }
    }

    pub fn base(&self) -> &InductiveValuation {
        &self.base
    }

    pub fn stream(&self) -> &FamilyStream {
        &self.stream
    }

    pub fn stable_degree(&self) -> usize {
        self.stream.stable_degree()
    }

    /// The i-th approximant valuation `rho_i`.
    pub fn approximant(&self, i: usize) -> Result<InductiveValuation> {
        let (chi, beta) = self.stream.entry(i)?;
        self.base.augment(chi, beta)
    }

    /// Value of `f` under the i-th approximant.
    pub fn rho(&self, i: usize, f: &RationalPoly) -> Result<Value> {
        self.approximant(i)?.eval(f)
    }
}

/// Outcome of probing a value sequence for stability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityReport {
    /// The sequence repeats from `witness` on; `witness` is the first
    /// index of the equal consecutive pair.
    Stable { value: Value, witness: usize },
    /// No consecutive pair agreed among the examined values.
    UnstableWithin { budget: usize, values: Vec<Value> },
}

/// Probes `rho_i(f)` for consecutive agreement within `budget` entries.
pub fn stable_value(
    fam: &ContinuousFamily,
    f: &RationalPoly,
    budget: usize,
) -> Result<StabilityReport> {
    if f.is_zero() {
        return Ok(StabilityReport::Stable {
            value: Value::Infinity,
            witness: 1,
        });
    }
    let cap = match fam.stream().available() {
        Some(n) => budget.min(n),
        None => budget,
    };
    let mut values: Vec<Value> = Vec::new();
    for i in 1..=cap {
        let v = fam.rho(i, f)?;
        if let Some(prev) = values.last() {
            if *prev == v {
                return Ok(StabilityReport::Stable {
                    value: v,
                    witness: i - 1,
                });
            }
        }
        values.push(v);
    }
    Ok(StabilityReport::UnstableWithin {
        budget: values.len(),
        values,
    })
}

/// Evaluates the limit augmentation `[fam; phi, gamma]` on `f`: expand in
/// `phi`, give each coefficient its stable value, and add `s * gamma`.
pub fn limit_eval(
    fam: &ContinuousFamily,
    phi: &RationalPoly,
    gamma: &Value,
    f: &RationalPoly,
    budget: usize,
) -> Result<Value> {
    if f.is_zero() {
        return Ok(Value::Infinity);
    }
    let coeffs = f.phi_expand(phi);
    let mut best: Option<Value> = None;
    for (s, a_s) in coeffs.iter().enumerate() {
        if a_s.is_zero() {
            continue;
        }
        let inner = match stable_value(fam, a_s, budget)? {
            StabilityReport::Stable { value, .. } => value,
            StabilityReport::UnstableWithin { .. } => {
                return Err(Error::BudgetExhausted {
                    budget,
                    context: format!("coefficient {}", a_s),
                });
            }
        };
        let term = inner.add_scaled(gamma, s);
        best = Some(match best {
            None => term,
            Some(b) => b.min(term),
        });
    }
    Ok(best.expect("nonzero polynomial has a nonzero expansion coefficient"))
}

/// Whether a family is an artifact of slow refinement or genuinely
/// demands a higher-degree key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// A polynomial of the stable degree already fails to stabilize.
    Inessential { witness: RationalPoly },
    /// Every candidate of the stable degree stabilizes but `phi` does not.
    EssentialWith { phi: RationalPoly },
    /// Every candidate stabilized within budget.
    Undetermined,
}

/// Classifies a family against candidate polynomials, scanned in
/// ascending degree.
pub fn classify(
    fam: &ContinuousFamily,
    candidates: &[RationalPoly],
    budget: usize,
) -> Result<Classification> {
    let m = fam.stable_degree();
    let mut sorted: Vec<&RationalPoly> = candidates.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| c.deg());
    for cand in sorted {
        match stable_value(fam, cand, budget)? {
            StabilityReport::Stable { .. } => {}
            StabilityReport::UnstableWithin { .. } => {
                if cand.deg() <= m {
                    return Ok(Classification::Inessential {
                        witness: cand.clone(),
                    });
                }
                return Ok(Classification::EssentialWith { phi: cand.clone() });
            }
        }
    }
    Ok(Classification::Undetermined)
}

/// Outcome of comparing two families on a sample of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyComparison {
    Equivalent,
    Distinguished { witness: RationalPoly },
    Inconclusive,
}

/// Compares two families on a sample within a budget. Distinct stable
/// values distinguish; an unstable sequence that has already passed the
/// other side's stable value distinguishes; anything else undecided
/// leaves the comparison inconclusive.
pub fn family_equiv_budgeted(
    a: &ContinuousFamily,
    b: &ContinuousFamily,
    sample: &[RationalPoly],
    budget: usize,
) -> Result<FamilyComparison> {
    let mut inconclusive = false;
    for f in sample {
        let ra = stable_value(a, f, budget)?;
        let rb = stable_value(b, f, budget)?;
        match (&ra, &rb) {
            (
                StabilityReport::Stable { value: va, .. },
                StabilityReport::Stable { value: vb, .. },
            ) => {
                if va != vb {
                    return Ok(FamilyComparison::Distinguished { witness: f.clone() });
                }
            }
            (
                StabilityReport::Stable { value, .. },
                StabilityReport::UnstableWithin { values, .. },
            )
            | (
                StabilityReport::UnstableWithin { values, .. },
                StabilityReport::Stable { value, .. },
            ) => {
                if values.last().map_or(false, |last| last > value) {
                    return Ok(FamilyComparison::Distinguished { witness: f.clone() });
                }
                inconclusive = true;
            }
            (StabilityReport::UnstableWithin { .. }, StabilityReport::UnstableWithin { .. }) => {
                inconclusive = true;
            }
        }
    }
    if inconclusive {
        Ok(FamilyComparison::Inconclusive)
    } else {
        Ok(FamilyComparison::Equivalent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn poly(s: &str) -> RationalPoly {
        s.parse().unwrap()
    }

    fn fin(n: i64, d: i64) -> Value {
        Value::Finite(rat(n, d))
    }

    fn sqrt2_family() -> ContinuousFamily {
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        ContinuousFamily::new(InductiveValuation::gauss(7).unwrap(), stream)
    }

    #[test]
    fn hensel_digits_refine_a_square_root() {
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        assert_eq!(stream.digit_prefix(3).unwrap(), vec![3, 1, 2]);
        assert_eq!(stream.entry(1).unwrap(), (poly("x-3"), fin(1, 1)));
        assert_eq!(stream.entry(2).unwrap(), (poly("x-10"), fin(2, 1)));
        assert_eq!(stream.entry(3).unwrap(), (poly("x-108"), fin(3, 1)));
    }

    #[test]
    fn rational_theta_digits() {
        let stream = FamilyStream::digits_rational(7, rat(-1, 6)).unwrap();
        assert_eq!(stream.digit_prefix(4).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(stream.entry(2).unwrap(), (poly("x-8"), fin(2, 1)));
        assert_eq!(stream.entry(3).unwrap(), (poly("x-57"), fin(3, 1)));
    }

    #[test]
    fn invalid_sources_are_rejected() {
        assert!(matches!(
            FamilyStream::digits_rational(7, rat(1, 7)),
            Err(Error::InvalidTheta(_))
        ));
        assert!(matches!(
            FamilyStream::hensel(7, poly("x^2-2"), 1),
            Err(Error::InvalidTheta(_))
        ));
        assert!(matches!(
            FamilyStream::hensel(7, poly("x^2-6*x+9"), 3),
            Err(Error::InvalidTheta(_))
        ));
        assert!(matches!(
            FamilyStream::hensel(2, poly("x^2-1/2"), 1),
            Err(Error::NonIntegralCoefficients)
        ));
        assert!(matches!(
            FamilyStream::explicit(vec![]),
            Err(Error::InvalidTheta(_))
        ));
    }

    #[test]
    fn callback_digits_validated_lazily() {
        let stream = FamilyStream::from_digits(7, |_| 9).unwrap();
        assert!(matches!(stream.entry(1), Err(Error::InvalidTheta(_))));
        let ones = FamilyStream::from_digits(7, |_| 1).unwrap();
        assert_eq!(ones.entry(2).unwrap(), (poly("x-8"), fin(2, 1)));
    }

    #[test]
    fn offset_preserves_raw_indices() {
        let stream = FamilyStream::hensel(7, poly("x^2-2"), 3).unwrap();
        let shifted = stream.offset(1);
        assert_eq!(shifted.entry(1).unwrap(), (poly("x-10"), fin(2, 1)));
        assert_eq!(shifted.entry(2).unwrap(), (poly("x-108"), fin(3, 1)));
    }

    #[test]
    fn stability_of_low_degree_polynomials() {
        let fam = sqrt2_family();
        assert_eq!(
            stable_value(&fam, &poly("x"), 8).unwrap(),
            StabilityReport::Stable {
                value: fin(0, 1),
                witness: 1
            }
        );
        assert_eq!(
            stable_value(&fam, &poly("x-3"), 8).unwrap(),
            StabilityReport::Stable {
                value: fin(1, 1),
                witness: 1
            }
        );
    }

    #[test]
    fn approximated_key_never_stabilizes() {
        let fam = sqrt2_family();
        match stable_value(&fam, &poly("x^2-2"), 5).unwrap() {
            StabilityReport::UnstableWithin { budget, values } => {
                assert_eq!(budget, 5);
                let expected: Vec<Value> = (1..=5).map(|i| fin(i, 1)).collect();
                assert_eq!(values, expected);
            }
            other => panic!("expected unstable, got {:?}", other),
        }
    }

    #[test]
    fn explicit_exhaustion_reports_unstable() {
        let stream =
            FamilyStream::explicit(vec![(poly("x-3"), fin(1, 1)), (poly("x-10"), fin(2, 1))])
                .unwrap();
        let fam = ContinuousFamily::new(InductiveValuation::gauss(7).unwrap(), stream);
        match stable_value(&fam, &poly("x^2-2"), 10).unwrap() {
            StabilityReport::UnstableWithin { budget, values } => {
                assert_eq!(budget, 2);
                assert_eq!(values, vec![fin(1, 1), fin(2, 1)]);
            }
            other => panic!("expected unstable, got {:?}", other),
        }
    }

    #[test]
    fn limit_eval_examples() {
        let fam = sqrt2_family();
        let phi = poly("x^2-2");
        let inf = Value::Infinity;
        assert_eq!(
            limit_eval(&fam, &phi, &inf, &poly("x-3"), 8).unwrap(),
            fin(1, 1)
        );
        assert_eq!(
            limit_eval(&fam, &phi, &inf, &poly("x^2-2"), 8).unwrap(),
            Value::Infinity
        );
        let mixed = &poly("7*x^2-14") + &poly("x-3");
        assert_eq!(limit_eval(&fam, &phi, &inf, &mixed, 8).unwrap(), fin(1, 1));
    }

    #[test]
    fn limit_eval_reports_the_unstable_coefficient() {
        let fam = sqrt2_family();
        // Expanding in a cubic makes x^2-2 itself a coefficient.
        let err = limit_eval(&fam, &poly("x^3"), &Value::Infinity, &poly("x^2-2"), 4);
        assert_eq!(
            err,
            Err(Error::BudgetExhausted {
                budget: 4,
                context: "coefficient x^2 - 2".into()
            })
        );
    }

    #[test]
    fn classify_rational_theta_as_inessential() {
        let stream = FamilyStream::digits_rational(7, rat(-1, 6)).unwrap();
        let fam = ContinuousFamily::new(InductiveValuation::gauss(7).unwrap(), stream);
        let candidates = vec![poly("x"), poly("x+1/6"), poly("x^2-2")];
        assert_eq!(
            classify(&fam, &candidates, 8).unwrap(),
            Classification::Inessential {
                witness: poly("x+1/6")
            }
        );
    }

    #[test]
    fn classify_sqrt2_as_essential() {
        let fam = sqrt2_family();
        let candidates = vec![poly("x"), poly("x-3"), poly("x^2-2")];
        assert_eq!(
            classify(&fam, &candidates, 8).unwrap(),
            Classification::EssentialWith { phi: poly("x^2-2") }
        );
    }

    #[test]
    fn classify_undetermined_when_all_stable() {
        let fam = sqrt2_family();
        let candidates = vec![poly("x"), poly("x-3")];
        assert_eq!(
            classify(&fam, &candidates, 8).unwrap(),
            Classification::Undetermined
        );
    }

    #[test]
    fn equivalence_of_a_family_and_its_tail() {
        let fam = sqrt2_family();
        let tail = ContinuousFamily::new(
            InductiveValuation::gauss(7).unwrap(),
            fam.stream().offset(1),
        );
        let sample = vec![poly("x"), poly("x-3"), poly("x-10"), poly("x-108")];
        assert_eq!(
            family_equiv_budgeted(&fam, &tail, &sample, 8).unwrap(),
            FamilyComparison::Equivalent
        );
    }

    #[test]
    fn opposite_roots_are_distinguished() {
        let fam = sqrt2_family();
        let neg = ContinuousFamily::new(
            InductiveValuation::gauss(7).unwrap(),
            FamilyStream::hensel(7, poly("x^2-2"), 4).unwrap(),
        );
        let sample = vec![poly("x"), poly("x-3"), poly("x^2-2")];
        assert_eq!(
            family_equiv_budgeted(&fam, &neg, &sample, 8).unwrap(),
            FamilyComparison::Distinguished {
                witness: poly("x-3")
            }
        );
    }

    #[test]
    fn truncated_streams_are_inconclusive() {
        let a = FamilyStream::explicit(vec![(poly("x-3"), fin(1, 1))]).unwrap();
        let b = FamilyStream::explicit(vec![(poly("x-3"), fin(1, 1))]).unwrap();
        let base = InductiveValuation::gauss(7).unwrap();
        let fa = ContinuousFamily::new(base.clone(), a);
        let fb = ContinuousFamily::new(base, b);
        let sample = vec![poly("x-3")];
        assert_eq!(
            family_equiv_budgeted(&fa, &fb, &sample, 8).unwrap(),
            FamilyComparison::Inconclusive
        );
    }
}
