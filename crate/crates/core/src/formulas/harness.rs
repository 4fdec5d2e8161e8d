//! Sampling checks relating formula evaluation in the order-of-magnitude
//! algebra to evaluation on concrete extended reals.
//!
//! Soundness: when `f(a) > g(b)` holds abstractly, every interpretation pair
//! must satisfy the strict inequality exactly. Completeness: when it does not
//! hold, some interpretation pair must break it, and when `f(a)` is undefined,
//! some interpretation must hit an inverse of zero.
//!
//! Witness searches first try a directed construction. A target value is
//! chosen for the whole formula and pushed down the tree, splitting sums and
//! products into parts that lie in the operands' sets. Random sampling is the
//! fallback, with the coefficient pool escalated after half the budget.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use super::{EvalResult, Formula, FormulaError, Instantiation, Node};
use crate::extended_reals::{ExtendedReal, Rational};
use crate::oom::{Comparison, OomValue, Order, Sign, StarSampler, StarSamplerConfig};

/// Directed target pairs tried before random sampling.
const DIRECTED_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("the {0} side evaluates to undefined")]
    UndefinedOperand(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Interpretations for both sides of a comparison and the values they produce.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessPair {
    pub lhs: Instantiation<ExtendedReal>,
    pub rhs: Instantiation<ExtendedReal>,
    pub lhs_value: EvalResult<ExtendedReal>,
    pub rhs_value: EvalResult<ExtendedReal>,
    /// Candidates examined up to and including this one.
    pub attempts: usize,
    pub directed: bool,
}

/// A single interpretation under which a formula is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub interpretation: Instantiation<ExtendedReal>,
    pub attempts: usize,
    pub directed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Search<W> {
    Found(W),
    Exhausted { attempts: usize },
}

impl<W> Search<W> {
    pub fn found(&self) -> Option<&W> {
        match self {
            Search::Found(w) => Some(w),
            Search::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessReport {
    pub lhs: OomValue,
    pub rhs: OomValue,
    pub relation: Comparison,
    /// Whether `lhs > rhs` holds in the order-of-magnitude algebra. When it
    /// does not, no samples are drawn.
    pub holds: bool,
    pub samples: usize,
    pub failures: usize,
    pub counterexample: Option<WitnessPair>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.failures == 0
    }
}

fn abstract_value(f: &Formula, a: &Instantiation<OomValue>, side: &'static str) -> Result<OomValue, HarnessError> {
    f.eval(a)?.value().ok_or(HarnessError::UndefinedOperand(side))
}

/// Draws an interpretation of every entry of `a`, independently per symbol.
pub fn sample_instantiation(a: &Instantiation<OomValue>, sampler: &mut StarSampler) -> Instantiation<ExtendedReal> {
    a.iter().map(|(i, v)| (*i, sampler.sample(*v))).collect()
}

fn sample_symbols(f: &Formula, a: &Instantiation<OomValue>, sampler: &mut StarSampler) -> Instantiation<ExtendedReal> {
    f.symbols().into_iter().map(|i| (i, sampler.sample(a[&i]))).collect()
}

fn breaks_gt(lhs: &EvalResult<ExtendedReal>, rhs: &EvalResult<ExtendedReal>) -> bool {
    match (lhs, rhs) {
        (EvalResult::Value(l), EvalResult::Value(r)) => l.cmp(r) != Ordering::Greater,
        _ => true,
    }
}

/// Checks `f(r) > g(s)` on `n_samples` sampled interpretation pairs whenever
/// `f(a) > g(b)` holds abstractly.
pub fn verify_gt(
    f: &Formula,
    a: &Instantiation<OomValue>,
    g: &Formula,
    b: &Instantiation<OomValue>,
    cfg: &StarSamplerConfig,
    n_samples: usize,
) -> Result<SoundnessReport, HarnessError> {
    let lhs = abstract_value(f, a, "left")?;
    let rhs = abstract_value(g, b, "right")?;
    let holds = lhs.gt(rhs);
    let mut report = SoundnessReport {
        lhs,
        rhs,
        relation: lhs.compare(rhs),
        holds,
        samples: 0,
        failures: 0,
        counterexample: None,
    };
    if !holds {
        return Ok(report);
    }
    let mut sampler = StarSampler::new(cfg.clone());
    for i in 0..n_samples {
        let r = sample_symbols(f, a, &mut sampler);
        let s = sample_symbols(g, b, &mut sampler);
        let lhs_value = f.eval(&r)?;
        let rhs_value = g.eval(&s)?;
        report.samples += 1;
        if breaks_gt(&lhs_value, &rhs_value) {
            report.failures += 1;
            report.counterexample.get_or_insert(WitnessPair {
                lhs: r,
                rhs: s,
                lhs_value,
                rhs_value,
                attempts: i + 1,
                directed: false,
            });
        }
    }
    Ok(report)
}

/// Looks for interpretations `r` of `a` and `s` of `b` with `f(r) ≤ g(s)`,
/// given that `f(a) > g(b)` fails abstractly.
pub fn search_counterexample(
    f: &Formula,
    a: &Instantiation<OomValue>,
    g: &Formula,
    b: &Instantiation<OomValue>,
    cfg: &StarSamplerConfig,
    budget: usize,
) -> Result<Search<WitnessPair>, HarnessError> {
    let lhs = abstract_value(f, a, "left")?;
    let rhs = abstract_value(g, b, "right")?;
    if lhs.gt(rhs) {
        return Err(HarnessError::Precondition("left side is strictly greater; no counterexample exists"));
    }
    let mut attempts = 0;

    let targets = candidates(lhs)
        .into_iter()
        .flat_map(|tf| candidates(rhs).into_iter().map(move |tg| (tf.clone(), tg)))
        .filter(|(tf, tg)| tf <= tg)
        .take(DIRECTED_ATTEMPTS);
    for (tf, tg) in targets {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let (Some(r), Some(s)) = (realize(f, a, &tf), realize(g, b, &tg)) else {
            continue;
        };
        let lhs_value = f.eval(&r)?;
        let rhs_value = g.eval(&s)?;
        if breaks_gt(&lhs_value, &rhs_value) {
            return Ok(Search::Found(WitnessPair {
                lhs: r,
                rhs: s,
                lhs_value,
                rhs_value,
                attempts,
                directed: true,
            }));
        }
    }

    let mut sampler = StarSampler::new(cfg.clone());
    while attempts < budget {
        if attempts == budget / 2 {
            let escalated = sampler.config().escalated();
            sampler.set_config(escalated);
        }
        attempts += 1;
        let r = sample_symbols(f, a, &mut sampler);
        let s = sample_symbols(g, b, &mut sampler);
        let lhs_value = f.eval(&r)?;
        let rhs_value = g.eval(&s)?;
        if breaks_gt(&lhs_value, &rhs_value) {
            return Ok(Search::Found(WitnessPair {
                lhs: r,
                rhs: s,
                lhs_value,
                rhs_value,
                attempts,
                directed: false,
            }));
        }
    }
    Ok(Search::Exhausted { attempts })
}

/// Looks for an interpretation of `a` under which `f` is undefined, given that
/// `f(a)` is undefined.
pub fn undefined_witness(
    f: &Formula,
    a: &Instantiation<OomValue>,
    cfg: &StarSamplerConfig,
    budget: usize,
) -> Result<Search<Witness>, HarnessError> {
    if !f.eval(a)?.is_undefined() {
        return Err(HarnessError::Precondition("formula is defined under this instantiation"));
    }
    let mut sampler = StarSampler::new(cfg.clone());
    let mut attempts = 0;

    if budget > 0 {
        attempts += 1;
        if let Some(child) = innermost_undefined_inverse(f, a) {
            if let Some(mut r) = realize(child, a, &ExtendedReal::zero()) {
                for i in f.symbols() {
                    r.entry(i).or_insert_with(|| sampler.sample(a[&i]));
                }
                if f.eval(&r)?.is_undefined() {
                    return Ok(Search::Found(Witness {
                        interpretation: r,
                        attempts,
                        directed: true,
                    }));
                }
            }
        }
    }

    while attempts < budget {
        if attempts == budget / 2 {
            let escalated = sampler.config().escalated();
            sampler.set_config(escalated);
        }
        attempts += 1;
        let r = sample_symbols(f, a, &mut sampler);
        if f.eval(&r)?.is_undefined() {
            return Ok(Search::Found(Witness {
                interpretation: r,
                attempts,
                directed: false,
            }));
        }
    }
    Ok(Search::Exhausted { attempts })
}

/// The operand of the first inverse (in evaluation order) whose operand is
/// defined but has sign 0.
fn innermost_undefined_inverse<'f>(f: &'f Formula, a: &Instantiation<OomValue>) -> Option<&'f Formula> {
    match f.node() {
        Node::Symbol(_) => None,
        Node::Neg(c) => innermost_undefined_inverse(c, a),
        Node::Inv(c) => innermost_undefined_inverse(c, a).or_else(|| match c.eval_unchecked(a) {
            EvalResult::Value(v) if v.is_signless() => Some(c.as_ref()),
            _ => None,
        }),
        Node::Add(l, r) | Node::Mul(l, r) => {
            innermost_undefined_inverse(l, a).or_else(|| innermost_undefined_inverse(r, a))
        }
    }
}

/// Representative members of `a*`, spread across coefficient sizes.
fn candidates(a: OomValue) -> Vec<ExtendedReal> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let scales = [q(3, 1), q(2, 1), q(1, 1), q(1, 2)];
    match (a.sign(), a.order()) {
        (_, Order::Infinite) => vec![ExtendedReal::zero()],
        (Sign::Zero, Order::Finite(n)) => {
            let mut out = vec![ExtendedReal::zero()];
            for c in [q(3, 1), q(1, 1), q(1, 2)] {
                out.push(ExtendedReal::monomial(-c.clone(), n));
                out.push(ExtendedReal::monomial(c, n));
            }
            out.push(ExtendedReal::monomial(q(-1, 1), n + 1));
            out.push(ExtendedReal::monomial(q(1, 1), n + 1));
            out
        }
        (sign, Order::Finite(n)) => scales
            .into_iter()
            .map(|c| ExtendedReal::monomial(if sign == Sign::Neg { -c } else { c }, n))
            .collect(),
    }
}

/// A fixed, simple member of `a*`.
fn simple_member(a: OomValue) -> ExtendedReal {
    match (a.sign(), a.order()) {
        (Sign::Pos, Order::Finite(n)) => ExtendedReal::monomial(Rational::one(), n),
        (Sign::Neg, Order::Finite(n)) => ExtendedReal::monomial(-Rational::one(), n),
        _ => ExtendedReal::zero(),
    }
}

/// Writes `t ∈ (a1 + a2)*` as `r1 + r2` with `r1 ∈ a1*`, `r2 ∈ a2*`.
fn split_sum(t: &ExtendedReal, a1: OomValue, a2: OomValue) -> Option<(ExtendedReal, ExtendedReal)> {
    if a1 == OomValue::ZERO {
        return Some((ExtendedReal::zero(), t.clone()));
    }
    if a2 == OomValue::ZERO {
        return Some((t.clone(), ExtendedReal::zero()));
    }
    let (m, n) = (a1.order().finite()?, a2.order().finite()?);
    let rest = |fixed: ExtendedReal| (t - &fixed, fixed);
    let split = match m.cmp(&n) {
        // the lower-order operand absorbs the target
        Ordering::Less => rest(simple_member(a2)),
        Ordering::Greater => {
            let (r2, r1) = rest(simple_member(a1));
            (r1, r2)
        }
        Ordering::Equal => match (a1.sign(), a2.sign()) {
            (s1, s2) if s1 == s2 && s1 != Sign::Zero => {
                let half = ExtendedReal::from_rational(Rational::new(1.into(), 2.into()));
                let h = t * &half;
                (h.clone(), h)
            }
            (Sign::Zero, Sign::Zero) => (t.clone(), ExtendedReal::zero()),
            (Sign::Zero, _) => rest(simple_member(a2)),
            (_, Sign::Zero) => {
                let (r2, r1) = rest(simple_member(a1));
                (r1, r2)
            }
            (s1, _) => {
                // opposite signs: overshoot the target's leading term with r1
                let mut c = Rational::one();
                if t.order() == Order::Finite(m) {
                    c += num_traits::Signed::abs(&t.leading_coefficient());
                }
                if s1 == Sign::Neg {
                    c = -c;
                }
                let r1 = ExtendedReal::monomial(c, m);
                (r1.clone(), t - &r1)
            }
        },
    };
    Some(split)
}

/// Writes `t ∈ (a1 · a2)*` as `r1 · r2` with `r1 ∈ a1*`, `r2 ∈ a2*`.
fn split_product(t: &ExtendedReal, a1: OomValue, a2: OomValue) -> Option<(ExtendedReal, ExtendedReal)> {
    if a1 == OomValue::ZERO {
        return Some((ExtendedReal::zero(), simple_member(a2)));
    }
    if a2 == OomValue::ZERO {
        return Some((simple_member(a1), ExtendedReal::zero()));
    }
    let m = a1.order().finite()?;
    match (a1.is_signless(), a2.is_signless()) {
        (false, _) => {
            let r1 = simple_member(a1);
            Some((r1.clone(), t.checked_div(&r1).ok()?))
        }
        (true, false) => {
            let r2 = simple_member(a2);
            Some((t.checked_div(&r2).ok()?, r2))
        }
        (true, true) if t.is_zero() => Some((ExtendedReal::zero(), simple_member(a2))),
        (true, true) => {
            let r1 = ExtendedReal::monomial(Rational::one(), m);
            Some((r1.clone(), t.checked_div(&r1).ok()?))
        }
    }
}

/// An interpretation `r` of `a` (over the symbols of `f`) with `f(r) = target`.
///
/// Returns `None` unless `f(a)` is defined and `target ∈ f(a)*`.
pub fn realize(f: &Formula, a: &Instantiation<OomValue>, target: &ExtendedReal) -> Option<Instantiation<ExtendedReal>> {
    let value = f.eval(a).ok()?.value()?;
    if !value.contains(target) {
        return None;
    }
    let mut out = BTreeMap::new();
    realize_into(f, a, target.clone(), &mut out)?;
    Some(out)
}

fn realize_into(
    f: &Formula,
    a: &Instantiation<OomValue>,
    target: ExtendedReal,
    out: &mut Instantiation<ExtendedReal>,
) -> Option<()> {
    let value_of = |c: &Formula| c.eval_unchecked(a).value();
    match f.node() {
        Node::Symbol(i) => {
            if !a[i].contains(&target) {
                return None;
            }
            out.insert(*i, target);
        }
        Node::Neg(c) => realize_into(c, a, -target, out)?,
        Node::Inv(c) => realize_into(c, a, target.recip().ok()?, out)?,
        Node::Add(l, r) => {
            let (tl, tr) = split_sum(&target, value_of(l)?, value_of(r)?)?;
            realize_into(l, a, tl, out)?;
            realize_into(r, a, tr, out)?;
        }
        Node::Mul(l, r) => {
            let (tl, tr) = split_product(&target, value_of(l)?, value_of(r)?)?;
            realize_into(l, a, tl, out)?;
            realize_into(r, a, tr, out)?;
        }
    }
    Some(())
}
