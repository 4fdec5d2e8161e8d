//! Order-of-magnitude expected utility, option comparison, and Pearl's
//! integer-graded utilities for kappa functions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::extended_reals::{ExtendedReal, Rational};
use crate::formulas::Search;
use crate::kappa::{
    default_lambda_pool, interpret_with, sample_prob_interpretation, ExtendedProbability, KappaError, KappaFunction,
    OomProbability, OutcomeSpace, Rank,
};
use crate::oom::{OomValue, Order, Sign, StarSampler, StarSamplerConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("components are defined over different outcome spaces")]
    SpaceMismatch,
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Kappa(#[from] KappaError),
}

fn check_len(space: &OutcomeSpace, got: usize) -> Result<(), DecisionError> {
    if space.len() == got {
        Ok(())
    } else {
        Err(DecisionError::WrongLength {
            expected: space.len(),
            got,
        })
    }
}

/// An order-of-magnitude utility: one value per outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OomUtility {
    space: OutcomeSpace,
    values: Vec<OomValue>,
}

impl OomUtility {
    pub fn new(space: OutcomeSpace, values: Vec<OomValue>) -> Result<Self, DecisionError> {
        check_len(&space, values.len())?;
        Ok(Self { space, values })
    }

    /// The constant utility `U_λ`.
    pub fn constant(space: OutcomeSpace, lambda: OomValue) -> Self {
        let values = vec![lambda; space.len()];
        Self { space, values }
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn values(&self) -> &[OomValue] {
        &self.values
    }

    fn map(&self, f: impl Fn(OomValue) -> OomValue) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &OomUtility) -> Result<Self, DecisionError> {
        if self.space != other.space {
            return Err(DecisionError::SpaceMismatch);
        }
        Ok(Self {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect(),
        })
    }

    pub fn negated(&self) -> Self {
        self.map(|v| -v)
    }

    /// Pointwise `λ · U`.
    pub fn scaled(&self, lambda: OomValue) -> Self {
        self.map(|v| lambda * v)
    }
}

/// A Pearl utility: an integer grade per outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PearlMu {
    space: OutcomeSpace,
    values: Vec<i64>,
}

impl PearlMu {
    pub fn new(space: OutcomeSpace, values: Vec<i64>) -> Result<Self, DecisionError> {
        check_len(&space, values.len())?;
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `i > 0 ↦ (+, −i)`, `−i < 0 ↦ (−, −i)`, `0 ↦ (0, 0)`.
    pub fn grade_to_oom(mu: i64) -> OomValue {
        match mu.cmp(&0) {
            Ordering::Greater => OomValue::pos(-mu),
            Ordering::Less => OomValue::neg(mu),
            Ordering::Equal => OomValue::signless(0),
        }
    }

    pub fn to_utility(&self) -> OomUtility {
        OomUtility {
            space: self.space.clone(),
            values: self.values.iter().map(|m| Self::grade_to_oom(*m)).collect(),
        }
    }
}

/// See [`PearlMu::to_utility`].
pub fn mu_to_utility(mu: &PearlMu) -> OomUtility {
    mu.to_utility()
}

/// `P(U) = Σ P(ω) U(ω)`.
pub fn expect(p: &OomProbability, u: &OomUtility) -> Result<OomValue, DecisionError> {
    if p.space() != u.space() {
        return Err(DecisionError::SpaceMismatch);
    }
    Ok(p.atoms().iter().zip(&u.values).map(|(a, b)| *a * *b).sum())
}

/// The expectation computed from `u^χ = min (κ(ω) + m(ω))` over outcomes of
/// finite rank whose utility has sign `χ`.
pub fn expect_closed_form(k: &KappaFunction, u: &OomUtility) -> Result<OomValue, DecisionError> {
    if k.space() != u.space() {
        return Err(DecisionError::SpaceMismatch);
    }
    let (mut plus, mut zero, mut minus) = (Order::Infinite, Order::Infinite, Order::Infinite);
    for (rank, value) in k.ranks().iter().zip(&u.values) {
        let Rank::Finite(kw) = rank else { continue };
        let total = Order::Finite(*kw as i64) + value.order();
        let slot = match value.sign() {
            Sign::Pos => &mut plus,
            Sign::Zero => &mut zero,
            Sign::Neg => &mut minus,
        };
        *slot = (*slot).min(total);
    }
    let order = plus.min(zero).min(minus);
    let sign = if plus < zero && plus < minus {
        Sign::Pos
    } else if minus < zero && minus < plus {
        Sign::Neg
    } else {
        Sign::Zero
    };
    Ok(OomValue::new(sign, order).expect("finite order whenever the sign is nonzero"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preference {
    FirstPreferred,
    SecondPreferred,
    NoStrictPreference,
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preference::FirstPreferred => "FirstPreferred",
            Preference::SecondPreferred => "SecondPreferred",
            Preference::NoStrictPreference => "NoStrictPreference",
        })
    }
}

pub fn compare_options(e1: OomValue, e2: OomValue) -> Preference {
    if e1.gt(e2) {
        Preference::FirstPreferred
    } else if e2.gt(e1) {
        Preference::SecondPreferred
    } else {
        Preference::NoStrictPreference
    }
}

/// An option: a probability and a utility over the same outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionOption {
    name: String,
    probability: OomProbability,
    utility: OomUtility,
}

impl DecisionOption {
    pub fn new(name: impl Into<String>, probability: OomProbability, utility: OomUtility) -> Result<Self, DecisionError> {
        if probability.space() != utility.space() {
            return Err(DecisionError::SpaceMismatch);
        }
        Ok(Self {
            name: name.into(),
            probability,
            utility,
        })
    }

    pub fn from_kappa_mu(name: impl Into<String>, kappa: &KappaFunction, mu: &PearlMu) -> Result<Self, DecisionError> {
        Self::new(name, kappa.to_oom(), mu.to_utility())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn probability(&self) -> &OomProbability {
        &self.probability
    }

    pub fn utility(&self) -> &OomUtility {
        &self.utility
    }

    pub fn expectation(&self) -> OomValue {
        expect(&self.probability, &self.utility).expect("spaces checked on construction")
    }
}

/// Outcomes plus the options over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionProblem {
    space: OutcomeSpace,
    options: Vec<DecisionOption>,
}

impl DecisionProblem {
    pub fn new(space: OutcomeSpace, options: Vec<DecisionOption>) -> Result<Self, DecisionError> {
        if options.iter().any(|o| o.probability.space() != &space) {
            return Err(DecisionError::SpaceMismatch);
        }
        Ok(Self { space, options })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn options(&self) -> &[DecisionOption] {
        &self.options
    }

    /// `(i, j, preference)` for every pair `i < j`.
    pub fn preferences(&self) -> Vec<(usize, usize, Preference)> {
        let e: Vec<OomValue> = self.options.iter().map(DecisionOption::expectation).collect();
        let mut out = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                out.push((i, j, compare_options(e[i], e[j])));
            }
        }
        out
    }
}

/// Interpretations for both options and the exact expected utilities.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpretationTuple {
    pub r1: ExtendedProbability,
    pub v1: Vec<ExtendedReal>,
    pub r2: ExtendedProbability,
    pub v2: Vec<ExtendedReal>,
    pub value1: ExtendedReal,
    pub value2: ExtendedReal,
    pub attempts: usize,
    pub directed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceReport {
    pub e1: OomValue,
    pub e2: OomValue,
    pub preference: Preference,
    /// Sampled tuples checked against a strict preference.
    pub samples: usize,
    pub failures: usize,
    pub counterexample: Option<InterpretationTuple>,
    /// With no strict preference: a tuple with `R₁(V₁) ≤ R₂(V₂)`.
    pub first_not_greater: Option<Search<InterpretationTuple>>,
    /// With no strict preference: a tuple with `R₂(V₂) ≤ R₁(V₁)`.
    pub second_not_greater: Option<Search<InterpretationTuple>>,
}

impl PreferenceReport {
    pub fn is_sound(&self) -> bool {
        self.failures == 0
    }

    /// Whether a witness search ran out of budget.
    pub fn exhausted(&self) -> bool {
        [&self.first_not_greater, &self.second_not_greater]
            .into_iter()
            .flatten()
            .any(|s| s.found().is_none())
    }
}

fn exact_expectation(r: &ExtendedProbability, v: &[ExtendedReal]) -> ExtendedReal {
    r.atoms().iter().zip(v).map(|(p, u)| p * u).sum()
}

struct Draw {
    r: ExtendedProbability,
    v: Vec<ExtendedReal>,
    value: ExtendedReal,
}

fn draw(opt: &DecisionOption, sampler: &mut StarSampler, pool: &[Rational]) -> Draw {
    let r = sample_prob_interpretation(&opt.probability, pool, sampler.rng());
    let v: Vec<ExtendedReal> = opt.utility.values.iter().map(|u| sampler.sample(*u)).collect();
    let value = exact_expectation(&r, &v);
    Draw { r, v, value }
}

/// A member of `u*` pushed towards `+∞` (`up`) or `−∞`, using coefficient
/// magnitude `scale` (or its reciprocal, where small is extreme).
fn extreme_member(u: OomValue, up: bool, scale: &Rational) -> ExtendedReal {
    let Order::Finite(n) = u.order() else {
        return ExtendedReal::zero();
    };
    let c = match (u.sign(), up) {
        (Sign::Pos, true) | (Sign::Zero, true) => scale.clone(),
        (Sign::Pos, false) => scale.recip(),
        (Sign::Neg, true) => -scale.recip(),
        (Sign::Neg, false) | (Sign::Zero, false) => -scale.clone(),
    };
    ExtendedReal::monomial(c, n)
}

fn extreme_draw(opt: &DecisionOption, up: bool, scale: &Rational) -> Draw {
    let ones = vec![Rational::one(); opt.probability.atoms().len()];
    let r = interpret_with(&opt.probability, &ones);
    let v: Vec<ExtendedReal> = opt.utility.values.iter().map(|u| extreme_member(*u, up, scale)).collect();
    let value = exact_expectation(&r, &v);
    Draw { r, v, value }
}

fn tuple(a: Draw, b: Draw, attempts: usize, directed: bool) -> InterpretationTuple {
    InterpretationTuple {
        r1: a.r,
        v1: a.v,
        r2: b.r,
        v2: b.v,
        value1: a.value,
        value2: b.value,
        attempts,
        directed,
    }
}

/// Scales tried by the directed witness construction.
const EXTREME_SCALES: [i64; 4] = [1, 10, 1000, 1_000_000];

/// Directed candidates first, then sampled ones, until `accept` holds.
fn search_draws<T>(
    budget: usize,
    cfg: &StarSamplerConfig,
    directed: impl Fn(&Rational) -> T,
    mut sampled: impl FnMut(&mut StarSampler, &[Rational]) -> T,
    accept: impl Fn(&T) -> bool,
) -> Search<(T, usize, bool)> {
    let mut attempts = 0;
    for s in EXTREME_SCALES {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let candidate = directed(&Rational::from_integer(BigInt::from(s)));
        if accept(&candidate) {
            return Search::Found((candidate, attempts, true));
        }
    }
    let pool = default_lambda_pool();
    let mut sampler = StarSampler::new(cfg.clone());
    while attempts < budget {
        if attempts == budget / 2 {
            let escalated = sampler.config().escalated();
            sampler.set_config(escalated);
        }
        attempts += 1;
        let candidate = sampled(&mut sampler, &pool);
        if accept(&candidate) {
            return Search::Found((candidate, attempts, false));
        }
    }
    Search::Exhausted { attempts }
}

/// Looks for interpretations with `R_lo(V_lo) ≤ R_hi(V_hi)`.
fn search_not_greater(
    lo: &DecisionOption,
    hi: &DecisionOption,
    cfg: &StarSamplerConfig,
    budget: usize,
) -> Search<InterpretationTuple> {
    let found = search_draws(
        budget,
        cfg,
        |scale| (extreme_draw(lo, false, scale), extreme_draw(hi, true, scale)),
        |sampler, pool| (draw(lo, sampler, pool), draw(hi, sampler, pool)),
        |(a, b)| a.value <= b.value,
    );
    match found {
        Search::Found(((a, b), attempts, directed)) => Search::Found(tuple(a, b, attempts, directed)),
        Search::Exhausted { attempts } => Search::Exhausted { attempts },
    }
}

/// One interpretation of a single option and its exact expected utility.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationWitness {
    pub r: ExtendedProbability,
    pub v: Vec<ExtendedReal>,
    pub value: ExtendedReal,
    pub attempts: usize,
    pub directed: bool,
}

/// Looks for an interpretation whose expected utility has the given nonzero
/// sign. Both exist exactly when the expectation is `(0, n)` with `n` finite.
pub fn expectation_witness(
    opt: &DecisionOption,
    sign: Sign,
    cfg: &StarSamplerConfig,
    budget: usize,
) -> Search<ExpectationWitness> {
    let up = sign == Sign::Pos;
    let found = search_draws(
        budget,
        cfg,
        |scale| extreme_draw(opt, up, scale),
        |sampler, pool| draw(opt, sampler, pool),
        |d| d.value.sign() == sign,
    );
    match found {
        Search::Found((d, attempts, directed)) => Search::Found(ExpectationWitness {
            r: d.r,
            v: d.v,
            value: d.value,
            attempts,
            directed,
        }),
        Search::Exhausted { attempts } => Search::Exhausted { attempts },
    }
}

/// Checks the comparison of two options against exact interpretations.
///
/// A strict preference is checked for soundness on `n_samples` sampled
/// tuples. Without one, witnesses breaking each strict direction are
/// searched for, up to `budget` candidates each.
pub fn verify_preference(
    opt1: &DecisionOption,
    opt2: &DecisionOption,
    cfg: &StarSamplerConfig,
    n_samples: usize,
    budget: usize,
) -> Result<PreferenceReport, DecisionError> {
    if opt1.probability.space() != opt2.probability.space() {
        return Err(DecisionError::SpaceMismatch);
    }
    let (e1, e2) = (opt1.expectation(), opt2.expectation());
    let preference = compare_options(e1, e2);
    let mut report = PreferenceReport {
        e1,
        e2,
        preference,
        samples: 0,
        failures: 0,
        counterexample: None,
        first_not_greater: None,
        second_not_greater: None,
    };

    if opt1.probability == opt2.probability && opt1.utility == opt2.utility {
        // a shared interpretation gives equal values
        let mut sampler = StarSampler::new(cfg.clone());
        let d = draw(opt1, &mut sampler, &default_lambda_pool());
        let shared = InterpretationTuple {
            r1: d.r.clone(),
            v1: d.v.clone(),
            r2: d.r,
            v2: d.v,
            value1: d.value.clone(),
            value2: d.value,
            attempts: 1,
            directed: true,
        };
        report.first_not_greater = Some(Search::Found(shared.clone()));
        report.second_not_greater = Some(Search::Found(shared));
        return Ok(report);
    }

    let pool = default_lambda_pool();
    match preference {
        Preference::FirstPreferred | Preference::SecondPreferred => {
            let first = preference == Preference::FirstPreferred;
            let mut sampler = StarSampler::new(cfg.clone());
            for i in 0..n_samples {
                let a = draw(opt1, &mut sampler, &pool);
                let b = draw(opt2, &mut sampler, &pool);
                report.samples += 1;
                let holds = if first { a.value > b.value } else { b.value > a.value };
                if !holds {
                    report.failures += 1;
                    report.counterexample.get_or_insert_with(|| tuple(a, b, i + 1, false));
                }
            }
        }
        Preference::NoStrictPreference => {
            report.first_not_greater = Some(search_not_greater(opt1, opt2, cfg, budget));
            let swapped = match search_not_greater(opt2, opt1, cfg, budget) {
                Search::Found(t) => Search::Found(InterpretationTuple {
                    r1: t.r2,
                    v1: t.v2,
                    r2: t.r1,
                    v2: t.v1,
                    value1: t.value2,
                    value2: t.value1,
                    attempts: t.attempts,
                    directed: t.directed,
                }),
                exhausted => exhausted,
            };
            report.second_not_greater = Some(swapped);
        }
    }
    Ok(report)
}

/// Pearl's `(n⁺, n⁻)` for a kappa function and integer utility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PearlLevels {
    pub n_plus: u64,
    pub n_minus: u64,
}

/// `n± = max_i (0, i − κ(W_i±))` with `W_i± = {ω : μ(ω) = ±i}`.
pub fn pearl_levels(k: &KappaFunction, mu: &PearlMu) -> Result<PearlLevels, DecisionError> {
    if k.space() != mu.space() {
        return Err(DecisionError::SpaceMismatch);
    }
    let level = |positive: bool| -> u64 {
        let grades: std::collections::BTreeSet<u64> = mu
            .values
            .iter()
            .filter(|m| if positive { **m > 0 } else { **m < 0 })
            .map(|m| m.unsigned_abs())
            .collect();
        grades
            .into_iter()
            .map(|i| {
                let w = mu
                    .values
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.unsigned_abs() == i && (**m > 0) == positive)
                    .map(|(idx, _)| idx)
                    .collect();
                match k.rank(&w) {
                    Rank::Finite(kw) => i.saturating_sub(kw),
                    Rank::Infinite => 0,
                }
            })
            .max()
            .unwrap_or(0)
    };
    Ok(PearlLevels {
        n_plus: level(true),
        n_minus: level(false),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PearlValue {
    Value(i64),
    Ambiguous,
}

impl fmt::Display for PearlValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PearlValue::Value(e) => write!(f, "{e}"),
            PearlValue::Ambiguous => f.write_str("ambiguous"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PearlRule {
    /// `n⁺ − n⁻` unless ambiguous.
    Original,
    /// The dominant level with its sign.
    Amended,
}

pub fn pearl_expected(levels: PearlLevels, rule: PearlRule) -> PearlValue {
    let (p, m) = (levels.n_plus as i64, levels.n_minus as i64);
    if p == m && p > 0 {
        return PearlValue::Ambiguous;
    }
    PearlValue::Value(match rule {
        PearlRule::Original => p - m,
        PearlRule::Amended => match p.cmp(&m) {
            Ordering::Equal => 0,
            Ordering::Greater => p,
            Ordering::Less => -m,
        },
    })
}

/// The expected utility predicted from the levels alone.
pub fn four_case(levels: PearlLevels) -> OomValue {
    let (p, m) = (levels.n_plus as i64, levels.n_minus as i64);
    match p.cmp(&m) {
        Ordering::Equal => OomValue::signless(-p),
        Ordering::Greater => OomValue::pos(-p),
        Ordering::Less => OomValue::neg(-m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PearlCheck {
    pub levels: PearlLevels,
    pub original: PearlValue,
    pub amended: PearlValue,
    /// `P(U)` computed directly.
    pub expectation: OomValue,
    /// `P(U)` predicted by the four-case rule.
    pub predicted: OomValue,
}

impl PearlCheck {
    pub fn agrees(&self) -> bool {
        self.expectation == self.predicted
    }
}

pub fn pearl_cross_check(k: &KappaFunction, mu: &PearlMu) -> Result<PearlCheck, DecisionError> {
    let levels = pearl_levels(k, mu)?;
    Ok(PearlCheck {
        levels,
        original: pearl_expected(levels, PearlRule::Original),
        amended: pearl_expected(levels, PearlRule::Amended),
        expectation: expect(&k.to_oom(), &mu.to_utility())?,
        predicted: four_case(levels),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Rank::{Finite as F, Infinite as Inf};

    fn space(n: usize) -> OutcomeSpace {
        OutcomeSpace::new((1..=n).map(|i| format!("w{i}"))).unwrap()
    }

    fn kappa(ranks: &[Rank]) -> KappaFunction {
        KappaFunction::new(space(ranks.len()), ranks.to_vec()).unwrap()
    }

    fn mu(values: &[i64]) -> PearlMu {
        PearlMu::new(space(values.len()), values.to_vec()).unwrap()
    }

    fn utility(values: &[OomValue]) -> OomUtility {
        OomUtility::new(space(values.len()), values.to_vec()).unwrap()
    }

    fn option(name: &str, k: &[Rank], m: &[i64]) -> DecisionOption {
        DecisionOption::from_kappa_mu(name, &kappa(k), &mu(m)).unwrap()
    }

    #[test]
    fn expectation_examples() {
        let p = kappa(&[F(0), F(0)]).to_oom();
        assert_eq!(expect(&p, &utility(&[OomValue::pos(-4), OomValue::neg(-3)])).unwrap(), OomValue::pos(-4));
        assert_eq!(
            expect(&p, &utility(&[OomValue::pos(-2), OomValue::neg(-2)])).unwrap(),
            OomValue::signless(-2)
        );
        let lambda = OomValue::neg(3);
        assert_eq!(expect(&p, &OomUtility::constant(space(2), lambda)).unwrap(), lambda);
    }

    #[test]
    fn closed_form_examples() {
        let k = kappa(&[F(0), F(0)]);
        let u = utility(&[OomValue::pos(-4), OomValue::neg(-3)]);
        assert_eq!(expect_closed_form(&k, &u).unwrap(), OomValue::pos(-4));
        let zeros = utility(&[OomValue::ZERO, OomValue::ZERO]);
        assert_eq!(expect_closed_form(&k, &zeros).unwrap(), OomValue::ZERO);
        // infinite-rank outcomes drop out
        let k = kappa(&[F(0), Inf]);
        let u = utility(&[OomValue::neg(2), OomValue::pos(-9)]);
        assert_eq!(expect_closed_form(&k, &u).unwrap(), OomValue::neg(2));
        assert_eq!(expect(&k.to_oom(), &u).unwrap(), OomValue::neg(2));
    }

    #[test]
    fn space_mismatch() {
        let p = kappa(&[F(0)]).to_oom();
        assert_eq!(expect(&p, &utility(&[OomValue::ONE, OomValue::ONE])), Err(DecisionError::SpaceMismatch));
        assert!(matches!(
            OomUtility::new(space(2), vec![OomValue::ONE]),
            Err(DecisionError::WrongLength { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn option_comparison() {
        use Preference::*;
        assert_eq!(compare_options(OomValue::signless(-2), OomValue::neg(-5)), FirstPreferred);
        assert_eq!(compare_options(OomValue::neg(-5), OomValue::signless(-2)), SecondPreferred);
        assert_eq!(compare_options(OomValue::ONE, OomValue::ONE), NoStrictPreference);
        assert_eq!(compare_options(OomValue::signless(0), OomValue::MINUS_ONE), NoStrictPreference);
    }

    #[test]
    fn mu_translation() {
        assert_eq!(PearlMu::grade_to_oom(4), OomValue::pos(-4));
        assert_eq!(PearlMu::grade_to_oom(-5), OomValue::neg(-5));
        assert_eq!(PearlMu::grade_to_oom(0), OomValue::signless(0));
        assert_eq!(mu_to_utility(&mu(&[1, 0])).values(), &[OomValue::pos(-1), OomValue::signless(0)]);
    }

    #[test]
    fn pearl_levels_examples() {
        let k = kappa(&[F(0), F(0)]);
        let lv = |m: &[i64]| pearl_levels(&k, &mu(m)).unwrap();
        assert_eq!(lv(&[4, -3]), PearlLevels { n_plus: 4, n_minus: 3 });
        assert_eq!(lv(&[0, 0]), PearlLevels { n_plus: 0, n_minus: 0 });
        assert_eq!(lv(&[-5, -5]), PearlLevels { n_plus: 0, n_minus: 5 });
        // surprise discounts the grade; impossible outcomes contribute nothing
        let k = kappa(&[F(0), F(2), Inf]);
        let levels = pearl_levels(&k, &mu(&[1, 3, 7])).unwrap();
        assert_eq!(levels, PearlLevels { n_plus: 1, n_minus: 0 });
    }

    #[test]
    fn pearl_rules() {
        use PearlRule::*;
        use PearlValue::*;
        let l = |p, m| PearlLevels { n_plus: p, n_minus: m };
        assert_eq!(pearl_expected(l(4, 3), Original), Value(1));
        assert_eq!(pearl_expected(l(4, 3), Amended), Value(4));
        assert_eq!(pearl_expected(l(2, 2), Original), Ambiguous);
        assert_eq!(pearl_expected(l(2, 2), Amended), Ambiguous);
        assert_eq!(pearl_expected(l(0, 5), Amended), Value(-5));
        assert_eq!(pearl_expected(l(0, 5), Original), Value(-5));
        assert_eq!(pearl_expected(l(0, 0), Amended), Value(0));
    }

    #[test]
    fn cross_check_examples() {
        let k = kappa(&[F(0), F(0)]);
        let c = pearl_cross_check(&k, &mu(&[4, -3])).unwrap();
        assert_eq!(c.expectation, OomValue::pos(-4));
        assert!(c.agrees());
        let c = pearl_cross_check(&k, &mu(&[2, -2])).unwrap();
        assert_eq!(c.expectation, OomValue::signless(-2));
        assert_eq!(c.original, PearlValue::Ambiguous);
        assert!(c.agrees());
        let c = pearl_cross_check(&k, &mu(&[0, 0])).unwrap();
        assert_eq!(c.expectation, OomValue::signless(0));
        assert_eq!(c.amended, PearlValue::Value(0));
        assert!(c.agrees());
    }

    #[test]
    fn second_example_preference_is_sound() {
        let o1 = option("option1", &[F(0), F(0)], &[2, -2]);
        let o2 = option("option2", &[F(0), F(0)], &[-5, -5]);
        let report = verify_preference(&o1, &o2, &StarSamplerConfig::with_seed(7), 200, 100).unwrap();
        assert_eq!(report.preference, Preference::FirstPreferred);
        assert_eq!(report.samples, 200);
        assert!(report.is_sound());
        assert!(report.first_not_greater.is_none());
        // the Pearl rule cannot separate them
        let l2 = pearl_levels(&kappa(&[F(0), F(0)]), &mu(&[-5, -5])).unwrap();
        assert_eq!(pearl_expected(l2, PearlRule::Amended), PearlValue::Value(-5));
    }

    #[test]
    fn reversed_preference_is_sound() {
        let o1 = option("a", &[F(0), F(1)], &[-3, 0]);
        let o2 = option("b", &[F(1), F(0)], &[1, 1]);
        let report = verify_preference(&o1, &o2, &StarSamplerConfig::with_seed(3), 50, 10).unwrap();
        assert_eq!(report.preference, Preference::SecondPreferred);
        assert!(report.is_sound());
    }

    #[test]
    fn identical_options_short_circuit() {
        let o = option("same", &[F(0), F(3)], &[2, -1]);
        let report = verify_preference(&o, &o, &StarSamplerConfig::default(), 10, 10).unwrap();
        assert_eq!(report.preference, Preference::NoStrictPreference);
        let w = report.first_not_greater.as_ref().unwrap().found().unwrap();
        assert_eq!(w.value1, w.value2);
        assert!(!report.exhausted());
    }

    #[test]
    fn incomparable_options_have_witnesses() {
        let o1 = option("amb", &[F(0), F(0)], &[2, -2]);
        let o2 = option("pos", &[F(0), F(0)], &[2, 1]);
        let report = verify_preference(&o1, &o2, &StarSamplerConfig::with_seed(11), 10, 1000).unwrap();
        assert_eq!(report.preference, Preference::NoStrictPreference);
        assert!(!report.exhausted());
        let a = report.first_not_greater.unwrap();
        let a = a.found().unwrap();
        assert!(a.value1 <= a.value2);
        let b = report.second_not_greater.unwrap();
        let b = b.found().unwrap();
        assert!(b.value2 <= b.value1);
        assert_eq!(b.r1.classify(), *o1.probability());
    }

    #[test]
    fn ambiguous_option_takes_both_signs() {
        let o = option("amb", &[F(0), F(0)], &[2, -2]);
        let cfg = StarSamplerConfig::with_seed(5);
        for sign in [Sign::Pos, Sign::Neg] {
            let w = expectation_witness(&o, sign, &cfg, 100);
            let w = w.found().unwrap();
            assert_eq!(w.value.sign(), sign);
            assert_eq!(w.r.classify(), *o.probability());
        }
        let definite = option("pos", &[F(0), F(0)], &[2, 1]);
        assert_eq!(
            expectation_witness(&definite, Sign::Neg, &cfg, 50),
            Search::Exhausted { attempts: 50 }
        );
    }

    #[test]
    fn problem_preferences() {
        let o1 = option("o1", &[F(0), F(0)], &[2, -2]);
        let o2 = option("o2", &[F(0), F(0)], &[-5, -5]);
        let o3 = option("o3", &[F(0), F(0)], &[6, 0]);
        let problem = DecisionProblem::new(space(2), vec![o1, o2, o3]).unwrap();
        assert_eq!(
            problem.preferences(),
            vec![
                (0, 1, Preference::FirstPreferred),
                (0, 2, Preference::SecondPreferred),
                (1, 2, Preference::SecondPreferred),
            ]
        );
    }
}
