//! Random instance generators and independent oracles shared by the
//! integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use oomcalc::decision::{OomUtility, PearlMu};
use oomcalc::formulas::{Formula, Instantiation};
use oomcalc::kappa::{KappaFunction, OomProbability, OutcomeSpace, Rank};
use oomcalc::{ExtendedReal, OomValue, Order, Polynomial, Rational, Sign};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// All `(σ, n)` with `n ∈ [lo, hi]`, plus the zero element.
pub fn window(lo: i64, hi: i64) -> Vec<OomValue> {
    let mut out = vec![OomValue::ZERO];
    for n in lo..=hi {
        out.extend([OomValue::pos(n), OomValue::neg(n), OomValue::signless(n)]);
    }
    out
}

pub fn random_oom<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> OomValue {
    let n = rng.gen_range(lo..=hi);
    match rng.gen_range(0..10) {
        0..=3 => OomValue::pos(n),
        4..=7 => OomValue::neg(n),
        8 => OomValue::signless(n),
        _ => OomValue::ZERO,
    }
}

/// A random symbol-linear formula of depth at most `depth`, numbering its
/// symbols from `*next`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, next: &mut usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        *next += 1;
        return Formula::symbol(*next - 1);
    }
    match rng.gen_range(0..6) {
        0 => Formula::neg(random_formula(rng, depth - 1, next)),
        1 => Formula::inv(random_formula(rng, depth - 1, next)),
        2 | 3 => {
            let l = random_formula(rng, depth - 1, next);
            Formula::add(l, random_formula(rng, depth - 1, next)).expect("fresh symbols")
        }
        _ => {
            let l = random_formula(rng, depth - 1, next);
            Formula::mul(l, random_formula(rng, depth - 1, next)).expect("fresh symbols")
        }
    }
}

pub fn random_instantiation<R: Rng>(rng: &mut R, f: &Formula, lo: i64, hi: i64) -> Instantiation<OomValue> {
    f.symbols().into_iter().map(|s| (s, random_oom(rng, lo, hi))).collect()
}

fn random_coeff<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=5);
    q(n, d)
}

pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: u32) -> Polynomial {
    Polynomial::from_terms((0..=max_degree).map(|d| (d, random_coeff(rng))))
}

/// A random nonzero extended real with a few terms above and below.
pub fn random_nonzero_er<R: Rng>(rng: &mut R) -> ExtendedReal {
    loop {
        let num = random_polynomial(rng, 3);
        let den = random_polynomial(rng, 2);
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let shift = rng.gen_range(-3..=3);
        let r = ExtendedReal::from_parts(shift, num, den).expect("nonzero denominator");
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_er<R: Rng>(rng: &mut R) -> ExtendedReal {
    if rng.gen_ratio(1, 20) {
        ExtendedReal::zero()
    } else {
        random_nonzero_er(rng)
    }
}

pub fn labels(n: usize) -> OutcomeSpace {
    OutcomeSpace::new((1..=n).map(|i| format!("w{i}"))).expect("distinct labels")
}

/// Ranks in `0..=max` or `∞`, with at least one rank 0.
pub fn random_kappa<R: Rng>(rng: &mut R, size: usize, max: u64) -> KappaFunction {
    let mut ranks: Vec<Rank> = (0..size)
        .map(|_| {
            if rng.gen_ratio(1, 6) {
                Rank::Infinite
            } else {
                Rank::Finite(rng.gen_range(0..=max))
            }
        })
        .collect();
    let anchor = rng.gen_range(0..size);
    ranks[anchor] = Rank::Finite(0);
    KappaFunction::new(labels(size), ranks).expect("normalised")
}

pub fn random_probability<R: Rng>(rng: &mut R, size: usize) -> OomProbability {
    random_kappa(rng, size, 5).to_oom()
}

pub fn random_utility<R: Rng>(rng: &mut R, size: usize) -> OomUtility {
    OomUtility::new(labels(size), (0..size).map(|_| random_oom(rng, -4, 4)).collect()).expect("sized")
}

pub fn random_mu<R: Rng>(rng: &mut R, size: usize) -> PearlMu {
    PearlMu::new(labels(size), (0..size).map(|_| rng.gen_range(-6..=6)).collect()).expect("sized")
}

pub fn random_event<R: Rng>(rng: &mut R, size: usize) -> oomcalc::kappa::Event {
    (0..size).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn choose<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty")
}

/// Sign and order of an extended real read directly off its lowest-degree
/// numerator and denominator terms, without relying on any normal form.
pub fn oracle_classify(r: &ExtendedReal) -> OomValue {
    let lowest = |p: &Polynomial| p.terms().find(|(_, c)| !c.is_zero()).map(|(d, c)| (d as i64, c.clone()));
    let Some((dn, cn)) = lowest(r.numerator()) else {
        return OomValue::ZERO;
    };
    let (dd, cd) = lowest(r.denominator()).expect("nonzero denominator");
    let order = r.shift() + dn - dd;
    if (cn / cd).is_positive() {
        OomValue::pos(order)
    } else {
        OomValue::neg(order)
    }
}

/// Membership in `a*` decided with [`oracle_classify`].
pub fn oracle_member(r: &ExtendedReal, a: OomValue) -> bool {
    let c = oracle_classify(r);
    match (a.sign(), a.order()) {
        (Sign::Zero, Order::Infinite) => r.is_zero(),
        (Sign::Zero, Order::Finite(m)) => match c.order() {
            Order::Infinite => true,
            Order::Finite(k) => k >= m,
        },
        _ => c == a,
    }
}

/// `Σ cᵢ xⁱ` by repeated multiplication.
pub fn oracle_poly_eval(p: &Polynomial, x: &Rational) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (d, c)| {
        let mut power = Rational::one();
        for _ in 0..d {
            power *= x;
        }
        acc + c * power
    })
}

/// The value of an extended real at `ε = x > 0`.
pub fn oracle_eval(r: &ExtendedReal, x: &Rational) -> Rational {
    let mut scale = Rational::one();
    let base = if r.shift() >= 0 { x.clone() } else { x.recip() };
    for _ in 0..r.shift().unsigned_abs() {
        scale *= &base;
    }
    oracle_poly_eval(r.numerator(), x) / oracle_poly_eval(r.denominator(), x) * scale
}
