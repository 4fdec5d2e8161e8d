//! Kappa functions, order-of-magnitude probability, and their probabilistic
//! interpretations over a finite outcome space.
//!
//! A kappa rank `m` corresponds to the order-of-magnitude probability `(+, m)`
//! and rank `∞` to `0`; under that relabelling `min` is addition, `+` is
//! multiplication and `<` is the reversed order.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::extended_reals::{ExtendedReal, Polynomial, Rational};
use crate::oom::{OomValue, Order, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("outcome space must be non-empty")]
    EmptySpace,
    #[error("duplicate outcome {0:?}")]
    DuplicateOutcome(String),
    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),
    #[error("expected {expected} atom values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("no outcome has rank 0")]
    NotNormalized,
    #[error("conditioning event has rank ∞")]
    ConditionImpossible,
    #[error("conditioning event has a non-invertible probability {0}")]
    ConditionNotInvertible(OomValue),
    #[error("atom value {0} is outside [0,1]°")]
    OutOfRange(OomValue),
    #[error("invalid extended probability: {0}")]
    InvalidDistribution(&'static str),
}

/// Indices into an [`OutcomeSpace`].
pub type Event = BTreeSet<usize>;

/// A non-empty ordered list of distinct outcome labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSpace {
    labels: Vec<String>,
}

impl OutcomeSpace {
    pub fn new<I, S>(labels: I) -> Result<Self, KappaError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(KappaError::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(KappaError::DuplicateOutcome(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize, KappaError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| KappaError::UnknownOutcome(label.to_string()))
    }

    pub fn event<S: AsRef<str>>(&self, labels: &[S]) -> Result<Event, KappaError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// The whole space `Ω`.
    pub fn all(&self) -> Event {
        (0..self.len()).collect()
    }

    fn check_len(&self, got: usize) -> Result<(), KappaError> {
        if got == self.len() {
            Ok(())
        } else {
            Err(KappaError::WrongLength {
                expected: self.len(),
                got,
            })
        }
    }
}

/// A kappa rank: a natural number or `∞`. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u64),
    Infinite,
}

impl Add for Rank {
    type Output = Rank;

    fn add(self, rhs: Rank) -> Rank {
        match (self, rhs) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Infinite,
        }
    }
}

impl Rank {
    /// The corresponding order-of-magnitude probability.
    pub fn to_oom(self) -> OomValue {
        match self {
            Rank::Finite(m) => OomValue::pos(m as i64),
            Rank::Infinite => OomValue::ZERO,
        }
    }

    /// Inverse of [`Rank::to_oom`]; `None` outside `[0,1]°`.
    pub fn from_oom(v: OomValue) -> Option<Rank> {
        match (v.sign(), v.order()) {
            (Sign::Zero, Order::Infinite) => Some(Rank::Infinite),
            (Sign::Pos, Order::Finite(m)) if m >= 0 => Some(Rank::Finite(m as u64)),
            _ => None,
        }
    }

    /// `2^(−rank)`, with `∞ ↦ 0`.
    pub fn possibility(self) -> Rational {
        match self {
            Rank::Finite(m) => {
                let den: BigInt = num_traits::pow(BigInt::from(2), m as usize);
                Rational::new(BigInt::one(), den)
            }
            Rank::Infinite => Rational::zero(),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(m) => write!(f, "{m}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// Atom ranks; some atom has rank 0 so that `κ(Ω) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KappaFunction {
    space: OutcomeSpace,
    ranks: Vec<Rank>,
}

impl KappaFunction {
    pub fn new(space: OutcomeSpace, ranks: Vec<Rank>) -> Result<Self, KappaError> {
        space.check_len(ranks.len())?;
        if !ranks.contains(&Rank::Finite(0)) {
            return Err(KappaError::NotNormalized);
        }
        Ok(Self { space, ranks })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.ranks
    }

    /// `κ(A) = min` over the atoms of `A`; `∞` for the empty event.
    pub fn rank(&self, event: &Event) -> Rank {
        event.iter().map(|&i| self.ranks[i]).min().unwrap_or(Rank::Infinite)
    }

    /// Rank of the event named by `labels`.
    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Rank, KappaError> {
        Ok(self.rank(&self.space.event(labels)?))
    }

    /// `κ(A|B) = κ(A∩B) − κ(B)`.
    pub fn conditional(&self, a: &Event, b: &Event) -> Result<Rank, KappaError> {
        let Rank::Finite(kb) = self.rank(b) else {
            return Err(KappaError::ConditionImpossible);
        };
        let joint: Event = a.intersection(b).copied().collect();
        Ok(match self.rank(&joint) {
            Rank::Finite(kab) => Rank::Finite(kab - kb),
            Rank::Infinite => Rank::Infinite,
        })
    }

    pub fn to_oom(&self) -> OomProbability {
        OomProbability {
            space: self.space.clone(),
            atoms: self.ranks.iter().map(|r| r.to_oom()).collect(),
        }
    }

    /// The possibility distribution `2^(−κ)` per atom.
    pub fn possibility(&self) -> Vec<Rational> {
        self.ranks.iter().map(|r| r.possibility()).collect()
    }
}

/// An order-of-magnitude probability given by its atoms, each in
/// `[0,1]° = {(+, m) : m ≥ 0} ∪ {0}`, with at least one atom equal to `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OomProbability {
    space: OutcomeSpace,
    atoms: Vec<OomValue>,
}

impl OomProbability {
    pub fn new(space: OutcomeSpace, atoms: Vec<OomValue>) -> Result<Self, KappaError> {
        space.check_len(atoms.len())?;
        if let Some(bad) = atoms.iter().find(|a| Rank::from_oom(**a).is_none()) {
            return Err(KappaError::OutOfRange(*bad));
        }
        if !atoms.contains(&OomValue::ONE) {
            return Err(KappaError::NotNormalized);
        }
        Ok(Self { space, atoms })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn atoms(&self) -> &[OomValue] {
        &self.atoms
    }

    /// `P(A)`, the sum of its atoms.
    pub fn prob(&self, event: &Event) -> OomValue {
        event.iter().map(|&i| self.atoms[i]).sum()
    }

    /// `P(A|B) = P(A∩B) / P(B)`.
    pub fn conditional(&self, a: &Event, b: &Event) -> Result<OomValue, KappaError> {
        let pb = self.prob(b);
        let joint: Event = a.intersection(b).copied().collect();
        self.prob(&joint)
            .checked_div(pb)
            .map_err(|_| KappaError::ConditionNotInvertible(pb))
    }

    pub fn to_kappa(&self) -> KappaFunction {
        KappaFunction {
            space: self.space.clone(),
            ranks: self
                .atoms
                .iter()
                .map(|a| Rank::from_oom(*a).expect("atoms validated on construction"))
                .collect(),
        }
    }
}

/// An exact probability over the extended reals: atoms in `[0,1]*` summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedProbability {
    space: OutcomeSpace,
    atoms: Vec<ExtendedReal>,
}

impl ExtendedProbability {
    pub fn new(space: OutcomeSpace, atoms: Vec<ExtendedReal>) -> Result<Self, KappaError> {
        space.check_len(atoms.len())?;
        let (zero, one) = (ExtendedReal::zero(), ExtendedReal::one());
        if atoms.iter().any(|a| a < &zero || a > &one) {
            return Err(KappaError::InvalidDistribution("atom outside [0,1]"));
        }
        if atoms.iter().cloned().sum::<ExtendedReal>() != one {
            return Err(KappaError::InvalidDistribution("atoms do not sum to 1"));
        }
        Ok(Self { space, atoms })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn atoms(&self) -> &[ExtendedReal] {
        &self.atoms
    }

    pub fn prob(&self, event: &Event) -> ExtendedReal {
        event.iter().map(|&i| self.atoms[i].clone()).sum()
    }

    pub fn conditional(&self, a: &Event, b: &Event) -> Result<ExtendedReal, KappaError> {
        let joint: Event = a.intersection(b).copied().collect();
        self.prob(&joint)
            .checked_div(&self.prob(b))
            .map_err(|_| KappaError::ConditionImpossible)
    }

    /// The unique order-of-magnitude probability this is an interpretation of.
    pub fn classify(&self) -> OomProbability {
        OomProbability::new(self.space.clone(), self.atoms.iter().map(ExtendedReal::classify).collect())
            .expect("a distribution summing to 1 has an atom of order 0")
    }
}

/// The default positive coefficients `{1, 2, 3, 1/2, 5/2}` for probability atoms.
pub fn default_lambda_pool() -> Vec<Rational> {
    [(1, 1), (2, 1), (3, 1), (1, 2), (5, 2)]
        .into_iter()
        .map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// `R(ω) = λ_ω ε^{m_ω} / Z` for atoms `(+, m_ω)`, `R(ω) = 0` for zero atoms,
/// where `Z = Σ λ_ω ε^{m_ω}`. Every `λ` must be positive.
pub fn interpret_with(p: &OomProbability, lambdas: &[Rational]) -> ExtendedProbability {
    assert_eq!(lambdas.len(), p.atoms.len(), "one coefficient per atom");
    let ranks = p.to_kappa().ranks;
    let terms: Vec<Polynomial> = ranks
        .iter()
        .zip(lambdas)
        .map(|(r, l)| match r {
            Rank::Finite(m) => Polynomial::monomial(l.clone(), *m as u32),
            Rank::Infinite => Polynomial::zero(),
        })
        .collect();
    let z = terms.iter().fold(Polynomial::zero(), |acc, t| &acc + t);
    let atoms = terms
        .into_iter()
        .map(|t| ExtendedReal::from_fraction(t, z.clone()).expect("normalisation constant is nonzero"))
        .collect();
    ExtendedProbability::new(p.space.clone(), atoms).expect("normalised atoms form a distribution")
}

/// Draws a probabilistic interpretation with coefficients taken from `pool`.
pub fn sample_prob_interpretation<R: Rng + ?Sized>(
    p: &OomProbability,
    pool: &[Rational],
    rng: &mut R,
) -> ExtendedProbability {
    let lambdas: Vec<Rational> = (0..p.atoms.len())
        .map(|_| pool.choose(rng).expect("non-empty pool").clone())
        .collect();
    interpret_with(p, &lambdas)
}
