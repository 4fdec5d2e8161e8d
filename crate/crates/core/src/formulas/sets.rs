//! Pointwise arithmetic on finite sets of extended reals.

use super::{Carrier, FormulaError};
use crate::extended_reals::ExtendedReal;

/// A finite set of extended reals, deduplicated under exact equality.
#[derive(Debug, Clone, Default)]
pub struct FiniteSet {
    items: Vec<ExtendedReal>,
}

impl FiniteSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: ExtendedReal) -> bool {
        if self.contains(&value) {
            false
        } else {
            self.items.push(value);
            true
        }
    }

    pub fn contains(&self, value: &ExtendedReal) -> bool {
        self.items.iter().any(|v| v == value)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExtendedReal> {
        self.items.iter()
    }

    fn pairwise(&self, other: &Self, op: impl Fn(&ExtendedReal, &ExtendedReal) -> ExtendedReal) -> Self {
        self.items
            .iter()
            .flat_map(|s| other.items.iter().map(|t| op(s, t)).collect::<Vec<_>>())
            .collect()
    }

    /// `{s + t}`.
    pub fn add(&self, other: &Self) -> Self {
        self.pairwise(other, |s, t| s + t)
    }

    /// `{s · t}`.
    pub fn mul(&self, other: &Self) -> Self {
        self.pairwise(other, |s, t| s * t)
    }

    pub fn neg(&self) -> Self {
        self.items.iter().map(|s| -s).collect()
    }

    pub fn inv(&self) -> Result<Self, FormulaError> {
        self.items
            .iter()
            .map(|s| s.recip().map_err(|_| FormulaError::ZeroInSet))
            .collect()
    }
}

impl FromIterator<ExtendedReal> for FiniteSet {
    fn from_iter<I: IntoIterator<Item = ExtendedReal>>(iter: I) -> Self {
        let mut set = FiniteSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// Set equality, ignoring insertion order.
impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.items.iter().all(|v| other.contains(v))
    }
}

impl Eq for FiniteSet {}

impl Carrier for FiniteSet {
    fn sum(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }

    fn product(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn negated(&self) -> Self {
        self.neg()
    }

    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}
