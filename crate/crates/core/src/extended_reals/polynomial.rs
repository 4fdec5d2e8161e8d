//! Sparse univariate polynomials in ε with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A polynomial stored as a map from degree to coefficient.
///
/// No stored coefficient is ever zero, so the zero polynomial is the empty map
/// and structural equality coincides with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · ε^degree`; the zero polynomial when `c` is zero.
    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, summing repeated
    /// degrees and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (d, c) in terms {
            *coeffs.entry(d).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    /// Dense constructor from ascending integer coefficients, mainly for tests.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, Rational::from_integer(c.into()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// Multiplies by `ε^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (d + k, v.clone())).collect(),
        }
    }

    /// Divides by `ε^k`. Every stored degree must be at least `k`.
    pub fn shift_down(&self, k: u32) -> Self {
        debug_assert!(self.ord().map_or(true, |o| o >= k));
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (d - k, v.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the sparse representation, highest degree first.
        let mut acc = Rational::zero();
        let mut prev: Option<u32> = None;
        for (d, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow(x, p - d);
            }
            acc += c;
            prev = Some(*d);
        }
        if let Some(p) = prev {
            acc *= pow(x, p);
        }
        acc
    }

    /// Sum of absolute values of every coefficient except the lowest-degree one.
    pub fn tail_abs_sum(&self) -> Rational {
        self.coeffs
            .values()
            .skip(1)
            .fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    fn leading(&self) -> Option<(u32, &Rational)> {
        self.coeffs.iter().next_back().map(|(d, c)| (*d, c))
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let (dd, dc) = divisor.leading().expect("division by the zero polynomial");
        let dc = dc.clone();
        let mut quotient = BTreeMap::new();
        let mut rem = self.clone();
        while let Some((rd, rc)) = rem.leading() {
            if rd < dd {
                break;
            }
            let factor = rc / &dc;
            let shift = rd - dd;
            quotient.insert(shift, factor.clone());
            let sub = divisor.scale(&factor).shift_up(shift);
            rem = &rem - &sub;
        }
        (Polynomial { coeffs: quotient }, rem)
    }

    /// Greatest common divisor, normalised to be monic in its highest degree.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                a.scale(&inv)
            }
            None => a,
        }
    }
}

pub(crate) fn pow(x: &Rational, exp: u32) -> Rational {
    num_traits::pow(x.clone(), exp as usize)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        for (d, c) in &rhs.coeffs {
            let entry = coeffs.entry(*d).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(d);
            }
        }
        Polynomial { coeffs }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .flat_map(|(d1, c1)| rhs.coeffs.iter().map(move |(d2, c2)| (d1 + d2, c1 * c2))),
        )
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Renders ascending-degree terms, e.g. `1 - 3/2*e + e^4`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match d {
                0 => None,
                1 => Some("e".to_string()),
                _ => Some(format!("e^{d}")),
            };
            match var {
                None => write!(f, "{mag}")?,
                Some(v) if mag.is_one() => f.write_str(&v)?,
                Some(v) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}
