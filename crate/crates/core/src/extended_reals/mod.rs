//! The extended reals: rational functions in an infinitesimal `ε > 0`.
//!
//! Every nonzero value is stored as `ε^shift · num / den` where both `num` and
//! `den` have a nonzero constant term and `den` has constant term exactly one.
//! With that normalisation the order of a value is `shift` and its leading
//! coefficient is the constant term of `num`, so sign, order and comparison
//! never need root finding.
//!
//! Values are ordered by their behaviour as `ε → 0⁺`, which makes the type an
//! ordered field. All arithmetic is exact.

mod parse;
mod polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::oom::{OomValue, Order, Sign};

pub use parse::ParseError;
pub use polynomial::Polynomial;

/// Exact rational coefficients.
pub type Rational = BigRational;

/// Denominators above this degree are gcd-reduced after each operation.
const REDUCE_DEGREE: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendedRealError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at x = {0}")]
    PoleAtPoint(Rational),
    #[error("operation is undefined for zero")]
    ZeroValue,
}

/// An element of `R(ε)`.
#[derive(Clone)]
pub struct ExtendedReal {
    shift: i64,
    num: Polynomial,
    den: Polynomial,
}

impl ExtendedReal {
    pub fn zero() -> Self {
        Self {
            shift: 0,
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The infinitesimal `ε` itself.
    pub fn epsilon() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `c · ε^k` for any integer `k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            shift: k,
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    /// Canonicalises the rational function `num / den`.
    pub fn from_fraction(num: Polynomial, den: Polynomial) -> Result<Self, ExtendedRealError> {
        Self::from_parts(0, num, den)
    }

    /// Canonicalises `ε^shift · num / den`.
    pub fn from_parts(shift: i64, num: Polynomial, den: Polynomial) -> Result<Self, ExtendedRealError> {
        let den_ord = den.ord().ok_or(ExtendedRealError::ZeroDenominator)?;
        let Some(num_ord) = num.ord() else {
            return Ok(Self::zero());
        };
        let num = num.shift_down(num_ord);
        let den = den.shift_down(den_ord);
        let norm = den.constant_term().recip();
        let mut value = Self {
            shift: shift + i64::from(num_ord) - i64::from(den_ord),
            num: num.scale(&norm),
            den: den.scale(&norm),
        };
        if value.den.degree().unwrap_or(0) > REDUCE_DEGREE {
            value = value.reduce();
        }
        Ok(value)
    }

    /// Divides out the polynomial gcd of numerator and denominator. The value is
    /// unchanged; afterwards the representation is unique.
    pub fn reduce(&self) -> Self {
        if self.is_zero() || self.den.is_one() {
            return self.clone();
        }
        let g = self.num.gcd(&self.den);
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (num, _) = self.num.div_rem(&g);
        let (den, _) = self.den.div_rem(&g);
        let norm = den.constant_term().recip();
        Self {
            shift: self.shift,
            num: num.scale(&norm),
            den: den.scale(&norm),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The ε-exponent of the leading term; `Order::Infinite` for zero.
    pub fn order(&self) -> Order {
        if self.is_zero() {
            Order::Infinite
        } else {
            Order::Finite(self.shift)
        }
    }

    /// Coefficient of the leading term (zero for the zero value).
    pub fn leading_coefficient(&self) -> Rational {
        self.num.constant_term()
    }

    pub fn sign(&self) -> Sign {
        let lead = self.leading_coefficient();
        if lead.is_positive() {
            Sign::Pos
        } else if lead.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// The order-of-magnitude abstraction `(sign, order)`; `(0, ∞)` for zero.
    pub fn classify(&self) -> OomValue {
        match self.order() {
            Order::Infinite => OomValue::ZERO,
            Order::Finite(n) => OomValue::new(self.sign(), Order::Finite(n))
                .expect("nonzero extended reals have a nonzero sign"),
        }
    }

    pub fn recip(&self) -> Result<Self, ExtendedRealError> {
        if self.is_zero() {
            return Err(ExtendedRealError::DivisionByZero);
        }
        Self::from_parts(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExtendedRealError> {
        if rhs.is_zero() {
            return Err(ExtendedRealError::DivisionByZero);
        }
        Self::from_parts(self.shift - rhs.shift, &self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Substitutes the rational `x` for ε.
    pub fn eval(&self, x: &Rational) -> Result<Rational, ExtendedRealError> {
        let pole = || ExtendedRealError::PoleAtPoint(x.clone());
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(pole());
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let scale = if self.shift >= 0 {
            polynomial::pow(x, self.shift as u32)
        } else {
            if x.is_zero() {
                return Err(pole());
            }
            polynomial::pow(&x.recip(), self.shift.unsigned_abs() as u32)
        };
        Ok(self.num.eval(x) / den * scale)
    }

    /// A rational `y ∈ (0, 1]` such that every `x ∈ (0, y)` gives `eval(x)` the
    /// sign of the leading coefficient.
    ///
    /// For a polynomial `c₀ + Σ cᵢxⁱ` and `0 < x < 1`, the tail is bounded by
    /// `x·Σ|cᵢ|`, so `x < |c₀| / (|c₀| + Σ|cᵢ|)` keeps the constant term
    /// dominant. The bound is taken over numerator and denominator separately.
    pub fn sign_bound(&self) -> Result<Rational, ExtendedRealError> {
        if self.is_zero() {
            return Err(ExtendedRealError::ZeroValue);
        }
        let bound = |p: &Polynomial| {
            let lead = p.constant_term().abs();
            let total = &lead + p.tail_abs_sum();
            lead / total
        };
        let y = bound(&self.num).min(bound(&self.den)).min(Rational::one());
        Ok(y)
    }

    fn binop_sum(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        let rhs_num = if negate_rhs { -&rhs.num } else { rhs.num.clone() };
        if self.is_zero() {
            return Self {
                shift: rhs.shift,
                num: rhs_num,
                den: rhs.den.clone(),
            };
        }
        let base = self.shift.min(rhs.shift);
        let lift = |p: &Polynomial, shift: i64| p.shift_up((shift - base) as u32);
        let (num, den) = if self.den == rhs.den {
            (&lift(&self.num, self.shift) + &lift(&rhs_num, rhs.shift), self.den.clone())
        } else {
            (
                &(&lift(&self.num, self.shift) * &rhs.den) + &(&lift(&rhs_num, rhs.shift) * &self.den),
                &self.den * &rhs.den,
            )
        };
        Self::from_parts(base, num, den).expect("product of nonzero denominators is nonzero")
    }

    fn binop_mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.shift + rhs.shift, &self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators is nonzero")
    }
}

impl Default for ExtendedReal {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExtendedReal {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExtendedReal {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

/// Cross-multiplication equality: `ε^k n/d = ε^k' n'/d'` iff `k = k'` and
/// `n·d' = n'·d` (both sides have nonzero constant terms).
impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => {
                self.shift == other.shift && &self.num * &other.den == &other.num * &self.den
            }
            _ => false,
        }
    }
}

impl Eq for ExtendedReal {}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Pos => Ordering::Greater,
            Sign::Neg => Ordering::Less,
            Sign::Zero => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: &ExtendedReal) -> ExtendedReal {
        self.binop_sum(rhs, false)
    }
}

impl Sub for &ExtendedReal {
    type Output = ExtendedReal;

    fn sub(self, rhs: &ExtendedReal) -> ExtendedReal {
        self.binop_sum(rhs, true)
    }
}

impl Mul for &ExtendedReal {
    type Output = ExtendedReal;

    fn mul(self, rhs: &ExtendedReal) -> ExtendedReal {
        self.binop_mul(rhs)
    }
}

impl Neg for &ExtendedReal {
    type Output = ExtendedReal;

    fn neg(self) -> ExtendedReal {
        ExtendedReal {
            shift: self.shift,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for ExtendedReal {
            type Output = ExtendedReal;

            fn $method(self, rhs: ExtendedReal) -> ExtendedReal {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ExtendedReal {
    type Output = ExtendedReal;

    fn neg(self) -> ExtendedReal {
        -&self
    }
}

impl std::iter::Sum for ExtendedReal {
    fn sum<I: Iterator<Item = ExtendedReal>>(iter: I) -> Self {
        iter.fold(ExtendedReal::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedReal({self})")
    }
}

/// Normalised rendering such as `e^2 * (3 + 3*e) / (1 - e)`.
///
/// The output parses back to an equal value with [`str::parse`].
impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let power = match self.shift {
            0 => None,
            1 => Some("e".to_string()),
            k => Some(format!("e^{k}")),
        };
        let has_den = !self.den.is_one();
        if self.num.len() == 1 {
            let c = self.num.constant_term();
            match &power {
                None => write!(f, "{c}")?,
                Some(p) if c.is_one() => f.write_str(p)?,
                Some(p) if (-&c).is_one() => write!(f, "-{p}")?,
                Some(p) => write!(f, "{c} * {p}")?,
            }
        } else {
            if let Some(p) = &power {
                write!(f, "{p} * ")?;
            }
            if power.is_some() || has_den {
                write!(f, "({})", self.num)?;
            } else {
                write!(f, "{}", self.num)?;
            }
        }
        if has_den {
            write!(f, " / ({})", self.den)?;
        }
        Ok(())
    }
}
