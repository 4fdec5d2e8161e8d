//! The order-of-magnitude algebra: sign/order pairs `(σ, n)` with the induced
//! addition, multiplication and partial order.
//!
//! `(+, n)` stands for positive extended reals of order `εⁿ`, `(−, n)` for
//! negative ones, and `(0, n)` for anything of order at least `εⁿ` (including
//! zero). `(0, ∞)` is the zero element.

mod sample;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::extended_reals::ExtendedReal;

pub use sample::{StarSampler, StarSamplerConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OomError {
    #[error("{0} has sign 0 and is not invertible")]
    NotInvertible(OomValue),
    #[error("order ∞ requires sign 0")]
    InfiniteOrderWithSign,
    #[error("invalid order-of-magnitude literal {0:?}")]
    Literal(String),
    #[error("invalid sampler configuration: {0}")]
    SamplerConfig(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    /// Sign product `⊗`.
    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    /// Sign sum `⊕`: agreeing nonzero signs survive, anything else is 0.
    pub fn plus(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Pos, Sign::Pos) => Sign::Pos,
            (Sign::Neg, Sign::Neg) => Sign::Neg,
            _ => Sign::Zero,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
            Sign::Zero => '0',
        }
    }
}

/// An integer ε-exponent or `∞`. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl Add for Order {
    type Output = Order;

    /// `∞` absorbs.
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Outcome of comparing two values under the partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Greater => "GT",
            Comparison::Less => "LT",
            Comparison::Equal => "EQ",
            Comparison::Incomparable => "INCOMPARABLE",
        })
    }
}

/// An element `(σ, n)` of the order-of-magnitude algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OomValue {
    sign: Sign,
    order: Order,
}

impl OomValue {
    /// `(0, ∞)`.
    pub const ZERO: OomValue = OomValue {
        sign: Sign::Zero,
        order: Order::Infinite,
    };
    /// `(+, 0)`.
    pub const ONE: OomValue = OomValue {
        sign: Sign::Pos,
        order: Order::Finite(0),
    };
    /// `(−, 0)`.
    pub const MINUS_ONE: OomValue = OomValue {
        sign: Sign::Neg,
        order: Order::Finite(0),
    };

    pub fn new(sign: Sign, order: Order) -> Result<Self, OomError> {
        if order == Order::Infinite && sign != Sign::Zero {
            return Err(OomError::InfiniteOrderWithSign);
        }
        Ok(Self { sign, order })
    }

    pub const fn pos(n: i64) -> Self {
        Self {
            sign: Sign::Pos,
            order: Order::Finite(n),
        }
    }

    pub const fn neg(n: i64) -> Self {
        Self {
            sign: Sign::Neg,
            order: Order::Finite(n),
        }
    }

    /// `(0, n)`: order at least `n`, sign unknown.
    pub const fn signless(n: i64) -> Self {
        Self {
            sign: Sign::Zero,
            order: Order::Finite(n),
        }
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn order(self) -> Order {
        self.order
    }

    /// Membership in the sign-0 family `(0, n)`, `n ∈ Z ∪ {∞}`.
    pub fn is_signless(self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_invertible(self) -> bool {
        !self.is_signless()
    }

    pub fn inv(self) -> Result<Self, OomError> {
        match self.order {
            Order::Finite(n) if self.is_invertible() => Ok(Self {
                sign: self.sign,
                order: Order::Finite(-n),
            }),
            _ => Err(OomError::NotInvertible(self)),
        }
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, OomError> {
        Ok(self * rhs.inv()?)
    }

    /// `self > other` iff `self − other` has sign `+`.
    pub fn gt(self, other: Self) -> bool {
        (self - other).sign == Sign::Pos
    }

    pub fn compare(self, other: Self) -> Comparison {
        if self == other {
            Comparison::Equal
        } else {
            match (self - other).sign {
                Sign::Pos => Comparison::Greater,
                Sign::Neg => Comparison::Less,
                Sign::Zero => Comparison::Incomparable,
            }
        }
    }

    /// Whether the extended real `r` lies in the set this value stands for.
    pub fn contains(self, r: &ExtendedReal) -> bool {
        match self.sign {
            Sign::Zero => r.order() >= self.order,
            _ => r.classify() == self,
        }
    }
}

/// Free-function form of [`OomValue::contains`].
pub fn member(r: &ExtendedReal, a: OomValue) -> bool {
    a.contains(r)
}

impl Mul for OomValue {
    type Output = OomValue;

    fn mul(self, rhs: OomValue) -> OomValue {
        let order = self.order + rhs.order;
        let sign = if order == Order::Infinite {
            Sign::Zero
        } else {
            self.sign.times(rhs.sign)
        };
        OomValue { sign, order }
    }
}

impl Add for OomValue {
    type Output = OomValue;

    /// The lower order dominates; equal orders combine signs with `⊕`.
    fn add(self, rhs: OomValue) -> OomValue {
        match self.order.cmp(&rhs.order) {
            Ordering::Less => self,
            Ordering::Greater => rhs,
            Ordering::Equal => OomValue {
                sign: self.sign.plus(rhs.sign),
                order: self.order,
            },
        }
    }
}

impl Neg for OomValue {
    type Output = OomValue;

    fn neg(self) -> OomValue {
        OomValue {
            sign: self.sign.flip(),
            order: self.order,
        }
    }
}

impl Sub for OomValue {
    type Output = OomValue;

    fn sub(self, rhs: OomValue) -> OomValue {
        self + (-rhs)
    }
}

impl std::iter::Sum for OomValue {
    fn sum<I: Iterator<Item = OomValue>>(iter: I) -> Self {
        iter.fold(OomValue::ZERO, |acc, x| acc + x)
    }
}

impl PartialOrd for OomValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.compare(*other) {
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Less => Some(Ordering::Less),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Incomparable => None,
        }
    }
}

impl fmt::Display for OomValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            Order::Infinite => f.write_str("0"),
            Order::Finite(n) => write!(f, "({},{n})", self.sign.symbol()),
        }
    }
}

/// Accepts `(+,n)`, `(-,n)`, `(0,n)`, `(0,inf)`, `0`, `1` and `-1`, with
/// optional whitespace. `−` (U+2212) is accepted for the minus sign.
impl FromStr for OomValue {
    type Err = OomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OomError::Literal(s.to_string());
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        match compact.as_str() {
            "0" => return Ok(OomValue::ZERO),
            "1" => return Ok(OomValue::ONE),
            "-1" => return Ok(OomValue::MINUS_ONE),
            _ => {}
        }
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (sign, order) = inner.split_once(',').ok_or_else(bad)?;
        let sign = match sign {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            "0" => Sign::Zero,
            _ => return Err(bad()),
        };
        let order = match order {
            "inf" | "∞" => Order::Infinite,
            n => Order::Finite(n.parse().map_err(|_| bad())?),
        };
        OomValue::new(sign, order).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended_reals::Rational;

    #[test]
    fn multiplication() {
        assert_eq!(OomValue::neg(2) * OomValue::ONE, OomValue::neg(2));
        assert_eq!(OomValue::pos(-4) * OomValue::ZERO, OomValue::ZERO);
        assert_eq!(OomValue::signless(3) * OomValue::ZERO, OomValue::ZERO);
        assert_eq!(OomValue::neg(2) * OomValue::neg(3), OomValue::pos(5));
        assert_eq!(OomValue::signless(1) * OomValue::neg(3), OomValue::signless(4));
    }

    #[test]
    fn addition() {
        assert_eq!(OomValue::ONE + OomValue::MINUS_ONE, OomValue::signless(0));
        assert_eq!(OomValue::pos(1) + OomValue::neg(3), OomValue::pos(1));
        assert_eq!(OomValue::neg(2) + OomValue::pos(2), OomValue::signless(2));
        assert_eq!(OomValue::neg(7) + OomValue::ZERO, OomValue::neg(7));
        assert_eq!(OomValue::signless(1) + OomValue::pos(1), OomValue::signless(1));
    }

    #[test]
    fn negation() {
        assert_eq!(-OomValue::pos(3), OomValue::neg(3));
        assert_eq!(-OomValue::signless(2), OomValue::signless(2));
        assert_eq!(-OomValue::ZERO, OomValue::ZERO);
    }

    #[test]
    fn inverse() {
        assert_eq!(OomValue::pos(3).inv().unwrap(), OomValue::pos(-3));
        assert_eq!(OomValue::MINUS_ONE.inv().unwrap(), OomValue::MINUS_ONE);
        assert!(matches!(OomValue::signless(1).inv(), Err(OomError::NotInvertible(_))));
        assert!(OomValue::ZERO.inv().is_err());
    }

    #[test]
    fn ordering() {
        let z0 = OomValue::signless(0);
        assert!(!z0.gt(OomValue::MINUS_ONE));
        assert!(!OomValue::MINUS_ONE.gt(z0));
        assert_eq!(z0.compare(OomValue::MINUS_ONE), Comparison::Incomparable);
        assert_eq!(z0.partial_cmp(&OomValue::MINUS_ONE), None);
        assert!(OomValue::signless(-2).gt(OomValue::neg(-5)));
        assert!(OomValue::pos(1).gt(OomValue::ZERO));
        assert!(!OomValue::pos(1).gt(OomValue::pos(1)));
        assert_eq!(OomValue::pos(1).compare(OomValue::pos(1)), Comparison::Equal);
        assert!(OomValue::pos(0) > OomValue::pos(1));
        assert!(OomValue::neg(0) < OomValue::neg(1));
    }

    #[test]
    fn infinite_order_requires_sign_zero() {
        assert_eq!(OomValue::new(Sign::Pos, Order::Infinite), Err(OomError::InfiniteOrderWithSign));
        assert_eq!(OomValue::new(Sign::Zero, Order::Infinite), Ok(OomValue::ZERO));
    }

    #[test]
    fn membership() {
        let q = |n: i64| Rational::from_integer(n.into());
        assert!(OomValue::neg(3).contains(&ExtendedReal::monomial(q(-2), 3)));
        assert!(OomValue::signless(5).contains(&ExtendedReal::zero()));
        assert!(!OomValue::pos(1).contains(&ExtendedReal::monomial(q(1), 2)));
        assert!(OomValue::signless(1).contains(&ExtendedReal::monomial(q(-1), 2)));
        assert!(!OomValue::signless(1).contains(&ExtendedReal::monomial(q(-1), 0)));
        assert!(OomValue::ZERO.contains(&ExtendedReal::zero()));
        assert!(!OomValue::ZERO.contains(&ExtendedReal::epsilon()));
    }

    #[test]
    fn literals() {
        for (text, v) in [
            ("(+,3)", OomValue::pos(3)),
            ("(-,-4)", OomValue::neg(-4)),
            ("( 0 , 2 )", OomValue::signless(2)),
            ("0", OomValue::ZERO),
            ("(0,inf)", OomValue::ZERO),
            ("1", OomValue::ONE),
            ("-1", OomValue::MINUS_ONE),
            ("(−,−5)", OomValue::neg(-5)),
        ] {
            assert_eq!(text.parse::<OomValue>().unwrap(), v, "{text}");
        }
        for bad in ["", "(+,inf)", "(x,1)", "(+,1", "2", "(+,1.5)"] {
            assert!(bad.parse::<OomValue>().is_err(), "{bad}");
        }
        assert_eq!(OomValue::neg(-5).to_string(), "(-,-5)");
        assert_eq!(OomValue::ZERO.to_string(), "0");
    }
}
