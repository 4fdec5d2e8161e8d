//! Symbol-linear arithmetic formulas and their evaluation over any carrier.
//!
//! A formula is built from symbols with negation, inverse, sum and product,
//! and mentions each symbol at most once. The same formula can be evaluated
//! over order-of-magnitude values, over extended reals, or over finite sets of
//! extended reals; comparing those evaluations is how the calculus is checked.

mod harness;
mod parse;
mod sets;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::extended_reals::ExtendedReal;
use crate::oom::OomValue;

pub use harness::{
    realize, sample_instantiation, search_counterexample, undefined_witness, verify_gt, HarnessError, Search,
    SoundnessReport, Witness, WitnessPair,
};
pub use parse::{parse_formula, parse_formula_with, SymbolTable};
pub use sets::FiniteSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("symbol {0} occurs on both sides of a sum or product")]
    RepeatedSymbol(usize),
    #[error("instantiation has no value for symbol {0}")]
    MissingSymbol(usize),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("cannot invert a set containing zero")]
    ZeroInSet,
}

/// Index of a formula symbol.
pub type Symbol = usize;

/// A map from symbol index to carrier value.
pub type Instantiation<C> = BTreeMap<Symbol, C>;

/// Value of a formula, or `Undefined` when some inverse had no inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalResult<C> {
    Value(C),
    Undefined,
}

impl<C> EvalResult<C> {
    pub fn value(self) -> Option<C> {
        match self {
            EvalResult::Value(v) => Some(v),
            EvalResult::Undefined => None,
        }
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, EvalResult::Undefined)
    }
}

/// The operations a formula needs from the values it is evaluated over.
pub trait Carrier: Clone {
    fn sum(&self, rhs: &Self) -> Self;
    fn product(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` when the value is outside the invertible subset.
    fn inverse(&self) -> Option<Self>;
}

impl Carrier for OomValue {
    fn sum(&self, rhs: &Self) -> Self {
        *self + *rhs
    }

    fn product(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn negated(&self) -> Self {
        -*self
    }

    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Carrier for ExtendedReal {
    fn sum(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Symbol(Symbol),
    Neg(Box<Formula>),
    Inv(Box<Formula>),
    Add(Box<Formula>, Box<Formula>),
    Mul(Box<Formula>, Box<Formula>),
}

/// A symbol-linear formula. The constructors reject sums and products whose
/// operands share a symbol, so every value of this type is linear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    node: Node,
}

impl Formula {
    pub fn symbol(index: Symbol) -> Self {
        Self {
            node: Node::Symbol(index),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(inner: Formula) -> Self {
        Self {
            node: Node::Neg(Box::new(inner)),
        }
    }

    pub fn inv(inner: Formula) -> Self {
        Self {
            node: Node::Inv(Box::new(inner)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(lhs: Formula, rhs: Formula) -> Result<Self, FormulaError> {
        Self::check_disjoint(&lhs, &rhs)?;
        Ok(Self {
            node: Node::Add(Box::new(lhs), Box::new(rhs)),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(lhs: Formula, rhs: Formula) -> Result<Self, FormulaError> {
        Self::check_disjoint(&lhs, &rhs)?;
        Ok(Self {
            node: Node::Mul(Box::new(lhs), Box::new(rhs)),
        })
    }

    fn check_disjoint(lhs: &Formula, rhs: &Formula) -> Result<(), FormulaError> {
        let left = lhs.symbols();
        match rhs.symbols().into_iter().find(|s| left.contains(s)) {
            Some(s) => Err(FormulaError::RepeatedSymbol(s)),
            None => Ok(()),
        }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match &self.node {
            Node::Symbol(i) => {
                out.insert(*i);
            }
            Node::Neg(c) | Node::Inv(c) => c.collect_symbols(out),
            Node::Add(l, r) | Node::Mul(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match &self.node {
            Node::Symbol(_) => 0,
            Node::Neg(c) | Node::Inv(c) => 1 + c.depth(),
            Node::Add(l, r) | Node::Mul(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Evaluates over any carrier. Every symbol must be instantiated, even ones
    /// below an inverse that turns out undefined.
    pub fn eval<C: Carrier>(&self, inst: &Instantiation<C>) -> Result<EvalResult<C>, FormulaError> {
        if let Some(missing) = self.symbols().into_iter().find(|s| !inst.contains_key(s)) {
            return Err(FormulaError::MissingSymbol(missing));
        }
        Ok(self.eval_unchecked(inst))
    }

    fn eval_unchecked<C: Carrier>(&self, inst: &Instantiation<C>) -> EvalResult<C> {
        use EvalResult::{Undefined, Value};
        match &self.node {
            Node::Symbol(i) => Value(inst[i].clone()),
            Node::Neg(c) => match c.eval_unchecked(inst) {
                Value(v) => Value(v.negated()),
                Undefined => Undefined,
            },
            Node::Inv(c) => match c.eval_unchecked(inst) {
                Value(v) => v.inverse().map_or(Undefined, Value),
                Undefined => Undefined,
            },
            Node::Add(l, r) | Node::Mul(l, r) => {
                let (Value(a), Value(b)) = (l.eval_unchecked(inst), r.eval_unchecked(inst)) else {
                    return Undefined;
                };
                if matches!(self.node, Node::Add(..)) {
                    Value(a.sum(&b))
                } else {
                    Value(a.product(&b))
                }
            }
        }
    }

    /// Renders with the given names; the output reparses to an identical
    /// formula when the table's indices were assigned by the parser.
    pub fn render(&self, names: &SymbolTable) -> String {
        let mut out = String::new();
        self.render_into(&mut out, &|i| names.name(i).map_or_else(|| format!("x{i}"), str::to_string), 0);
        out
    }

    /// Precedence levels: 0 sum, 1 product, 2 unary/postfix.
    fn render_into(&self, out: &mut String, name: &dyn Fn(Symbol) -> String, level: u8) {
        let wrap = |out: &mut String, own: u8, body: &dyn Fn(&mut String)| {
            if own < level {
                out.push('(');
                body(out);
                out.push(')');
            } else {
                body(out);
            }
        };
        match &self.node {
            Node::Symbol(i) => out.push_str(&name(*i)),
            Node::Neg(c) => {
                out.push('-');
                c.render_into(out, name, 2);
            }
            Node::Inv(c) => {
                // postfix operand must itself be atomic
                if matches!(c.node, Node::Symbol(_)) {
                    c.render_into(out, name, 2);
                } else {
                    out.push('(');
                    c.render_into(out, name, 0);
                    out.push(')');
                }
                out.push_str("^-1");
            }
            Node::Add(l, r) => wrap(out, 0, &|out| {
                l.render_into(out, name, 0);
                out.push_str(" + ");
                r.render_into(out, name, 1);
            }),
            Node::Mul(l, r) => wrap(out, 1, &|out| {
                l.render_into(out, name, 1);
                out.push_str(" * ");
                r.render_into(out, name, 2);
            }),
        }
    }
}

/// Renders symbols as `x{index}`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render_into(&mut out, &|i| format!("x{i}"), 0);
        f.write_str(&out)
    }
}
