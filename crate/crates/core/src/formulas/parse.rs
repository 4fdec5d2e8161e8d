//! Concrete syntax for formulas.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('^' '-' '1')*
//! atom    := ident | '(' expr ')'
//! ```
//!
//! `a - b` is `a + (-b)` and `a / b` is `a * b^-1`. Every occurrence of a name
//! gets a fresh symbol index, so repeated names never break linearity; the
//! [`SymbolTable`] remembers which indices came from which name.

use super::{Formula, FormulaError, Symbol};

/// Index → source name, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&mut self, name: &str) -> Symbol {
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn name(&self, index: Symbol) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All indices carrying `name`.
    pub fn indices_of<'a>(&'a self, name: &'a str) -> impl Iterator<Item = Symbol> + 'a {
        self.names.iter().enumerate().filter(move |(_, n)| *n == name).map(|(i, _)| i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &str)> + '_ {
        self.names.iter().enumerate().map(|(i, n)| (i, n.as_str()))
    }
}

struct Parser<'a, 't> {
    src: &'a [u8],
    pos: usize,
    table: &'t mut SymbolTable,
}

impl Parser<'_, '_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Formula::add(acc, self.term()?)?;
            } else if self.eat(b'-') {
                acc = Formula::add(acc, Formula::neg(self.term()?))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = Formula::mul(acc, self.unary()?)?;
            } else if self.eat(b'/') {
                acc = Formula::mul(acc, Formula::inv(self.unary()?))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat(b'-') {
            Ok(Formula::neg(self.unary()?))
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.atom()?;
        while self.eat(b'^') {
            if !(self.eat(b'-') && self.eat(b'1')) {
                return self.error("only the exponent -1 is supported");
            }
            acc = Formula::inv(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                Ok(Formula::symbol(self.table.fresh(name)))
            }
            Some(_) => self.error("expected a name or '('"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses into a formula and a fresh symbol table.
pub fn parse_formula(text: &str) -> Result<(Formula, SymbolTable), FormulaError> {
    let mut table = SymbolTable::new();
    let f = parse_formula_with(text, &mut table)?;
    Ok((f, table))
}

/// Parses using (and extending) an existing table, so several formulas can
/// share one index space without overlapping.
pub fn parse_formula_with(text: &str, table: &mut SymbolTable) -> Result<Formula, FormulaError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        table,
    };
    let f = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error("trailing input");
    }
    Ok(f)
}
