//! Rational expressions in named parameters, used for the twist-map
//! patterns of the representative tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens: &tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos != tokens.len() {
            return Err(Error::Input(format!("trailing input in expression '{text}'")));
        }
        Ok(e)
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Int(0))
    }

    /// The variable name when the expression is a bare variable.
    pub fn as_var(&self) -> Option<&str> {
        match self {
            Expr::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }

    /// Evaluates with every variable bound; division by zero is an error.
    pub fn eval(&self, field: Field, env: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        Ok(match self {
            Expr::Int(n) => field.int(*n),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Input(format!("missing parameter '{v}'")))?,
            Expr::Neg(a) => -a.eval(field, env)?,
            Expr::Add(a, b) => a.eval(field, env)? + b.eval(field, env)?,
            Expr::Sub(a, b) => a.eval(field, env)? - b.eval(field, env)?,
            Expr::Mul(a, b) => a.eval(field, env)? * b.eval(field, env)?,
            Expr::Div(a, b) => {
                let den = b.eval(field, env)?;
                let inv = den.inv().ok_or_else(|| Error::Precondition(format!("division by zero in '{self}'")))?;
                a.eval(field, env)? * inv
            }
            Expr::Pow(a, e) => a.eval(field, env)?.pow(*e as i64),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/({b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push(Token::Num(s.parse().map_err(|_| Error::Input(format!("bad number '{s}'")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
            }
            out.push(Token::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            chars.next();
        } else {
            return Err(Error::Input(format!("unexpected character '{c}' in expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            e = if op == '+' { Expr::Add(e.into(), rhs.into()) } else { Expr::Sub(e.into(), rhs.into()) };
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            e = if op == '*' { Expr::Mul(e.into(), rhs.into()) } else { Expr::Div(e.into(), rhs.into()) };
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            return match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    Ok(Expr::Pow(base.into(), *n as u32))
                }
                _ => Err(Error::Input("exponent must be a literal integer".into())),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(v)) => Ok(Expr::Var(v)),
            Some(Token::Op('(')) => {
                let e = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Input("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::Input("malformed expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates() {
        let q = Field::Rational;
        let e = Expr::parse("(1+C10)*r01/((-1+C10)*C10^2) - 2").unwrap();
        let env: BTreeMap<String, Scalar> =
            [("C10".to_string(), q.int(2)), ("r01".to_string(), q.int(4))].into_iter().collect();
        assert_eq!(e.eval(q, &env).unwrap(), q.int(1));
        let mut vars = BTreeSet::new();
        e.variables(&mut vars);
        assert_eq!(vars.len(), 2);
        assert!(Expr::parse("r00/r11")
            .unwrap()
            .eval(q, &[("r00".into(), q.one()), ("r11".into(), q.zero())].into_iter().collect())
            .is_err());
        assert!(Expr::parse("(r00").is_err());
        assert_eq!(Expr::parse("0").unwrap(), Expr::Int(0));
    }
}
