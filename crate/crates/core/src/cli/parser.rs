//! Recursive-descent parser for rational expressions and relations.
//!
//! Grammar:
//!
//! ```text
//! relation := expr op expr         op ∈ { =, ==, !=, <>, <, <=, >, >=, ≠, ≤, ≥ }
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' ['-'] integer)?
//! atom     := number | identifier | '(' expr ')'
//! number   := digits ['.' digits]
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{Poly, Rational, Var};
use crate::diffalg::RationalExpr;
use crate::semialg::Relation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

const OPS: &[&str] = &["==", "!=", "<>", "<=", ">=", "≠", "≤", "≥", "+", "-", "*", "/", "^", "=", "<", ">"];

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { toks: Vec::new() };
        let mut i = 0;
        let b = src.as_bytes();
        while i < src.len() {
            let c = src[i..].chars().next().unwrap();
            if c.is_whitespace() {
                i += c.len_utf8();
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let int: BigInt = src[start..i].parse().unwrap();
                let mut val = Rational::from_integer(int);
                if i < b.len() && b[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    if fs == i {
                        return Err(error_at(src, i, "expected digits after decimal point"));
                    }
                    let frac: BigInt = src[fs..i].parse().unwrap();
                    let scale = num_traits::pow(BigInt::from(10), i - fs);
                    val += Rational::new(frac, scale);
                }
                lx.toks.push((Tok::Num(val), start));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while let Some(ch) = src[i..].chars().next() {
                    if ch.is_alphanumeric() || ch == '_' {
                        i += ch.len_utf8();
                    } else {
                        break;
                    }
                }
                lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            if c == '(' {
                lx.toks.push((Tok::LParen, i));
                i += 1;
                continue;
            }
            if c == ')' {
                lx.toks.push((Tok::RParen, i));
                i += 1;
                continue;
            }
            if let Some(op) = OPS.iter().find(|op| src[i..].starts_with(**op)) {
                lx.toks.push((Tok::Op(op), i));
                i += op.len();
                continue;
            }
            return Err(error_at(src, i, &format!("unexpected character '{c}'")));
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

fn error_at(src: &str, offset: usize, msg: &str) -> ParseError {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap().chars().count() + 1;
    ParseError {
        message: msg.to_string(),
        offset,
        line,
        column,
    }
}

struct Parser<'a, 'r> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    resolve: &'r dyn Fn(&str) -> Option<Var>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err(&self, msg: &str) -> ParseError {
        error_at(self.src, self.offset(), msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_op(&self, ops: &[&str]) -> Option<&'static str> {
        match self.peek() {
            Tok::Op(o) if ops.contains(o) => Some(o),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.is_op(&["+", "-"]) {
            self.bump();
            let rhs = self.term()?;
            acc = if op == "+" { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalExpr, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.is_op(&["*", "/"]) {
            self.bump();
            let at = self.offset();
            let rhs = self.unary()?;
            acc = if op == "*" {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).ok_or_else(|| error_at(self.src, at, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalExpr, ParseError> {
        match self.is_op(&["+", "-"]) {
            Some("-") => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(_) => {
                self.bump();
                self.unary()
            }
            None => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalExpr, ParseError> {
        let base = self.atom()?;
        if self.is_op(&["^"]).is_none() {
            return Ok(base);
        }
        self.bump();
        let neg = if self.is_op(&["-"]).is_some() {
            self.bump();
            true
        } else {
            false
        };
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) if n.is_integer() => {
                let e: i64 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| error_at(self.src, at, "exponent too large"))?;
                let e = if neg { -e } else { e };
                base.pow(e).ok_or_else(|| error_at(self.src, at, "negative power of zero"))
            }
            _ => Err(error_at(self.src, at, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(RationalExpr::constant(n)),
            Tok::Ident(name) => match (self.resolve)(&name) {
                Some(v) => Ok(RationalExpr::var(v)),
                None => Err(error_at(self.src, at, &format!("undeclared identifier '{name}'"))),
            },
            Tok::LParen => {
                let e = self.expr()?;
                match self.bump() {
                    Tok::RParen => Ok(e),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Tok::End => Err(error_at(self.src, at, "unexpected end of input")),
            t => Err(error_at(self.src, at, &format!("unexpected token {t:?}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.err("unexpected trailing input")),
        }
    }
}

fn any_ident(name: &str) -> Option<Var> {
    Some(Var::new(name))
}

/// Parses a rational expression. `resolve` maps identifiers to variables
/// and rejects undeclared names by returning `None`.
pub fn parse_expr_with(src: &str, resolve: &dyn Fn(&str) -> Option<Var>) -> Result<RationalExpr, ParseError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        resolve,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a rational expression, accepting every identifier.
pub fn parse_expr(src: &str) -> Result<RationalExpr, ParseError> {
    parse_expr_with(src, &any_ident)
}

/// Parses a polynomial expression; a nonconstant denominator is an error.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let e = parse_expr(src)?;
    if !e.den().is_constant() {
        return Err(error_at(src, 0, "expected a polynomial"));
    }
    Ok(e.num().clone())
}

/// Parses `lhs op rhs` into `(lhs - rhs, op)`.
pub fn parse_relation_with(src: &str, resolve: &dyn Fn(&str) -> Option<Var>) -> Result<(RationalExpr, Relation), ParseError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        resolve,
    };
    let lhs = p.expr()?;
    let rel = match p.peek() {
        Tok::Op(o) => match *o {
            "=" | "==" => Relation::Eq,
            "!=" | "<>" | "≠" => Relation::Ne,
            "<" => Relation::Lt,
            "<=" | "≤" => Relation::Le,
            ">" => Relation::Gt,
            ">=" | "≥" => Relation::Ge,
            _ => return Err(p.err("expected a relation operator")),
        },
        _ => return Err(p.err("expected a relation operator")),
    };
    p.bump();
    let rhs = p.expr()?;
    p.finish()?;
    Ok((lhs.sub(&rhs), rel))
}

pub fn parse_relation(src: &str) -> Result<(RationalExpr, Relation), ParseError> {
    parse_relation_with(src, &any_ident)
}

/// Whether `name` is a valid identifier for model declarations.
pub fn is_identifier(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_literals() {
        let e = parse_expr("1/2*x^2 - -3*(y + 1)").unwrap();
        assert_eq!(e.to_string(), "1/2*x^2 + 3*y + 3");
        let e = parse_expr("0.25*x").unwrap();
        assert_eq!(e.to_string(), "1/4*x");
        let e = parse_expr("mu*s*x/(K_S + s) - m*Y*x").unwrap();
        assert_eq!(e.den().to_string(), "K_S + s");
        let e = parse_expr("(x+1)^-1").unwrap();
        assert_eq!(e.to_string(), "1/(x + 1)");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("x + * y").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse_expr("x / 0").unwrap_err();
        assert!(err.message.contains("division by zero"));
        let err = parse_expr_with("a + b", &|n| (n == "a").then(|| Var::new(n))).unwrap_err();
        assert!(err.message.contains("'b'"));
        assert_eq!(err.column, 5);
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("(x").is_err());
    }

    #[test]
    fn relations() {
        let (e, r) = parse_relation("mu > 0").unwrap();
        assert_eq!((e.to_string().as_str(), r), ("mu", Relation::Gt));
        let (e, r) = parse_relation("a <= b").unwrap();
        assert_eq!((e.to_string().as_str(), r), ("a - b", Relation::Le));
        assert!(parse_relation("a + b").is_err());
    }
}
