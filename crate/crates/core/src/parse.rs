//! Recursive-descent parser for polynomial expressions with exact
//! rational coefficients.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')' | '-' factor
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and multiplication must be written with `*`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(BigRational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        match self {
            Expr::Number(c) => MultiPoly::constant(c.clone(), nvars),
            Expr::Var(i) => MultiPoly::var(*i, nvars),
            Expr::Add(a, b) => &a.to_poly(nvars) + &b.to_poly(nvars),
            Expr::Sub(a, b) => &a.to_poly(nvars) - &b.to_poly(nvars),
            Expr::Neg(a) => -a.to_poly(nvars),
            Expr::Mul(a, b) => &a.to_poly(nvars) * &b.to_poly(nvars),
            Expr::Pow(a, k) => a.to_poly(nvars).pow(*k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                column: col,
            });
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l,
                column: col,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character '{other}'"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
        i += 1;
        column += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(ref n) => {
                let k: u32 = match n.try_into() {
                    Ok(k) => k,
                    Err(_) => return self.error(&t, "exponent too large"),
                };
                if self.peek().tok == Tok::Slash {
                    let at = self.peek().clone();
                    return self.error(&at, "exponent must be a non-negative integer");
                }
                Ok(Expr::Pow(Box::new(base), k))
            }
            Tok::Minus => self.error(&t, "negative exponent"),
            _ => self.error(&t, "exponent must be a non-negative integer"),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.tok {
                        Tok::Int(ref den) if !den.is_zero() => {
                            Ok(Expr::Number(BigRational::new(n, den.clone())))
                        }
                        Tok::Int(_) => self.error(&d, "zero denominator"),
                        _ => self.error(&d, "expected unsigned integer denominator"),
                    }
                } else {
                    Ok(Expr::Number(BigRational::from_integer(n)))
                }
            }
            Tok::Ident(ref name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Ok(Expr::Var(i)),
                None => self.error(
                    &t,
                    format!("unknown variable '{name}' (expected one of {})", self.vars.join(", ")),
                ),
            },
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected ')'");
                }
                Ok(e)
            }
            Tok::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::End => self.error(&t, "unexpected end of input"),
            _ => self.error(&t, "expected number, variable or '('"),
        }
    }
}

/// Parses `text` into an expression tree over the variables `vars`.
pub fn parse_expr(text: &str, vars: &[&str]) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.error(&t, "unexpected trailing input");
    }
    Ok(e)
}

/// Parses `text` into an exact polynomial in the variables `vars`.
pub fn parse_polynomial(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    Ok(parse_expr(text, vars)?.to_poly(vars.len()))
}
