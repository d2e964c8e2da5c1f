//! The small closed expression language shared by contraction families and
//! map images: rational literals, the variables `t`, `s`, `x`, the four
//! arithmetic operators, unary minus, `min`, `max` and parentheses.
//! Evaluation is exact.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    S,
    X,
}

impl Var {
    fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::S => "s",
            Var::X => "x",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

/// Variable bindings for evaluation. Unbound variables are an error.
#[derive(Clone, Debug, Default)]
pub struct Env<'a> {
    pub t: Option<&'a Rational>,
    pub s: Option<&'a Rational>,
    pub x: Option<&'a Rational>,
}

impl<'a> Env<'a> {
    pub fn ts(t: &'a Rational, s: &'a Rational) -> Self {
        Env {
            t: Some(t),
            s: Some(s),
            x: None,
        }
    }

    pub fn x(x: &'a Rational) -> Self {
        Env {
            x: Some(x),
            ..Env::default()
        }
    }
}

/// Reason an expression cannot be parsed, with a 0-based byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl Expr {
    pub fn parse(text: &str) -> std::result::Result<Expr, ExprError> {
        let tokens = lex(text)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            end: text.len(),
        };
        let e = p.expr()?;
        if let Some(tok) = p.peek() {
            return Err(ExprError {
                offset: tok.offset,
                message: format!("expected operator, found `{}`", tok.kind),
            });
        }
        Ok(e)
    }

    pub fn lit(r: Rational) -> Expr {
        Expr::Lit(r)
    }

    pub fn eval(&self, env: &Env<'_>) -> Result<Rational> {
        match self {
            Expr::Lit(r) => Ok(r.clone()),
            Expr::Var(v) => {
                let bound = match v {
                    Var::T => env.t,
                    Var::S => env.s,
                    Var::X => env.x,
                };
                bound.cloned().ok_or_else(|| {
                    Error::Evaluation(format!("variable `{}` is not bound here", v.name()))
                })
            }
            Expr::Neg(e) => Ok(-e.eval(env)?),
            Expr::Bin(op, a, b) => {
                let a = a.eval(env)?;
                let b = b.eval(env)?;
                Ok(match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b.is_zero() {
                            return Err(Error::Evaluation(format!("division by zero in `{self}`")));
                        }
                        a / b
                    }
                    BinOp::Min => a.min(b),
                    BinOp::Max => a.max(b),
                })
            }
        }
    }

    /// Variables occurring in the expression.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Lit(_) => {}
            Expr::Var(v) => out.push(*v),
            Expr::Neg(e) => e.collect_vars(out),
            Expr::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// `(slope, intercept)` if the expression is affine in `x` and mentions
    /// no other variable.
    pub fn as_affine(&self) -> Option<(Rational, Rational)> {
        match self {
            Expr::Lit(r) => Some((Rational::zero(), r.clone())),
            Expr::Var(Var::X) => Some((Rational::one(), Rational::zero())),
            Expr::Var(_) => None,
            Expr::Neg(e) => e.as_affine().map(|(a, b)| (-a, -b)),
            Expr::Bin(op, l, r) => {
                let (la, lb) = l.as_affine()?;
                let (ra, rb) = r.as_affine()?;
                match op {
                    BinOp::Add => Some((la + ra, lb + rb)),
                    BinOp::Sub => Some((la - ra, lb - rb)),
                    BinOp::Mul if la.is_zero() => Some((&lb * ra, lb * rb)),
                    BinOp::Mul if ra.is_zero() => Some((la * &rb, lb * rb)),
                    BinOp::Div if ra.is_zero() && !rb.is_zero() => Some((la / &rb, lb / rb)),
                    _ => None,
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(r) => write!(f, "{r}"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(e) => {
                if e.precedence() < 4 {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Expr::Bin(op @ (BinOp::Min | BinOp::Max), a, b) => {
                let name = if *op == BinOp::Min { "min" } else { "max" };
                write!(f, "{name}({a}, {b})")
            }
            Expr::Bin(op, a, b) => {
                let prec = self.precedence();
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    _ => "/",
                };
                // Operators are spaced, so a literal `p/q` never merges with a division.
                if a.precedence() < prec {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {sym} ")?;
                if b.precedence() <= prec {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Num(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Num(r) => write!(f, "{r}"),
            TokKind::Ident(s) => f.write_str(s),
            TokKind::Op(c) => write!(f, "{c}"),
            TokKind::LParen => f.write_str("("),
            TokKind::RParen => f.write_str(")"),
            TokKind::Comma => f.write_str(","),
        }
    }
}

struct Tok {
    kind: TokKind,
    offset: usize,
}

fn lex(text: &str) -> std::result::Result<Vec<Tok>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' => i += 1,
            b'0'..=b'9' | b'.' => {
                // A literal is `digits[.digits][/digits]` with no spaces.
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let value = parse_rational(&text[start..i]).map_err(|e| ExprError {
                    offset: start,
                    message: e.to_string(),
                })?;
                out.push(Tok {
                    kind: TokKind::Num(value),
                    offset: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Tok {
                    kind: TokKind::Ident(text[start..i].to_string()),
                    offset: start,
                });
            }
            b'+' | b'-' | b'*' | b'/' => {
                out.push(Tok {
                    kind: TokKind::Op(c as char),
                    offset: start,
                });
                i += 1;
            }
            b'(' => {
                out.push(Tok {
                    kind: TokKind::LParen,
                    offset: start,
                });
                i += 1;
            }
            b')' => {
                out.push(Tok {
                    kind: TokKind::RParen,
                    offset: start,
                });
                i += 1;
            }
            b',' => {
                out.push(Tok {
                    kind: TokKind::Comma,
                    offset: start,
                });
                i += 1;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ExprError {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> std::result::Result<(), ExprError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ExprError {
                offset: t.offset,
                message: format!("expected {what}, found `{}`", t.kind),
            }),
            None => Err(ExprError {
                offset: self.end,
                message: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(Tok {
            kind: TokKind::Op(c @ ('+' | '-')),
            ..
        }) = self.peek()
        {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> std::result::Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(Tok {
            kind: TokKind::Op(c @ ('*' | '/')),
            ..
        }) = self.peek()
        {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, ExprError> {
        if let Some(Tok {
            kind: TokKind::Op('-'),
            ..
        }) = self.peek()
        {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> std::result::Result<Expr, ExprError> {
        let offset = self.offset();
        let Some(tok) = self.peek() else {
            return Err(ExprError {
                offset,
                message: "expected expression, found end of input".into(),
            });
        };
        match &tok.kind {
            TokKind::Num(r) => {
                let r = r.clone();
                self.pos += 1;
                Ok(Expr::Lit(r))
            }
            TokKind::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(e)
            }
            TokKind::Ident(name) => {
                let name = name.clone();
                self.pos += 1;
                match name.as_str() {
                    "t" => Ok(Expr::Var(Var::T)),
                    "s" => Ok(Expr::Var(Var::S)),
                    "x" => Ok(Expr::Var(Var::X)),
                    "min" | "max" => {
                        self.expect(TokKind::LParen, "`(`")?;
                        let a = self.expr()?;
                        self.expect(TokKind::Comma, "`,`")?;
                        let b = self.expr()?;
                        self.expect(TokKind::RParen, "`)`")?;
                        let op = if name == "min" {
                            BinOp::Min
                        } else {
                            BinOp::Max
                        };
                        Ok(Expr::Bin(op, Box::new(a), Box::new(b)))
                    }
                    _ => Err(ExprError {
                        offset,
                        message: format!("unknown identifier `{name}`"),
                    }),
                }
            }
            other => Err(ExprError {
                offset,
                message: format!("expected expression, found `{other}`"),
            }),
        }
    }
}
