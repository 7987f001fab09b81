//! Expression grammar shared by spec values and command arguments:
//!
//! ```text
//! sum     := tensor (('+' | '-') tensor)*
//! tensor  := product ('@' product)?
//! product := unary ('*' unary | '/' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := number | name | name '(' sum ')' | '(' sum ')'
//! ```
//! Division is only allowed by nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Q;
use crate::supercore::{AlgebraRef, SuperPolynomial, TensorElement};
use crate::uea::{NCPolynomial, Symbol, SymbolKind};

/// A parse or evaluation error at a 1-based column of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { column, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Name(String),
    Call(String, Box<Spanned>),
    Neg(Box<Spanned>),
    Add(Box<Spanned>, Box<Spanned>),
    Sub(Box<Spanned>, Box<Spanned>),
    Mul(Box<Spanned>, Box<Spanned>),
    Div(Box<Spanned>, Box<Spanned>),
    Pow(Box<Spanned>, u32),
    Tensor(Box<Spanned>, Box<Spanned>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spanned {
    pub column: usize,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((col, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push((col, Tok::Name(chars[start..i].iter().collect())));
        } else if "+-*/^()@".contains(c) {
            out.push((col, Tok::Op(c)));
            i += 1;
        } else {
            return err(col, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Spanned, ExprError> {
        let mut lhs = self.tensor()?;
        loop {
            let column = self.column();
            if self.eat('+') {
                let rhs = self.tensor()?;
                lhs = Spanned { column, expr: Expr::Add(Box::new(lhs), Box::new(rhs)) };
            } else if self.eat('-') {
                let rhs = self.tensor()?;
                lhs = Spanned { column, expr: Expr::Sub(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Spanned, ExprError> {
        let lhs = self.product()?;
        let column = self.column();
        if self.eat('@') {
            let rhs = self.product()?;
            if self.peek() == Some(&Tok::Op('@')) {
                return err(self.column(), "only two tensor factors are supported");
            }
            return Ok(Spanned { column, expr: Expr::Tensor(Box::new(lhs), Box::new(rhs)) });
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Spanned, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let column = self.column();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Spanned { column, expr: Expr::Mul(Box::new(lhs), Box::new(rhs)) };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = Spanned { column, expr: Expr::Div(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Spanned, ExprError> {
        let column = self.column();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Spanned { column, expr: Expr::Neg(Box::new(inner)) });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Spanned, ExprError> {
        let base = self.atom()?;
        let column = self.column();
        if self.eat('^') {
            let c = self.column();
            return match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| err(c, "exponent too large"))?;
                    Ok(Spanned { column, expr: Expr::Pow(Box::new(base), e) })
                }
                _ => err(c, "expected a nonnegative integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Spanned, ExprError> {
        let column = self.column();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(Spanned { column, expr: Expr::Num(Q::from_integer(n)) })
            }
            Some((_, Tok::Name(name))) => {
                self.pos += 1;
                if self.eat('(') {
                    let inner = self.sum()?;
                    if !self.eat(')') {
                        return err(self.column(), "expected `)`");
                    }
                    return Ok(Spanned { column, expr: Expr::Call(name, Box::new(inner)) });
                }
                Ok(Spanned { column, expr: Expr::Name(name) })
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return err(self.column(), "expected `)`");
                }
                Ok(inner)
            }
            Some((_, Tok::Op(c))) => err(column, format!("unexpected `{c}`")),
            None => err(column, "unexpected end of expression"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Spanned, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.chars().count() + 1 };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        return err(p.column(), "unexpected trailing input");
    }
    Ok(e)
}

/// Evaluates a constant subexpression, if it is one.
fn constant(e: &Spanned) -> Option<Q> {
    Some(match &e.expr {
        Expr::Num(q) => q.clone(),
        Expr::Neg(a) => -constant(a)?,
        Expr::Add(a, b) => constant(a)? + constant(b)?,
        Expr::Sub(a, b) => constant(a)? - constant(b)?,
        Expr::Mul(a, b) => constant(a)? * constant(b)?,
        Expr::Div(a, b) => {
            let d = constant(b)?;
            if d.is_zero() {
                return None;
            }
            constant(a)? / d
        }
        Expr::Pow(a, k) => {
            let c = constant(a)?;
            (0..*k).fold(Q::one(), |acc, _| acc * &c)
        }
        _ => return None,
    })
}

fn divisor(b: &Spanned) -> Result<Q, ExprError> {
    match constant(b) {
        Some(d) if !d.is_zero() => Ok(d),
        Some(_) => err(b.column, "division by zero"),
        None => err(b.column, "division is only allowed by nonzero constants"),
    }
}

/// Evaluates to a polynomial in the supercommutative algebra `alg`.
pub fn eval_poly(e: &Spanned, alg: &AlgebraRef) -> Result<SuperPolynomial, ExprError> {
    Ok(match &e.expr {
        Expr::Num(q) => SuperPolynomial::constant(alg, q.clone()),
        Expr::Name(n) => match alg.index_of(n) {
            Some(i) => SuperPolynomial::generator(alg, i),
            None => return err(e.column, format!("unknown generator `{n}`")),
        },
        Expr::Call(f, _) => return err(e.column, format!("`{f}(...)` is not allowed here")),
        Expr::Neg(a) => -eval_poly(a, alg)?,
        Expr::Add(a, b) => eval_poly(a, alg)? + eval_poly(b, alg)?,
        Expr::Sub(a, b) => eval_poly(a, alg)? - eval_poly(b, alg)?,
        Expr::Mul(a, b) => eval_poly(a, alg)? * eval_poly(b, alg)?,
        Expr::Div(a, b) => eval_poly(a, alg)?.scale(&divisor(b)?.recip()),
        Expr::Pow(a, k) => eval_poly(a, alg)?.pow(*k),
        Expr::Tensor(..) => return err(e.column, "`@` is only allowed in coproduct values"),
    })
}

/// Evaluates to an element of `A (x) A`; a plain constant `c` means `c (1 @ 1)`.
pub fn eval_tensor(e: &Spanned, alg: &AlgebraRef) -> Result<TensorElement, ExprError> {
    let mismatch = |_| ExprError { column: e.column, message: "algebra mismatch".into() };
    Ok(match &e.expr {
        Expr::Tensor(a, b) => TensorElement::pure(&eval_poly(a, alg)?, &eval_poly(b, alg)?),
        Expr::Neg(a) => eval_tensor(a, alg)?.scale(&-Q::one()),
        Expr::Add(a, b) => eval_tensor(a, alg)?.checked_add(&eval_tensor(b, alg)?).map_err(mismatch)?,
        Expr::Sub(a, b) => eval_tensor(a, alg)?.checked_sub(&eval_tensor(b, alg)?).map_err(mismatch)?,
        Expr::Mul(a, b) => eval_tensor(a, alg)?.checked_mul(&eval_tensor(b, alg)?).map_err(mismatch)?,
        Expr::Div(a, b) => eval_tensor(a, alg)?.scale(&divisor(b)?.recip()),
        Expr::Pow(a, k) => {
            let base = eval_tensor(a, alg)?;
            let mut acc = TensorElement::one(alg, alg);
            for _ in 0..*k {
                acc = acc.checked_mul(&base).map_err(mismatch)?;
            }
            acc
        }
        _ => match constant(e) {
            Some(c) => TensorElement::one(alg, alg).scale(&c),
            None => return err(e.column, "expected a tensor `a @ b`"),
        },
    })
}

/// Evaluates a word expression over symbols produced by `symbol`, which sees
/// each name and optional call argument.
fn eval_nc(
    e: &Spanned,
    alg: &AlgebraRef,
    symbol: &dyn Fn(&Spanned) -> Result<NCPolynomial, ExprError>,
) -> Result<NCPolynomial, ExprError> {
    let mismatch = |_| ExprError { column: e.column, message: "algebra mismatch".into() };
    Ok(match &e.expr {
        Expr::Num(q) => NCPolynomial::constant(alg, q.clone()),
        Expr::Name(_) | Expr::Call(..) => symbol(e)?,
        Expr::Neg(a) => eval_nc(a, alg, symbol)?.scale(&-Q::one()),
        Expr::Add(a, b) => eval_nc(a, alg, symbol)?.checked_add(&eval_nc(b, alg, symbol)?).map_err(mismatch)?,
        Expr::Sub(a, b) => eval_nc(a, alg, symbol)?.checked_sub(&eval_nc(b, alg, symbol)?).map_err(mismatch)?,
        Expr::Mul(a, b) => eval_nc(a, alg, symbol)?.checked_mul(&eval_nc(b, alg, symbol)?).map_err(mismatch)?,
        Expr::Div(a, b) => eval_nc(a, alg, symbol)?.scale(&divisor(b)?.recip()),
        Expr::Pow(a, k) => {
            let base = eval_nc(a, alg, symbol)?;
            let mut acc = NCPolynomial::one(alg);
            for _ in 0..*k {
                acc = acc.checked_mul(&base).map_err(mismatch)?;
            }
            acc
        }
        Expr::Tensor(..) => return err(e.column, "`@` is not allowed here"),
    })
}

/// Evaluates a word in the free algebra on `m(..)`, `h(..)` of `alg`, before
/// normalization. `m(p)` and `h(p)` take base expressions.
pub fn eval_uea(e: &Spanned, alg: &AlgebraRef) -> Result<NCPolynomial, ExprError> {
    let symbol = |s: &Spanned| -> Result<NCPolynomial, ExprError> {
        match &s.expr {
            Expr::Call(f, arg) if f == "m" || f == "h" => {
                let p = eval_poly(arg, alg)?;
                let r = if f == "m" { crate::uea::embed_m(alg, &p) } else { crate::uea::embed_h(alg, &p) };
                r.map_err(|x| ExprError { column: arg.column, message: x.to_string() })
            }
            Expr::Call(f, _) => err(s.column, format!("unknown wrapper `{f}`, expected m(...) or h(...)")),
            Expr::Name(n) => err(s.column, format!("wrap `{n}` in m(...) or h(...)")),
            _ => unreachable!(),
        }
    };
    eval_nc(e, alg, &symbol)
}

/// Evaluates a word in `X1.., Y1..` for a Weyl algebra of rank `rank` whose
/// symbol algebra is `alg`.
pub fn eval_weyl(e: &Spanned, alg: &AlgebraRef, rank: usize) -> Result<NCPolynomial, ExprError> {
    let symbol = |s: &Spanned| -> Result<NCPolynomial, ExprError> {
        if let Expr::Name(n) = &s.expr {
            let (kind, idx) = match (n.strip_prefix('X'), n.strip_prefix('Y')) {
                (Some(i), _) => (SymbolKind::M, i),
                (_, Some(i)) => (SymbolKind::H, i),
                _ => return err(s.column, format!("unknown Weyl generator `{n}`")),
            };
            return match idx.parse::<usize>() {
                Ok(i) if (1..=rank).contains(&i) => Ok(NCPolynomial::symbol(alg, Symbol { kind, gen: i - 1 })),
                _ => err(s.column, format!("`{n}` is out of range 1..={rank}")),
            };
        }
        err(s.column, "calls are not allowed in Weyl expressions")
    };
    eval_nc(e, alg, &symbol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::{Algebra, Generator};

    fn alg() -> AlgebraRef {
        Algebra::new(vec![Generator::odd("x1"), Generator::odd("y1"), Generator::even("z")]).unwrap()
    }

    #[test]
    fn precedence() {
        let a = alg();
        let p = eval_poly(&parse_expr("1 + 2*z^2 - z/2").unwrap(), &a).unwrap();
        assert_eq!(p.to_string(), "2*z^2 - 1/2*z + 1");
        let p = eval_poly(&parse_expr("-(y1*x1)").unwrap(), &a).unwrap();
        assert_eq!(p.to_string(), "x1*y1");
    }

    #[test]
    fn diagnostics_carry_columns() {
        let a = alg();
        let e = eval_poly(&parse_expr("x1*w").unwrap(), &a).unwrap_err();
        assert_eq!((e.column, e.message.as_str()), (4, "unknown generator `w`"));
        assert_eq!(parse_expr("x1 +").unwrap_err().column, 5);
        assert_eq!(parse_expr("x1 $ 2").unwrap_err().column, 4);
        let e = eval_poly(&parse_expr("x1/z").unwrap(), &a).unwrap_err();
        assert_eq!(e.column, 4);
    }

    #[test]
    fn tensors_and_words() {
        let a = alg();
        let t = eval_tensor(&parse_expr("z @ 1 + 1 @ z").unwrap(), &a).unwrap();
        assert_eq!(t.to_string(), "1 @ z + z @ 1");
        let w = eval_uea(&parse_expr("h(x1)*m(y1)").unwrap(), &a).unwrap();
        assert_eq!(w.num_terms(), 1);
        assert!(eval_uea(&parse_expr("x1").unwrap(), &a).is_err());
    }
}
