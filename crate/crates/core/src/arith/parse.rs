//! Text syntax shared by field elements and closed-form matrix families.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] (INT | IDENT | '(' expr ')'))?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Exponents may be integers, halves such as `q^(3/2)`, or (in family entries)
//! expressions in the degree symbol `k`, e.g. `(-q^2*a)^k` or `x/k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Fe;
use super::laurent::Coef;
use super::var::Var;
use super::ArithError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    /// The degree symbol in family entries.
    Degree,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ArithError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ArithError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    degree_symbol: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ArithError> {
        Err(ArithError::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ArithError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ArithError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ArithError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ArithError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let exp = self.atom()?;
        let exp = if neg { Expr::Neg(Box::new(exp)) } else { exp };
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn atom(&mut self) -> Result<Expr, ArithError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.degree_symbol && name == "k" {
                    Ok(Expr::Degree)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, a name or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_with(src: &str, degree_symbol: bool) -> Result<Expr, ArithError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), degree_symbol };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a field expression (no degree symbol).
pub fn parse_expr(src: &str) -> Result<Expr, ArithError> {
    parse_with(src, false)
}

/// Parses a family entry, where `k` denotes the degree.
pub fn parse_family_expr(src: &str) -> Result<Expr, ArithError> {
    parse_with(src, true)
}

pub fn parse_fe(src: &str) -> Result<Fe, ArithError> {
    parse_expr(src)?.eval(None)
}

impl Expr {
    /// Evaluates with the degree symbol bound to `k`.
    pub fn eval(&self, k: Option<i64>) -> Result<Fe, ArithError> {
        Ok(match self {
            Expr::Num(n) => Fe::from_rational(Coef::from_integer(n.clone())),
            Expr::Var(name) => {
                if !Var::is_valid_name(name) {
                    return Err(ArithError::Parse { pos: 0, msg: format!("bad name {name}") });
                }
                Fe::named(name)
            }
            Expr::Degree => match k {
                Some(k) => Fe::from_int(k),
                None => return Err(ArithError::UnboundDegree),
            },
            Expr::Neg(a) => -a.eval(k)?,
            Expr::Add(a, b) => a.eval(k)? + b.eval(k)?,
            Expr::Sub(a, b) => a.eval(k)? - b.eval(k)?,
            Expr::Mul(a, b) => a.eval(k)? * b.eval(k)?,
            Expr::Div(a, b) => a.eval(k)?.checked_div(&b.eval(k)?)?,
            Expr::Pow(a, b) => {
                let e = b.eval(k)?.as_rational().ok_or(ArithError::BadExponent)?;
                let twice = e * Coef::from_integer(BigInt::from(2));
                if !twice.is_integer() {
                    return Err(ArithError::BadExponent);
                }
                let half: i64 = i64::try_from(twice.to_integer()).map_err(|_| ArithError::BadExponent)?;
                let base = a.eval(k)?;
                if base.is_zero() && half <= 0 {
                    if half == 0 {
                        return Ok(Fe::one());
                    }
                    return Err(ArithError::DivisionByZero);
                }
                base.pow_half(half)?
            }
        })
    }

    pub fn uses_degree(&self) -> bool {
        match self {
            Expr::Degree => true,
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Neg(a) => a.uses_degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.uses_degree() || b.uses_degree()
            }
        }
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(n) if n.is_zero())
    }

    pub fn is_one_literal(&self) -> bool {
        matches!(self, Expr::Num(n) if n.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_fe("1 + 2*3").unwrap(), Fe::from_int(7));
        assert_eq!(parse_fe("-2^2").unwrap(), Fe::from_int(-4));
        assert_eq!(parse_fe("2/4*q").unwrap(), &Fe::ratio(1, 2) * &Fe::q());
        assert_eq!(parse_fe("q^-2").unwrap(), Fe::q_pow(-2));
    }

    #[test]
    fn half_exponents() {
        let x = parse_fe("q^(3/2)").unwrap();
        assert_eq!(&x * &x, Fe::q_pow(3));
        assert!(parse_fe("q^(1/3)").is_err());
    }

    #[test]
    fn degree_symbol() {
        let e = parse_family_expr("(-q^2*a)^k/k").unwrap();
        assert!(e.uses_degree());
        let v = e.eval(Some(3)).unwrap();
        assert_eq!(v, parse_fe("-q^6*a^3/3").unwrap());
        assert!(e.eval(None).is_err());
        assert!(!parse_expr("k + 1").unwrap().uses_degree());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_fe("q + $") {
            Err(ArithError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_fe("(q + 1").is_err());
        assert!(parse_fe("q q").is_err());
    }
}
