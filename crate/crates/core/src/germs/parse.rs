//! Recursive-descent parser for germ expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | "z" INT | "(" expr ")"
//! ```
//!
//! Products and quotients of linear forms are kept factored while parsing so that
//! `1/((z1+z2)*z3)` never has to be multiplied out and factored again. A divisor that
//! is only available as a polynomial is factored into linear forms after the fact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::linear_factors;
use super::form::LinearForm;
use super::germ::{Germ, GermTerm};
use super::poly::Poly;
use crate::rat::rat_pow;
use crate::{Error, Rat, Result};

/// Parses `text` as a germ on `C^k`.
pub fn parse(text: &str, k: usize) -> Result<Germ> {
    let tokens = tokenize(text, k)?;
    let mut p = Parser { tokens, at: 0, k };
    let v = p.expr()?;
    match p.peek() {
        (Tok::End, _) => v.into_germ(k),
        (_, pos) => Err(syntax(pos, "unexpected trailing input")),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(text: &str, k: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            b'z' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = text[digits..i]
                    .parse()
                    .map_err(|_| syntax(start, "expected a variable index after 'z'"))?;
                if idx == 0 || idx > k {
                    return Err(syntax(start, format!("variable z{idx} is outside z1..z{k}")));
                }
                out.push((Tok::Var(idx - 1), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Intermediate parse value.
#[derive(Clone, Debug)]
enum Value {
    /// `scalar · Π L^e` with nonzero integer exponents.
    Factored { scalar: Rat, forms: BTreeMap<LinearForm, i64> },
    General(Germ),
}

impl Value {
    fn scalar(c: Rat) -> Self {
        Value::Factored { scalar: c, forms: BTreeMap::new() }
    }

    fn into_germ(self, k: usize) -> Result<Germ> {
        match self {
            Value::General(g) => Ok(g),
            Value::Factored { scalar, forms } => {
                let mut num = Poly::constant(k, scalar);
                let mut den = Vec::new();
                for (l, e) in forms {
                    if e > 0 {
                        num = &num * &Poly::from_form(&l).pow(e as u32);
                    } else {
                        den.push((l, (-e) as u32));
                    }
                }
                Ok(Germ::from_term(GermTerm::new(num, den)?))
            }
        }
    }

    /// Recovers the factored shape of a scalar multiple of one linear form.
    fn normalize(g: Germ) -> Value {
        if g.is_polynomial() {
            let p = g.polynomial_part();
            if p.is_constant() {
                return Value::scalar(p.constant_term());
            }
            if p.degree() == Some(1) && p.is_homogeneous() {
                if let Some((s, fs)) = linear_factors(&p) {
                    return Value::Factored { scalar: s, forms: fs.into_iter().map(|l| (l, 1)).collect() };
                }
            }
        }
        Value::General(g)
    }
}

fn multiply_factored(
    (s1, f1): (Rat, BTreeMap<LinearForm, i64>),
    (s2, f2): (&Rat, &BTreeMap<LinearForm, i64>),
) -> Value {
    let mut forms = f1;
    for (l, e) in f2 {
        let slot = forms.entry(l.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            forms.remove(l);
        }
    }
    if s1.is_zero() || s2.is_zero() {
        return Value::scalar(Rat::zero());
    }
    Value::Factored { scalar: s1 * s2, forms }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    at: usize,
    k: usize,
}

impl Parser {
    fn peek(&self) -> (Tok, usize) {
        self.tokens[self.at].clone()
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.peek();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let op = match self.peek().0 {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            let a = acc.into_germ(self.k)?;
            let b = rhs.into_germ(self.k)?;
            acc = Value::normalize(if op == 1 { &a + &b } else { &a - &b });
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let (tok, pos) = self.peek();
            match tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let inv = self.invert(rhs).map_err(|e| match e {
                        Error::Syntax { msg, .. } => Error::Syntax { pos, msg },
                        e => e,
                    })?;
                    acc = self.mul(acc, inv)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        match self.peek().0 {
            Tok::Minus => {
                self.bump();
                let v = self.unary()?;
                self.mul(Value::scalar(-Rat::one()), v)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek().0 != Tok::Caret {
            return Ok(base);
        }
        let (_, caret) = self.bump();
        let (tok, pos) = self.bump();
        let Tok::Int(n) = tok else {
            return Err(syntax(pos, "expected a nonnegative integer exponent"));
        };
        let n: u32 = n.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
        match base {
            Value::Factored { scalar, forms } => {
                if n == 0 && forms.values().any(|&e| e < 0) {
                    return Err(syntax(caret, "exponent 0 on a denominator"));
                }
                if n == 0 {
                    return Ok(Value::scalar(Rat::one()));
                }
                let forms = forms.into_iter().map(|(l, e)| (l, e * i64::from(n))).collect();
                Ok(Value::Factored { scalar: rat_pow(&scalar, n), forms })
            }
            Value::General(g) => {
                if n == 0 && !g.is_polynomial() {
                    return Err(syntax(caret, "exponent 0 on a denominator"));
                }
                Ok(Value::General(g.pow(n)))
            }
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Value::scalar(Rat::from_integer(n))),
            Tok::Var(i) => Ok(Value::Factored {
                scalar: Rat::one(),
                forms: BTreeMap::from([(LinearForm::coordinate(self.k, i), 1)]),
            }),
            Tok::Open => {
                let v = self.expr()?;
                match self.bump() {
                    (Tok::Close, _) => Ok(v),
                    (_, p) => Err(syntax(p, "expected ')'")),
                }
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            _ => Err(syntax(pos, "expected a number, variable or '('")),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Factored { scalar: s1, forms: f1 }, Value::Factored { scalar: s2, forms: f2 }) => {
                Ok(multiply_factored((s1, f1), (&s2, &f2)))
            }
            (a, b) => {
                let g = &a.into_germ(self.k)? * &b.into_germ(self.k)?;
                Ok(Value::General(g))
            }
        }
    }

    fn invert(&self, v: Value) -> Result<Value> {
        match v {
            Value::Factored { scalar, forms } => {
                if scalar.is_zero() {
                    return Err(Error::ZeroDivision);
                }
                let forms = forms.into_iter().map(|(l, e)| (l, -e)).collect();
                Ok(Value::Factored { scalar: Rat::one() / scalar, forms })
            }
            Value::General(g) => {
                let (p, den) = g.as_single_fraction();
                if p.is_zero() || g.is_zero() {
                    return Err(Error::ZeroDivision);
                }
                let (s, fs) = linear_factors(&p).ok_or_else(|| Error::NonLinearPole(p.to_string()))?;
                let mut forms: BTreeMap<LinearForm, i64> = den.into_iter().map(|(l, m)| (l, i64::from(m))).collect();
                for l in fs {
                    let slot = forms.entry(l.clone()).or_insert(0);
                    *slot -= 1;
                    if *slot == 0 {
                        forms.remove(&l);
                    }
                }
                Ok(Value::Factored { scalar: Rat::one() / s, forms })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parses_simple_fraction() {
        let g = parse("z1/(z1+z2)", 2).unwrap();
        assert_eq!(g.terms().len(), 1);
        let t = &g.terms()[0];
        assert_eq!(t.numerator(), &Poly::var(2, 0));
        assert_eq!(t.denominator(), &vec![(LinearForm::from_ints(&[1, 1]).unwrap(), 1)]);
    }

    #[test]
    fn scalars_move_to_numerator() {
        let g = parse("(2*z1+4*z2)/(2*z1)", 2).unwrap();
        let t = &g.terms()[0];
        assert_eq!(t.numerator().to_string(), "z1+2*z2");
        assert_eq!(t.denominator(), &vec![(LinearForm::coordinate(2, 0), 1)]);
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse("1/(z1*z1+z2)", 2), Err(Error::NonLinearPole(_))));
        assert!(matches!(parse("1/(z1-z1)", 2), Err(Error::ZeroDivision)));
        assert!(matches!(parse("1/0", 2), Err(Error::ZeroDivision)));
        assert!(matches!(parse("z1+", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z3", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("2 z1", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(z1", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z1^-1", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(1/z1)^0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x1", 2), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn divisor_polynomials_are_factored() {
        let g = parse("1/(z1^2-z2^2)", 2).unwrap();
        let expected = parse("1/((z1-z2)*(z1+z2))", 2).unwrap();
        assert!(g.equals(&expected));
        assert_eq!(g.terms()[0].denominator().len(), 2);
    }

    #[test]
    fn precedence() {
        assert!(parse("-z1^2", 1).unwrap().equals(&parse("0-(z1*z1)", 1).unwrap()));
        assert!(parse("1+2*3", 1).unwrap().equals(&Germ::constant(1, rat(7, 1))));
        assert!(parse("2/3/4", 1).unwrap().equals(&Germ::constant(1, rat(1, 6))));
        assert!(parse("z1^0", 1).unwrap().equals(&Germ::constant(1, rat(1, 1))));
    }

    #[test]
    fn rendering_reparses() {
        for (text, k) in [
            ("z1/(z1+z2)", 2),
            ("(z1-z2)^2/(z1+z2)^2 + 3/z1 - 1/2", 2),
            ("(z1^2*z3-7/3*z2)/((2*z1-z2)^3*z3)", 3),
            ("-5", 1),
        ] {
            let g = parse(text, k).unwrap();
            let again = parse(&g.to_string(), k).unwrap();
            assert!(g.equals(&again), "{text} -> {g}");
            assert_eq!(again.to_string(), g.to_string());
        }
    }
}
