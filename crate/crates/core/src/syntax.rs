//! Text syntax for algebra elements.
//!
//! Grammar, loosest first: `+ -`, `* /`, unary `-`, `^`. Divisors and the
//! bases of negative or half-integer powers must be scalars;
//! half-integer exponents only on `q`. The printed form of [`Element`] and
//! [`Scalar`] parses back to the same value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::Element;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("negative exponent on an algebra element")]
    NegativeExponent,
    #[error("half-integer exponent is only allowed on q")]
    FractionalExponent,
    #[error("division by an algebra element")]
    NonScalarDivisor,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Character offset into the input.
    pub pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Q,
    I,
    M,
    K,
    /// `[2]^(1/2)`
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenName {
    X0,
    XMinus,
    XPlus,
    X3,
    X30,
    XSquare,
    XiPlus,
    XiMinus,
}

impl GenName {
    fn lookup(s: &str) -> Option<GenName> {
        Some(match s {
            "x0" => GenName::X0,
            "xm" => GenName::XMinus,
            "xp" => GenName::XPlus,
            "x3" => GenName::X3,
            "x30" => GenName::X30,
            "xsq" => GenName::XSquare,
            "xip" | "ξ₊" => GenName::XiPlus,
            "xim" | "ξ₋" => GenName::XiMinus,
            _ => return None,
        })
    }

    pub fn to_element(self) -> Element {
        match self {
            GenName::X0 => Element::x0(),
            GenName::XMinus => Element::x_minus(),
            GenName::XPlus => Element::x_plus(),
            GenName::X3 => Element::x3(),
            GenName::X30 => Element::x30(),
            GenName::XSquare => Element::x_square(),
            GenName::XiPlus => Element::xi_plus(),
            GenName::XiMinus => Element::xi_minus(),
        }
    }
}

/// Exponent `num / den` with `den` 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

/// Parsed expression with source positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceExpr {
    Int(BigInt),
    Sym(Symbol),
    Gen(GenName),
    Neg(Box<SurfaceExpr>),
    Add(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Sub(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Mul(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Div(Box<SurfaceExpr>, Box<SurfaceExpr>, usize),
    Pow(Box<SurfaceExpr>, Exponent, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Op(c) => write!(f, "{c:?}"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == 'ξ' || c == '₊' || c == '₋'
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(BigInt::from_str(&s).expect("digits")), start));
        } else if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '−' {
            out.push((Tok::Op('-'), i));
            i += 1;
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::UnexpectedChar(c),
                pos: i,
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            pos: self.pos(),
        })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected()
        }
    }

    fn sum(&mut self) -> Result<SurfaceExpr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = SurfaceExpr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = SurfaceExpr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<SurfaceExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = SurfaceExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                lhs = SurfaceExpr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<SurfaceExpr, ParseError> {
        if self.eat('-') {
            return Ok(SurfaceExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<SurfaceExpr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let exp = if self.eat('(') {
            let neg = self.eat('-');
            let num = self.int()?;
            let den = if self.eat('/') { self.int()? } else { 1 };
            self.expect(')')?;
            if den != 1 && den != 2 {
                return Err(ParseError {
                    kind: ParseErrorKind::FractionalExponent,
                    pos,
                });
            }
            Exponent {
                num: if neg { -num } else { num },
                den,
            }
        } else {
            let neg = self.eat('-');
            let num = self.int()?;
            Exponent {
                num: if neg { -num } else { num },
                den: 1,
            }
        };
        Ok(SurfaceExpr::Pow(Box::new(base), exp, pos))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v = i64::try_from(n).or_else(|_| self.unexpected())?;
                self.at += 1;
                Ok(v)
            }
            _ => self.unexpected(),
        }
    }

    fn atom(&mut self) -> Result<SurfaceExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(SurfaceExpr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                let sym = match name.as_str() {
                    "q" => Some(Symbol::Q),
                    "i" => Some(Symbol::I),
                    "m" => Some(Symbol::M),
                    "k" => Some(Symbol::K),
                    "r" => Some(Symbol::R),
                    _ => None,
                };
                let node = match (sym, GenName::lookup(&name)) {
                    (Some(s), _) => SurfaceExpr::Sym(s),
                    (None, Some(g)) => SurfaceExpr::Gen(g),
                    (None, None) => return self.err(ParseErrorKind::UnknownIdentifier(name)),
                };
                self.at += 1;
                Ok(node)
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.unexpected(),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<SurfaceExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.chars().count(),
    };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return p.unexpected();
    }
    Ok(e)
}

enum Value {
    Scalar(Scalar),
    Element(Element),
}

impl Value {
    fn into_element(self) -> Element {
        match self {
            Value::Scalar(s) => Element::scalar(s),
            Value::Element(e) => e,
        }
    }
}

impl SurfaceExpr {
    /// Evaluates to a normal-ordered element.
    pub fn eval(&self) -> Result<Element, ParseError> {
        Ok(self.value()?.into_element())
    }

    /// Evaluates an expression free of generators.
    pub fn eval_scalar(&self) -> Result<Option<Scalar>, ParseError> {
        Ok(match self.value()? {
            Value::Scalar(s) => Some(s),
            Value::Element(_) => None,
        })
    }

    fn value(&self) -> Result<Value, ParseError> {
        use Value::{Element as E, Scalar as S};
        Ok(match self {
            SurfaceExpr::Int(n) => S(Scalar::from_rational(&BigRational::from_integer(n.clone()))),
            SurfaceExpr::Sym(s) => S(match s {
                Symbol::Q => Scalar::q(),
                Symbol::I => Scalar::i(),
                Symbol::M => Scalar::m(),
                Symbol::K => Scalar::k(),
                Symbol::R => Scalar::r(),
            }),
            SurfaceExpr::Gen(g) => E(g.to_element()),
            SurfaceExpr::Neg(a) => match a.value()? {
                S(x) => S(-x),
                E(x) => E(-x),
            },
            SurfaceExpr::Add(a, b) => match (a.value()?, b.value()?) {
                (S(x), S(y)) => S(x + y),
                (x, y) => E(x.into_element() + y.into_element()),
            },
            SurfaceExpr::Sub(a, b) => match (a.value()?, b.value()?) {
                (S(x), S(y)) => S(x - y),
                (x, y) => E(x.into_element() - y.into_element()),
            },
            SurfaceExpr::Mul(a, b) => match (a.value()?, b.value()?) {
                (S(x), S(y)) => S(x * y),
                (S(x), E(y)) | (E(y), S(x)) => E(y.scale(&x)),
                (E(x), E(y)) => E(&x * &y),
            },
            SurfaceExpr::Div(a, b, pos) => {
                let d = match b.value()? {
                    S(d) => d,
                    E(_) => {
                        return Err(ParseError {
                            kind: ParseErrorKind::NonScalarDivisor,
                            pos: *pos,
                        })
                    }
                };
                let inv = d.inv().ok_or(ParseError {
                    kind: ParseErrorKind::DivisionByZero,
                    pos: *pos,
                })?;
                match a.value()? {
                    S(x) => S(x * inv),
                    E(x) => E(x.scale(&inv)),
                }
            }
            SurfaceExpr::Pow(a, e, pos) => {
                let fail = |kind| ParseError { kind, pos: *pos };
                if e.den == 2 {
                    if **a != SurfaceExpr::Sym(Symbol::Q) {
                        return Err(fail(ParseErrorKind::FractionalExponent));
                    }
                    return Ok(S(Scalar::s_pow(e.num)));
                }
                match a.value()? {
                    S(x) => S(x
                        .powi(e.num)
                        .map_err(|_| fail(ParseErrorKind::DivisionByZero))?),
                    E(x) => {
                        let n = u32::try_from(e.num)
                            .map_err(|_| fail(ParseErrorKind::NegativeExponent))?;
                        E(x.pow(n))
                    }
                }
            }
        })
    }
}

/// Parses and normal-orders an element.
pub fn parse_element(text: &str) -> Result<Element, ParseError> {
    parse(text)?.eval()
}

/// Parses a scalar; generators are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    parse(text)?.eval_scalar()?.ok_or(ParseError {
        kind: ParseErrorKind::UnexpectedToken("algebra generator in a scalar".into()),
        pos: 0,
    })
}

/// The canonical text of an element.
pub fn print_canonical(e: &Element) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{lambda, qnum_sym};

    #[test]
    fn precedence_and_associativity() {
        let e = parse_element("x0 + q*x3^2").unwrap();
        let x3 = Element::x3();
        assert_eq!(e, Element::x0() + (&x3 * &x3).scale(&Scalar::q()));
        let a = parse_element("xm*xp*x3").unwrap();
        let b = &(&Element::x_minus() * &Element::x_plus()) * &Element::x3();
        assert_eq!(a, b);
        assert_eq!(
            parse_element("-x0^2").unwrap(),
            -(&Element::x0() * &Element::x0())
        );
    }

    #[test]
    fn light_cone_reordering() {
        let e = parse_element("xm * xp").unwrap();
        let two = qnum_sym(2);
        let expect = (Element::x_square()
            + (&Element::x30() * &Element::x30()).scale(&Scalar::q_pow(2))
            + (&Element::x0() * &Element::x30()).scale(&(Scalar::q() * two.clone())))
        .scale(&(Scalar::one() / two));
        assert_eq!(e, expect);
    }

    #[test]
    fn scalar_forms() {
        assert_eq!(parse_scalar("q^(3/2)").unwrap(), Scalar::s_pow(3));
        assert_eq!(parse_scalar("q^-1 + q").unwrap(), qnum_sym(2));
        assert_eq!(parse_scalar("(q - q^-1)").unwrap(), lambda());
        assert_eq!(parse_scalar("-3/2").unwrap(), Scalar::from_ratio(-3, 2));
        assert_eq!(parse_scalar("r^2").unwrap(), qnum_sym(2));
        assert_eq!(
            parse_scalar("((1 + q) / (q^2))*i").unwrap(),
            (Scalar::q_pow(-2) + Scalar::q_pow(-1)) * Scalar::i()
        );
    }

    #[test]
    fn round_trips() {
        for text in [
            "x0^2 + q*x3",
            "0",
            "xsq*xp - (q^(-1/2) + m)*x30^2*xm",
            "ξ₊*ξ₋ + i*k/2",
        ] {
            let e = parse_element(text).unwrap();
            assert_eq!(parse_element(&print_canonical(&e)).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_element("x0^-1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(e.pos, 3);
        let e = parse_element("x0 + y").unwrap_err();
        assert_eq!(
            e,
            ParseError {
                kind: ParseErrorKind::UnknownIdentifier("y".into()),
                pos: 5
            }
        );
        let e = parse_element("x0 / x3").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonScalarDivisor);
        assert_eq!(
            parse_element("x0 +").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(parse_element("(x0").unwrap_err().pos, 3);
        assert_eq!(
            parse_element("x0 ; 1").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar(';')
        );
        assert_eq!(
            parse_element("x3^(1/2)").unwrap_err().kind,
            ParseErrorKind::FractionalExponent
        );
        assert_eq!(
            parse_element("1/(q-q)").unwrap_err().kind,
            ParseErrorKind::DivisionByZero
        );
    }
}
