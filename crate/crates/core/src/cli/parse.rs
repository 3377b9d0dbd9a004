//! Text syntax for generalized polynomials.
//!
//! ```text
//! poly     := ['+' | '-'] term (('+' | '-') term)*
//! term     := rational | [rational ['*']] factor {['*'] factor}
//! factor   := atom {'^' nat}
//! atom     := 'x' nat | 'I' | 'E11' | 'E12' | 'E22'
//!           | '[' poly (',' poly)+ ']' | '(' poly ')'
//! rational := int ['/' nat]
//! ```
//!
//! Brackets are left-normed commutators. `E11` stands for `I - E22`; a bare
//! rational `r` is `r·I`. `#` starts a comment running to the end of the line.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{GenPolynomial, PolyError};
use crate::scalar::Rational;
use crate::walgebra::Slot;

type Poly = GenPolynomial<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(u32),
    Const(&'static str),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(v) => write!(f, "x{v}"),
            Tok::Const(c) => f.write_str(c),
            Tok::Int(i) => write!(f, "{i}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Comma => f.write_str("','"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let advance = |n: usize, column: &mut usize, i: &mut usize| {
            *i += n;
            *column += n;
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut column, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let digits = |start: usize| -> usize { chars[start..].iter().take_while(|ch| ch.is_ascii_digit()).count() };
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            ',' => Tok::Comma,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let len = digits(i);
                let text: String = chars[i..i + len].iter().collect();
                advance(len, &mut column, &mut i);
                out.push(Spanned { tok: Tok::Int(text.parse().expect("digits")), line: l0, column: c0 });
                continue;
            }
            'x' => {
                let len = digits(i + 1);
                if len == 0 {
                    return Err(err(l0, c0, "expected a variable index after 'x'".into()));
                }
                let text: String = chars[i + 1..i + 1 + len].iter().collect();
                let v: u32 = text.parse().map_err(|_| err(l0, c0, format!("variable index {text} is too large")))?;
                if v == 0 {
                    return Err(err(l0, c0, "variable indices start at 1".into()));
                }
                advance(len + 1, &mut column, &mut i);
                out.push(Spanned { tok: Tok::Var(v), line: l0, column: c0 });
                continue;
            }
            'I' | 'E' => {
                let len = chars[i..].iter().take_while(|ch| ch.is_ascii_alphanumeric()).count();
                let word: String = chars[i..i + len].iter().collect();
                let name = match word.as_str() {
                    "I" => "I",
                    "E11" => "E11",
                    "E12" => "E12",
                    "E22" => "E22",
                    _ => return Err(err(l0, c0, format!("unknown symbol `{word}`"))),
                };
                advance(len, &mut column, &mut i);
                out.push(Spanned { tok: Tok::Const(name), line: l0, column: c0 });
                continue;
            }
            other => {
                let len = chars[i..].iter().take_while(|ch| ch.is_alphanumeric() || **ch == '_').count().max(1);
                let word: String = chars[i..i + len].iter().collect();
                let msg = if other.is_alphanumeric() {
                    format!("unknown symbol `{word}`")
                } else {
                    format!("unexpected character `{other}`")
                };
                return Err(err(l0, c0, msg));
            }
        };
        advance(1, &mut column, &mut i);
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let s = &self.toks[pos];
        ParseError { line: s.line, column: s.column, message: message.into() }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = Poly::zero();
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Var(_) | Tok::Const(_) | Tok::LBracket | Tok::LParen)
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let Tok::Int(num) = self.bump() else { unreachable!("caller checked for an integer") };
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        let at = self.pos;
        match self.bump() {
            Tok::Int(den) if !den.is_zero() => Ok(Rational::new(num, den)),
            Tok::Int(_) => Err(self.error_at(at, "malformed rational: zero denominator")),
            _ => Err(self.error_at(at, "malformed rational: expected a denominator")),
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut coef = Rational::one();
        let mut acc: Option<Poly> = None;
        if matches!(self.peek(), Tok::Int(_)) {
            coef = self.rational()?;
            match self.peek() {
                Tok::Star => {
                    self.bump();
                }
                t if Self::starts_factor(t) => {}
                _ => return Ok(Poly::scalar(coef)),
            }
            acc = Some(self.factor()?);
        }
        let mut acc = match acc {
            Some(a) => a,
            None => self.factor()?,
        };
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                t if Self::starts_factor(t) => acc = &acc * &self.factor()?,
                _ => break,
            }
        }
        Ok(acc.scale(&coef))
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.pos;
            match self.bump() {
                Tok::Int(k) => {
                    let k: usize = k.try_into().map_err(|_| self.error_at(at, "exponent too large"))?;
                    base = base.pow(k);
                }
                _ => return Err(self.error_at(at, "expected a natural number exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Poly::var(v))
            }
            Tok::Const(c) => {
                self.bump();
                Ok(match c {
                    "I" => Poly::slot(Slot::One),
                    "E22" => Poly::slot(Slot::E22),
                    "E12" => Poly::slot(Slot::E12),
                    _ => &Poly::slot(Slot::One) - &Poly::slot(Slot::E22),
                })
            }
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::LBracket => {
                self.bump();
                let mut args = vec![self.poly()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.poly()?);
                }
                if args.len() < 2 {
                    return Err(self.error("a commutator needs at least two entries"));
                }
                self.expect(Tok::RBracket)?;
                Poly::commutator(&args).map_err(|e: PolyError| self.error(e.to_string()))
            }
            other => Err(self.error(format!("expected a variable, constant or bracket, found {other}"))),
        }
    }
}

pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let poly = p.poly()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek())));
    }
    Ok(poly)
}

/// Canonical text form; inverse of [`parse_poly`] up to equality.
pub fn print_poly(f: &Poly) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn worked_inputs() {
        let g = parse_poly("[x1,x2] - [x1,x2,E22]").unwrap();
        let expect = &Poly::commutator(&[Poly::var(1), Poly::var(2)]).unwrap()
            - &Poly::commutator(&[Poly::var(1), Poly::var(2), Poly::slot(Slot::E22)]).unwrap();
        assert_eq!(g, expect);
        let m = parse_poly("3/2*x1*E12*x2").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.terms().next().unwrap().1, &rational(3, 2));
        assert_eq!(print_poly(&m), "3/2*x1*E12*x2");
    }

    #[test]
    fn juxtaposition_powers_and_constants() {
        assert_eq!(parse_poly("x1 x2").unwrap(), parse_poly("x1*x2").unwrap());
        assert_eq!(parse_poly("x1^3").unwrap(), parse_poly("x1 x1 x1").unwrap());
        assert_eq!(parse_poly("E11 x1").unwrap(), parse_poly("x1 - E22 x1").unwrap());
        assert_eq!(parse_poly("2").unwrap(), Poly::scalar(rational(2, 1)));
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(parse_poly("-x1 + 2 x1").unwrap(), Poly::var(1));
        assert_eq!(parse_poly("2(x1 + x2)").unwrap(), parse_poly("2*x1 + 2*x2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 +\n  foo").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown symbol"));
        let e = parse_poly("3/0*x1").unwrap_err();
        assert!(e.message.contains("malformed rational"), "{e}");
        assert!(parse_poly("[x1]").is_err());
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("(x1").is_err());
        assert!(parse_poly("x1 ^").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(parse_poly("# generator\nx1 # trailing\n").unwrap(), Poly::var(1));
    }
}
