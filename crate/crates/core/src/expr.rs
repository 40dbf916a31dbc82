//! The surface expression language for phase-space symbols.
//!
//! Grammar (whitespace-insensitive, no implicit multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-'? factor
//! factor := base ('^' signed-integer)?
//! base   := integer | 'i' | 'p' | 'q' | 'hbar' | '(' expr ')'
//! ```
//!
//! Rational constants are written with '/', which the normalizer folds
//! exactly, so "3/2" and "3 / 2" denote the same scalar. No floating-point
//! literals exist anywhere in the language.

use std::fmt;

use num::{BigInt, BigRational};

use crate::phase::PhaseFn;
use crate::printer::{render_phase, OutputFormat};
use crate::scalar::{GaussianRational, HScalar};

/// Abstract expression tree produced by [`parse`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Literal(BigRational),
    ImaginaryUnit,
    SymbolP,
    SymbolQ,
    SymbolHbar,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Syntax error with the byte offset it occurred at and the token set the
/// parser would have accepted there.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: found {}, expected one of: {}",
            self.position,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for ParseError {}

/// Failure to fold an [`Expr`] into the phase-space algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalizeError {
    /// Divisor is not a single monomial `c * p^k * hbar^j`.
    NonMonomialDivisor { divisor: String },
    /// Divisor involves the position variable, which has no inverse here.
    QNotInvertible { divisor: String },
    DivisionByZero,
    /// A negative power was applied to a value involving `q`.
    NegativeQPower { base: String, exponent: i64 },
    /// Exponent magnitude beyond what expansion supports.
    ExponentTooLarge { exponent: i64 },
}

impl fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizeError::NonMonomialDivisor { divisor } => {
                write!(f, "divisor '{divisor}' is not a single invertible monomial c*p^k*hbar^j")
            }
            NormalizeError::QNotInvertible { divisor } => {
                write!(f, "divisor '{divisor}' involves q, which is not invertible in the algebra")
            }
            NormalizeError::DivisionByZero => write!(f, "division by zero"),
            NormalizeError::NegativeQPower { base, exponent } => {
                write!(f, "negative power {exponent} of '{base}' would need an inverse of q")
            }
            NormalizeError::ExponentTooLarge { exponent } => {
                write!(f, "exponent {exponent} is too large to expand")
            }
        }
    }
}

impl std::error::Error for NormalizeError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    I,
    P,
    Q,
    Hbar,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer '{n}'"),
            Tok::I => "'i'".into(),
            Tok::P => "'p'".into(),
            Tok::Q => "'q'".into(),
            Tok::Hbar => "'hbar'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b'+' => {
                out.push((pos, Tok::Plus));
                pos += 1;
            }
            b'-' => {
                out.push((pos, Tok::Minus));
                pos += 1;
            }
            b'*' => {
                out.push((pos, Tok::Star));
                pos += 1;
            }
            b'/' => {
                out.push((pos, Tok::Slash));
                pos += 1;
            }
            b'^' => {
                out.push((pos, Tok::Caret));
                pos += 1;
            }
            b'(' => {
                out.push((pos, Tok::LParen));
                pos += 1;
            }
            b')' => {
                out.push((pos, Tok::RParen));
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &src[start..pos];
                out.push((start, Tok::Int(digits.parse().expect("digit run parses"))));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
                let word = &src[start..pos];
                let tok = match word {
                    "i" => Tok::I,
                    "p" => Tok::P,
                    "q" => Tok::Q,
                    "hbar" => Tok::Hbar,
                    _ => {
                        return Err(ParseError {
                            position: start,
                            found: format!("identifier '{word}'"),
                            expected: vec!["'i'", "'p'", "'q'", "'hbar'"],
                        })
                    }
                };
                out.push((start, tok));
            }
            _ => {
                return Err(ParseError {
                    position: pos,
                    found: format!("character '{}'", &src[pos..pos + 1]),
                    expected: vec!["number", "'i'", "'p'", "'q'", "'hbar'", "'('", "operator"],
                })
            }
        }
    }
    out.push((src.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            position: self.pos(),
            found: self.peek().describe(),
            expected,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let negative = if matches!(self.peek(), Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            match self.peek().clone() {
                Tok::Int(n) => {
                    let pos = self.pos();
                    self.bump();
                    let mut e: i64 = i64::try_from(&n).map_err(|_| ParseError {
                        position: pos,
                        found: format!("integer '{n}'"),
                        expected: vec!["exponent within i64 range"],
                    })?;
                    if negative {
                        e = -e;
                    }
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.error(vec!["integer exponent"])),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Literal(BigRational::from_integer(n)))
            }
            Tok::I => {
                self.bump();
                Ok(Expr::ImaginaryUnit)
            }
            Tok::P => {
                self.bump();
                Ok(Expr::SymbolP)
            }
            Tok::Q => {
                self.bump();
                Ok(Expr::SymbolQ)
            }
            Tok::Hbar => {
                self.bump();
                Ok(Expr::SymbolHbar)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if matches!(self.peek(), Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.error(vec!["')'"]))
                }
            }
            _ => Err(self.error(vec!["number", "'i'", "'p'", "'q'", "'hbar'", "'('", "'-'"])),
        }
    }
}

/// Parses the expression language.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser { toks, at: 0 };
    let e = parser.expr()?;
    if matches!(parser.peek(), Tok::Eof) {
        Ok(e)
    } else {
        Err(parser.error(vec!["'+'", "'-'", "'*'", "'/'", "end of input"]))
    }
}

fn text(f: &PhaseFn) -> String {
    render_phase(f, OutputFormat::Text)
}

/// Inverse of a single monomial `c * p^k * hbar^j`; anything else is
/// rejected with the reason.
fn invert_monomial(f: &PhaseFn) -> Result<PhaseFn, NormalizeError> {
    if f.is_zero() {
        return Err(NormalizeError::DivisionByZero);
    }
    let comps: Vec<_> = f.components().collect();
    if comps.len() != 1 {
        return Err(NormalizeError::NonMonomialDivisor { divisor: text(f) });
    }
    let (m, poly) = comps[0];
    let qterms: Vec<_> = poly.iter().collect();
    if qterms.len() != 1 {
        return Err(NormalizeError::NonMonomialDivisor { divisor: text(f) });
    }
    let (n, scalar) = (qterms[0].0, qterms[0].1);
    if n != 0 {
        return Err(NormalizeError::QNotInvertible { divisor: text(f) });
    }
    let hterms: Vec<_> = scalar.iter().collect();
    if hterms.len() != 1 {
        return Err(NormalizeError::NonMonomialDivisor { divisor: text(f) });
    }
    let (j, c) = (hterms[0].0, hterms[0].1);
    let inv = c.checked_inv().ok_or(NormalizeError::DivisionByZero)?;
    Ok(PhaseFn::monomial(-m, 0, HScalar::monomial(inv, -j)))
}

fn pow_phase(base: &PhaseFn, e: i64) -> Result<PhaseFn, NormalizeError> {
    if e >= 0 {
        let exp = u32::try_from(e).map_err(|_| NormalizeError::ExponentTooLarge { exponent: e })?;
        Ok(base.pow(exp))
    } else {
        let inv = invert_monomial(base).map_err(|err| match err {
            NormalizeError::QNotInvertible { divisor } => {
                NormalizeError::NegativeQPower { base: divisor, exponent: e }
            }
            other => other,
        })?;
        let exp = u32::try_from(e.unsigned_abs())
            .map_err(|_| NormalizeError::ExponentTooLarge { exponent: e })?;
        Ok(inv.pow(exp))
    }
}

/// Folds an expression tree into a phase-space symbol, distributing products
/// and resolving division by invertible monomials exactly.
pub fn normalize(e: &Expr) -> Result<PhaseFn, NormalizeError> {
    match e {
        Expr::Literal(r) => Ok(PhaseFn::constant(HScalar::from_rational(r.clone()))),
        Expr::ImaginaryUnit => Ok(PhaseFn::constant(HScalar::from_gaussian(
            GaussianRational::i(),
        ))),
        Expr::SymbolP => Ok(PhaseFn::p()),
        Expr::SymbolQ => Ok(PhaseFn::q()),
        Expr::SymbolHbar => Ok(PhaseFn::constant(HScalar::hbar())),
        Expr::Add(a, b) => Ok(&normalize(a)? + &normalize(b)?),
        Expr::Sub(a, b) => Ok(&normalize(a)? - &normalize(b)?),
        Expr::Mul(a, b) => Ok(&normalize(a)? * &normalize(b)?),
        Expr::Div(a, b) => {
            let divisor = normalize(b)?;
            Ok(&normalize(a)? * &invert_monomial(&divisor)?)
        }
        Expr::Neg(a) => Ok(-normalize(a)?),
        Expr::Pow(a, k) => pow_phase(&normalize(a)?, *k),
    }
}

/// Convenience: parse then normalize.
pub fn read_phase(src: &str) -> Result<PhaseFn, String> {
    let e = parse(src).map_err(|err| err.to_string())?;
    normalize(&e).map_err(|err| err.to_string())
}
