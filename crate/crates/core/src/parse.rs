//! Text input: ring elements, polynomials in `x`, digit lists and rationals.
//!
//! One recursive-descent grammar serves every ring:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power (['*'] power)*
//! power   := primary ['^' uint]
//! primary := uint | 'x' | 'X' | symbol | '(' expr ')'
//! ```
//!
//! `symbol` is `i` for the Gaussian integers and `y` for `F_p[y]`.
//! Multiplication may be implicit (`3x^2`, `2i`, `(1+i)x`). Whitespace is
//! ignored. Positions in errors are byte offsets into the input.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, ParseError, Result};
use crate::poly::Poly;
use crate::rings::CoeffRing;

struct Parser<'a, R: CoeffRing> {
    ring: &'a R,
    src: &'a [u8],
    pos: usize,
    allow_x: bool,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a, R: CoeffRing> Parser<'a, R> {
    fn new(ring: &'a R, text: &'a str, allow_x: bool) -> Self {
        Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
            allow_x,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&c) => self.error(format!("unexpected character '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn parse_all(&mut self) -> PResult<Poly<R::Elem>> {
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let value = self.expr()?;
        if self.peek().is_some() {
            return Err(self.unexpected());
        }
        Ok(value)
    }

    fn expr(&mut self) -> PResult<Poly<R::Elem>> {
        let ring = self.ring;
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg(ring);
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(ring, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(ring, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_primary(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'('
    }

    fn term(&mut self) -> PResult<Poly<R::Elem>> {
        let ring = self.ring;
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(ring, &f);
                }
                Some(c) if Self::starts_primary(c) => {
                    let f = self.power()?;
                    acc = acc.mul(ring, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> PResult<Poly<R::Elem>> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.uint()?;
            let exp = u32::try_from(&n)
                .ok()
                .filter(|&e| e <= 4096)
                .ok_or_else(|| ParseError::new(start, "exponent too large"))?;
            return Ok(base.pow(self.ring, exp));
        }
        Ok(base)
    }

    fn uint(&mut self) -> PResult<BigUint> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(BigUint::from_str(digits).expect("ascii digits"))
    }

    fn primary(&mut self) -> PResult<Poly<R::Elem>> {
        let ring = self.ring;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.uint()?;
                let value = ring.literal(&n).map_err(|m| ParseError::new(start, m))?;
                Ok(Poly::constant(ring, value))
            }
            Some(b'x') | Some(b'X') => {
                if !self.allow_x {
                    return Err(self.error("variable x is not allowed here"));
                }
                self.pos += 1;
                Ok(Poly::x(ring))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => match ring.symbol(c as char) {
                Some(value) => {
                    self.pos += 1;
                    Ok(Poly::constant(ring, value))
                }
                None => Err(self.error(format!(
                    "symbol '{}' is not defined over {}",
                    c as char,
                    ring.descriptor()
                ))),
            },
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses a polynomial in `x` with coefficients in `ring`.
pub fn parse_poly<R: CoeffRing>(ring: &R, text: &str) -> Result<Poly<R::Elem>> {
    Ok(Parser::new(ring, text, true).parse_all()?)
}

/// Parses an element of the coefficient ring itself (no `x`).
pub fn parse_constant<R: CoeffRing>(ring: &R, text: &str) -> Result<R::Elem> {
    let p = Parser::new(ring, text, false).parse_all()?;
    Ok(p.coeff(ring, 0))
}

/// Splits at commas outside brackets, returning each piece with its offset.
fn split_top_level(text: &str, sep: u8) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, &c) in text.as_bytes().iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn offset(err: Error, by: usize) -> Error {
    match err {
        Error::Parse(mut e) => {
            e.position += by;
            Error::Parse(e)
        }
        other => other,
    }
}

/// Parses a comma-separated list of polynomials, e.g. a digit set.
pub fn parse_poly_list<R: CoeffRing>(ring: &R, text: &str) -> Result<Vec<Poly<R::Elem>>> {
    split_top_level(text, b',')
        .into_iter()
        .map(|(at, piece)| parse_poly(ring, piece).map_err(|e| offset(e, at)))
        .collect()
}

/// Parses a fraction `a/b` or an integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    let bad = |msg: &str| Error::Parse(ParseError::new(lead, format!("{msg}: '{t}'")));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("invalid rational"))?;
    let den = BigInt::from_str(den).map_err(|_| bad("invalid rational"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses comma-separated fractions such as `3/5,-2/5`.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>> {
    split_top_level(text, b',')
        .into_iter()
        .map(|(at, piece)| parse_rational(piece).map_err(|e| offset(e, at)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FpPolyRing, Gaussian, GaussianIntegers, Integers};

    fn z(c: &[i64]) -> Poly<BigInt> {
        Poly::new(&Integers, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn integer_polynomials() {
        assert_eq!(parse_poly(&Integers, "3x^2-2x+5").unwrap(), z(&[5, -2, 3]));
        assert_eq!(parse_poly(&Integers, "3*X - 2").unwrap(), z(&[-2, 3]));
        assert_eq!(parse_poly(&Integers, "-(x+1)^2").unwrap(), z(&[-1, -2, -1]));
        assert_eq!(parse_poly(&Integers, " x ").unwrap(), z(&[0, 1]));
        assert_eq!(parse_poly(&Integers, "2x+3-2x-3").unwrap(), z(&[]));
    }

    #[test]
    fn gaussian_and_finite_field() {
        let p = parse_poly(&GaussianIntegers, "(1+i)x+(1+2i)").unwrap();
        assert_eq!(p.coeffs(), &[Gaussian::new(1, 2), Gaussian::new(1, 1)]);
        let f2 = FpPolyRing::new(2).unwrap();
        let p = parse_poly(&f2, "(y+1)x^2+y*x+(y^2+1)").unwrap();
        assert_eq!(
            p.coeffs(),
            &[f2.poly(&[1, 0, 1]), f2.poly(&[0, 1]), f2.poly(&[1, 1])]
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly(&Integers, "3x^2 + ").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 7, .. })), "{e:?}");
        let e = parse_constant(&Integers, "2+x").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 2, .. })));
        let e = parse_constant(&Integers, "3+i").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 2, .. })));
        let f3 = FpPolyRing::new(3).unwrap();
        let e = parse_constant(&f3, "y+7").unwrap_err();
        assert!(e.to_string().contains("out of range"), "{e}");
        assert!(parse_poly(&Integers, "(x+1").is_err());
        assert!(parse_poly(&Integers, "").is_err());
        assert!(parse_poly(&Integers, "x $").is_err());
    }

    #[test]
    fn lists() {
        let f2 = FpPolyRing::new(2).unwrap();
        let ds = parse_poly_list(&f2, "1,y,y+1,y^3+y").unwrap();
        assert_eq!(ds.len(), 4);
        let gs = parse_poly_list(&GaussianIntegers, "0, (1+i), -i").unwrap();
        assert_eq!(gs.len(), 3);
        let e = parse_poly_list(&Integers, "1,2,3+").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 6, .. })), "{e:?}");
    }

    #[test]
    fn rationals() {
        let r = parse_rational_list("3/5,-2/5").unwrap();
        assert_eq!(r[0], BigRational::new(3.into(), 5.into()));
        assert_eq!(r[1], BigRational::new((-2).into(), 5.into()));
        assert_eq!(parse_rational(" 2 ").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }
}
