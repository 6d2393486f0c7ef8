//! Parser for the scalar text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q' | 'z' | '(' expr ')'
//! ```
//!
//! Juxtaposition (`2q`) is accepted as multiplication. Both `q` and `z`
//! denote the parameter; at a root of unity `z` is the primitive root.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{CycloScalar, RatScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("unexpected character {found:?} at offset {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    Eof,
    #[error("exponent out of range at offset {0}")]
    Exponent(usize),
    #[error(transparent)]
    Arithmetic(#[from] ScalarError),
}

trait Field: Sized + Clone {
    fn integer(v: BigInt) -> Self;
    fn variable() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, ScalarError>;
    fn neg(&self) -> Self;
    fn one() -> Self;
}

impl Field for RatScalar {
    fn integer(v: BigInt) -> Self {
        RatScalar::from_rational(BigRational::from_integer(v))
    }
    fn variable() -> Self {
        RatScalar::q()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn one() -> Self {
        <RatScalar as num_traits::One>::one()
    }
}

impl<const N: u32> Field for CycloScalar<N> {
    fn integer(v: BigInt) -> Self {
        CycloScalar::from_rational(BigRational::from_integer(v))
    }
    fn variable() -> Self {
        CycloScalar::zeta_pow(1)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn one() -> Self {
        <CycloScalar<N> as num_traits::One>::one()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseScalarError {
        match self.src.get(self.pos) {
            Some(&c) => ParseScalarError::Unexpected { pos: self.pos, found: c as char },
            None => ParseScalarError::Eof,
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn expr<F: Field>(&mut self) -> Result<F, ParseScalarError> {
        let mut acc = self.term::<F>()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term::<F>()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term::<F>()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<F, ParseScalarError> {
        let mut acc = self.unary::<F>()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary::<F>()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.unary::<F>()?)?;
                }
                Some(c) if c == b'(' || c == b'q' || c == b'z' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power::<F>()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<F: Field>(&mut self) -> Result<F, ParseScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary::<F>()?.neg());
        }
        self.power()
    }

    fn power<F: Field>(&mut self) -> Result<F, ParseScalarError> {
        let base = self.atom::<F>()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e: u32 = self
            .integer()?
            .try_into()
            .map_err(|_| ParseScalarError::Exponent(at))?;
        if e > 10_000 {
            return Err(ParseScalarError::Exponent(at));
        }
        let mut out = F::one();
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(if neg { F::one().div(&out)? } else { out })
    }

    fn atom<F: Field>(&mut self) -> Result<F, ParseScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr::<F>()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') | Some(b'z') => {
                self.pos += 1;
                Ok(F::variable())
            }
            Some(c) if c.is_ascii_digit() => Ok(F::integer(self.integer()?)),
            _ => Err(self.unexpected()),
        }
    }
}

fn parse<F: Field>(text: &str) -> Result<F, ParseScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr::<F>()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(v)
}

/// Parses an element of Q(q). Accepts every string produced by
/// `RatScalar`'s `Display`.
pub fn parse_rat(text: &str) -> Result<RatScalar, ParseScalarError> {
    parse(text)
}

/// Parses an element of Q(ζ_{2N}) written in `z` (or `q`).
pub fn parse_cyclo<const N: u32>(text: &str) -> Result<CycloScalar<N>, ParseScalarError> {
    parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_displayed_forms() {
        for s in ["q^-2 + 1 + q^2", "(q)/(1 + q^2)", "3*q^-1 - 1/2*q", "0", "(2)/(5 + 3*q + q^2)"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn quantum_integers() {
        let x = parse_rat("(q^3 - q^-3)/(q - q^-1)").unwrap();
        assert_eq!(x, RatScalar::qint(3));
        assert_eq!(parse_rat("2q").unwrap(), RatScalar::q() * RatScalar::from_integer(2));
    }

    #[test]
    fn cyclotomic_input() {
        let x: CycloScalar<3> = parse_cyclo("z + z^-1").unwrap();
        assert_eq!(x, <CycloScalar<3> as num_traits::One>::one());
        assert_eq!(parse_cyclo::<3>("-1 + z").unwrap().to_string(), "-1 + z");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_rat("1 +"), Err(ParseScalarError::Eof)));
        assert!(matches!(parse_rat("x"), Err(ParseScalarError::Unexpected { .. })));
        assert!(matches!(
            parse_rat("1/0"),
            Err(ParseScalarError::Arithmetic(ScalarError::DivisionByZero))
        ));
    }
}
