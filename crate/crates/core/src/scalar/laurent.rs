use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;

/// Laurent polynomial in `q` with exact rational coefficients.
///
/// Stored as `q^low * poly(q) / den` with `poly` an integer polynomial whose
/// constant term is nonzero, `den > 0` and `gcd(content(poly), den) = 1`.
/// The zero polynomial has an empty `poly`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    poly: IntPoly,
    den: Option<BigInt>,
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, poly: IntPoly::zero(), den: None }
    }

    pub fn one() -> Self {
        LaurentPoly { low: 0, poly: IntPoly::one(), den: None }
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (n, d) = (c.numer().clone(), c.denom().clone());
        Self::from_parts(k, IntPoly::monomial(n, 0), d)
    }

    pub fn from_integer(c: i64) -> Self {
        Self::from_parts(0, IntPoly::from_i64s(vec![c]), BigInt::one())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| acc.add(&Self::monomial(c, k)))
    }

    /// Integer-coefficient polynomial `q^low * poly`.
    pub(crate) fn from_int_poly(low: i64, poly: IntPoly) -> Self {
        Self::from_parts(low, poly, BigInt::one())
    }

    pub(crate) fn from_parts(low: i64, poly: IntPoly, den: BigInt) -> Self {
        let Some(shift) = poly.low_order() else {
            return Self::zero();
        };
        let poly = poly.shift_down(shift);
        let low = low + shift as i64;
        let (poly, den) = if den.is_one() {
            (poly, None)
        } else {
            let g = poly.content().gcd(&den);
            let mut poly = poly.div_scalar_exact(&g);
            let mut den = den / g;
            if den.is_negative() {
                poly = poly.neg();
                den = -den;
            }
            if den.is_one() {
                (poly, None)
            } else {
                (poly, Some(den))
            }
        };
        LaurentPoly { low, poly, den }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.den.is_none() && self.poly.is_one()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present (0 for the zero polynomial).
    pub fn high(&self) -> i64 {
        self.low + self.poly.len().saturating_sub(1) as i64
    }

    pub(crate) fn int_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub(crate) fn den_int(&self) -> BigInt {
        self.den.clone().unwrap_or_else(BigInt::one)
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        if k < self.low {
            return BigRational::zero();
        }
        BigRational::new(self.poly.coeff((k - self.low) as usize), self.den_int())
    }

    /// Nonzero terms, lowest exponent first.
    pub fn terms(&self) -> Vec<(i64, BigRational)> {
        let den = self.den_int();
        self.poly
            .to_bigs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, BigRational::new(c, den.clone())))
            .collect()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, poly: self.poly.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = self.poly.shift_up((self.low - low) as usize);
        let b = other.poly.shift_up((other.low - low) as usize);
        match (&self.den, &other.den) {
            (None, None) => Self::from_parts(low, a.add(&b), BigInt::one()),
            _ => {
                let (da, db) = (self.den_int(), other.den_int());
                let l = da.lcm(&db);
                let sum = a.scale(&(&l / &da)).add(&b.scale(&(&l / &db)));
                Self::from_parts(low, sum, l)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let poly = self.poly.mul(&other.poly);
        match (&self.den, &other.den) {
            (None, None) => LaurentPoly { low: self.low + other.low, poly, den: None },
            _ => Self::from_parts(self.low + other.low, poly, self.den_int() * other.den_int()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.low,
            self.poly.scale(c.numer()),
            self.den_int() * c.denom(),
        )
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, ..self.clone() }
    }

    /// The involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: -self.high(), poly: self.poly.reversed(), den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &BigRational, k: i64, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    let var = match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    };
    if var.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{a}*{var}")
    }
}

impl fmt::Display for LaurentPoly {
    /// Lowest exponent first, e.g. `q^-2 + 1 + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            fmt_monomial(f, c, *k, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn render_lowest_first() {
        let p = LaurentPoly::from_terms([(2, r(1, 1)), (0, r(1, 1)), (-2, r(1, 1))]);
        assert_eq!(p.to_string(), "q^-2 + 1 + q^2");
        let p = LaurentPoly::from_terms([(1, r(-1, 2)), (-1, r(3, 1))]);
        assert_eq!(p.to_string(), "3*q^-1 - 1/2*q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn rational_normalization() {
        let half = LaurentPoly::monomial(r(1, 2), 0);
        let sum = half.add(&half);
        assert!(sum.is_one());
        let p = LaurentPoly::from_terms([(0, r(2, 4)), (3, r(1, 6))]);
        assert_eq!(p.coeff(0), r(1, 2));
        assert_eq!(p.coeff(3), r(1, 6));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn bar_reverses_exponents() {
        let p = LaurentPoly::from_terms([(-1, r(2, 1)), (3, r(1, 1))]);
        let b = p.bar();
        assert_eq!(b.coeff(1), r(2, 1));
        assert_eq!(b.coeff(-3), r(1, 1));
        assert_eq!(b.bar(), p);
    }
}
