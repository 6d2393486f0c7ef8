use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::cyclotomic_poly::{cyclotomic, euler_phi};
use super::laurent::LaurentPoly;
use super::poly::IntPoly;
use super::ScalarError;

type PhiExponents = SmallVec<[(u32, u32); 8]>;

/// Element of the rational function field Q(q).
///
/// The denominator is kept partially factored: a product of cyclotomic
/// polynomials `Φ_m(q)^e` times a primitive residual polynomial with
/// positive constant term. Every quantum integer factors completely over
/// this base, so products and sums of the values that occur in practice
/// never need a general polynomial gcd.
///
/// Values handed out by the public arithmetic are reduced (numerator and
/// denominator coprime); [`RatScalar::canonical`] yields the expanded
/// normal form used for printing.
#[derive(Clone)]
pub struct RatScalar {
    num: LaurentPoly,
    phi: PhiExponents,
    rest: IntPoly,
}

type PowerTable = RwLock<HashMap<(u32, u32), Arc<IntPoly>>>;

fn phi_power(m: u32, k: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<PowerTable> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("phi power cache poisoned").get(&(m, k)) {
        return p.clone();
    }
    let base = cyclotomic(m);
    let p = Arc::new((0..k).fold(IntPoly::one(), |acc, _| acc.mul(&base)));
    cache
        .write()
        .expect("phi power cache poisoned")
        .entry((m, k))
        .or_insert(p)
        .clone()
}

fn phi_product(factors: impl Iterator<Item = (u32, u32)>) -> IntPoly {
    factors
        .filter(|&(_, k)| k > 0)
        .fold(IntPoly::one(), |acc, (m, k)| acc.mul(&phi_power(m, k)))
}

fn merge_exponents(a: &PhiExponents, b: &PhiExponents, f: impl Fn(u32, u32) -> u32) -> PhiExponents {
    let mut out = PhiExponents::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (m, ea, eb) = match (a.get(i), b.get(j)) {
            (Some(&(ma, ea)), Some(&(mb, eb))) if ma == mb => {
                i += 1;
                j += 1;
                (ma, ea, eb)
            }
            (Some(&(ma, ea)), Some(&(mb, _))) if ma < mb => {
                i += 1;
                (ma, ea, 0)
            }
            (Some(_), Some(&(mb, eb))) => {
                j += 1;
                (mb, 0, eb)
            }
            (Some(&(ma, ea)), None) => {
                i += 1;
                (ma, ea, 0)
            }
            (None, Some(&(mb, eb))) => {
                j += 1;
                (mb, 0, eb)
            }
            (None, None) => unreachable!(),
        };
        let e = f(ea, eb);
        if e > 0 {
            out.push((m, e));
        }
    }
    out
}

/// Splits a polynomial with nonzero constant term into
/// `sign * content * Π Φ_m^e * rest` with `rest` primitive and `rest(0) > 0`.
fn factor_denominator(p: &IntPoly) -> (BigInt, PhiExponents, IntPoly) {
    let c = p.content();
    let mut scale = if p.coeff(0).is_negative() { -c.clone() } else { c.clone() };
    let mut rest = p.div_scalar_exact(&scale);
    let mut phi = PhiExponents::new();
    let mut m = 1u32;
    while rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap_or(0) as u64;
        // φ(m) ≥ sqrt(m/2), so Φ_m | rest forces m ≤ 2·deg².
        if m as u64 > 2 * deg * deg + 2 {
            break;
        }
        if euler_phi(m as u64) <= deg {
            let f = cyclotomic(m);
            let mut e = 0;
            while let Some(q) = rest.div_exact_monic(&f) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                phi.push((m, e));
            }
        }
        m += 1;
    }
    if rest.coeff(0).is_negative() {
        rest = rest.neg();
        scale = -scale;
    }
    (scale, phi, rest)
}

impl RatScalar {
    pub fn from_laurent(num: LaurentPoly) -> Self {
        RatScalar { num, phi: PhiExponents::new(), rest: IntPoly::one() }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_integer(v))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, 0))
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    /// `q^k` for any integer k.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigRational::one(), k))
    }

    /// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
    pub fn qint(n: i64) -> Self {
        let k = n.abs();
        let sign = BigRational::from_integer(n.signum().into());
        Self::from_laurent(LaurentPoly::from_terms(
            (0..k).map(|j| (-k + 1 + 2 * j, sign.clone())),
        ))
    }

    /// Quantum factorial `[n]! = [n][n-1]...[1]`.
    pub fn qfact(n: i64) -> Result<Self, ScalarError> {
        if n < 0 {
            return Err(ScalarError::NegativeFactorial(n));
        }
        Ok((1..=n).fold(Self::one(), |acc, k| acc * Self::qint(k)))
    }

    /// Builds `num / den`, failing on a zero denominator.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        Self::from_laurent(num).checked_div(&Self::from_laurent(den))
    }

    pub fn is_zero_value(&self) -> bool {
        self.num.is_zero()
    }

    fn den_is_one(&self) -> bool {
        self.phi.is_empty() && self.rest.is_one()
    }

    /// Denominator as an expanded integer polynomial in `q` (nonnegative
    /// exponents, nonzero constant term).
    fn den_poly(&self) -> IntPoly {
        phi_product(self.phi.iter().copied()).mul(&self.rest)
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        let rest = if self.rest.is_one() {
            other.rest.clone()
        } else if other.rest.is_one() {
            self.rest.clone()
        } else {
            self.rest.mul(&other.rest)
        };
        RatScalar {
            num: self.num.mul(&other.num),
            phi: merge_exponents(&self.phi, &other.phi, |a, b| a + b),
            rest,
        }
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return other.clone();
        }
        if self.phi == other.phi && self.rest == other.rest {
            return RatScalar {
                num: self.num.add(&other.num),
                phi: self.phi.clone(),
                rest: self.rest.clone(),
            };
        }
        let phi = merge_exponents(&self.phi, &other.phi, u32::max);
        let cof = |mine: &PhiExponents| -> IntPoly {
            let missing = merge_exponents(&phi, mine, |a, b| a - b);
            phi_product(missing.into_iter())
        };
        let (mut ca, mut cb) = (cof(&self.phi), cof(&other.phi));
        let rest = if self.rest == other.rest {
            self.rest.clone()
        } else {
            ca = ca.mul(&other.rest);
            cb = cb.mul(&self.rest);
            self.rest.mul(&other.rest)
        };
        let a = self.num.mul(&LaurentPoly::from_int_poly(0, ca));
        let b = other.num.mul(&LaurentPoly::from_int_poly(0, cb));
        RatScalar { num: a.add(&b), phi, rest }
    }

    /// Rewrites `values` over a shared denominator (unreduced), so that
    /// subsequent raw sums and products stay on the cheap path. Values
    /// whose residual denominators differ are left alone.
    pub(crate) fn align_denominators(values: &mut [RatScalar]) {
        let Some(first) = values.iter().find(|v| !v.num.is_zero()) else {
            return;
        };
        let rest = first.rest.clone();
        if values.iter().any(|v| !v.num.is_zero() && v.rest != rest) {
            return;
        }
        let phi = values
            .iter()
            .filter(|v| !v.num.is_zero())
            .fold(PhiExponents::new(), |acc, v| merge_exponents(&acc, &v.phi, u32::max));
        for v in values.iter_mut().filter(|v| !v.num.is_zero()) {
            if v.phi != phi {
                let missing = merge_exponents(&phi, &v.phi, |a, b| a - b);
                v.num = v.num.mul(&LaurentPoly::from_int_poly(0, phi_product(missing.into_iter())));
                v.phi = phi.clone();
            }
        }
    }

    /// Cancels common factors of numerator and denominator.
    pub(crate) fn reduce(&mut self) {
        if self.num.is_zero() {
            self.phi.clear();
            self.rest = IntPoly::one();
            return;
        }
        let low = self.num.low();
        let den = self.num.den_int();
        let mut poly = self.num.int_poly().clone();
        let mut changed = false;
        for entry in self.phi.iter_mut() {
            let f = cyclotomic(entry.0);
            while entry.1 > 0 {
                match poly.div_exact_monic(&f) {
                    Some(q) => {
                        poly = q;
                        entry.1 -= 1;
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        self.phi.retain(|e| e.1 > 0);
        if !self.rest.is_one() {
            let g = poly.gcd(&self.rest);
            if g.degree().unwrap_or(0) > 0 {
                poly = poly.div_exact(&g).expect("gcd divides numerator");
                let mut rest = self.rest.div_exact(&g).expect("gcd divides denominator");
                if rest.coeff(0).is_negative() {
                    rest = rest.neg();
                    poly = poly.neg();
                }
                let c = rest.content();
                if !c.is_one() {
                    rest = rest.div_scalar_exact(&c);
                    self.num = LaurentPoly::from_parts(low, poly, den * c);
                    self.rest = rest;
                    return;
                }
                self.rest = rest;
                changed = true;
            }
        }
        if changed {
            self.num = LaurentPoly::from_parts(low, poly, den);
        }
    }

    pub(crate) fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    /// Multiplicative inverse.
    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let x = self.clone().reduced();
        let (scale, phi, rest) = factor_denominator(x.num.int_poly());
        // 1/x = den(x) * q^-low * d / (scale * Π Φ^e * rest)
        let new_num = LaurentPoly::from_int_poly(-x.num.low(), x.den_poly())
            .scale(&BigRational::new(x.num.den_int(), scale));
        let out = RatScalar { num: new_num, phi, rest };
        Ok(out.reduced())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_raw(&other.checked_inv()?).reduced())
    }

    /// The ring involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.den_is_one() {
            return Self::from_laurent(self.num.bar());
        }
        // Φ_m(1/q) = q^-φ(m) Φ_m(q) for m ≥ 2, Φ_1(1/q) = -q^-1 Φ_1(q).
        let mut shift: i64 = 0;
        let mut negate = false;
        for &(m, e) in &self.phi {
            shift += euler_phi(m as u64) as i64 * e as i64;
            if m == 1 && e % 2 == 1 {
                negate = !negate;
            }
        }
        shift += self.rest.degree().unwrap_or(0) as i64;
        let mut rest = self.rest.reversed();
        if rest.coeff(0).is_negative() {
            rest = rest.neg();
            negate = !negate;
        }
        let mut num = self.num.bar().shift(shift);
        if negate {
            num = num.neg();
        }
        RatScalar { num, phi: self.phi.clone(), rest }
    }

    /// Canonical expanded form `(num, den)`: reduced by the polynomial gcd,
    /// `den` free of `q`-powers with content 1 and positive lowest coefficient.
    pub fn canonical(&self) -> (LaurentPoly, LaurentPoly) {
        if self.num.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::one());
        }
        let mut den = self.den_poly();
        let mut poly = self.num.int_poly().clone();
        let g = poly.gcd(&den);
        if g.degree().unwrap_or(0) > 0 {
            poly = poly.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let mut scale = BigRational::new(BigInt::one(), self.num.den_int());
        let c = den.content();
        if den.coeff(0).is_negative() {
            scale = -scale;
        }
        let den = den.div_scalar_exact(&if den.coeff(0).is_negative() { -c.clone() } else { c.clone() });
        scale /= BigRational::from_integer(c);
        let num = LaurentPoly::from_int_poly(self.num.low(), poly).scale(&scale);
        (num, LaurentPoly::from_int_poly(0, den))
    }

    /// Numerator of the reduced value, as stored.
    pub fn numerator(&self) -> LaurentPoly {
        self.canonical().0
    }

    pub fn denominator(&self) -> LaurentPoly {
        self.canonical().1
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let (n, d) = self.canonical();
        d.is_one().then_some(n)
    }

    /// Cyclotomic factors of the stored denominator (index, multiplicity).
    pub(crate) fn den_cyclotomic_factors(&self) -> &[(u32, u32)] {
        &self.phi
    }

    pub(crate) fn den_residual(&self) -> &IntPoly {
        &self.rest
    }

    pub(crate) fn num_laurent(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * self)
    }
}

impl fmt::Debug for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatScalar({self})")
    }
}

impl fmt::Display for RatScalar {
    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.canonical();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({den})")
        }
    }
}

impl PartialEq for RatScalar {
    fn eq(&self, other: &Self) -> bool {
        self.add_raw(&other.neg_ref()).num.is_zero()
    }
}

impl Eq for RatScalar {}

impl RatScalar {
    fn neg_ref(&self) -> Self {
        RatScalar { num: self.num.neg(), phi: self.phi.clone(), rest: self.rest.clone() }
    }
}

impl Zero for RatScalar {
    fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatScalar {
    fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }
}

impl Neg for RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        self.neg_ref()
    }
}

impl Neg for &RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        self.neg_ref()
    }
}

impl<'a> Add<&'a RatScalar> for &'a RatScalar {
    type Output = RatScalar;
    fn add(self, rhs: &RatScalar) -> RatScalar {
        self.add_raw(rhs).reduced()
    }
}

impl<'a> Sub<&'a RatScalar> for &'a RatScalar {
    type Output = RatScalar;
    fn sub(self, rhs: &RatScalar) -> RatScalar {
        self.add_raw(&rhs.neg_ref()).reduced()
    }
}

impl<'a> Mul<&'a RatScalar> for &'a RatScalar {
    type Output = RatScalar;
    fn mul(self, rhs: &RatScalar) -> RatScalar {
        self.mul_raw(rhs).reduced()
    }
}

crate::scalar::forward_binops!(RatScalar);

impl From<i64> for RatScalar {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<LaurentPoly> for RatScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_values() {
        assert!(RatScalar::qint(0).is_zero());
        assert_eq!(RatScalar::qint(1), RatScalar::one());
        assert_eq!(RatScalar::qint(2).to_string(), "q^-1 + q");
        assert_eq!(RatScalar::qint(3).to_string(), "q^-2 + 1 + q^2");
        assert_eq!(RatScalar::qint(-3), -RatScalar::qint(3));
    }

    #[test]
    fn inverse_roundtrip() {
        let d = RatScalar::qint(2);
        let inv = d.checked_inv().unwrap();
        assert_eq!(inv.to_string(), "(q)/(1 + q^2)");
        assert_eq!(&inv * &d, RatScalar::one());
        assert!(RatScalar::zero().checked_inv().is_err());
    }

    #[test]
    fn quotient_of_quantum_integers_cancels() {
        // [4]/[2] = q^2 + q^-2
        let x = RatScalar::qint(4).checked_div(&RatScalar::qint(2)).unwrap();
        assert_eq!(x.as_laurent().unwrap().to_string(), "q^-2 + q^2");
        // [6]/([2][3]) = q^-2 - 1 + q^2
        let y = RatScalar::qint(6)
            .checked_div(&(RatScalar::qint(2) * RatScalar::qint(3)))
            .unwrap();
        assert_eq!(y.to_string(), "q^-2 - 1 + q^2");
    }

    #[test]
    fn residual_denominators_reduce() {
        // (q^2 + 3q + 5) is not a product of cyclotomics.
        let p = LaurentPoly::from_terms([
            (0, BigRational::from_integer(5.into())),
            (1, BigRational::from_integer(3.into())),
            (2, BigRational::from_integer(1.into())),
        ]);
        let x = RatScalar::from_laurent(p.clone());
        let inv = x.checked_inv().unwrap();
        assert_eq!(&inv * &x, RatScalar::one());
        let y = &inv + &inv;
        assert_eq!(y.to_string(), "(2)/(5 + 3*q + q^2)");
        assert_eq!((&y * &x).to_string(), "2");
    }

    #[test]
    fn bar_of_fraction() {
        let x = RatScalar::q().checked_div(&RatScalar::qint(3)).unwrap();
        let b = x.bar();
        assert_eq!(b, RatScalar::q_pow(-1).checked_div(&RatScalar::qint(3)).unwrap());
        assert_eq!(b.bar(), x);
        let one_minus_q = RatScalar::one() - RatScalar::q();
        let y = RatScalar::one().checked_div(&one_minus_q).unwrap();
        let expected = RatScalar::one()
            .checked_div(&(RatScalar::one() - RatScalar::q_pow(-1)))
            .unwrap();
        assert_eq!(y.bar(), expected);
    }

    #[test]
    fn canonical_sign_convention() {
        let x = RatScalar::one().checked_div(&(RatScalar::one() - RatScalar::q())).unwrap();
        assert_eq!(x.to_string(), "(1)/(1 - q)");
        let y = RatScalar::one().checked_div(&(RatScalar::q() - RatScalar::one())).unwrap();
        assert_eq!(y.to_string(), "(-1)/(1 - q)");
    }
}
