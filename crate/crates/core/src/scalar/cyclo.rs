use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic_poly::{cyclotomic, euler_phi};
use super::laurent::LaurentPoly;
use super::poly::IntPoly;
use super::rational::RatScalar;
use super::ScalarError;

/// Element of the cyclotomic field Q(ζ) with ζ = e^{πi/N} a primitive
/// 2N-th root of unity, i.e. the value field of the parameter `q` at that
/// root.
///
/// Power basis modulo Φ_{2N}: the value is `poly(ζ) / den` with
/// `deg poly < φ(2N)`, `den > 0` and `gcd(content(poly), den) = 1`.
/// The root is part of the type, so elements at different roots never mix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar<const N: u32> {
    poly: IntPoly,
    den: BigInt,
}

impl<const N: u32> CycloScalar<N> {
    /// Order of ζ (= 2N).
    pub const ORDER: u32 = 2 * N;

    pub fn degree() -> usize {
        assert!(N >= 2, "roots of unity are supported for N >= 2");
        euler_phi(Self::ORDER as u64) as usize
    }

    fn modulus() -> std::sync::Arc<IntPoly> {
        cyclotomic(Self::ORDER)
    }

    fn from_parts(poly: IntPoly, den: BigInt) -> Self {
        let poly = if poly.len() > Self::degree() {
            poly.divrem_monic(&Self::modulus()).1
        } else {
            poly
        };
        if poly.is_zero() {
            return CycloScalar { poly, den: BigInt::one() };
        }
        let g = poly.content().gcd(&den);
        let (mut poly, mut den) = (poly.div_scalar_exact(&g), den / g);
        if den.is_negative() {
            poly = poly.neg();
            den = -den;
        }
        CycloScalar { poly, den }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_parts(IntPoly::monomial(c.numer().clone(), 0), c.denom().clone())
    }

    /// `ζ^k`.
    pub fn zeta_pow(k: i64) -> Self {
        let e = k.rem_euclid(Self::ORDER as i64) as usize;
        Self::from_parts(IntPoly::monomial(BigInt::one(), e), BigInt::one())
    }

    /// Coefficients `c_0 .. c_{φ(2N)-1}` in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..Self::degree())
            .map(|i| BigRational::new(self.poly.coeff(i), self.den.clone()))
            .collect()
    }

    /// Builds from power-basis coefficients (any length; reduced mod Φ_{2N}).
    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        Self::from_parts(IntPoly::from_bigs(ints), den)
    }

    /// Evaluates a Laurent polynomial at `q = ζ`.
    pub fn eval_laurent(p: &LaurentPoly) -> Self {
        let order = Self::ORDER as i64;
        let mut acc = vec![BigInt::zero(); order as usize];
        for (i, c) in p.int_poly().to_bigs().into_iter().enumerate() {
            acc[(p.low() + i as i64).rem_euclid(order) as usize] += c;
        }
        Self::from_parts(IntPoly::from_bigs(acc), p.den_int())
    }

    fn eval_int_poly(p: &IntPoly) -> Self {
        Self::eval_laurent(&LaurentPoly::from_int_poly(0, p.clone()))
    }

    /// Specializes `x ∈ Q(q)` at `q = ζ`; fails when the reduced
    /// denominator vanishes there.
    pub fn specialize(x: &RatScalar) -> Result<Self, ScalarError> {
        let x = x.clone().reduced();
        let num = Self::eval_laurent(x.num_laurent());
        let mut den = Self::one();
        for &(m, e) in x.den_cyclotomic_factors() {
            if m == Self::ORDER {
                return Err(ScalarError::DenominatorVanishes { root: N });
            }
            let v = Self::eval_int_poly(&cyclotomic(m));
            for _ in 0..e {
                den = &den * &v;
            }
        }
        den = &den * &Self::eval_int_poly(x.den_residual());
        let inv = den
            .checked_inv()
            .map_err(|_| ScalarError::DenominatorVanishes { root: N })?;
        Ok(&num * &inv)
    }

    /// Inverse via the extended Euclidean algorithm in Q[x] against Φ_{2N}.
    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.poly.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let to_q = |p: &IntPoly| -> Vec<BigRational> {
            p.to_bigs().into_iter().map(BigRational::from_integer).collect()
        };
        // Invariant: s * self.poly ≡ r (mod Φ).
        let (mut r0, mut r1) = (to_q(&Self::modulus()), to_q(&self.poly));
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while r1.len() != 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(ScalarError::DivisionByZero);
            }
        }
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        let scaled = Self::from_coeffs(&inv);
        Ok(Self::from_parts(scaled.poly.scale(&self.den), scaled.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.checked_inv()?)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn bar(&self) -> Self {
        let order = Self::ORDER as usize;
        let mut acc = vec![BigInt::zero(); order];
        for (i, c) in self.poly.to_bigs().into_iter().enumerate() {
            acc[(order - i) % order] += c;
        }
        Self::from_parts(IntPoly::from_bigs(acc), self.den.clone())
    }
}

fn qpoly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    qpoly_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(out)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    rem.truncate(b.len() - 1);
    (qpoly_trim(quot), qpoly_trim(rem))
}

impl<const N: u32> fmt::Debug for CycloScalar<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar<{N}>({self})")
    }
}

impl<const N: u32> fmt::Display for CycloScalar<N> {
    /// `c0 + c1*z + ...` over the power basis, `z` the primitive 2N-th root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if var.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<const N: u32> Zero for CycloScalar<N> {
    fn zero() -> Self {
        CycloScalar { poly: IntPoly::zero(), den: BigInt::one() }
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl<const N: u32> One for CycloScalar<N> {
    fn one() -> Self {
        CycloScalar { poly: IntPoly::one(), den: BigInt::one() }
    }
}

impl<const N: u32> Neg for CycloScalar<N> {
    type Output = Self;
    fn neg(self) -> Self {
        CycloScalar { poly: self.poly.neg(), den: self.den }
    }
}

impl<const N: u32> Neg for &CycloScalar<N> {
    type Output = CycloScalar<N>;
    fn neg(self) -> CycloScalar<N> {
        CycloScalar { poly: self.poly.neg(), den: self.den.clone() }
    }
}

impl<'a, const N: u32> Add<&'a CycloScalar<N>> for &'a CycloScalar<N> {
    type Output = CycloScalar<N>;
    fn add(self, rhs: &CycloScalar<N>) -> CycloScalar<N> {
        if self.den == rhs.den {
            return CycloScalar::from_parts(self.poly.add(&rhs.poly), self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let a = self.poly.scale(&(&l / &self.den));
        let b = rhs.poly.scale(&(&l / &rhs.den));
        CycloScalar::from_parts(a.add(&b), l)
    }
}

impl<'a, const N: u32> Sub<&'a CycloScalar<N>> for &'a CycloScalar<N> {
    type Output = CycloScalar<N>;
    fn sub(self, rhs: &CycloScalar<N>) -> CycloScalar<N> {
        self + &(-rhs)
    }
}

impl<'a, const N: u32> Mul<&'a CycloScalar<N>> for &'a CycloScalar<N> {
    type Output = CycloScalar<N>;
    fn mul(self, rhs: &CycloScalar<N>) -> CycloScalar<N> {
        CycloScalar::from_parts(self.poly.mul(&rhs.poly), &self.den * &rhs.den)
    }
}

crate::scalar::forward_binops!([const N: u32] CycloScalar<N>);

#[cfg(test)]
mod tests {
    use super::*;

    type Z3 = CycloScalar<3>;

    #[test]
    fn qint2_at_sixth_root_is_one() {
        let d = Z3::specialize(&RatScalar::qint(2)).unwrap();
        assert_eq!(d, Z3::one());
    }

    #[test]
    fn qint_n_vanishes_at_its_root() {
        assert!(Z3::specialize(&RatScalar::qint(3)).unwrap().is_zero());
        assert!(CycloScalar::<5>::specialize(&RatScalar::qint(5)).unwrap().is_zero());
        let bad = RatScalar::one().checked_div(&RatScalar::qint(3)).unwrap();
        assert_eq!(
            Z3::specialize(&bad),
            Err(ScalarError::DenominatorVanishes { root: 3 })
        );
    }

    #[test]
    fn inverse_and_conjugation() {
        type Z5 = CycloScalar<5>;
        let x = &Z5::zeta_pow(1) + &Z5::from_rational(BigRational::new(3.into(), 2.into()));
        let inv = x.checked_inv().unwrap();
        assert_eq!(&inv * &x, Z5::one());
        assert_eq!(Z5::zeta_pow(3).bar(), Z5::zeta_pow(-3));
        assert_eq!(Z5::zeta_pow(10), Z5::one());
        assert!(Z5::zero().checked_inv().is_err());
    }

    #[test]
    fn display_power_basis() {
        // ζ_6^2 = ζ_6 - 1 modulo x^2 - x + 1.
        assert_eq!(Z3::zeta_pow(2).to_string(), "-1 + z");
        assert_eq!(Z3::zero().to_string(), "0");
    }
}
