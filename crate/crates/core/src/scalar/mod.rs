//! Exact coefficient fields: rational functions in `q` and their
//! specializations at roots of unity.
//!
//! Everything downstream (diagrams, projectors, nets, skein modules) is
//! generic over [`Scalar`], implemented by [`RatScalar`] (generic `q`) and
//! [`CycloScalar<N>`] (`q = e^{πi/N}`).

mod cyclo;
mod cyclotomic_poly;
mod laurent;
mod parse;
mod poly;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use thiserror::Error;

pub use cyclo::CycloScalar;
pub use cyclotomic_poly::{cyclotomic, euler_phi};
pub use laurent::LaurentPoly;
pub use parse::{parse_cyclo, parse_rat, ParseScalarError};
pub use poly::IntPoly;
pub use rational::RatScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = exp(pi i / {root})")]
    DenominatorVanishes { root: u32 },
    #[error("quantum factorial of negative integer {0}")]
    NegativeFactorial(i64),
}

/// Coefficient field of the Temperley-Lieb category.
///
/// Implementors are exact fields carrying the parameter `q`; the loop value
/// is `d = [2]`. The `*_lazy` hooks let bulk accumulation skip intermediate
/// normalization; [`Scalar::normalize`] must be called before a lazily
/// built value is compared or displayed.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// `N` when `q = e^{πi/N}`, `None` for generic `q`.
    fn root_order() -> Option<u32>;

    /// The image of an element of Q(q).
    fn from_rat(x: &RatScalar) -> Result<Self, ScalarError>;

    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// `q ↦ q^{-1}` (complex conjugation at a root of unity).
    fn bar(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Quantum integer `[n]`.
    fn qint(n: i64) -> Self {
        Self::from_rat(&RatScalar::qint(n)).expect("quantum integers are Laurent polynomials")
    }

    /// Loop value `d = [2] = q + q^{-1}`.
    fn loop_value() -> Self {
        Self::qint(2)
    }

    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.try_inv()?)
    }

    fn mul_lazy(&self, other: &Self) -> Self {
        self.clone() * other
    }

    fn add_lazy(&mut self, other: &Self) {
        *self += other;
    }

    fn normalize(&mut self) {}

    /// Prepares a batch of coefficients for lazy accumulation.
    fn align(_values: &mut [Self]) {}
}

impl Scalar for RatScalar {
    fn root_order() -> Option<u32> {
        None
    }

    fn from_rat(x: &RatScalar) -> Result<Self, ScalarError> {
        Ok(x.clone())
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.checked_inv()
    }

    fn bar(&self) -> Self {
        RatScalar::bar(self)
    }

    fn from_i64(v: i64) -> Self {
        RatScalar::from_integer(v)
    }

    fn qint(n: i64) -> Self {
        RatScalar::qint(n)
    }

    fn mul_lazy(&self, other: &Self) -> Self {
        self.mul_raw(other)
    }

    fn add_lazy(&mut self, other: &Self) {
        *self = self.add_raw(other);
    }

    fn normalize(&mut self) {
        self.reduce();
    }

    fn align(values: &mut [Self]) {
        RatScalar::align_denominators(values);
    }
}

impl<const N: u32> Scalar for CycloScalar<N> {
    fn root_order() -> Option<u32> {
        Some(N)
    }

    fn from_rat(x: &RatScalar) -> Result<Self, ScalarError> {
        CycloScalar::specialize(x)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.checked_inv()
    }

    fn bar(&self) -> Self {
        CycloScalar::bar(self)
    }

    fn from_i64(v: i64) -> Self {
        CycloScalar::from_rational(num_rational::BigRational::from_integer(v.into()))
    }
}

/// Specializes `x` at `q = e^{πi/N}`.
pub fn specialize<const N: u32>(x: &RatScalar) -> Result<CycloScalar<N>, ScalarError> {
    CycloScalar::specialize(x)
}

/// Derives owned/borrowed operator variants and the assign operators from
/// the `&T op &T` implementations.
macro_rules! forward_binops {
    ($(#[$m:meta])* [$($gen:tt)*] $t:ty) => {
        impl<$($gen)*> Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t { &self + &rhs }
        }
        impl<'a, $($gen)*> Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t { &self + rhs }
        }
        impl<$($gen)*> Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t { &self - &rhs }
        }
        impl<'a, $($gen)*> Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t { &self - rhs }
        }
        impl<$($gen)*> Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t { &self * &rhs }
        }
        impl<'a, $($gen)*> Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t { &self * rhs }
        }
        impl<$($gen)*> AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) { *self = &*self + &rhs; }
        }
        impl<'a, $($gen)*> AddAssign<&'a $t> for $t {
            fn add_assign(&mut self, rhs: &'a $t) { *self = &*self + rhs; }
        }
        impl<$($gen)*> SubAssign for $t {
            fn sub_assign(&mut self, rhs: $t) { *self = &*self - &rhs; }
        }
        impl<'a, $($gen)*> SubAssign<&'a $t> for $t {
            fn sub_assign(&mut self, rhs: &'a $t) { *self = &*self - rhs; }
        }
        impl<$($gen)*> MulAssign for $t {
            fn mul_assign(&mut self, rhs: $t) { *self = &*self * &rhs; }
        }
        impl<'a, $($gen)*> MulAssign<&'a $t> for $t {
            fn mul_assign(&mut self, rhs: &'a $t) { *self = &*self * rhs; }
        }
    };
    ($t:ty) => {
        $crate::scalar::forward_binops!([] $t);
    };
}
pub(crate) use forward_binops;
