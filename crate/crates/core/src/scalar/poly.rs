//! Dense integer polynomials with a machine-word fast path.
//!
//! Coefficients are stored as `i64` while every coefficient fits and are
//! promoted to `BigInt` on overflow, so arithmetic stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in one variable with integer coefficients; index = exponent.
///
/// Invariant: no trailing zero coefficient, and the `Small` variant is used
/// iff every coefficient fits in an `i64`. The zero polynomial is `Small([])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntPoly {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Default for IntPoly {
    fn default() -> Self {
        IntPoly::Small(Vec::new())
    }
}

fn trim_small(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::Small(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly::Small(vec![1])
    }

    pub fn from_i64s(v: Vec<i64>) -> Self {
        IntPoly::Small(trim_small(v))
    }

    pub fn from_bigs(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        let small: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
        match small {
            Some(s) => IntPoly::Small(s),
            None => IntPoly::Big(v),
        }
    }

    fn from_i128s(v: Vec<i128>) -> Self {
        let small: Option<Vec<i64>> = v.iter().map(|&c| i64::try_from(c).ok()).collect();
        match small {
            Some(s) => IntPoly::Small(trim_small(s)),
            None => IntPoly::from_bigs(v.into_iter().map(BigInt::from).collect()),
        }
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::from_bigs(v)
    }

    /// Number of stored coefficients; one more than the degree.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            IntPoly::Small(v) => v.len(),
            IntPoly::Big(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn is_one(&self) -> bool {
        matches!(self, IntPoly::Small(v) if v.len() == 1 && v[0] == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        match self {
            IntPoly::Small(v) => v.get(i).map_or_else(BigInt::zero, |&c| BigInt::from(c)),
            IntPoly::Big(v) => v.get(i).cloned().unwrap_or_else(BigInt::zero),
        }
    }

    pub fn to_bigs(&self) -> Vec<BigInt> {
        match self {
            IntPoly::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            IntPoly::Big(v) => v.clone(),
        }
    }

    fn coeff_is_zero(&self, i: usize) -> bool {
        match self {
            IntPoly::Small(v) => v[i] == 0,
            IntPoly::Big(v) => v[i].is_zero(),
        }
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        (0..self.len()).find(|&i| !self.coeff_is_zero(i))
    }

    /// Divides by `x^k`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        match self {
            IntPoly::Small(v) => IntPoly::Small(v[k.min(v.len())..].to_vec()),
            IntPoly::Big(v) => IntPoly::Big(v[k.min(v.len())..].to_vec()),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match self {
            IntPoly::Small(v) => {
                let mut out = vec![0; k];
                out.extend_from_slice(v);
                IntPoly::Small(out)
            }
            IntPoly::Big(v) => {
                let mut out = vec![BigInt::zero(); k];
                out.extend_from_slice(v);
                IntPoly::Big(out)
            }
        }
    }

    /// Reverses the coefficient order (x^d p(1/x) for d = degree).
    pub fn reversed(&self) -> Self {
        match self {
            IntPoly::Small(v) => IntPoly::from_i64s(v.iter().rev().copied().collect()),
            IntPoly::Big(v) => IntPoly::from_bigs(v.iter().rev().cloned().collect()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            IntPoly::Small(v) => {
                let out: Option<Vec<i64>> = v.iter().map(|c| c.checked_neg()).collect();
                match out {
                    Some(o) => IntPoly::Small(o),
                    None => IntPoly::from_bigs(v.iter().map(|&c| -BigInt::from(c)).collect()),
                }
            }
            IntPoly::Big(v) => IntPoly::from_bigs(v.iter().map(|c| -c).collect()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (IntPoly::Small(a), IntPoly::Small(b)) = (self, other) {
            let n = a.len().max(b.len());
            let mut out = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                match x.checked_add(y) {
                    Some(s) => out.push(s),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return IntPoly::Small(trim_small(out));
            }
        }
        let (a, b) = (self.to_bigs(), other.to_bigs());
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let mut s = a.get(i).cloned().unwrap_or_default();
                if let Some(y) = b.get(i) {
                    s += y;
                }
                s
            })
            .collect();
        IntPoly::from_bigs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self += other * x^shift`, used by the polynomial divisions.
    fn add_scaled_shifted(&mut self, other: &Self, scale: &BigInt, shift: usize) {
        let term = other.scale(scale).shift_up(shift);
        *self = self.add(&term);
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if let (IntPoly::Small(a), IntPoly::Small(b)) = (self, other) {
            if a.len() == 1 && a[0] == 1 {
                return other.clone();
            }
            if b.len() == 1 && b[0] == 1 {
                return self.clone();
            }
            let ma = a.iter().map(|c| c.unsigned_abs() as u128).max().unwrap_or(0);
            let mb = b.iter().map(|c| c.unsigned_abs() as u128).max().unwrap_or(0);
            let terms = a.len().min(b.len()) as u128;
            let fits = ma
                .checked_mul(mb)
                .and_then(|p| p.checked_mul(terms))
                .is_some_and(|bound| bound < (1u128 << 126));
            if fits {
                let mut acc = vec![0i128; a.len() + b.len() - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let x = x as i128;
                    for (j, &y) in b.iter().enumerate() {
                        acc[i + j] += x * y as i128;
                    }
                }
                return IntPoly::from_i128s(acc);
            }
        }
        let (a, b) = (self.to_bigs(), other.to_bigs());
        let mut acc = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc[i + j] += x * y;
            }
        }
        IntPoly::from_bigs(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        if let (IntPoly::Small(v), Some(s)) = (self, c.to_i64()) {
            let out: Option<Vec<i64>> = v.iter().map(|x| x.checked_mul(s)).collect();
            if let Some(o) = out {
                return IntPoly::Small(o);
            }
        }
        IntPoly::from_bigs(self.to_bigs().into_iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        if let (IntPoly::Small(v), Some(s)) = (self, c.to_i64()) {
            if s != 0 && s != -1 {
                return IntPoly::Small(v.iter().map(|x| x / s).collect());
            }
        }
        IntPoly::from_bigs(self.to_bigs().into_iter().map(|x| x / c).collect())
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        match self {
            IntPoly::Small(v) => {
                let mut g: u64 = 0;
                for &c in v {
                    g = g.gcd(&c.unsigned_abs());
                    if g == 1 {
                        break;
                    }
                }
                BigInt::from(g)
            }
            IntPoly::Big(v) => {
                let mut g = BigInt::zero();
                for c in v {
                    g = g.gcd(c);
                    if g.is_one() {
                        break;
                    }
                }
                g
            }
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeff(self.len().saturating_sub(1))
    }

    /// Division by a polynomial whose leading coefficient is 1.
    pub fn divrem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let dl = d.len();
        assert!(dl > 0 && d.leading().is_one(), "divisor must be monic");
        if self.len() < dl {
            return (IntPoly::zero(), self.clone());
        }
        if let (IntPoly::Small(a), IntPoly::Small(b)) = (self, d) {
            if let Some(res) = divrem_monic_small(a, b) {
                return res;
            }
        }
        let mut rem = self.to_bigs();
        let dv = d.to_bigs();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dl - 1].clone();
            if c.is_zero() {
                continue;
            }
            for (j, y) in dv.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
            quot[k] = c;
        }
        rem.truncate(dl - 1);
        (IntPoly::from_bigs(quot), IntPoly::from_bigs(rem))
    }

    /// `Some(self / d)` when `d` (monic) divides `self` exactly.
    pub fn div_exact_monic(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(d);
        r.is_zero().then_some(q)
    }

    /// Pseudo-remainder of `self` by `d` (both nonzero): lc(d)^k self = q d + r.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let mut rem = self.clone();
        let dl = d.len();
        let lc = d.leading();
        while rem.len() >= dl && !rem.is_zero() {
            let shift = rem.len() - dl;
            let c = rem.leading();
            rem = rem.scale(&lc);
            rem.add_scaled_shifted(d, &(-c), shift);
        }
        rem
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut p = self.div_scalar_exact(&c);
        if p.leading().is_negative() {
            p = p.neg();
        }
        p
    }

    /// Primitive gcd over Z[x] (hence over Q[x] up to units), positive
    /// leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.len() >= other.len() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact division by an arbitrary nonzero divisor (caller guarantees it).
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.leading().is_one() {
            return self.div_exact_monic(d);
        }
        let dl = d.len();
        if self.len() < dl {
            return self.is_zero().then(IntPoly::zero);
        }
        let lc = d.leading();
        let mut rem = self.to_bigs();
        let dv = d.to_bigs();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1];
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, y) in dv.iter().enumerate() {
                rem[k + j] -= &qc * y;
            }
            quot[k] = qc;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::from_bigs(quot))
    }

    /// Value at an integer point, used by tests and diagnostics.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.to_bigs().iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

fn divrem_monic_small(a: &[i64], d: &[i64]) -> Option<(IntPoly, IntPoly)> {
    let dl = d.len();
    let mut rem: Vec<i128> = a.iter().map(|&c| c as i128).collect();
    let mut quot = vec![0i128; a.len() - dl + 1];
    const LIMIT: i128 = 1 << 100;
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1];
        if c == 0 {
            continue;
        }
        if c.abs() > LIMIT {
            return None;
        }
        for (j, &y) in d.iter().enumerate() {
            let t = rem[k + j].checked_sub(c.checked_mul(y as i128)?)?;
            rem[k + j] = t;
        }
        quot[k] = c;
    }
    rem.truncate(dl - 1);
    Some((IntPoly::from_i128s(quot), IntPoly::from_i128s(rem)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v.to_vec())
    }

    #[test]
    fn overflow_promotes_to_big() {
        let a = p(&[i64::MAX, 1]);
        let s = a.add(&a);
        assert!(matches!(s, IntPoly::Big(_)));
        assert_eq!(s.coeff(0), BigInt::from(i64::MAX) * 2);
        let back = s.sub(&a);
        assert_eq!(back, a);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(0), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    }

    #[test]
    fn monic_division() {
        // (x^3 - 1) / (x - 1) = x^2 + x + 1
        let (q, r) = p(&[-1, 0, 0, 1]).divrem_monic(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 0, 1]).div_exact_monic(&p(&[1, 1])).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]).mul(&p(&[1, 0, 1])); // (x+1)(x^2+1)
        let b = p(&[1, 1]).mul(&p(&[-2, 3])); // (x+1)(3x-2)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[3, 6])), p(&[1, 2]));
        assert_eq!(p(&[2, 4]).div_exact(&p(&[1, 2])), Some(p(&[2])));
    }
}
