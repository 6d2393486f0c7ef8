//! Cyclotomic polynomials Φ_m and Euler's totient.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::poly::IntPoly;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn table() -> &'static RwLock<HashMap<u32, Arc<IntPoly>>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial (monic, integer coefficients), memoized.
pub fn cyclotomic(m: u32) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = table().read().expect("cyclotomic table poisoned").get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut poly = IntPoly::from_i64s(num);
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = poly
                .div_exact_monic(&cyclotomic(d))
                .expect("x^m - 1 is divisible by every Φ_d with d | m");
        }
    }
    let poly = Arc::new(poly);
    table()
        .write()
        .expect("cyclotomic table poisoned")
        .entry(m)
        .or_insert(poly)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), IntPoly::from_i64s(vec![-1, 1]));
        assert_eq!(*cyclotomic(2), IntPoly::from_i64s(vec![1, 1]));
        assert_eq!(*cyclotomic(6), IntPoly::from_i64s(vec![1, -1, 1]));
        assert_eq!(*cyclotomic(8), IntPoly::from_i64s(vec![1, 0, 0, 0, 1]));
        for m in 1..40u32 {
            assert_eq!(cyclotomic(m).degree().unwrap() as u64, euler_phi(m as u64));
        }
    }

    #[test]
    fn famous_coefficient_two() {
        // Φ_105 is the first cyclotomic polynomial with a coefficient of -2.
        let p = cyclotomic(105);
        assert!(p.to_bigs().iter().any(|c| *c == (-2).into()));
    }
}
