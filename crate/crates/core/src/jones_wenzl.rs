//! Jones-Wenzl idempotents via the Wenzl recursion
//!
//! ```text
//! p_{n+1} = p_n ⊗ 1 − ([n]/[n+1]) (p_n ⊗ 1) U_n (p_n ⊗ 1)
//! ```
//!
//! Generic projectors are memoized; at `q = e^{πi/N}` they are obtained by
//! specializing the generic coefficients, which is possible for `n ≤ N − 1`.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::diagram::{DiagramError, Morphism};
use crate::scalar::{RatScalar, Scalar, ScalarError};

pub const DEFAULT_JW_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JwError {
    #[error("p_{n} is not defined at q = exp(pi i / {root}); need n <= {}", root - 1)]
    Undefined { n: usize, root: u32 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Memo table of generic projectors `p_0, p_1, ...`.
///
/// Entries up to `bound` are stored; each is checked for identity
/// coefficient 1 and cap/cup annihilation before it is published (these
/// imply idempotency).
pub struct JwCache {
    bound: usize,
    table: RwLock<Vec<Arc<Morphism<RatScalar>>>>,
}

impl JwCache {
    pub fn with_bound(bound: usize) -> Self {
        JwCache { bound, table: RwLock::new(Vec::new()) }
    }

    pub fn global() -> &'static JwCache {
        static CACHE: OnceLock<JwCache> = OnceLock::new();
        CACHE.get_or_init(|| JwCache::with_bound(DEFAULT_JW_BOUND))
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, n: usize) -> Arc<Morphism<RatScalar>> {
        if let Some(p) = self.table.read().expect("jw cache poisoned").get(n) {
            return p.clone();
        }
        let mut table = self.table.write().expect("jw cache poisoned");
        if table.is_empty() {
            table.push(Arc::new(Morphism::identity(0)));
        }
        let mut current = table.last().expect("p_0 present").clone();
        let mut k = table.len() - 1;
        while k < n {
            let next = Arc::new(wenzl_step(&current, k));
            debug_assert!(cheap_check(&next));
            if k < self.bound {
                assert!(cheap_check(&next), "p_{} failed its defining properties", k + 1);
                table.push(next.clone());
            }
            current = next;
            k += 1;
        }
        current
    }
}

/// `μ_n = [n]/[n+1]`.
pub fn recursion_coefficient(n: usize) -> RatScalar {
    RatScalar::qint(n as i64)
        .checked_div(&RatScalar::qint(n as i64 + 1))
        .expect("[n+1] is nonzero for generic q")
}

fn wenzl_step(p: &Morphism<RatScalar>, n: usize) -> Morphism<RatScalar> {
    if n == 0 {
        return Morphism::identity(1);
    }
    let widened = p.tensor(&Morphism::identity(1));
    // (p⊗1) U_n (p⊗1) = bar(A) ∘ A with A = cap_n ∘ (p⊗1), since p is
    // bar-invariant.
    let cap = Morphism::cap(n, n + 1).expect("valid cap");
    let a = cap.compose(&widened).expect("shapes agree");
    let middle = a.bar().compose(&a).expect("shapes agree");
    widened
        .sub(&middle.scale(&recursion_coefficient(n)))
        .expect("shapes agree")
}

fn cheap_check<S: Scalar>(p: &Morphism<S>) -> bool {
    let r = check_jw_partial(p);
    r.identity_coefficient && r.cap_kill && r.cup_kill
}

/// The generic projector `p_n`, memoized.
pub fn jw(n: usize) -> Arc<Morphism<RatScalar>> {
    JwCache::global().get(n)
}

/// `p_n` over the scalar type `S`.
pub fn jw_in<S: Scalar>(n: usize) -> Result<Arc<Morphism<S>>, JwError> {
    if let Some(root) = S::root_order() {
        if n as u64 >= root as u64 {
            return Err(JwError::Undefined { n, root });
        }
    }
    if TypeId::of::<S>() == TypeId::of::<RatScalar>() {
        let p: Arc<dyn Any + Send + Sync> = jw(n);
        return Ok(p.downcast::<Morphism<S>>().expect("type checked"));
    }
    type Table = RwLock<HashMap<(TypeId, usize), Arc<dyn Any + Send + Sync>>>;
    static SPECIALIZED: OnceLock<Table> = OnceLock::new();
    let table = SPECIALIZED.get_or_init(Default::default);
    let key = (TypeId::of::<S>(), n);
    if let Some(p) = table.read().expect("jw table poisoned").get(&key) {
        return Ok(p.clone().downcast::<Morphism<S>>().expect("keyed by type"));
    }
    let p: Arc<Morphism<S>> = Arc::new(jw(n).try_map(S::from_rat)?);
    table
        .write()
        .expect("jw table poisoned")
        .entry(key)
        .or_insert_with(|| p.clone() as Arc<dyn Any + Send + Sync>);
    Ok(p)
}

/// Outcome of checking the defining properties of a Jones-Wenzl
/// idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JwReport {
    pub n: usize,
    pub identity_coefficient: bool,
    pub cap_kill: bool,
    pub cup_kill: bool,
    pub idempotent: bool,
}

impl JwReport {
    pub fn passed(&self) -> bool {
        self.identity_coefficient && self.cap_kill && self.cup_kill && self.idempotent
    }
}

fn check_jw_partial<S: Scalar>(p: &Morphism<S>) -> JwReport {
    let n = p.source();
    let square = p.target() == n;
    let identity_coefficient = square && p.coeff(&crate::diagram::Pairing::identity(n)).is_one();
    let cap_kill = square
        && (1..n).all(|i| {
            Morphism::<S>::cap(i, n)
                .and_then(|c| c.compose(p))
                .is_ok_and(|m| m.is_zero())
        });
    let cup_kill = square
        && (1..n).all(|i| {
            Morphism::<S>::cup(i, n)
                .and_then(|c| p.compose(&c))
                .is_ok_and(|m| m.is_zero())
        });
    JwReport { n, identity_coefficient, cap_kill, cup_kill, idempotent: false }
}

/// Checks identity coefficient 1, `cap_i ∘ p = 0`, `p ∘ cup_i = 0` for every
/// `i`, and `p ∘ p = p`, all exactly.
pub fn check_jw<S: Scalar>(p: &Morphism<S>) -> JwReport {
    let mut r = check_jw_partial(p);
    r.idempotent = p.source() == p.target() && p.compose(p).is_ok_and(|sq| sq == *p);
    r
}

/// `(id_offset ⊗ p_m ⊗ id) ∘ p_n = p_n = p_n ∘ (id_offset ⊗ p_m ⊗ id)`.
pub fn absorb_check(n: usize, m: usize, offset: usize) -> Result<bool, DiagramError> {
    if m > n || offset + m > n {
        return Err(DiagramError::ShapeMismatch { op: "absorb_check", left: (n, n), right: (m, offset) });
    }
    let pn = jw(n);
    let inner = Morphism::identity(offset)
        .tensor(&jw(m))
        .tensor(&Morphism::identity(n - m - offset));
    Ok(inner.compose(&pn)? == *pn && pn.compose(&inner)? == *pn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::basis;
    use crate::linalg::Matrix;
    use crate::scalar::CycloScalar;

    #[test]
    fn low_projectors() {
        assert_eq!(*jw(0), Morphism::identity(0));
        assert_eq!(*jw(1), Morphism::identity(1));
        let expected = Morphism::identity(2)
            .sub(&Morphism::generator_u(1, 2).unwrap().scale(&RatScalar::qint(2).checked_inv().unwrap()))
            .unwrap();
        assert_eq!(*jw(2), expected);
    }

    #[test]
    fn properties_up_to_six() {
        for n in 0..=6 {
            let p = jw(n);
            assert!(check_jw(&p).passed(), "p_{n}");
            assert_eq!(p.trace().unwrap(), RatScalar::qint(n as i64 + 1));
            assert_eq!(p.dual(), *p);
            assert_eq!(p.bar(), *p);
            assert_eq!(p.lateral(), *p);
        }
    }

    #[test]
    fn partial_traces() {
        for n in 1..=6 {
            let lhs = jw(n).partial_trace().unwrap();
            let c = RatScalar::qint(n as i64 + 1).checked_div(&RatScalar::qint(n as i64)).unwrap();
            assert_eq!(lhs, jw(n - 1).scale(&c));
        }
    }

    #[test]
    fn negative_controls() {
        let r = check_jw(&Morphism::<RatScalar>::identity(2));
        assert!(r.identity_coefficient && !r.cap_kill && !r.passed());
        let mut terms: Vec<_> = jw(3).terms().iter().map(|(p, c)| (p.clone(), c.clone())).collect();
        terms[0].1 += RatScalar::q();
        let perturbed = Morphism::from_terms(3, 3, terms).unwrap();
        assert!(!check_jw(&perturbed).idempotent);
    }

    #[test]
    fn absorption() {
        assert!(absorb_check(3, 2, 0).unwrap());
        assert!(absorb_check(3, 2, 1).unwrap());
        assert!(absorb_check(2, 1, 1).unwrap());
        assert!(absorb_check(5, 3, 1).unwrap());
        assert!(absorb_check(3, 3, 1).is_err());
    }

    #[test]
    fn uniqueness_by_linear_solve() {
        // The conditions "cap_i ∘ x = 0 for all i" and "coefficient of the
        // identity is 1" are linear in the coefficients of x; the solution
        // space is exactly {p_n}.
        for n in 1..=4usize {
            let b = basis(n, n);
            let id_index = b.iter().position(|p| *p == crate::diagram::Pairing::identity(n)).unwrap();
            let mut rows: Vec<Vec<RatScalar>> = Vec::new();
            let mut rhs = Vec::new();
            for i in 1..n {
                let cap = Morphism::<RatScalar>::cap(i, n).unwrap();
                let images: Vec<_> = b.iter().map(|p| cap.compose(&Morphism::from_pairing(p.clone())).unwrap()).collect();
                for q in basis(n, n - 2) {
                    rows.push(images.iter().map(|m| m.coeff(&q)).collect());
                    rhs.push(RatScalar::from_integer(0));
                }
            }
            let mut unit = vec![RatScalar::from_integer(0); b.len()];
            unit[id_index] = RatScalar::from_integer(1);
            rows.push(unit);
            rhs.push(RatScalar::from_integer(1));
            let a = Matrix::from_rows(rows);
            assert_eq!(a.rank(), b.len(), "unique solution for n = {n}");
            let x = a.solve(&rhs).unwrap();
            let sol = Morphism::from_terms(n, n, b.iter().cloned().zip(x)).unwrap();
            assert_eq!(sol, *jw(n));
        }
    }

    #[test]
    fn specialized_projectors() {
        let p = jw_in::<CycloScalar<4>>(3).unwrap();
        assert!(check_jw(&p).passed());
        assert!(num_traits::Zero::is_zero(&p.trace().unwrap()));
        assert!(matches!(jw_in::<CycloScalar<4>>(4), Err(JwError::Undefined { n: 4, root: 4 })));
        assert_eq!(*jw_in::<RatScalar>(3).unwrap(), *jw(3));
    }
}
