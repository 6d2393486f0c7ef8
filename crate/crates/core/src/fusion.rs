//! The category at `q = e^{πi/n}`: simple labels `0..=n−2`, truncated
//! fusion, and q-6j symbols.
//!
//! Functions generic over [`Scalar`] read the root order from the scalar
//! type; with [`RatScalar`] they use the generic rules.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::diagram::{basis, Morphism};
use crate::error::{Error, Result};
use crate::jones_wenzl::jw_in;
use crate::linalg::Matrix;
use crate::nets::{
    admissible, covertex_morphism, evaluate, fusion_coefficients, fusion_sum, require_admissible, vertex_morphism, Net,
};
use crate::scalar::{RatScalar, Scalar, ScalarError};

/// `q = e^{πi/n}` with simple objects `p_0, ..., p_{n−2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootContext {
    n: u32,
}

impl RootContext {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Malformed(format!("root order {n} < 2")));
        }
        Ok(RootContext { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_label(&self) -> usize {
        self.n as usize - 2
    }

    pub fn simple_labels(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.max_label()
    }
}

/// Admissible, every label at most `n − 2`, and `a + b + c < 2n − 2`.
pub fn q_admissible(a: usize, b: usize, c: usize, n: u32) -> bool {
    let top = n as usize - 2;
    admissible(a, b, c) && a.max(b).max(c) <= top && a + b + c < 2 * n as usize - 2
}

/// Admissibility in the regime of `S`.
pub fn valid_triple<S: Scalar>(a: usize, b: usize, c: usize) -> bool {
    match S::root_order() {
        None => admissible(a, b, c),
        Some(n) => q_admissible(a, b, c, n),
    }
}

fn require_valid<S: Scalar>(a: usize, b: usize, c: usize) -> Result<()> {
    match S::root_order() {
        _ if valid_triple::<S>(a, b, c) => Ok(()),
        Some(n) if admissible(a, b, c) => Err(Error::NotQAdmissible(a, b, c, n)),
        _ => Err(Error::NotAdmissible(a, b, c)),
    }
}

/// The vertex `(a, b, c)` is negligible at `q = e^{πi/n}` iff
/// `a + b + c ≥ 2n − 2`.
pub fn negligible_vertex(a: usize, b: usize, c: usize, n: u32) -> Result<bool> {
    require_admissible(a, b, c)?;
    Ok(a + b + c >= 2 * n as usize - 2)
}

/// Whether `θ(a, b, c)` vanishes in the regime of `S`.
pub fn theta_vanishes<S: Scalar>(a: usize, b: usize, c: usize) -> Result<bool> {
    Ok(crate::nets::theta_in::<S>(a, b, c)?.is_zero())
}

/// `a ⊞_n b`: `a + b` below `n − 1`, else `2n − (a + b) − 4`.
pub fn truncated_sum(a: usize, b: usize, n: u32) -> Result<usize> {
    let top = n as usize - 2;
    for x in [a, b] {
        if x > top {
            return Err(Error::LabelOutOfRange { label: x, max: top });
        }
    }
    Ok(if a + b < n as usize - 1 { a + b } else { 2 * n as usize - (a + b) - 4 })
}

/// `(k, λ(a, b, k))` for `k = |a−b|, ..., a ⊞_n b`; the full generic range
/// for `RatScalar`.
pub fn truncated_fusion<S: Scalar>(a: usize, b: usize) -> Result<Vec<(usize, S)>> {
    let top = match S::root_order() {
        None => a + b,
        Some(n) => truncated_sum(a, b, n)?,
    };
    fusion_coefficients(a, b)
        .into_iter()
        .filter(|(k, _)| *k <= top)
        .map(|(k, lambda)| Ok((k, S::from_rat(&lambda)?)))
        .collect()
}

/// `tr(f ∘ x) = 0` for every diagram `x` from the target back to the source.
pub fn is_negligible<S: Scalar>(f: &Morphism<S>) -> Result<bool> {
    for x in basis(f.target(), f.source()) {
        if !f.compose(&Morphism::from_pairing(x))?.trace()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p_a ⊗ p_b − Σ_k λ_k · covertex_k ∘ vertex_k` over the truncated range
/// is negligible.
pub fn truncated_identity_check<S: Scalar>(a: usize, b: usize) -> Result<bool> {
    let sum = fusion_sum(a, b, &truncated_fusion::<S>(a, b)?)?;
    let full = jw_in::<S>(a)?.tensor(&*jw_in::<S>(b)?);
    is_negligible(&full.sub(&sum)?)
}

/// Labels `i` with `(a, d, i)` and `(b, c, i)` valid for `S`.
pub fn recoupling_channels<S: Scalar>(a: usize, b: usize, c: usize, d: usize) -> Vec<usize> {
    (0..=(a + d).min(b + c)).filter(|&i| valid_triple::<S>(a, d, i) && valid_triple::<S>(b, c, i)).collect()
}

fn require_sixj<S: Scalar>(a: usize, b: usize, i: usize, c: usize, d: usize, j: usize) -> Result<()> {
    require_valid::<S>(a, b, j)?;
    require_valid::<S>(c, d, j)?;
    require_valid::<S>(a, d, i)?;
    require_valid::<S>(b, c, i)
}

/// The q-6j symbol: the coefficient of the `I` net with middle label `i`
/// in the expansion of the `H` net with middle label `j`, where the legs
/// are `a` bottom left, `b` top left, `c` top right, `d` bottom right.
///
/// Values are memoized per scalar type. At a root of unity the generic
/// value is specialized when possible and otherwise computed directly.
pub fn sixj<S: Scalar>(a: usize, b: usize, i: usize, c: usize, d: usize, j: usize) -> Result<S> {
    require_sixj::<S>(a, b, i, c, d, j)?;
    type Memo = RwLock<HashMap<(TypeId, [usize; 6]), Arc<dyn Any + Send + Sync>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (TypeId::of::<S>(), [a, b, i, c, d, j]);
    if let Some(v) = memo.read().expect("sixj memo poisoned").get(&key) {
        return Ok(v.downcast_ref::<S>().expect("keyed by type").clone());
    }
    let value = if S::root_order().is_none() {
        sixj_gram::<S>(a, b, i, c, d, j)?
    } else {
        match S::from_rat(&sixj::<RatScalar>(a, b, i, c, d, j)?) {
            Ok(v) => v,
            Err(ScalarError::DenominatorVanishes { .. }) => sixj_gram::<S>(a, b, i, c, d, j)?,
            Err(e) => return Err(e.into()),
        }
    };
    memo.write().expect("sixj memo poisoned").insert(key, Arc::new(value.clone()));
    Ok(value)
}

/// `tr(bar(I_i) ∘ H) / tr(bar(I_i) ∘ I_i)`, both traces evaluated as
/// closed nets.
pub fn sixj_gram<S: Scalar>(a: usize, b: usize, i: usize, c: usize, d: usize, j: usize) -> Result<S> {
    require_sixj::<S>(a, b, i, c, d, j)?;
    let h = Net::h(a, b, c, d, j)?;
    let tree = Net::i(a, b, c, d, i)?;
    let dual = tree.mirror();
    let num: S = evaluate(&Net::stack(&h, &dual)?.closure()?)?;
    let gram: S = evaluate(&Net::stack(&tree, &dual)?.closure()?)?;
    if gram.is_zero() {
        return Err(Error::DegenerateGram(vec![a, b, i, c, d, j]));
    }
    Ok(num.try_div(&gram)?)
}

/// The `I`-tree `covertex(b, c, i) ∘ vertex(a, d, i)`.
pub fn i_tree<S: Scalar>(a: usize, b: usize, c: usize, d: usize, i: usize) -> Result<Morphism<S>> {
    Ok(covertex_morphism::<S>(b, c, i)?.compose(&vertex_morphism::<S>(a, d, i)?)?)
}

/// The `H`-tree `(id_b ⊗ vertex(j, d, c)) ∘ (covertex(b, j, a) ⊗ id_d)`.
pub fn h_tree<S: Scalar>(a: usize, b: usize, c: usize, d: usize, j: usize) -> Result<Morphism<S>> {
    let upper = Morphism::identity(b).tensor(&vertex_morphism::<S>(j, d, c)?);
    let lower = covertex_morphism::<S>(b, j, a)?.tensor(&Morphism::identity(d));
    Ok(upper.compose(&lower)?)
}

/// All generic 6j symbols `{a b i; c d j}` for fixed `j`, by solving
/// `H = Σ_i r_i I_i` in the diagram basis.
pub fn sixj_dense_row(a: usize, b: usize, c: usize, d: usize, j: usize) -> Result<Vec<(usize, RatScalar)>> {
    require_admissible(a, b, j)?;
    require_admissible(c, d, j)?;
    let h = h_tree::<RatScalar>(a, b, c, d, j)?;
    let channels = recoupling_channels::<RatScalar>(a, b, c, d);
    let trees: Vec<Morphism<RatScalar>> =
        channels.iter().map(|&i| i_tree(a, b, c, d, i)).collect::<Result<_>>()?;
    let diagrams = basis(a + d, b + c);
    let rows: Vec<Vec<RatScalar>> =
        diagrams.iter().map(|p| trees.iter().map(|t| t.coeff(p)).collect()).collect();
    let rhs: Vec<RatScalar> = diagrams.iter().map(|p| h.coeff(p)).collect();
    let m = Matrix::from_rows(rows);
    if m.rank() != channels.len() {
        return Err(Error::DegenerateGram(vec![a, b, c, d, j]));
    }
    let x = m.solve(&rhs).ok_or_else(|| Error::DegenerateGram(vec![a, b, c, d, j]))?;
    Ok(channels.into_iter().zip(x).collect())
}

/// One generic 6j symbol from [`sixj_dense_row`], mapped into `S`.
pub fn sixj_dense<S: Scalar>(a: usize, b: usize, i: usize, c: usize, d: usize, j: usize) -> Result<S> {
    require_sixj::<S>(a, b, i, c, d, j)?;
    let row = sixj_dense_row(a, b, c, d, j)?;
    let r = row.iter().find(|(k, _)| *k == i).map(|(_, r)| r.clone()).expect("valid channel");
    Ok(S::from_rat(&r)?)
}

/// `H = Σ_i {a b i; c d j} I_i` exactly, for generic `q`.
pub fn recoupling_check(a: usize, b: usize, c: usize, d: usize, j: usize) -> Result<bool> {
    let h = h_tree::<RatScalar>(a, b, c, d, j)?;
    let mut sum = Morphism::zero(a + d, b + c);
    for i in recoupling_channels::<RatScalar>(a, b, c, d) {
        sum = sum.add(&i_tree(a, b, c, d, i)?.scale(&sixj(a, b, i, c, d, j)?))?;
    }
    Ok(sum == h)
}

/// `Σ_i {a b i; c d j} {d a k; b c i} = δ_{jk}`.
pub fn orthogonality_sum<S: Scalar>(a: usize, b: usize, c: usize, d: usize, j: usize, k: usize) -> Result<S> {
    for (x, y, z) in [(a, b, j), (c, d, j), (a, b, k), (c, d, k)] {
        require_valid::<S>(x, y, z)?;
    }
    let mut sum = S::zero();
    for i in recoupling_channels::<S>(a, b, c, d) {
        sum += sixj::<S>(a, b, i, c, d, j)? * sixj::<S>(d, a, k, b, c, i)?;
    }
    Ok(sum)
}

pub fn orthogonality_check<S: Scalar>(a: usize, b: usize, c: usize, d: usize, j: usize, k: usize) -> Result<bool> {
    let sum = orthogonality_sum::<S>(a, b, c, d, j, k)?;
    Ok(if j == k { sum.is_one() } else { sum.is_zero() })
}

/// Both sides of the pentagon on the four-leaf tree with leaves `x0..x3`
/// and root `x4` agree.
pub fn pentagon_check<S: Scalar>(labels: [usize; 5]) -> Result<bool> {
    crate::skein::pentagon_check::<S>(labels).map(|(ok, _)| ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::theta_formula;
    use crate::scalar::CycloScalar;
    use num_traits::{One, Zero};

    #[test]
    fn q_admissibility() {
        assert!(q_admissible(0, 0, 0, 3));
        assert!(q_admissible(1, 1, 0, 3));
        assert!(!q_admissible(1, 1, 2, 3));
        assert!(!q_admissible(1, 1, 1, 5));
        assert!(q_admissible(2, 2, 2, 5));
        assert!(!q_admissible(2, 2, 2, 4));
        assert!(RootContext::new(1).is_err());
        assert_eq!(RootContext::new(4).unwrap().simple_labels(), 0..=2);
    }

    #[test]
    fn negligible_vertices() {
        for n in 3..=7u32 {
            assert!(negligible_vertex(n as usize - 2, 1, n as usize - 1, n).unwrap());
            assert!(!negligible_vertex(0, 0, 0, n).unwrap());
        }
        assert!(negligible_vertex(1, 1, 1, 3).is_err());
    }

    #[test]
    fn truncated_sums() {
        assert_eq!(truncated_sum(1, 1, 3).unwrap(), 0);
        assert_eq!(truncated_sum(1, 1, 4).unwrap(), 2);
        assert_eq!(truncated_sum(2, 2, 4).unwrap(), 0);
        assert!(truncated_sum(2, 0, 3).is_err());
        for n in 2..=8u32 {
            for a in 0..=n as usize - 2 {
                for b in 0..=n as usize - 2 {
                    let s = truncated_sum(a, b, n).unwrap();
                    assert!(s <= n as usize - 2 && s >= a.abs_diff(b) && (s - a.abs_diff(b)).is_multiple_of(2));
                    for k in (a.abs_diff(b)..=s).step_by(2) {
                        assert!(q_admissible(a, b, k, n));
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_fusion_examples() {
        let f = truncated_fusion::<CycloScalar<3>>(1, 1).unwrap();
        assert_eq!(f, vec![(0, CycloScalar::<3>::qint(2).try_inv().unwrap())]);
        assert_eq!(truncated_fusion::<CycloScalar<5>>(0, 2).unwrap(), vec![(2, CycloScalar::one())]);
        assert!(truncated_identity_check::<CycloScalar<3>>(1, 1).unwrap());
        assert!(truncated_identity_check::<CycloScalar<4>>(2, 2).unwrap());
        // The untruncated sum is not available at the root, and the
        // truncated one differs from p_a ⊗ p_b by a nonzero negligible.
        let sum = fusion_sum(2, 2, &truncated_fusion::<CycloScalar<4>>(2, 2).unwrap()).unwrap();
        let full = jw_in::<CycloScalar<4>>(2).unwrap().tensor(&*jw_in(2).unwrap());
        assert_ne!(sum, full);
        assert!(!is_negligible(&full).unwrap());
    }

    #[test]
    fn sixj_anchors() {
        for (a, c) in [(1, 1), (2, 1), (2, 2), (1, 3)] {
            for i in recoupling_channels::<RatScalar>(a, a, c, c) {
                let expected = RatScalar::qint(i as i64 + 1).checked_div(&theta_formula(a, c, i).unwrap()).unwrap();
                assert_eq!(sixj::<RatScalar>(a, a, i, c, c, 0).unwrap(), expected);
            }
        }
        for (b, c, d) in [(1, 1, 0), (2, 1, 1), (2, 3, 1)] {
            // a = 0 forces j = b and i = d.
            assert!(sixj::<RatScalar>(0, b, d, c, d, b).unwrap().is_one());
        }
        assert!(matches!(sixj::<RatScalar>(1, 1, 1, 1, 1, 0), Err(Error::NotAdmissible(1, 1, 1))));
        assert!(matches!(sixj::<CycloScalar<3>>(1, 1, 2, 1, 1, 0), Err(Error::NotQAdmissible(1, 1, 2, 3))));
    }

    #[test]
    fn sixj_oracles_agree() {
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for d in 0..=2 {
                        for j in 0..=2 {
                            if !(admissible(a, b, j) && admissible(c, d, j)) {
                                continue;
                            }
                            for (i, r) in sixj_dense_row(a, b, c, d, j).unwrap() {
                                assert_eq!(sixj::<RatScalar>(a, b, i, c, d, j).unwrap(), r);
                            }
                            assert!(recoupling_check(a, b, c, d, j).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sixj_unit_row() {
        // {1 1 i; 1 1 0} for i = 0, 2 from the 2 x 2 system.
        let row = sixj_dense_row(1, 1, 1, 1, 0).unwrap();
        assert_eq!(row.len(), 2);
        let d = RatScalar::qint(2);
        assert_eq!(row[0].1, RatScalar::from_integer(1).checked_div(&d).unwrap());
        assert!(row[1].1.is_one());
        assert!(matches!(sixj_dense_row(1, 1, 1, 1, 1), Err(Error::NotAdmissible(1, 1, 1))));
    }

    #[test]
    fn gram_diagonal() {
        for (a, b, c, d, i) in [(1, 1, 1, 1, 2), (2, 1, 2, 1, 1), (2, 2, 2, 2, 2)] {
            let tree = Net::i(a, b, c, d, i).unwrap();
            let gram: RatScalar = evaluate(&Net::stack(&tree, &tree.mirror()).unwrap().closure().unwrap()).unwrap();
            let expected = (theta_formula(a, d, i).unwrap() * theta_formula(b, c, i).unwrap())
                .checked_div(&RatScalar::qint(i as i64 + 1))
                .unwrap();
            assert_eq!(gram, expected);
        }
    }

    #[test]
    fn orthogonality_small() {
        assert!(orthogonality_sum::<CycloScalar<3>>(1, 1, 1, 1, 0, 0).unwrap().is_one());
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for d in 0..=2 {
                        for j in 0..=2 {
                            for k in 0..=2 {
                                let ok = [(a, b, j), (c, d, j), (a, b, k), (c, d, k)]
                                    .iter()
                                    .all(|&(x, y, z)| admissible(x, y, z));
                                if ok {
                                    assert!(orthogonality_check::<RatScalar>(a, b, c, d, j, k).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
        let zero: CycloScalar<4> = orthogonality_sum(1, 1, 1, 1, 0, 2).unwrap();
        assert!(zero.is_zero());
    }
}
