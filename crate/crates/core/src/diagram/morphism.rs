use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::pairing::compose_unchecked;
use super::{DiagramError, Pairing};
use crate::scalar::{RatScalar, Scalar, ScalarError};

/// A formal linear combination of simple diagrams from `source` to
/// `target` points.
#[derive(Clone, PartialEq)]
pub struct Morphism<S> {
    source: usize,
    target: usize,
    terms: BTreeMap<Pairing, S>,
}

impl<S: Scalar> Morphism<S> {
    pub fn zero(source: usize, target: usize) -> Self {
        Morphism { source, target, terms: BTreeMap::new() }
    }

    pub fn from_pairing(p: Pairing) -> Self {
        Self::from_term(p, S::one())
    }

    pub fn from_term(p: Pairing, c: S) -> Self {
        let mut m = Self::zero(p.bottom(), p.top());
        if !c.is_zero() {
            m.terms.insert(p, c);
        }
        m
    }

    /// Sums the given terms; every pairing must have the stated shape.
    pub fn from_terms(
        source: usize,
        target: usize,
        terms: impl IntoIterator<Item = (Pairing, S)>,
    ) -> Result<Self, DiagramError> {
        let mut m = Self::zero(source, target);
        for (p, c) in terms {
            if p.bottom() != source || p.top() != target {
                return Err(DiagramError::ShapeMismatch {
                    op: "from_terms",
                    left: (source, target),
                    right: (p.bottom(), p.top()),
                });
            }
            m.add_term(p, &c);
        }
        Ok(m)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<Pairing, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Pairing) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    fn add_term(&mut self, p: Pairing, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), DiagramError> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(DiagramError::ShapeMismatch {
                op,
                left: (self.source, self.target),
                right: (other.source, other.target),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiagramError> {
        self.check_same_shape(other, "add")?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DiagramError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| -c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.source, self.target);
        }
        self.map_terms(|x| x.clone() * c)
    }

    fn map_terms(&self, f: impl Fn(&S) -> S) -> Self {
        Morphism {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), f(c))).collect(),
        }
    }

    /// Stacks `self` on top of `f`, replacing each closed loop by `d`.
    pub fn compose(&self, f: &Self) -> Result<Self, DiagramError> {
        if self.source != f.target {
            return Err(DiagramError::ShapeMismatch {
                op: "compose",
                left: (self.source, self.target),
                right: (f.source, f.target),
            });
        }
        let mut gc: Vec<S> = self.terms.values().cloned().collect();
        let mut fc: Vec<S> = f.terms.values().cloned().collect();
        S::align(&mut gc);
        S::align(&mut fc);
        let mut acc: HashMap<(Pairing, usize), S> = HashMap::new();
        for (gp, gcoef) in self.terms.keys().zip(&gc) {
            for (fp, fcoef) in f.terms.keys().zip(&fc) {
                let key = compose_unchecked(gp, fp);
                let c = gcoef.mul_lazy(fcoef);
                match acc.entry(key) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_lazy(&c),
                }
            }
        }
        let d = S::loop_value();
        let mut by_pairing: BTreeMap<Pairing, S> = BTreeMap::new();
        for ((p, loops), c) in acc {
            let mut c = c;
            for _ in 0..loops {
                c = c.mul_lazy(&d);
            }
            match by_pairing.entry(p) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => e.get_mut().add_lazy(&c),
            }
        }
        let terms = by_pairing
            .into_iter()
            .filter_map(|(p, mut c)| {
                c.normalize();
                (!c.is_zero()).then_some((p, c))
            })
            .collect();
        Ok(Morphism { source: f.source, target: self.target, terms })
    }

    /// Horizontal juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.source + other.source, self.target + other.target);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.tensor(q), &(a.clone() * b));
            }
        }
        out
    }

    /// Rotation by 180 degrees, coefficients conjugated.
    pub fn dual(&self) -> Self {
        Morphism {
            source: self.target,
            target: self.source,
            terms: self.terms.iter().map(|(p, c)| (p.dual(), c.bar())).collect(),
        }
    }

    /// The anti-involution: reflection in the horizontal midline,
    /// coefficients conjugated.
    pub fn bar(&self) -> Self {
        Morphism {
            source: self.target,
            target: self.source,
            terms: self.terms.iter().map(|(p, c)| (p.bar(), c.bar())).collect(),
        }
    }

    /// Reflection in the vertical midline; coefficients unchanged.
    pub fn lateral(&self) -> Self {
        Morphism {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(p, c)| (p.lateral(), c.clone())).collect(),
        }
    }

    /// Closes every strand around the right.
    pub fn trace(&self) -> Result<S, DiagramError> {
        if self.source != self.target {
            return Err(DiagramError::ShapeMismatch {
                op: "trace",
                left: (self.source, self.target),
                right: (self.target, self.source),
            });
        }
        let d = S::loop_value();
        let mut powers = vec![S::one()];
        let mut total = S::zero();
        for (p, c) in &self.terms {
            let loops = p.closure_loops();
            while powers.len() <= loops {
                let next = powers.last().expect("nonempty").clone() * &d;
                powers.push(next);
            }
            total += c.clone() * &powers[loops];
        }
        Ok(total)
    }

    /// Closes the rightmost strand around the right.
    pub fn partial_trace(&self) -> Result<Self, DiagramError> {
        let n = self.source;
        if n != self.target || n == 0 {
            return Err(DiagramError::ShapeMismatch {
                op: "partial_trace",
                left: (self.source, self.target),
                right: (n.max(1), n.max(1)),
            });
        }
        let widened = self.tensor(&Self::identity(1));
        Self::cap(n, n + 1)?.compose(&widened.compose(&Self::cup(n, n + 1)?)?)
    }

    /// Closes the leftmost strand around the left.
    pub fn left_partial_trace(&self) -> Result<Self, DiagramError> {
        Ok(self.lateral().partial_trace()?.lateral())
    }

    /// Trace computed by closing strands around the left with nested caps
    /// and cups.
    pub fn left_trace(&self) -> Result<S, DiagramError> {
        let n = self.source;
        if n != self.target {
            return Err(DiagramError::ShapeMismatch {
                op: "left_trace",
                left: (self.source, self.target),
                right: (self.target, self.source),
            });
        }
        let eta = Self::unit_eta(n);
        let opened = Self::identity(n).tensor(self).compose(&eta)?;
        let closed = eta.bar().compose(&opened)?;
        Ok(closed.scalar_value())
    }

    /// The coefficient of the empty diagram.
    pub fn scalar_value(&self) -> S {
        self.coeff(&Pairing::identity(0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairing(Pairing::identity(n))
    }

    /// The cup creating top points `i - 1` and `i` (0-based), `n - 2 → n`.
    pub fn cup(i: usize, n: usize) -> Result<Self, DiagramError> {
        if n < 2 || i == 0 || i >= n {
            return Err(DiagramError::IndexOutOfRange { index: i, strands: n });
        }
        let m = n - 2;
        let mut pairs = vec![(m + i - 1, m + i)];
        for j in 0..m {
            let t = if j < i - 1 { j } else { j + 2 };
            pairs.push((j, m + t));
        }
        Ok(Self::from_pairing(Pairing::new(m, n, &pairs)?))
    }

    /// The cap joining bottom points `i - 1` and `i`, `n → n - 2`.
    pub fn cap(i: usize, n: usize) -> Result<Self, DiagramError> {
        Ok(Self::cup(i, n)?.bar())
    }

    /// The generator `U_i = cup_i ∘ cap_i` of `TL_n`.
    pub fn generator_u(i: usize, n: usize) -> Result<Self, DiagramError> {
        Self::cup(i, n)?.compose(&Self::cap(i, n)?)
    }

    /// `a` nested cups, `0 → 2a`.
    pub fn unit_eta(a: usize) -> Self {
        let pairs: Vec<_> = (0..a).map(|t| (t, 2 * a - 1 - t)).collect();
        Self::from_pairing(Pairing::new(0, 2 * a, &pairs).expect("nested cups are planar"))
    }

    /// Applies `f` to every coefficient (e.g. specialization).
    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T, ScalarError>) -> Result<Morphism<T>, ScalarError> {
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(p.clone(), v);
            }
        }
        Ok(Morphism { source: self.source, target: self.target, terms })
    }

    /// Maximum number of through-strands over the support.
    pub fn max_through_strands(&self) -> Option<usize> {
        self.terms.keys().map(Pairing::through_strands).max()
    }
}

impl Morphism<RatScalar> {
    /// Image at `q = e^{πi/N}`.
    pub fn specialize<T: Scalar>(&self) -> Result<Morphism<T>, ScalarError> {
        self.try_map(T::from_rat)
    }
}

fn wrap_coeff(s: &str) -> String {
    if s.contains(' ') || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<S: Scalar> fmt::Display for Morphism<S> {
    /// `coeff * pairing + ...` in basis order; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * {}", wrap_coeff(&c.to_string()), p)?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}: {})", self.source, self.target, self)
    }
}
