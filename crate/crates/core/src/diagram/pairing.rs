use std::fmt;

use super::DiagramError;

/// A loop-free noncrossing perfect matching between `bottom` points and
/// `top` points: a simple Temperley-Lieb diagram.
///
/// Points `0..bottom` lie on the bottom edge and `bottom..bottom + top` on
/// the top edge, both numbered left to right. `partner[i]` is the point
/// matched with `i`.
///
/// The derived order compares shape first and then the partner arrays
/// lexicographically, which agrees with comparing the sorted `(min, max)`
/// pair lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    bottom: u8,
    top: u8,
    partner: Box<[u8]>,
}

impl Pairing {
    /// Checked constructor from a list of pairs.
    pub fn new(bottom: usize, top: usize, pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        let total = bottom + top;
        if total > u8::MAX as usize {
            return Err(DiagramError::InvalidPairing(format!("{total} points exceed the supported size")));
        }
        let mut partner = vec![u8::MAX; total];
        for &(a, b) in pairs {
            if a >= total || b >= total || a == b {
                return Err(DiagramError::InvalidPairing(format!("bad pair ({a},{b})")));
            }
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(DiagramError::InvalidPairing(format!("point reused in ({a},{b})")));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(DiagramError::InvalidPairing("matching is not perfect".into()));
        }
        let p = Pairing { bottom: bottom as u8, top: top as u8, partner: partner.into() };
        if !p.is_noncrossing() {
            return Err(DiagramError::InvalidPairing(format!("crossing arcs in {p}")));
        }
        Ok(p)
    }

    /// Unchecked constructor for internally produced matchings.
    pub(crate) fn from_partner(bottom: usize, top: usize, partner: Vec<u8>) -> Self {
        debug_assert_eq!(partner.len(), bottom + top);
        let p = Pairing { bottom: bottom as u8, top: top as u8, partner: partner.into() };
        debug_assert!(p.is_noncrossing(), "crossing pairing {p}");
        p
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u8).collect();
        Self::from_partner(n, n, partner)
    }

    pub fn bottom(&self) -> usize {
        self.bottom as usize
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    #[inline]
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i] as usize
    }

    pub(crate) fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// Pairs as `(min, max)`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter(|&i| i < self.partner(i))
            .map(|i| (i, self.partner(i)))
            .collect()
    }

    /// Number of arcs joining the bottom edge to the top edge.
    pub fn through_strands(&self) -> usize {
        (0..self.bottom()).filter(|&i| self.partner(i) >= self.bottom()).count()
    }

    /// Position of point `i` in the circular order: bottom left to right,
    /// then top right to left.
    fn circular(&self, i: usize) -> usize {
        let m = self.bottom();
        if i < m {
            i
        } else {
            m + self.top() - 1 - (i - m)
        }
    }

    fn is_noncrossing(&self) -> bool {
        let total = self.points();
        let mut by_pos = vec![0usize; total];
        for i in 0..total {
            by_pos[self.circular(i)] = i;
        }
        let mut stack = Vec::with_capacity(total / 2);
        for &i in &by_pos {
            let j = self.partner(i);
            if self.circular(j) > self.circular(i) {
                stack.push(i);
            } else if stack.pop() != Some(j) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Horizontal juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Pairing) -> Pairing {
        let (m, n) = (self.bottom(), self.top());
        let (m2, n2) = (other.bottom(), other.top());
        let left = |i: usize| if i < m { i } else { m + m2 + (i - m) };
        let right = |i: usize| if i < m2 { m + i } else { m + m2 + n + (i - m2) };
        let mut partner = vec![0u8; m + m2 + n + n2];
        for i in 0..m + n {
            partner[left(i)] = left(self.partner(i)) as u8;
        }
        for i in 0..m2 + n2 {
            partner[right(i)] = right(other.partner(i)) as u8;
        }
        Pairing::from_partner(m + m2, n + n2, partner)
    }

    fn relabel(&self, bottom: usize, top: usize, f: impl Fn(usize) -> usize) -> Pairing {
        let mut partner = vec![0u8; self.points()];
        for i in 0..self.points() {
            partner[f(i)] = f(self.partner(i)) as u8;
        }
        Pairing::from_partner(bottom, top, partner)
    }

    /// Rotation by 180 degrees.
    pub fn dual(&self) -> Pairing {
        let (m, n) = (self.bottom(), self.top());
        self.relabel(n, m, |i| if i < m { n + (m - 1 - i) } else { n - 1 - (i - m) })
    }

    /// Reflection in the horizontal midline.
    pub fn bar(&self) -> Pairing {
        let (m, n) = (self.bottom(), self.top());
        self.relabel(n, m, |i| if i < m { n + i } else { i - m })
    }

    /// Reflection in the vertical midline.
    pub fn lateral(&self) -> Pairing {
        let (m, n) = (self.bottom(), self.top());
        self.relabel(m, n, |i| if i < m { m - 1 - i } else { m + (n - 1 - (i - m)) })
    }

    /// Stacks `self` on top of `f`; returns the reduced diagram and the
    /// number of closed loops removed.
    pub fn compose(&self, f: &Pairing) -> Result<(Pairing, usize), DiagramError> {
        if self.bottom != f.top {
            return Err(DiagramError::ShapeMismatch {
                op: "compose",
                left: (self.bottom(), self.top()),
                right: (f.bottom(), f.top()),
            });
        }
        Ok(compose_unchecked(self, f))
    }

    /// Number of loops formed by joining bottom point `i` to top point `i`.
    pub fn closure_loops(&self) -> usize {
        assert_eq!(self.bottom, self.top);
        let n = self.bottom();
        let mut seen = vec![false; n];
        let mut loops = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            loops += 1;
            seen[start] = true;
            let mut p = start;
            loop {
                let j = self.partner(p);
                let c = if j < n { j } else { j - n };
                if c == start {
                    break;
                }
                seen[c] = true;
                p = if j < n { n + j } else { j - n };
            }
        }
        loops
    }
}

pub(crate) fn compose_unchecked(g: &Pairing, f: &Pairing) -> (Pairing, usize) {
    let (m, n, k) = (f.bottom(), f.top(), g.top());
    let fp = f.partners();
    let gp = g.partners();
    let mut out = vec![u8::MAX; m + k];
    let mut mid = vec![false; n];
    for start in 0..m + k {
        if out[start] != u8::MAX {
            continue;
        }
        // (in_f, point) in the owning diagram's numbering.
        let mut in_f = start < m;
        let mut cur = if in_f { fp[start] as usize } else { gp[n + start - m] as usize };
        let end = loop {
            if in_f {
                if cur < m {
                    break cur;
                }
                mid[cur - m] = true;
                cur = gp[cur - m] as usize;
                in_f = false;
            } else {
                if cur >= n {
                    break m + cur - n;
                }
                mid[cur] = true;
                cur = fp[m + cur] as usize;
                in_f = true;
            }
        };
        out[start] = end as u8;
        out[end] = start as u8;
    }
    let mut loops = 0;
    for t in 0..n {
        if mid[t] {
            continue;
        }
        loops += 1;
        let mut cur = t;
        loop {
            mid[cur] = true;
            let s = gp[cur] as usize;
            mid[s] = true;
            cur = fp[m + s] as usize - m;
            if cur == t {
                break;
            }
        }
    }
    (Pairing::from_partner(m, k, out), loops)
}

impl fmt::Display for Pairing {
    /// Sorted pair list, e.g. `[(0,1),(2,5),(3,4)]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{}", self.bottom, self.top, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_crossings() {
        assert!(Pairing::new(2, 2, &[(0, 3), (1, 2)]).is_err());
        assert!(Pairing::new(2, 2, &[(0, 2), (1, 3)]).is_ok());
        assert!(Pairing::new(0, 4, &[(0, 2), (1, 3)]).is_err());
        assert!(Pairing::new(1, 1, &[]).is_err());
    }

    #[test]
    fn display_sorted_pairs() {
        let p = Pairing::new(3, 3, &[(2, 5), (3, 4), (0, 1)]).unwrap();
        assert_eq!(p.to_string(), "[(0,1),(2,5),(3,4)]");
        assert_eq!(p.through_strands(), 1);
    }

    #[test]
    fn cup_cap_loop() {
        let cup = Pairing::new(0, 2, &[(0, 1)]).unwrap();
        let cap = cup.bar();
        assert_eq!(cap, Pairing::new(2, 0, &[(0, 1)]).unwrap());
        let (p, loops) = cap.compose(&cup).unwrap();
        assert_eq!((p.points(), loops), (0, 1));
        let (u, loops) = cup.compose(&cap).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(u, Pairing::new(2, 2, &[(0, 1), (2, 3)]).unwrap());
    }

    #[test]
    fn closure_counts() {
        assert_eq!(Pairing::identity(3).closure_loops(), 3);
        let u = Pairing::new(2, 2, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(u.closure_loops(), 1);
    }
}
