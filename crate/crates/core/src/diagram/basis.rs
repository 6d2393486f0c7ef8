use super::Pairing;

/// The k-th Catalan number.
pub fn catalan(k: usize) -> u64 {
    (0..k as u64).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// All simple diagrams from `m` to `n` points, in increasing order.
///
/// The count is `catalan((m + n) / 2)` when `m + n` is even, else zero.
pub fn basis(m: usize, n: usize) -> Vec<Pairing> {
    let total = m + n;
    if total % 2 == 1 {
        return Vec::new();
    }
    // Enumerate noncrossing matchings of the circular positions, then map
    // positions back to point labels.
    let point_at = |pos: usize| if pos < m { pos } else { m + (n - 1 - (pos - m)) };
    let mut out = Vec::with_capacity(catalan(total / 2) as usize);
    let mut partner = vec![0u8; total];
    fill(0, total, &mut partner, &mut |pp: &[u8]| {
        let mut p = vec![0u8; total];
        for (pos, &other) in pp.iter().enumerate() {
            p[point_at(pos)] = point_at(other as usize) as u8;
        }
        out.push(Pairing::from_partner(m, n, p));
    });
    out.sort_unstable();
    out
}

/// Fills `partner[lo..hi]` with every noncrossing matching of that interval.
fn fill(lo: usize, hi: usize, partner: &mut Vec<u8>, emit: &mut dyn FnMut(&[u8])) {
    fn go(stack: &mut Vec<(usize, usize)>, partner: &mut Vec<u8>, emit: &mut dyn FnMut(&[u8])) {
        let Some((lo, hi)) = stack.pop() else {
            emit(partner);
            return;
        };
        if lo == hi {
            go(stack, partner, emit);
        } else {
            for j in (lo + 1..hi).step_by(2) {
                partner[lo] = j as u8;
                partner[j] = lo as u8;
                stack.push((j + 1, hi));
                stack.push((lo + 1, j));
                go(stack, partner, emit);
                stack.pop();
                stack.pop();
            }
        }
        stack.push((lo, hi));
    }
    let mut stack = vec![(lo, hi)];
    go(&mut stack, partner, emit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        assert_eq!(basis(0, 0).len(), 1);
        assert_eq!(basis(3, 3).len(), 5);
        assert_eq!(basis(2, 4).len(), 5);
        assert!(basis(2, 3).is_empty());
        for total in (0..=16).step_by(2) {
            for m in 0..=total {
                assert_eq!(basis(m, total - m).len() as u64, catalan(total / 2));
            }
        }
    }

    #[test]
    fn ordered_and_distinct() {
        let b = basis(4, 4);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        let pairs: Vec<_> = b.iter().map(|p| p.pairs()).collect();
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn brute_force_agrees() {
        // Every perfect matching that passes the checked constructor.
        fn all(points: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            if points.is_empty() {
                out.push(acc.clone());
                return;
            }
            let a = points.remove(0);
            for i in 0..points.len() {
                let b = points.remove(i);
                acc.push((a, b));
                all(points, acc, out);
                acc.pop();
                points.insert(i, b);
            }
            points.insert(0, a);
        }
        for (m, n) in [(2, 4), (3, 3), (1, 5), (4, 2), (0, 6)] {
            let mut out = Vec::new();
            all(&mut (0..m + n).collect(), &mut Vec::new(), &mut out);
            let mut valid: Vec<_> = out.iter().filter_map(|ps| Pairing::new(m, n, ps).ok()).collect();
            valid.sort();
            assert_eq!(valid, basis(m, n));
        }
    }
}
