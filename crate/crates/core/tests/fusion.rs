use tlj::fusion::{
    negligible_vertex, orthogonality_check, pentagon_check, q_admissible, sixj, sixj_dense, theta_vanishes,
    truncated_fusion, truncated_identity_check,
};
use tlj::nets::admissible;
use tlj::{CycloScalar, Scalar};

fn labels(n: u32) -> std::ops::RangeInclusive<usize> {
    0..=n as usize - 2
}

fn orthogonality_grid<S: Scalar>() -> usize {
    let n = S::root_order().unwrap();
    let mut checked = 0;
    for a in labels(n) {
        for b in labels(n) {
            for c in labels(n) {
                for d in labels(n) {
                    let js: Vec<usize> =
                        labels(n).filter(|&j| q_admissible(a, b, j, n) && q_admissible(c, d, j, n)).collect();
                    for &j in &js {
                        for &k in &js {
                            assert!(orthogonality_check::<S>(a, b, c, d, j, k).unwrap(), "n={n} {a} {b} {c} {d} {j} {k}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    checked
}

#[test]
fn orthogonality_up_to_six() {
    let total = orthogonality_grid::<CycloScalar<2>>()
        + orthogonality_grid::<CycloScalar<3>>()
        + orthogonality_grid::<CycloScalar<4>>()
        + orthogonality_grid::<CycloScalar<5>>()
        + orthogonality_grid::<CycloScalar<6>>();
    assert!(total > 0, "{total}");
    println!("{total} orthogonality cases");
}

fn oracles_agree<S: Scalar>() {
    let n = S::root_order().unwrap();
    for a in labels(n) {
        for b in labels(n) {
            for c in labels(n) {
                for d in labels(n) {
                    for j in labels(n) {
                        if !(q_admissible(a, b, j, n) && q_admissible(c, d, j, n)) {
                            continue;
                        }
                        for i in labels(n).filter(|&i| q_admissible(a, d, i, n) && q_admissible(b, c, i, n)) {
                            assert_eq!(
                                sixj::<S>(a, b, i, c, d, j).unwrap(),
                                sixj_dense::<S>(a, b, i, c, d, j).unwrap(),
                                "n={n} {{{a} {b} {i}; {c} {d} {j}}}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sixj_oracles_at_four_and_five() {
    oracles_agree::<CycloScalar<4>>();
    oracles_agree::<CycloScalar<5>>();
}

fn negligibility<S: Scalar>() {
    let n = S::root_order().unwrap();
    let top = n as usize - 1;
    for a in 0..=top {
        for b in 0..=top {
            for c in 0..=top {
                if admissible(a, b, c) {
                    assert_eq!(
                        negligible_vertex(a, b, c, n).unwrap(),
                        theta_vanishes::<S>(a, b, c).unwrap(),
                        "n={n} ({a},{b},{c})"
                    );
                }
            }
        }
    }
    assert!(S::qint(n as i64).is_zero());
}

#[test]
fn negligible_vertices_are_vanishing_thetas() {
    negligibility::<CycloScalar<3>>();
    negligibility::<CycloScalar<4>>();
    negligibility::<CycloScalar<5>>();
    negligibility::<CycloScalar<6>>();
    negligibility::<CycloScalar<7>>();
}

fn truncated<S: Scalar>() {
    let n = S::root_order().unwrap();
    for a in labels(n) {
        for b in labels(n) {
            for (k, _) in truncated_fusion::<S>(a, b).unwrap() {
                assert!(q_admissible(a, b, k, n));
            }
            assert!(truncated_identity_check::<S>(a, b).unwrap(), "n={n} ({a},{b})");
        }
    }
}

#[test]
fn truncated_identity_three_to_five() {
    truncated::<CycloScalar<3>>();
    truncated::<CycloScalar<4>>();
    truncated::<CycloScalar<5>>();
}

#[test]
fn fusion_at_three_squares_to_unit() {
    let f = truncated_fusion::<CycloScalar<3>>(1, 1).unwrap();
    assert_eq!(f.iter().map(|&(k, _)| k).collect::<Vec<_>>(), vec![0]);
}

fn pentagons<S: Scalar>() -> usize {
    let n = S::root_order().unwrap();
    let mut nontrivial = 0;
    for x0 in labels(n) {
        for x1 in labels(n) {
            for x2 in labels(n) {
                for x3 in labels(n) {
                    for x4 in labels(n) {
                        if (x0 + x1 + x2 + x3 + x4) % 2 == 1 {
                            continue;
                        }
                        assert!(pentagon_check::<S>([x0, x1, x2, x3, x4]).unwrap(), "n={n} {x0} {x1} {x2} {x3} {x4}");
                        nontrivial += 1;
                    }
                }
            }
        }
    }
    nontrivial
}

#[test]
fn pentagon_grids() {
    assert!(pentagon_check::<CycloScalar<3>>([0; 5]).unwrap());
    assert!(pentagon_check::<CycloScalar<4>>([1, 1, 1, 1, 0]).unwrap());
    assert!(pentagon_check::<CycloScalar<5>>([3, 2, 1, 2, 2]).unwrap());
    assert!(pentagons::<CycloScalar<4>>() > 0);
    assert!(pentagons::<CycloScalar<5>>() > 0);
}
