//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;

use tlj::diagram::catalan;
use tlj::fusion::{
    negligible_vertex, orthogonality_check, pentagon_check, q_admissible, sixj, sixj_dense, theta_vanishes,
    truncated_identity_check,
};
use tlj::nets::{
    admissible, bubble_check, evaluate, phi_psi, tensor_identity_check, theta_formula, theta_in, triangle_checks, Net,
};
use tlj::scalar::specialize;
use tlj::skein::{enumerate_colorings, library, load_spine, transport, HiMove};
use tlj::{basis, check_jw, jw, CycloScalar, Morphism, RatScalar, Scalar};

type Check = fn() -> tlj::Result<bool>;

fn q(n: i64) -> RatScalar {
    RatScalar::qint(n)
}

fn quantum_integers() -> tlj::Result<bool> {
    Ok((1..=20).all(|n| q(n + 1) == q(2) * q(n) - q(n - 1)))
}

fn catalan_bases() -> tlj::Result<bool> {
    Ok((0..=16usize)
        .flat_map(|m| (0..=16 - m).map(move |n| (m, n)))
        .filter(|(m, n)| (m + n) % 2 == 0)
        .all(|(m, n)| basis(m, n).len() as u64 == catalan((m + n) / 2)))
}

fn tl_relations() -> tlj::Result<bool> {
    for n in 2..=6 {
        let u: Vec<Morphism<RatScalar>> = (1..n).map(|i| Morphism::generator_u(i, n)).collect::<Result<_, _>>()?;
        for (i, ui) in u.iter().enumerate() {
            if ui.compose(ui)? != ui.scale(&q(2)) {
                return Ok(false);
            }
            for (j, uj) in u.iter().enumerate() {
                let ok = match i.abs_diff(j) {
                    0 => true,
                    1 => ui.compose(uj)?.compose(ui)? == *ui,
                    _ => ui.compose(uj)? == uj.compose(ui)?,
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn jones_wenzl() -> tlj::Result<bool> {
    let mut ok = (0..=8).all(|n| check_jw(&*jw(n)).passed());
    for n in 1..=8i64 {
        let p = jw(n as usize);
        ok &= p.trace()? == q(n + 1);
        ok &= p.partial_trace()? == jw(n as usize - 1).scale(&q(n + 1).checked_div(&q(n))?);
    }
    Ok(ok)
}

fn theta_values() -> tlj::Result<bool> {
    let mut ok = true;
    for a in 0..=6 {
        for b in 0..=6 {
            for c in (0..=6).filter(|&c| admissible(a, b, c)) {
                ok &= evaluate::<RatScalar>(&Net::theta(a, b, c)?)? == theta_formula(a, b, c)?;
            }
        }
    }
    for a in 1..=6 {
        ok &= theta_formula(a, 1, a - 1)? == q(a as i64 + 1) && theta_formula(a, 1, a + 1)? == q(a as i64 + 2);
    }
    Ok(ok)
}

fn tensor_identity() -> tlj::Result<bool> {
    let mut ok = true;
    for a in 0..=4 {
        for b in 0..=4 {
            ok &= tensor_identity_check(a, b)?;
            ok &= phi_psi::<RatScalar>(a, b)?.check()?;
        }
    }
    Ok(ok)
}

fn roundabout_and_triangles() -> tlj::Result<bool> {
    let mut ok = true;
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                for d in (0..=4).filter(|&d| admissible(a, c, d) && admissible(b, c, d)) {
                    ok &= bubble_check::<RatScalar>(a, b, c, d)?;
                }
            }
        }
    }
    let mut lower = 0;
    for a in 0..=4 {
        for b in 1..=4 {
            for k in (0..=4).filter(|&k| admissible(a, b - 1, k)) {
                let r = triangle_checks(a, b, k)?;
                ok &= r.passed();
                lower += usize::from(r.lower.is_some());
            }
        }
    }
    Ok(ok && lower > 0)
}

fn at_root<S: Scalar>() -> tlj::Result<bool> {
    let n = S::root_order().expect("root");
    let mut ok = specialize_qint::<S>(n);
    for a in 0..n as usize {
        for b in 0..n as usize {
            for c in (0..n as usize).filter(|&c| admissible(a, b, c)) {
                ok &= negligible_vertex(a, b, c, n)? == theta_vanishes::<S>(a, b, c)?;
            }
        }
    }
    if n <= 5 {
        for a in 0..=n as usize - 2 {
            for b in 0..=n as usize - 2 {
                ok &= truncated_identity_check::<S>(a, b)?;
            }
        }
    }
    Ok(ok)
}

fn specialize_qint<S: Scalar>(n: u32) -> bool {
    S::from_rat(&q(n as i64)).is_ok_and(|v| v.is_zero())
}

fn root_of_unity() -> tlj::Result<bool> {
    let direct = specialize::<3>(&q(3))?.is_zero() && specialize::<7>(&q(7))?.is_zero();
    Ok(direct
        && at_root::<CycloScalar<3>>()?
        && at_root::<CycloScalar<4>>()?
        && at_root::<CycloScalar<5>>()?
        && at_root::<CycloScalar<6>>()?
        && at_root::<CycloScalar<7>>()?)
}

fn labels(n: u32) -> std::ops::RangeInclusive<usize> {
    0..=n as usize - 2
}

fn for_quadruples(n: u32, mut f: impl FnMut(usize, usize, usize, usize) -> tlj::Result<bool>) -> tlj::Result<bool> {
    for a in labels(n) {
        for b in labels(n) {
            for c in labels(n) {
                for d in labels(n) {
                    if !f(a, b, c, d)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn two_oracles<S: Scalar>() -> tlj::Result<bool> {
    let n = S::root_order().expect("root");
    for_quadruples(n, |a, b, c, d| {
        for j in labels(n).filter(|&j| q_admissible(a, b, j, n) && q_admissible(c, d, j, n)) {
            for i in labels(n).filter(|&i| q_admissible(a, d, i, n) && q_admissible(b, c, i, n)) {
                if sixj::<S>(a, b, i, c, d, j)? != sixj_dense::<S>(a, b, i, c, d, j)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn anchor<S: Scalar>(max: usize) -> tlj::Result<bool> {
    let ok_triple = |x, y, z| match S::root_order() {
        Some(n) => q_admissible(x, y, z, n),
        None => admissible(x, y, z),
    };
    for a in 0..=max {
        for c in 0..=max {
            for i in (0..=max).filter(|&i| ok_triple(a, c, i)) {
                let expected = S::qint(i as i64 + 1).try_div(&theta_in::<S>(a, c, i)?)?;
                if sixj::<S>(a, a, i, c, c, 0)? != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn sixj_oracles() -> tlj::Result<bool> {
    Ok(two_oracles::<CycloScalar<4>>()?
        && two_oracles::<CycloScalar<5>>()?
        && anchor::<RatScalar>(3)?
        && anchor::<CycloScalar<4>>(2)?
        && anchor::<CycloScalar<5>>(3)?)
}

fn orthogonal<S: Scalar>() -> tlj::Result<bool> {
    let n = S::root_order().expect("root");
    for_quadruples(n, |a, b, c, d| {
        let js: Vec<usize> = labels(n).filter(|&j| q_admissible(a, b, j, n) && q_admissible(c, d, j, n)).collect();
        for &j in &js {
            for &k in &js {
                if !orthogonality_check::<S>(a, b, c, d, j, k)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn orthogonality() -> tlj::Result<bool> {
    Ok(orthogonal::<CycloScalar<2>>()?
        && orthogonal::<CycloScalar<3>>()?
        && orthogonal::<CycloScalar<4>>()?
        && orthogonal::<CycloScalar<5>>()?
        && orthogonal::<CycloScalar<6>>()?)
}

fn round_trips<S: Scalar>() -> tlj::Result<bool> {
    let n = S::root_order().expect("root") as usize;
    let mut ok = true;
    for (_, s) in library() {
        let bl = s.boundary_labels().clone();
        if bl.values().any(|&l| l > n - 2) {
            continue;
        }
        for e in s.internal_edges() {
            let mv = HiMove::new(e, 0);
            ok &= transport::<S>(&s, &[mv, mv.inverse()], &bl)?.1.is_identity();
        }
    }
    Ok(ok)
}

fn skein_modules() -> tlj::Result<bool> {
    let file = |name: &str| {
        let path = format!("{}/../../examples/{name}.json", env!("CARGO_MANIFEST_DIR"));
        load_spine(&std::fs::read_to_string(path).expect("shipped example"))
    };
    let dim = |name: &str, n: u32| -> tlj::Result<usize> { Ok(enumerate_colorings(&file(name)?, n, &BTreeMap::new())?.dim()) };
    let mut ok = dim("two_holed_theta", 3)? == 4 && dim("two_holed_dumbbell", 3)? == 4;
    for n in 3..=6 {
        ok &= dim("annulus", n)? == n as usize - 1;
    }
    ok &= round_trips::<CycloScalar<3>>()?
        && round_trips::<CycloScalar<4>>()?
        && round_trips::<CycloScalar<5>>()?
        && round_trips::<CycloScalar<6>>()?;
    ok &= pentagon_check::<CycloScalar<3>>([0; 5])?
        && pentagon_check::<CycloScalar<4>>([1, 1, 1, 1, 0])?
        && pentagon_check::<CycloScalar<5>>([3, 2, 1, 2, 2])?;
    Ok(ok)
}

fn negative_controls() -> tlj::Result<bool> {
    let perturbed = jw(3).add(&Morphism::generator_u(2, 3)?)?;
    Ok(!check_jw(&Morphism::<RatScalar>::identity(2)).passed()
        && !check_jw(&perturbed).passed()
        && !q_admissible(1, 1, 2, 3))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        ("quantum integer recursion, n <= 20", quantum_integers),
        ("diagram bases have Catalan size, m + n <= 16", catalan_bases),
        ("Temperley-Lieb relations, n <= 6", tl_relations),
        ("Jones-Wenzl properties, traces and partial traces, n <= 8", jones_wenzl),
        ("theta formula against compiled nets, labels <= 6", theta_values),
        ("tensor product identity and phi/psi isomorphisms, a, b <= 4", tensor_identity),
        ("bubble and triangle reductions, labels <= 4", roundabout_and_triangles),
        ("root of unity: [n] = 0, negligibility, truncated identity", root_of_unity),
        ("6j: Gram and dense oracles agree, j = 0 anchor", sixj_oracles),
        ("6j orthogonality, n <= 6", orthogonality),
        ("skein dimensions, HI round trips, pentagon", skein_modules),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok(true) => ("PASS", String::new()),
            Ok(false) => ("FAIL", String::new()),
            Err(e) => ("FAIL", format!(" ({e})")),
        };
        failed += usize::from(status == "FAIL");
        println!("criterion {:>2}: {status} {name}{detail} [{:.1?}]", k + 1, start.elapsed());
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
