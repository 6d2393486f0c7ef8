use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use tlj::diagram::catalan;
use tlj::fusion::{
    negligible_vertex, orthogonality_check, pentagon_check, q_admissible, sixj, sixj_dense, theta_vanishes,
    truncated_identity_check,
};
use tlj::jones_wenzl::check_jw;
use tlj::nets::{
    admissible, bubble_check, evaluate, phi_psi, tensor_identity_check, theta_formula, triangle_checks, Net,
};
use tlj::skein::{apply_hi, enumerate_colorings, library, transport, HiMove};
use tlj::{basis, jw, Morphism, RatScalar, Scalar};

use crate::commands::Output;
use crate::dispatch::{with_root, AtRootFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Qint,
    Basis,
    Tl,
    Jw,
    Theta,
    Tensor,
    Roundabout,
    Root,
    Sixj,
    Orthogonality,
    Skein,
    Pentagon,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
    /// Largest projector size for the jw suite.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Largest label for the net suites (default 6 for theta, 4 otherwise).
    #[arg(long)]
    max_label: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Entry {
    name: String,
    grid: String,
    passed: bool,
    elapsed_ms: u128,
    detail: Option<String>,
}

struct Report(Vec<Entry>);

impl Report {
    fn run(&mut self, name: &str, grid: String, check: impl FnOnce() -> anyhow::Result<bool>) {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(p) => (p, None),
            Err(e) => (false, Some(format!("{e:#}"))),
        };
        self.0.push(Entry { name: name.into(), grid, passed, elapsed_ms: start.elapsed().as_millis(), detail });
    }
}

fn all<I: IntoIterator<Item = anyhow::Result<bool>>>(it: I) -> anyhow::Result<bool> {
    for r in it {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy)]
enum RootCheck {
    Negligible,
    Truncated,
    Oracles,
    Orthogonality,
    Skein,
    Pentagon,
}

impl AtRootFn for RootCheck {
    type Out = anyhow::Result<bool>;
    fn call<S: Scalar>(self) -> Self::Out {
        match self {
            RootCheck::Negligible => negligibility::<S>(),
            RootCheck::Truncated => truncated::<S>(),
            RootCheck::Oracles => oracles::<S>(),
            RootCheck::Orthogonality => orthogonality::<S>(),
            RootCheck::Skein => skein::<S>(),
            RootCheck::Pentagon => pentagons::<S>(),
        }
    }
}

fn n_of<S: Scalar>() -> u32 {
    S::root_order().expect("root-of-unity check")
}

fn simple(n: u32) -> std::ops::RangeInclusive<usize> {
    0..=n as usize - 2
}

fn negligibility<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    let top = n as usize - 1;
    let mut ok = S::qint(n as i64).is_zero();
    for a in 0..=top {
        for b in 0..=top {
            for c in (0..=top).filter(|&c| admissible(a, b, c)) {
                ok &= negligible_vertex(a, b, c, n)? == theta_vanishes::<S>(a, b, c)?;
            }
        }
    }
    Ok(ok)
}

fn truncated<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    all(simple(n).flat_map(|a| simple(n).map(move |b| Ok(truncated_identity_check::<S>(a, b)?))))
}

fn quadruples(n: u32) -> impl Iterator<Item = [usize; 4]> {
    let r = simple(n);
    let r2 = r.clone();
    r.flat_map(move |a| {
        let r3 = r2.clone();
        r2.clone().flat_map(move |b| {
            let r4 = r3.clone();
            r3.clone().flat_map(move |c| r4.clone().map(move |d| [a, b, c, d]))
        })
    })
}

fn oracles<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    for [a, b, c, d] in quadruples(n) {
        for j in simple(n).filter(|&j| q_admissible(a, b, j, n) && q_admissible(c, d, j, n)) {
            for i in simple(n).filter(|&i| q_admissible(a, d, i, n) && q_admissible(b, c, i, n)) {
                if sixj::<S>(a, b, i, c, d, j)? != sixj_dense::<S>(a, b, i, c, d, j)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn orthogonality<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    for [a, b, c, d] in quadruples(n) {
        let js: Vec<usize> = simple(n).filter(|&j| q_admissible(a, b, j, n) && q_admissible(c, d, j, n)).collect();
        for &j in &js {
            for &k in &js {
                if !orthogonality_check::<S>(a, b, c, d, j, k)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn skein<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    let mut ok = true;
    let spines: BTreeMap<&str, _> = library().into_iter().collect();
    let dim = |name: &str| enumerate_colorings(&spines[name], n, &BTreeMap::new()).map(|b| b.dim());
    if n == 3 {
        ok &= dim("two_holed_theta")? == 4 && dim("two_holed_dumbbell")? == 4;
    }
    ok &= dim("annulus")? == n as usize - 1;
    for (_, s) in spines {
        let bl = s.boundary_labels().clone();
        if bl.values().any(|&l| l > n as usize - 2) {
            continue;
        }
        for e in s.internal_edges() {
            let mv = HiMove::new(e, 0);
            let t = apply_hi(&s, mv)?;
            ok &= enumerate_colorings(&s, n, &bl)?.dim() == enumerate_colorings(&t, n, &bl)?.dim();
            ok &= transport::<S>(&s, &[mv, mv.inverse()], &bl)?.1.is_identity();
        }
    }
    Ok(ok)
}

fn pentagons<S: Scalar>() -> anyhow::Result<bool> {
    let n = n_of::<S>();
    for [x0, x1, x2, x3] in quadruples(n) {
        for x4 in simple(n).filter(|x| (x0 + x1 + x2 + x3 + x) % 2 == 0) {
            if !pentagon_check::<S>([x0, x1, x2, x3, x4])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One entry per root: the given one, or every root in `default`.
fn per_root(report: &mut Report, root: Option<u32>, name: &str, check: RootCheck, default: std::ops::RangeInclusive<u32>) {
    let roots: Vec<u32> = match root {
        Some(r) => vec![r],
        None => default.collect(),
    };
    for n in roots {
        report.run(name, format!("n = {n}"), || with_root(Some(n), check));
    }
}

pub fn run(root: Option<u32>, args: &VerifyArgs) -> anyhow::Result<Output> {
    let mut report = Report(Vec::new());
    let want = |s: Suite| args.suite == Suite::All || args.suite == s;
    let label = |default: usize| args.max_label.unwrap_or(default);

    if want(Suite::Qint) {
        report.run("qint_recursion", "1 ≤ n ≤ 20".into(), || {
            let q = RatScalar::qint;
            Ok((1..=20).all(|n| q(n + 1) == q(2) * q(n) - q(n - 1)))
        });
    }
    if want(Suite::Basis) {
        report.run("basis_catalan", "m + n ≤ 16".into(), || {
            Ok((0..=16).all(|m| (0..=16 - m).filter(|n| (m + n) % 2 == 0).all(|n| {
                basis(m, n).len() as u64 == catalan((m + n) / 2)
            })))
        });
    }
    if want(Suite::Tl) {
        report.run("tl_presentation", "n ≤ 6".into(), || {
            let d = RatScalar::qint(2);
            let u = |i, n| Morphism::<RatScalar>::generator_u(i, n);
            for n in 2..=6 {
                for i in 1..n {
                    let ui = u(i, n)?;
                    if ui.compose(&ui)? != ui.scale(&d) {
                        return Ok(false);
                    }
                    for j in 1..n {
                        let uj = u(j, n)?;
                        let ok = match i.abs_diff(j) {
                            1 => ui.compose(&uj)?.compose(&ui)? == ui,
                            0 => true,
                            _ => ui.compose(&uj)? == uj.compose(&ui)?,
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        });
    }
    if want(Suite::Jw) {
        let max_n = args.max_n;
        report.run("jw_defining_properties", format!("n ≤ {max_n}"), || {
            Ok((0..=max_n).all(|n| check_jw(&*jw(n)).passed()))
        });
        report.run("jw_traces", format!("1 ≤ n ≤ {max_n}"), || {
            for n in 1..=max_n {
                let (p, q) = (jw(n), jw(n - 1));
                let ratio = RatScalar::qint(n as i64 + 1).checked_div(&RatScalar::qint(n as i64)).expect("[n] ≠ 0");
                if p.trace()? != RatScalar::qint(n as i64 + 1) || p.partial_trace()? != q.scale(&ratio) {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        report.run("jw_negative_controls", "identity(2), perturbed jw(2)".into(), || {
            let perturbed = jw(2).add(&Morphism::generator_u(1, 2)?)?;
            Ok(!check_jw(&Morphism::<RatScalar>::identity(2)).passed() && !check_jw(&perturbed).passed())
        });
    }
    if want(Suite::Theta) {
        let m = label(6);
        report.run("theta_formula", format!("labels ≤ {m}"), || {
            let mut ok = true;
            for a in 0..=m {
                for b in 0..=m {
                    for c in (0..=m).filter(|&c| admissible(a, b, c)) {
                        ok &= evaluate::<RatScalar>(&Net::theta(a, b, c)?)? == theta_formula(a, b, c)?;
                    }
                }
            }
            for a in 1..=m {
                ok &= theta_formula(a, 1, a - 1)? == RatScalar::qint(a as i64 + 1);
                ok &= theta_formula(a, 1, a + 1)? == RatScalar::qint(a as i64 + 2);
            }
            Ok(ok)
        });
    }
    if want(Suite::Tensor) {
        let m = label(4);
        report.run("tensor_identity", format!("a, b ≤ {m}"), || {
            all((0..=m).flat_map(|a| (0..=m).map(move |b| Ok(tensor_identity_check(a, b)?))))
        });
        let m = m.min(3);
        report.run("phi_psi", format!("a, b ≤ {m}"), || {
            all((0..=m).flat_map(|a| (0..=m).map(move |b| Ok(phi_psi::<RatScalar>(a, b)?.check()?))))
        });
    }
    if want(Suite::Roundabout) {
        let m = label(4);
        report.run("roundabout", format!("labels ≤ {m}"), || {
            let mut ok = true;
            for a in 0..=m {
                for b in 0..=m {
                    for c in 0..=m {
                        for d in (0..=m).filter(|&d| admissible(a, c, d) && admissible(b, c, d)) {
                            ok &= bubble_check::<RatScalar>(a, b, c, d)?;
                        }
                    }
                }
            }
            Ok(ok)
        });
        report.run("triangles", format!("labels ≤ {m}"), || {
            let mut ok = true;
            for a in 0..=m {
                for b in 1..=m {
                    for k in (0..=m).filter(|&k| admissible(a, b - 1, k)) {
                        ok &= triangle_checks(a, b, k)?.passed();
                    }
                }
            }
            Ok(ok)
        });
    }
    if want(Suite::Root) {
        per_root(&mut report, root, "negligible_vertices", RootCheck::Negligible, 3..=7);
        per_root(&mut report, root, "truncated_identity", RootCheck::Truncated, 3..=5);
        if root.is_none_or(|r| r == 3) {
            report.run("q_admissible_rejects", "(1, 1, 2) at n = 3".into(), || Ok(!q_admissible(1, 1, 2, 3)));
        }
    }
    if want(Suite::Sixj) {
        per_root(&mut report, root, "sixj_two_oracles", RootCheck::Oracles, 4..=5);
    }
    if want(Suite::Orthogonality) {
        per_root(&mut report, root, "orthogonality", RootCheck::Orthogonality, 2..=6);
    }
    if want(Suite::Skein) {
        per_root(&mut report, root, "skein", RootCheck::Skein, 3..=6);
    }
    if want(Suite::Pentagon) {
        per_root(&mut report, root, "pentagon", RootCheck::Pentagon, 3..=5);
    }

    let entries = report.0;
    let passed = entries.iter().all(|e| e.passed);
    let mut text = String::new();
    for e in &entries {
        let status = if e.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} {} [{}] {} ms", e.name, e.grid, e.elapsed_ms));
        if let Some(d) = &e.detail {
            text.push_str(&format!(": {d}"));
        }
        text.push('\n');
    }
    let failed = entries.iter().filter(|e| !e.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", entries.len()));
    let json = serde_json::json!({"passed": passed, "checks": entries});
    Ok(Output { text, json, passed })
}
