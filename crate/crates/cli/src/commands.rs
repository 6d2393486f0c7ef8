use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use tlj::fusion::{sixj as sixj_value, truncated_fusion};
use tlj::linalg::Matrix;
use tlj::nets::{evaluate, fusion_coefficients, theta_formula, theta_in, Net};
use tlj::skein::{enumerate_colorings, hi_matrix, load_spine, transport, Coloring, HiMove, SkeinBasis, Spine};
use tlj::{jw_in, Morphism, Pairing, RatScalar, Scalar};

use crate::dispatch::{with_root, AtRootFn};

/// Text and JSON renderings of a command result.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Output {
    pub fn value(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// `id` and `U_i` by name, anything else as its pair list.
fn diagram_name(p: &Pairing) -> String {
    let n = p.bottom();
    if p.top() == n {
        if *p == Pairing::identity(n) {
            return "id".into();
        }
        for i in 1..n {
            let u = Morphism::<RatScalar>::generator_u(i, n).expect("in range");
            if u.terms().keys().next() == Some(p) {
                return format!("U_{i}");
            }
        }
    }
    p.to_string()
}

fn looks_negative(s: &str) -> bool {
    s.starts_with('-') || s.starts_with("(-")
}

/// `id` first, then the remaining diagrams in basis order; negative
/// coefficients become subtractions.
pub fn render_morphism<S: Scalar>(m: &Morphism<S>) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Pairing, &S)> = m.terms().iter().collect();
    terms.sort_by_key(|(p, _)| diagram_name(p) != "id");
    let mut out = String::new();
    for (k, (p, c)) in terms.into_iter().enumerate() {
        let name = diagram_name(p);
        let (text, negated) = (c.to_string(), (-c.clone()).to_string());
        let (minus, mag) = if looks_negative(&text) && !looks_negative(&negated) {
            (true, negated)
        } else {
            (false, text)
        };
        match (k, minus) {
            (0, true) => out.push('−'),
            (0, false) => {}
            (_, true) => out.push_str(" − "),
            (_, false) => out.push_str(" + "),
        }
        if mag == "1" {
            out.push_str(&name);
        } else if mag.contains(' ') || mag.contains('/') {
            out.push_str(&format!("({mag}) * {name}"));
        } else {
            out.push_str(&format!("{mag} * {name}"));
        }
    }
    out
}

pub fn jw(root: Option<u32>, n: usize) -> anyhow::Result<Output> {
    struct F(usize);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            let p = jw_in::<S>(self.0)?;
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .map(|(d, c)| json!({"diagram": d.to_string(), "coefficient": c.to_string()}))
                .collect();
            Ok(Output::value(format!("{}\n", render_morphism(&p)), json!({"n": self.0, "terms": terms})))
        }
    }
    with_root(root, F(n))
}

fn scalar_output<S: Scalar>(v: &S) -> Output {
    Output::value(format!("{v}\n"), json!({"value": v.to_string()}))
}

pub fn theta(root: Option<u32>, a: usize, b: usize, c: usize) -> anyhow::Result<Output> {
    struct F(usize, usize, usize);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            Ok(scalar_output(&theta_in::<S>(self.0, self.1, self.2)?))
        }
    }
    if root.is_none() {
        return Ok(scalar_output(&theta_formula(a, b, c)?));
    }
    with_root(root, F(a, b, c))
}

pub fn net_eval(root: Option<u32>, file: &Path) -> anyhow::Result<Output> {
    struct F(Net);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            Ok(scalar_output(&evaluate::<S>(&self.0)?))
        }
    }
    let net = Net::from_json(&read(file)?)?;
    if !net.is_closed() {
        bail!("{} is not a closed net", file.display());
    }
    with_root(root, F(net))
}

fn channel_output<S: Scalar>(channels: &[(usize, S)]) -> Output {
    let text = channels.iter().map(|(k, c)| format!("{k}: {c}\n")).collect();
    let json = channels.iter().map(|(k, c)| json!({"k": k, "coefficient": c.to_string()})).collect();
    Output::value(text, Value::Array(json))
}

pub fn fuse(root: Option<u32>, a: usize, b: usize) -> anyhow::Result<Output> {
    struct F(usize, usize);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            Ok(channel_output(&truncated_fusion::<S>(self.0, self.1)?))
        }
    }
    if root.is_none() {
        return Ok(channel_output(&fusion_coefficients(a, b)));
    }
    with_root(root, F(a, b))
}

pub fn sixj(root: Option<u32>, labels: [usize; 6]) -> anyhow::Result<Output> {
    struct F([usize; 6]);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            let [a, b, i, c, d, j] = self.0;
            Ok(scalar_output(&sixj_value::<S>(a, b, i, c, d, j)?))
        }
    }
    with_root(root, F(labels))
}

fn coloring_text(c: &Coloring) -> String {
    let mut s = c.edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    if !c.loops.is_empty() {
        s.push_str(" | ");
        s.push_str(&c.loops.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    s
}

fn basis_json(b: &SkeinBasis) -> Value {
    json!({
        "root": b.root(),
        "boundary_labels": b.boundary_labels(),
        "colorings": b.colorings().iter().map(|c| json!({"edges": c.edges, "loops": c.loops})).collect::<Vec<_>>(),
    })
}

fn matrix_json<S: Scalar>(m: &Matrix<S>) -> Value {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Value::String(m[(i, j)].to_string())).collect::<Value>())
        .collect()
}

pub fn skein_dim(root: u32, file: &Path, sum_boundary: bool) -> anyhow::Result<Output> {
    let spine = load_spine(&read(file)?)?;
    let dim = if sum_boundary {
        let edges = spine.graph().boundary_edges();
        let top = root as usize - 1;
        let mut total = 0;
        for idx in 0..top.pow(edges.len() as u32) {
            let mut rest = idx;
            let labels: BTreeMap<usize, usize> = edges
                .iter()
                .map(|&e| {
                    let l = rest % top;
                    rest /= top;
                    (e, l)
                })
                .collect();
            total += enumerate_colorings(&spine, root, &labels)?.dim();
        }
        total
    } else {
        enumerate_colorings(&spine, root, spine.boundary_labels())?.dim()
    };
    Ok(Output::value(format!("{dim}\n"), json!({"dim": dim})))
}

pub fn skein_basis(root: u32, file: &Path) -> anyhow::Result<Output> {
    let spine = load_spine(&read(file)?)?;
    let basis = enumerate_colorings(&spine, root, spine.boundary_labels())?;
    let text = basis.colorings().iter().map(|c| coloring_text(c) + "\n").collect();
    Ok(Output::value(text, basis_json(&basis)))
}

pub fn skein_hi(root: u32, file: &Path, edge: usize, orient: u8) -> anyhow::Result<Output> {
    struct F(Spine, HiMove);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            let m = hi_matrix::<S>(&self.0, self.1, self.0.boundary_labels())?;
            let json = json!({
                "source": basis_json(&m.source),
                "target": basis_json(&m.target),
                "matrix": matrix_json(&m.entries),
            });
            Ok(Output::value(m.entries.to_string(), json))
        }
    }
    let spine = load_spine(&read(file)?)?;
    with_root(Some(root), F(spine, HiMove::new(edge, orient)))
}

pub fn skein_transport(root: u32, file: &Path, moves: &Path) -> anyhow::Result<Output> {
    struct F(Spine, Vec<HiMove>);
    impl AtRootFn for F {
        type Out = anyhow::Result<Output>;
        fn call<S: Scalar>(self) -> Self::Out {
            let (end, m) = transport::<S>(&self.0, &self.1, self.0.boundary_labels())?;
            let json = json!({
                "spine": serde_json::from_str::<Value>(&end.to_document().to_json())?,
                "matrix": matrix_json(&m),
            });
            Ok(Output::value(m.to_string(), json))
        }
    }
    let spine = load_spine(&read(file)?)?;
    let moves: Vec<HiMove> =
        serde_json::from_str(&read(moves)?).with_context(|| format!("parsing {}", moves.display()))?;
    with_root(Some(root), F(spine, moves))
}
