//! Trivalent nets: edge-labelled ribbon graphs whose edges carry
//! Jones-Wenzl projectors and whose trivalent vertices are the canonical
//! morphisms `p_c ∘ f ∘ (p_a ⊗ p_b)`.
//!
//! A vertex with inputs `a` (bottom left), `b` (bottom right) and output
//! `c` (top) lists its edges counterclockwise as `c, a, b`.

use std::collections::{HashMap, VecDeque};

use crate::diagram::{basis, Morphism, Pairing};
use crate::error::{Error, Result};
use crate::graph::{GraphDocument, HalfEdge, RibbonGraph, Side, Vertex};
use crate::jones_wenzl::jw_in;
use crate::linalg::Matrix;
use crate::scalar::{RatScalar, Scalar};

/// Even sum and all three triangle inequalities.
pub fn admissible(a: usize, b: usize, c: usize) -> bool {
    (a + b + c).is_multiple_of(2) && a + b >= c && b + c >= a && a + c >= b
}

pub fn require_admissible(a: usize, b: usize, c: usize) -> Result<()> {
    if admissible(a, b, c) {
        Ok(())
    } else {
        Err(Error::NotAdmissible(a, b, c))
    }
}

/// An edge-labelled planar trivalent graph plus vertex-free loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    graph: RibbonGraph,
    labels: Vec<usize>,
    loop_labels: Vec<usize>,
}

impl Net {
    pub fn new(graph: RibbonGraph, labels: Vec<usize>, loop_labels: Vec<usize>) -> Result<Self> {
        if labels.len() != graph.edge_count() {
            return Err(Error::Malformed(format!(
                "{} labels for {} edges",
                labels.len(),
                graph.edge_count()
            )));
        }
        for v in graph.internal_vertices() {
            let l: Vec<usize> = graph.darts(v).iter().map(|h| labels[h.edge]).collect();
            require_admissible(l[0], l[1], l[2])?;
        }
        Ok(Net { graph, labels, loop_labels })
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let graph = RibbonGraph::new(doc.vertices.clone(), doc.edges.clone())?;
        let labels = doc
            .labels
            .clone()
            .ok_or_else(|| Error::Malformed("net needs edge labels".into()))?;
        let loop_labels = doc.loop_labels.clone().unwrap_or_default();
        if loop_labels.len() != doc.free_loops {
            return Err(Error::Malformed(format!(
                "{} loop labels for {} free loops",
                loop_labels.len(),
                doc.free_loops
            )));
        }
        Net::new(graph, labels, loop_labels)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Net::from_document(&GraphDocument::from_json(text)?)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.graph.vertices().to_vec(),
            edges: self.graph.edges().to_vec(),
            labels: Some(self.labels.clone()),
            free_loops: self.loop_labels.len(),
            loop_labels: (!self.loop_labels.is_empty()).then(|| self.loop_labels.clone()),
            ..GraphDocument::default()
        }
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn loop_labels(&self) -> &[usize] {
        &self.loop_labels
    }

    /// Strand counts on the bottom and top sides.
    pub fn shape(&self) -> (usize, usize) {
        let count = |side| {
            self.graph
                .boundary(side)
                .iter()
                .map(|&v| self.labels[self.graph.vertices()[v].rotation()[0]])
                .sum()
        };
        (count(Side::Bottom), count(Side::Top))
    }

    pub fn is_closed(&self) -> bool {
        self.graph.boundary(Side::Bottom).is_empty() && self.graph.boundary(Side::Top).is_empty()
    }

    pub fn empty() -> Net {
        Net {
            graph: RibbonGraph::new(Vec::new(), Vec::new()).expect("empty graph"),
            labels: Vec::new(),
            loop_labels: Vec::new(),
        }
    }

    /// A single closed loop labelled `a`.
    pub fn circle(a: usize) -> Net {
        Net { loop_labels: vec![a], ..Net::empty() }
    }

    /// Two vertices joined by edges labelled `a`, `b`, `c`.
    pub fn theta(a: usize, b: usize, c: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![Vertex::internal([0, 2, 1]), Vertex::internal([0, 1, 2])],
            vec![[0, 1]; 3],
        )?;
        Net::new(g, vec![a, b, c], Vec::new())
    }

    /// The open net of one vertex `a ⊗ b → c`.
    pub fn vertex(a: usize, b: usize, c: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Bottom, 0, 0),
                Vertex::boundary(Side::Bottom, 1, 1),
                Vertex::boundary(Side::Top, 0, 2),
                Vertex::internal([2, 0, 1]),
            ],
            vec![[0, 3], [1, 3], [3, 2]],
        )?;
        Net::new(g, vec![a, b, c], Vec::new())
    }

    /// The open net of one vertex `c → a ⊗ b`.
    pub fn covertex(a: usize, b: usize, c: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Top, 0, 0),
                Vertex::boundary(Side::Top, 1, 1),
                Vertex::boundary(Side::Bottom, 0, 2),
                Vertex::internal([2, 1, 0]),
            ],
            vec![[3, 0], [3, 1], [2, 3]],
        )?;
        Net::new(g, vec![a, b, c], Vec::new())
    }

    /// `a` splits into `c ⊗ d`, which merges into `b`.
    pub fn bubble(a: usize, b: usize, c: usize, d: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Bottom, 0, 0),
                Vertex::boundary(Side::Top, 0, 3),
                Vertex::internal([0, 2, 1]),
                Vertex::internal([3, 1, 2]),
            ],
            vec![[0, 2], [2, 3], [2, 3], [3, 1]],
        )?;
        Net::new(g, vec![a, c, d, b], Vec::new())
    }

    /// `outer` splits into `k ⊗ 1`; `k` splits into `a ⊗ (b−1)`; then
    /// `(b−1) ⊗ 1` merges into `b`.
    pub fn triangle(a: usize, b: usize, k: usize, outer: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Bottom, 0, 0),
                Vertex::boundary(Side::Top, 0, 1),
                Vertex::boundary(Side::Top, 1, 2),
                Vertex::internal([0, 4, 3]),
                Vertex::internal([3, 5, 1]),
                Vertex::internal([4, 2, 5]),
            ],
            vec![[0, 3], [4, 1], [5, 2], [3, 4], [3, 5], [4, 5]],
        )?;
        let b1 = b.checked_sub(1).ok_or(Error::NotAdmissible(b, 1, 0))?;
        Net::new(g, vec![outer, a, b, k, 1, b1], Vec::new())
    }
}

impl Net {
    /// Legs `a` (bottom left), `b` (top left), `c` (top right), `d`
    /// (bottom right) on a horizontal edge `j`: a morphism `a ⊗ d → b ⊗ c`.
    pub fn h(a: usize, b: usize, c: usize, d: usize, j: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Bottom, 0, 0),
                Vertex::boundary(Side::Top, 0, 1),
                Vertex::boundary(Side::Top, 1, 2),
                Vertex::boundary(Side::Bottom, 1, 3),
                Vertex::internal([0, 4, 1]),
                Vertex::internal([3, 2, 4]),
            ],
            vec![[0, 4], [4, 1], [5, 2], [3, 5], [4, 5]],
        )?;
        Net::new(g, vec![a, b, c, d, j], Vec::new())
    }

    /// The same legs as [`Net::h`] on a vertical edge `i`.
    pub fn i(a: usize, b: usize, c: usize, d: usize, i: usize) -> Result<Net> {
        let g = RibbonGraph::new(
            vec![
                Vertex::boundary(Side::Bottom, 0, 0),
                Vertex::boundary(Side::Top, 0, 1),
                Vertex::boundary(Side::Top, 1, 2),
                Vertex::boundary(Side::Bottom, 1, 3),
                Vertex::internal([4, 0, 3]),
                Vertex::internal([4, 2, 1]),
            ],
            vec![[0, 4], [5, 1], [5, 2], [3, 4], [4, 5]],
        )?;
        Net::new(g, vec![a, b, c, d, i], Vec::new())
    }

    /// Reflection in the horizontal midline.
    pub fn mirror(&self) -> Net {
        let vertices = self
            .graph
            .vertices()
            .iter()
            .map(|v| match v {
                Vertex::Internal { edge_cyclic_order } => {
                    Vertex::internal(edge_cyclic_order.iter().rev().copied().collect::<Vec<_>>())
                }
                Vertex::Boundary { side, position, edge_cyclic_order } => Vertex::Boundary {
                    side: match side {
                        Side::Bottom => Side::Top,
                        Side::Top => Side::Bottom,
                    },
                    position: *position,
                    edge_cyclic_order: edge_cyclic_order.clone(),
                },
            })
            .collect();
        let graph = RibbonGraph::new(vertices, self.graph.edges().to_vec()).expect("mirror of a valid graph");
        Net { graph, labels: self.labels.clone(), loop_labels: self.loop_labels.clone() }
    }

    /// `upper ∘ lower`: the top boundary of `lower` glued to the bottom
    /// boundary of `upper`, left to right.
    pub fn stack(lower: &Net, upper: &Net) -> Result<Net> {
        let shift_v = lower.graph.vertex_count();
        let shift_e = lower.graph.edge_count();
        let mut vertices = lower.graph.vertices().to_vec();
        vertices.extend(upper.graph.vertices().iter().map(|v| match v {
            Vertex::Internal { edge_cyclic_order } => {
                Vertex::internal(edge_cyclic_order.iter().map(|e| e + shift_e).collect::<Vec<_>>())
            }
            Vertex::Boundary { side, position, edge_cyclic_order } => Vertex::Boundary {
                side: *side,
                position: *position,
                edge_cyclic_order: edge_cyclic_order.iter().map(|e| e + shift_e).collect(),
            },
        }));
        let mut edges = lower.graph.edges().to_vec();
        edges.extend(upper.graph.edges().iter().map(|[u, v]| [u + shift_v, v + shift_v]));
        let mut labels = lower.labels.clone();
        labels.extend(&upper.labels);
        let mut loops = lower.loop_labels.clone();
        loops.extend(&upper.loop_labels);
        let tops = lower.graph.boundary(Side::Top);
        let bottoms: Vec<usize> = upper.graph.boundary(Side::Bottom).iter().map(|v| v + shift_v).collect();
        if tops.len() != bottoms.len() {
            return Err(Error::Malformed("boundary counts differ".into()));
        }
        glue(vertices, edges, labels, loops, tops.into_iter().zip(bottoms).collect())
    }

    /// The trace closure: each top boundary vertex joined to the bottom
    /// boundary vertex in the same position.
    pub fn closure(&self) -> Result<Net> {
        let tops = self.graph.boundary(Side::Top);
        let bottoms = self.graph.boundary(Side::Bottom);
        if tops.len() != bottoms.len() {
            return Err(Error::Malformed("boundary counts differ".into()));
        }
        glue(
            self.graph.vertices().to_vec(),
            self.graph.edges().to_vec(),
            self.labels.clone(),
            self.loop_labels.clone(),
            tops.into_iter().zip(bottoms).collect(),
        )
    }
}

/// Removes the paired boundary vertices and fuses their edges; chains that
/// close up become free loops.
fn glue(
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
    labels: Vec<usize>,
    mut loops: Vec<usize>,
    pairs: Vec<(usize, usize)>,
) -> Result<Net> {
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut removed = vec![false; vertices.len()];
    for &(x, y) in &pairs {
        let (ex, ey) = (vertices[x].rotation()[0], vertices[y].rotation()[0]);
        if labels[ex] != labels[ey] {
            return Err(Error::Malformed(format!("glued labels {} and {} differ", labels[ex], labels[ey])));
        }
        removed[x] = true;
        removed[y] = true;
        let (rx, ry) = (find(&mut parent, ex), find(&mut parent, ey));
        parent[rx] = ry;
    }
    let mut new_index = vec![usize::MAX; vertices.len()];
    let mut kept = 0;
    for v in 0..vertices.len() {
        if !removed[v] {
            new_index[v] = kept;
            kept += 1;
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut class = vec![0; edges.len()];
    let mut class_ends: Vec<Vec<usize>> = Vec::new();
    let mut new_labels = Vec::new();
    for e in 0..edges.len() {
        let r = find(&mut parent, e);
        let id = *class_of_root.entry(r).or_insert_with(|| {
            class_ends.push(Vec::new());
            new_labels.push(labels[e]);
            class_ends.len() - 1
        });
        class[e] = id;
        for &v in &edges[e] {
            if !removed[v] {
                class_ends[id].push(new_index[v]);
            }
        }
    }
    // Drop closed chains, renumbering the survivors.
    let mut renumber = vec![usize::MAX; class_ends.len()];
    let mut new_edges = Vec::new();
    let mut final_labels = Vec::new();
    for (id, ends) in class_ends.iter().enumerate() {
        match ends.as_slice() {
            [] => loops.push(new_labels[id]),
            [u, v] => {
                renumber[id] = new_edges.len();
                new_edges.push([*u, *v]);
                final_labels.push(new_labels[id]);
            }
            _ => return Err(Error::Malformed("edge chain with more than two ends".into())),
        }
    }
    let new_vertices = vertices
        .into_iter()
        .enumerate()
        .filter(|(v, _)| !removed[*v])
        .map(|(_, vx)| {
            let map = |order: &[usize]| -> Vec<usize> { order.iter().map(|&e| renumber[class[e]]).collect() };
            match vx {
                Vertex::Internal { edge_cyclic_order } => Vertex::internal(map(&edge_cyclic_order)),
                Vertex::Boundary { side, position, edge_cyclic_order } => {
                    Vertex::Boundary { side, position, edge_cyclic_order: map(&edge_cyclic_order) }
                }
            }
        })
        .collect();
    let graph = RibbonGraph::new(new_vertices, new_edges)?;
    Net::new(graph, final_labels, loops)
}

const OPEN: u16 = u16::MAX;

/// Evaluates a net as a Temperley-Lieb morphism from its bottom strands to
/// its top strands.
///
/// Every edge contributes one projector and every vertex the arc pattern
/// joining adjacent legs; the projectors are contracted one at a time,
/// tracking the induced matching on the remaining open ends.
pub fn compile_net<S: Scalar>(net: &Net) -> Result<Morphism<S>> {
    let g = &net.graph;
    let labels = &net.labels;

    let mut base = Vec::with_capacity(labels.len());
    let mut total = 0usize;
    for &l in labels {
        base.push(total);
        total += 2 * l;
    }
    let port = |h: HalfEdge, i: usize| base[h.edge] + h.end as usize * labels[h.edge] + i;
    let (m, n) = net.shape();
    let ext = total;
    total += m + n;
    if total >= OPEN as usize {
        return Err(Error::Malformed("net too large".into()));
    }

    let mut wiring = vec![OPEN; total];
    let mut link = |x: usize, y: usize| {
        wiring[x] = y as u16;
        wiring[y] = x as u16;
    };
    for v in g.internal_vertices() {
        let d = g.darts(v);
        for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let (nx, ny, nz) = (labels[d[x].edge], labels[d[y].edge], labels[d[z].edge]);
            for t in 0..(nx + ny - nz) / 2 {
                link(port(d[x], nx - 1 - t), port(d[y], t));
            }
        }
    }
    let mut offset = 0;
    for v in g.boundary(Side::Bottom) {
        let h = g.darts(v)[0];
        let l = labels[h.edge];
        for i in 0..l {
            link(port(h, i), ext + offset + l - 1 - i);
        }
        offset += l;
    }
    offset = 0;
    for v in g.boundary(Side::Top) {
        let h = g.darts(v)[0];
        let l = labels[h.edge];
        for i in 0..l {
            link(port(h, i), ext + m + offset + i);
        }
        offset += l;
    }

    let mut states: HashMap<Vec<u16>, S> = HashMap::from([(wiring, S::one())]);
    let d = S::loop_value();
    for e in contraction_order(g) {
        let l = labels[e];
        if l == 0 {
            continue;
        }
        let p = jw_in::<S>(l)?;
        // Projector terms as matchings on the edge's 2l local ports:
        // local j < l is end 0 strand j, local l + j is end 1 strand j.
        let local = |x: usize| if x < l { l - 1 - x } else { x };
        let mut blob_coeffs: Vec<S> = p.terms().values().cloned().collect();
        S::align(&mut blob_coeffs);
        let blob: Vec<Vec<u16>> = p
            .terms()
            .keys()
            .map(|pairing| {
                let mut tau = vec![0u16; 2 * l];
                for x in 0..2 * l {
                    tau[local(x)] = local(pairing.partner(x)) as u16;
                }
                tau
            })
            .collect();
        let (keys, mut coeffs): (Vec<Vec<u16>>, Vec<S>) = states.into_iter().unzip();
        S::align(&mut coeffs);
        let mut next: HashMap<Vec<u16>, S> = HashMap::new();
        for (state, c) in keys.iter().zip(&coeffs) {
            for (tau, t) in blob.iter().zip(&blob_coeffs) {
                let (merged, loops) = contract(state, base[e], tau);
                let mut coef = c.mul_lazy(t);
                for _ in 0..loops {
                    coef = coef.mul_lazy(&d);
                }
                match next.entry(merged) {
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(coef);
                    }
                    std::collections::hash_map::Entry::Occupied(mut slot) => slot.get_mut().add_lazy(&coef),
                }
            }
        }
        next.retain(|_, c| {
            c.normalize();
            !c.is_zero()
        });
        states = next;
    }

    let mut loops_factor = S::one();
    for &a in &net.loop_labels {
        loops_factor *= S::qint(a as i64 + 1);
    }
    let mut terms = Vec::with_capacity(states.len());
    for (state, c) in states {
        let pairs: Vec<(usize, usize)> = (0..m + n)
            .filter_map(|x| {
                let y = state[ext + x] as usize - ext;
                (x < y).then_some((x, y))
            })
            .collect();
        let pairing = Pairing::new(m, n, &pairs).map_err(|e| Error::NonPlanarEmbedding(e.to_string()))?;
        terms.push((pairing, c * &loops_factor));
    }
    Ok(Morphism::from_terms(m, n, terms)?)
}

/// Glues the matching `tau` on ports `lo..lo + tau.len()` into `state`;
/// returns the new state and the number of closed loops.
fn contract(state: &[u16], lo: usize, tau: &[u16]) -> (Vec<u16>, usize) {
    let hi = lo + tau.len();
    let inside = |x: u16| (lo..hi).contains(&(x as usize));
    let mut out = state.to_vec();
    let mut seen = vec![false; tau.len()];
    for x in 0..state.len() {
        if (lo..hi).contains(&x) {
            out[x] = OPEN;
            continue;
        }
        let mut y = state[x];
        if y == OPEN || !inside(y) {
            continue;
        }
        loop {
            let yl = y as usize - lo;
            let zl = tau[yl] as usize;
            seen[yl] = true;
            seen[zl] = true;
            let w = state[lo + zl];
            if inside(w) {
                y = w;
            } else {
                out[x] = w;
                break;
            }
        }
    }
    let mut loops = 0;
    for start in 0..tau.len() {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut y = start;
        while !seen[y] {
            let z = tau[y] as usize;
            seen[y] = true;
            seen[z] = true;
            y = state[lo + z] as usize - lo;
        }
    }
    (out, loops)
}

/// Edges in breadth-first order over the vertices, which keeps the set of
/// open ends small.
fn contraction_order(g: &RibbonGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut edge_done = vec![false; g.edge_count()];
    let mut vertex_seen = vec![false; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if vertex_seen[root] {
            continue;
        }
        vertex_seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.vertices()[v].rotation() {
                if !edge_done[e] {
                    edge_done[e] = true;
                    order.push(e);
                }
                for &w in &g.edges()[e] {
                    if !vertex_seen[w] {
                        vertex_seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

/// The value of a closed net.
pub fn evaluate<S: Scalar>(net: &Net) -> Result<S> {
    if !net.is_closed() {
        return Err(Error::Malformed("net has boundary vertices".into()));
    }
    Ok(compile_net::<S>(net)?.scalar_value())
}

/// `p_c ∘ f ∘ (p_a ⊗ p_b)` where `f` has `(a+b−c)/2` nested caps between
/// the two input blocks.
pub fn vertex_morphism<S: Scalar>(a: usize, b: usize, c: usize) -> Result<Morphism<S>> {
    require_admissible(a, b, c)?;
    let k = (a + b - c) / 2;
    let mut pairs = Vec::with_capacity((a + b + c) / 2);
    for t in 0..k {
        pairs.push((a - 1 - t, a + t));
    }
    for t in 0..a - k {
        pairs.push((t, a + b + t));
    }
    for s in 0..b - k {
        pairs.push((a + k + s, a + b + a - k + s));
    }
    let f = Morphism::from_pairing(Pairing::new(a + b, c, &pairs)?);
    let inputs = jw_in::<S>(a)?.tensor(&*jw_in::<S>(b)?);
    Ok(jw_in::<S>(c)?.compose(&f.compose(&inputs)?)?)
}

/// The reflected vertex `c → a ⊗ b`.
pub fn covertex_morphism<S: Scalar>(a: usize, b: usize, c: usize) -> Result<Morphism<S>> {
    Ok(vertex_morphism::<S>(a, b, c)?.bar())
}

/// `Net(m, n, l) = [m]![n]![l]![m+n+l+1]! / ([m+n]![n+l]![m+l]!)`.
pub fn theta_net_value(m: usize, n: usize, l: usize) -> RatScalar {
    let f = |k: usize| RatScalar::qfact(k as i64).expect("nonnegative");
    let num = f(m) * f(n) * f(l) * f(m + n + l + 1);
    let den = f(m + n) * f(n + l) * f(m + l);
    num.checked_div(&den).expect("quantum factorials are nonzero for generic q")
}

/// The theta net value from its closed formula.
pub fn theta_formula(a: usize, b: usize, c: usize) -> Result<RatScalar> {
    require_admissible(a, b, c)?;
    Ok(theta_net_value((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2))
}

pub fn theta_in<S: Scalar>(a: usize, b: usize, c: usize) -> Result<S> {
    Ok(S::from_rat(&theta_formula(a, b, c)?)?)
}

/// `λ(a, b, k) = [k+1] / θ(a, b, k)` for `k = |a−b|, |a−b|+2, ..., a+b`.
pub fn fusion_coefficients(a: usize, b: usize) -> Vec<(usize, RatScalar)> {
    (a.abs_diff(b)..=a + b)
        .step_by(2)
        .map(|k| {
            let theta = theta_formula(a, b, k).expect("admissible by construction");
            let lambda = RatScalar::qint(k as i64 + 1).checked_div(&theta).expect("theta is nonzero");
            (k, lambda)
        })
        .collect()
}

/// `Σ_k λ_k · covertex_k ∘ vertex_k` over the given channels.
pub fn fusion_sum<S: Scalar>(a: usize, b: usize, channels: &[(usize, S)]) -> Result<Morphism<S>> {
    let mut sum = Morphism::zero(a + b, a + b);
    for (k, lambda) in channels {
        let term = covertex_morphism::<S>(a, b, *k)?.compose(&vertex_morphism::<S>(a, b, *k)?)?;
        sum = sum.add(&term.scale(lambda))?;
    }
    Ok(sum)
}

/// `Σ_k λ_k · covertex_k ∘ vertex_k = p_a ⊗ p_b`.
pub fn tensor_identity_check(a: usize, b: usize) -> Result<bool> {
    let lhs = fusion_sum(a, b, &fusion_coefficients(a, b))?;
    Ok(lhs == jw_in::<RatScalar>(a)?.tensor(&*jw_in(b)?))
}

/// The isomorphisms between `p_a ⊗ p_b` and `⊕_k p_k`: `phi[i]` is the
/// vertex onto channel `labels[i]` and `psi[i]` the scaled covertex back.
#[derive(Clone)]
pub struct PhiPsi<S> {
    pub a: usize,
    pub b: usize,
    pub labels: Vec<usize>,
    pub phi: Vec<Morphism<S>>,
    pub psi: Vec<Morphism<S>>,
}

impl<S: Scalar> PhiPsi<S> {
    /// Entry `(i, j)` is `phi[i] ∘ psi[j]`.
    pub fn phi_psi(&self) -> Result<Vec<Vec<Morphism<S>>>> {
        self.phi
            .iter()
            .map(|f| self.psi.iter().map(|g| Ok(f.compose(g)?)).collect())
            .collect()
    }

    /// `Σ_i psi[i] ∘ phi[i]`.
    pub fn psi_phi(&self) -> Result<Morphism<S>> {
        let mut sum = Morphism::zero(self.a + self.b, self.a + self.b);
        for (g, f) in self.psi.iter().zip(&self.phi) {
            sum = sum.add(&g.compose(f)?)?;
        }
        Ok(sum)
    }

    /// `phi ∘ psi` is diagonal with entries `p_k` and `psi ∘ phi = p_a ⊗ p_b`.
    pub fn check(&self) -> Result<bool> {
        let grid = self.phi_psi()?;
        for (i, row) in grid.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let ok = if i == j { *entry == *jw_in::<S>(self.labels[i])? } else { entry.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(self.psi_phi()? == jw_in::<S>(self.a)?.tensor(&*jw_in::<S>(self.b)?))
    }
}

pub fn phi_psi<S: Scalar>(a: usize, b: usize) -> Result<PhiPsi<S>> {
    let mut out = PhiPsi { a, b, labels: Vec::new(), phi: Vec::new(), psi: Vec::new() };
    for (k, lambda) in fusion_coefficients(a, b) {
        out.labels.push(k);
        out.phi.push(vertex_morphism::<S>(a, b, k)?);
        out.psi.push(covertex_morphism::<S>(a, b, k)?.scale(&S::from_rat(&lambda)?));
    }
    Ok(out)
}

/// The scalar `s` with `vertex(c,d,b) ∘ covertex(c,d,a) = s · p_a`, and
/// whether `a = b`; for `a ≠ b` the composite vanishes.
pub fn bubble<S: Scalar>(a: usize, b: usize, c: usize, d: usize) -> Result<(S, bool)> {
    require_admissible(a, c, d)?;
    require_admissible(b, c, d)?;
    if a != b {
        return Ok((S::zero(), false));
    }
    let s = theta_in::<S>(a, c, d)?.try_div(&S::qint(a as i64 + 1))?;
    Ok((s, true))
}

/// Compares the compiled bubble net with [`bubble`].
pub fn bubble_check<S: Scalar>(a: usize, b: usize, c: usize, d: usize) -> Result<bool> {
    let (s, same) = bubble::<S>(a, b, c, d)?;
    let compiled = compile_net::<S>(&Net::bubble(a, b, c, d)?)?;
    let composed = vertex_morphism::<S>(c, d, b)?.compose(&covertex_morphism::<S>(c, d, a)?)?;
    let expected = if same { jw_in::<S>(a)?.scale(&s) } else { Morphism::zero(a, b) };
    Ok(compiled == expected && composed == expected)
}

/// Outcome of the two triangle-shrinking identities for `(a, b, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    /// Triangle onto `k + 1` equals the vertex `(a, b, k+1)`.
    pub upper: bool,
    /// Coefficient `(−1)^n [k−n]/[k]` and whether the identity onto `k − 1`
    /// holds with it; `None` when that case does not apply.
    pub lower: Option<(RatScalar, bool)>,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.upper && self.lower.as_ref().is_none_or(|(_, ok)| *ok)
    }
}

fn triangle_side(a: usize, b: usize, k: usize, outer: usize) -> Result<(Morphism<RatScalar>, bool)> {
    let compiled = compile_net::<RatScalar>(&Net::triangle(a, b, k, outer)?)?;
    let composed = Morphism::identity(a)
        .tensor(&vertex_morphism(b - 1, 1, b)?)
        .compose(&covertex_morphism(a, b - 1, k)?.tensor(&Morphism::identity(1)))?
        .compose(&covertex_morphism(k, 1, outer)?)?;
    let agree = composed == compiled;
    Ok((compiled, agree))
}

/// Checks both triangle-shrinking identities for the triangle with outer
/// legs `a`, `b` and inner edges `k`, `1`, `b − 1`.
pub fn triangle_checks(a: usize, b: usize, k: usize) -> Result<TriangleReport> {
    if b == 0 {
        return Err(Error::NotAdmissible(b, 1, 0));
    }
    require_admissible(a, b - 1, k)?;
    require_admissible(b - 1, 1, b)?;

    let (lhs, agree) = triangle_side(a, b, k, k + 1)?;
    let upper = agree && lhs == covertex_morphism(a, b, k + 1)?;

    let lower = if k >= 1 && a + k > b - 1 {
        let n = (k + b - 1 - a) / 2;
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let coeff = (RatScalar::from_integer(sign) * RatScalar::qint((k - n) as i64))
            .checked_div(&RatScalar::qint(k as i64))?;
        let (lhs, agree) = triangle_side(a, b, k, k - 1)?;
        let ok = agree && lhs == covertex_morphism(a, b, k - 1)?.scale(&coeff);
        Some((coeff, ok))
    } else {
        None
    };
    Ok(TriangleReport { upper, lower })
}

/// Rank of the span of `p_c ∘ f ∘ (p_a ⊗ p_b)` over all diagrams `f`.
pub fn hom_dimension(a: usize, b: usize, c: usize) -> Result<usize> {
    let candidates = basis(a + b, c);
    if candidates.is_empty() {
        return Ok(0);
    }
    let inputs = jw_in::<RatScalar>(a)?.tensor(&*jw_in(b)?);
    let output = jw_in::<RatScalar>(c)?;
    let target = basis(a + b, c);
    let mut rows = Vec::new();
    for f in &candidates {
        let g = output.compose(&Morphism::from_pairing(f.clone()).compose(&inputs)?)?;
        if !g.is_zero() {
            rows.push(target.iter().map(|p| g.coeff(p)).collect());
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(rows).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones_wenzl::jw;
    use crate::scalar::CycloScalar;
    use num_traits::Zero;

    fn q(n: i64) -> RatScalar {
        RatScalar::qint(n)
    }

    #[test]
    fn empty_and_circle() {
        assert_eq!(evaluate::<RatScalar>(&Net::empty()).unwrap(), RatScalar::from_integer(1));
        for a in 0..=5 {
            assert_eq!(evaluate::<RatScalar>(&Net::circle(a)).unwrap(), q(a as i64 + 1));
        }
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(vertex_morphism::<RatScalar>(1, 1, 2).unwrap(), *jw(2));
        assert!(matches!(vertex_morphism::<RatScalar>(1, 1, 1), Err(Error::NotAdmissible(1, 1, 1))));
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    if admissible(a, b, c) {
                        let v = vertex_morphism::<RatScalar>(a, b, c).unwrap();
                        assert!(!v.is_zero());
                        assert_eq!(compile_net::<RatScalar>(&Net::vertex(a, b, c).unwrap()).unwrap(), v);
                        assert_eq!(compile_net::<RatScalar>(&Net::covertex(a, b, c).unwrap()).unwrap(), v.bar());
                    }
                }
            }
        }
    }

    #[test]
    fn theta_special_values() {
        assert_eq!(theta_formula(1, 1, 0).unwrap(), q(2));
        assert_eq!(theta_formula(1, 1, 2).unwrap(), q(3));
        for a in 1..=6 {
            assert_eq!(theta_formula(a, 1, a - 1).unwrap(), q(a as i64 + 1));
            assert_eq!(theta_formula(a, 1, a + 1).unwrap(), q(a as i64 + 2));
        }
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(theta_net_value(m, n, 0), q((m + n + 1) as i64));
            }
        }
        assert!(theta_formula(1, 1, 1).is_err());
    }

    #[test]
    fn theta_formula_matches_compiled_net() {
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    if admissible(a, b, c) {
                        let net = evaluate::<RatScalar>(&Net::theta(a, b, c).unwrap()).unwrap();
                        assert_eq!(net, theta_formula(a, b, c).unwrap(), "theta({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn theta_symmetric() {
        for (a, b, c) in [(1, 2, 3), (2, 2, 2), (3, 4, 3), (0, 5, 5)] {
            let t = theta_formula(a, b, c).unwrap();
            for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                assert_eq!(theta_formula(x, y, z).unwrap(), t);
            }
        }
    }

    #[test]
    fn closed_values_independent_of_leg_convention() {
        // Relabelling the theta vertices cyclically or mirroring the whole
        // net does not change its value.
        let g = RibbonGraph::new(
            vec![Vertex::internal([1, 0, 2]), Vertex::internal([1, 2, 0])],
            vec![[0, 1]; 3],
        )
        .unwrap();
        let net = Net::new(g, vec![2, 3, 3], Vec::new()).unwrap();
        assert_eq!(evaluate::<RatScalar>(&net).unwrap(), theta_formula(2, 3, 3).unwrap());
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(fusion_coefficients(0, 3), vec![(3, RatScalar::from_integer(1))]);
        let ff = fusion_coefficients(1, 1);
        assert_eq!(ff, vec![(0, q(2).checked_inv().unwrap()), (2, RatScalar::from_integer(1))]);
        for a in 0..=3 {
            for b in 0..=3 {
                assert!(tensor_identity_check(a, b).unwrap(), "({a},{b})");
            }
        }
    }

    #[test]
    fn phi_psi_inverse() {
        for a in 0..=3 {
            for b in 0..=3 {
                assert!(phi_psi::<RatScalar>(a, b).unwrap().check().unwrap(), "({a},{b})");
            }
        }
    }

    #[test]
    fn bubbles() {
        let (s, same) = bubble::<RatScalar>(1, 3, 1, 2).unwrap();
        assert!(s.is_zero() && !same);
        assert!(bubble_check::<RatScalar>(1, 3, 1, 2).unwrap());
        for c in 0..=3 {
            assert_eq!(bubble::<RatScalar>(0, 0, c, c).unwrap().0, q(c as i64 + 1));
        }
        for (a, c, d) in [(2, 1, 1), (2, 2, 2), (3, 2, 1), (1, 2, 3)] {
            assert!(bubble_check::<RatScalar>(a, a, c, d).unwrap());
        }
        assert!(bubble::<RatScalar>(1, 1, 1, 1).is_err());
    }

    #[test]
    fn triangles() {
        // n = 0: coefficient 1.
        let r = triangle_checks(2, 2, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.lower.unwrap().0, RatScalar::from_integer(1));
        // n = 1: -[1]/[2].
        let r = triangle_checks(2, 3, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.lower.unwrap().0, -(q(1).checked_div(&q(2)).unwrap()));
        // n = 2: [1]/[3].
        let r = triangle_checks(1, 3, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.lower.unwrap().0, q(1).checked_div(&q(3)).unwrap());
        // (a, b-1, k) = (2, 1, 2) has odd sum.
        assert!(matches!(triangle_checks(2, 2, 2), Err(Error::NotAdmissible(2, 1, 2))));
        let r = triangle_checks(0, 1, 0).unwrap();
        assert!(r.passed() && r.lower.is_none());
    }

    #[test]
    fn hom_dimensions() {
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    let expected = usize::from(admissible(a, b, c));
                    assert_eq!(hom_dimension(a, b, c).unwrap(), expected, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn h_and_i_nets() {
        for (a, b, c, d, x) in [(1, 1, 1, 1, 0), (1, 1, 1, 1, 2), (2, 1, 2, 1, 1), (1, 2, 2, 1, 3), (2, 2, 2, 2, 2)] {
            if let Ok(net) = Net::h(a, b, c, d, x) {
                let composed = Morphism::identity(b)
                    .tensor(&vertex_morphism(x, d, c).unwrap())
                    .compose(&covertex_morphism(b, x, a).unwrap().tensor(&Morphism::identity(d)))
                    .unwrap();
                assert_eq!(compile_net::<RatScalar>(&net).unwrap(), composed);
            }
            if let Ok(net) = Net::i(a, b, c, d, x) {
                let composed =
                    covertex_morphism::<RatScalar>(b, c, x).unwrap().compose(&vertex_morphism(a, d, x).unwrap()).unwrap();
                assert_eq!(compile_net::<RatScalar>(&net).unwrap(), composed);
            }
        }
    }

    #[test]
    fn gluing() {
        let v = Net::vertex(1, 2, 3).unwrap();
        let m = v.mirror();
        assert_eq!(compile_net::<RatScalar>(&m).unwrap(), compile_net::<RatScalar>(&v).unwrap().bar());
        let stacked = Net::stack(&m, &v).unwrap();
        let composed = vertex_morphism::<RatScalar>(1, 2, 3).unwrap().compose(&m_of(1, 2, 3)).unwrap();
        assert_eq!(compile_net::<RatScalar>(&stacked).unwrap(), composed);
        // Closing the bubble p_3 -> p_3 gives a theta net.
        let closed = stacked.closure().unwrap();
        assert!(closed.is_closed());
        assert_eq!(evaluate::<RatScalar>(&closed).unwrap(), theta_formula(1, 2, 3).unwrap());
        // Closing the vertex composed the other way gives the same theta.
        let other = Net::stack(&v, &m).unwrap().closure().unwrap();
        assert_eq!(evaluate::<RatScalar>(&other).unwrap(), theta_formula(1, 2, 3).unwrap());
        // A straight strand closes to a free loop.
        let strand = Net::stack(&Net::vertex(2, 0, 2).unwrap(), &Net::covertex(2, 0, 2).unwrap()).unwrap();
        assert_eq!(evaluate::<RatScalar>(&strand.closure().unwrap()).unwrap(), q(3));
        assert!(Net::stack(&v, &v).is_err());
    }

    fn m_of(a: usize, b: usize, c: usize) -> Morphism<RatScalar> {
        covertex_morphism(a, b, c).unwrap()
    }

    #[test]
    fn json_nets() {
        let text = Net::theta(1, 2, 1).unwrap().to_document().to_json();
        let net = Net::from_json(&text).unwrap();
        assert_eq!(evaluate::<RatScalar>(&net).unwrap(), theta_formula(1, 2, 1).unwrap());
        let bad = r#"{"vertices":[{"kind":"internal","edge_cyclic_order":[0,1,2]},
            {"kind":"internal","edge_cyclic_order":[0,2,1]}],"edges":[[0,1],[0,1],[0,1]],"labels":[1,1,1]}"#;
        assert!(matches!(Net::from_json(bad), Err(Error::NotAdmissible(..))));
    }

    #[test]
    fn root_of_unity_evaluation() {
        // θ(1,1,2) = [3] vanishes at q = e^{πi/3}.
        let v: CycloScalar<3> = evaluate(&Net::theta(1, 1, 2).unwrap()).unwrap();
        assert!(v.is_zero());
        let v = evaluate::<CycloScalar<3>>(&Net::theta(1, 2, 3).unwrap());
        assert!(matches!(v, Err(Error::Jw(_))));
        let v: CycloScalar<4> = evaluate(&Net::theta(1, 1, 2).unwrap()).unwrap();
        assert_eq!(v, CycloScalar::<4>::qint(3));
    }
}
