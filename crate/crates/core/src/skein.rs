//! Spines of holed disks, their admissible colorings, and the
//! change-of-basis matrices induced by HI moves.
//!
//! Matrices act on column vectors: entry `(t, s)` is the coefficient of
//! target coloring `t` in the image of source coloring `s`.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::fusion::{q_admissible, sixj};
use crate::graph::{GraphDocument, HalfEdge, RibbonGraph, Side, Vertex};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A trivalent spine: a connected planar ribbon graph, or a number of
/// vertex-free circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spine {
    graph: RibbonGraph,
    free_loops: usize,
    boundary_labels: BTreeMap<usize, usize>,
}

impl Spine {
    pub fn new(graph: RibbonGraph, free_loops: usize) -> Result<Self> {
        let pieces = graph.components() + free_loops;
        if pieces > 1 {
            return Err(Error::EulerMismatch(format!("spine has {pieces} connected pieces")));
        }
        Ok(Spine { graph, free_loops, boundary_labels: BTreeMap::new() })
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let graph = RibbonGraph::new(doc.vertices.clone(), doc.edges.clone())?;
        let mut spine = Spine::new(graph, doc.free_loops)?;
        if let Some(h) = doc.holes {
            if spine.holes() != h {
                return Err(Error::EulerMismatch(format!(
                    "declared {h} holes, but E - V + C + loops = {}",
                    spine.holes()
                )));
            }
        }
        spine.boundary_labels = doc.boundary_labels.clone();
        Ok(spine)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.graph.vertices().to_vec(),
            edges: self.graph.edges().to_vec(),
            free_loops: self.free_loops,
            boundary_labels: self.boundary_labels.clone(),
            holes: Some(self.holes()),
            ..GraphDocument::default()
        }
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Labels stored with the spine for its boundary edges.
    pub fn boundary_labels(&self) -> &BTreeMap<usize, usize> {
        &self.boundary_labels
    }

    pub fn with_boundary_labels(mut self, labels: BTreeMap<usize, usize>) -> Self {
        self.boundary_labels = labels;
        self
    }

    /// Number of holes of the disk this spine is a spine of.
    pub fn holes(&self) -> usize {
        self.graph.cycle_rank() + self.free_loops
    }

    /// Edges joining two distinct internal vertices.
    pub fn internal_edges(&self) -> Vec<usize> {
        let vs = self.graph.vertices();
        (0..self.graph.edge_count())
            .filter(|&e| {
                let [u, v] = self.graph.edges()[e];
                u != v && !vs[u].is_boundary() && !vs[v].is_boundary()
            })
            .collect()
    }

    /// An edge map `self → other` preserving the ribbon structure, boundary
    /// positions and boundary labels, if one exists.
    pub fn isomorphism(&self, other: &Spine) -> Option<Vec<usize>> {
        let (g, h) = (&self.graph, &other.graph);
        if self.free_loops != other.free_loops
            || g.vertex_count() != h.vertex_count()
            || g.edge_count() != h.edge_count()
        {
            return None;
        }
        if g.vertex_count() == 0 {
            return Some(Vec::new());
        }
        let start_degree = g.vertices()[0].rotation().len();
        for w in 0..h.vertex_count() {
            for shift in 0..start_degree {
                if let Some(map) = self.extend_isomorphism(other, w, shift) {
                    return Some(map);
                }
            }
        }
        None
    }

    fn extend_isomorphism(&self, other: &Spine, w0: usize, shift0: usize) -> Option<Vec<usize>> {
        let (g, h) = (&self.graph, &other.graph);
        let mut vmap: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
        let mut emap: Vec<Option<usize>> = vec![None; g.edge_count()];
        let mut queue = VecDeque::from([(0usize, w0, shift0)]);
        while let Some((v, w, shift)) = queue.pop_front() {
            if let Some(prev) = vmap[v] {
                if prev != (w, shift) {
                    return None;
                }
                continue;
            }
            if vmap.iter().any(|m| m.is_some_and(|(x, _)| x == w)) {
                return None;
            }
            let (vx, wx) = (&g.vertices()[v], &h.vertices()[w]);
            let deg = vx.rotation().len();
            let compatible = match (vx, wx) {
                (Vertex::Internal { .. }, Vertex::Internal { .. }) => wx.rotation().len() == deg,
                (
                    Vertex::Boundary { side: s1, position: p1, .. },
                    Vertex::Boundary { side: s2, position: p2, .. },
                ) => s1 == s2 && p1 == p2,
                _ => false,
            };
            if !compatible {
                return None;
            }
            vmap[v] = Some((w, shift));
            let (dv, dw) = (g.darts(v), h.darts(w));
            for s in 0..deg {
                let (hv, hw) = (dv[s], dw[(s + shift) % deg]);
                match emap[hv.edge] {
                    Some(e) if e != hw.edge => return None,
                    _ => emap[hv.edge] = Some(hw.edge),
                }
                if self.boundary_labels.get(&hv.edge) != other.boundary_labels.get(&hw.edge) {
                    return None;
                }
                let (v2, s2) = g.locate(HalfEdge { edge: hv.edge, end: 1 - hv.end });
                let (w2, t2) = h.locate(HalfEdge { edge: hw.edge, end: 1 - hw.end });
                let d2 = g.vertices()[v2].rotation().len();
                queue.push_back((v2, w2, (t2 + d2 - s2) % d2));
            }
        }
        vmap.iter().all(Option::is_some).then_some(())?;
        emap.into_iter().collect()
    }
}

/// Parses and validates a spine document.
pub fn load_spine(text: &str) -> Result<Spine> {
    Spine::from_document(&GraphDocument::from_json(text)?)
}

/// Edge labels, then free-loop labels; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub edges: Vec<usize>,
    pub loops: Vec<usize>,
}

/// The admissible colorings of a spine at `q = e^{πi/n}` with fixed labels
/// on the boundary edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinBasis {
    spine: Spine,
    n: u32,
    boundary_labels: BTreeMap<usize, usize>,
    colorings: Vec<Coloring>,
}

impl SkeinBasis {
    pub fn spine(&self) -> &Spine {
        &self.spine
    }

    pub fn root(&self) -> u32 {
        self.n
    }

    pub fn boundary_labels(&self) -> &BTreeMap<usize, usize> {
        &self.boundary_labels
    }

    pub fn colorings(&self) -> &[Coloring] {
        &self.colorings
    }

    pub fn dim(&self) -> usize {
        self.colorings.len()
    }

    pub fn index_of(&self, c: &Coloring) -> Option<usize> {
        self.colorings.binary_search(c).ok()
    }
}

/// All q-admissible colorings, in lexicographic order.
pub fn enumerate_colorings(spine: &Spine, n: u32, boundary_labels: &BTreeMap<usize, usize>) -> Result<SkeinBasis> {
    if n < 2 {
        return Err(Error::Malformed(format!("root order {n} < 2")));
    }
    let g = &spine.graph;
    let top = n as usize - 2;
    let attached = g.boundary_edges();
    if attached.iter().copied().ne(boundary_labels.keys().copied()) {
        return Err(Error::Malformed(format!(
            "boundary labels must be given exactly for edges {attached:?}"
        )));
    }
    if let Some(&label) = boundary_labels.values().find(|&&l| l > top) {
        return Err(Error::LabelOutOfRange { label, max: top });
    }
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for v in g.internal_vertices() {
        let last = *g.vertices()[v].rotation().iter().max().expect("trivalent");
        ready[last].push(v);
    }
    let mut edge_colorings = Vec::new();
    let mut labels = vec![0; g.edge_count()];
    fill(spine, n, boundary_labels, &ready, 0, &mut labels, &mut edge_colorings);
    let mut colorings = Vec::new();
    let loop_choices = (top + 1).pow(spine.free_loops as u32);
    for edges in edge_colorings {
        for idx in 0..loop_choices {
            let mut loops = vec![0; spine.free_loops];
            let mut rest = idx;
            for slot in loops.iter_mut().rev() {
                *slot = rest % (top + 1);
                rest /= top + 1;
            }
            colorings.push(Coloring { edges: edges.clone(), loops });
        }
    }
    Ok(SkeinBasis { spine: spine.clone(), n, boundary_labels: boundary_labels.clone(), colorings })
}

fn fill(
    spine: &Spine,
    n: u32,
    fixed: &BTreeMap<usize, usize>,
    ready: &[Vec<usize>],
    e: usize,
    labels: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let g = &spine.graph;
    if e == g.edge_count() {
        out.push(labels.clone());
        return;
    }
    let choices = match fixed.get(&e) {
        Some(&l) => l..=l,
        None => 0..=n as usize - 2,
    };
    for l in choices {
        labels[e] = l;
        let ok = ready[e].iter().all(|&v| {
            let t: Vec<usize> = g.vertices()[v].rotation().iter().map(|&x| labels[x]).collect();
            q_admissible(t[0], t[1], t[2], n)
        });
        if ok {
            fill(spine, n, fixed, ready, e + 1, labels, out);
        }
    }
}

/// An HI move on an internal edge. Reading the edge's end 0 as the left
/// vertex of an `H`, the move produces the `I`; `orientation` chooses
/// whether the top (0) or bottom (1) vertex of the `I` keeps the index of
/// the left vertex. `(e, o)` followed by `(e, 1 − o)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct HiMove {
    pub edge: usize,
    #[serde(default)]
    pub orientation: u8,
}

impl HiMove {
    pub fn new(edge: usize, orientation: u8) -> Self {
        HiMove { edge, orientation }
    }

    pub fn inverse(self) -> Self {
        HiMove { edge: self.edge, orientation: 1 - self.orientation }
    }
}

/// The four legs of the `H` around `mv.edge`: `(b, a)` at the left vertex
/// and `(d, c)` at the right one, as half-edges.
struct HShape {
    left: usize,
    right: usize,
    a: HalfEdge,
    b: HalfEdge,
    c: HalfEdge,
    d: HalfEdge,
}

fn h_shape(spine: &Spine, mv: HiMove) -> Result<HShape> {
    let g = &spine.graph;
    let e = mv.edge;
    if e >= g.edge_count() {
        return Err(Error::InvalidEdge { edge: e, reason: "no such edge".into() });
    }
    if mv.orientation > 1 {
        return Err(Error::InvalidEdge { edge: e, reason: format!("orientation {} is not 0 or 1", mv.orientation) });
    }
    let [left, right] = g.edges()[e];
    if left == right {
        return Err(Error::InvalidEdge { edge: e, reason: "loop edge".into() });
    }
    if g.vertices()[left].is_boundary() || g.vertices()[right].is_boundary() {
        return Err(Error::InvalidEdge { edge: e, reason: "edge meets the boundary".into() });
    }
    let legs = |v: usize, end: u8| {
        let (_, slot) = g.locate(HalfEdge { edge: e, end });
        let d = g.darts(v);
        (d[(slot + 1) % 3], d[(slot + 2) % 3])
    };
    let (b, a) = legs(left, 0);
    let (d, c) = legs(right, 1);
    Ok(HShape { left, right, a, b, c, d })
}

/// The spine after an HI move; the moved edge keeps its index.
pub fn apply_hi(spine: &Spine, mv: HiMove) -> Result<Spine> {
    let HShape { left, right, a, b, c, d } = h_shape(spine, mv)?;
    let g = &spine.graph;
    let e = mv.edge;
    let mut darts: Vec<Vec<HalfEdge>> = (0..g.vertex_count()).map(|v| g.darts(v)).collect();
    let (top, bottom) = if mv.orientation == 0 { (left, right) } else { (right, left) };
    let slot = |v: usize| g.locate(HalfEdge { edge: e, end: u8::from(v == right) }).1;
    let (top_slot, bottom_slot) = (slot(top), slot(bottom));
    darts[top] = vec![HalfEdge { edge: e, end: u8::from(top == right) }, c, b];
    darts[bottom] = vec![HalfEdge { edge: e, end: u8::from(bottom == right) }, a, d];
    darts[top].rotate_right(top_slot);
    darts[bottom].rotate_right(bottom_slot);
    let mut ends = vec![[usize::MAX; 2]; g.edge_count()];
    for (v, ds) in darts.iter().enumerate() {
        for h in ds {
            ends[h.edge][h.end as usize] = v;
        }
    }
    for (e, pair) in ends.iter_mut().enumerate() {
        let [u, v] = g.edges()[e];
        if u == v && pair[0] > pair[1] {
            pair.swap(0, 1);
        }
    }
    let vertices = g
        .vertices()
        .iter()
        .zip(&darts)
        .map(|(vx, ds)| {
            let order: Vec<usize> = ds.iter().map(|h| h.edge).collect();
            match vx {
                Vertex::Internal { .. } => Vertex::internal(order),
                Vertex::Boundary { side, position, .. } => {
                    Vertex::Boundary { side: *side, position: *position, edge_cyclic_order: order }
                }
            }
        })
        .collect();
    let graph = RibbonGraph::new(vertices, ends)?;
    let mut out = Spine::new(graph, spine.free_loops)?;
    out.boundary_labels = spine.boundary_labels.clone();
    Ok(out)
}

/// The matrix of an HI move between the two coloring bases.
#[derive(Clone)]
pub struct HiMatrix<S> {
    pub source: SkeinBasis,
    pub target: SkeinBasis,
    pub entries: Matrix<S>,
}

fn root_of<S: Scalar>() -> Result<u32> {
    S::root_order().ok_or_else(|| Error::Malformed("skein modules need a root of unity".into()))
}

/// Each coloring maps to `Σ_i {a b i; c d j}` times the coloring with the
/// moved edge relabelled `i`.
pub fn hi_matrix<S: Scalar>(spine: &Spine, mv: HiMove, boundary_labels: &BTreeMap<usize, usize>) -> Result<HiMatrix<S>> {
    let n = root_of::<S>()?;
    let shape = h_shape(spine, mv)?;
    let moved = apply_hi(spine, mv)?;
    let source = enumerate_colorings(spine, n, boundary_labels)?;
    let target = enumerate_colorings(&moved, n, boundary_labels)?;
    let mut entries = Matrix::zeros(target.dim(), source.dim());
    for (s, col) in source.colorings.iter().enumerate() {
        let l = |h: HalfEdge| col.edges[h.edge];
        let (a, b, c, d, j) = (l(shape.a), l(shape.b), l(shape.c), l(shape.d), col.edges[mv.edge]);
        for i in 0..=n as usize - 2 {
            if !(q_admissible(a, d, i, n) && q_admissible(b, c, i, n)) {
                continue;
            }
            let mut image = col.clone();
            image.edges[mv.edge] = i;
            let t = target.index_of(&image).expect("image coloring is admissible");
            entries[(t, s)] = sixj::<S>(a, b, i, c, d, j)?;
        }
    }
    Ok(HiMatrix { source, target, entries })
}

/// The spine reached by `moves` and the product of their matrices.
pub fn transport<S: Scalar>(
    spine: &Spine,
    moves: &[HiMove],
    boundary_labels: &BTreeMap<usize, usize>,
) -> Result<(Spine, Matrix<S>)> {
    let n = root_of::<S>()?;
    let mut current = spine.clone();
    let mut total = Matrix::identity(enumerate_colorings(spine, n, boundary_labels)?.dim());
    for &mv in moves {
        let m = hi_matrix::<S>(&current, mv, boundary_labels)?;
        total = m.entries.mul(&total);
        current = m.target.spine.clone();
    }
    Ok((current, total))
}

/// The permutation matrix taking the basis of `from` to the basis of `to`
/// along an edge map `from → to`.
pub fn relabel_matrix<S: Scalar>(from: &SkeinBasis, to: &SkeinBasis, edge_map: &[usize]) -> Option<Matrix<S>> {
    if from.dim() != to.dim() {
        return None;
    }
    let mut p = Matrix::zeros(to.dim(), from.dim());
    for (s, c) in from.colorings.iter().enumerate() {
        let mut edges = vec![0; c.edges.len()];
        for (e, &label) in c.edges.iter().enumerate() {
            edges[edge_map[e]] = label;
        }
        let t = to.index_of(&Coloring { edges, loops: c.loops.clone() })?;
        p[(t, s)] = S::one();
    }
    Some(p)
}

/// The tree `((x0 x1) x2) x3 → x4` with leaves on the bottom and root on
/// the top; internal edges are 5 and 6.
pub fn four_leaf_tree(labels: [usize; 5]) -> Result<Spine> {
    let vertices = vec![
        Vertex::boundary(Side::Bottom, 0, 0),
        Vertex::boundary(Side::Bottom, 1, 1),
        Vertex::boundary(Side::Bottom, 2, 2),
        Vertex::boundary(Side::Bottom, 3, 3),
        Vertex::boundary(Side::Top, 0, 4),
        Vertex::internal([5, 0, 1]),
        Vertex::internal([6, 5, 2]),
        Vertex::internal([4, 6, 3]),
    ];
    let edges = vec![[0, 5], [1, 5], [2, 6], [3, 7], [7, 4], [5, 6], [6, 7]];
    let spine = Spine::new(RibbonGraph::new(vertices, edges)?, 0)?;
    Ok(spine.with_boundary_labels(labels.iter().copied().enumerate().collect()))
}

/// The two sides of the pentagon on the four-leaf tree: HI moves on edges
/// 5, 6 against 6, 5, 6. Returns whether the composites agree after
/// aligning the final spines, and the common dimension.
pub fn pentagon_check<S: Scalar>(labels: [usize; 5]) -> Result<(bool, usize)> {
    let n = root_of::<S>()?;
    let tree = four_leaf_tree(labels)?;
    let bl = tree.boundary_labels().clone();
    let (short_end, short) = transport::<S>(&tree, &[HiMove::new(5, 0), HiMove::new(6, 0)], &bl)?;
    let (long_end, long) =
        transport::<S>(&tree, &[HiMove::new(6, 0), HiMove::new(5, 0), HiMove::new(6, 0)], &bl)?;
    let map = long_end
        .isomorphism(&short_end)
        .ok_or_else(|| Error::Malformed("pentagon paths end at different spines".into()))?;
    let p = relabel_matrix::<S>(
        &enumerate_colorings(&long_end, n, &bl)?,
        &enumerate_colorings(&short_end, n, &bl)?,
        &map,
    )
    .ok_or_else(|| Error::Malformed("coloring bases do not correspond".into()))?;
    Ok((p.mul(&long) == short, short.cols()))
}

/// A cycle of `beads` vertices, each carrying a pendant edge to a vertex
/// with a loop; a spine for the disk with `beads + 1` holes.
pub fn necklace(beads: usize) -> Result<Spine> {
    let m = beads;
    let mut vertices = Vec::with_capacity(2 * m);
    for i in 0..m {
        vertices.push(Vertex::internal([(i + m - 1) % m, m + i, i]));
    }
    for i in 0..m {
        vertices.push(Vertex::internal([m + i, 2 * m + i, 2 * m + i]));
    }
    let mut edges = Vec::with_capacity(3 * m);
    for i in 0..m {
        edges.push([i.min((i + 1) % m), i.max((i + 1) % m)]);
    }
    for i in 0..m {
        edges.push([i, m + i]);
    }
    for i in 0..m {
        edges.push([m + i, m + i]);
    }
    Spine::new(RibbonGraph::new(vertices, edges)?, 0)
}

/// `tr(T^beads)` with `T[x][y] = #{(p, g) : (x, p, y) and (g, g, p)
/// q-admissible}`: the dimension for [`necklace`] by transfer matrix.
pub fn necklace_dimension(beads: usize, n: u32) -> u64 {
    let size = n as usize - 1;
    let mut t = vec![vec![0u64; size]; size];
    for (x, row) in t.iter_mut().enumerate() {
        for (y, entry) in row.iter_mut().enumerate() {
            for p in 0..size {
                if q_admissible(x, p, y, n) {
                    *entry += (0..size).filter(|&g| q_admissible(g, g, p, n)).count() as u64;
                }
            }
        }
    }
    let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        (0..size).map(|i| (0..size).map(|j| (0..size).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let mut power: Vec<Vec<u64>> = (0..size).map(|i| (0..size).map(|j| u64::from(i == j)).collect()).collect();
    for _ in 0..beads {
        power = mul(&power, &t);
    }
    (0..size).map(|i| power[i][i]).sum()
}

/// The spines shipped as examples: name, spine and stored boundary labels.
pub fn library() -> Vec<(&'static str, Spine)> {
    let theta = RibbonGraph::new(vec![Vertex::internal([0, 2, 1]), Vertex::internal([0, 1, 2])], vec![[0, 1]; 3])
        .expect("theta");
    let dumbbell = RibbonGraph::new(
        vec![Vertex::internal([0, 0, 1]), Vertex::internal([1, 2, 2])],
        vec![[0, 0], [0, 1], [1, 1]],
    )
    .expect("dumbbell");
    let h = RibbonGraph::new(
        vec![
            Vertex::boundary(Side::Bottom, 0, 0),
            Vertex::boundary(Side::Top, 0, 1),
            Vertex::boundary(Side::Top, 1, 2),
            Vertex::boundary(Side::Bottom, 1, 3),
            Vertex::internal([0, 4, 1]),
            Vertex::internal([3, 2, 4]),
        ],
        vec![[0, 4], [4, 1], [5, 2], [3, 5], [4, 5]],
    )
    .expect("H");
    let lollipop = RibbonGraph::new(
        vec![Vertex::boundary(Side::Top, 0, 0), Vertex::internal([0, 1, 1])],
        vec![[1, 0], [1, 1]],
    )
    .expect("lollipop");
    let tetrahedron = RibbonGraph::new(
        vec![
            Vertex::internal([0, 1, 2]),
            Vertex::internal([3, 0, 4]),
            Vertex::internal([5, 1, 3]),
            Vertex::internal([4, 2, 5]),
        ],
        vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
    )
    .expect("tetrahedron");
    let s = |g: RibbonGraph| Spine::new(g, 0).expect("spine");
    vec![
        ("annulus", Spine::new(RibbonGraph::new(Vec::new(), Vec::new()).expect("empty"), 1).expect("annulus")),
        ("two_holed_theta", s(theta)),
        ("two_holed_dumbbell", s(dumbbell)),
        ("three_holed_tetrahedron", s(tetrahedron)),
        ("three_holed_necklace", necklace(2).expect("necklace")),
        ("h_four_boundary", s(h).with_boundary_labels(BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 1)]))),
        ("one_holed_lollipop", s(lollipop).with_boundary_labels(BTreeMap::from([(0, 0)]))),
        ("four_leaf_tree", four_leaf_tree([1, 1, 1, 1, 0]).expect("tree")),
    ]
}
