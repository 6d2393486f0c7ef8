//! Ribbon graphs in a rectangle: vertices carry a counterclockwise cyclic
//! order of incident edges, and univalent boundary vertices sit on the top
//! or bottom side.
//!
//! The same JSON document describes trivalent nets and skein spines:
//!
//! ```json
//! {
//!   "vertices": [
//!     {"kind": "internal", "edge_cyclic_order": [0, 1, 2]},
//!     {"kind": "internal", "edge_cyclic_order": [0, 2, 1]}
//!   ],
//!   "edges": [[0, 1], [0, 1], [0, 1]],
//!   "labels": [1, 1, 2]
//! }
//! ```
//!
//! A self-loop appears twice in its vertex's cyclic order; the first
//! occurrence is end 0 of the edge.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bottom,
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Vertex {
    Internal {
        edge_cyclic_order: Vec<usize>,
    },
    Boundary {
        side: Side,
        position: usize,
        edge_cyclic_order: Vec<usize>,
    },
}

impl Vertex {
    pub fn internal(order: impl Into<Vec<usize>>) -> Self {
        Vertex::Internal { edge_cyclic_order: order.into() }
    }

    pub fn boundary(side: Side, position: usize, edge: usize) -> Self {
        Vertex::Boundary { side, position, edge_cyclic_order: vec![edge] }
    }

    pub fn rotation(&self) -> &[usize] {
        match self {
            Vertex::Internal { edge_cyclic_order } | Vertex::Boundary { edge_cyclic_order, .. } => {
                edge_cyclic_order
            }
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Vertex::Boundary { .. })
    }
}

/// One end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

/// On-disk form of a net or spine.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loop_labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub boundary_labels: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holes: Option<usize>,
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// A validated embedded graph. Internal vertices have degree 3, boundary
/// vertices degree 1, and the embedding is planar with the boundary
/// vertices in their stated order around the rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
    /// `(vertex, slot)` of each end of each edge.
    ends: Vec<[(usize, usize); 2]>,
}

impl RibbonGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<[usize; 2]>) -> Result<Self> {
        let ends = locate_ends(&vertices, &edges)?;
        for (v, vertex) in vertices.iter().enumerate() {
            let expected = if vertex.is_boundary() { 1 } else { 3 };
            let degree = vertex.rotation().len();
            if degree != expected {
                return Err(Error::InvalidDegree { vertex: v, degree, expected });
            }
        }
        for side in [Side::Bottom, Side::Top] {
            let mut positions: Vec<usize> = vertices
                .iter()
                .filter_map(|v| match v {
                    Vertex::Boundary { side: s, position, .. } if *s == side => Some(*position),
                    _ => None,
                })
                .collect();
            positions.sort_unstable();
            if positions.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("repeated {side:?} boundary position")));
            }
        }
        let g = RibbonGraph { vertices, edges, ends };
        g.check_planar()?;
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Half-edges at `v` in counterclockwise order.
    pub fn darts(&self, v: usize) -> Vec<HalfEdge> {
        let mut seen = Vec::new();
        self.vertices[v]
            .rotation()
            .iter()
            .map(|&e| {
                let end = if self.edges[e][0] == self.edges[e][1] && seen.contains(&e) { 1 } else {
                    seen.push(e);
                    if self.edges[e][0] == v { 0 } else { 1 }
                };
                HalfEdge { edge: e, end }
            })
            .collect()
    }

    /// Vertex and slot of a half-edge.
    pub fn locate(&self, h: HalfEdge) -> (usize, usize) {
        self.ends[h.edge][h.end as usize]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e][0] == self.edges[e][1]
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| !self.vertices[v].is_boundary())
    }

    /// Boundary vertices on `side`, left to right.
    pub fn boundary(&self, side: Side) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(v, vx)| match vx {
                Vertex::Boundary { side: s, position, .. } if *s == side => Some((*position, v)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, v)| v).collect()
    }

    /// Edges incident to a boundary vertex.
    pub fn boundary_edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].iter().any(|&v| self.vertices[v].is_boundary()))
            .collect();
        out.dedup();
        out
    }

    /// Connected components of the vertex set.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut count = self.vertices.len();
        for &[u, v] in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// First Betti number `E − V + C`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.vertices.len()
    }

    /// Faces of the embedding on the sphere, with the outside of the
    /// rectangle collapsed to one extra vertex joined to every boundary
    /// vertex.
    pub fn faces(&self) -> usize {
        let mut rot: Vec<Vec<usize>> = self.vertices.iter().map(|v| v.rotation().to_vec()).collect();
        let mut ends = self.ends.clone();
        let frame = self.frame_order();
        if !frame.is_empty() {
            let w = rot.len();
            rot.push(Vec::new());
            for (slot, &b) in frame.iter().enumerate() {
                let e = ends.len();
                rot[b].push(e);
                rot[w].push(e);
                ends.push([(b, 1), (w, slot)]);
            }
        }
        count_faces(&rot, &ends)
    }

    /// Boundary vertices in counterclockwise order around the point at
    /// infinity: bottom right to left, then top left to right.
    fn frame_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.boundary(Side::Bottom).into_iter().rev().collect();
        order.extend(self.boundary(Side::Top));
        order
    }

    fn check_planar(&self) -> Result<()> {
        let has_frame = self.vertices.iter().any(Vertex::is_boundary);
        let v = self.vertices.len() + usize::from(has_frame);
        let e = self.edges.len() + if has_frame { self.frame_order().len() } else { 0 };
        let c = self.components_with_frame();
        let f = self.faces();
        if v + f != e + 2 * c {
            return Err(Error::NonPlanarEmbedding(format!(
                "V - E + F = {} but {} component(s)",
                v as i64 - e as i64 + f as i64,
                c
            )));
        }
        Ok(())
    }

    fn components_with_frame(&self) -> usize {
        let boundary: Vec<usize> = self.frame_order();
        if boundary.is_empty() {
            return self.components();
        }
        let mut g = self.clone();
        let w = g.vertices.len();
        g.vertices.push(Vertex::internal(Vec::new()));
        for &b in &boundary {
            g.edges.push([b, w]);
        }
        g.components()
    }
}

fn locate_ends(vertices: &[Vertex], edges: &[[usize; 2]]) -> Result<Vec<[(usize, usize); 2]>> {
    let mut ends: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; edges.len()];
    for (v, vertex) in vertices.iter().enumerate() {
        for (slot, &e) in vertex.rotation().iter().enumerate() {
            let Some(&[a, b]) = edges.get(e) else {
                return Err(Error::InvalidEdge { edge: e, reason: format!("listed at vertex {v} but not defined") });
            };
            let end = if a == v && ends[e][0].is_none() {
                0
            } else if b == v && ends[e][1].is_none() {
                1
            } else {
                return Err(Error::InvalidEdge { edge: e, reason: format!("unexpected occurrence at vertex {v}") });
            };
            ends[e][end] = Some((v, slot));
        }
    }
    ends.into_iter()
        .enumerate()
        .map(|(e, [x, y])| match (x, y) {
            (Some(x), Some(y)) => Ok([x, y]),
            _ => Err(Error::InvalidEdge { edge: e, reason: "missing from an endpoint's cyclic order".into() }),
        })
        .collect()
}

/// Orbits of the face permutation `σ ∘ α` on darts.
fn count_faces(rot: &[Vec<usize>], ends: &[[(usize, usize); 2]]) -> usize {
    let mut visited: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = 0;
    for v in 0..rot.len() {
        for s in 0..rot[v].len() {
            if visited[v][s] {
                continue;
            }
            faces += 1;
            let (mut x, mut y) = (v, s);
            while !visited[x][y] {
                visited[x][y] = true;
                let e = rot[x][y];
                let here = if ends[e][0] == (x, y) { 0 } else { 1 };
                let (w, t) = ends[e][1 - here];
                x = w;
                y = (t + 1) % rot[w].len();
            }
        }
    }
    faces
}
