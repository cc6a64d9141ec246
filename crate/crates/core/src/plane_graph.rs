//! Embedded plane graphs given by rotation systems.
//!
//! A graph comes in as a clockwise neighbor order per vertex. Faces are
//! derived by dart tracing: the successor of the dart (u, v) is (v, w)
//! where w immediately precedes u in the rotation of v. The Euler
//! identity n - m + F = 2 is checked at build time, so every value of
//! this type is a genus-zero embedding.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex {0} lists neighbor {1} outside 0..{2}")]
    NeighborOutOfRange(usize, usize, usize),
    #[error("rotation of vertex {0} contains a loop or repeated neighbor")]
    LoopOrMultiEdge(usize),
    #[error("vertex {0} lists {1} but {1} does not list {0}")]
    AsymmetricRotation(usize, usize),
    #[error("graph is not connected (components: {0})")]
    Disconnected(usize),
    #[error("face trace gives {faces} faces but Euler requires {expected}; not a plane embedding")]
    NonPlanarEuler { faces: usize, expected: usize },
}

/// A face of the embedding: a closed walk of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Boundary walk as directed edges, in trace order.
    pub boundary: Vec<(usize, usize)>,
}

impl Face {
    /// Walk length, counting repeated edges with multiplicity.
    pub fn size(&self) -> usize {
        self.boundary.len()
    }

    /// Vertices along the walk (with multiplicity for cut vertices).
    pub fn walk_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(u, _)| u)
    }

    /// Undirected edges on the boundary, deduplicated.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = self
            .boundary
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// True when the walk visits every vertex exactly once, i.e. the face
    /// is bounded by a simple cycle.
    pub fn is_simple_cycle(&self) -> bool {
        let mut vs: Vec<usize> = self.walk_vertices().collect();
        let n = vs.len();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == n && n >= 3
    }
}

/// Boundary walk split into simple cycles and twice-traversed cut edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub cut_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("face {0} is not bounded by a simple cycle")]
pub struct NonCycleBoundary(pub usize);

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Face>,
    /// face id containing each dart
    dart_face: HashMap<(usize, usize), usize>,
    adj: Vec<Vec<bool>>,
}

impl PlaneGraph {
    /// Validate a rotation system and trace its faces. The graph must be
    /// simple, loopless, connected and genus zero.
    pub fn build(rotation: Vec<Vec<usize>>) -> Result<Self, BuildError> {
        Self::build_inner(rotation, true)
    }

    /// Like [`build`](Self::build) but accepts multi-component inputs;
    /// the Euler identity is checked per component.
    pub fn build_multi(rotation: Vec<Vec<usize>>) -> Result<Self, BuildError> {
        Self::build_inner(rotation, false)
    }

    fn build_inner(rotation: Vec<Vec<usize>>, require_connected: bool) -> Result<Self, BuildError> {
        let n = rotation.len();
        let mut adj = vec![vec![false; n]; n];
        for (v, nbrs) in rotation.iter().enumerate() {
            let mut seen = vec![false; n];
            for &u in nbrs {
                if u >= n {
                    return Err(BuildError::NeighborOutOfRange(v, u, n));
                }
                if u == v || seen[u] {
                    return Err(BuildError::LoopOrMultiEdge(v));
                }
                seen[u] = true;
                adj[v][u] = true;
            }
        }
        for v in 0..n {
            for u in 0..n {
                if adj[v][u] && !adj[u][v] {
                    return Err(BuildError::AsymmetricRotation(v, u));
                }
            }
        }
        let mut edges = Vec::new();
        for v in 0..n {
            for u in v + 1..n {
                if adj[v][u] {
                    edges.push((v, u));
                }
            }
        }

        let components = component_labels(&rotation, n);
        let ncomp = components.iter().copied().max().map_or(0, |c| c + 1);
        if require_connected && ncomp > 1 {
            return Err(BuildError::Disconnected(ncomp));
        }

        let mut g = PlaneGraph {
            rotation,
            edges,
            faces: Vec::new(),
            dart_face: HashMap::new(),
            adj,
        };
        g.trace_all_faces();

        // Per-component Euler check: n_c - m_c + F_c = 2.
        for c in 0..ncomp {
            let nc = components.iter().filter(|&&x| x == c).count();
            let mc = g
                .edges
                .iter()
                .filter(|&&(u, _)| components[u] == c)
                .count();
            let fc = g
                .faces
                .iter()
                .filter(|f| !f.boundary.is_empty() && components[f.boundary[0].0] == c)
                .count();
            // An isolated vertex has no darts, hence no traced face.
            let fc = if mc == 0 { 1 } else { fc };
            if nc + fc != mc + 2 {
                return Err(BuildError::NonPlanarEuler {
                    faces: fc,
                    expected: mc + 2 - nc,
                });
            }
        }
        Ok(g)
    }

    fn trace_all_faces(&mut self) {
        let mut used: HashMap<(usize, usize), bool> = HashMap::new();
        for &(u, v) in &self.edges {
            used.insert((u, v), false);
            used.insert((v, u), false);
        }
        let mut darts: Vec<(usize, usize)> = used.keys().copied().collect();
        darts.sort_unstable();
        for start in darts {
            if used[&start] {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                *used.get_mut(&d).unwrap() = true;
                self.dart_face.insert(d, id);
                boundary.push(d);
                d = self.dart_successor(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { id, boundary });
        }
    }

    /// Successor of (u, v): the dart (v, w) where w immediately precedes
    /// u in the clockwise rotation of v.
    pub fn dart_successor(&self, (u, v): (usize, usize)) -> (usize, usize) {
        let rot = &self.rotation[v];
        let pos = rot.iter().position(|&x| x == u).expect("dart endpoint");
        let w = rot[(pos + rot.len() - 1) % rot.len()];
        (v, w)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Face lying to the left of the dart (u, v) under the trace rule.
    pub fn face_of_dart(&self, u: usize, v: usize) -> usize {
        self.dart_face[&(u, v)]
    }

    /// The two faces incident with the undirected edge uv.
    pub fn faces_of_edge(&self, u: usize, v: usize) -> (usize, usize) {
        (self.dart_face[&(u, v)], self.dart_face[&(v, u)])
    }

    /// Face ids incident with v, one entry per boundary-walk occurrence.
    pub fn face_occurrences(&self, v: usize) -> Vec<usize> {
        self.rotation[v]
            .iter()
            .map(|&u| self.dart_face[&(v, u)])
            .collect()
    }

    /// Boundary walk length of a face, counting cut edges twice.
    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].size()
    }

    /// Two distinct faces are adjacent when they share an edge.
    pub fn faces_adjacent(&self, f: usize, g: usize) -> bool {
        assert_ne!(f, g, "faces_adjacent requires distinct faces");
        let fe = self.faces[f].boundary_edges();
        let ge = self.faces[g].boundary_edges();
        fe.iter().any(|e| ge.binary_search(e).is_ok())
    }

    /// Two faces with simple-cycle boundaries are normally adjacent when
    /// the cycles intersect in exactly one edge and its two endpoints.
    pub fn faces_normally_adjacent(&self, f: usize, g: usize) -> Result<bool, NonCycleBoundary> {
        for id in [f, g] {
            if !self.faces[id].is_simple_cycle() {
                return Err(NonCycleBoundary(id));
            }
        }
        let cf: Vec<usize> = self.faces[f].walk_vertices().collect();
        let cg: Vec<usize> = self.faces[g].walk_vertices().collect();
        Ok(crate::cycle_analysis::cycles_normally_adjacent(&cf, &cg))
    }

    /// Split a boundary walk into simple cycles plus cut edges traversed
    /// twice. Works by peeling a cycle whenever the walk returns to a
    /// vertex currently on the stack; a peeled 2-walk is a cut edge.
    pub fn decompose_boundary(&self, f: usize) -> BoundaryDecomposition {
        let walk: Vec<usize> = self.faces[f].walk_vertices().collect();
        let mut cycles = Vec::new();
        let mut cut_edges = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut peel = |v: usize, stack: &mut Vec<usize>| {
            while let Some(pos) = stack.iter().rposition(|&x| x == v) {
                let piece: Vec<usize> = stack.drain(pos..).collect();
                match piece.len() {
                    2 => cut_edges.push((piece[0].min(piece[1]), piece[0].max(piece[1]))),
                    _ => cycles.push(piece),
                }
            }
        };
        for &v in &walk {
            peel(v, &mut stack);
            stack.push(v);
        }
        // Close the walk back to its starting vertex.
        if let Some(&start) = walk.first() {
            peel(start, &mut stack);
        }
        debug_assert!(stack.is_empty());
        BoundaryDecomposition { cycles, cut_edges }
    }

    /// Induced subgraph on the vertices with `keep[v]`, embedding
    /// inherited. Returns the subgraph and the old id of each new vertex.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (PlaneGraph, Vec<usize>) {
        let old_ids: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let rotation = old_ids
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&u| keep[u])
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        let g = PlaneGraph::build_multi(rotation)
            .expect("deleting vertices preserves a plane embedding");
        (g, old_ids)
    }
}

fn component_labels(rotation: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = next;
        while let Some(v) = stack.pop() {
            for &u in &rotation[v] {
                if label[u] == usize::MAX {
                    label[u] = next;
                    stack.push(u);
                }
            }
        }
        next += 1;
    }
    label
}

/// Connected component vertex sets, sorted by smallest member.
pub fn components(g: &PlaneGraph) -> Vec<Vec<usize>> {
    let labels = component_labels(g.rotation(), g.n());
    let ncomp = labels.iter().copied().max().map_or(0, |c| c + 1);
    let mut out = vec![Vec::new(); ncomp];
    for (v, &c) in labels.iter().enumerate() {
        out[c].push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> PlaneGraph {
        PlaneGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn triangle_basics() {
        let g = triangle();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.size() == 3));
        assert!(g.faces_adjacent(0, 1));
        assert_eq!(g.faces_normally_adjacent(0, 1), Ok(false)); // share 3 edges
    }

    #[test]
    fn asymmetric_rotation_rejected() {
        let err = PlaneGraph::build(vec![vec![1], vec![]]).unwrap_err();
        assert_eq!(err, BuildError::AsymmetricRotation(0, 1));
    }

    #[test]
    fn loop_and_multi_edge_rejected() {
        assert_eq!(
            PlaneGraph::build(vec![vec![0]]).unwrap_err(),
            BuildError::LoopOrMultiEdge(0)
        );
        assert_eq!(
            PlaneGraph::build(vec![vec![1, 1], vec![0, 0]]).unwrap_err(),
            BuildError::LoopOrMultiEdge(0)
        );
    }

    #[test]
    fn path_has_one_face_of_size_2m() {
        let g = PlaneGraph::build(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.face_degree(0), 4);
    }

    #[test]
    fn octahedron_counts() {
        let g = crate::corpus::octahedron();
        assert_eq!(g.n(), 6);
        assert_eq!(g.m(), 12);
        assert_eq!(g.faces().len(), 8);
        assert!(g.faces().iter().all(|f| f.size() == 3));
    }

    #[test]
    fn cube_faces() {
        let g = crate::corpus::generate_family("prism", &[4]).unwrap().remove(0);
        assert_eq!(g.faces().len(), 6);
        assert!(g.faces().iter().all(|f| f.size() == 4));
        // two faces sharing only a vertex do not exist on the cube; all
        // distinct face pairs share an edge or nothing
        for f in 0..6 {
            for h in 0..f {
                if g.faces_adjacent(h, f) {
                    assert_eq!(g.faces_normally_adjacent(h, f), Ok(true));
                }
            }
        }
    }

    #[test]
    fn sum_of_face_sizes_is_2m() {
        for g in [triangle(), crate::corpus::octahedron()] {
            let total: usize = g.faces().iter().map(Face::size).sum();
            assert_eq!(total, 2 * g.m());
        }
    }

    #[test]
    fn bowtie_center_decomposes_into_two_triangles() {
        // two triangles sharing vertex 0
        let g = PlaneGraph::build(vec![
            vec![1, 2, 3, 4],
            vec![2, 0],
            vec![0, 1],
            vec![4, 0],
            vec![0, 3],
        ])
        .unwrap();
        let big = (0..g.faces().len())
            .max_by_key(|&f| g.face_degree(f))
            .unwrap();
        assert_eq!(g.face_degree(big), 6);
        let d = g.decompose_boundary(big);
        assert_eq!(d.cycles.len(), 2);
        assert!(d.cycles.iter().all(|c| c.len() == 3));
        assert!(d.cut_edges.is_empty());
    }

    #[test]
    fn two_triangles_and_bridge() {
        // triangles 0-1-2 and 3-4-5 joined by edge 0-3
        let g = PlaneGraph::build(vec![
            vec![1, 3, 2],
            vec![2, 0],
            vec![0, 1],
            vec![4, 0, 5],
            vec![5, 3],
            vec![3, 4],
        ])
        .unwrap();
        let big = (0..g.faces().len())
            .max_by_key(|&f| g.face_degree(f))
            .unwrap();
        assert_eq!(g.face_degree(big), 8); // cut edge counted twice
        let d = g.decompose_boundary(big);
        assert_eq!(d.cycles.len(), 2);
        assert_eq!(d.cut_edges, vec![(0, 3)]);
    }

    #[test]
    fn disconnected_needs_flag() {
        let rot = vec![vec![1], vec![0], vec![3], vec![2]];
        assert!(matches!(
            PlaneGraph::build(rot.clone()).unwrap_err(),
            BuildError::Disconnected(2)
        ));
        let g = PlaneGraph::build_multi(rot).unwrap();
        assert_eq!(components(&g).len(), 2);
    }

    #[test]
    fn face_trace_is_dart_permutation() {
        let g = crate::corpus::octahedron();
        for f in g.faces() {
            let mut d = f.boundary[0];
            for _ in 0..f.size() {
                d = g.dart_successor(d);
            }
            assert_eq!(d, f.boundary[0]);
        }
    }
}
