//! Detection of the three reducible configurations and the bad-face
//! apparatus (good edge, good path, good face).
//!
//! All matching is face-anchored: candidates are faces of the right
//! size, then degree and adjacency constraints are checked on the host.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cycle_analysis::{self, ClassWitness, CycleSpec};
use crate::plane_graph::PlaneGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConfigKind {
    A,
    B,
    C,
}

/// A detected configuration: a role name for every drawn vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigMatch {
    pub kind: ConfigKind,
    pub roles: BTreeMap<String, usize>,
    pub faces: Vec<usize>,
}

impl ConfigMatch {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.roles.values().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// A 10-face bounded by a 10-cycle of ten distinct 3-vertices, carrying
/// two pendant 3-faces whose apexes are 4⁺-vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadFaceRecord {
    pub face: usize,
    /// v1..v10 with the 3-faces on v1v2 and v3v4.
    pub ring: [usize; 10],
    pub apex1: usize,
    pub apex3: usize,
    pub tri1: usize,
    pub tri3: usize,
    pub good_edge: (usize, usize),
    pub good_path: [usize; 4],
    pub good_face: usize,
    pub good_face_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMode {
    Operational,
    Literal,
}

/// True when the face is bounded by a simple cycle of `len` distinct
/// vertices, all of degree 3 in the host.
fn all_light_ring(g: &PlaneGraph, f: usize, len: usize) -> Option<Vec<usize>> {
    let face = g.face(f);
    if face.size() != len || !face.is_simple_cycle() {
        return None;
    }
    let ring: Vec<usize> = face.walk_vertices().collect();
    ring.iter().all(|&v| g.degree(v) == 3).then_some(ring)
}

/// 3-faces sharing an edge with the given simple-cycle face, together
/// with the shared edge's position on the ring and the apex.
fn pendant_triangles(g: &PlaneGraph, f: usize, ring: &[usize]) -> Vec<(usize, usize, usize)> {
    let len = ring.len();
    let mut out = Vec::new();
    for i in 0..len {
        let (a, b) = (ring[i], ring[(i + 1) % len]);
        let (fa, fb) = g.faces_of_edge(a, b);
        let t = if fa == f { fb } else { fa };
        if t != f && g.face_degree(t) == 3 {
            let apex = g
                .face(t)
                .walk_vertices()
                .find(|&v| v != a && v != b)
                .expect("triangle apex");
            out.push((i, t, apex));
        }
    }
    out
}

/// Fig. 1(a): a 10-face of ten 3-vertices normally adjacent to a 3-face
/// whose apex is also a 3-vertex.
pub fn find_config_a(g: &PlaneGraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for f in 0..g.faces().len() {
        let Some(ring) = all_light_ring(g, f, 10) else {
            continue;
        };
        for (i, t, apex) in pendant_triangles(g, f, &ring) {
            if g.degree(apex) != 3 || ring.contains(&apex) {
                continue;
            }
            let mut roles = BTreeMap::new();
            for j in 0..10 {
                roles.insert(format!("v{}", j + 1), ring[(i + j) % 10]);
            }
            roles.insert("u".into(), apex);
            out.push(ConfigMatch {
                kind: ConfigKind::A,
                roles,
                faces: vec![f, t],
            });
        }
    }
    out
}

/// Fig. 1(c): an 8-face of eight 3-vertices normally adjacent to a
/// 5-face whose three off-shared-edge vertices are 3-vertices.
pub fn find_config_c(g: &PlaneGraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for f in 0..g.faces().len() {
        let Some(ring) = all_light_ring(g, f, 8) else {
            continue;
        };
        for p in 0..g.faces().len() {
            if p == f || g.face_degree(p) != 5 || !g.face(p).is_simple_cycle() {
                continue;
            }
            if g.faces_normally_adjacent(f, p) != Ok(true) {
                continue;
            }
            let pring: Vec<usize> = g.face(p).walk_vertices().collect();
            // rotate the 5-cycle so it starts with the shared edge
            let shared: Vec<usize> = pring
                .iter()
                .copied()
                .filter(|v| ring.contains(v))
                .collect();
            debug_assert_eq!(shared.len(), 2);
            let k = pring
                .iter()
                .position(|v| ring.contains(v))
                .map(|k| {
                    // shared edge endpoints are cyclically consecutive
                    if ring.contains(&pring[(k + 1) % 5]) { k } else { (k + 4) % 5 }
                })
                .unwrap();
            let rot: Vec<usize> = (0..5).map(|j| pring[(k + j) % 5]).collect();
            if !rot[2..].iter().all(|&w| g.degree(w) == 3) {
                continue;
            }
            let i = ring.iter().position(|&v| v == rot[0]).unwrap();
            // orient the 8-ring so v1v2 is the shared edge
            let ring = if ring[(i + 1) % 8] == rot[1] {
                (0..8).map(|j| ring[(i + j) % 8]).collect::<Vec<_>>()
            } else {
                (0..8).map(|j| ring[(i + 8 - j) % 8]).collect::<Vec<_>>()
            };
            let mut roles = BTreeMap::new();
            for (j, &v) in ring.iter().enumerate() {
                roles.insert(format!("v{}", j + 1), v);
            }
            for (j, &w) in rot[2..].iter().enumerate() {
                roles.insert(format!("w{}", j + 1), w);
            }
            out.push(ConfigMatch {
                kind: ConfigKind::C,
                roles,
                faces: vec![f, p],
            });
        }
    }
    out
}

/// All bad faces with their good edge, good path and good face resolved.
pub fn find_bad_faces(g: &PlaneGraph) -> Vec<BadFaceRecord> {
    let mut out = Vec::new();
    for f in 0..g.faces().len() {
        let Some(ring) = all_light_ring(g, f, 10) else {
            continue;
        };
        let tris = pendant_triangles(g, f, &ring);
        for &(i, t1, u1) in &tris {
            // the second 3-face sits on the edge two steps clockwise
            let j = (i + 2) % 10;
            let Some(&(_, t3, u3)) = tris.iter().find(|&&(p, _, _)| p == j) else {
                continue;
            };
            if g.degree(u1) < 4 || g.degree(u3) < 4 {
                continue;
            }
            // label so the first triangle is on v1v2 and the second on v3v4
            let ring10: [usize; 10] = std::array::from_fn(|q| ring[(i + q) % 10]);
            let (v2, v3) = (ring10[1], ring10[2]);
            let (fa, fb) = g.faces_of_edge(v2, v3);
            let good_face = if fa == f { fb } else { fa };
            out.push(BadFaceRecord {
                face: f,
                ring: ring10,
                apex1: u1,
                apex3: u3,
                tri1: t1,
                tri3: t3,
                good_edge: (v2, v3),
                good_path: [u1, v2, v3, u3],
                good_face,
                good_face_degree: g.face_degree(good_face),
            });
        }
    }
    out
}

/// Fig. 1(b). The operational reading is the object the discharging
/// proof excludes: a bad face whose apexes are 4-vertices and whose good
/// face is a 10-face with every other vertex of degree 3. The literal
/// reading is the drawn pattern of two vertex-disjoint 10-cycles joined
/// by two edges.
pub fn find_config_b(g: &PlaneGraph, mode: BMode) -> Vec<ConfigMatch> {
    match mode {
        BMode::Operational => find_config_b_operational(g),
        BMode::Literal => find_config_b_literal(g),
    }
}

fn find_config_b_operational(g: &PlaneGraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for rec in find_bad_faces(g) {
        if g.degree(rec.apex1) != 4 || g.degree(rec.apex3) != 4 {
            continue;
        }
        let gf = rec.good_face;
        if g.face_degree(gf) != 10 || !g.face(gf).is_simple_cycle() {
            continue;
        }
        let gring: Vec<usize> = g.face(gf).walk_vertices().collect();
        if !gring
            .iter()
            .all(|&v| v == rec.apex1 || v == rec.apex3 || g.degree(v) == 3)
        {
            continue;
        }
        let mut roles = BTreeMap::new();
        for (j, &v) in rec.ring.iter().enumerate() {
            roles.insert(format!("v{}", j + 1), v);
        }
        roles.insert("u1".into(), rec.apex1);
        roles.insert("u3".into(), rec.apex3);
        let mut wi = 0;
        for &v in &gring {
            if !rec.good_path.contains(&v) {
                wi += 1;
                roles.insert(format!("w{wi}"), v);
            }
        }
        out.push(ConfigMatch {
            kind: ConfigKind::B,
            roles,
            faces: vec![rec.face, rec.tri1, rec.tri3, gf],
        });
    }
    out
}

fn find_config_b_literal(g: &PlaneGraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    let nf = g.faces().len();
    for f1 in 0..nf {
        let Some(xring) = all_light_ring(g, f1, 10) else {
            continue;
        };
        for f2 in 0..nf {
            if f2 == f1 || g.face_degree(f2) != 10 || !g.face(f2).is_simple_cycle() {
                continue;
            }
            let yring: Vec<usize> = g.face(f2).walk_vertices().collect();
            if yring.iter().any(|v| xring.contains(v)) {
                continue;
            }
            // exactly two connecting edges, ending at the two 4-vertices
            let links: Vec<(usize, usize)> = xring
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| {
                    yring
                        .iter()
                        .enumerate()
                        .filter(move |&(_, &y)| g.has_edge(x, y))
                        .map(move |(j, _)| (i, j))
                })
                .collect();
            if links.len() != 2 {
                continue;
            }
            let ((i3, j3), (i10, j10)) = (links[0], links[1]);
            if g.degree(yring[j3]) != 4 || g.degree(yring[j10]) != 4 {
                continue;
            }
            let deg3_rest = yring
                .iter()
                .enumerate()
                .all(|(j, &y)| j == j3 || j == j10 || g.degree(y) == 3);
            if !deg3_rest {
                continue;
            }
            // attachment points three apart on both rings, matching arcs
            let dx = (10 + i10 - i3) % 10;
            let dy = (10 + j10 - j3) % 10;
            if !((dx == 3 || dx == 7) && (dy == 3 || dy == 7)) {
                continue;
            }
            if f2 < f1 {
                continue; // report each unordered pair once
            }
            let mut roles = BTreeMap::new();
            // x3 at i3, numbered so x3..x10 runs over the long arc
            let step_back = dx == 3; // x10 three steps forward means x4.. runs backward
            for q in 0..10 {
                let idx = if step_back {
                    (i3 + 10 - ((q + 10 - 2) % 10)) % 10
                } else {
                    (i3 + (q + 10 - 2) % 10) % 10
                };
                roles.insert(format!("x{}", q + 1), xring[idx]);
            }
            let ystep_back = dy == 3;
            for q in 0..8 {
                let idx = if ystep_back {
                    (j3 + 10 - q) % 10
                } else {
                    (j3 + q) % 10
                };
                roles.insert(format!("y{}", q + 3), yring[idx]);
            }
            // the two unlabeled vertices between y3 and y10
            for q in 0..2 {
                let idx = if ystep_back {
                    (j3 + 1 + q) % 10
                } else {
                    (j3 + 10 - 1 - q) % 10
                };
                roles.insert(format!("c{}", q + 1), yring[idx]);
            }
            out.push(ConfigMatch {
                kind: ConfigKind::B,
                roles,
                faces: vec![f1, f2],
            });
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub enum LocalStructure {
    MinDegree { vertex: usize, degree: usize },
    Config(ConfigMatch),
    /// Never reached for class members, by the local structure theorem.
    NotFound,
}

#[derive(Debug, Error)]
#[error("graph is not in the forbidden-cycle class: {0:?}")]
pub struct NotInClass(pub ClassWitness);

/// Dichotomy check: a vertex of degree at most 2, or a configuration.
pub fn local_structure(g: &PlaneGraph) -> Result<LocalStructure, NotInClass> {
    cycle_analysis::in_class(g, &CycleSpec::default()).map_err(NotInClass)?;
    local_structure_unchecked(g)
}

/// Same dichotomy without re-running the class check; used by the
/// recursive reducers, which operate on subgraphs of class members.
pub fn local_structure_unchecked(g: &PlaneGraph) -> Result<LocalStructure, NotInClass> {
    if let Some(v) = (0..g.n()).min_by_key(|&v| g.degree(v)) {
        if g.degree(v) <= 2 {
            return Ok(LocalStructure::MinDegree {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    if let Some(m) = find_config_a(g).into_iter().next() {
        return Ok(LocalStructure::Config(m));
    }
    if let Some(m) = find_config_c(g).into_iter().next() {
        return Ok(LocalStructure::Config(m));
    }
    if let Some(m) = find_config_b(g, BMode::Operational).into_iter().next() {
        return Ok(LocalStructure::Config(m));
    }
    Ok(LocalStructure::NotFound)
}
