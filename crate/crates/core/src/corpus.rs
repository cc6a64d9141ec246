//! Deterministic graph-family generators, corpus assembly, and
//! independent brute-force oracles.
//!
//! Most fixed families are produced from straight-line drawings: given
//! coordinates, the clockwise rotation at each vertex is recovered by
//! sorting neighbors by angle. Random plane graphs grow by ear
//! insertion so the embedding is maintained by construction.

use std::collections::HashMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cover_partition::{IFPartition, Transversal, ValuedCover};
use crate::graph::SimpleGraph;
use crate::plane_graph::{Face, PlaneGraph};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters for family {family}: {reason}")]
    BadParams { family: &'static str, reason: &'static str },
    #[error("instance size {0} exceeds oracle bound {1}")]
    SizeBound(usize, usize),
}

/// Plane graph from a straight-line drawing: neighbors sorted clockwise
/// by angle around each vertex.
fn embed(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
    let n = points.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for v in 0..n {
        let (vx, vy) = points[v];
        nbrs[v].sort_by(|&a, &b| {
            let ang = |u: usize| {
                let (ux, uy) = points[u];
                (uy - vy).atan2(ux - vx)
            };
            ang(b).partial_cmp(&ang(a)).unwrap()
        });
    }
    PlaneGraph::build(nbrs).expect("straight-line drawing yields a plane embedding")
}

pub fn cycle_graph(n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    PlaneGraph::build(rot).unwrap()
}

pub fn path_graph(n: usize) -> PlaneGraph {
    assert!(n >= 2);
    let rot = (0..n)
        .map(|i| {
            let mut v = Vec::new();
            if i > 0 {
                v.push(i - 1);
            }
            if i + 1 < n {
                v.push(i + 1);
            }
            v
        })
        .collect();
    PlaneGraph::build(rot).unwrap()
}

/// Two poles joined by three internally disjoint paths of the given
/// edge counts; at most one count may be 1.
pub fn theta_graph(lens: [usize; 3]) -> Result<PlaneGraph, CorpusError> {
    if lens.iter().any(|&l| l == 0) || lens.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(CorpusError::BadParams {
            family: "theta",
            reason: "path lengths must be >= 1 with at most one equal to 1",
        });
    }
    let mut points = vec![(-10.0, 0.0), (10.0, 0.0)];
    let mut edges = Vec::new();
    // the unique length-1 path, if present, sits on the middle line
    let heights: Vec<f64> = {
        let mut hs = vec![6.0, 0.0, -6.0];
        if let Some(p) = lens.iter().position(|&l| l == 1) {
            hs.swap(1, p);
        }
        hs
    };
    for (p, &len) in lens.iter().enumerate() {
        let mut prev = 0;
        for t in 1..len {
            let x = -10.0 + 20.0 * t as f64 / len as f64;
            points.push((x, heights[p]));
            edges.push((prev, points.len() - 1));
            prev = points.len() - 1;
        }
        edges.push((prev, 1));
    }
    Ok(embed(&points, &edges))
}

pub fn prism_graph(k: usize) -> PlaneGraph {
    assert!(k >= 3);
    let mut points = Vec::new();
    let mut edges = Vec::new();
    for layer in 0..2 {
        let r = if layer == 0 { 4.0 } else { 2.0 };
        for i in 0..k {
            let a = std::f64::consts::TAU * i as f64 / k as f64;
            points.push((r * a.cos(), r * a.sin()));
        }
    }
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    embed(&points, &edges)
}

pub fn wheel_graph(k: usize) -> PlaneGraph {
    assert!(k >= 3);
    let mut points = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..k {
        let a = std::f64::consts::TAU * i as f64 / k as f64;
        points.push((a.cos(), a.sin()));
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + (i + 1) % k));
    }
    embed(&points, &edges)
}

pub fn grid_graph(rows: usize, cols: usize) -> PlaneGraph {
    assert!(rows >= 1 && cols >= 1 && rows * cols >= 2);
    let idx = |r: usize, c: usize| r * cols + c;
    let mut points = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            points.push((c as f64, r as f64));
            if c + 1 < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    embed(&points, &edges)
}

/// The dodecahedral graph: Schlegel diagram with four concentric
/// 5-vertex layers.
pub fn dodecahedral_graph() -> PlaneGraph {
    let mut points = Vec::new();
    let layer = |r: f64, off: f64, points: &mut Vec<(f64, f64)>| {
        for i in 0..5 {
            let a = std::f64::consts::TAU * (i as f64 + off) / 5.0 + std::f64::consts::FRAC_PI_2;
            points.push((r * a.cos(), r * a.sin()));
        }
    };
    layer(6.0, 0.0, &mut points);
    layer(3.6, 0.0, &mut points);
    layer(2.2, 0.5, &mut points);
    layer(1.2, 0.5, &mut points);
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer ring
        edges.push((i, 5 + i)); // spoke
        edges.push((10 + i, 5 + i)); // inward left
        edges.push((10 + i, 5 + (i + 1) % 5)); // inward right
        edges.push((15 + i, 15 + (i + 1) % 5)); // inner ring
        edges.push((15 + i, 10 + i)); // inner spoke
    }
    embed(&points, &edges)
}

pub fn octahedron() -> PlaneGraph {
    let mut points = Vec::new();
    for i in 0..3 {
        let a = std::f64::consts::TAU * i as f64 / 3.0 + std::f64::consts::FRAC_PI_2;
        points.push((3.0 * a.cos(), 3.0 * a.sin()));
    }
    for i in 0..3 {
        let a = std::f64::consts::TAU * (i as f64 + 0.5) / 3.0 + std::f64::consts::FRAC_PI_2;
        points.push((a.cos(), a.sin()));
    }
    let mut edges = Vec::new();
    for i in 0..3 {
        edges.push((i, (i + 1) % 3));
        edges.push((3 + i, 3 + (i + 1) % 3));
        edges.push((3 + i, i));
        edges.push((3 + i, (i + 1) % 3));
    }
    embed(&points, &edges)
}

pub fn k4_plane() -> PlaneGraph {
    let mut points = vec![(0.0, 0.0)];
    for i in 0..3 {
        let a = std::f64::consts::TAU * i as f64 / 3.0;
        points.push((2.0 * a.cos(), 2.0 * a.sin()));
    }
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
    embed(&points, &edges)
}

/// Grow a plane graph from C5 by inserting random ears (0 to 2 interior
/// vertices) into faces. Fully determined by the seed.
pub fn ear_random(seed: u64, steps: usize) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rotation: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 1) % 5, (i + 4) % 5]).collect();
    for _ in 0..steps {
        let g = PlaneGraph::build(rotation.clone()).unwrap();
        for _attempt in 0..40 {
            let f = rng.gen_range(0..g.faces().len());
            let sz = g.face_degree(f);
            let i = rng.gen_range(0..sz);
            let j = rng.gen_range(0..sz);
            let a = g.face(f).boundary[i].0;
            let b = g.face(f).boundary[j].0;
            if a == b {
                continue;
            }
            let interior = rng.gen_range(0..=2usize);
            if interior == 0 && g.has_edge(a, b) {
                continue;
            }
            insert_ear(&mut rotation, g.face(f), i, j, interior);
            break;
        }
    }
    PlaneGraph::build(rotation).expect("ear insertion preserves the embedding")
}

/// Splice an ear with `interior` new vertices between the face-walk
/// occurrences `i` (at vertex a) and `j` (at vertex b). The new
/// neighbor enters rotation(a) immediately after the outgoing walk
/// neighbor, which keeps the ear inside this face.
fn insert_ear(rotation: &mut Vec<Vec<usize>>, face: &Face, i: usize, j: usize, interior: usize) {
    let (a, ya) = face.boundary[i];
    let (b, yb) = face.boundary[j];
    let base = rotation.len();
    let at_a = if interior == 0 { b } else { base };
    let at_b = if interior == 0 { a } else { base + interior - 1 };
    let pa = rotation[a].iter().position(|&x| x == ya).unwrap();
    rotation[a].insert(pa + 1, at_a);
    let pb = rotation[b].iter().position(|&x| x == yb).unwrap();
    rotation[b].insert(pb + 1, at_b);
    for t in 0..interior {
        let prev = if t == 0 { a } else { base + t - 1 };
        let next = if t + 1 == interior { b } else { base + t + 1 };
        rotation.push(vec![prev, next]);
    }
}

/// Deterministic family generator.
pub fn generate_family(name: &str, params: &[u64]) -> Result<Vec<PlaneGraph>, CorpusError> {
    let p = |i: usize| params.get(i).copied().unwrap_or(0) as usize;
    let need = |k: usize, family: &'static str| {
        if params.len() == k {
            Ok(())
        } else {
            Err(CorpusError::BadParams { family, reason: "wrong parameter count" })
        }
    };
    match name {
        "cycle" => {
            need(1, "cycle")?;
            if p(0) < 3 {
                return Err(CorpusError::BadParams { family: "cycle", reason: "need n >= 3" });
            }
            Ok(vec![cycle_graph(p(0))])
        }
        "path" => {
            need(1, "path")?;
            if p(0) < 2 {
                return Err(CorpusError::BadParams { family: "path", reason: "need n >= 2" });
            }
            Ok(vec![path_graph(p(0))])
        }
        "theta" => {
            need(3, "theta")?;
            Ok(vec![theta_graph([p(0), p(1), p(2)])?])
        }
        "prism" => {
            need(1, "prism")?;
            if p(0) < 3 {
                return Err(CorpusError::BadParams { family: "prism", reason: "need k >= 3" });
            }
            Ok(vec![prism_graph(p(0))])
        }
        "wheel" => {
            need(1, "wheel")?;
            if p(0) < 3 {
                return Err(CorpusError::BadParams { family: "wheel", reason: "need k >= 3" });
            }
            Ok(vec![wheel_graph(p(0))])
        }
        "grid" => {
            need(2, "grid")?;
            if p(0) < 1 || p(1) < 1 || p(0) * p(1) < 2 {
                return Err(CorpusError::BadParams { family: "grid", reason: "need >= 2 vertices" });
            }
            Ok(vec![grid_graph(p(0), p(1))])
        }
        "dodecahedral" => {
            need(0, "dodecahedral")?;
            Ok(vec![dodecahedral_graph()])
        }
        "ear_random" => {
            need(2, "ear_random")?;
            Ok(vec![ear_random(params[0], p(1))])
        }
        other => Err(CorpusError::UnknownFamily(other.to_string())),
    }
}

/// A corpus entry; regeneration from the provenance string is
/// bit-identical.
#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub id: String,
    pub provenance: String,
    pub graph: PlaneGraph,
}

fn item(family: &str, params: &[u64]) -> CorpusItem {
    let graph = generate_family(family, params).unwrap().remove(0);
    let prov = format!(
        "{family}({})",
        params.iter().map(u64::to_string).join(",")
    );
    CorpusItem { id: prov.clone(), provenance: prov, graph }
}

/// The standard sweep: over 1000 connected plane graphs with n <= 24.
pub fn standard_corpus() -> Vec<CorpusItem> {
    let mut out = Vec::new();
    for n in 3..=24u64 {
        out.push(item("cycle", &[n]));
    }
    for n in 2..=24u64 {
        out.push(item("path", &[n]));
    }
    for a in 1..=5u64 {
        for b in a.max(2)..=6 {
            for c in b..=7 {
                if a + b + c - 1 <= 24 && !(a == 1 && b == 1) {
                    out.push(item("theta", &[a, b, c]));
                }
            }
        }
    }
    for k in 3..=12u64 {
        out.push(item("prism", &[k]));
        out.push(item("wheel", &[k]));
    }
    for r in 2..=4u64 {
        for c in r..=8 {
            if r * c <= 24 {
                out.push(item("grid", &[r, c]));
            }
        }
    }
    out.push(item("dodecahedral", &[]));
    out.push(CorpusItem {
        id: "octahedron".into(),
        provenance: "octahedron".into(),
        graph: octahedron(),
    });
    out.push(CorpusItem {
        id: "k4".into(),
        provenance: "k4".into(),
        graph: k4_plane(),
    });
    for (i, g) in crate::gadgets::all_hosts().into_iter().enumerate() {
        out.push(CorpusItem {
            id: format!("host{i}"),
            provenance: format!("host{i}"),
            graph: g,
        });
    }
    for seed in 0..900u64 {
        let steps = 3 + (seed % 7);
        out.push(item("ear_random", &[seed, steps]));
    }
    out
}

/// One provenance line per item.
pub fn manifest(items: &[CorpusItem]) -> String {
    items
        .iter()
        .map(|it| format!("{}\t{}\tn={}\tm={}", it.id, it.provenance, it.graph.n(), it.graph.m()))
        .join("\n")
}

pub const ORACLE_IF_BOUND: usize = 16;
pub const ORACLE_WD_BOUND: usize = 12;
pub const ORACLE_CYCLES_BOUND: usize = 12;

/// Exhaustive 2^n search for an independent-set/forest partition.
pub fn oracle_if_partition(g: &PlaneGraph) -> Result<Option<IFPartition>, CorpusError> {
    let n = g.n();
    if n > ORACLE_IF_BOUND {
        return Err(CorpusError::SizeBound(n, ORACLE_IF_BOUND));
    }
    'mask: for mask in 0u32..(1u32 << n) {
        for &(u, v) in g.edges() {
            if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
                continue 'mask;
            }
        }
        if forest_on_complement(g, mask) {
            let independent = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let forest = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            return Ok(Some(IFPartition { independent, forest }));
        }
    }
    Ok(None)
}

/// Acyclicity of the subgraph induced on the zero bits, by counting
/// edges against components.
fn forest_on_complement(g: &PlaneGraph, mask: u32) -> bool {
    let n = g.n();
    let in_f = |v: usize| mask >> v & 1 == 0;
    let mut seen = vec![false; n];
    let mut comps = 0usize;
    let mut verts = 0usize;
    for s in 0..n {
        if !in_f(s) || seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            verts += 1;
            for &u in g.neighbors(v) {
                if in_f(u) && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| in_f(u) && in_f(v))
        .count();
    edges + comps == verts
}

/// Independent full game-tree search: can the graph be emptied with
/// constant budget d?
pub fn oracle_wd(g: &SimpleGraph, d: i64) -> Result<bool, CorpusError> {
    let n = g.n();
    if n > ORACLE_WD_BOUND {
        return Err(CorpusError::SizeBound(n, ORACLE_WD_BOUND));
    }
    let mut memo: HashMap<(u32, Vec<i64>), bool> = HashMap::new();
    let alive = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(wd_search(g, alive, &vec![d; n], &mut memo))
}

fn wd_search(g: &SimpleGraph, alive: u32, f: &Vec<i64>, memo: &mut HashMap<(u32, Vec<i64>), bool>) -> bool {
    if alive == 0 {
        return true;
    }
    if let Some(&r) = memo.get(&(alive, f.clone())) {
        return r;
    }
    let n = g.n();
    let live = |v: usize| alive >> v & 1 == 1;
    let mut win = false;
    'outer: for u in 0..n {
        if !live(u) {
            continue;
        }
        // Delete(u)
        if g.neighbors(u).iter().all(|&v| !live(v) || f[v] >= 1) {
            let mut f2 = f.clone();
            for &v in g.neighbors(u) {
                if live(v) {
                    f2[v] -= 1;
                }
            }
            if wd_search(g, alive & !(1 << u), &f2, memo) {
                win = true;
                break 'outer;
            }
        }
        // DeleteSave(u, w)
        for &w in g.neighbors(u) {
            if !live(w) || f[u] <= f[w] {
                continue;
            }
            if g.neighbors(u).iter().any(|&v| v != w && live(v) && f[v] < 1) {
                continue;
            }
            let mut f2 = f.clone();
            for &v in g.neighbors(u) {
                if v != w && live(v) {
                    f2[v] -= 1;
                }
            }
            if wd_search(g, alive & !(1 << u), &f2, memo) {
                win = true;
                break 'outer;
            }
        }
    }
    memo.insert((alive, f.clone()), win);
    win
}

/// Enumerate all transversals and verify each directly against the
/// every-subgraph definition of strict f-degeneracy.
pub fn oracle_sfdt(h: &ValuedCover) -> Result<Option<Transversal>, CorpusError> {
    let n = h.cover.base.n();
    let s = h.cover.s;
    let count = (s as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if n > 20 || count > 1 << 20 {
        return Err(CorpusError::SizeBound(n, 20));
    }
    let mut choice = vec![0usize; n];
    loop {
        if sfdt_by_definition(h, &choice) {
            return Ok(Some(Transversal(choice)));
        }
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < s {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(None);
        }
    }
}

fn sfdt_by_definition(h: &ValuedCover, choice: &[usize]) -> bool {
    let n = h.cover.base.n();
    if n == 0 {
        return true;
    }
    'subset: for sub in 1u32..(1u32 << n) {
        for v in 0..n {
            if sub >> v & 1 == 0 {
                continue;
            }
            let deg = h
                .cover
                .base
                .neighbors(v)
                .iter()
                .filter(|&&u| sub >> u & 1 == 1 && h.cover.matched(v, u, choice[v], choice[u]))
                .count() as i64;
            if deg < h.f[v][choice[v]] {
                continue 'subset;
            }
        }
        return false;
    }
    true
}

/// Count simple cycles of the given length by vertex-subset
/// enumeration.
pub fn oracle_cycles(g: &PlaneGraph, len: usize) -> Result<usize, CorpusError> {
    let n = g.n();
    if n > ORACLE_CYCLES_BOUND {
        return Err(CorpusError::SizeBound(n, ORACLE_CYCLES_BOUND));
    }
    let mut count = 0;
    for subset in (0..n).combinations(len) {
        // the subset induces a cycle iff every vertex has exactly two
        // neighbors inside and the induced subgraph is connected
        let degs_ok = subset.iter().all(|&v| {
            g.neighbors(v).iter().filter(|&&u| subset.contains(&u)).count() == 2
        });
        if !degs_ok {
            continue;
        }
        let mut seen = vec![subset[0]];
        let mut stack = vec![subset[0]];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if subset.contains(&u) && !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        if seen.len() == len {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_counts() {
        let c5 = cycle_graph(5);
        assert_eq!((c5.n(), c5.m(), c5.faces().len()), (5, 5, 2));
        let p3 = prism_graph(3);
        assert_eq!((p3.n(), p3.m(), p3.faces().len()), (6, 9, 5));
        let w5 = wheel_graph(5);
        assert_eq!((w5.n(), w5.m(), w5.faces().len()), (6, 10, 6));
        let t = theta_graph([2, 2, 3]).unwrap();
        assert_eq!((t.n(), t.m(), t.faces().len()), (6, 7, 3));
        let g = grid_graph(3, 4);
        assert_eq!((g.n(), g.m(), g.faces().len()), (12, 17, 7));
        let d = dodecahedral_graph();
        assert_eq!((d.n(), d.m(), d.faces().len()), (20, 30, 12));
        assert!(d.faces().iter().all(|f| f.size() == 5));
        assert!((0..20).all(|v| d.degree(v) == 3));
    }

    #[test]
    fn theta_rejects_double_edge() {
        assert!(theta_graph([1, 1, 3]).is_err());
    }

    #[test]
    fn ear_random_is_deterministic_and_planar() {
        let a = ear_random(7, 12);
        let b = ear_random(7, 12);
        assert_eq!(a.rotation(), b.rotation());
        assert!(a.n() > 5);
        // build() already enforced Euler; spot-check face sizes
        let total: usize = a.faces().iter().map(|f| f.size()).sum();
        assert_eq!(total, 2 * a.m());
    }

    #[test]
    fn unknown_family_rejected() {
        assert!(matches!(
            generate_family("moebius", &[5]),
            Err(CorpusError::UnknownFamily(_))
        ));
    }

    #[test]
    fn oracle_cycle_counts() {
        assert_eq!(oracle_cycles(&k4_plane(), 3).unwrap(), 4);
        assert_eq!(oracle_cycles(&cycle_graph(6), 6).unwrap(), 1);
        assert_eq!(oracle_cycles(&cycle_graph(6), 3).unwrap(), 0);
    }

    #[test]
    fn oracle_wd_k3() {
        let k3 = SimpleGraph::complete(3);
        assert!(!oracle_wd(&k3, 1).unwrap());
        assert!(oracle_wd(&k3, 2).unwrap());
    }

    #[test]
    fn oracle_if_c5_and_k4() {
        assert!(oracle_if_partition(&cycle_graph(5)).unwrap().is_some());
        // K4: any independent set has size <= 1, remainder contains a
        // triangle, so no partition exists
        assert!(oracle_if_partition(&k4_plane()).unwrap().is_none());
    }
}
