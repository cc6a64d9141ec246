//! Covers, transversals, strictly f-degenerate transversals, and the
//! constructive independent-set/forest partitioner.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::configurations::{self, LocalStructure, NotInClass};
use crate::graph::SimpleGraph;
use crate::plane_graph::{components, PlaneGraph};

pub const SFDT_BOUND: usize = 14;

/// A cover: one independent layer of `s` vertices per base vertex, with
/// a (possibly partial) matching across each base edge.
#[derive(Debug, Clone)]
pub struct Cover {
    pub base: SimpleGraph,
    pub s: usize,
    /// per base edge (u, v) with u < v: matched index pairs (i, j)
    pub matchings: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
}

impl Cover {
    /// `s` aligned copies of the base graph: (u,i) ~ (v,j) iff uv is an
    /// edge and i = j.
    pub fn canonical(base: SimpleGraph, s: usize) -> Self {
        assert!(s >= 1);
        let matchings = base
            .edges()
            .into_iter()
            .map(|e| (e, (0..s).map(|i| (i, i)).collect()))
            .collect();
        Cover { base, s, matchings }
    }

    pub fn cover_vertex_count(&self) -> usize {
        self.base.n() * self.s
    }

    pub fn matched(&self, u: usize, v: usize, i: usize, j: usize) -> bool {
        let (key, pair) = if u < v { ((u, v), (i, j)) } else { ((v, u), (j, i)) };
        self.matchings
            .get(&key)
            .is_some_and(|m| m.contains(&pair))
    }
}

/// Budgets on cover vertices: `f[v][i]` for cover vertex (v, i).
#[derive(Debug, Clone)]
pub struct ValuedCover {
    pub cover: Cover,
    pub f: Vec<Vec<i64>>,
}

impl ValuedCover {
    pub fn canonical_12(base: SimpleGraph) -> Self {
        let n = base.n();
        ValuedCover {
            cover: Cover::canonical(base, 2),
            f: vec![vec![1, 2]; n],
        }
    }
}

/// One chosen layer index per base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transversal(pub Vec<usize>);

/// Vertex split into an independent set and a forest-inducing set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IFPartition {
    pub independent: Vec<usize>,
    pub forest: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error(transparent)]
    NotInClass(#[from] NotInClass),
    #[error("no transversal extension for a {0:?} reduction")]
    PartitionFailed(configurations::ConfigKind),
    #[error("local structure theorem violated: no reduction available")]
    NoReduction,
    #[error("cover has {0} base vertices, above the bound {1}")]
    SizeBound(usize, usize),
}

/// Decide strict f-degeneracy of the transversal's induced cover
/// subgraph by greedy peeling: repeatedly remove any vertex whose
/// current degree is below its budget. Peeling order does not matter;
/// removability is monotone under vertex removal.
pub fn is_strictly_f_degenerate(h: &ValuedCover, t: &Transversal) -> bool {
    let n = h.cover.base.n();
    assert_eq!(t.0.len(), n);
    let mut alive = vec![true; n];
    let mut deg = vec![0usize; n];
    for v in 0..n {
        for &u in h.cover.base.neighbors(v) {
            if h.cover.matched(v, u, t.0[v], t.0[u]) {
                deg[v] += 1;
            }
        }
    }
    let mut removed = 0;
    loop {
        let mut progressed = false;
        for v in 0..n {
            if alive[v] && (deg[v] as i64) < h.f[v][t.0[v]] {
                alive[v] = false;
                removed += 1;
                progressed = true;
                for &u in h.cover.base.neighbors(v) {
                    if alive[u] && h.cover.matched(v, u, t.0[v], t.0[u]) {
                        deg[u] -= 1;
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    removed == n
}

/// Exhaustive strictly f-degenerate transversal search.
pub fn find_sfdt(h: &ValuedCover) -> Result<Option<Transversal>, PartitionError> {
    let n = h.cover.base.n();
    if n > SFDT_BOUND {
        return Err(PartitionError::SizeBound(n, SFDT_BOUND));
    }
    let s = h.cover.s;
    let mut choice = vec![0usize; n];
    loop {
        let t = Transversal(choice.clone());
        if is_strictly_f_degenerate(h, &t) {
            return Ok(Some(t));
        }
        // odometer
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

/// Check the partition invariants exactly.
pub fn validate_partition(g: &PlaneGraph, p: &IFPartition) -> bool {
    let n = g.n();
    let mut side = vec![None; n];
    for &v in &p.independent {
        if v >= n || side[v].is_some() {
            return false;
        }
        side[v] = Some(0);
    }
    for &v in &p.forest {
        if v >= n || side[v].is_some() {
            return false;
        }
        side[v] = Some(1);
    }
    if side.iter().any(Option::is_none) {
        return false;
    }
    for &(u, v) in g.edges() {
        if side[u] == Some(0) && side[v] == Some(0) {
            return false;
        }
    }
    // forest check by union-find on F-internal edges
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    for &(u, v) in g.edges() {
        if side[u] == Some(1) && side[v] == Some(1) {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
    }
    true
}

/// Constructive independent-set/forest partition of a class member via
/// the canonical width-2 cover with budgets (1, 2).
pub fn partition_if(g: &PlaneGraph) -> Result<IFPartition, PartitionError> {
    crate::cycle_analysis::in_class(g, &crate::cycle_analysis::CycleSpec::default())
        .map_err(NotInClass)?;
    let mut level = vec![usize::MAX; g.n()];
    assign(g, &(0..g.n()).collect::<Vec<_>>(), &mut level)?;
    let independent = (0..g.n()).filter(|&v| level[v] == 0).collect();
    let forest = (0..g.n()).filter(|&v| level[v] == 1).collect();
    Ok(IFPartition { independent, forest })
}

const BUDGET: [i64; 2] = [1, 2];

/// Recursively assign a layer (0 = independent, 1 = forest) to each of
/// `ids`, writing into `level` (indexed by original vertex id).
fn assign(g: &PlaneGraph, ids: &[usize], level: &mut [usize]) -> Result<(), PartitionError> {
    if g.n() == 0 {
        return Ok(());
    }
    let comps = components(g);
    if comps.len() > 1 {
        for comp in comps {
            let mut keep = vec![false; g.n()];
            for &v in &comp {
                keep[v] = true;
            }
            let (sub, old) = g.induced_subgraph(&keep);
            let ids_sub: Vec<usize> = old.iter().map(|&v| ids[v]).collect();
            assign(&sub, &ids_sub, level)?;
        }
        return Ok(());
    }
    match configurations::local_structure_unchecked(g)? {
        LocalStructure::MinDegree { vertex, .. } => {
            let mut keep = vec![true; g.n()];
            keep[vertex] = false;
            let (sub, old) = g.induced_subgraph(&keep);
            let ids_sub: Vec<usize> = old.iter().map(|&v| ids[v]).collect();
            assign(&sub, &ids_sub, level)?;
            // pigeonhole: some layer still has budget for this vertex
            let mut used = [0i64; 2];
            for &u in g.neighbors(vertex) {
                used[level[ids[u]]] += 1;
            }
            let pick = (0..2)
                .find(|&i| used[i] < BUDGET[i])
                .expect("degree < total budget guarantees a free layer");
            level[ids[vertex]] = pick;
            Ok(())
        }
        LocalStructure::Config(m) => {
            let removable = m.vertices();
            let mut keep = vec![true; g.n()];
            for &v in &removable {
                keep[v] = false;
            }
            let (sub, old) = g.induced_subgraph(&keep);
            let ids_sub: Vec<usize> = old.iter().map(|&v| ids[v]).collect();
            assign(&sub, &ids_sub, level)?;
            extend_over_config(g, &removable, ids, level)
                .ok_or(PartitionError::PartitionFailed(m.kind))
        }
        LocalStructure::NotFound => Err(PartitionError::NoReduction),
    }
}

/// Exhaustively extend the partial transversal over a configuration's
/// vertex set against the residual budgets: each cover vertex (r, i)
/// loses one unit per already-decided outside neighbor at layer i.
fn extend_over_config(
    g: &PlaneGraph,
    removable: &[usize],
    ids: &[usize],
    level: &mut [usize],
) -> Option<()> {
    let k = removable.len();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in removable.iter().enumerate() {
        local[v] = i;
    }
    let mut residual = vec![[BUDGET[0], BUDGET[1]]; k];
    for (i, &v) in removable.iter().enumerate() {
        for &u in g.neighbors(v) {
            if local[u] == usize::MAX {
                residual[i][level[ids[u]]] -= 1;
            }
        }
    }
    let sub_edges: Vec<(usize, usize)> = removable
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            g.neighbors(v)
                .iter()
                .filter_map(|&u| (local[u] != usize::MAX && i < local[u]).then_some((i, local[u])))
                .collect::<Vec<_>>()
        })
        .collect();
    let sub = SimpleGraph::from_edges(k, &sub_edges);
    let mut choice = vec![usize::MAX; k];
    if search_extension(&sub, &residual, &mut choice, 0) {
        for (i, &v) in removable.iter().enumerate() {
            level[ids[v]] = choice[i];
        }
        Some(())
    } else {
        None
    }
}

fn search_extension(
    sub: &SimpleGraph,
    residual: &[[i64; 2]],
    choice: &mut Vec<usize>,
    next: usize,
) -> bool {
    let k = sub.n();
    if next == k {
        return peels(sub, residual, choice);
    }
    for i in 0..2 {
        choice[next] = i;
        // cheap prune: layer budget must cover decided same-layer nbrs
        let used = sub.neighbors(next)
            .iter()
            .filter(|&&u| u < next && choice[u] == i)
            .count() as i64;
        let same_layer_cap = residual[next][i]
            + sub.neighbors(next).iter().filter(|&&u| u > next).count() as i64;
        if used <= same_layer_cap && search_extension(sub, residual, choice, next + 1) {
            return true;
        }
    }
    choice[next] = usize::MAX;
    false
}

/// Peel the configuration's chosen cover vertices against the residual
/// budgets; success means the whole transversal stays strictly
/// f-degenerate (outside neighbors are already accounted for).
fn peels(sub: &SimpleGraph, residual: &[[i64; 2]], choice: &[usize]) -> bool {
    let k = sub.n();
    let mut alive = vec![true; k];
    let mut deg = vec![0i64; k];
    for v in 0..k {
        deg[v] = sub
            .neighbors(v)
            .iter()
            .filter(|&&u| choice[u] == choice[v])
            .count() as i64;
    }
    let mut removed = 0;
    loop {
        let mut progressed = false;
        for v in 0..k {
            if alive[v] && deg[v] < residual[v][choice[v]] {
                alive[v] = false;
                removed += 1;
                progressed = true;
                for &u in sub.neighbors(v) {
                    if alive[u] && choice[u] == choice[v] {
                        deg[u] -= 1;
                    }
                }
            }
        }
        if !progressed {
            return removed == k;
        }
    }
}
