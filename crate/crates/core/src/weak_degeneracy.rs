//! The Delete/DeleteSave elimination game: exact weak degeneracy on
//! small graphs and a constructive weakly-2-degenerate certifier for
//! class members.
//!
//! Delete(u) removes u and decrements every neighbor's budget; it is
//! legal when no budget goes negative. DeleteSave(u, w) requires the
//! edge uw and f(u) > f(w); it removes u and decrements every neighbor
//! except w.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::configurations::{self, LocalStructure, NotInClass};
use crate::graph::SimpleGraph;
use crate::plane_graph::{components, PlaneGraph};

pub const SEARCH_BOUND: usize = 14;

/// Per-vertex nonnegative budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficitFn(pub Vec<i64>);

impl DeficitFn {
    pub fn constant(n: usize, d: i64) -> Self {
        assert!(d >= 0);
        DeficitFn(vec![d; n])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EliminationStep {
    Delete(usize),
    DeleteSave(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationCertificate {
    pub initial: DeficitFn,
    pub steps: Vec<EliminationStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("step {step}: deleting {vertex} drives a neighbor's budget negative")]
    IllegalStep { step: usize, vertex: usize },
    #[error("step {step}: DeleteSave({u}, {w}) requires f({u}) > f({w})")]
    SaveNotGreater { step: usize, u: usize, w: usize },
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} already removed")]
    AlreadyRemoved(usize),
    #[error("certificate does not cover every vertex exactly once")]
    IncompleteCover,
    #[error("graph has {0} vertices, above the search bound {1}")]
    SizeBound(usize, usize),
}

/// Mutable game position over a fixed host graph.
#[derive(Debug, Clone)]
pub struct GameState<'a> {
    graph: &'a SimpleGraph,
    pub alive: Vec<bool>,
    pub deficit: Vec<i64>,
}

impl<'a> GameState<'a> {
    pub fn new(graph: &'a SimpleGraph, f: &DeficitFn) -> Self {
        assert_eq!(f.0.len(), graph.n());
        assert!(f.0.iter().all(|&x| x >= 0), "deficits must be nonnegative");
        GameState {
            graph,
            alive: vec![true; graph.n()],
            deficit: f.0.clone(),
        }
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn check_alive(&self, v: usize, step: usize) -> Result<(), GameError> {
        let _ = step;
        if !self.alive[v] {
            return Err(GameError::AlreadyRemoved(v));
        }
        Ok(())
    }

    /// Remove u, decrementing every live neighbor except `save`.
    pub fn apply(&mut self, s: EliminationStep, step: usize) -> Result<(), GameError> {
        match s {
            EliminationStep::Delete(u) => {
                self.check_alive(u, step)?;
                for &v in self.graph.neighbors(u) {
                    if self.alive[v] && self.deficit[v] == 0 {
                        return Err(GameError::IllegalStep { step, vertex: u });
                    }
                }
                self.alive[u] = false;
                for &v in self.graph.neighbors(u) {
                    if self.alive[v] {
                        self.deficit[v] -= 1;
                    }
                }
            }
            EliminationStep::DeleteSave(u, w) => {
                self.check_alive(u, step)?;
                self.check_alive(w, step)?;
                if !self.graph.has_edge(u, w) {
                    return Err(GameError::NotAnEdge(u, w));
                }
                if self.deficit[u] <= self.deficit[w] {
                    return Err(GameError::SaveNotGreater { step, u, w });
                }
                for &v in self.graph.neighbors(u) {
                    if v != w && self.alive[v] && self.deficit[v] == 0 {
                        return Err(GameError::IllegalStep { step, vertex: u });
                    }
                }
                self.alive[u] = false;
                for &v in self.graph.neighbors(u) {
                    if v != w && self.alive[v] {
                        self.deficit[v] -= 1;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Apply one Delete to a fresh state, reporting the result.
pub fn apply_delete(
    g: &SimpleGraph,
    f: &DeficitFn,
    u: usize,
) -> Result<(Vec<bool>, DeficitFn), GameError> {
    let mut st = GameState::new(g, f);
    st.apply(EliminationStep::Delete(u), 0)?;
    Ok((st.alive, DeficitFn(st.deficit)))
}

/// Apply one DeleteSave to a fresh state, reporting the result.
pub fn apply_delete_save(
    g: &SimpleGraph,
    f: &DeficitFn,
    u: usize,
    w: usize,
) -> Result<(Vec<bool>, DeficitFn), GameError> {
    let mut st = GameState::new(g, f);
    st.apply(EliminationStep::DeleteSave(u, w), 0)?;
    Ok((st.alive, DeficitFn(st.deficit)))
}

/// Replay a certificate from scratch, checking legality at every step
/// and that the graph is emptied.
pub fn replay(g: &SimpleGraph, cert: &EliminationCertificate) -> Result<(), GameError> {
    let mut st = GameState::new(g, &cert.initial);
    for (i, &s) in cert.steps.iter().enumerate() {
        st.apply(s, i)?;
    }
    if st.live_count() != 0 {
        return Err(GameError::IncompleteCover);
    }
    Ok(())
}

fn pack_state(alive: &[bool], deficit: &[i64]) -> (u32, u64) {
    let mut mask = 0u32;
    let mut packed = 0u64;
    for (v, &a) in alive.iter().enumerate() {
        if a {
            mask |= 1 << v;
            debug_assert!(deficit[v] < 16);
            packed |= (deficit[v] as u64) << (4 * v);
        }
    }
    (mask, packed)
}

/// Exhaustive game search with memoization on (live set, budgets).
/// Returns a replay-valid certificate when the position is winnable.
pub fn is_weakly_f_degenerate(
    g: &SimpleGraph,
    f: &DeficitFn,
) -> Result<Option<EliminationCertificate>, GameError> {
    is_weakly_f_degenerate_bounded(g, f, SEARCH_BOUND)
}

pub fn is_weakly_f_degenerate_bounded(
    g: &SimpleGraph,
    f: &DeficitFn,
    bound: usize,
) -> Result<Option<EliminationCertificate>, GameError> {
    if g.n() > bound {
        return Err(GameError::SizeBound(g.n(), bound));
    }
    if f.0.iter().any(|&x| x >= 16) {
        // budgets above any vertex degree are equivalent to the degree
        let capped = DeficitFn(
            (0..g.n())
                .map(|v| f.0[v].min(g.degree(v) as i64))
                .collect(),
        );
        return is_weakly_f_degenerate_bounded(g, &capped, bound);
    }
    let mut losing: HashSet<(u32, u64)> = HashSet::new();
    let mut st = GameState::new(g, f);
    let mut steps = Vec::new();
    if search(&mut st, &mut losing, &mut steps) {
        let cert = EliminationCertificate {
            initial: f.clone(),
            steps,
        };
        debug_assert_eq!(replay(g, &cert), Ok(()));
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

fn search(
    st: &mut GameState<'_>,
    losing: &mut HashSet<(u32, u64)>,
    steps: &mut Vec<EliminationStep>,
) -> bool {
    if st.live_count() == 0 {
        return true;
    }
    let key = pack_state(&st.alive, &st.deficit);
    if losing.contains(&key) {
        return false;
    }
    let n = st.alive.len();
    let mut moves: Vec<EliminationStep> = Vec::new();
    for u in 0..n {
        if !st.alive[u] {
            continue;
        }
        moves.push(EliminationStep::Delete(u));
        for &w in st.graph.neighbors(u) {
            if st.alive[w] && st.deficit[u] > st.deficit[w] {
                moves.push(EliminationStep::DeleteSave(u, w));
            }
        }
    }
    for mv in moves {
        let saved = st.clone();
        if st.apply(mv, steps.len()).is_ok() {
            steps.push(mv);
            if search(st, losing, steps) {
                return true;
            }
            steps.pop();
        }
        *st = saved;
    }
    losing.insert(key);
    false
}

/// Least constant budget that wins the game.
pub fn weak_degeneracy(g: &SimpleGraph) -> Result<i64, GameError> {
    if g.n() > SEARCH_BOUND {
        return Err(GameError::SizeBound(g.n(), SEARCH_BOUND));
    }
    let upper = degeneracy(g);
    for d in 0..=upper {
        if is_weakly_f_degenerate(g, &DeficitFn::constant(g.n(), d))?.is_some() {
            return Ok(d);
        }
    }
    Ok(upper)
}

/// Classic degeneracy by repeated minimum-degree removal.
pub fn degeneracy(g: &SimpleGraph) -> i64 {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut best = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| deg[v])
            .unwrap();
        best = best.max(deg[v]);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best as i64
}

/// True iff every biconnected block of the connected graph is a cycle or
/// a complete graph.
pub fn gdp_tree_check(g: &SimpleGraph) -> bool {
    assert!(g.is_connected());
    blocks(g).iter().all(|block| {
        let sub = g.induced(block);
        let (k, m) = (sub.n(), sub.m());
        m == k * (k - 1) / 2 || (k >= 3 && m == k && (0..k).all(|v| sub.degree(v) == 2))
    })
}

/// Vertex sets of the biconnected blocks (Hopcroft–Tarjan).
pub fn blocks(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut num = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    fn dfs(
        g: &SimpleGraph,
        v: usize,
        parent: Option<usize>,
        num: &mut [usize],
        low: &mut [usize],
        counter: &mut usize,
        edge_stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) {
        num[v] = *counter;
        low[v] = *counter;
        *counter += 1;
        for &u in g.neighbors(v) {
            if Some(u) == parent {
                continue;
            }
            if num[u] == usize::MAX {
                edge_stack.push((v, u));
                dfs(g, u, Some(v), num, low, counter, edge_stack, out);
                low[v] = low[v].min(low[u]);
                if low[u] >= num[v] {
                    let mut block = Vec::new();
                    while let Some(&e) = edge_stack.last() {
                        edge_stack.pop();
                        block.push(e.0);
                        block.push(e.1);
                        if e == (v, u) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            } else if num[u] < num[v] {
                edge_stack.push((v, u));
                low[v] = low[v].min(num[u]);
            }
        }
    }

    for s in 0..n {
        if num[s] == usize::MAX {
            dfs(g, s, None, &mut num, &mut low, &mut counter, &mut edge_stack, &mut out);
        }
    }
    out
}

/// Theorem-style order validity for an induced subgraph K of G with
/// budget k: the first vertex has strictly fewer external neighbors than
/// the last, the last has host degree at most k and is adjacent to the
/// first, and every interior vertex sees at most k - 1 neighbors among
/// the vertices not after it.
pub fn validate_ww_order(g: &SimpleGraph, order: &[usize], k: usize) -> bool {
    let m = order.len();
    if m < 2 {
        return false;
    }
    let in_k: HashSet<usize> = order.iter().copied().collect();
    let kdeg = |v: usize| g.neighbors(v).iter().filter(|u| in_k.contains(u)).count();
    let (v1, vm) = (order[0], order[m - 1]);
    let ext = |v: usize| g.degree(v) - kdeg(v);
    if ext(v1) >= ext(vm) {
        return false;
    }
    if g.degree(vm) > k || !g.has_edge(v1, vm) {
        return false;
    }
    for i in 1..m - 1 {
        let after: HashSet<usize> = order[i + 1..].iter().copied().collect();
        let nb = g
            .neighbors(order[i])
            .iter()
            .filter(|u| !after.contains(u))
            .count();
        if nb > k - 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    NotInClass(#[from] NotInClass),
    #[error("certification failed: no legal block sequence for a {0:?} reduction")]
    CertificationFailed(configurations::ConfigKind),
    #[error("local structure theorem violated: no reduction available")]
    NoReduction,
}

/// Constructive weak-2-degeneracy certificate for a class member.
///
/// Recursion on the local structure: a low-degree vertex is scheduled
/// after the rest (it only absorbs decrements), and a configuration's
/// vertex set is scheduled after the rest via a block sequence found
/// against the residual budgets.
pub fn certify_weakly_2_degenerate(
    g: &PlaneGraph,
) -> Result<EliminationCertificate, CertifyError> {
    crate::cycle_analysis::in_class(g, &crate::cycle_analysis::CycleSpec::default())
        .map_err(NotInClass)?;
    let order = elimination_order(g)?;
    let cert = EliminationCertificate {
        initial: DeficitFn::constant(g.n(), 2),
        steps: order,
    };
    Ok(cert)
}

/// The recursive schedule, in original vertex ids.
fn elimination_order(g: &PlaneGraph) -> Result<Vec<EliminationStep>, CertifyError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    // per component; component schedules are independent
    let comps = components(g);
    if comps.len() > 1 {
        let mut steps = Vec::new();
        for comp in comps {
            let mut keep = vec![false; g.n()];
            for &v in &comp {
                keep[v] = true;
            }
            let (sub, old) = g.induced_subgraph(&keep);
            for s in elimination_order(&sub)? {
                steps.push(relabel(s, &old));
            }
        }
        return Ok(steps);
    }
    match configurations::local_structure_unchecked(g)? {
        LocalStructure::MinDegree { vertex, .. } => {
            let mut keep = vec![true; g.n()];
            keep[vertex] = false;
            let (sub, old) = g.induced_subgraph(&keep);
            let mut steps: Vec<EliminationStep> = elimination_order(&sub)?
                .into_iter()
                .map(|s| relabel(s, &old))
                .collect();
            steps.push(EliminationStep::Delete(vertex));
            Ok(steps)
        }
        LocalStructure::Config(m) => {
            let removable = m.vertices();
            let mut keep = vec![true; g.n()];
            for &v in &removable {
                keep[v] = false;
            }
            let (sub, old) = g.induced_subgraph(&keep);
            let mut steps: Vec<EliminationStep> = elimination_order(&sub)?
                .into_iter()
                .map(|s| relabel(s, &old))
                .collect();
            let block = block_sequence(g, &removable)
                .ok_or(CertifyError::CertificationFailed(m.kind))?;
            steps.extend(block);
            Ok(steps)
        }
        LocalStructure::NotFound => Err(CertifyError::NoReduction),
    }
}

fn relabel(s: EliminationStep, old: &[usize]) -> EliminationStep {
    match s {
        EliminationStep::Delete(u) => EliminationStep::Delete(old[u]),
        EliminationStep::DeleteSave(u, w) => EliminationStep::DeleteSave(old[u], old[w]),
    }
}

/// Legal elimination of the induced configuration against the residual
/// budgets (2 minus the number of outside neighbors), using at most one
/// DeleteSave. Memoized on (live set, spared vertex).
fn block_sequence(g: &PlaneGraph, removable: &[usize]) -> Option<Vec<EliminationStep>> {
    assert!(removable.len() <= 20, "block search capped at 20 vertices");
    let sub_edges: Vec<(usize, usize)> = {
        let mut es = Vec::new();
        for (i, &u) in removable.iter().enumerate() {
            for (j, &v) in removable.iter().enumerate() {
                if i < j && g.has_edge(u, v) {
                    es.push((i, j));
                }
            }
        }
        es
    };
    let sub = SimpleGraph::from_edges(removable.len(), &sub_edges);
    let residual: Vec<i64> = removable
        .iter()
        .enumerate()
        .map(|(i, &v)| 2 - (g.degree(v) - sub.degree(i)) as i64)
        .collect();
    if residual.iter().any(|&x| x < 0) {
        return None;
    }
    let mut memo: HashMap<(u32, Option<u8>), bool> = HashMap::new();
    let full: u32 = if removable.len() == 32 {
        u32::MAX
    } else {
        (1u32 << removable.len()) - 1
    };
    let mut steps = Vec::new();
    if block_search(&sub, &residual, full, None, &mut memo, &mut steps) {
        Some(
            steps
                .into_iter()
                .map(|s| relabel(s, removable))
                .collect(),
        )
    } else {
        None
    }
}

fn block_deficit(
    sub: &SimpleGraph,
    residual: &[i64],
    mask: u32,
    spared: Option<u8>,
    v: usize,
) -> i64 {
    let gone = sub
        .neighbors(v)
        .iter()
        .filter(|&&u| mask & (1 << u) == 0)
        .count() as i64;
    residual[v] - gone + i64::from(spared == Some(v as u8))
}

fn block_search(
    sub: &SimpleGraph,
    residual: &[i64],
    mask: u32,
    spared: Option<u8>,
    memo: &mut HashMap<(u32, Option<u8>), bool>,
    steps: &mut Vec<EliminationStep>,
) -> bool {
    if mask == 0 {
        return true;
    }
    if let Some(&r) = memo.get(&(mask, spared)) {
        debug_assert!(!r);
        return false;
    }
    let n = sub.n();
    let live = |v: usize| mask & (1 << v) != 0;
    for u in 0..n {
        if !live(u) {
            continue;
        }
        // Delete(u): legal when every live neighbor keeps a nonneg budget
        let ok = sub
            .neighbors(u)
            .iter()
            .all(|&v| !live(v) || block_deficit(sub, residual, mask, spared, v) >= 1);
        if ok {
            steps.push(EliminationStep::Delete(u));
            if block_search(sub, residual, mask & !(1 << u), spared, memo, steps) {
                return true;
            }
            steps.pop();
        }
        if spared.is_none() {
            let fu = block_deficit(sub, residual, mask, None, u);
            for &w in sub.neighbors(u) {
                if !live(w) || block_deficit(sub, residual, mask, None, w) >= fu {
                    continue;
                }
                let ok = sub
                    .neighbors(u)
                    .iter()
                    .all(|&v| v == w || !live(v) || block_deficit(sub, residual, mask, None, v) >= 1);
                if ok {
                    steps.push(EliminationStep::DeleteSave(u, w));
                    if block_search(sub, residual, mask & !(1 << u), Some(w as u8), memo, steps) {
                        return true;
                    }
                    steps.pop();
                }
            }
        }
    }
    memo.insert((mask, spared), false);
    false
}
