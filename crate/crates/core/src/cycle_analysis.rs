//! Short-cycle enumeration, chord and normal-adjacency tests, and the
//! forbidden-cycle class checker.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::plane_graph::PlaneGraph;

pub const MAX_CYCLE_LEN: usize = 12;

/// Which cycles are forbidden. The default is the class of the main
/// theorem: no 4-, 7-, 9-cycles and no 5-cycle normally adjacent to a
/// 3-cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub forbidden_lengths: BTreeSet<usize>,
    pub forbid_5_normally_adjacent_3: bool,
}

impl Default for CycleSpec {
    fn default() -> Self {
        CycleSpec {
            forbidden_lengths: [4, 7, 9].into_iter().collect(),
            forbid_5_normally_adjacent_3: true,
        }
    }
}

impl CycleSpec {
    /// The 4-, 6-, 7-, 9-cycle-free subclass of the corollary.
    pub fn no_4679() -> Self {
        CycleSpec {
            forbidden_lengths: [4, 6, 7, 9].into_iter().collect(),
            forbid_5_normally_adjacent_3: false,
        }
    }

    pub fn validate(&self) -> bool {
        self.forbidden_lengths.iter().all(|&l| (3..=12).contains(&l))
            && (!self.forbidden_lengths.is_empty() || self.forbid_5_normally_adjacent_3)
    }
}

/// Structure witnessing that a graph is outside the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassWitness {
    ForbiddenCycle(Vec<usize>),
    NormallyAdjacentPair(Vec<usize>, Vec<usize>),
}

/// All simple cycles of the given length, each reported once up to
/// rotation and reflection, as vertex sequences starting at their
/// smallest vertex.
pub fn enumerate_cycles(g: &PlaneGraph, len: usize) -> Vec<Vec<usize>> {
    assert!((3..=MAX_CYCLE_LEN).contains(&len), "cycle length out of range");
    let n = g.n();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; n];
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, len, &mut path, &mut on_path, &mut out);
        on_path[root] = false;
        path.pop();
    }
    out
}

fn extend(
    g: &PlaneGraph,
    root: usize,
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if path.len() == len {
        // close the cycle; fix reflection by requiring second < last
        if g.has_edge(last, root) && path[1] < path[len - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &u in g.neighbors(last) {
        if u > root && !on_path[u] {
            path.push(u);
            on_path[u] = true;
            extend(g, root, len, path, on_path, out);
            on_path[u] = false;
            path.pop();
        }
    }
}

/// True iff some edge of the graph joins two non-consecutive vertices of
/// the cycle.
pub fn has_chord(g: &PlaneGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if !consecutive && g.has_edge(cycle[i], cycle[j]) {
                return true;
            }
        }
    }
    false
}

/// Two simple cycles are normally adjacent when their intersection is a
/// single edge together with its two endpoints.
pub fn cycles_normally_adjacent(c1: &[usize], c2: &[usize]) -> bool {
    let s1: BTreeSet<usize> = c1.iter().copied().collect();
    let shared: Vec<usize> = c2.iter().copied().filter(|v| s1.contains(v)).collect();
    if shared.len() != 2 {
        return false;
    }
    let e = (shared[0].min(shared[1]), shared[0].max(shared[1]));
    let shared_edges: Vec<(usize, usize)> = cycle_edges(c1)
        .into_iter()
        .filter(|x| cycle_edges(c2).contains(x))
        .collect();
    shared_edges == vec![e]
}

pub fn cycle_edges(c: &[usize]) -> BTreeSet<(usize, usize)> {
    let k = c.len();
    (0..k)
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Decide membership in the forbidden-cycle class; a violation comes
/// with a witness. Checks all cycle pairs, not just facial ones.
pub fn in_class(g: &PlaneGraph, spec: &CycleSpec) -> Result<(), ClassWitness> {
    assert!(spec.validate(), "invalid cycle spec");
    for &len in &spec.forbidden_lengths {
        if let Some(c) = enumerate_cycles(g, len).into_iter().next() {
            return Err(ClassWitness::ForbiddenCycle(c));
        }
    }
    if spec.forbid_5_normally_adjacent_3 {
        let fives = enumerate_cycles(g, 5);
        let threes = enumerate_cycles(g, 3);
        for c5 in &fives {
            for c3 in &threes {
                if cycles_normally_adjacent(c5, c3) {
                    return Err(ClassWitness::NormallyAdjacentPair(c5.clone(), c3.clone()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn c5_cycles() {
        let g = corpus::generate_family("cycle", &[5]).unwrap().remove(0);
        assert_eq!(enumerate_cycles(&g, 5).len(), 1);
        assert!(enumerate_cycles(&g, 4).is_empty());
        assert!(!has_chord(&g, &enumerate_cycles(&g, 5)[0]));
        assert!(in_class(&g, &CycleSpec::default()).is_ok());
    }

    #[test]
    fn k4_has_four_triangles_and_chords() {
        let g = corpus::k4_plane();
        assert_eq!(enumerate_cycles(&g, 3).len(), 4);
        let c4 = enumerate_cycles(&g, 4).into_iter().next().unwrap();
        assert!(has_chord(&g, &c4));
    }

    #[test]
    fn triangle_has_no_chords() {
        let g = corpus::generate_family("cycle", &[3]).unwrap().remove(0);
        assert!(!has_chord(&g, &[0, 1, 2]));
    }

    #[test]
    fn normal_adjacency_cases() {
        // triangle 0-1-2 and 5-cycle 0-1-3-4-5 sharing edge 01
        assert!(cycles_normally_adjacent(&[0, 1, 2], &[0, 1, 3, 4, 5]));
        // sharing one vertex only
        assert!(!cycles_normally_adjacent(&[0, 1, 2], &[0, 3, 4, 5, 6]));
        // two shared vertices but no shared edge (K4 minus an edge)
        assert!(!cycles_normally_adjacent(&[0, 1, 2], &[1, 3, 2, 4]));
        // symmetry
        assert_eq!(
            cycles_normally_adjacent(&[0, 1, 2], &[0, 1, 3, 4, 5]),
            cycles_normally_adjacent(&[0, 1, 3, 4, 5], &[0, 1, 2])
        );
    }

    #[test]
    fn class_witnesses() {
        let c4 = corpus::generate_family("cycle", &[4]).unwrap().remove(0);
        assert!(matches!(
            in_class(&c4, &CycleSpec::default()),
            Err(ClassWitness::ForbiddenCycle(_))
        ));
        // 5-cycle with a triangle glued on one edge
        let g = crate::plane_graph::PlaneGraph::build(vec![
            vec![1, 4, 5],
            vec![2, 0, 5],
            vec![3, 1],
            vec![4, 2],
            vec![0, 3],
            vec![0, 1],
        ])
        .unwrap();
        assert!(matches!(
            in_class(&g, &CycleSpec::default()),
            Err(ClassWitness::NormallyAdjacentPair(_, _))
        ));
    }
}
