//! Abstract simple graphs, used where no embedding is needed (the
//! elimination game, covers, block decompositions).

use crate::plane_graph::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        if !self.has_edge(u, v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = SimpleGraph::new(keep.len());
        for &v in keep {
            for &u in &self.adj[v] {
                if new_id[u] != usize::MAX && new_id[v] < new_id[u] {
                    g.add_edge(new_id[v], new_id[u]);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n()
    }
}

impl From<&PlaneGraph> for SimpleGraph {
    fn from(g: &PlaneGraph) -> Self {
        SimpleGraph::from_edges(g.n(), g.edges())
    }
}

pub fn complete(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn cycle(n: usize) -> SimpleGraph {
    assert!(n >= 3);
    let mut g = SimpleGraph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

pub fn path(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}
