//! Interaction graphs and greedy coloring.

use std::collections::BTreeSet;

use super::KLocalHamiltonian;
use crate::error::{Error, Result};

/// Undirected graph on qudits `0..n`; edges stored with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl InteractionGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidParameter(format!("edge ({i},{j}) on {n} vertices")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(InteractionGraph { n, edges: set })
    }

    /// Pairs of qudits that share the support of some term.
    pub fn of(h: &KLocalHamiltonian) -> Self {
        let mut edges = BTreeSet::new();
        for t in h.terms() {
            let s = t.string.support();
            for (x, &i) in s.iter().enumerate() {
                for &j in &s[x + 1..] {
                    edges.insert((i, j));
                }
            }
        }
        InteractionGraph {
            n: h.num_qudits(),
            edges,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid clique")
    }

    /// `rows x cols` square lattice, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::new(rows * cols, edges).expect("valid grid")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &InteractionGraph) -> bool {
        g.edges().all(|(i, j)| self.colors[i] != self.colors[j])
    }
}

/// Visits vertices by descending degree (ties by index) and gives each the
/// smallest color unused by its colored neighbors.
pub fn greedy_coloring(g: &InteractionGraph) -> Coloring {
    let adj = g.neighbors();
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut colors = vec![usize::MAX; g.n];
    let mut count = 0;
    for v in order {
        let used: BTreeSet<usize> = adj[v].iter().map(|&u| colors[u]).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
        colors[v] = c;
        count = count.max(c + 1);
    }
    Coloring { colors, count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::paper_example_3local;

    #[test]
    fn example_graph() {
        let g = InteractionGraph::of(&paper_example_3local());
        let edges: Vec<_> = g.edges().collect();
        // 0-based versions of (1,2),(1,3),(1,4),(2,4),(3,4)
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn supports_induce_cliques() {
        let h = crate::hamiltonian::random_k_local(6, 2, 3, 8, 3).unwrap();
        let g = InteractionGraph::of(&h);
        for t in h.terms() {
            let s = t.string.support();
            for &i in &s {
                for &j in &s {
                    assert!(i == j || g.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn single_site_term_has_no_edges() {
        let h = crate::hamiltonian::KLocalHamiltonian::parse("# hamiltonian n=3 d=2 k=1\n1  Z@2\n").unwrap();
        assert_eq!(InteractionGraph::of(&h).num_edges(), 0);
    }

    #[test]
    fn zz_chain_is_a_path() {
        let text: String = std::iter::once("# hamiltonian n=5 d=2 k=2\n".to_string())
            .chain((1..5).map(|i| format!("1  Z@{} Z@{}\n", i, i + 1)))
            .collect();
        let h = crate::hamiltonian::KLocalHamiltonian::parse(&text).unwrap();
        assert_eq!(InteractionGraph::of(&h), InteractionGraph::path(5));
    }

    #[test]
    fn coloring_counts() {
        let grid = InteractionGraph::grid(10, 10);
        let c = greedy_coloring(&grid);
        assert!(c.is_proper(&grid));
        assert_eq!(c.count, 2);
        assert_eq!(greedy_coloring(&InteractionGraph::complete(5)).count, 5);
        assert_eq!(greedy_coloring(&InteractionGraph::new(4, []).unwrap()).count, 1);
        let path = InteractionGraph::path(16);
        assert_eq!(greedy_coloring(&path).count, 2);
    }

    #[test]
    fn bad_edges() {
        assert!(InteractionGraph::new(3, [(0, 3)]).is_err());
        assert!(InteractionGraph::new(3, [(1, 1)]).is_err());
    }
}
