//! Simple undirected graphs on labeled vertices, stored as symmetric bit rows.

pub(crate) mod bits;
pub mod canon;
mod construct;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use construct::Construction;

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 1 << 16;

/// An undirected simple graph on vertices `0..n`.
///
/// Row `v` is a bitset of the neighbours of `v`, `words` machine words wide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` is zero or exceeds [`MAX_VERTICES`]; constructors that take
    /// user input validate first.
    pub fn new(n: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&n),
            "vertex count {n} outside 1..={MAX_VERTICES}"
        );
        let words = bits::words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Neighbour bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        if self.has_edge(u, v) {
            return false;
        }
        let w = self.words;
        bits::set(&mut self.rows[u * w..(u + 1) * w], v);
        bits::set(&mut self.rows[v * w..(v + 1) * w], u);
        self.edges += 1;
        true
    }

    /// Removes `uv`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.has_edge(u, v) {
            return false;
        }
        let w = self.words;
        bits::clear(&mut self.rows[u * w..(u + 1) * w], v);
        bits::clear(&mut self.rows[v * w..(v + 1) * w], u);
        self.edges -= 1;
        true
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Adjacency lists, one ascending list per vertex.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// Recounts edges from the rows; equals [`Graph::edge_count`] for every valid graph.
    pub fn recount_edges(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`. Panics on an empty set.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut mask = vec![0u64; self.words];
        for &v in set {
            bits::set(&mut mask, v);
        }
        set.iter()
            .map(|&v| {
                self.row(v)
                    .iter()
                    .zip(&mask)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum::<usize>()
            / 2
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Breadth-first distance layers `N_0(u) = {u}, N_1(u), ...` around `u`.
    pub fn shells(&self, u: usize) -> ShellDecomposition {
        assert!(u < self.n, "vertex {u} out of range");
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut shells = vec![vec![u]];
        loop {
            let last = shells.last().unwrap();
            let mut next = Vec::new();
            for &a in last {
                for b in self.neighbors(a) {
                    if dist[b] == usize::MAX {
                        dist[b] = shells.len();
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            shells.push(next);
        }
        let unreachable = (0..self.n).filter(|&v| dist[v] == usize::MAX).collect();
        ShellDecomposition {
            source: u,
            shells,
            unreachable,
        }
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self).expect("vertex count is bounded by MAX_VERTICES")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Distance layers around a source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellDecomposition {
    pub source: usize,
    /// `shells[i]` holds the vertices at distance exactly `i`, sorted.
    pub shells: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

impl ShellDecomposition {
    /// Vertices at distance `i`; empty past the last layer.
    pub fn shell(&self, i: usize) -> &[usize] {
        self.shells.get(i).map(Vec::as_slice).unwrap_or(&[])
    }
}
