//! Isomorph-free generation of all graphs on `n` vertices by canonical edge
//! augmentation.
//!
//! Every graph `G'` with at least one edge has a canonical last edge `e*`: the
//! edge whose endpoints get the largest canonical labels. Its parent is the
//! canonical form of `G' - e*`. A parent `G` generates `G + e` for one `e` per
//! orbit of non-edges and keeps the child only when `G` is the child's
//! parent, so each isomorphism class is produced exactly once.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{param, Result};
use crate::graph::canon::{canonical_form, canonical_labeling};
use crate::graph::Graph;

pub const MAX_ENUMERATION_ORDER: usize = 10;

/// The top of the generation tree is expanded breadth-first until at least
/// this many subtrees are pending; those subtrees are the parallel work
/// units. Fixed so that output order does not depend on the worker count.
pub const SPLIT_UNITS: usize = 256;

/// A generated graph in canonical labeling, with automorphisms known for it.
#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub graph: Graph,
    /// graph6 of `graph`, which is its own canonical form.
    pub bytes: Vec<u8>,
    generators: Vec<Vec<usize>>,
}

impl Node {
    fn root(n: usize) -> Node {
        let graph = Graph::new(n);
        let lab = canonical_labeling(&graph);
        let bytes = graph.to_graph6().into_bytes();
        Node {
            graph,
            bytes,
            generators: lab.generators,
        }
    }

    /// Children in the generation tree, in a fixed order.
    pub fn children(&self) -> Vec<Node> {
        let n = self.graph.n();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in non_edge_orbit_representatives(&self.graph, &self.generators) {
            let mut child = self.graph.clone();
            child.add_edge(u, v);
            let lab = canonical_labeling(&child);
            let mut pos = vec![0; n];
            for (i, &w) in lab.order.iter().enumerate() {
                pos[w] = i;
            }
            let last = child
                .edges()
                .max_by_key(|&(a, b)| (pos[a].max(pos[b]), pos[a].min(pos[b])))
                .expect("child has an edge");
            if !self.is_parent_of(&child, (u, v), last, &lab.generators) {
                continue;
            }
            let graph = child.relabel(&pos);
            let bytes = graph.to_graph6().into_bytes();
            if !seen.insert(bytes.clone()) {
                continue;
            }
            let generators = lab
                .generators
                .iter()
                .map(|gen| {
                    let mut conj = vec![0; n];
                    for w in 0..n {
                        conj[pos[w]] = pos[gen[w]];
                    }
                    conj
                })
                .collect();
            out.push(Node {
                graph,
                bytes,
                generators,
            });
        }
        out
    }

    fn is_parent_of(&self, child: &Graph, added: (usize, usize), last: (usize, usize), gens: &[Vec<usize>]) -> bool {
        if added == last || pair_orbit(last, gens).contains(&added) {
            return true;
        }
        let mut d_added = [child.degree(added.0), child.degree(added.1)];
        let mut d_last = [child.degree(last.0), child.degree(last.1)];
        d_added.sort_unstable();
        d_last.sort_unstable();
        if d_added != d_last {
            return false;
        }
        let mut reduced = child.clone();
        reduced.remove_edge(last.0, last.1);
        canonical_form(&reduced).bytes == self.bytes
    }
}

fn pair_orbit(start: (usize, usize), gens: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        let (a, b) = orbit[i];
        for g in gens {
            let (x, y) = (g[a], g[b]);
            let img = (x.min(y), x.max(y));
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        i += 1;
    }
    orbit
}

/// Smallest non-edge (lexicographically) of each orbit under `gens`.
fn non_edge_orbit_representatives(g: &Graph, gens: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut done = vec![false; n * n];
    let mut reps = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) || done[u * n + v] {
                continue;
            }
            for (a, b) in pair_orbit((u, v), gens) {
                done[a * n + b] = true;
            }
            reps.push((u, v));
        }
    }
    reps
}

/// Visits the top of the generation tree breadth-first and returns the roots
/// of the pending subtrees. `visit` says whether to descend below a node.
fn split<A, F: Fn(&mut A, &Node) -> bool>(n: usize, acc: &mut A, visit: &F) -> Vec<Node> {
    let mut level = vec![Node::root(n)];
    while !level.is_empty() && level.len() < SPLIT_UNITS {
        let mut next = Vec::new();
        for node in level {
            if visit(acc, &node) {
                next.extend(node.children());
            }
        }
        level = next;
    }
    level
}

fn depth_first<A, F: Fn(&mut A, &Node) -> bool>(node: &Node, acc: &mut A, visit: &F) {
    if visit(acc, node) {
        for child in node.children() {
            depth_first(&child, acc, visit);
        }
    }
}

/// Visits the generation tree, descending below a node only when `visit`
/// returns true, in parallel over subtrees. Partial results are merged in a
/// fixed order, so the result does not depend on the worker count.
pub(crate) fn explore<A, I, F, M>(n: usize, init: I, visit: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &Node) -> bool + Sync,
    M: Fn(A, A) -> A,
{
    let mut acc = init();
    let units = split(n, &mut acc, &visit);
    let parts: Vec<A> = units
        .par_iter()
        .map(|u| {
            let mut a = init();
            depth_first(u, &mut a, &visit);
            a
        })
        .collect();
    parts.into_iter().fold(acc, merge)
}

/// One canonical representative per isomorphism class on `n` vertices.
#[derive(Debug, Clone, Copy)]
pub struct GraphEnumeration {
    n: usize,
    connected_only: bool,
}

pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<GraphEnumeration> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return param(format!(
            "enumeration order n = {n} must lie in 1..={MAX_ENUMERATION_ORDER}"
        ));
    }
    Ok(GraphEnumeration { n, connected_only })
}

impl GraphEnumeration {
    /// A fresh pass over the classes; every pass yields the same sequence.
    pub fn iter(&self) -> GraphStream {
        let mut top = Vec::new();
        let units = split(self.n, &mut top, &|top: &mut Vec<Node>, node: &Node| {
            top.push(node.clone());
            true
        });
        GraphStream {
            top: top.into_iter(),
            units: units.into_iter(),
            stack: Vec::new(),
            connected_only: self.connected_only,
        }
    }

    /// Number of classes, counted in parallel.
    pub fn count(&self) -> u64 {
        let connected_only = self.connected_only;
        explore(
            self.n,
            || 0u64,
            |c, node| {
                if !connected_only || node.graph.is_connected() {
                    *c += 1;
                }
                true
            },
            |a, b| a + b,
        )
    }
}

/// Depth-first stream over the generation tree; the expanded top levels come
/// first, then each work unit's subtree in preorder.
pub struct GraphStream {
    top: std::vec::IntoIter<Node>,
    units: std::vec::IntoIter<Node>,
    stack: Vec<Node>,
    connected_only: bool,
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let node = if let Some(node) = self.top.next() {
                node
            } else if let Some(node) = self.stack.pop() {
                let mut children = node.children();
                children.reverse();
                self.stack.extend(children);
                node
            } else {
                self.stack.push(self.units.next()?);
                continue;
            };
            if !self.connected_only || node.graph.is_connected() {
                return Some(node.graph);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of isomorphism classes on `n` vertices by Burnside's lemma:
    /// the average over permutations of `2^(cycles on unordered pairs)`.
    fn burnside(n: usize) -> u64 {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total: u128 = 0;
        let mut count: u128 = 0;
        loop {
            let mut seen = vec![false; n * n];
            let mut cycles = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if seen[u * n + v] {
                        continue;
                    }
                    cycles += 1;
                    let (mut a, mut b) = (u, v);
                    while !seen[a * n + b] {
                        seen[a * n + b] = true;
                        let (x, y) = (perm[a], perm[b]);
                        a = x.min(y);
                        b = x.max(y);
                    }
                }
            }
            total += 1u128 << cycles;
            count += 1;
            // Next permutation in lexicographic order.
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        (total / count) as u64
    }

    #[test]
    fn burnside_oracle_values() {
        assert_eq!(burnside(4), 11);
        assert_eq!(burnside(5), 34);
        assert_eq!(burnside(6), 156);
    }

    #[test]
    fn small_counts_match_burnside() {
        for n in 1..=6 {
            let e = enumerate_graphs(n, false).unwrap();
            assert_eq!(e.iter().count() as u64, burnside(n), "n = {n}");
            assert_eq!(e.count(), burnside(n));
        }
    }

    #[test]
    fn stream_is_distinct_and_restartable() {
        let e = enumerate_graphs(6, false).unwrap();
        let first: Vec<String> = e.iter().map(|g| g.to_graph6()).collect();
        let second: Vec<String> = e.iter().map(|g| g.to_graph6()).collect();
        assert_eq!(first, second);
        let forms: HashSet<_> = e.iter().map(|g| canonical_form(&g).bytes).collect();
        assert_eq!(forms.len(), first.len());
    }

    #[test]
    fn connected_counts() {
        let counts: Vec<u64> = (1..=6).map(|n| enumerate_graphs(n, true).unwrap().count()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn order_range() {
        assert!(enumerate_graphs(0, false).is_err());
        assert!(enumerate_graphs(11, false).is_err());
    }
}
