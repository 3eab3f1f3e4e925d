//! Free trees up to isomorphism.
//!
//! Trees are produced by the constant-amortized-time successor on level
//! sequences of centre-rooted trees (Wright, Richmond, Odlyzko and McKay),
//! then sorted by level sequence in decreasing lexicographic order, which
//! puts the path first.

use crate::error::{param, Result};
use crate::graph::{graph6, Graph};

pub const MAX_TREE_ORDER: usize = 16;

/// A tree together with its 2-colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    /// Smaller colour class; on a tie, the class of vertex 0.
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

impl Tree {
    /// Validates that `graph` is a tree.
    pub fn from_graph(graph: Graph) -> Result<Tree> {
        if graph.edge_count() + 1 != graph.n() || !graph.is_connected() {
            return param(format!(
                "not a tree: {} vertices, {} edges, {} components",
                graph.n(),
                graph.edge_count(),
                graph.components().len()
            ));
        }
        let (part_a, part_b) = two_colour(&graph);
        Ok(Tree { graph, part_a, part_b })
    }

    /// Tree whose vertex `i` hangs off the latest earlier vertex one level up.
    pub fn from_level_sequence(levels: &[usize]) -> Result<Tree> {
        if levels.is_empty() || levels[0] != 0 || levels[1..].contains(&0) {
            return param("level sequence must start with a single 0");
        }
        let mut g = Graph::new(levels.len());
        let mut last_at = vec![usize::MAX; levels.len()];
        last_at[0] = 0;
        for (i, &l) in levels.iter().enumerate().skip(1) {
            let parent = last_at[l - 1];
            if parent == usize::MAX {
                return param(format!("level {l} at position {i} has no parent"));
            }
            g.add_edge(parent, i);
            last_at[l] = i;
        }
        Tree::from_graph(g)
    }

    pub fn path(t: usize) -> Result<Tree> {
        Tree::from_graph(crate::Construction::Path(t).build()?)
    }

    /// `K_{1,t-1}` with the centre at vertex 0.
    pub fn star(t: usize) -> Result<Tree> {
        if t < 1 {
            return param("star needs at least one vertex");
        }
        let edges: Vec<_> = (1..t).map(|v| (0, v)).collect();
        Tree::from_graph(Graph::from_edges(t, &edges))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Colour class of `v`: `false` for `part_a`, `true` for `part_b`.
    pub fn in_part_b(&self, v: usize) -> bool {
        self.part_b.binary_search(&v).is_ok()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.graph.degree(v) == 1)
    }
}

/// Sizes of the two colour classes, smaller first.
pub fn bipartition(t: &Tree) -> (usize, usize) {
    (t.part_a.len(), t.part_b.len())
}

fn two_colour(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let depth = g.shells(0);
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for (i, shell) in depth.shells.iter().enumerate() {
        if i % 2 == 0 {
            even.extend_from_slice(shell);
        } else {
            odd.extend_from_slice(shell);
        }
    }
    even.sort_unstable();
    odd.sort_unstable();
    if odd.len() < even.len() {
        (odd, even)
    } else {
        (even, odd)
    }
}

/// Every free tree on `t` vertices, once each.
#[derive(Debug, Clone)]
pub struct TreeFamily {
    pub t: usize,
    pub trees: Vec<Tree>,
}

impl TreeFamily {
    /// Trees on `2k + 2` vertices, or `2k + 3` when `prime`.
    pub fn for_k(k: usize, prime: bool) -> Result<TreeFamily> {
        let t = 2 * k + if prime { 3 } else { 2 };
        if k < 1 || t > MAX_TREE_ORDER {
            return param(format!(
                "tree family for k = {k} needs 1 <= k and 2k+3 <= {MAX_TREE_ORDER}"
            ));
        }
        generate_trees(t)
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// One graph6 line per tree, in family order.
    pub fn to_graph6_lines(&self) -> String {
        let mut out = String::new();
        for t in &self.trees {
            out.push_str(&graph6::encode(&t.graph).expect("trees are small"));
            out.push('\n');
        }
        out
    }
}

pub fn generate_trees(t: usize) -> Result<TreeFamily> {
    if !(1..=MAX_TREE_ORDER).contains(&t) {
        return param(format!("tree order t = {t} must lie in 1..={MAX_TREE_ORDER}"));
    }
    let mut sequences = if t == 1 { vec![vec![0]] } else { level_sequences(t) };
    sequences.sort_unstable_by(|a, b| b.cmp(a));
    let trees = sequences
        .iter()
        .map(|s| Tree::from_level_sequence(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeFamily { t, trees })
}

/// Centre-rooted level sequences, starting from the path.
fn level_sequences(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layout: Option<Vec<usize>> = Some((0..=t / 2).chain(1..t.div_ceil(2)).collect());
    while let Some(cur) = layout {
        let next = next_tree(cur);
        layout = next.and_then(|tree| {
            let succ = next_rooted_tree(&tree, None);
            out.push(tree);
            succ
        });
    }
    out
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// First valid centre-rooted sequence at or after `candidate`.
fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().max().copied().unwrap_or(0);
    let rest_height = rest.iter().max().copied().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut new = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&new);
        let h = new_left.iter().max().copied().unwrap_or(0);
        let len = new.len();
        for (slot, level) in new[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(new)
}

/// The first subtree of the root (levels shifted up by one) and the rest.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}
