//! Tree containment.
//!
//! The search maps the internal vertices of the tree first, in BFS order from
//! a centroid, each one into the neighbourhood of its parent's image. Leaves
//! are placed at the end by bipartite matching. Host twins (vertices with the
//! same open or closed neighbourhood) are interchangeable, so only the lowest
//! unused member of a twin class is tried.

mod constructive;

pub use constructive::embed_constructive;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::trees::{Tree, TreeFamily};

/// Injective map from tree vertices to host vertices, indexed by tree vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// True when the map is injective and sends every tree edge to a host edge.
    pub fn is_valid(&self, host: &Graph, tree: &Tree) -> bool {
        if self.map.len() != tree.order() || self.map.iter().any(|&h| h >= host.n()) {
            return false;
        }
        let mut seen = vec![false; host.n()];
        for &h in &self.map {
            if std::mem::replace(&mut seen[h], true) {
                return false;
            }
        }
        tree.graph()
            .edges()
            .all(|(u, v)| host.has_edge(self.map[u], self.map[v]))
    }
}

/// Outcome of testing a host against a tree family.
#[derive(Debug, Clone)]
pub struct FamilyMembership {
    /// Some tree of the family is missing from the host.
    pub in_family: bool,
    /// First missing tree in family order, with its index.
    pub witness: Option<(usize, Tree)>,
}

/// Tree preprocessed for repeated containment queries.
#[derive(Debug, Clone)]
pub struct TreePattern {
    tree: Tree,
    /// Internal vertices in BFS order from a centroid.
    skeleton: Vec<usize>,
    /// Position in `skeleton` of each entry's parent (`usize::MAX` for the root).
    parent_pos: Vec<usize>,
    /// Internal children per skeleton position.
    internal_children: Vec<usize>,
    /// Leaves attached to each skeleton position, as tree vertices.
    leaves: Vec<Vec<usize>>,
}

impl TreePattern {
    pub fn new(tree: &Tree) -> TreePattern {
        let g = tree.graph();
        let t = g.n();
        let internal = |v: usize| g.degree(v) >= 2;
        let mut skeleton = Vec::new();
        let mut parent_pos = Vec::new();
        if t >= 3 {
            let root = centroid(g);
            let mut pos = vec![usize::MAX; t];
            pos[root] = 0;
            skeleton.push(root);
            parent_pos.push(usize::MAX);
            let mut head = 0;
            while head < skeleton.len() {
                let v = skeleton[head];
                for u in g.neighbors(v) {
                    if internal(u) && pos[u] == usize::MAX {
                        pos[u] = skeleton.len();
                        skeleton.push(u);
                        parent_pos.push(head);
                    }
                }
                head += 1;
            }
        }
        let mut internal_children = vec![0; skeleton.len()];
        for &p in parent_pos.iter().skip(1) {
            internal_children[p] += 1;
        }
        let leaves = skeleton
            .iter()
            .map(|&s| g.neighbors(s).filter(|&u| !internal(u)).collect())
            .collect();
        TreePattern {
            tree: tree.clone(),
            skeleton,
            parent_pos,
            internal_children,
            leaves,
        }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn find_in(&self, host: &HostIndex) -> Option<Embedding> {
        let g = host.graph;
        let t = self.tree.order();
        if t > g.n() {
            return None;
        }
        match t {
            1 => return Some(Embedding { map: vec![0] }),
            2 => {
                let (u, v) = g.edges().next()?;
                return Some(Embedding { map: vec![u, v] });
            }
            _ => {}
        }
        let mut s = Search {
            pat: self,
            host,
            used: vec![0; g.words()],
            image: vec![usize::MAX; self.skeleton.len()],
            pending: (0..self.skeleton.len())
                .map(|i| self.internal_children[i] + self.leaves[i].len())
                .collect(),
            owner: vec![usize::MAX; g.n()],
        };
        if !s.extend(0) {
            return None;
        }
        let mut map = vec![usize::MAX; t];
        for (i, &v) in self.skeleton.iter().enumerate() {
            map[v] = s.image[i];
        }
        for h in 0..g.n() {
            if let Some(&leaf) = s.leaf_of(h) {
                map[leaf] = h;
            }
        }
        debug_assert!(map.iter().all(|&h| h != usize::MAX));
        Some(Embedding { map })
    }
}

/// A vertex minimizing the largest component left after its removal.
fn centroid(g: &Graph) -> usize {
    let t = g.n();
    let order: Vec<usize> = g.shells(0).shells.concat();
    let mut parent = vec![usize::MAX; t];
    for &v in &order {
        for u in g.neighbors(v) {
            if u != parent[v] && parent[u] == usize::MAX && u != 0 {
                parent[u] = v;
            }
        }
    }
    let mut size = vec![1usize; t];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    (0..t)
        .min_by_key(|&v| {
            let below = g
                .neighbors(v)
                .filter(|&u| parent[u] == v)
                .map(|u| size[u])
                .max()
                .unwrap_or(0);
            below.max(t - size[v])
        })
        .expect("nonempty tree")
}

/// Host data shared across containment queries.
pub struct HostIndex<'a> {
    graph: &'a Graph,
    /// `at_least[d]`: vertices of degree at least `d`.
    at_least: Vec<Vec<u64>>,
    /// Twins of each vertex with a smaller index.
    earlier_twins: Vec<Vec<u64>>,
}

impl<'a> HostIndex<'a> {
    pub fn new(graph: &'a Graph) -> HostIndex<'a> {
        let n = graph.n();
        let w = graph.words();
        let max_deg = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0);
        let mut at_least = vec![vec![0u64; w]; max_deg + 2];
        for v in 0..n {
            for row in at_least.iter_mut().take(graph.degree(v) + 1) {
                bits::set(row, v);
            }
        }
        let mut earlier_twins = vec![vec![0u64; w]; n];
        let mut closed_u = vec![0u64; w];
        let mut closed_v = vec![0u64; w];
        for u in 0..n {
            for v in 0..u {
                if graph.degree(u) != graph.degree(v) {
                    continue;
                }
                let open = graph.row(u) == graph.row(v);
                let closed = graph.has_edge(u, v) && {
                    closed_u.copy_from_slice(graph.row(u));
                    bits::set(&mut closed_u, u);
                    closed_v.copy_from_slice(graph.row(v));
                    bits::set(&mut closed_v, v);
                    closed_u == closed_v
                };
                if open || closed {
                    bits::set(&mut earlier_twins[u], v);
                }
            }
        }
        HostIndex {
            graph,
            at_least,
            earlier_twins,
        }
    }

    fn degree_mask(&self, d: usize) -> Option<&[u64]> {
        self.at_least.get(d).map(Vec::as_slice)
    }
}

struct Search<'p, 'h> {
    pat: &'p TreePattern,
    host: &'p HostIndex<'h>,
    used: Vec<u64>,
    /// Host image per skeleton position.
    image: Vec<usize>,
    /// Children not yet placed, per skeleton position.
    pending: Vec<usize>,
    /// Leaf matching: host vertex -> leaf slot.
    owner: Vec<usize>,
}

impl Search<'_, '_> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.pat.skeleton.len() {
            return self.place_leaves();
        }
        let g = self.host.graph;
        let s = self.pat.skeleton[i];
        let need = self.pat.tree.graph().degree(s);
        let Some(mask) = self.host.degree_mask(need) else {
            return false;
        };
        let parent = self.pat.parent_pos[i];
        let cand: Vec<u64> = if parent == usize::MAX {
            mask.iter().zip(&self.used).map(|(m, u)| m & !u).collect()
        } else {
            let row = g.row(self.image[parent]);
            row.iter()
                .zip(mask)
                .zip(&self.used)
                .map(|((r, m), u)| r & m & !u)
                .collect()
        };
        let children = need - usize::from(parent != usize::MAX);
        for h in bits::ones(&cand) {
            if self.host.earlier_twins[h]
                .iter()
                .zip(&self.used)
                .any(|(t, u)| t & !u != 0)
            {
                continue;
            }
            if free_neighbours(g.row(h), &self.used) < children {
                continue;
            }
            bits::set(&mut self.used, h);
            self.image[i] = h;
            if parent != usize::MAX {
                self.pending[parent] -= 1;
            }
            if self.lookahead_ok(i) && self.extend(i + 1) {
                return true;
            }
            if parent != usize::MAX {
                self.pending[parent] += 1;
            }
            bits::clear(&mut self.used, h);
        }
        false
    }

    /// Every placed vertex still has room for its unplaced children.
    fn lookahead_ok(&self, upto: usize) -> bool {
        let g = self.host.graph;
        (0..=upto).all(|j| {
            let p = self.pending[j];
            p == 0 || free_neighbours(g.row(self.image[j]), &self.used) >= p
        })
    }

    fn place_leaves(&mut self) -> bool {
        let slots: Vec<(usize, usize)> = self
            .pat
            .leaves
            .iter()
            .enumerate()
            .flat_map(|(j, ls)| ls.iter().map(move |&l| (j, l)))
            .collect();
        for o in self.owner.iter_mut() {
            *o = usize::MAX;
        }
        let g = self.host.graph;
        for slot in 0..slots.len() {
            let mut visited = vec![0u64; g.words()];
            if !self.augment(slot, &slots, &mut visited) {
                return false;
            }
        }
        let owner = std::mem::take(&mut self.owner);
        self.owner = owner
            .iter()
            .map(|&o| if o == usize::MAX { usize::MAX } else { slots[o].1 })
            .collect();
        true
    }

    /// Kuhn augmenting path from `slot`.
    fn augment(&mut self, slot: usize, slots: &[(usize, usize)], visited: &mut [u64]) -> bool {
        let g = self.host.graph;
        let row = g.row(self.image[slots[slot].0]);
        let free: Vec<u64> = row.iter().zip(&self.used).map(|(r, u)| r & !u).collect();
        for h in bits::ones(&free) {
            if bits::test(visited, h) {
                continue;
            }
            bits::set(visited, h);
            let o = self.owner[h];
            if o == usize::MAX || self.augment(o, slots, visited) {
                self.owner[h] = slot;
                return true;
            }
        }
        false
    }

    /// Leaf placed on host vertex `h`, valid after a successful `place_leaves`.
    fn leaf_of(&self, h: usize) -> Option<&usize> {
        let o = &self.owner[h];
        (*o != usize::MAX).then_some(o)
    }
}

fn free_neighbours(row: &[u64], used: &[u64]) -> usize {
    row.iter().zip(used).map(|(r, u)| (r & !u).count_ones() as usize).sum()
}

/// An embedding of `tree` into `host`, if one exists.
pub fn contains_tree(host: &Graph, tree: &Tree) -> Option<Embedding> {
    TreePattern::new(tree).find_in(&HostIndex::new(host))
}

/// Whether `host` misses some tree of `fam`, with the first missing one.
pub fn family_membership(host: &Graph, fam: &TreeFamily) -> FamilyMembership {
    let index = HostIndex::new(host);
    for (i, tree) in fam.trees.iter().enumerate() {
        if TreePattern::new(tree).find_in(&index).is_none() {
            return FamilyMembership {
                in_family: true,
                witness: Some((i, tree.clone())),
            };
        }
    }
    FamilyMembership {
        in_family: false,
        witness: None,
    }
}

/// Membership test for many hosts against one family. The path is tried
/// first since it is the tree most often missing.
#[derive(Debug, Clone)]
pub struct FamilyFilter {
    patterns: Vec<TreePattern>,
}

impl FamilyFilter {
    pub fn new(fam: &TreeFamily) -> FamilyFilter {
        let mut patterns: Vec<TreePattern> = fam.trees.iter().map(TreePattern::new).collect();
        let t = fam.t;
        if let Some(p) = patterns.iter().position(|p| t >= 2 && p.tree.leaves().count() == 2) {
            let path = patterns.remove(p);
            patterns.insert(0, path);
        }
        FamilyFilter { patterns }
    }

    /// Some tree of the family is missing from `host`.
    pub fn is_member(&self, host: &Graph) -> bool {
        let index = HostIndex::new(host);
        self.patterns.iter().any(|p| p.find_in(&index).is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Construction;
    use crate::trees::generate_trees;

    fn build(c: Construction) -> Graph {
        c.build().unwrap()
    }

    #[test]
    fn path_exclusions() {
        let s = build(Construction::S { n: 30, k: 2 });
        assert!(contains_tree(&s, &Tree::path(6).unwrap()).is_none());
        assert!(contains_tree(&s, &Tree::path(5).unwrap()).is_some());
        let sp = build(Construction::SPlus { n: 30, k: 2 });
        assert!(contains_tree(&sp, &Tree::path(7).unwrap()).is_none());
        assert!(contains_tree(&sp, &Tree::path(6).unwrap()).is_some());
    }

    #[test]
    fn complete_bipartite_hosts_every_tree() {
        let host = build(Construction::K { a: 3, b: 5 });
        for tree in &generate_trees(6).unwrap().trees {
            let e = contains_tree(&host, tree).expect("K(3,5) contains all 6-vertex trees");
            assert!(e.is_valid(&host, tree));
        }
    }

    #[test]
    fn host_too_small() {
        assert!(contains_tree(&build(Construction::Clique(5)), &Tree::path(6).unwrap()).is_none());
        let single = Tree::path(1).unwrap();
        assert_eq!(contains_tree(&Graph::new(1), &single).unwrap().map, vec![0]);
        assert!(contains_tree(&Graph::new(3), &Tree::path(2).unwrap()).is_none());
    }

    #[test]
    fn membership_examples() {
        let t2 = TreeFamily::for_k(2, false).unwrap();
        let m = family_membership(&build(Construction::S { n: 9, k: 2 }), &t2);
        assert!(m.in_family);
        let (_, w) = m.witness.unwrap();
        assert!(crate::graph::canon::is_isomorphic(
            w.graph(),
            Tree::path(6).unwrap().graph()
        ));
        assert!(!family_membership(&build(Construction::Clique(9)), &t2).in_family);
        let t2p = TreeFamily::for_k(2, true).unwrap();
        assert!(family_membership(&build(Construction::SPlus { n: 9, k: 2 }), &t2p).in_family);
        let f = FamilyFilter::new(&t2);
        assert!(f.is_member(&build(Construction::S { n: 9, k: 2 })));
        assert!(!f.is_member(&build(Construction::Clique(9))));
    }

    fn matching_number(g: &Graph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        (0u32..1 << edges.len())
            .filter(|mask| {
                let mut seen = 0u64;
                edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .all(|(_, &(u, v))| {
                        let hit = seen >> u & 1 == 1 || seen >> v & 1 == 1;
                        seen |= 1 << u | 1 << v;
                        !hit
                    })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    /// `T` lies in `S(n,k)` exactly when it has a vertex cover of size `k`,
    /// i.e. matching number at most `k`. A small side of size at most `k` is
    /// sufficient but not necessary: the double star with two leaves on each
    /// centre has sides (3,3) and still fits in `S(n,2)`.
    #[test]
    fn s_boundary_for_small_k() {
        for k in 2..=4 {
            let host = build(Construction::S { n: 30, k });
            let mut balanced_but_contained = 0;
            for tree in &TreeFamily::for_k(k, false).unwrap().trees {
                let found = contains_tree(&host, tree);
                assert_eq!(found.is_some(), matching_number(tree.graph()) <= k);
                if tree.part_a.len() <= k {
                    assert!(found.is_some());
                } else if found.is_some() {
                    balanced_but_contained += 1;
                }
                if let Some(e) = found {
                    assert!(e.is_valid(&host, tree));
                }
            }
            assert!(balanced_but_contained > 0, "k = {k}");
        }
        let double_star = Tree::from_graph(Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])).unwrap();
        assert_eq!(double_star.part_a.len(), 3);
        assert!(contains_tree(&build(Construction::S { n: 30, k: 2 }), &double_star).is_some());
    }

    #[test]
    fn embedding_serializes_as_array() {
        let e = Embedding { map: vec![2, 0, 1] };
        assert_eq!(serde_json::to_string(&e).unwrap(), "[2,0,1]");
    }
}
