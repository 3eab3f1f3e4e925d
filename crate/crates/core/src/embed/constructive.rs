//! Explicit embeddings of trees into (augmented) complete bipartite graphs,
//! following the case analysis of the embedding lemmas rather than search.

use super::Embedding;
use crate::error::{param, Error, Result};
use crate::graph::Construction;
use crate::trees::Tree;

/// Host vertices of a bipartite target: `a`-side is `0..a`, `b`-side is
/// `a..a+b`. Slots are handed out in increasing order, skipping reserved ones.
struct Placement {
    map: Vec<usize>,
    a: usize,
    b: usize,
    next_a: usize,
    next_b: usize,
    reserved_b: usize,
}

impl Placement {
    fn new(t: usize, a: usize, b: usize, reserved_b: usize) -> Self {
        Placement {
            map: vec![usize::MAX; t],
            a,
            b,
            next_a: 0,
            next_b: reserved_b,
            reserved_b,
        }
    }

    fn place_a(&mut self, v: usize) -> Result<()> {
        if self.next_a >= self.a {
            return Err(Error::Internal(format!("a-side of size {} overflows", self.a)));
        }
        self.map[v] = self.next_a;
        self.next_a += 1;
        Ok(())
    }

    fn place_b(&mut self, v: usize) -> Result<()> {
        if self.next_b >= self.b {
            return Err(Error::Internal(format!("b-side of size {} overflows", self.b)));
        }
        self.map[v] = self.a + self.next_b;
        self.next_b += 1;
        Ok(())
    }

    /// Puts `v` on reserved `b`-side slot `i`.
    fn place_reserved(&mut self, v: usize, i: usize) {
        debug_assert!(i < self.reserved_b);
        self.map[v] = self.a + i;
    }

    fn finish(self) -> Embedding {
        Embedding { map: self.map }
    }
}

/// Smaller colour class to the `a`-side, larger to the `b`-side.
fn direct(tree: &Tree, a: usize, b: usize) -> Result<Embedding> {
    let mut p = Placement::new(tree.order(), a, b, 0);
    for &v in &tree.part_a {
        p.place_a(v)?;
    }
    for &v in &tree.part_b {
        p.place_b(v)?;
    }
    Ok(p.finish())
}

/// Removes leaf `v` and sends the edge to its neighbour `u` onto the extra
/// edge between the first two `b`-side vertices. `v`'s class (minus `v`) goes
/// to the `a`-side.
fn remove_leaf(tree: &Tree, v: usize, a: usize, b: usize) -> Result<Embedding> {
    let g = tree.graph();
    let u = g.neighbors(v).next().expect("leaf has a neighbour");
    let (own, other) = classes_of(tree, v);
    let mut p = Placement::new(tree.order(), a, b, 2);
    for &w in own.iter().filter(|&&w| w != v) {
        p.place_a(w)?;
    }
    p.place_reserved(u, 0);
    p.place_reserved(v, 1);
    for &w in other.iter().filter(|&&w| w != u) {
        p.place_b(w)?;
    }
    Ok(p.finish())
}

/// The colour class containing `v`, then the other one.
fn classes_of(tree: &Tree, v: usize) -> (&[usize], &[usize]) {
    if tree.in_part_b(v) {
        (&tree.part_b, &tree.part_a)
    } else {
        (&tree.part_a, &tree.part_b)
    }
}

/// Embeds `tree` into `target` by the constructive case analysis.
///
/// Supported targets: `K(floor(m/2), m-1)` for a tree on `m` vertices,
/// `K_plus(k, 2k+1)` for `2k+2` vertices, and `K_path(k, 2k+2)` or
/// `K_matching(k, 2k+2)` for `2k+3` vertices. The result is checked against
/// the built target before it is returned.
pub fn embed_constructive(tree: &Tree, target: &Construction) -> Result<Embedding> {
    let m = tree.order();
    let small = tree.part_a.len();
    let lowest_leaf_in = |part: &[usize]| part.iter().copied().find(|&v| tree.graph().degree(v) == 1);
    let emb = match *target {
        Construction::K { a, b } => {
            if m < 2 || a != m / 2 || b != m - 1 {
                return param(format!(
                    "K(a,b) target for a tree on {m} vertices must be K({}, {})",
                    m / 2,
                    m.saturating_sub(1)
                ));
            }
            direct(tree, a, b)?
        }
        Construction::KPlus { a: k, b } => {
            if k < 1 || b != 2 * k + 1 || m != 2 * k + 2 {
                return param(format!(
                    "K_plus(k, 2k+1) needs a tree on 2k+2 vertices, got K_plus({k}, {b}) and {m}"
                ));
            }
            if small <= k {
                direct(tree, k, b)?
            } else {
                let v = tree.leaves().next().expect("trees have leaves");
                remove_leaf(tree, v, k, b)?
            }
        }
        Construction::KPath { a: k, b } | Construction::KMatching { a: k, b } => {
            let name = if matches!(target, Construction::KPath { .. }) {
                "K_path"
            } else {
                "K_matching"
            };
            if k < 1 || b != 2 * k + 2 || m != 2 * k + 3 {
                return param(format!(
                    "{name}(k, 2k+2) needs a tree on 2k+3 vertices, got {name}({k}, {b}) and {m}"
                ));
            }
            if small <= k {
                direct(tree, k, b)?
            } else if let Some(v) = lowest_leaf_in(&tree.part_a) {
                remove_leaf(tree, v, k, b)?
            } else if matches!(target, Construction::KPath { .. }) {
                remove_middle(tree, k, b)?
            } else {
                remove_two_leaves(tree, k, b)?
            }
        }
        _ => return param(format!("no constructive embedding into {target:?}")),
    };
    let host = target.build()?;
    if !emb.is_valid(&host, tree) {
        return Err(Error::Internal(format!(
            "constructive embedding {:?} into {target:?} is invalid",
            emb.map
        )));
    }
    Ok(emb)
}

/// Every vertex of the smaller class has degree 2. Removes the first one,
/// `v`, and lays `u1 - v - u2` along the extra path on the `b`-side.
fn remove_middle(tree: &Tree, a: usize, b: usize) -> Result<Embedding> {
    let g = tree.graph();
    let v = tree.part_a[0];
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    let &[u1, u2] = nbrs.as_slice() else {
        return Err(Error::Internal(format!(
            "vertex {v} of the smaller class has degree {}",
            nbrs.len()
        )));
    };
    let mut p = Placement::new(tree.order(), a, b, 3);
    for &w in tree.part_a.iter().skip(1) {
        p.place_a(w)?;
    }
    p.place_reserved(u1, 0);
    p.place_reserved(v, 1);
    p.place_reserved(u2, 2);
    for &w in tree.part_b.iter().filter(|&&w| w != u1 && w != u2) {
        p.place_b(w)?;
    }
    Ok(p.finish())
}

/// Every vertex of the smaller class has degree 2. Takes the first two
/// leaves `l1`, `l2` of the larger class and hangs them on the two extra
/// matching edges; the larger class minus them goes to the `a`-side.
fn remove_two_leaves(tree: &Tree, a: usize, b: usize) -> Result<Embedding> {
    let g = tree.graph();
    let leaves: Vec<usize> = tree
        .part_b
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 1)
        .take(2)
        .collect();
    let &[l1, l2] = leaves.as_slice() else {
        return Err(Error::Internal("larger class has fewer than two leaves".into()));
    };
    let w1 = g.neighbors(l1).next().expect("leaf has a neighbour");
    let w2 = g.neighbors(l2).next().expect("leaf has a neighbour");
    if w1 == w2 {
        return Err(Error::Internal(format!(
            "leaves {l1} and {l2} share the neighbour {w1}"
        )));
    }
    let mut p = Placement::new(tree.order(), a, b, 4);
    for &w in tree.part_b.iter().filter(|&&w| w != l1 && w != l2) {
        p.place_a(w)?;
    }
    p.place_reserved(w1, 0);
    p.place_reserved(l1, 1);
    p.place_reserved(w2, 2);
    p.place_reserved(l2, 3);
    for &w in tree.part_a.iter().filter(|&&w| w != w1 && w != w2) {
        p.place_b(w)?;
    }
    Ok(p.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::contains_tree;
    use crate::trees::{generate_trees, TreeFamily};

    #[test]
    fn path_into_k_plus_uses_leaf_removal() {
        let tree = Tree::path(6).unwrap();
        let target = Construction::KPlus { a: 2, b: 5 };
        let e = embed_constructive(&tree, &target).unwrap();
        // Leaf 0 and its neighbour 1 sit on the extra edge.
        assert_eq!((e.map[1], e.map[0]), (2, 3));
        assert!(contains_tree(&target.build().unwrap(), &tree).is_some());
    }

    #[test]
    fn star_is_direct() {
        let tree = Tree::star(6).unwrap();
        let e = embed_constructive(&tree, &Construction::KPlus { a: 2, b: 5 }).unwrap();
        assert_eq!(e.map[0], 0);
    }

    #[test]
    fn seven_vertex_trees_into_both_targets() {
        for tree in &TreeFamily::for_k(2, true).unwrap().trees {
            for target in [
                Construction::KPath { a: 2, b: 6 },
                Construction::KMatching { a: 2, b: 6 },
            ] {
                let e = embed_constructive(tree, &target).unwrap();
                assert!(e.is_valid(&target.build().unwrap(), tree));
            }
        }
    }

    #[test]
    fn bipartite_totality_small() {
        for m in 2..=7 {
            let target = Construction::K { a: m / 2, b: m - 1 };
            for tree in &generate_trees(m).unwrap().trees {
                embed_constructive(tree, &target).unwrap();
            }
        }
    }

    #[test]
    fn shape_mismatch_is_a_parameter_error() {
        let tree = Tree::path(6).unwrap();
        for target in [
            Construction::KPlus { a: 2, b: 6 },
            Construction::K { a: 2, b: 5 },
            Construction::KPath { a: 2, b: 6 },
            Construction::Clique(6),
        ] {
            assert!(
                matches!(embed_constructive(&tree, &target), Err(Error::Parameter(_))),
                "{target:?}"
            );
        }
    }
}
