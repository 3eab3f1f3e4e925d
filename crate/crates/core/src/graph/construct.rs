use super::{Graph, MAX_VERTICES};
use crate::error::{param, Result};

/// Descriptor for the named graph families.
///
/// Vertex labels are fixed: join / small-side vertices come first, then the
/// independent or augmented side. `KPlus`, `KPath` and `KMatching` place their
/// extra edges on the first vertices of the `b` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// `K_k` joined with an independent set of `n - k` vertices.
    S {
        n: usize,
        k: usize,
    },
    /// `S(n, k)` plus the edge between the first two independent vertices.
    SPlus {
        n: usize,
        k: usize,
    },
    /// Complete bipartite `K_{a,b}`.
    K {
        a: usize,
        b: usize,
    },
    /// `K_{a,b}` plus one edge inside the `b` side.
    KPlus {
        a: usize,
        b: usize,
    },
    /// `K_{a,b}` plus a path on three vertices inside the `b` side.
    KPath {
        a: usize,
        b: usize,
    },
    /// `K_{a,b}` plus a two-edge matching inside the `b` side.
    KMatching {
        a: usize,
        b: usize,
    },
    Path(usize),
    Clique(usize),
    Cycle(usize),
    /// Edgeless graph.
    Empty(usize),
    Join(Box<Construction>, Box<Construction>),
    DisjointUnion(Box<Construction>, Box<Construction>),
}

fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_VERTICES).contains(&n) {
        Ok(())
    } else {
        param(format!("vertex count {n} must lie in 1..={MAX_VERTICES}"))
    }
}

fn check_bipartite(a: usize, b: usize, min_b: usize, name: &str) -> Result<()> {
    if a < 1 {
        return param(format!("{name}: a = {a} must be at least 1"));
    }
    if b < min_b {
        return param(format!("{name}: b = {b} must be at least {min_b}"));
    }
    check_size(a + b)
}

impl Construction {
    /// Number of vertices the descriptor produces, without building it.
    pub fn order(&self) -> usize {
        use Construction::*;
        match self {
            S { n, .. } | SPlus { n, .. } => *n,
            K { a, b } | KPlus { a, b } | KPath { a, b } | KMatching { a, b } => a + b,
            Path(t) | Clique(t) | Cycle(t) | Empty(t) => *t,
            Join(g, h) | DisjointUnion(g, h) => g.order() + h.order(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        use Construction::*;
        match *self {
            S { n, k } => {
                if k < 1 || k >= n {
                    return param(format!("S(n,k) requires 1 <= k < n, got n = {n}, k = {k}"));
                }
                check_size(n)?;
                Ok(clique(k).join(&Graph::new(n - k)))
            }
            SPlus { n, k } => {
                if k < 1 {
                    return param(format!("S_plus(n,k) requires k >= 1, got k = {k}"));
                }
                if n < k + 2 {
                    return param(format!("S_plus(n,k) requires n - k >= 2, got n = {n}, k = {k}"));
                }
                check_size(n)?;
                let mut g = clique(k).join(&Graph::new(n - k));
                g.add_edge(k, k + 1);
                Ok(g)
            }
            K { a, b } => {
                check_bipartite(a, b, 1, "K(a,b)")?;
                Ok(Graph::new(a).join(&Graph::new(b)))
            }
            KPlus { a, b } => {
                check_bipartite(a, b, 2, "K_plus(a,b)")?;
                let mut g = Graph::new(a).join(&Graph::new(b));
                g.add_edge(a, a + 1);
                Ok(g)
            }
            KPath { a, b } => {
                check_bipartite(a, b, 3, "K_path(a,b)")?;
                let mut g = Graph::new(a).join(&Graph::new(b));
                g.add_edge(a, a + 1);
                g.add_edge(a + 1, a + 2);
                Ok(g)
            }
            KMatching { a, b } => {
                check_bipartite(a, b, 4, "K_matching(a,b)")?;
                let mut g = Graph::new(a).join(&Graph::new(b));
                g.add_edge(a, a + 1);
                g.add_edge(a + 2, a + 3);
                Ok(g)
            }
            Path(t) => {
                check_size(t)?;
                let mut g = Graph::new(t);
                for v in 1..t {
                    g.add_edge(v - 1, v);
                }
                Ok(g)
            }
            Clique(t) => {
                check_size(t)?;
                Ok(clique(t))
            }
            Cycle(t) => {
                if t < 3 {
                    return param(format!("cycle(t) requires t >= 3, got t = {t}"));
                }
                check_size(t)?;
                let mut g = Graph::new(t);
                for v in 0..t {
                    g.add_edge(v, (v + 1) % t);
                }
                Ok(g)
            }
            Empty(t) => {
                check_size(t)?;
                Ok(Graph::new(t))
            }
            Join(ref g, ref h) => {
                check_size(self.order())?;
                Ok(g.build()?.join(&h.build()?))
            }
            DisjointUnion(ref g, ref h) => {
                check_size(self.order())?;
                Ok(g.build()?.disjoint_union(&h.build()?))
            }
        }
    }
}

fn clique(t: usize) -> Graph {
    let mut g = Graph::new(t);
    for u in 0..t {
        for v in u + 1..t {
            g.add_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn s_5_2() {
        let g = Construction::S { n: 5, k: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(sorted_degrees(&g), vec![4, 4, 2, 2, 2]);
    }

    #[test]
    fn s_plus_5_2() {
        let g = Construction::SPlus { n: 5, k: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 8);
        let indep_pairs: Vec<_> = g.edges().filter(|&(u, _)| u >= 2).collect();
        assert_eq!(indep_pairs, vec![(2, 3)]);
    }

    #[test]
    fn augmented_bipartite_edge_counts() {
        assert_eq!(Construction::K { a: 2, b: 6 }.build().unwrap().edge_count(), 12);
        assert_eq!(Construction::KPlus { a: 2, b: 6 }.build().unwrap().edge_count(), 13);
        assert_eq!(Construction::KPath { a: 2, b: 6 }.build().unwrap().edge_count(), 14);
        let m = Construction::KMatching { a: 2, b: 6 }.build().unwrap();
        assert_eq!(m.edge_count(), 14);
        assert!(m.has_edge(2, 3) && m.has_edge(4, 5) && !m.has_edge(3, 4));
    }

    #[test]
    fn s_degrees_for_all_small_parameters() {
        for n in 2..=60 {
            for k in 1..n {
                let g = Construction::S { n, k }.build().unwrap();
                assert_eq!(g.edge_count(), k * (k - 1) / 2 + k * (n - k));
                assert_eq!(g.recount_edges(), g.edge_count());
                for v in 0..n {
                    let want = if v < k { n - 1 } else { k };
                    assert_eq!(g.degree(v), want, "S({n},{k}) vertex {v}");
                }
            }
        }
    }

    #[test]
    fn parameter_errors_name_the_bound() {
        let cases = [
            (Construction::S { n: 3, k: 3 }, "k < n"),
            (Construction::SPlus { n: 4, k: 3 }, "n - k >= 2"),
            (Construction::KPlus { a: 2, b: 1 }, "at least 2"),
            (Construction::KPath { a: 2, b: 2 }, "at least 3"),
            (Construction::KMatching { a: 2, b: 3 }, "at least 4"),
            (Construction::Cycle(2), "t >= 3"),
            (Construction::Path(0), "1..="),
        ];
        for (c, needle) in cases {
            let err = c.build().unwrap_err().to_string();
            assert!(err.contains(needle), "{err:?} lacks {needle:?}");
        }
    }

    #[test]
    fn join_and_union() {
        let c = Construction::Join(Box::new(Construction::Clique(2)), Box::new(Construction::Empty(3)));
        assert_eq!(c.build().unwrap(), Construction::S { n: 5, k: 2 }.build().unwrap());
        let u = Construction::DisjointUnion(Box::new(Construction::Clique(3)), Box::new(Construction::Clique(3)));
        let g = u.build().unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.components().len(), 2);
    }
}
