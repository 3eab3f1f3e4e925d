use rand::Rng;
use spexlab::{Graph, Tree};

/// Uniform labeled tree on `t` vertices from a random Prüfer sequence.
pub fn random_tree(rng: &mut impl Rng, t: usize) -> Tree {
    let mut g = Graph::new(t);
    if t == 2 {
        g.add_edge(0, 1);
    }
    if t > 2 {
        let seq: Vec<usize> = (0..t - 2).map(|_| rng.gen_range(0..t)).collect();
        let mut degree = vec![1; t];
        for &s in &seq {
            degree[s] += 1;
        }
        for &s in &seq {
            let leaf = (0..t).find(|&v| degree[v] == 1).unwrap();
            g.add_edge(leaf, s);
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let ends: Vec<usize> = (0..t).filter(|&v| degree[v] == 1).collect();
        g.add_edge(ends[0], ends[1]);
    }
    Tree::from_graph(g).expect("Prüfer decoding yields a tree")
}
