#![allow(dead_code)]

pub mod trees;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spexlab::{Graph, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random spanning tree plus independent extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(order[i], order[j]);
    }
    g
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Injective, and every tree edge lands on a host edge. Written against the
/// raw adjacency so it does not share code with the library's own check.
pub fn embedding_ok(host: &Graph, tree: &Tree, map: &[usize]) -> bool {
    let adj = host.adjacency_lists();
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == tree.order()
        && map.iter().all(|&h| h < host.n())
        && tree.graph().edges().all(|(u, v)| adj[map[u]].contains(&map[v]))
}

/// Tree containment by trying every injective map.
pub fn naive_contains(host: &Graph, tree: &Tree) -> bool {
    fn go(host: &Graph, tree: &Tree, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == tree.order() {
            return true;
        }
        for h in 0..host.n() {
            if used[h] {
                continue;
            }
            if tree
                .graph()
                .neighbors(i)
                .filter(|&u| u < i)
                .all(|u| host.has_edge(map[u], h))
            {
                used[h] = true;
                map.push(h);
                if go(host, tree, map, used) {
                    return true;
                }
                map.pop();
                used[h] = false;
            }
        }
        false
    }
    tree.order() <= host.n() && go(host, tree, &mut Vec::new(), &mut vec![false; host.n()])
}

/// Isomorphism classes of graphs on `n` vertices by Burnside's lemma.
pub fn burnside(n: usize) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let (mut total, mut count) = (0u128, 0u128);
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
                    (a, b) = (x.min(y), x.max(y));
                }
            }
        }
        total += 1u128 << cycles;
        count += 1;
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    (total / count) as u64
}
