use serde::{Deserialize, Serialize};

use super::{Constants, PerronData};
use crate::graph::bits;
use crate::graph::Graph;

/// Vertex classes cut out of the Perron vector by the weight thresholds.
///
/// All sets are sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    /// `x_v >= alpha`.
    pub l: Vec<usize>,
    /// `x_v < alpha`.
    pub s: Vec<usize>,
    /// `x_v >= alpha / 3`.
    pub m: Vec<usize>,
    /// `x_v >= eta`, within `l`.
    pub l_prime: Vec<usize>,
    /// Common neighbourhood of `l_prime` (all of `V` when `l_prime` is empty).
    pub r: Vec<usize>,
    /// Everything outside `l_prime` and `r`.
    pub e: Vec<usize>,
}

pub fn classify_vertices(g: &Graph, p: &PerronData, c: &Constants) -> VertexPartition {
    let n = g.n();
    let l: Vec<usize> = (0..n).filter(|&v| p.x[v] >= c.alpha).collect();
    let s: Vec<usize> = (0..n).filter(|&v| p.x[v] < c.alpha).collect();
    let m: Vec<usize> = (0..n).filter(|&v| p.x[v] >= c.alpha / 3.0).collect();
    let l_prime: Vec<usize> = l.iter().copied().filter(|&v| p.x[v] >= c.eta).collect();

    let mut common = vec![!0u64; g.words()];
    for &v in &l_prime {
        for (a, b) in common.iter_mut().zip(g.row(v)) {
            *a &= b;
        }
    }
    let r: Vec<usize> = bits::ones(&common).filter(|&v| v < n).collect();
    let e: Vec<usize> = (0..n)
        .filter(|v| l_prime.binary_search(v).is_err() && r.binary_search(v).is_err())
        .collect();
    VertexPartition { l, s, m, l_prime, r, e }
}
