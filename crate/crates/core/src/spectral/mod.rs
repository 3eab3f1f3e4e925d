//! Spectral radius and scaled Perron vector of the adjacency matrix.
//!
//! Power iteration runs on `A + I`, which is primitive for a connected graph,
//! so bipartite components do not oscillate. Convergence is judged on the
//! eigen-equation residual `max_v |(A x)_v - lambda x_v|`, with `lambda` the
//! Rayleigh quotient of the current iterate. Sums use compensated
//! accumulation so that the residual floor stays far below the default
//! tolerance even for vertices of degree in the thousands.

mod audit;
mod constants;
mod partition;

pub use audit::{audit_extremal_lemmas, AuditEntry, AuditKind, AuditReport};
pub use constants::{default_constants, Constants, CONSTANT_SLACK};
pub use partition::{classify_vertices, VertexPartition};

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::{canonical_form, Graph};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Components above this size never go through canonical tie-breaking; ties
/// between them fall back to the smallest vertex index.
const CANONICAL_TIE_BREAK_LIMIT: usize = 64;

/// Spectral radius with its Perron vector scaled to maximum entry 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronData {
    pub lambda: f64,
    pub x: Vec<f64>,
    /// `max_v |(A x)_v - lambda x_v|`.
    pub residual: f64,
    /// Smallest vertex with `x[z] == 1`.
    pub z: usize,
}

/// Power iteration settings.
#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl PowerIteration {
    pub fn with_tol(tol: f64) -> Self {
        PowerIteration {
            tol,
            ..Default::default()
        }
    }

    /// Runs from the all-ones start vector.
    pub fn run(&self, g: &Graph) -> Result<PerronData> {
        self.run_from(g, &vec![1.0; g.n()])
    }

    /// Runs from `start`, which must be entrywise positive.
    pub fn run_from(&self, g: &Graph, start: &[f64]) -> Result<PerronData> {
        if !(self.tol > 0.0) {
            return param(format!("tolerance must be positive, got {}", self.tol));
        }
        if start.len() != g.n() || start.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return param("start vector must have one finite positive entry per vertex");
        }
        let comps = g.components();
        let mut best: Option<(usize, ComponentResult)> = None;
        for (ci, comp) in comps.iter().enumerate() {
            let res = self.component(g, comp, start)?;
            let better = match &best {
                None => true,
                Some((bi, b)) => {
                    if res.lambda > b.lambda + self.tol {
                        true
                    } else if res.lambda < b.lambda - self.tol {
                        false
                    } else {
                        tie_break(g, comp, &comps[*bi])
                    }
                }
            };
            if better {
                best = Some((ci, res));
            }
        }
        let (ci, res) = best.expect("a graph has at least one component");
        let mut x = vec![0.0; g.n()];
        for (&v, &xv) in comps[ci].iter().zip(&res.x) {
            x[v] = xv;
        }
        let z = comps[ci][res.z];
        Ok(PerronData {
            lambda: res.lambda,
            x,
            residual: res.residual,
            z,
        })
    }

    fn component(&self, g: &Graph, comp: &[usize], start: &[f64]) -> Result<ComponentResult> {
        if comp.len() == 1 {
            return Ok(ComponentResult {
                lambda: 0.0,
                x: vec![1.0],
                residual: 0.0,
                z: 0,
            });
        }
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| g.neighbors(v).map(|u| local[u]).collect())
            .collect();
        let mut x: Vec<f64> = comp.iter().map(|&v| start[v]).collect();
        scale_to_max(&mut x);
        let mut y = vec![0.0; x.len()];
        let mut last = None;
        for iter in 0..self.max_iter {
            multiply(&adj, &x, &mut y);
            let lambda = ksum(x.iter().zip(&y).map(|(a, b)| a * b)) / ksum(x.iter().map(|a| a * a));
            let residual = x
                .iter()
                .zip(&y)
                .map(|(xv, yv)| (yv - lambda * xv).abs())
                .fold(0.0, f64::max);
            if residual <= self.tol {
                let z = argmax(&x);
                return Ok(ComponentResult { lambda, x, residual, z });
            }
            last = Some((lambda, residual, iter));
            for (xv, yv) in x.iter_mut().zip(&y) {
                *xv += yv;
            }
            scale_to_max(&mut x);
        }
        let (lambda, residual, _) = last.unwrap_or((0.0, f64::INFINITY, 0));
        let z = argmax(&x);
        let mut full = vec![0.0; g.n()];
        for (&v, &xv) in comp.iter().zip(&x) {
            full[v] = xv;
        }
        Err(Error::Convergence {
            best: Box::new(PerronData {
                lambda,
                x: full,
                residual,
                z: comp[z],
            }),
            iterations: self.max_iter,
        })
    }
}

struct ComponentResult {
    lambda: f64,
    x: Vec<f64>,
    residual: f64,
    z: usize,
}

/// True when `cand` should replace `incumbent` among equal-lambda components.
fn tie_break(g: &Graph, cand: &[usize], incumbent: &[usize]) -> bool {
    if cand.len() <= CANONICAL_TIE_BREAK_LIMIT && incumbent.len() <= CANONICAL_TIE_BREAK_LIMIT {
        let a = canonical_form(&g.induced(cand)).bytes;
        let b = canonical_form(&g.induced(incumbent)).bytes;
        if a != b {
            return a < b;
        }
    }
    cand[0] < incumbent[0]
}

fn scale_to_max(x: &mut [f64]) {
    let m = x.iter().copied().fold(0.0, f64::max);
    for v in x.iter_mut() {
        *v /= m;
    }
}

fn argmax(x: &[f64]) -> usize {
    let m = x.iter().copied().fold(0.0, f64::max);
    x.iter().position(|&v| v == m).expect("nonempty vector")
}

/// Neumaier-compensated sum.
fn ksum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn multiply(adj: &[Vec<usize>], x: &[f64], y: &mut [f64]) {
    for (yv, nbrs) in y.iter_mut().zip(adj) {
        *yv = ksum(nbrs.iter().map(|&u| x[u]));
    }
}

/// `(A x)_v` for every vertex, with compensated sums.
pub fn adjacency_times(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|v| ksum(g.neighbors(v).map(|u| x[u]))).collect()
}

/// Spectral radius and scaled Perron vector, from the all-ones start.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<PerronData> {
    PowerIteration::with_tol(tol).run(g)
}

/// `lambda(S(n,k)) = (k - 1 + sqrt((k-1)^2 + 4k(n-k))) / 2`, the larger root of
/// `t^2 - (k-1) t - k(n-k)` from the two-cell equitable quotient.
pub fn closed_form_lambda_s(n: usize, k: usize) -> Result<f64> {
    if k < 1 || k >= n {
        return param(format!("closed form requires 1 <= k < n, got n = {n}, k = {k}"));
    }
    let (n, k) = (n as f64, k as f64);
    Ok((k - 1.0 + ((k - 1.0).powi(2) + 4.0 * k * (n - k)).sqrt()) / 2.0)
}
