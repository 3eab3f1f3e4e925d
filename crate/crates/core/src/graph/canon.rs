//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree has equitable ordered partitions as nodes. A child
//! individualizes one vertex of the first non-singleton cell and refines
//! again; leaves are discrete partitions, i.e. vertex orderings. The
//! canonical ordering is the leaf whose relabeled adjacency bit string is
//! largest. Automorphisms discovered when two leaves give the same graph prune
//! the tree: children in the same orbit (under discovered automorphisms fixing
//! the current prefix) are skipped, and the search backjumps to the common
//! ancestor of two equivalent leaves.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{graph6, Graph};

/// Canonical representative of a graph's isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// graph6 encoding of the canonically relabeled graph. Equal iff isomorphic.
    pub bytes: Vec<u8>,
    /// `relabeling[v]` is the canonical label of input vertex `v`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ASCII")
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        graph6::decode(self.as_str()).expect("canonical bytes are valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g).order;
    let mut relabeling = vec![0; g.n()];
    for (i, &v) in lab.iter().enumerate() {
        relabeling[v] = i;
    }
    let bytes = g.relabel(&relabeling).to_graph6().into_bytes();
    CanonicalForm { bytes, relabeling }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g).bytes == canonical_form(h).bytes
}

/// Result of the canonical search.
#[derive(Debug, Clone)]
pub(crate) struct Labeling {
    /// `order[i]` is the vertex that receives canonical label `i`.
    pub order: Vec<usize>,
    /// Automorphisms found during the search, as images `gen[v]`. They
    /// generate a subgroup of the automorphism group.
    pub generators: Vec<Vec<usize>>,
}

pub(crate) fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    let mut root = Partition::unit(n);
    let mut scratch = Scratch::new(n);
    root.refine(g, &mut scratch, 0);
    let mut search = Search {
        g,
        scratch,
        first: None,
        best: None,
        first_path: Vec::new(),
        best_path: Vec::new(),
        path: Vec::new(),
        generators: Vec::new(),
    };
    search.node(&root, 0);
    Labeling {
        order: search.best.expect("search visits at least one leaf").order,
        generators: search.generators,
    }
}

/// Ordered partition of the vertex set into cells of consecutive positions.
#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    /// `cell_end[s]` is the end of the cell starting at position `s`.
    cell_end: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    cells: usize,
}

struct Scratch {
    count: Vec<u32>,
    queued: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            queued: vec![false; n],
            queue: VecDeque::new(),
        }
    }
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        cell_end[0] = n;
        Partition {
            lab: (0..n).collect(),
            cell_end,
            cell_of: vec![0; n],
            cells: 1,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.cell_end[s];
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    /// Splits `v` off the front of its cell, then refines.
    fn individualize(&mut self, g: &Graph, scratch: &mut Scratch, v: usize) {
        let s = self.cell_of[v];
        let e = self.cell_end[s];
        let p = s + self.lab[s..e].iter().position(|&x| x == v).expect("v lies in its cell");
        self.lab.swap(s, p);
        self.cell_end[s] = s + 1;
        self.cell_end[s + 1] = e;
        for q in s + 1..e {
            self.cell_of[self.lab[q]] = s + 1;
        }
        self.cells += 1;
        self.refine(g, scratch, s);
    }

    /// Equitable refinement driven by the queue of splitter cells, seeded with `first`.
    /// Cells split into fragments ordered by ascending neighbour count, which keeps
    /// the ordered result invariant under relabeling.
    fn refine(&mut self, g: &Graph, sc: &mut Scratch, first: usize) {
        let n = self.lab.len();
        sc.queue.clear();
        sc.queued.iter_mut().for_each(|q| *q = false);
        sc.queue.push_back(first);
        sc.queued[first] = true;
        while let Some(ws) = sc.queue.pop_front() {
            if self.is_discrete() {
                break;
            }
            sc.queued[ws] = false;
            sc.count.iter_mut().for_each(|c| *c = 0);
            for p in ws..self.cell_end[ws] {
                for u in g.neighbors(self.lab[p]) {
                    sc.count[u] += 1;
                }
            }
            let mut s = 0;
            while s < n {
                let e = self.cell_end[s];
                if e - s > 1 {
                    let c0 = sc.count[self.lab[s]];
                    if self.lab[s + 1..e].iter().any(|&v| sc.count[v] != c0) {
                        let count = &sc.count;
                        self.lab[s..e].sort_unstable_by_key(|&v| count[v]);
                        let mut fs = s;
                        for p in s + 1..=e {
                            if p == e || count[self.lab[p]] != count[self.lab[p - 1]] {
                                self.cell_end[fs] = p;
                                for q in fs..p {
                                    self.cell_of[self.lab[q]] = fs;
                                }
                                if fs != s {
                                    self.cells += 1;
                                }
                                if !sc.queued[fs] {
                                    sc.queued[fs] = true;
                                    sc.queue.push_back(fs);
                                }
                                fs = p;
                            }
                        }
                    }
                }
                s = e;
            }
        }
    }
}

struct Leaf {
    order: Vec<usize>,
    cert: Vec<u64>,
}

enum Flow {
    Continue,
    /// Unwind to the node at this depth and carry on with its next child.
    JumpTo(usize),
}

struct Search<'a> {
    g: &'a Graph,
    scratch: Scratch,
    first: Option<Leaf>,
    best: Option<Leaf>,
    first_path: Vec<usize>,
    best_path: Vec<usize>,
    path: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

/// Adjacency bits of `g` relabeled by `order`, in graph6 order, packed MSB first
/// so that slice comparison is bit-string comparison.
fn certificate(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut cert = vec![0u64; total.div_ceil(64).max(1)];
    let mut b = 0;
    for j in 1..n {
        let row = g.row(order[j]);
        for &oi in &order[..j] {
            if row[oi >> 6] >> (oi & 63) & 1 == 1 {
                cert[b >> 6] |= 1 << (63 - (b & 63));
            }
            b += 1;
        }
    }
    cert
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn node(&mut self, part: &Partition, depth: usize) -> Flow {
        let Some(s) = part.first_nonsingleton() else {
            return self.leaf(part);
        };
        let mut cell: Vec<usize> = part.lab[s..part.cell_end[s]].to_vec();
        cell.sort_unstable();

        let n = part.lab.len();
        let mut orbits: Vec<usize> = Vec::new();
        let mut orbits_for = usize::MAX;
        let mut explored: Vec<usize> = Vec::new();

        for w in cell {
            if !explored.is_empty() && !self.generators.is_empty() {
                if orbits_for != self.generators.len() {
                    orbits = self.stabilizer_orbits(n);
                    orbits_for = self.generators.len();
                }
                let rw = find(&mut orbits, w);
                if explored.iter().any(|&x| find(&mut orbits, x) == rw) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = part.clone();
            child.individualize(self.g, &mut self.scratch, w);
            self.path.push(w);
            let flow = self.node(&child, depth + 1);
            self.path.pop();
            if let Flow::JumpTo(d) = flow {
                if d < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    /// Orbits of the group generated by the known automorphisms that fix the
    /// current path pointwise, as a union-find forest.
    fn stabilizer_orbits(&self, n: usize) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..n).collect();
        for gen in &self.generators {
            if self.path.iter().all(|&v| gen[v] == v) {
                for v in 0..n {
                    let a = find(&mut parent, v);
                    let b = find(&mut parent, gen[v]);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        parent
    }

    fn leaf(&mut self, part: &Partition) -> Flow {
        let order = part.lab.clone();
        let cert = certificate(self.g, &order);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                order: order.clone(),
                cert: cert.clone(),
            });
            self.best = Some(Leaf { order, cert });
            self.first_path = self.path.clone();
            self.best_path = self.path.clone();
            return Flow::Continue;
        };
        if cert == first.cert {
            let gen = automorphism(&first.order, &order);
            self.generators.push(gen);
            return Flow::JumpTo(common_prefix(&self.path, &self.first_path));
        }
        let best = self.best.as_ref().expect("best is set with first");
        match cert.cmp(&best.cert) {
            Ordering::Equal => {
                let gen = automorphism(&best.order, &order);
                self.generators.push(gen);
                Flow::JumpTo(common_prefix(&self.path, &self.best_path))
            }
            Ordering::Greater => {
                self.best = Some(Leaf { order, cert });
                self.best_path = self.path.clone();
                Flow::Continue
            }
            Ordering::Less => Flow::Continue,
        }
    }
}

/// The permutation mapping `from[i]` to `to[i]` for every position `i`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gen = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b;
    }
    gen
}
