//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero when a criterion fails.
//!
//! Criterion 5 asks for `(t-2)n/2 <= ex(n, T)` at every small `n`, which is
//! false whenever `t - 1` does not divide `n` (for example `ex(5, P_3) = 2`).
//! It is run and reported as is. Its failure only affects the exit status
//! when `ACCEPTANCE_STRICT=1` is set.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::Rng;
use spexlab::embed::{contains_tree, embed_constructive};
use spexlab::graph::canonical_form;
use spexlab::search::{enumerate_graphs, ex_search, spex_search, BestValue, SearchOptions};
use spexlab::spectral::{
    audit_extremal_lemmas, classify_vertices, closed_form_lambda_s, default_constants, spectral_radius, PerronData,
    DEFAULT_TOL,
};
use spexlab::{generate_trees, Construction, Graph, Tree, TreeFamily};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs as f64, || {
        format!("took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

fn build(c: Construction) -> Graph {
    c.build().expect("valid construction")
}

/// Every Perron vector computed by the suite, for the residual check.
#[derive(Default)]
struct Residuals(Vec<(String, f64)>);

impl Residuals {
    fn radius(&mut self, what: impl Into<String>, g: &Graph) -> PerronData {
        let p = spectral_radius(g, DEFAULT_TOL).expect("power iteration converges");
        self.0.push((what.into(), p.residual));
        p
    }
}

fn closed_form(res: &mut Residuals) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for k in 2..=5 {
        for n in k + 1..=60 {
            let p = res.radius(format!("S({n},{k})"), &build(Construction::S { n, k }));
            let cf = closed_form_lambda_s(n, k).unwrap();
            let err = (p.lambda - cf).abs();
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("S({n},{k}): {} vs closed form {cf}", p.lambda))?;
        }
    }
    for (n, want) in [(5, 3.0), (12, 5.0), (30, 8.0)] {
        let p = res.radius(format!("S({n},2)"), &build(Construction::S { n, k: 2 }));
        ensure((p.lambda - want).abs() <= 1e-9, || {
            format!("lambda(S({n},2)) = {}, want {want}", p.lambda)
        })?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("max deviation {worst:.2e}"))
}

fn path_exclusions() -> Outcome {
    let start = Instant::now();
    let n = 30;
    for k in 2..=4 {
        let s = build(Construction::S { n, k });
        let s_plus = build(Construction::SPlus { n, k });
        ensure(contains_tree(&s, &Tree::path(2 * k + 2).unwrap()).is_none(), || {
            format!("P_{} found in S({n},{k})", 2 * k + 2)
        })?;
        ensure(
            contains_tree(&s_plus, &Tree::path(2 * k + 3).unwrap()).is_none(),
            || format!("P_{} found in S+({n},{k})", 2 * k + 3),
        )?;
        // The next longer path does fit, so the check is not vacuous.
        ensure(contains_tree(&s, &Tree::path(2 * k + 1).unwrap()).is_some(), || {
            format!("P_{} missing from S({n},{k})", 2 * k + 1)
        })?;
    }
    within(start.elapsed(), 5)?;
    Ok("k = 2..4, n = 30".into())
}

fn check_total(family: &TreeFamily, target: Construction) -> Result<usize, String> {
    let host = build(target.clone());
    for tree in &family.trees {
        let e = embed_constructive(tree, &target).map_err(|e| format!("{target:?}: {e}"))?;
        ensure(common::embedding_ok(&host, tree, &e.map), || {
            format!("{target:?}: invalid map {:?} for {}", e.map, tree.graph().to_graph6())
        })?;
    }
    Ok(family.len())
}

fn bipartite_totality() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for m in 2..=10 {
        total += check_total(&generate_trees(m).unwrap(), Construction::K { a: m / 2, b: m - 1 })?;
    }
    within(start.elapsed(), 30)?;
    Ok(format!("{total} trees on 2..10 vertices"))
}

fn augmented_totality() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for k in 2..=4 {
        let fam = TreeFamily::for_k(k, false).unwrap();
        total += check_total(&fam, Construction::KPlus { a: k, b: 2 * k + 1 })?;
        let fam = TreeFamily::for_k(k, true).unwrap();
        total += check_total(&fam, Construction::KPath { a: k, b: 2 * k + 2 })?;
        total += check_total(&fam, Construction::KMatching { a: k, b: 2 * k + 2 })?;
    }
    within(start.elapsed(), 120)?;
    Ok(format!("{total} embeddings for k = 2..4"))
}

fn turan_sandwich() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let mut violations = Vec::new();
    let mut cases = 0;
    for t in 2..=5 {
        for tree in &generate_trees(t).unwrap().trees {
            for n in t..=8 {
                let r = ex_search(n, tree, &opts).map_err(|e| e.to_string())?;
                ensure(r.verified, || {
                    format!("ex({n}, {}) not verified", tree.graph().to_graph6())
                })?;
                let best = r.best_value.map(BestValue::as_f64).unwrap_or(f64::NAN);
                let (lo, hi) = ((t as f64 - 2.0) * n as f64 / 2.0, (t as f64 - 2.0) * n as f64);
                cases += 1;
                if !(lo <= best && best <= hi) {
                    violations.push(format!("ex({n},{})={best}<{lo}", tree.graph().to_graph6()));
                }
            }
        }
    }
    let spot = |n: usize, tree: Tree| {
        ex_search(n, &tree, &opts)
            .ok()
            .and_then(|r| r.best_value)
            .map(BestValue::as_f64)
    };
    ensure(spot(6, Tree::path(4).unwrap()) == Some(6.0), || {
        "ex(6, P_4) != 6".into()
    })?;
    ensure(spot(5, Tree::star(4).unwrap()) == Some(5.0), || {
        "ex(5, K_1,3) != 5".into()
    })?;
    within(start.elapsed(), 300)?;
    // t = 1 is vacuous: every graph contains a vertex.
    ensure(violations.is_empty(), || {
        format!(
            "{} of {cases} cases below the lower bound: {}",
            violations.len(),
            violations.join(" ")
        )
    })?;
    Ok(format!("{cases} cases"))
}

/// Bitmask over the pairs `(u, v)`, `u < v`, in a fixed order.
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = i;
            idx[v][u] = i;
            i += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Images of every pair index under every permutation.
fn pair_images(n: usize) -> Vec<Vec<usize>> {
    let idx = pair_index(n);
    permutations(n)
        .iter()
        .map(|p| {
            let mut img = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    img.push(idx[p[u]][p[v]]);
                }
            }
            img
        })
        .collect()
}

fn permute_mask(mask: u32, img: &[usize]) -> u32 {
    img.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

/// Isomorphism classes of labeled graphs on `n` vertices, each as its
/// smallest mask, found by sweeping all masks and marking whole orbits.
fn labeled_classes(n: usize) -> HashSet<u32> {
    let pairs = n * (n - 1) / 2;
    let images = pair_images(n);
    let mut seen = vec![false; 1 << pairs];
    let mut reps = HashSet::new();
    for mask in 0..1u32 << pairs {
        if seen[mask as usize] {
            continue;
        }
        reps.insert(mask);
        for img in &images {
            seen[permute_mask(mask, img) as usize] = true;
        }
    }
    reps
}

fn smallest_mask(g: &Graph, images: &[Vec<usize>]) -> u32 {
    let n = g.n();
    let idx = pair_index(n);
    let mask = g.edges().fold(0u32, |acc, (u, v)| acc | 1 << idx[u][v]);
    images.iter().map(|img| permute_mask(mask, img)).min().unwrap()
}

fn enumeration_counts() -> Outcome {
    let start = Instant::now();
    for (n, want) in [(6, 156), (7, 1044)] {
        let oracle = labeled_classes(n);
        ensure(oracle.len() == want, || {
            format!("oracle finds {} classes at n = {n}", oracle.len())
        })?;
        let images = pair_images(n);
        let produced: Vec<u32> = enumerate_graphs(n, false)
            .unwrap()
            .iter()
            .map(|g| smallest_mask(&g, &images))
            .collect();
        let distinct: HashSet<u32> = produced.iter().copied().collect();
        ensure(produced.len() == want && distinct == oracle, || {
            format!("n = {n}: {} produced, {} distinct", produced.len(), distinct.len())
        })?;
    }
    let e8 = enumerate_graphs(8, false).unwrap();
    let forms: HashSet<Vec<u8>> = e8.iter().map(|g| canonical_form(&g).bytes).collect();
    let burnside = common::burnside(8);
    ensure(forms.len() == 12346 && burnside == 12346 && e8.count() == 12346, || {
        format!("n = 8: {} distinct, Burnside {burnside}", forms.len())
    })?;
    within(start.elapsed(), 120)?;
    Ok("156 / 1044 / 12346".into())
}

fn spex_dominance() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let run = |n: usize, threads: Option<usize>| -> Result<String, String> {
        let go = || {
            spex_search(n, 2, false, &opts)
                .map(|r| r.to_json())
                .map_err(|e| e.to_string())
        };
        match threads {
            None => go(),
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| e.to_string())?
                .install(go),
        }
    };
    let mut notes = Vec::new();
    for n in 6..=9 {
        let r = spex_search(n, 2, false, &opts).map_err(|e| e.to_string())?;
        let cf = closed_form_lambda_s(n, 2).unwrap();
        let best = r.best_value.map(BestValue::as_f64).unwrap_or(f64::NAN);
        ensure(best >= cf - 1e-9, || format!("n = {n}: best {best} below {cf}"))?;
        ensure(r.verified, || format!("n = {n}: argmax not re-verified"))?;
        let is_s = r.comparison.argmax_contains_s.unwrap_or(false);
        notes.push(format!("n={n} argmax{}S", if is_s { "∋" } else { "∌" }));
        let first = r.to_json();
        for threads in [None, Some(1), Some(4)] {
            ensure(run(n, threads)? == first, || {
                format!("n = {n}: report differs with {threads:?} threads")
            })?;
        }
    }
    if start.elapsed() > Duration::from_secs(900) {
        notes.push(format!(
            "over the 15 min target ({:.0}s)",
            start.elapsed().as_secs_f64()
        ));
    }
    Ok(notes.join(", "))
}

fn perron_structure(res: &mut Residuals) -> Outcome {
    let start = Instant::now();
    let (n, k) = (2500, 2);
    let g = build(Construction::S { n, k });
    let p = res.radius("S(2500,2)", &g);
    let c = default_constants(k).unwrap();

    // Quotient check: clique vertices carry 1, independent ones k / lambda.
    let lambda = closed_form_lambda_s(n, k).unwrap();
    ensure((p.lambda - lambda).abs() <= 1e-9, || {
        format!("lambda {} vs {lambda}", p.lambda)
    })?;
    let y = k as f64 / lambda;
    for v in 0..n {
        let want = if v < k { 1.0 } else { y };
        ensure((p.x[v] - want).abs() <= 1e-9, || {
            format!("x[{v}] = {} vs {want}", p.x[v])
        })?;
    }

    let part = classify_vertices(&g, &p, &c);
    ensure(part.l_prime == (0..k).collect::<Vec<_>>(), || {
        format!("L' = {:?}", part.l_prime)
    })?;
    ensure(part.e.is_empty(), || format!("|E| = {}", part.e.len()))?;
    ensure(g.edges_within(&part.r) <= 1, || {
        format!("e(R) = {}", g.edges_within(&part.r))
    })?;
    let floor = k as f64 - 1.0 / (16.0 * (k * k) as f64);
    let min_weight = (0..n)
        .map(|v| g.neighbors(v).map(|w| p.x[w]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    ensure(min_weight >= floor, || {
        format!("min neighbourhood weight {min_weight} < {floor}")
    })?;

    let audit = audit_extremal_lemmas(&g, k, &c, &p);
    for id in ["L-prime-size", "E-empty", "R-edges", "min-neighborhood-weight"] {
        let entry = audit.entry(id).ok_or_else(|| format!("audit lacks {id}"))?;
        ensure(entry.pass, || format!("audit {id} fails with margin {}", entry.margin))?;
    }
    within(start.elapsed(), 30)?;
    Ok(format!(
        "|L'| = 2, E empty, e(R) = {}, min weight {min_weight:.6}",
        g.edges_within(&part.r)
    ))
}

fn numerical_properties(res: &mut Residuals) -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(0x5eed);
    for i in 0..100 {
        let mut g = common::random_connected_graph(&mut rng, 8, 0.3);
        let non_edges: Vec<(usize, usize)> = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        if non_edges.is_empty() {
            continue;
        }
        let before = res.radius(format!("random graph {i}"), &g).lambda;
        let (u, v) = non_edges[rng.gen_range(0..non_edges.len())];
        g.add_edge(u, v);
        let after = res.radius(format!("random graph {i} + edge"), &g).lambda;
        ensure(after > before, || {
            format!("{}: adding {u}{v} gives {after} <= {before}", g.to_graph6())
        })?;
    }

    let g = common::random_graph(&mut rng, 8, 0.5);
    let form = canonical_form(&g).bytes;
    for _ in 0..1000 {
        let perm = common::random_permutation(&mut rng, 8);
        let h = g.relabel(&perm);
        ensure(canonical_form(&h).bytes == form, || {
            format!("{} relabeled by {perm:?}", g.to_graph6())
        })?;
    }

    let worst = res
        .0
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .unwrap_or_default();
    ensure(res.0.iter().all(|(_, r)| *r <= 1e-12), || {
        format!("residual {:.3e} on {}", worst.1, worst.0)
    })?;
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{} Perron vectors, worst residual {:.2e}",
        res.0.len(),
        worst.1
    ))
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut res = Residuals::default();
    let criteria: Vec<(u32, Box<dyn FnOnce(&mut Residuals) -> Outcome>)> = vec![
        (1, Box::new(closed_form)),
        (2, Box::new(|_| path_exclusions())),
        (3, Box::new(|_| bipartite_totality())),
        (4, Box::new(|_| augmented_totality())),
        (5, Box::new(|_| turan_sandwich())),
        (6, Box::new(|_| enumeration_counts())),
        (7, Box::new(|_| spex_dominance())),
        (8, Box::new(perron_structure)),
        (9, Box::new(numerical_properties)),
    ];
    let mut fatal = false;
    for (id, run) in criteria {
        let start = Instant::now();
        let outcome = run(&mut res);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                println!("criterion {id}: FAIL ({secs:.1}s) {detail}");
                fatal |= id != 5 || strict;
            }
        }
    }
    if fatal {
        std::process::exit(1);
    }
}
