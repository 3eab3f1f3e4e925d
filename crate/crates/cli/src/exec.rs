use std::io::{IsTerminal, Write};

use serde::Serialize;
use serde_json::Value;
use spexlab::embed::{contains_tree, embed_constructive, family_membership};
use spexlab::graph::graph6;
use spexlab::numfmt::fmt_sig;
use spexlab::search::{enumerate_graphs, ex_search, spex_search, SearchReport};
use spexlab::spectral::{audit_extremal_lemmas, classify_vertices, spectral_radius, Constants};
use spexlab::{generate_trees, Construction, Graph, Tree, TreeFamily};

use crate::plan::{Command, CommandPlan, Format, LemmaTarget, TreeSelection};
use crate::schema::*;
use crate::CliError;

fn g6(g: &Graph) -> Result<String, CliError> {
    Ok(graph6::encode(g)?)
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

/// `key value` lines from a JSON value, nested keys joined by dots and
/// scalar arrays on one line.
fn table(value: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Number(n) if n.is_f64() => Some(fmt_sig(n.as_f64().unwrap())),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            _ => None,
        }
    }
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        if let Some(s) = scalar(v) {
            rows.push((prefix.to_string(), s));
            return;
        }
        match v {
            Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
                let joined: Vec<String> = items.iter().filter_map(scalar).collect();
                rows.push((prefix.to_string(), joined.join(" ")));
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), item, rows);
                }
            }
            Value::Object(map) => {
                for (k, item) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, item, rows);
                }
            }
            _ => unreachable!("scalars handled above"),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines(rows.into_iter().map(|(k, v)| format!("{k:<width$}  {v}")))
}

/// JSON or table rendering of a structured output.
fn structured<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Table => table(&serde_json::to_value(value).expect("outputs serialize")),
        _ => pretty(value),
    }
}

fn constants_output(c: &Constants) -> ConstantsOutput {
    ConstantsOutput {
        k: c.k,
        eta: c.eta,
        epsilon: c.epsilon,
        alpha: c.alpha,
        delta: c.delta,
        satisfies_chain: c.satisfies_chain,
    }
}

fn lemma_target(target: LemmaTarget, m: usize) -> Construction {
    let k = m.saturating_sub(2) / 2;
    match target {
        LemmaTarget::Bipartite => Construction::K { a: m / 2, b: m - 1 },
        LemmaTarget::Plus => Construction::KPlus { a: k, b: 2 * k + 1 },
        LemmaTarget::Path => Construction::KPath { a: k, b: 2 * k + 2 },
        LemmaTarget::Matching => Construction::KMatching { a: k, b: 2 * k + 2 },
    }
}

fn search_output(report: &SearchReport, format: Format) -> String {
    match format {
        Format::G6 => report.argmax_graph6(),
        Format::Csv => report.to_csv(),
        Format::Table => table(&serde_json::to_value(report).expect("reports serialize")),
        Format::Json => report.to_json(),
    }
}

/// Runs the plan and returns the complete output. Nothing is written, so a
/// failure never leaves partial output behind.
pub fn render(plan: &CommandPlan, format: Format) -> Result<String, CliError> {
    Ok(match &plan.command {
        Command::Construct { label, graph } => {
            if format == Format::G6 {
                return Ok(lines([g6(graph)?]));
            }
            let out = ConstructOutput {
                construction: label.clone(),
                n: graph.n(),
                edge_count: graph.edge_count(),
                graph6: g6(graph)?,
                degrees: graph.degrees(),
            };
            structured(&out, format)
        }
        Command::Trees { t, count_only } => {
            let fam = generate_trees(*t)?;
            if *count_only {
                return Ok(format!("{}\n", fam.len()));
            }
            if format == Format::G6 {
                return Ok(fam.to_graph6_lines());
            }
            let trees = fam
                .trees
                .iter()
                .map(|tree| {
                    Ok(TreeEntry {
                        graph6: g6(tree.graph())?,
                        part_a: tree.part_a.clone(),
                        part_b: tree.part_b.clone(),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            structured(
                &TreesOutput {
                    t: *t,
                    count: trees.len(),
                    trees,
                },
                format,
            )
        }
        Command::Spectral { graph, tol } => {
            let p = spectral_radius(graph, *tol)?;
            let out = SpectralOutput {
                n: graph.n(),
                lambda: p.lambda,
                x: p.x,
                residual: p.residual,
                z: p.z,
            };
            structured(&out, format)
        }
        Command::Classify { graph, constants } => {
            let p = spectral_radius(graph, spexlab::spectral::DEFAULT_TOL)?;
            let part = classify_vertices(graph, &p, constants);
            let out = ClassifyOutput {
                constants: constants_output(constants),
                lambda: p.lambda,
                z: p.z,
                l: part.l,
                s: part.s,
                m: part.m,
                l_prime: part.l_prime,
                r: part.r,
                e: part.e,
            };
            structured(&out, format)
        }
        Command::Contains { graph, tree } => {
            let e = contains_tree(graph, tree);
            let out = ContainsOutput {
                contained: e.is_some(),
                embedding: e.map(|e| e.map),
            };
            structured(&out, format)
        }
        Command::Membership { graph, k, prime } => {
            let fam = TreeFamily::for_k(*k, *prime)?;
            let m = family_membership(graph, &fam);
            let (witness_index, witness) = match m.witness {
                Some((i, tree)) => (Some(i), Some(g6(tree.graph())?)),
                None => (None, None),
            };
            let out = MembershipOutput {
                k: *k,
                t: fam.t,
                family_size: fam.len(),
                in_family: m.in_family,
                witness_index,
                witness,
            };
            structured(&out, format)
        }
        Command::EmbedLemma { target, trees } => {
            let trees: Vec<Tree> = match trees {
                TreeSelection::One(t) => vec![t.clone()],
                TreeSelection::All { order } => generate_trees(*order)?.trees,
            };
            let construction = lemma_target(*target, trees[0].order());
            let host = construction.build()?;
            let mut embeddings = Vec::new();
            let mut all_valid = true;
            for tree in &trees {
                let e = embed_constructive(tree, &construction)?;
                all_valid &= e.is_valid(&host, tree);
                embeddings.push(EmbeddingEntry {
                    tree: g6(tree.graph())?,
                    map: e.map,
                });
            }
            let out = EmbedLemmaOutput {
                target: crate::plan::describe(&construction),
                host: g6(&host)?,
                embeddings,
                all_valid,
            };
            structured(&out, format)
        }
        Command::Spex { n, k, prime, options } => search_output(&spex_search(*n, *k, *prime, options)?, format),
        Command::Ex { n, tree, options } => search_output(&ex_search(*n, tree, options)?, format),
        Command::Audit { graph, constants, tol } => {
            let p = spectral_radius(graph, *tol)?;
            let report = audit_extremal_lemmas(graph, constants.k, constants, &p);
            match format {
                Format::Table => {
                    let width = report.entries.iter().map(|e| e.lemma.len()).max().unwrap_or(0);
                    lines(report.entries.iter().map(|e| {
                        let verdict = if e.pass { "pass" } else { "FAIL" };
                        let kind = format!("{:?}", e.kind).to_lowercase();
                        format!(
                            "{:<width$}  {kind:<13}  {verdict}  {:>19}  {}",
                            e.lemma,
                            fmt_sig(e.margin),
                            e.inequality
                        )
                    }))
                }
                _ => report.to_json_lines(),
            }
        }
        Command::Enumerate {
            n,
            connected_only,
            count_only,
        } => {
            let e = enumerate_graphs(*n, *connected_only)?;
            if *count_only {
                return Ok(format!("{}\n", e.count()));
            }
            let graphs = e.iter().map(|g| g6(&g)).collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::G6 | Format::Table => lines(graphs),
                _ => pretty(&EnumerateOutput {
                    n: *n,
                    connected_only: *connected_only,
                    count: graphs.len() as u64,
                    graphs,
                }),
            }
        }
    })
}

/// Format when none was requested: table on a terminal, JSON otherwise.
pub fn resolve_format(plan: &CommandPlan) -> Format {
    match plan.format {
        Some(f) => f,
        None if plan.output.is_none() && std::io::stdout().is_terminal() => Format::Table,
        None => Format::Json,
    }
}

/// Runs the plan, writes its output and returns the exit status.
pub fn execute(plan: &CommandPlan) -> i32 {
    let result = render(plan, resolve_format(plan)).and_then(|text| match &plan.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io(e.to_string())),
                _ => Ok(()),
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
