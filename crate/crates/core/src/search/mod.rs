//! Exhaustive spectral and edge Turán searches over all graphs on `n <= 10`
//! vertices.
//!
//! Both families searched here are closed under taking subgraphs, so the
//! generation tree is cut below any graph outside the family: every
//! descendant is a supergraph and lies outside as well.

mod enumerate;

pub use enumerate::{enumerate_graphs, GraphEnumeration, GraphStream, MAX_ENUMERATION_ORDER, SPLIT_UNITS};

use serde::{Deserialize, Serialize};

use crate::embed::{contains_tree, family_membership, FamilyFilter, TreePattern};
use crate::error::{param, Error, Result};
use crate::graph::{canonical_form, graph6, Construction, Graph};
use crate::numfmt::{fmt_sig, serialize_sig_opt};
use crate::spectral::{
    audit_extremal_lemmas, closed_form_lambda_s, default_constants, spectral_radius, AuditEntry, DEFAULT_TOL,
};
use crate::trees::{Tree, TreeFamily};
use enumerate::{explore, Node};

/// Values within this distance of the maximum are reported as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Count and rank connected graphs only.
    pub connected_only: bool,
    /// Skip the spectral radius of graphs with `2 e(G) < lambda(S(n,k))^2`,
    /// which cannot reach the closed form. Off in ground-truth runs.
    pub edge_prefilter: bool,
}

/// Largest value found, in the unit of the search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BestValue {
    Edges(u64),
    Spectral(#[serde(serialize_with = "crate::numfmt::serialize_sig")] f64),
}

impl BestValue {
    pub fn as_f64(self) -> f64 {
        match self {
            BestValue::Edges(e) => e as f64,
            BestValue::Spectral(l) => l,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_sig_opt"
    )]
    pub closed_form_lambda_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominates_closed_form: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmax_contains_s: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmax_contains_s_plus: Option<bool>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_sig_opt"
    )]
    pub lower_bound: Option<f64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_sig_opt"
    )]
    pub upper_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound_pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound_pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgmaxAudit {
    pub graph: String,
    pub entries: Vec<AuditEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchReport {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `T_k`, `T'_k` or `single tree`.
    pub family_kind: String,
    /// graph6 of the forbidden tree for single-tree searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    pub connected_only: bool,
    /// Isomorphism classes visited; classes below a non-member are skipped.
    pub candidates_examined: u64,
    pub in_family_count: u64,
    pub best_value: Option<BestValue>,
    /// Canonical graph6 of every class within [`TIE_TOLERANCE`] of the best.
    pub argmax: Vec<String>,
    /// Every argmax graph re-decoded, re-checked for membership and value.
    pub verified: bool,
    pub comparison: Comparison,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audit: Vec<ArgmaxAudit>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn argmax_graph6(&self) -> String {
        self.argmax.iter().map(|g| format!("{g}\n")).collect()
    }

    pub const CSV_HEADER: &'static str = "n,k,best_value,closed_form,isomorphic_to_S";

    /// Header plus one row.
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_sig).unwrap_or_default();
        let iso = self
            .comparison
            .argmax_contains_s
            .or(self.comparison.argmax_contains_s_plus)
            .map(|b| b.to_string())
            .unwrap_or_default();
        format!(
            "{}\n{},{},{},{},{}\n",
            Self::CSV_HEADER,
            self.n,
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            match self.best_value {
                Some(BestValue::Edges(e)) => e.to_string(),
                other => opt(other.map(BestValue::as_f64)),
            },
            opt(self.comparison.closed_form_lambda_s),
            iso
        )
    }
}

/// Running maximum with all near-ties. Merging keeps every entry within
/// [`TIE_TOLERANCE`] of the merged maximum, which makes the merge associative.
#[derive(Debug, Default)]
struct Acc {
    examined: u64,
    members: u64,
    best: Vec<(f64, Vec<u8>)>,
    error: Option<Error>,
}

impl Acc {
    fn max(&self) -> f64 {
        self.best.iter().map(|b| b.0).fold(f64::NEG_INFINITY, f64::max)
    }

    fn offer(&mut self, value: f64, bytes: &[u8]) {
        let m = self.max();
        if value >= m - TIE_TOLERANCE {
            self.best.push((value, bytes.to_vec()));
            if value > m {
                self.best.retain(|b| b.0 >= value - TIE_TOLERANCE);
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.examined += other.examined;
        self.members += other.members;
        self.error = self.error.or(other.error);
        self.best.extend(other.best);
        let m = self.max();
        self.best.retain(|b| b.0 >= m - TIE_TOLERANCE);
        self
    }

    /// Maximum and the tied graphs sorted by bytes.
    fn finish(mut self) -> Result<(u64, u64, Option<f64>, Vec<String>)> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.best.sort_by(|a, b| a.1.cmp(&b.1));
        self.best.dedup_by(|a, b| a.1 == b.1);
        let best = (!self.best.is_empty()).then(|| self.max());
        let argmax = self
            .best
            .into_iter()
            .map(|(_, b)| String::from_utf8(b).expect("graph6 is ASCII"))
            .collect();
        Ok((self.examined, self.members, best, argmax))
    }
}

fn check_order(n: usize) -> Result<()> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return param(format!("search order n = {n} must lie in 1..={MAX_ENUMERATION_ORDER}"));
    }
    Ok(())
}

/// Validates the parameters of [`spex_search`] without running it.
pub fn check_spex_parameters(n: usize, k: usize, prime: bool) -> Result<()> {
    if k < 2 {
        return param(format!("spex search requires k >= 2, got k = {k}"));
    }
    let (min_n, label) = if prime {
        (2 * k + 3, "2k+3")
    } else {
        (2 * k + 2, "2k+2")
    };
    if n < min_n {
        return param(format!("spex search requires n >= {label} = {min_n}, got n = {n}"));
    }
    check_order(n)
}

/// Largest spectral radius over graphs on `n` vertices missing some tree on
/// `2k+2` vertices (`2k+3` when `prime`).
pub fn spex_search(n: usize, k: usize, prime: bool, options: &SearchOptions) -> Result<SearchReport> {
    check_spex_parameters(n, k, prime)?;
    let fam = TreeFamily::for_k(k, prime)?;
    let filter = FamilyFilter::new(&fam);
    let cf = closed_form_lambda_s(n, k)?;
    let edge_floor = cf * cf - TIE_TOLERANCE;
    let acc = explore(
        n,
        Acc::default,
        |acc: &mut Acc, node: &Node| {
            let counted = !options.connected_only || node.graph.is_connected();
            if counted {
                acc.examined += 1;
            }
            if !filter.is_member(&node.graph) {
                return false;
            }
            if counted {
                acc.members += 1;
                if options.edge_prefilter && (2 * node.graph.edge_count()) as f64 <= edge_floor {
                    return true;
                }
                match spectral_radius(&node.graph, DEFAULT_TOL) {
                    Ok(p) => acc.offer(p.lambda, &node.bytes),
                    Err(e) => acc.error = acc.error.take().or(Some(e)),
                }
            }
            true
        },
        Acc::merge,
    );
    let (examined, members, best, argmax) = acc.finish()?;

    let mut verified = best.is_some() || members == 0;
    let mut audit = Vec::new();
    let constants = default_constants(k)?;
    for g6 in &argmax {
        let g = graph6::decode(g6)?;
        let p = spectral_radius(&g, DEFAULT_TOL)?;
        let value_ok = best.is_some_and(|b| (p.lambda - b).abs() <= TIE_TOLERANCE);
        verified &= value_ok && family_membership(&g, &fam).in_family;
        audit.push(ArgmaxAudit {
            graph: g6.clone(),
            entries: audit_extremal_lemmas(&g, k, &constants, &p).entries,
        });
    }
    let s_bytes = canonical_form(&Construction::S { n, k }.build()?).as_str().to_string();
    let s_plus = Construction::SPlus { n, k }
        .build()
        .ok()
        .map(|g| canonical_form(&g).as_str().to_string());
    let comparison = Comparison {
        closed_form_lambda_s: Some(cf),
        dominates_closed_form: best.map(|b| b >= cf - TIE_TOLERANCE),
        argmax_contains_s: Some(argmax.contains(&s_bytes)),
        argmax_contains_s_plus: s_plus.map(|s| argmax.contains(&s)),
        ..Default::default()
    };
    Ok(SearchReport {
        n,
        k: Some(k),
        family_kind: if prime { "T'_k" } else { "T_k" }.into(),
        tree: None,
        connected_only: options.connected_only,
        candidates_examined: examined,
        in_family_count: members,
        best_value: best.map(BestValue::Spectral),
        argmax,
        verified,
        comparison,
        audit,
    })
}

/// Largest edge count over graphs on `n` vertices not containing `tree`.
pub fn ex_search(n: usize, tree: &Tree, options: &SearchOptions) -> Result<SearchReport> {
    let t = tree.order();
    if n < t {
        return param(format!("ex search requires n >= |T| = {t}, got n = {n}"));
    }
    check_order(n)?;
    let pattern = TreePattern::new(tree);
    let acc = explore(
        n,
        Acc::default,
        |acc: &mut Acc, node: &Node| {
            let counted = !options.connected_only || node.graph.is_connected();
            if counted {
                acc.examined += 1;
            }
            if pattern.find_in(&crate::embed::HostIndex::new(&node.graph)).is_some() {
                return false;
            }
            if counted {
                acc.members += 1;
                acc.offer(node.graph.edge_count() as f64, &node.bytes);
            }
            true
        },
        Acc::merge,
    );
    let (examined, members, best, argmax) = acc.finish()?;
    let best = best.map(|b| b as u64);
    let mut verified = best.is_some() || members == 0;
    for g6 in &argmax {
        let g: Graph = graph6::decode(g6)?;
        verified &= Some(g.edge_count() as u64) == best && contains_tree(&g, tree).is_none();
    }
    let lower = (t as f64 - 2.0) * n as f64 / 2.0;
    let upper = (t as f64 - 2.0) * n as f64;
    let comparison = Comparison {
        lower_bound: Some(lower),
        upper_bound: Some(upper),
        lower_bound_pass: best.map(|b| b as f64 >= lower),
        upper_bound_pass: best.map(|b| b as f64 <= upper),
        ..Default::default()
    };
    Ok(SearchReport {
        n,
        k: None,
        family_kind: "single tree".into(),
        tree: Some(graph6::encode(tree.graph())?),
        connected_only: options.connected_only,
        candidates_examined: examined,
        in_family_count: members,
        best_value: best.map(BestValue::Edges),
        argmax,
        verified,
        comparison,
        audit: Vec::new(),
    })
}
