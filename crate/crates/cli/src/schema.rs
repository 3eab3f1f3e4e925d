//! Typed shapes of every JSON output. Each type rejects unknown fields, and
//! [`validate`] checks that an output parses into its type and serializes
//! back to the same bytes.

use serde::{Deserialize, Serialize};
use spexlab::numfmt::{serialize_sig, serialize_sig_vec};
use spexlab::search::SearchReport;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructOutput {
    pub construction: String,
    pub n: usize,
    pub edge_count: usize,
    pub graph6: String,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeEntry {
    pub graph6: String,
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreesOutput {
    pub t: usize,
    pub count: usize,
    pub trees: Vec<TreeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralOutput {
    pub n: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub lambda: f64,
    #[serde(serialize_with = "serialize_sig_vec")]
    pub x: Vec<f64>,
    #[serde(serialize_with = "serialize_sig")]
    pub residual: f64,
    pub z: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsOutput {
    pub k: usize,
    #[serde(serialize_with = "serialize_sig")]
    pub eta: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub epsilon: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub alpha: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub delta: f64,
    pub satisfies_chain: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyOutput {
    pub constants: ConstantsOutput,
    #[serde(serialize_with = "serialize_sig")]
    pub lambda: f64,
    pub z: usize,
    pub l: Vec<usize>,
    pub s: Vec<usize>,
    pub m: Vec<usize>,
    pub l_prime: Vec<usize>,
    pub r: Vec<usize>,
    pub e: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainsOutput {
    pub contained: bool,
    pub embedding: Option<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipOutput {
    pub k: usize,
    pub t: usize,
    pub family_size: usize,
    pub in_family: bool,
    /// Position of the first missing tree in family order.
    pub witness_index: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingEntry {
    pub tree: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedLemmaOutput {
    pub target: String,
    pub host: String,
    pub embeddings: Vec<EmbeddingEntry>,
    pub all_valid: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditLine {
    pub lemma: String,
    pub inequality: String,
    pub pass: bool,
    #[serde(serialize_with = "serialize_sig")]
    pub margin: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerateOutput {
    pub n: usize,
    pub connected_only: bool,
    pub count: u64,
    pub graphs: Vec<String>,
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

fn round_trip<T: Serialize + for<'de> Deserialize<'de>>(text: &str) -> Result<(), String> {
    let value: T = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if pretty(&value) == text {
        Ok(())
    } else {
        Err("output does not serialize back to the same bytes".into())
    }
}

/// Checks a JSON output of subcommand `name` against its type. Count-only
/// outputs are a bare integer; `audit` emits one compact object per line.
pub fn validate(name: &str, text: &str) -> Result<(), String> {
    if text.trim_end().parse::<u64>().is_ok() && matches!(name, "trees" | "enumerate") {
        return Ok(());
    }
    match name {
        "construct" => round_trip::<ConstructOutput>(text),
        "trees" => round_trip::<TreesOutput>(text),
        "spectral" => round_trip::<SpectralOutput>(text),
        "classify" => round_trip::<ClassifyOutput>(text),
        "contains" => round_trip::<ContainsOutput>(text),
        "membership" => round_trip::<MembershipOutput>(text),
        "embed-lemma" => round_trip::<EmbedLemmaOutput>(text),
        "spex" | "ex" => round_trip::<SearchReport>(text),
        "enumerate" => round_trip::<EnumerateOutput>(text),
        "audit" => {
            for line in text.lines() {
                let entry: AuditLine = serde_json::from_str(line).map_err(|e| format!("{e} in {line}"))?;
                if serde_json::to_string(&entry).expect("outputs serialize") != line {
                    return Err(format!("line does not serialize back to the same bytes: {line}"));
                }
            }
            Ok(())
        }
        other => Err(format!("no schema for {other}")),
    }
}
