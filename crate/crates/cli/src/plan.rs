//! Argument parsing and validation. Nothing here runs a computation; every
//! precondition of the invoked operation is checked up front.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spexlab::graph::graph6;
use spexlab::search::{check_spex_parameters, SearchOptions, MAX_ENUMERATION_ORDER};
use spexlab::spectral::{default_constants, Constants, DEFAULT_TOL};
use spexlab::trees::MAX_TREE_ORDER;
use spexlab::{Construction, Graph, Tree};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    G6,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Table => "table",
            Format::G6 => "g6",
            Format::Csv => "csv",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "spexlab",
    version,
    about = "Spectral extremal graph experiments for tree-free families"
)]
struct Cli {
    /// Output format. Defaults to table on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output format name, or a file to write instead of standard output.
    #[arg(long, global = true, value_name = "FORMAT|PATH")]
    out: Option<String>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Host graph as inline graph6.
    #[arg(long, conflicts_with = "graph_file")]
    graph: Option<String>,
    /// File whose first non-empty line is the host graph in graph6.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TreeArg {
    /// Tree as inline graph6.
    #[arg(long, conflicts_with = "tree_file")]
    tree: Option<String>,
    /// File whose first non-empty line is the tree in graph6.
    #[arg(long)]
    tree_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstantArgs {
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Accept constants that break the required chain of inequalities.
    #[arg(long)]
    no_paper_chain: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "kebab-case")]
enum Family {
    #[value(alias = "S")]
    S,
    #[value(alias = "S+")]
    SPlus,
    #[value(alias = "K")]
    K,
    #[value(alias = "K+")]
    KPlus,
    KPath,
    KMatching,
    Path,
    Clique,
    Cycle,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaTarget {
    /// `K(floor(m/2), m-1)` for trees on `m` vertices.
    Bipartite,
    /// `K_plus(k, 2k+1)` for trees on `2k+2` vertices.
    Plus,
    /// `K_path(k, 2k+2)` for trees on `2k+3` vertices.
    Path,
    /// `K_matching(k, 2k+2)` for trees on `2k+3` vertices.
    Matching,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Build a named graph.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// List all trees on t vertices, or the family for a given k.
    Trees {
        #[arg(long, conflicts_with = "k")]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// With --k: trees on 2k+3 vertices instead of 2k+2.
        #[arg(long, requires = "k")]
        prime: bool,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
    /// Spectral radius and Perron vector.
    Spectral {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Vertex classes by Perron weight.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        constants: ConstantArgs,
    },
    /// Whether a tree is a subgraph of the host.
    Contains {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        tree: TreeArg,
    },
    /// Whether the host misses some tree of the family for k.
    Membership {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        prime: bool,
    },
    /// Constructive embeddings into the bipartite targets.
    EmbedLemma {
        #[arg(long, value_enum)]
        target: LemmaTarget,
        /// A single tree; without it every tree of the matching order is used.
        #[command(flatten)]
        tree: TreeArg,
        /// Tree order for the bipartite target.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Largest spectral radius over graphs missing a tree of the family.
    Spex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        connected_only: bool,
        /// Skip eigenvalue work on graphs too sparse to reach the closed form.
        #[arg(long)]
        edge_prefilter: bool,
    },
    /// Largest edge count over graphs not containing a tree.
    Ex {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        tree: TreeArg,
        #[arg(long)]
        connected_only: bool,
    },
    /// Check the structural inequalities on a graph, one JSON line each.
    Audit {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        constants: ConstantArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// All graphs on n vertices up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        count: bool,
    },
}

/// A validated request.
#[derive(Debug, Clone)]
pub enum Command {
    Construct {
        label: String,
        graph: Graph,
    },
    Trees {
        t: usize,
        count_only: bool,
    },
    Spectral {
        graph: Graph,
        tol: f64,
    },
    Classify {
        graph: Graph,
        constants: Constants,
    },
    Contains {
        graph: Graph,
        tree: Tree,
    },
    Membership {
        graph: Graph,
        k: usize,
        prime: bool,
    },
    EmbedLemma {
        target: LemmaTarget,
        trees: TreeSelection,
    },
    Spex {
        n: usize,
        k: usize,
        prime: bool,
        options: SearchOptions,
    },
    Ex {
        n: usize,
        tree: Tree,
        options: SearchOptions,
    },
    Audit {
        graph: Graph,
        constants: Constants,
        tol: f64,
    },
    Enumerate {
        n: usize,
        connected_only: bool,
        count_only: bool,
    },
}

/// Trees for the embedding lemma: one given tree, or all trees on `order`
/// vertices.
#[derive(Debug, Clone)]
pub enum TreeSelection {
    One(Tree),
    All { order: usize },
}

#[derive(Debug, Clone)]
pub struct CommandPlan {
    pub command: Command,
    /// `None` picks table on a terminal and JSON otherwise.
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl CommandPlan {
    pub fn name(&self) -> &'static str {
        match self.command {
            Command::Construct { .. } => "construct",
            Command::Trees { .. } => "trees",
            Command::Spectral { .. } => "spectral",
            Command::Classify { .. } => "classify",
            Command::Contains { .. } => "contains",
            Command::Membership { .. } => "membership",
            Command::EmbedLemma { .. } => "embed-lemma",
            Command::Spex { .. } => "spex",
            Command::Ex { .. } => "ex",
            Command::Audit { .. } => "audit",
            Command::Enumerate { .. } => "enumerate",
        }
    }

    fn formats(&self) -> &'static [Format] {
        use Format::*;
        match self.command {
            Command::Construct { .. } | Command::Trees { .. } | Command::Enumerate { .. } => &[Json, Table, G6],
            Command::Spex { .. } | Command::Ex { .. } => &[Json, Table, G6, Csv],
            _ => &[Json, Table],
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::usage(msg))
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("{what} requires --{flag}")))
}

fn read_first_line(path: &PathBuf) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(str::to_string)
        .ok_or_else(|| CliError::usage(format!("{} holds no graph6 line", path.display())))
}

fn load(inline: Option<String>, file: Option<PathBuf>, flag: &str) -> Result<Graph, CliError> {
    let text = match (inline, file) {
        (Some(t), None) => t,
        (None, Some(p)) => read_first_line(&p)?,
        (Some(_), Some(_)) => return usage(format!("--{flag} and --{flag}-file conflict")),
        (None, None) => return usage(format!("one of --{flag} or --{flag}-file is required")),
    };
    Ok(graph6::decode(text.trim())?)
}

impl GraphArg {
    fn load(self) -> Result<Graph, CliError> {
        load(self.graph, self.graph_file, "graph")
    }
}

impl TreeArg {
    fn load(self) -> Result<Option<Tree>, CliError> {
        if self.tree.is_none() && self.tree_file.is_none() {
            return Ok(None);
        }
        let g = load(self.tree, self.tree_file, "tree")?;
        Ok(Some(Tree::from_graph(g)?))
    }

    fn require(self) -> Result<Tree, CliError> {
        self.load()?
            .ok_or_else(|| CliError::usage("one of --tree or --tree-file is required"))
    }
}

impl ConstantArgs {
    /// Missing values are filled in from the default chain, in the order
    /// eta, epsilon, alpha.
    fn resolve(self, k: usize) -> Result<Constants, CliError> {
        if self.eta.is_none() && self.epsilon.is_none() && self.alpha.is_none() {
            return Ok(default_constants(k)?);
        }
        let slack = spexlab::spectral::CONSTANT_SLACK;
        let eta = self.eta.unwrap_or(slack * Constants::eta_bound(k));
        let epsilon = self.epsilon.unwrap_or(slack * Constants::epsilon_bound(k, eta));
        let alpha = self.alpha.unwrap_or(slack * Constants::alpha_bound(k, eta, epsilon));
        let c = Constants::with_values(k, eta, epsilon, alpha)?;
        if !c.satisfies_chain && !self.no_paper_chain {
            return usage(format!(
                "constants eta = {eta}, epsilon = {epsilon}, alpha = {alpha} break the required chain for k = {k}; \
                 pass --no-paper-chain to use them anyway"
            ));
        }
        Ok(c)
    }
}

fn construction(
    family: Family,
    n: Option<usize>,
    k: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
) -> Result<Construction, CliError> {
    let what = format!(
        "--family {}",
        family.to_possible_value().expect("no skipped variants").get_name()
    );
    let nk = || Ok::<_, CliError>((need(n, "n", &what)?, need(k, "k", &what)?));
    let ab = || Ok::<_, CliError>((need(a, "a", &what)?, need(b, "b", &what)?));
    Ok(match family {
        Family::S => {
            let (n, k) = nk()?;
            Construction::S { n, k }
        }
        Family::SPlus => {
            let (n, k) = nk()?;
            Construction::SPlus { n, k }
        }
        Family::K => {
            let (a, b) = ab()?;
            Construction::K { a, b }
        }
        Family::KPlus => {
            let (a, b) = ab()?;
            Construction::KPlus { a, b }
        }
        Family::KPath => {
            let (a, b) = ab()?;
            Construction::KPath { a, b }
        }
        Family::KMatching => {
            let (a, b) = ab()?;
            Construction::KMatching { a, b }
        }
        Family::Path => Construction::Path(need(n, "n", &what)?),
        Family::Clique => Construction::Clique(need(n, "n", &what)?),
        Family::Cycle => Construction::Cycle(need(n, "n", &what)?),
        Family::Empty => Construction::Empty(need(n, "n", &what)?),
    })
}

/// Short name such as `S(5,2)` or `K_plus(2,5)`.
pub fn describe(c: &Construction) -> String {
    use Construction::*;
    match c {
        S { n, k } => format!("S({n},{k})"),
        SPlus { n, k } => format!("S_plus({n},{k})"),
        K { a, b } => format!("K({a},{b})"),
        KPlus { a, b } => format!("K_plus({a},{b})"),
        KPath { a, b } => format!("K_path({a},{b})"),
        KMatching { a, b } => format!("K_matching({a},{b})"),
        Path(t) => format!("path({t})"),
        Clique(t) => format!("clique({t})"),
        Cycle(t) => format!("cycle({t})"),
        Empty(t) => format!("empty({t})"),
        Join(g, h) => format!("join({}, {})", describe(g), describe(h)),
        DisjointUnion(g, h) => format!("union({}, {})", describe(g), describe(h)),
    }
}

fn check_tree_order(t: usize) -> Result<(), CliError> {
    if (1..=MAX_TREE_ORDER).contains(&t) {
        Ok(())
    } else {
        usage(format!("tree order {t} must lie in 1..={MAX_TREE_ORDER}"))
    }
}

/// Tree order the embedding target expects, from `--m` or `--k`.
fn lemma_order(
    target: LemmaTarget,
    m: Option<usize>,
    k: Option<usize>,
    tree: Option<&Tree>,
) -> Result<usize, CliError> {
    let what = "embed-lemma";
    let order = match target {
        LemmaTarget::Bipartite => match (m, tree) {
            (Some(m), _) => m,
            (None, Some(t)) => t.order(),
            (None, None) => need(None, "m", what)?,
        },
        _ => {
            let extra = if target == LemmaTarget::Plus { 2 } else { 3 };
            match (k, tree) {
                (Some(k), _) => 2 * k + extra,
                (None, Some(t)) if t.order() >= 2 + extra && (t.order() - extra) % 2 == 0 => t.order(),
                (None, Some(t)) => return usage(format!("a tree on {} vertices does not fit this target", t.order())),
                (None, None) => need(None, "k", what)?,
            }
        }
    };
    if target == LemmaTarget::Bipartite && order < 2 {
        return usage("the bipartite target needs --m >= 2");
    }
    if target != LemmaTarget::Bipartite && order < 4 {
        return usage("--k must be at least 1");
    }
    check_tree_order(order)?;
    if let Some(t) = tree {
        if t.order() != order {
            return usage(format!(
                "the tree has {} vertices, the target expects {order}",
                t.order()
            ));
        }
    }
    Ok(order)
}

/// Parses and validates `argv` (program name first). Never panics; help and
/// version requests come back as an error with exit status 0.
pub fn parse_and_plan<I, T>(argv: I) -> Result<CommandPlan, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::from_clap)?;

    let (mut format, mut output) = (cli.format, None);
    if let Some(out) = cli.out {
        match Format::from_str(&out, true) {
            Ok(f) if format.is_some_and(|g| g != f) => {
                return usage(format!(
                    "--out {out} conflicts with --format {}",
                    format.unwrap().name()
                ));
            }
            Ok(f) => format = Some(f),
            Err(_) => output = Some(PathBuf::from(out)),
        }
    }
    if let (None, Some(path)) = (format, &output) {
        format = match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Some(Format::G6),
            Some("csv") => Some(Format::Csv),
            Some("json" | "jsonl") => Some(Format::Json),
            Some("txt") => Some(Format::Table),
            _ => None,
        };
    }

    let command = match cli.command {
        Sub::Construct { family, n, k, a, b } => {
            let c = construction(family, n, k, a, b)?;
            let graph = c.build()?;
            Command::Construct {
                label: describe(&c),
                graph,
            }
        }
        Sub::Trees { t, k, prime, count } => {
            let t = match (t, k) {
                (Some(t), None) => t,
                (None, Some(k)) if k >= 1 => 2 * k + 2 + prime as usize,
                (None, Some(_)) => return usage("--k must be at least 1"),
                _ => return usage("trees requires --t or --k"),
            };
            check_tree_order(t)?;
            Command::Trees { t, count_only: count }
        }
        Sub::Spectral { graph, tol } => {
            if !(tol > 0.0) {
                return usage(format!("--tol must be positive, got {tol}"));
            }
            Command::Spectral {
                graph: graph.load()?,
                tol,
            }
        }
        Sub::Classify { graph, k, constants } => Command::Classify {
            graph: graph.load()?,
            constants: constants.resolve(k)?,
        },
        Sub::Contains { graph, tree } => Command::Contains {
            graph: graph.load()?,
            tree: tree.require()?,
        },
        Sub::Membership { graph, k, prime } => {
            if k < 1 {
                return usage("--k must be at least 1");
            }
            check_tree_order(2 * k + 2 + prime as usize)?;
            Command::Membership {
                graph: graph.load()?,
                k,
                prime,
            }
        }
        Sub::EmbedLemma { target, tree, m, k } => {
            let tree = tree.load()?;
            let order = lemma_order(target, m, k, tree.as_ref())?;
            let trees = match tree {
                Some(t) => TreeSelection::One(t),
                None => TreeSelection::All { order },
            };
            Command::EmbedLemma { target, trees }
        }
        Sub::Spex {
            n,
            k,
            prime,
            connected_only,
            edge_prefilter,
        } => {
            check_spex_parameters(n, k, prime)?;
            Command::Spex {
                n,
                k,
                prime,
                options: SearchOptions {
                    connected_only,
                    edge_prefilter,
                },
            }
        }
        Sub::Ex {
            n,
            tree,
            connected_only,
        } => {
            let tree = tree.require()?;
            if n < tree.order() || n > MAX_ENUMERATION_ORDER {
                return usage(format!(
                    "ex needs {} <= n <= {MAX_ENUMERATION_ORDER}, got n = {n}",
                    tree.order()
                ));
            }
            Command::Ex {
                n,
                tree,
                options: SearchOptions {
                    connected_only,
                    ..Default::default()
                },
            }
        }
        Sub::Audit {
            graph,
            k,
            constants,
            tol,
        } => {
            if !(tol > 0.0) {
                return usage(format!("--tol must be positive, got {tol}"));
            }
            Command::Audit {
                graph: graph.load()?,
                constants: constants.resolve(k)?,
                tol,
            }
        }
        Sub::Enumerate {
            n,
            connected_only,
            count,
        } => {
            if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
                return usage(format!("--n must lie in 1..={MAX_ENUMERATION_ORDER}, got {n}"));
            }
            Command::Enumerate {
                n,
                connected_only,
                count_only: count,
            }
        }
    };

    let plan = CommandPlan {
        command,
        format,
        output,
    };
    if let Some(f) = plan.format {
        if !plan.formats().contains(&f) {
            return usage(format!("{} does not support --format {}", plan.name(), f.name()));
        }
    }
    Ok(plan)
}
