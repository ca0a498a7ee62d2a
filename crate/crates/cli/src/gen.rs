use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use bmwis_core::format::serialize_with_comments;
use bmwis_core::generators::{
    gen_cmwis_reduction, gen_random_bipartite, gen_reduced_graph, gen_star, gen_umsb, BipartiteGraph, BudgetRule,
    CmwisReductionParams, RandomBipartiteParams, ReducedGraphParams, StarParams, UmsbParams, DEFAULT_REDUCED_LIMIT,
    DEFAULT_UMSB_LIMIT,
};
use bmwis_core::BudgetedInstance;

use crate::{print_json, read_instance, CliResult, Failure, Global, SCHEMA};

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Star on which trimming the unbudgeted optimum keeps only 2/n.
    Star {
        #[arg(long)]
        n: usize,
    },
    /// Left side of the base graph against all t-tuples of its right side.
    ReducedGraph {
        /// Bipartite instance file supplying the base graph.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = DEFAULT_REDUCED_LIMIT)]
        limit: u128,
    },
    /// Uniform-cost instance with q copies of each left vertex.
    Umsb {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        beta: u64,
        #[arg(long, default_value_t = DEFAULT_UMSB_LIMIT)]
        limit: u128,
    },
    /// Capacitated instance whose optimum reaches its budget iff the base
    /// graph contains K_{k,k}.
    CmwisReduction {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Seeded random bipartite instance (uses the global --seed).
    Random {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        /// Edge probability `p/q`.
        #[arg(long, default_value = "1/2")]
        edge_prob: String,
        /// Inclusive weight range `lo..hi`.
        #[arg(long, default_value = "1..20")]
        weights: String,
        #[arg(long, default_value = "1..10")]
        costs: String,
        /// `frac:p/q` of the total cost, or `fixed:B`.
        #[arg(long, default_value = "frac:1/2")]
        budget: String,
        /// Planted biclique sizes `a,b`.
        #[arg(long)]
        planted: Option<String>,
    },
}

fn parse_pair(text: &str, sep: &str, what: &str) -> CliResult<(u64, u64)> {
    let bad = || Failure::input(format!("{what} must look like `a{sep}b`, got `{text}`"));
    let (a, b) = text.split_once(sep).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_budget(text: &str) -> CliResult<BudgetRule> {
    if let Some(f) = text.strip_prefix("frac:") {
        let (n, d) = parse_pair(f, "/", "budget fraction")?;
        Ok(BudgetRule::FractionOfTotal(n, d))
    } else if let Some(b) = text.strip_prefix("fixed:") {
        Ok(BudgetRule::Fixed(b.parse().map_err(|_| Failure::input(format!("bad budget `{text}`")))?))
    } else {
        Err(Failure::input(format!("budget must be `frac:p/q` or `fixed:B`, got `{text}`")))
    }
}

fn base_graph(path: &PathBuf) -> CliResult<BipartiteGraph> {
    let (_, inst) = read_instance(path)?;
    Ok(BipartiteGraph::from_instance(&inst)?)
}

/// Builds the family and the comment lines recorded in its file.
fn build(g: &Global, family: &Family) -> CliResult<(&'static str, Vec<String>, BudgetedInstance)> {
    Ok(match family {
        Family::Star { n } => ("star", vec![format!("n {n}")], gen_star(StarParams { n: *n })?),
        Family::ReducedGraph { base, t, limit } => (
            "reduced-graph",
            vec![format!("base {}", base.display()), format!("t {t}")],
            gen_reduced_graph(&ReducedGraphParams { base: base_graph(base)?, t: *t, limit: *limit })?,
        ),
        Family::Umsb { base, q, p, beta, limit } => (
            "umsb",
            vec![format!("base {}", base.display()), format!("q {q} p {p} beta {beta}")],
            gen_umsb(&UmsbParams { base: base_graph(base)?, q: *q, p: *p, beta: *beta, limit: *limit })?,
        ),
        Family::CmwisReduction { base, k } => (
            "cmwis-reduction",
            vec![format!("base {}", base.display()), format!("k {k}")],
            gen_cmwis_reduction(&CmwisReductionParams { base: base_graph(base)?, k: *k })?,
        ),
        Family::Random { left, right, edge_prob, weights, costs, budget, planted } => {
            let planted = planted
                .as_deref()
                .map(|p| parse_pair(p, ",", "planted sizes").map(|(a, b)| (a as usize, b as usize)))
                .transpose()?;
            let params = RandomBipartiteParams {
                left: *left,
                right: *right,
                edge_prob: parse_pair(edge_prob, "/", "edge probability")?,
                weight_range: parse_pair(weights, "..", "weight range")?,
                cost_range: parse_pair(costs, "..", "cost range")?,
                budget: parse_budget(budget)?,
                seed: g.seed,
                planted,
            };
            let comments = vec![format!(
                "left {left} right {right} edge_prob {edge_prob} weights {weights} costs {costs} budget {budget} seed {}",
                g.seed
            )];
            ("random", comments, gen_random_bipartite(&params)?)
        }
    })
}

pub fn run(g: &Global, a: &GenArgs) -> CliResult<u8> {
    let (family, params, inst) = build(g, &a.family)?;
    let mut comments = vec![format!("family {family}")];
    comments.extend(params);
    let mut text = serialize_with_comments(&inst, &comments);
    text.push('\n');
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?,
        None if !g.json => print!("{text}"),
        None => {}
    }
    if g.json {
        print_json(&json!({
            "schema": SCHEMA,
            "family": family,
            "n": inst.vertex_count(),
            "m": inst.edge_count(),
            "budget": inst.budget(),
            "out": a.out.as_ref().map(|p| p.display().to_string()),
            "instance": if a.out.is_none() { Some(text) } else { None },
        }))?;
    }
    Ok(0)
}
