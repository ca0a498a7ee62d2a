use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use bmwis_core::generators::gap::{gap_calculator, GapOptions};
use bmwis_core::generators::inequalities::verify_inequalities_with;
use bmwis_core::generators::{decide_biclique, BipartiteGraph};
use bmwis_core::ratio::{parse_ratio, ratio_string, to_f64};

use crate::{print_json, read_instance, CliResult, Global, SCHEMA};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: Check,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Evaluate both calculus inequalities on log-spaced grids.
    Inequalities {
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        /// Working precision in bits, at least 128.
        #[arg(long, default_value_t = bmwis_core::generators::inequalities::DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Exact bound arithmetic of the uniform-cost gap.
    Gap {
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Accept any epsilon in (0, 1).
        #[arg(long)]
        relaxed: bool,
        /// Also print n^t and the bounds as full integers when n^t has at
        /// most this many digits.
        #[arg(long)]
        expand_digits: Option<u64>,
    },
    /// Decide whether a bipartite instance's graph contains K_{k,k} through
    /// the capacitated reduction.
    Biclique {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        k: u64,
    },
}

pub fn run(g: &Global, a: &VerifyArgs) -> CliResult<u8> {
    match &a.check {
        Check::Inequalities { grid, precision } => {
            let r = verify_inequalities_with(*grid, *precision)?;
            let grids = [&r.half_power, &r.half_power_log_form, &r.one_minus_power];
            let falsified: usize = grids.iter().map(|g| g.falsified).sum();
            let inconclusive: usize = grids.iter().map(|g| g.inconclusive).sum();
            if g.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "check": "inequalities",
                    "report": r,
                    "inconclusive": inconclusive,
                    "falsified": falsified,
                }))?;
            } else {
                println!("precision {} bits, {} points per grid", r.precision_bits, grid);
                for gr in grids {
                    println!(
                        "{:<22} ({:e}, {:e})  min margin {:.6e} at {:.3e}  positive {}  inconclusive {}  falsified {}",
                        gr.name, gr.lower, gr.upper, gr.min_margin, gr.min_margin_at, gr.positive, gr.inconclusive, gr.falsified
                    );
                }
                println!("log form at 0.1: {:.6}", r.anchor_f_at_tenth);
            }
            Ok(if falsified > 0 { 5 } else { 0 })
        }
        Check::Gap { eps, n, relaxed, expand_digits } => {
            let eps = parse_ratio(eps)?;
            let r = gap_calculator(&eps, *n, GapOptions { relaxed: *relaxed, expand_digits: *expand_digits })?;
            if g.json {
                print_json(&json!({ "schema": SCHEMA, "check": "gap", "report": r }))?;
            } else {
                let c = &r.coefficients;
                println!("epsilon {}  n {}  ({} mode)", ratio_string(&r.epsilon), r.n, if r.relaxed { "relaxed" } else { "strict" });
                if let Some(m) = r.log10_log10_n_t {
                    println!("log10(log10(n^t)) = {m:.3}");
                }
                println!("quantities as multiples of n^t:");
                for (name, v) in [
                    ("sigma", &c.sigma),
                    ("beta", &c.beta),
                    ("n^t*p", &c.nt_p),
                    ("q*delta*n", &c.q_delta_n),
                    ("yes bound", &c.yes_bound),
                    ("no bound", &c.no_bound),
                ] {
                    println!("  {name:<10} ≈ {:.6e}", to_f64(v));
                }
                println!("yes/no ≈ {:.6}", to_f64(&r.ratio));
                println!("checks: {:?}", r.checks);
                if let Some(e) = &r.expansion {
                    println!("n^t = {}\nsigma = {}", e.n_t, e.sigma);
                }
            }
            Ok(if r.checks.all() { 0 } else { 5 })
        }
        Check::Biclique { input, k } => {
            let (_, inst) = read_instance(input)?;
            let graph = BipartiteGraph::from_instance(&inst)?;
            let found = decide_biclique(&graph, *k)?;
            if g.json {
                print_json(&json!({ "schema": SCHEMA, "check": "biclique", "k": k, "contains": found }))?;
            } else {
                println!("K_{{{k},{k}}} {}", if found { "present" } else { "absent" });
            }
            Ok(0)
        }
    }
}
