use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use bmwis_core::baselines::{bmwis_bruteforce, side_knapsack, trim_heuristic};
use bmwis_core::lagrangian::LagrangianTrace;
use bmwis_core::ratio::{frac, parse_ratio, ratio_string, to_f64};
use bmwis_core::{msp_solve, BudgetedInstance, LagrangianConfig, Solution};

use crate::{print_json, read_instance, Algo, CliResult, Failure, Global, Oracle, SCHEMA};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Audit {
    Exact,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value = "lagrange")]
    pub algo: Algo,
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Also compute the optimum and report weight/OPT.
    #[arg(long, value_enum)]
    pub audit: Option<Audit>,
    #[arg(long, value_enum, default_value = "flow")]
    pub oracle: Oracle,
    /// Nominal tolerance `p/q` recorded in the trace; defaults to `1/(8·n·W)`.
    /// The search itself always resolves the breakpoint exactly.
    #[arg(long)]
    pub eps: Option<String>,
    /// Forced-set size for the Lagrangian search, 0 to 3.
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// Print a table instead of JSON.
    #[arg(long)]
    pub human: bool,
}

pub fn config(oracle: Oracle, eps: Option<&str>, level: usize) -> CliResult<LagrangianConfig> {
    let cfg = LagrangianConfig {
        epsilon: eps.map(parse_ratio).transpose()?,
        enumeration_level: level,
        ..LagrangianConfig::with_oracle(oracle.into())
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn run_algo(
    inst: &BudgetedInstance,
    algo: Algo,
    cfg: &LagrangianConfig,
) -> CliResult<(Solution, Option<LagrangianTrace>)> {
    Ok(match algo {
        Algo::Lagrange => {
            let (s, t) = msp_solve(inst, cfg)?;
            (s, Some(t))
        }
        Algo::Trim => (trim_heuristic(inst, cfg.oracle)?, None),
        Algo::SideKnapsack => (side_knapsack(inst)?, None),
        Algo::Exact => (bmwis_bruteforce(inst)?, None),
    })
}

/// 1-based ids, as in instance files.
pub fn file_ids(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn solution_json(s: &Solution) -> Value {
    json!({ "weight": s.weight(), "cost": s.cost(), "vertices": file_ids(s.vertices()) })
}

/// `weight / opt`, taking `0/0` as 1.
pub fn ratio_of(weight: u64, opt: u64) -> bmwis_core::Ratio {
    if opt == 0 {
        frac(1, 1)
    } else {
        frac(weight, opt)
    }
}

fn trace_json(t: &LagrangianTrace) -> Value {
    json!({
        "lambda_low": ratio_string(&t.lambda_low),
        "lambda_high": ratio_string(&t.lambda_high),
        "iterations": t.iterations,
        "iteration_budget": t.iteration_budget,
        "epsilon": t.epsilon.as_ref().map(ratio_string),
        "forced": file_ids(&t.forced),
        "inner": solution_json(&t.inner),
        "outer": t.outer.as_ref().map(solution_json),
        "candidates": t.candidates.iter().map(|c| json!({
            "description": c.description,
            "solution": solution_json(&c.solution),
        })).collect::<Vec<_>>(),
    })
}

pub fn run(_g: &Global, a: &SolveArgs) -> CliResult<u8> {
    let (_, inst) = read_instance(&a.input)?;
    let cfg = config(a.oracle, a.eps.as_deref(), a.level)?;
    let start = Instant::now();
    let (sol, trace) = run_algo(&inst, a.algo, &cfg)?;
    let elapsed = start.elapsed();
    let opt = match a.audit {
        Some(Audit::Exact) => Some(bmwis_bruteforce(&inst).map_err(|e| {
            Failure::from(e).with_context("audit refused: instance exceeds the exact solver cap")
        })?),
        None => None,
    };
    let ratio = opt.as_ref().map(|o| ratio_of(sol.weight(), o.weight()));
    if a.human {
        println!("algorithm  {}", a.algo.name());
        println!("instance   {}", a.input.display());
        println!("weight     {}", sol.weight());
        println!("cost       {} / {}", sol.cost(), inst.budget());
        println!("vertices   {:?}", file_ids(sol.vertices()));
        if let (Some(o), Some(r)) = (&opt, &ratio) {
            println!("opt        {}", o.weight());
            println!("ratio      {} ({:.6})", ratio_string(r), to_f64(r));
        }
        println!("time_ms    {:.3}", elapsed.as_secs_f64() * 1e3);
        return Ok(0);
    }
    print_json(&json!({
        "schema": SCHEMA,
        "algorithm": a.algo.name(),
        "instance": a.input.display().to_string(),
        "weight": sol.weight(),
        "cost": sol.cost(),
        "budget": inst.budget(),
        "vertices": file_ids(sol.vertices()),
        "opt": opt.as_ref().map(Solution::weight),
        "ratio": ratio.as_ref().map(ratio_string),
        "time_ms": elapsed.as_secs_f64() * 1e3,
        "trace": trace.as_ref().map(trace_json),
    }))?;
    Ok(0)
}
