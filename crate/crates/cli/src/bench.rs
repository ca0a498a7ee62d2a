use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use bmwis_core::baselines::bmwis_bruteforce;
use bmwis_core::format::read_comments;
use bmwis_core::ratio::{parse_ratio, ratio_string, to_f64};
use bmwis_core::Ratio;

use crate::solve::{config, ratio_of, run_algo};
use crate::{print_json, read_instance, Algo, CliResult, Failure, Global, Oracle, SCHEMA};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Directory scanned (non-recursively) for `*.bmwis` files.
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "lagrange,trim,side-knapsack")]
    pub algos: Vec<Algo>,
    #[arg(long, value_enum, default_value = "flow")]
    pub oracle: Oracle,
    /// Skip the exact optimum; the opt and ratio columns stay empty.
    #[arg(long)]
    pub no_opt: bool,
    /// Exit with status 1 if a lagrange ratio falls below this.
    #[arg(long, default_value = "1/2")]
    pub min_ratio: String,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
struct Row {
    instance: String,
    family: String,
    n: Option<usize>,
    m: Option<usize>,
    #[serde(rename = "B")]
    budget: Option<u64>,
    algo: String,
    weight: Option<u64>,
    cost: Option<u64>,
    opt: Option<u64>,
    ratio: Option<String>,
    time_ms: Option<String>,
    ratio_decimal: Option<String>,
    error: Option<String>,
}

struct Measured {
    row: Row,
    ratio: Option<Ratio>,
}

fn instance_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "bmwis"))
        .collect();
    files.sort();
    Ok(files)
}

fn blank(instance: &str, family: &str, algo: &str) -> Row {
    Row {
        instance: instance.to_string(),
        family: family.to_string(),
        n: None,
        m: None,
        budget: None,
        algo: algo.to_string(),
        weight: None,
        cost: None,
        opt: None,
        ratio: None,
        time_ms: None,
        ratio_decimal: None,
        error: None,
    }
}

fn measure_file(path: &Path, a: &BenchArgs, cfg: &bmwis_core::LagrangianConfig) -> Vec<Measured> {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let failed = |family: &str, why: String| {
        a.algos
            .iter()
            .map(|algo| Measured {
                row: Row { error: Some(why.clone()), ..blank(&name, family, algo.name()) },
                ratio: None,
            })
            .collect()
    };
    let (text, inst) = match read_instance(&path.to_path_buf()) {
        Ok(x) => x,
        Err(f) => return failed("", f.message),
    };
    let family = read_comments(&text)
        .iter()
        .find_map(|c| c.strip_prefix("family ").map(|f| f.trim().to_string()))
        .unwrap_or_default();
    let opt = if a.no_opt {
        Ok(None)
    } else {
        bmwis_bruteforce(&inst).map(|s| Some(s.weight())).map_err(|e| e.to_string())
    };
    let opt = match opt {
        Ok(o) => o,
        Err(why) => return failed(&family, format!("exact optimum: {why}")),
    };
    a.algos
        .iter()
        .map(|&algo| {
            let mut row = Row {
                n: Some(inst.vertex_count()),
                m: Some(inst.edge_count()),
                budget: Some(inst.budget()),
                opt,
                ..blank(&name, &family, algo.name())
            };
            let start = Instant::now();
            let outcome = run_algo(&inst, algo, cfg);
            row.time_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
            let mut ratio = None;
            match outcome {
                Ok((s, _)) => {
                    row.weight = Some(s.weight());
                    row.cost = Some(s.cost());
                    if let Some(o) = opt {
                        let r = ratio_of(s.weight(), o);
                        row.ratio = Some(ratio_string(&r));
                        row.ratio_decimal = Some(format!("{:.6}", to_f64(&r)));
                        ratio = Some(r);
                    }
                }
                Err(f) => row.error = Some(f.message),
            }
            Measured { row, ratio }
        })
        .collect()
}

fn footer(algos: &[Algo], rows: &[Measured]) -> Vec<Row> {
    let mut out = Vec::new();
    for algo in algos {
        let ratios: Vec<&Ratio> = rows.iter().filter(|m| m.row.algo == algo.name()).filter_map(|m| m.ratio.as_ref()).collect();
        let min = ratios.iter().min().map(|r| (*r).clone());
        let mean = (!ratios.is_empty())
            .then(|| ratios.iter().fold(Ratio::from_integer(0.into()), |acc, r| acc + *r) / Ratio::from_integer(ratios.len().into()));
        for (label, value) in [("summary:min", min), ("summary:mean", mean)] {
            out.push(Row {
                ratio_decimal: value.as_ref().map(|r| format!("{:.6}", to_f64(r))),
                ratio: value.as_ref().map(ratio_string),
                ..blank(label, "", algo.name())
            });
        }
    }
    out
}

pub fn run(g: &Global, a: &BenchArgs) -> CliResult<u8> {
    let threshold = parse_ratio(&a.min_ratio)?;
    let cfg = config(a.oracle, None, 1)?;
    let files = instance_files(&a.dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs.max(1))
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    // `collect` on an indexed parallel iterator keeps input order.
    let measured: Vec<Measured> =
        pool.install(|| files.par_iter().map(|p| measure_file(p, a, &cfg)).collect::<Vec<_>>()).into_iter().flatten().collect();

    let below: Vec<&Row> = measured
        .iter()
        .filter(|m| m.row.algo == Algo::Lagrange.name() && m.ratio.as_ref().is_some_and(|r| r < &threshold))
        .map(|m| &m.row)
        .collect();
    let summary = footer(&a.algos, &measured);

    if g.json {
        print_json(&json!({
            "schema": SCHEMA,
            "rows": measured.iter().map(|m| &m.row).collect::<Vec<_>>(),
            "summary": summary,
            "min_ratio": ratio_string(&threshold),
            "below_min_ratio": below.iter().map(|r| &r.instance).collect::<Vec<_>>(),
        }))?;
    } else {
        let sink: Box<dyn std::io::Write> = match &a.out {
            Some(p) => Box::new(std::fs::File::create(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?),
            None => Box::new(std::io::stdout().lock()),
        };
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
        let write_err = |e: csv::Error| Failure::new(1, e.to_string());
        w.write_record(HEADER).map_err(write_err)?;
        for m in &measured {
            w.serialize(&m.row).map_err(write_err)?;
        }
        for r in &summary {
            w.serialize(r).map_err(write_err)?;
        }
        w.flush()?;
    }
    for r in &below {
        eprintln!("ratio audit: {} below {} on {}", r.ratio.as_deref().unwrap_or("?"), ratio_string(&threshold), r.instance);
    }
    Ok(if below.is_empty() { 0 } else { 1 })
}

/// Field order of [`Row`].
const HEADER: [&str; 13] = [
    "instance", "family", "n", "m", "B", "algo", "weight", "cost", "opt", "ratio", "time_ms", "ratio_decimal", "error",
];
