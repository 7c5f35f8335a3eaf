//! Parameter sweeps written as CSV, one row per (n, color budget, seed).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use colorpair::oracle::{find_disjoint_color_iso_pair, PairSearch, SearchBudget};
use colorpair::pipeline::run_pipeline;
use colorpair::ratio_to_f64;
use colorpair::regularize::RegularizeError;

use crate::colors::ColorExpr;
use crate::commands::{config, make_coloring, stdout};
use crate::{EmbedArgs, Family, Status};

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Family::Greedy)]
    family: Family,
    /// Comma-separated greedy color targets, e.g. `n-1,3n/2,2n`.
    #[arg(long, value_delimiter = ',', default_value = "n-1")]
    colors: Vec<ColorExpr>,
    /// Seeds per (n, colors) cell; row k uses `--seed + k`.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[command(flatten)]
    embed: EmbedArgs,
    /// Run the exhaustive oracle up to this n ("skipped" above).
    #[arg(long, default_value_t = 16)]
    oracle_max_n: usize,
    /// Cap the oracle at this many copies per row.
    #[arg(long)]
    oracle_budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where certificates of successful rows go; defaults to `<out>.certs`
    /// or `./certs`.
    #[arg(long)]
    cert_dir: Option<PathBuf>,
}

/// Header order is part of the file format.
#[derive(Debug, Serialize)]
struct ExperimentRow {
    n: usize,
    t: usize,
    num_colors: usize,
    seed: u64,
    partition_count: u64,
    aux_edges: usize,
    m: Option<usize>,
    delta: Option<usize>,
    #[serde(rename = "bigK")]
    big_k: Option<String>,
    embed_outcome: String,
    oracle_outcome: String,
    wall_time_ms: u128,
}

struct Job {
    n: usize,
    colors: ColorExpr,
    target: usize,
    seed: u64,
}

fn run_row(job: &Job, args: &ExperimentArgs, cert_dir: &Path) -> Result<ExperimentRow> {
    let start = Instant::now();
    let coloring = make_coloring(job.n, args.family, Some(job.colors), job.seed)?;
    let embed = EmbedArgs {
        seed: job.seed,
        ..args.embed.clone()
    };
    let run = run_pipeline(&coloring, &config(&embed)?)?;
    let (m, delta, big_k) = match &run.g0 {
        Ok(g0) => (
            Some(g0.m()),
            Some(g0.delta()),
            Some(format!("{:.4}", ratio_to_f64(&g0.big_k()))),
        ),
        Err(RegularizeError::TooSparse { m, delta, .. }) => (Some(*m), Some(*delta), None),
        Err(_) => (None, None, None),
    };
    if let Some(cert) = &run.certificate {
        let stem = format!("n{}_t{}_C{}_s{}", job.n, embed.t, job.target, job.seed);
        fs::write(cert_dir.join(format!("{stem}.cert.json")), cert.to_json())?;
        fs::write(
            cert_dir.join(format!("{stem}.coloring.json")),
            coloring.to_json(),
        )?;
    }
    let oracle_outcome = if job.n > args.oracle_max_n {
        "skipped".to_string()
    } else {
        let budget = args
            .oracle_budget
            .map_or(SearchBudget::Exhaustive, SearchBudget::Copies);
        match find_disjoint_color_iso_pair(&coloring, embed.t, budget) {
            Ok(PairSearch::Found(_)) => "found".into(),
            Ok(PairSearch::Absent { .. }) => "absent".into(),
            Ok(PairSearch::Inconclusive { .. }) => "inconclusive".into(),
            // too few vertices for two copies
            Err(_) => "skipped".into(),
        }
    };
    Ok(ExperimentRow {
        n: job.n,
        t: embed.t,
        num_colors: coloring.num_colors(),
        seed: job.seed,
        partition_count: run.partition.count,
        aux_edges: run.aux.edge_count(),
        m,
        delta,
        big_k,
        embed_outcome: run.outcome().to_string(),
        oracle_outcome,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

pub fn run(args: &ExperimentArgs) -> Result<Status> {
    let cert_dir = match (&args.cert_dir, &args.out) {
        (Some(dir), _) => dir.clone(),
        (None, Some(out)) => {
            let mut name = out.as_os_str().to_owned();
            name.push(".certs");
            PathBuf::from(name)
        }
        (None, None) => PathBuf::from("certs"),
    };
    fs::create_dir_all(&cert_dir).with_context(|| format!("creating {}", cert_dir.display()))?;

    // Only greedy colorings depend on the budget; other families get one cell.
    let exprs: &[ColorExpr] = match args.family {
        Family::Greedy => &args.colors,
        _ => &args.colors[..1],
    };
    let mut ns = args.n.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut jobs = Vec::new();
    for &n in &ns {
        let mut cells: Vec<(usize, ColorExpr)> = exprs
            .iter()
            .map(|&e| {
                e.eval(n)
                    .map(|target| (target, e))
                    .with_context(|| format!("color budget {e} is empty at n = {n}"))
            })
            .collect::<Result<_>>()?;
        cells.sort_by_key(|c| c.0);
        cells.dedup_by_key(|c| c.0);
        for (target, colors) in cells {
            for k in 0..args.seeds {
                jobs.push(Job {
                    n,
                    colors,
                    target,
                    seed: args.embed.seed.wrapping_add(k),
                });
            }
        }
    }

    // collect() keeps job order, so the CSV is independent of scheduling
    let rows: Vec<ExperimentRow> = jobs
        .par_iter()
        .map(|job| run_row(job, args, &cert_dir))
        .collect::<Result<_>>()?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().context("flushing CSV")?;
    match &args.out {
        Some(path) => {
            fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => stdout(std::str::from_utf8(&bytes)?)?,
    }
    let successes = rows.iter().filter(|r| r.embed_outcome == "success").count();
    eprintln!(
        "{} rows, {successes} certificates in {}",
        rows.len(),
        cert_dir.display()
    );
    Ok(Status::Produced)
}
