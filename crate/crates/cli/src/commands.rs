use std::fs;
use std::io::{ErrorKind, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use colorpair::auxgraph::check_unique_shared_neighbor;
use colorpair::coloring::{greedy_random, rainbow, round_robin_any};
use colorpair::embed::{turan_light_audit, weight_check, TuranStatus, Weights};
use colorpair::matchings::exact_expectation;
use colorpair::oracle::{
    find_disjoint_color_iso_pair, verify_certificate, AbsenceRecord, PairSearch, SearchBudget,
};
use colorpair::pipeline::{run_pipeline, PipelineConfig, PipelineRun};
use colorpair::regularize::pipeline_constants;
use colorpair::{stream_rng, CertificatePair, EdgeColoring, Mode, PipelineParams, ProperColoring};

use crate::colors::ColorExpr;
use crate::{EmbedArgs, Family, Status};

pub fn chromatic_index(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n.saturating_sub(1).max(1)
    } else {
        n
    }
}

/// Builds a coloring of the requested family. Greedy targets below the
/// chromatic index are raised to it.
pub fn make_coloring(
    n: usize,
    family: Family,
    colors: Option<ColorExpr>,
    seed: u64,
) -> Result<ProperColoring> {
    if n < 2 {
        bail!("n must be at least 2, got {n}");
    }
    Ok(match family {
        Family::Roundrobin => round_robin_any(n)?,
        Family::Rainbow => rainbow(n)?,
        Family::Greedy => {
            let target = match colors {
                Some(expr) => expr
                    .eval(n)
                    .with_context(|| format!("color budget {expr} is empty at n = {n}"))?,
                None => n - 1,
            };
            greedy_random(n, target.max(chromatic_index(n)), seed)?
        }
    })
}

pub fn params(embed: &EmbedArgs) -> Result<PipelineParams> {
    let mode = if embed.strict {
        Mode::Strict
    } else {
        Mode::Relaxed
    };
    Ok(PipelineParams::new(embed.t)?
        .with_mode(mode)
        .with_seed(embed.seed)
        .with_max_backtracks(embed.budget))
}

pub fn config(embed: &EmbedArgs) -> Result<PipelineConfig> {
    let mut config = PipelineConfig::new(params(embed)?);
    config.max_tries = embed.max_tries;
    Ok(config)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_raw(path: &Path) -> Result<EdgeColoring> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_coloring(path: &Path) -> Result<ProperColoring> {
    ProperColoring::try_from(read_raw(path)?)
        .with_context(|| format!("{} is not a proper coloring", path.display()))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display())),
        None => stdout(&format!("{text}\n")),
    }
}

/// Writes to stdout; a reader that went away early (`| head`) is not an error.
pub fn stdout(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e).context("writing to stdout"),
        _ => Ok(()),
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

pub fn generate(
    n: usize,
    family: Family,
    colors: Option<ColorExpr>,
    seed: u64,
    out: Option<&Path>,
) -> Result<Status> {
    let coloring = make_coloring(n, family, colors, seed)?;
    emit(out, &coloring.to_json())?;
    Ok(Status::Produced)
}

pub fn verify(path: &Path) -> Result<Status> {
    let raw = read_raw(path)?;
    let report = match raw.validate() {
        Ok(report) => report,
        Err(e) => {
            emit(
                None,
                &pretty(&json!({ "ok": false, "error": e.to_string() })),
            )?;
            return Ok(Status::Negative);
        }
    };
    emit(None, &pretty(&report))?;
    Ok(if report.ok && report.unused_colors.is_empty() {
        Status::Produced
    } else {
        Status::Negative
    })
}

/// Summary of a run that did not end in a certificate.
pub fn diagnostics(run: &PipelineRun) -> Value {
    let regularized = match &run.g0 {
        Ok(g0) => serde_json::to_value(g0.report()).expect("report serializes"),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let failure = match &run.embedding {
        Some(Err(f)) => json!({ "message": f.to_string(), "detail": f }),
        _ => Value::Null,
    };
    json!({
        "outcome": run.outcome().to_string(),
        "partition": {
            "count": run.partition.count,
            "tries": run.partition.tries,
            "partition_seed": run.partition.partition_seed,
            "threshold": run.partition.threshold.to_string(),
            "below_threshold": run.partition.below_threshold,
        },
        "aux_edges": run.aux.edge_count(),
        "edge_bounds": run.edge_bounds,
        "regularized": regularized,
        "embedding_failure": failure,
    })
}

pub fn find_pair(
    path: &Path,
    embed: &EmbedArgs,
    out: Option<&Path>,
    dump_aux: Option<&Path>,
) -> Result<Status> {
    let coloring = load_coloring(path)?;
    let run = run_pipeline(&coloring, &config(embed)?)?;
    if let Some(dump) = dump_aux {
        emit(Some(dump), &pretty(&run.aux.to_adjacency_json()))?;
    }
    match &run.certificate {
        Some(cert) => {
            emit(out, &cert.to_json())?;
            eprintln!(
                "certificate verified ({} cross matchings, {} aux edges)",
                run.partition.count,
                run.aux.edge_count()
            );
            Ok(Status::Produced)
        }
        None => {
            emit(None, &pretty(&diagnostics(&run)))?;
            Ok(Status::Negative)
        }
    }
}

pub fn oracle(path: &Path, t: usize, budget: Option<usize>, out: Option<&Path>) -> Result<Status> {
    let coloring = load_coloring(path)?;
    let budget = budget.map_or(SearchBudget::Exhaustive, SearchBudget::Copies);
    match find_disjoint_color_iso_pair(&coloring, t, budget)? {
        PairSearch::Found(cert) => {
            emit(out, &cert.to_json())?;
            Ok(Status::Produced)
        }
        PairSearch::Absent { examined } => {
            let record = AbsenceRecord::new(&coloring, t);
            emit(
                None,
                &pretty(&json!({ "result": "absent", "examined": examined, "record": record })),
            )?;
            Ok(Status::Negative)
        }
        PairSearch::Inconclusive { examined } => {
            emit(
                None,
                &pretty(&json!({ "result": "inconclusive", "examined": examined })),
            )?;
            Ok(Status::Negative)
        }
    }
}

pub fn check_cert(coloring: &Path, certificate: &Path) -> Result<Status> {
    let coloring = load_coloring(coloring)?;
    let cert = CertificatePair::from_json(&read(certificate)?)
        .with_context(|| format!("parsing {}", certificate.display()))?;
    let report = match verify_certificate(&coloring, &cert) {
        Ok(report) => report,
        Err(e) => {
            emit(
                None,
                &pretty(&json!({ "ok": false, "error": e.to_string() })),
            )?;
            return Ok(Status::Negative);
        }
    };
    emit(None, &pretty(&report))?;
    Ok(if report.ok {
        Status::Produced
    } else {
        Status::Negative
    })
}

pub fn audit(path: &Path, embed: &EmbedArgs, samples: usize, out: Option<&Path>) -> Result<Status> {
    let coloring = load_coloring(path)?;
    let params = params(embed)?;
    let run = run_pipeline(&coloring, &config(embed)?)?;
    let shared = match check_unique_shared_neighbor(&run.aux) {
        Ok(()) => json!({ "ok": true }),
        Err(w) => json!({ "ok": false, "witness": w }),
    };
    let mut report = json!({
        "n": coloring.n(),
        "t": params.t,
        "num_colors": coloring.num_colors(),
        "seed": params.seed,
        "expected_cross_matchings": exact_expectation(&coloring)?.to_string(),
        "unique_shared_neighbor": shared,
        "constants": pipeline_constants(params.t, params.gamma)?,
        "pipeline": diagnostics(&run),
    });

    if let Ok(g0) = &run.g0 {
        let weights = Weights::new(g0);
        let whole: Vec<usize> = (0..g0.a_len()).collect();
        let mut rng = stream_rng(params.seed, 16);
        let mut checks = vec![weight_check(g0, &weights, &whole)];
        for _ in 0..samples {
            let mut ids = whole.clone();
            ids.shuffle(&mut rng);
            ids.truncate(rng.gen_range(2..=g0.a_len().max(2)));
            checks.push(weight_check(g0, &weights, &ids));
        }
        let applicable = checks.iter().filter(|c| c.precondition).count();
        let failures = checks.iter().filter(|c| !c.pass()).count();
        let turan = turan_light_audit(g0, &weights, &whole, &params);
        let audited = turan
            .entries
            .iter()
            .filter(|e| matches!(e.status, TuranStatus::KtFree { .. }))
            .count();
        report["weights"] = json!({
            "samples": checks.len(),
            "precondition_met": applicable,
            "failures": failures,
            "whole_side": checks[0],
        });
        report["light_edges"] = json!({
            "aggregate": turan.aggregate,
            "audited_neighbourhoods": audited,
            "heavy_clique": turan.heavy_clique(),
            "claimed_bound_failures": turan.claimed_failures().collect::<Vec<_>>(),
            "turan_bound_failures": turan.turan_failures().collect::<Vec<_>>(),
        });
    }
    emit(out, &pretty(&report))?;
    Ok(Status::Produced)
}
