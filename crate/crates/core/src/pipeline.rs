//! End-to-end run: partition, auxiliary graph, regularization, embedding,
//! lifting and independent verification.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::auxgraph::{edge_lower_bound_report, AuxError, AuxGraph, EdgeBoundReport};
use crate::certificate::CertificatePair;
use crate::coloring::ProperColoring;
use crate::embed::{
    greedy_embed, lift_to_certificate, EmbedError, EmbedFailure, HtEmbedding, PipelineParams,
};
use crate::matchings::{select_good_partition, GoodPartition, PartitionError};
use crate::oracle::{verify_certificate, VerifyReport};
use crate::regularize::{
    almost_regular_balanced_subgraph, RegularizeConfig, RegularizeError, RegularizedSubgraph,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Aux(#[from] AuxError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("certificate failed independent verification: {0:?}")]
    Rejected(VerifyReport),
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub params: PipelineParams,
    pub max_tries: usize,
    pub regularize: RegularizeConfig,
}

impl PipelineConfig {
    pub fn new(params: PipelineParams) -> Self {
        let regularize = RegularizeConfig::for_t(params.t);
        PipelineConfig {
            params,
            max_tries: 64,
            regularize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    EmptyAux,
    TooSparse,
    EmbedFailed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Success => "success",
            Outcome::EmptyAux => "empty_aux",
            Outcome::TooSparse => "too_sparse",
            Outcome::EmbedFailed => "embed_failed",
        })
    }
}

#[derive(Debug)]
pub struct PipelineRun {
    pub partition: GoodPartition,
    pub aux: AuxGraph,
    pub edge_bounds: EdgeBoundReport,
    pub g0: Result<RegularizedSubgraph, RegularizeError>,
    pub embedding: Option<Result<HtEmbedding, Box<EmbedFailure>>>,
    /// Present only after the independent verifier accepted it.
    pub certificate: Option<CertificatePair>,
}

impl PipelineRun {
    pub fn outcome(&self) -> Outcome {
        match (&self.g0, &self.embedding) {
            (Err(RegularizeError::EmptyInput), _) => Outcome::EmptyAux,
            (Err(_), _) => Outcome::TooSparse,
            (Ok(_), Some(Ok(_))) => Outcome::Success,
            (Ok(_), _) => Outcome::EmbedFailed,
        }
    }
}

pub fn run_pipeline(
    coloring: &ProperColoring,
    config: &PipelineConfig,
) -> Result<PipelineRun, PipelineError> {
    config.params.validate()?;
    let partition = select_good_partition(coloring, config.params.seed, config.max_tries)?;
    let aux = AuxGraph::build(coloring, &partition.partition)?;
    let edge_bounds = edge_lower_bound_report(coloring, &aux, config.params.gamma, config.params.t);
    let g0 = almost_regular_balanced_subgraph(&aux, &config.regularize);
    let mut run = PipelineRun {
        partition,
        aux,
        edge_bounds,
        g0,
        embedding: None,
        certificate: None,
    };
    let Ok(g0) = &run.g0 else {
        return Ok(run);
    };
    let embedding = greedy_embed(g0, &config.params);
    if let Ok(emb) = &embedding {
        let mut cert = lift_to_certificate(emb, g0, coloring)?;
        let report = verify_certificate(coloring, &cert).map_err(|e| {
            EmbedError::InternalInconsistency(format!("lifted certificate malformed: {e}"))
        })?;
        if !report.ok {
            return Err(PipelineError::Rejected(report));
        }
        cert.colors_checked = true;
        run.certificate = Some(cert);
    }
    run.embedding = Some(embedding);
    Ok(run)
}
