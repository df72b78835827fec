//! Ensemble fusion: each scoring technique is a voter, the reference images
//! are the candidates, and a ranked ballot per technique feeds the chosen
//! voting scheme, one independent election per query.
//!
//! With the `parallel` feature (on by default) [`run_dataset`] fans queries
//! out across rayon workers; outputs are ordered by query index and identical
//! to [`run_dataset_sequential`] either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ballot::{
    ballot_from_scores, validate_election, CandidateId, ScoreMatrix, VoterId,
    DEFAULT_BALLOT_DEPTH,
};
use crate::error::{Error, Result};
use crate::schemes::{decide, ElectionResult, Scheme};

/// Configuration for one fusion run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionConfig {
    pub scheme: Scheme,
    /// How many top-scored references each voter ranks.
    pub ballot_depth: usize,
    /// Custom Borda weights; linear weights are derived when absent.
    pub borda_weights: Option<Vec<u64>>,
}

impl FusionConfig {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            ballot_depth: DEFAULT_BALLOT_DEPTH,
            borda_weights: None,
        }
    }

    pub fn with_ballot_depth(mut self, depth: usize) -> Self {
        self.ballot_depth = depth;
        self
    }

    pub fn with_borda_weights(mut self, weights: Option<Vec<u64>>) -> Self {
        self.borda_weights = weights;
        self
    }
}

/// One query's slice through every technique's score matrix.
#[derive(Debug, Clone)]
pub struct QueryCase<'a> {
    query_index: usize,
    rows: Vec<(&'a VoterId, &'a [f64])>,
}

impl<'a> QueryCase<'a> {
    pub fn new(query_index: usize, rows: Vec<(&'a VoterId, &'a [f64])>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::TooFewVoters { found: rows.len() });
        }
        let expected = rows[0].1.len();
        for (voter, row) in &rows {
            if row.len() != expected {
                return Err(Error::InconsistentRowLength {
                    voter: voter.name.clone(),
                    expected,
                    found: row.len(),
                });
            }
        }
        Ok(Self { query_index, rows })
    }

    pub fn query_index(&self) -> usize {
        self.query_index
    }

    pub fn n_references(&self) -> usize {
        self.rows[0].1.len()
    }
}

/// The fused decision for one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionOutcome {
    pub query_index: usize,
    pub winner: CandidateId,
    pub confidence: f64,
    pub scheme: Scheme,
    pub audit: ElectionResult,
}

/// Builds one ballot per voter, validates the election, and runs the
/// configured scheme.
pub fn fuse_query(case: &QueryCase<'_>, config: &FusionConfig) -> Result<FusionOutcome> {
    let n_references = case.n_references();
    let ballots = case
        .rows
        .iter()
        .map(|(voter, row)| ballot_from_scores(row, config.ballot_depth, (*voter).clone()))
        .collect::<Result<Vec<_>>>()?;
    let election = validate_election(ballots, n_references)?;
    let audit = decide(&election, config.scheme, config.borda_weights.as_deref())?;
    Ok(FusionOutcome {
        query_index: case.query_index(),
        winner: audit.winner,
        confidence: audit.confidence,
        scheme: config.scheme,
        audit,
    })
}

/// Runs the configured scheme over every query of a dataset, one outcome per
/// query in query order. Queries are independent; with the `parallel` feature
/// they are evaluated across worker threads.
pub fn run_dataset(matrices: &[ScoreMatrix], config: &FusionConfig) -> Result<Vec<FusionOutcome>> {
    let n_queries = check_dataset(matrices, config)?;
    #[cfg(feature = "parallel")]
    {
        (0..n_queries)
            .into_par_iter()
            .map(|q| fuse_one(matrices, config, q))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_queries).map(|q| fuse_one(matrices, config, q)).collect()
    }
}

/// Single-threaded twin of [`run_dataset`]; always available, same results.
pub fn run_dataset_sequential(
    matrices: &[ScoreMatrix],
    config: &FusionConfig,
) -> Result<Vec<FusionOutcome>> {
    let n_queries = check_dataset(matrices, config)?;
    (0..n_queries).map(|q| fuse_one(matrices, config, q)).collect()
}

fn fuse_one(matrices: &[ScoreMatrix], config: &FusionConfig, query: usize) -> Result<FusionOutcome> {
    let rows = matrices
        .iter()
        .map(|m| (m.technique(), m.row(query)))
        .collect();
    fuse_query(&QueryCase::new(query, rows)?, config)
}

/// Validates voter count, shape agreement, uniqueness of technique names and
/// the Borda weight configuration up front, so per-query work cannot fail on
/// configuration problems.
fn check_dataset(matrices: &[ScoreMatrix], config: &FusionConfig) -> Result<usize> {
    if matrices.len() < 2 {
        return Err(Error::TooFewVoters {
            found: matrices.len(),
        });
    }
    if config.ballot_depth == 0 {
        return Err(Error::ZeroBallotDepth);
    }
    let (n_queries, n_references) = (matrices[0].n_queries(), matrices[0].n_references());
    for m in &matrices[1..] {
        if m.n_queries() != n_queries || m.n_references() != n_references {
            return Err(Error::ShapeMismatch {
                technique: m.technique().name.clone(),
                expected_queries: n_queries,
                expected_references: n_references,
                found_queries: m.n_queries(),
                found_references: m.n_references(),
            });
        }
    }
    for (i, m) in matrices.iter().enumerate() {
        if matrices[..i]
            .iter()
            .any(|other| other.technique().name == m.technique().name)
        {
            return Err(Error::DuplicateTechnique {
                name: m.technique().name.clone(),
            });
        }
    }
    if let Some(weights) = &config.borda_weights {
        let ballot_len = config.ballot_depth.min(n_references);
        if weights.len() < ballot_len {
            return Err(Error::InvalidBordaWeights {
                reason: format!(
                    "{} weights given but ballots rank {ballot_len} candidates",
                    weights.len()
                ),
            });
        }
    }
    Ok(n_queries)
}
