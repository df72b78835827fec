//! Ranked-choice voting engine and ensemble-fusion harness.
//!
//! Several scoring techniques ("voters") each rank candidate references per
//! query from a similarity matrix; a configurable voting scheme — plurality,
//! Condorcet, Borda, contingent or instant-runoff — elects the fused match.
//! An evaluation layer computes correct-match counts and precision-recall
//! curves per scheme, and a McNemar-style pairwise Z test says whether two
//! schemes differ significantly on the same queries.
//!
//! The per-query elections are independent; with the default `parallel`
//! feature enabled, dataset runs fan out across rayon workers and still
//! produce output identical to the sequential path.

pub mod ballot;
pub mod error;
pub mod evaluation;
pub mod fusion;
pub mod io;
pub mod manifest;
pub mod schemes;
pub mod significance;
pub mod synth;

pub use ballot::{
    ballot_from_scores, validate_election, CandidateId, Election, RankedBallot, ScoreMatrix,
    VoterId, DEFAULT_BALLOT_DEPTH,
};
pub use error::{Error, Result};
pub use evaluation::{
    performance_bounds, pr_curve, score_matches, GroundTruth, MatchRecord, PRCurve,
};
pub use fusion::{fuse_query, run_dataset, run_dataset_sequential, FusionConfig, FusionOutcome};
pub use schemes::{
    borda, condorcet, contingent, decide, irv, pairwise_matrix, plurality, ElectionResult,
    PairwiseMatrix, Scheme,
};
pub use significance::{
    mcnemar_counts, mcnemar_statistic, pairwise_z_table, z_confidence_band, Band,
    ContingencyCounts, PairwiseZTable, ZStatistic,
};
pub use synth::generate_synthetic;
