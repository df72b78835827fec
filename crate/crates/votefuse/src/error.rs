//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("voter {voter}: non-finite score at index {index}")]
    NonFiniteScore { voter: String, index: usize },

    #[error("voter {voter}: score row has {len} entries, need at least 2")]
    ShortScoreRow { voter: String, len: usize },

    #[error("ballot depth must be at least 1")]
    ZeroBallotDepth,

    #[error("voter {voter}: duplicate candidate {candidate} at position {position}")]
    DuplicateCandidate {
        voter: String,
        position: usize,
        candidate: usize,
    },

    #[error(
        "voter {voter}: candidate {candidate} at position {position} out of range (n_candidates = {n_candidates})"
    )]
    CandidateOutOfRange {
        voter: String,
        position: usize,
        candidate: usize,
        n_candidates: usize,
    },

    #[error("voter {voter}: ballot is empty")]
    EmptyBallot { voter: String },

    #[error("election has no ballots")]
    NoBallots,

    #[error("invalid Borda weights: {reason}")]
    InvalidBordaWeights { reason: String },

    #[error("fusion needs at least 2 voters, got {found}")]
    TooFewVoters { found: usize },

    #[error("voter {voter}: score row has {found} entries, expected {expected}")]
    InconsistentRowLength {
        voter: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "technique {technique}: matrix shape {found_queries}x{found_references} does not match expected {expected_queries}x{expected_references}"
    )]
    ShapeMismatch {
        technique: String,
        expected_queries: usize,
        expected_references: usize,
        found_queries: usize,
        found_references: usize,
    },

    #[error("duplicate technique name {name}")]
    DuplicateTechnique { name: String },

    #[error("matrix must have at least 1 query row, got {n_queries}")]
    TooFewQueries { n_queries: usize },

    #[error("matrix must have at least 2 reference columns, got {n_references}")]
    TooFewReferences { n_references: usize },

    #[error("no ground-truth entry for query {query}")]
    MissingTruth { query: usize },

    #[error("ground truth for query {query}: candidate {id} out of range (n_references = {n_references})")]
    TruthOutOfRange {
        query: usize,
        id: usize,
        n_references: usize,
    },

    #[error("ground truth for query {query} is empty")]
    EmptyTruth { query: usize },

    #[error("match records misaligned: {detail}")]
    RecordMismatch { detail: String },

    #[error("z-table needs at least 2 schemes, got {found}")]
    TooFewSchemes { found: usize },

    #[error("duplicate scheme label {label} in z-table input")]
    DuplicateSchemeLabel { label: String },

    #[error("unknown voting scheme {name} (expected plurality, condorcet, borda, contingent or irv)")]
    UnknownScheme { name: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: file is empty")]
    EmptyFile { path: PathBuf },

    #[error("{path}: row {row}, column {col}: {detail}")]
    CsvCell {
        path: PathBuf,
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("{path}: row {row} has {found} columns, expected {expected}")]
    RaggedRow {
        path: PathBuf,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{path}: line {line}: {detail}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error("{path}: duplicate entry for query {query}")]
    DuplicateQuery { path: PathBuf, query: usize },

    #[error("{path}: {detail}")]
    ManifestInvalid { path: PathBuf, detail: String },

    #[error("{path}: failed to parse summary: {detail}")]
    SummaryParse { path: PathBuf, detail: String },

    #[error("synthetic generator: {detail}")]
    SynthConfig { detail: String },
}
