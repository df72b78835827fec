//! Scores fused outcomes against ground truth: per-query correctness, the
//! correct-match count per scheme, and precision-recall curves swept over the
//! fused confidence.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ballot::CandidateId;
use crate::error::{Error, Result};
use crate::fusion::FusionOutcome;

/// Accepted reference ids per query. A set per query supports the usual
/// frame-tolerance windows: any id in the set counts as a correct match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    accepted: Vec<BTreeSet<CandidateId>>,
    n_references: usize,
}

impl GroundTruth {
    pub fn new(accepted: Vec<BTreeSet<CandidateId>>, n_references: usize) -> Result<Self> {
        for (query, set) in accepted.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyTruth { query });
            }
            if let Some(&id) = set.iter().find(|id| id.0 >= n_references) {
                return Err(Error::TruthOutOfRange {
                    query,
                    id: id.0,
                    n_references,
                });
            }
        }
        Ok(Self {
            accepted,
            n_references,
        })
    }

    pub fn n_queries(&self) -> usize {
        self.accepted.len()
    }

    pub fn n_references(&self) -> usize {
        self.n_references
    }

    pub fn accepted(&self, query: usize) -> Option<&BTreeSet<CandidateId>> {
        self.accepted.get(query)
    }
}

/// Per-query correctness of one scheme's fused match.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub query_index: usize,
    pub winner: CandidateId,
    pub correct: bool,
    pub confidence: f64,
}

/// One point of a precision-recall sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrPoint {
    pub threshold: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Precision-recall curve over descending confidence thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PRCurve {
    pub points: Vec<PrPoint>,
    pub auc: f64,
}

/// Marks each outcome correct iff its winner is in the query's accepted set.
pub fn score_matches(outcomes: &[FusionOutcome], truth: &GroundTruth) -> Result<Vec<MatchRecord>> {
    outcomes
        .iter()
        .map(|outcome| {
            let accepted = truth
                .accepted(outcome.query_index)
                .ok_or(Error::MissingTruth {
                    query: outcome.query_index,
                })?;
            Ok(MatchRecord {
                query_index: outcome.query_index,
                winner: outcome.winner,
                correct: accepted.contains(&outcome.winner),
                confidence: outcome.confidence,
            })
        })
        .collect()
}

/// Number of correctly matched queries: the radar-chart radius for a scheme.
pub fn performance_bounds(records: &[MatchRecord]) -> usize {
    records.iter().filter(|r| r.correct).count()
}

/// Sweeps the threshold over the distinct confidences in descending order.
/// At each threshold the records with `confidence >= t` count as retrieved.
/// Records sharing a confidence enter the retrieved set together, so ties
/// cannot produce order-dependent curves. The area is the trapezoidal rule
/// over (recall, precision), anchored at recall zero.
pub fn pr_curve(records: &[MatchRecord]) -> PRCurve {
    assert!(!records.is_empty(), "pr_curve needs at least one record");
    let total_correct = performance_bounds(records);

    let mut thresholds: Vec<f64> = records.iter().map(|r| r.confidence).collect();
    thresholds.sort_by(|a, b| b.partial_cmp(a).expect("confidences are finite"));
    thresholds.dedup();

    let mut points = Vec::with_capacity(thresholds.len());
    for &t in &thresholds {
        let retrieved = records.iter().filter(|r| r.confidence >= t).count();
        let correct_retrieved = records
            .iter()
            .filter(|r| r.correct && r.confidence >= t)
            .count();
        let precision = correct_retrieved as f64 / retrieved as f64;
        let recall = if total_correct == 0 {
            0.0
        } else {
            correct_retrieved as f64 / total_correct as f64
        };
        points.push(PrPoint {
            threshold: t,
            precision,
            recall,
        });
    }

    let auc = if total_correct == 0 {
        0.0
    } else {
        let mut area = 0.0;
        let mut prev_recall = 0.0;
        let mut prev_precision = points[0].precision;
        for p in &points {
            area += (p.recall - prev_recall) * (p.precision + prev_precision) / 2.0;
            prev_recall = p.recall;
            prev_precision = p.precision;
        }
        area
    };

    PRCurve { points, auc }
}
