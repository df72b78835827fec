//! The five voting procedures, each returning the winning candidate plus a
//! full audit trail.
//!
//! Every tie anywhere (winner selection, elimination, cutoff) resolves to the
//! lowest candidate index and sets `tie_broken` on the result, so identical
//! inputs always produce identical outcomes.

mod borda;
mod condorcet;
mod contingent;
mod irv;
mod plurality;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use borda::{borda, BordaScores};
pub use condorcet::{condorcet, pairwise_matrix, PairwiseMatrix};
pub use contingent::contingent;
pub use irv::irv;
pub use plurality::plurality;

use crate::ballot::{CandidateId, Election, RankedBallot};
use crate::error::{Error, Result};

/// Identifier of a voting procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Plurality,
    Condorcet,
    Borda,
    Contingent,
    Irv,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Plurality,
        Scheme::Condorcet,
        Scheme::Borda,
        Scheme::Contingent,
        Scheme::Irv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Plurality => "plurality",
            Scheme::Condorcet => "condorcet",
            Scheme::Borda => "borda",
            Scheme::Contingent => "contingent",
            Scheme::Irv => "irv",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plurality" => Ok(Scheme::Plurality),
            "condorcet" => Ok(Scheme::Condorcet),
            "borda" => Ok(Scheme::Borda),
            "contingent" => Ok(Scheme::Contingent),
            "irv" => Ok(Scheme::Irv),
            other => Err(Error::UnknownScheme {
                name: other.to_string(),
            }),
        }
    }
}

/// First-choice vote counts among active candidates.
///
/// Sparse: candidates currently holding zero ballots are simply absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tally(BTreeMap<CandidateId, usize>);

impl Tally {
    pub(crate) fn from_counts(counts: BTreeMap<CandidateId, usize>) -> Self {
        Self(counts)
    }

    /// Tallies the top preference of every ballot.
    pub fn first_choices(ballots: &[RankedBallot]) -> Self {
        let mut counts = BTreeMap::new();
        for ballot in ballots {
            *counts.entry(ballot.preferences()[0]).or_insert(0) += 1;
        }
        Self(counts)
    }

    pub fn get(&self, candidate: CandidateId) -> usize {
        self.0.get(&candidate).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<CandidateId, usize> {
        &self.0
    }

    /// Candidate with the most votes; ties resolve to the lowest index.
    /// Returns `(winner, count, tie_at_top)`.
    pub(crate) fn leader(&self) -> (CandidateId, usize, bool) {
        leader_of(self.0.iter().map(|(&c, &n)| (c, n)))
    }
}

/// Max-by-count over `(candidate, count)` pairs visited in ascending
/// candidate order; strict comparison keeps the lowest index on ties.
pub(crate) fn leader_of<N: Copy + Ord>(
    pairs: impl Iterator<Item = (CandidateId, N)>,
) -> (CandidateId, N, bool) {
    let mut best: Option<(CandidateId, N)> = None;
    let mut tie = false;
    for (candidate, count) in pairs {
        match best {
            None => best = Some((candidate, count)),
            Some((_, top)) if count > top => {
                best = Some((candidate, count));
                tie = false;
            }
            Some((_, top)) if count == top => tie = true,
            _ => {}
        }
    }
    let (winner, count) = best.expect("leader_of called with no candidates");
    (winner, count, tie)
}

/// Audit record of one counting round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLog {
    /// 1-based round number.
    pub round: usize,
    /// Vote counts at the start of the round, before any elimination.
    pub tally: Tally,
    /// Candidate removed after this round's tally, if any.
    pub eliminated: Option<CandidateId>,
    /// Cumulative number of ballots with no remaining active preference.
    pub exhausted_ballots: usize,
}

/// Outcome of one election under one scheme, with a full audit trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectionResult {
    pub winner: CandidateId,
    pub scheme: Scheme,
    /// Scheme-specific normalized share of the winner's final tally, in [0, 1].
    pub confidence: f64,
    pub rounds: Vec<RoundLog>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<PairwiseMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<BordaScores>,
    /// True when any lowest-index tie-break influenced the procedure.
    pub tie_broken: bool,
    /// True when Condorcet found no strict winner and fell back to Copeland.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub copeland_fallback: bool,
}

/// Runs `scheme` over `election`. `borda_weights` only applies to Borda.
pub fn decide(
    election: &Election,
    scheme: Scheme,
    borda_weights: Option<&[u64]>,
) -> Result<ElectionResult> {
    match scheme {
        Scheme::Plurality => Ok(plurality(election)),
        Scheme::Condorcet => Ok(condorcet(election)),
        Scheme::Borda => borda(election, borda_weights),
        Scheme::Contingent => Ok(contingent(election)),
        Scheme::Irv => Ok(irv(election)),
    }
}
