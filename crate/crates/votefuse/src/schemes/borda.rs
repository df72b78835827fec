//! Borda count: positional points per rank, highest sum wins.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{leader_of, ElectionResult, RoundLog, Scheme, Tally};
use crate::ballot::{CandidateId, Election};
use crate::error::{Error, Result};

/// Summed positional points per candidate. Candidates never ranked on any
/// ballot score zero and are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BordaScores(BTreeMap<CandidateId, u64>);

impl BordaScores {
    pub fn get(&self, candidate: CandidateId) -> u64 {
        self.0.get(&candidate).copied().unwrap_or(0)
    }

    pub fn scores(&self) -> &BTreeMap<CandidateId, u64> {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

/// Runs a Borda count. With `weights = None`, ballot position `p` (0-based)
/// scores `L - p` points where `L` is the longest ballot in the election;
/// unranked candidates score 0. Custom weights must be strictly descending,
/// positive, and cover the longest ballot.
pub fn borda(election: &Election, weights: Option<&[u64]>) -> Result<ElectionResult> {
    let max_len = election
        .ballots()
        .iter()
        .map(|b| b.preferences().len())
        .max()
        .expect("election has ballots");

    let default_weights: Vec<u64>;
    let weights: &[u64] = match weights {
        Some(w) => {
            validate_weights(w, max_len)?;
            w
        }
        None => {
            default_weights = (1..=max_len as u64).rev().collect();
            &default_weights
        }
    };

    let mut scores: BTreeMap<CandidateId, u64> = BTreeMap::new();
    for ballot in election.ballots() {
        for (position, &candidate) in ballot.preferences().iter().enumerate() {
            *scores.entry(candidate).or_insert(0) += weights[position];
        }
    }

    let (winner, winner_score, tie_broken) = leader_of(scores.iter().map(|(&c, &s)| (c, s)));
    let total: u64 = scores.values().sum();
    let confidence = if total == 0 {
        0.0
    } else {
        winner_score as f64 / total as f64
    };

    Ok(ElectionResult {
        winner,
        scheme: Scheme::Borda,
        confidence,
        rounds: vec![RoundLog {
            round: 1,
            tally: Tally::first_choices(election.ballots()),
            eliminated: None,
            exhausted_ballots: 0,
        }],
        pairwise: None,
        scores: Some(BordaScores(scores)),
        tie_broken,
        copeland_fallback: false,
    })
}

fn validate_weights(weights: &[u64], max_ballot_len: usize) -> Result<()> {
    if weights.len() < max_ballot_len {
        return Err(Error::InvalidBordaWeights {
            reason: format!(
                "{} weights given but ballots rank up to {max_ballot_len} candidates",
                weights.len()
            ),
        });
    }
    if weights.iter().any(|&w| w == 0) {
        return Err(Error::InvalidBordaWeights {
            reason: "weights must be positive".into(),
        });
    }
    if weights.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidBordaWeights {
            reason: "weights must be strictly descending".into(),
        });
    }
    Ok(())
}
