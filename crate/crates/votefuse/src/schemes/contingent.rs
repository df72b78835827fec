//! Contingent voting: immediate win on an absolute first-choice majority,
//! otherwise a single runoff between the top two first-choice candidates.

use std::collections::BTreeMap;

use super::{ElectionResult, RoundLog, Scheme, Tally};
use crate::ballot::{CandidateId, Election};

pub fn contingent(election: &Election) -> ElectionResult {
    let total = election.n_ballots();
    let first_round = Tally::first_choices(election.ballots());
    let (leader, leader_count, _) = first_round.leader();

    // Absolute majority: strictly more than half of all ballots.
    if 2 * leader_count > total {
        return ElectionResult {
            winner: leader,
            scheme: Scheme::Contingent,
            confidence: leader_count as f64 / total as f64,
            rounds: vec![RoundLog {
                round: 1,
                tally: first_round,
                eliminated: None,
                exhausted_ballots: 0,
            }],
            pairwise: None,
            scores: None,
            tie_broken: false,
            copeland_fallback: false,
        };
    }

    // Retain the two candidates with the most first-choice votes; ties at
    // the cutoff go to the lower index. Without a majority at least two
    // candidates hold votes, so zero-vote candidates never reach the runoff.
    let mut ranked: Vec<(CandidateId, usize)> =
        first_round.counts().iter().map(|(&c, &n)| (c, n)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let (first, second) = (ranked[0], ranked[1]);
    let cutoff_tie = ranked.len() > 2 && ranked[2].1 == second.1;

    // Every ballot transfers to whichever survivor it ranks higher; ballots
    // ranking neither are exhausted.
    let mut transferred: BTreeMap<CandidateId, usize> = BTreeMap::new();
    transferred.insert(first.0.min(second.0), 0);
    transferred.insert(first.0.max(second.0), 0);
    let mut exhausted = 0;
    for ballot in election.ballots() {
        match ballot
            .preferences()
            .iter()
            .find(|&&c| c == first.0 || c == second.0)
        {
            Some(&survivor) => *transferred.get_mut(&survivor).unwrap() += 1,
            None => exhausted += 1,
        }
    }

    let runoff = Tally::from_counts(transferred);
    let (winner, winner_count, runoff_tie) = runoff.leader();

    ElectionResult {
        winner,
        scheme: Scheme::Contingent,
        confidence: winner_count as f64 / total as f64,
        rounds: vec![
            RoundLog {
                round: 1,
                tally: first_round,
                eliminated: None,
                exhausted_ballots: 0,
            },
            RoundLog {
                round: 2,
                tally: runoff,
                eliminated: None,
                exhausted_ballots: exhausted,
            },
        ],
        pairwise: None,
        scores: None,
        tie_broken: cutoff_tie || runoff_tie,
        copeland_fallback: false,
    }
}
