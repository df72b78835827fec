//! Plurality: the candidate with the most first-place votes wins.

use super::{ElectionResult, RoundLog, Scheme, Tally};
use crate::ballot::Election;

pub fn plurality(election: &Election) -> ElectionResult {
    let tally = Tally::first_choices(election.ballots());
    let (winner, count, tie_broken) = tally.leader();
    let confidence = count as f64 / election.n_ballots() as f64;
    ElectionResult {
        winner,
        scheme: Scheme::Plurality,
        confidence,
        rounds: vec![RoundLog {
            round: 1,
            tally,
            eliminated: None,
            exhausted_ballots: 0,
        }],
        pairwise: None,
        scores: None,
        tie_broken,
        copeland_fallback: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::Election;

    fn run(ballots: Vec<Vec<usize>>, n: usize) -> ElectionResult {
        plurality(&Election::from_ranked_ids(ballots, n).unwrap())
    }

    #[test]
    fn most_first_place_votes_wins() {
        let r = run(vec![vec![0, 1], vec![0, 2], vec![1, 0]], 3);
        assert_eq!(r.winner.0, 0);
        assert_eq!(r.confidence, 2.0 / 3.0);
        assert!(!r.tie_broken);
    }

    #[test]
    fn tie_resolves_to_lowest_index() {
        let r = run(vec![vec![0], vec![1]], 2);
        assert_eq!(r.winner.0, 0);
        assert!(r.tie_broken);
    }

    #[test]
    fn three_of_four_first_votes() {
        let r = run(vec![vec![2, 1], vec![2, 0], vec![2, 1], vec![1, 2]], 3);
        assert_eq!(r.winner.0, 2);
        assert_eq!(r.confidence, 3.0 / 4.0);
    }

    #[test]
    fn audit_round_records_the_full_tally() {
        let r = run(vec![vec![0, 1], vec![0, 2], vec![1, 0]], 3);
        assert_eq!(r.rounds.len(), 1);
        let tally = &r.rounds[0].tally;
        assert_eq!(tally.get(crate::ballot::CandidateId(0)), 2);
        assert_eq!(tally.get(crate::ballot::CandidateId(1)), 1);
        assert_eq!(tally.get(crate::ballot::CandidateId(2)), 0);
    }
}
