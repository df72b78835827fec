//! Condorcet: the candidate that wins every head-to-head match-up. When no
//! such candidate exists (a cycle), fall back to the Copeland score — the
//! number of strict pairwise victories.

use serde::{Deserialize, Serialize};

use super::{ElectionResult, RoundLog, Scheme, Tally};
use crate::ballot::{CandidateId, Election};

/// Head-to-head win counts: `wins(i, j)` = number of ballots ranking `i`
/// above `j`. A ballot listing `i` but not `j` counts as `i` above `j`; a
/// ballot listing neither contributes to neither side.
///
/// Stored compactly: only candidates appearing on at least one ballot get a
/// dense row. For a never-listed `j`, `wins(i, j)` equals the number of
/// ballots listing `i`, and `wins(j, *)` is zero; the accessor reconstructs
/// both cases exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseMatrix {
    n_candidates: usize,
    /// Candidates appearing on at least one ballot, ascending.
    listed: Vec<CandidateId>,
    /// Number of ballots listing each candidate in `listed`.
    appearances: Vec<usize>,
    /// Dense win counts among `listed`, indexed by position in `listed`.
    wins: Vec<Vec<usize>>,
}

impl PairwiseMatrix {
    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn listed(&self) -> &[CandidateId] {
        &self.listed
    }

    /// Number of ballots on which `i` appears and outranks `j`.
    pub fn wins(&self, i: CandidateId, j: CandidateId) -> usize {
        debug_assert!(i.0 < self.n_candidates && j.0 < self.n_candidates);
        if i == j {
            return 0;
        }
        match (
            self.listed.binary_search(&i),
            self.listed.binary_search(&j),
        ) {
            (Err(_), _) => 0,
            (Ok(a), Err(_)) => self.appearances[a],
            (Ok(a), Ok(b)) => self.wins[a][b],
        }
    }
}

/// Tallies every one-on-one match-up across the ballots.
pub fn pairwise_matrix(election: &Election) -> PairwiseMatrix {
    let mut listed: Vec<CandidateId> = election
        .ballots()
        .iter()
        .flat_map(|b| b.preferences().iter().copied())
        .collect();
    listed.sort_unstable();
    listed.dedup();

    let l = listed.len();
    let mut appearances = vec![0usize; l];
    let mut wins = vec![vec![0usize; l]; l];
    let mut rank_of = vec![usize::MAX; l];

    for ballot in election.ballots() {
        let mut on_ballot = Vec::with_capacity(ballot.preferences().len());
        for (rank, &c) in ballot.preferences().iter().enumerate() {
            let idx = listed.binary_search(&c).expect("candidate was collected");
            rank_of[idx] = rank;
            appearances[idx] += 1;
            on_ballot.push(idx);
        }
        for &a in &on_ballot {
            let ra = rank_of[a];
            for b in 0..l {
                if b == a {
                    continue;
                }
                // Unranked on this ballot, or ranked below a.
                if rank_of[b] == usize::MAX || ra < rank_of[b] {
                    wins[a][b] += 1;
                }
            }
        }
        for &a in &on_ballot {
            rank_of[a] = usize::MAX;
        }
    }

    PairwiseMatrix {
        n_candidates: election.n_candidates(),
        listed,
        appearances,
        wins,
    }
}

pub fn condorcet(election: &Election) -> ElectionResult {
    let matrix = pairwise_matrix(election);
    let n = election.n_candidates();
    let l = matrix.listed.len();
    // Never-listed candidates lose every match-up against a listed one and
    // score no strict victories themselves, so both the Condorcet check and
    // the Copeland argmax only need the listed block.
    let unlisted = n - l;

    let mut condorcet_winner = None;
    let mut victories = vec![0usize; l];
    for a in 0..l {
        let mut beats_all_listed = true;
        for b in 0..l {
            if a == b {
                continue;
            }
            if matrix.wins[a][b] > matrix.wins[b][a] {
                victories[a] += 1;
            } else {
                beats_all_listed = false;
            }
        }
        victories[a] += unlisted;
        if beats_all_listed && condorcet_winner.is_none() {
            condorcet_winner = Some(a);
        }
    }

    let (winner, winner_victories, tie_broken, copeland_fallback) = match condorcet_winner {
        Some(a) => (matrix.listed[a], victories[a], false, false),
        None => {
            let (idx, tie) = copeland_argmax(&victories);
            (matrix.listed[idx], victories[idx], tie, true)
        }
    };

    let confidence = if n > 1 {
        winner_victories as f64 / (n - 1) as f64
    } else {
        1.0
    };

    ElectionResult {
        winner,
        scheme: Scheme::Condorcet,
        confidence,
        rounds: vec![RoundLog {
            round: 1,
            tally: Tally::first_choices(election.ballots()),
            eliminated: None,
            exhausted_ballots: 0,
        }],
        pairwise: Some(matrix),
        scores: None,
        tie_broken,
        copeland_fallback,
    }
}

/// Position of the highest victory count; `listed` is ascending, so the first
/// maximum is the lowest candidate index.
fn copeland_argmax(victories: &[usize]) -> (usize, bool) {
    let mut best = 0;
    let mut tie = false;
    for (i, &v) in victories.iter().enumerate().skip(1) {
        if v > victories[best] {
            best = i;
            tie = false;
        } else if v == victories[best] {
            tie = true;
        }
    }
    (best, tie)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::Election;

    fn election(ballots: Vec<Vec<usize>>, n: usize) -> Election {
        Election::from_ranked_ids(ballots, n).unwrap()
    }

    fn w(m: &PairwiseMatrix, i: usize, j: usize) -> usize {
        m.wins(CandidateId(i), CandidateId(j))
    }

    #[test]
    fn single_ballot_matchup() {
        let m = pairwise_matrix(&election(vec![vec![0, 1]], 2));
        assert_eq!(w(&m, 0, 1), 1);
        assert_eq!(w(&m, 1, 0), 0);
    }

    #[test]
    fn opposing_ballots_are_symmetric() {
        let m = pairwise_matrix(&election(vec![vec![0, 1], vec![1, 0]], 2));
        assert_eq!(w(&m, 0, 1), 1);
        assert_eq!(w(&m, 1, 0), 1);
    }

    #[test]
    fn ranked_beats_unranked_on_a_ballot() {
        let m = pairwise_matrix(&election(vec![vec![0], vec![1, 2]], 3));
        assert_eq!(w(&m, 0, 1), 1);
        assert_eq!(w(&m, 0, 2), 1);
        assert_eq!(w(&m, 1, 2), 1);
        assert_eq!(w(&m, 1, 0), 1);
        assert_eq!(w(&m, 2, 0), 1);
        assert_eq!(w(&m, 2, 1), 0);
    }

    #[test]
    fn never_listed_candidates_lose_everything() {
        let m = pairwise_matrix(&election(vec![vec![0], vec![0]], 4));
        assert_eq!(w(&m, 0, 3), 2);
        assert_eq!(w(&m, 3, 0), 0);
        assert_eq!(w(&m, 3, 2), 0);
        assert_eq!(w(&m, 2, 3), 0);
        assert_eq!(w(&m, 2, 2), 0);
    }

    #[test]
    fn strict_winner_beats_every_rival() {
        let r = condorcet(&election(
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]],
            3,
        ));
        assert_eq!(r.winner.0, 0);
        assert!(!r.copeland_fallback);
        assert!(!r.tie_broken);
        assert_eq!(r.confidence, 1.0);
    }

    #[test]
    fn perfect_cycle_falls_back_to_copeland_and_index() {
        let r = condorcet(&election(
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            3,
        ));
        assert_eq!(r.winner.0, 0);
        assert!(r.copeland_fallback);
        assert!(r.tie_broken);
        assert_eq!(r.confidence, 1.0 / 2.0);
    }

    #[test]
    fn single_ballot_elects_its_top_choice() {
        let r = condorcet(&election(vec![vec![1, 0]], 2));
        assert_eq!(r.winner.0, 1);
        assert_eq!(r.confidence, 1.0);
    }

    #[test]
    fn result_carries_the_pairwise_matrix() {
        let r = condorcet(&election(vec![vec![0, 1]], 2));
        let m = r.pairwise.expect("condorcet result carries the matrix");
        assert_eq!(m.wins(CandidateId(0), CandidateId(1)), 1);
    }
}
