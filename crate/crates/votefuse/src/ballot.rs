//! Ballots, candidate/voter identities, and the conversion of raw
//! similarity scores into validated ranked ballots.
//!
//! Everything here is immutable after construction; the functions are pure
//! and safe to call from concurrent workers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of preferences kept per ballot when converting a score row.
pub const DEFAULT_BALLOT_DEPTH: usize = 10;

/// Position of a reference image in the reference set.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct CandidateId(pub usize);

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identity of one voter (one scoring technique) in a fusion run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VoterId {
    pub name: String,
    pub index: usize,
}

impl VoterId {
    pub fn new(name: impl Into<String>, index: usize) -> Self {
        Self {
            name: name.into(),
            index,
        }
    }
}

impl fmt::Display for VoterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// One voter's strict preference order over candidates, most-preferred first.
///
/// Ballots may be truncated: listing only a prefix of the candidate set is
/// legal everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedBallot {
    preferences: Vec<CandidateId>,
    voter: VoterId,
}

impl RankedBallot {
    /// Builds a ballot, rejecting duplicates and empty preference lists.
    pub fn new(preferences: Vec<CandidateId>, voter: VoterId) -> Result<Self> {
        if preferences.is_empty() {
            return Err(Error::EmptyBallot {
                voter: voter.name.clone(),
            });
        }
        let mut seen = vec![];
        for (position, &c) in preferences.iter().enumerate() {
            if seen.contains(&c) {
                return Err(Error::DuplicateCandidate {
                    voter: voter.name.clone(),
                    position,
                    candidate: c.0,
                });
            }
            seen.push(c);
        }
        Ok(Self { preferences, voter })
    }

    pub fn preferences(&self) -> &[CandidateId] {
        &self.preferences
    }

    pub fn voter(&self) -> &VoterId {
        &self.voter
    }

    /// Rank of `candidate` on this ballot (0 = most preferred), if listed.
    pub fn rank_of(&self, candidate: CandidateId) -> Option<usize> {
        self.preferences.iter().position(|&c| c == candidate)
    }
}

/// Converts one row of similarity scores into a ranked ballot.
///
/// Keeps the `depth` largest scores in descending order; ties are broken by
/// ascending candidate index, compared with exact floating equality.
pub fn ballot_from_scores(row: &[f64], depth: usize, voter: VoterId) -> Result<RankedBallot> {
    if depth == 0 {
        return Err(Error::ZeroBallotDepth);
    }
    if row.len() < 2 {
        return Err(Error::ShortScoreRow {
            voter: voter.name.clone(),
            len: row.len(),
        });
    }
    if let Some(index) = row.iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFiniteScore {
            voter: voter.name.clone(),
            index,
        });
    }

    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| {
        row[b]
            .partial_cmp(&row[a])
            .expect("scores validated finite")
            .then_with(|| a.cmp(&b))
    });
    order.truncate(depth.min(row.len()));

    let preferences = order.into_iter().map(CandidateId).collect();
    RankedBallot::new(preferences, voter)
}

/// One technique's similarity scores, `n_queries` x `n_references`.
///
/// Higher means more similar; only the relative order within a row matters
/// downstream. All entries are validated finite on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    technique: VoterId,
    n_queries: usize,
    n_references: usize,
    values: Vec<f64>,
}

impl ScoreMatrix {
    pub fn new(technique: VoterId, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_queries = rows.len();
        if n_queries < 1 {
            return Err(Error::TooFewQueries { n_queries });
        }
        let n_references = rows[0].len();
        if n_references < 2 {
            return Err(Error::TooFewReferences { n_references });
        }
        let mut values = Vec::with_capacity(n_queries * n_references);
        for (q, row) in rows.iter().enumerate() {
            if row.len() != n_references {
                return Err(Error::InconsistentRowLength {
                    voter: technique.name.clone(),
                    expected: n_references,
                    found: row.len(),
                });
            }
            if let Some(col) = row.iter().position(|s| !s.is_finite()) {
                return Err(Error::NonFiniteScore {
                    voter: format!("{} (query {})", technique.name, q),
                    index: col,
                });
            }
            values.extend_from_slice(row);
        }
        Ok(Self {
            technique,
            n_queries,
            n_references,
            values,
        })
    }

    pub fn technique(&self) -> &VoterId {
        &self.technique
    }

    pub fn n_queries(&self) -> usize {
        self.n_queries
    }

    pub fn n_references(&self) -> usize {
        self.n_references
    }

    /// The score row for one query.
    pub fn row(&self, query: usize) -> &[f64] {
        let start = query * self.n_references;
        &self.values[start..start + self.n_references]
    }

    /// Returns a copy with every score multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let rows = (0..self.n_queries)
            .map(|q| self.row(q).iter().map(|s| s * factor).collect())
            .collect();
        Self::new(self.technique.clone(), rows)
    }
}

/// A validated set of ballots over a common candidate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    ballots: Vec<RankedBallot>,
    n_candidates: usize,
}

impl Election {
    pub fn new(ballots: Vec<RankedBallot>, n_candidates: usize) -> Result<Self> {
        validate_election(ballots, n_candidates)
    }

    /// Test/CLI convenience: ballots as raw id lists, voters named `v0..`.
    pub fn from_ranked_ids(ballots: Vec<Vec<usize>>, n_candidates: usize) -> Result<Self> {
        let ballots = ballots
            .into_iter()
            .enumerate()
            .map(|(i, ids)| {
                RankedBallot::new(
                    ids.into_iter().map(CandidateId).collect(),
                    VoterId::new(format!("v{i}"), i),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        validate_election(ballots, n_candidates)
    }

    pub fn ballots(&self) -> &[RankedBallot] {
        &self.ballots
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn n_ballots(&self) -> usize {
        self.ballots.len()
    }
}

/// Checks every ballot invariant and id range, reporting the voter name and
/// offending position on failure.
pub fn validate_election(ballots: Vec<RankedBallot>, n_candidates: usize) -> Result<Election> {
    if ballots.is_empty() {
        return Err(Error::NoBallots);
    }
    for ballot in &ballots {
        for (position, &c) in ballot.preferences().iter().enumerate() {
            if c.0 >= n_candidates {
                return Err(Error::CandidateOutOfRange {
                    voter: ballot.voter().name.clone(),
                    position,
                    candidate: c.0,
                    n_candidates,
                });
            }
        }
    }
    Ok(Election {
        ballots,
        n_candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn voter() -> VoterId {
        VoterId::new("t0", 0)
    }

    fn prefs(ballot: &RankedBallot) -> Vec<usize> {
        ballot.preferences().iter().map(|c| c.0).collect()
    }

    #[test]
    fn top_k_descending_by_score() {
        let b = ballot_from_scores(&[0.1, 0.9, 0.5], 3, voter()).unwrap();
        assert_eq!(prefs(&b), [1, 2, 0]);
    }

    #[test]
    fn score_tie_breaks_to_lowest_index() {
        let b = ballot_from_scores(&[0.7, 0.7], 2, voter()).unwrap();
        assert_eq!(prefs(&b), [0, 1]);
    }

    #[test]
    fn truncates_to_depth() {
        let b = ballot_from_scores(&[0.2, 0.4, 0.6, 0.8], 2, voter()).unwrap();
        assert_eq!(prefs(&b), [3, 2]);
    }

    #[test]
    fn non_finite_score_names_offending_index() {
        let err = ballot_from_scores(&[0.2, f64::NAN, 0.6], 3, voter()).unwrap_err();
        match err {
            Error::NonFiniteScore { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn depth_longer_than_row_keeps_whole_row() {
        let b = ballot_from_scores(&[0.3, 0.1], 10, voter()).unwrap();
        assert_eq!(prefs(&b), [0, 1]);
    }

    #[test]
    fn raising_a_score_never_lowers_its_rank() {
        let row = [0.5, 0.2, 0.8, 0.2];
        let before = ballot_from_scores(&row, 4, voter()).unwrap();
        let mut bumped = row;
        bumped[1] += 0.4;
        let after = ballot_from_scores(&bumped, 4, voter()).unwrap();
        let rank_before = before.rank_of(CandidateId(1)).unwrap();
        let rank_after = after.rank_of(CandidateId(1)).unwrap();
        assert!(rank_after <= rank_before);
    }

    #[test]
    fn valid_election_accepted() {
        let e = Election::from_ranked_ids(vec![vec![0, 1]], 2).unwrap();
        assert_eq!(e.n_ballots(), 1);
        assert_eq!(e.n_candidates(), 2);
    }

    #[test]
    fn duplicate_candidate_rejected() {
        let err = Election::from_ranked_ids(vec![vec![0, 0]], 2).unwrap_err();
        assert!(matches!(err, Error::DuplicateCandidate { position: 1, .. }));
    }

    #[test]
    fn out_of_range_candidate_rejected() {
        let err = Election::from_ranked_ids(vec![vec![2]], 2).unwrap_err();
        assert!(matches!(
            err,
            Error::CandidateOutOfRange {
                candidate: 2,
                n_candidates: 2,
                ..
            }
        ));
    }

    #[test]
    fn zero_ballots_rejected() {
        let err = Election::from_ranked_ids(vec![], 2).unwrap_err();
        assert!(matches!(err, Error::NoBallots));
    }

    #[test]
    fn score_matrix_rejects_nan_and_ragged_rows() {
        let nan = ScoreMatrix::new(voter(), vec![vec![0.1, f64::NAN]]);
        assert!(matches!(nan, Err(Error::NonFiniteScore { index: 1, .. })));
        let ragged = ScoreMatrix::new(voter(), vec![vec![0.1, 0.2], vec![0.3]]);
        assert!(matches!(
            ragged,
            Err(Error::InconsistentRowLength {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }
}
