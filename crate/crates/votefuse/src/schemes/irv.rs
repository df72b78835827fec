//! Instant-runoff voting: repeatedly eliminate the candidate with the fewest
//! first-choice votes, redistributing its ballots, until someone holds a
//! majority of the non-exhausted ballots or only one candidate remains.

use std::collections::BTreeMap;

use super::{ElectionResult, RoundLog, Scheme, Tally};
use crate::ballot::{CandidateId, Election};

pub fn irv(election: &Election) -> ElectionResult {
    let n = election.n_candidates();
    let total = election.n_ballots();

    let mut active = vec![true; n];
    let mut active_count = n;
    // Ballots bucketed by their current top active preference, plus a cursor
    // per ballot so redistribution resumes where the last scan stopped.
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cursor = vec![0usize; total];
    for (i, ballot) in election.ballots().iter().enumerate() {
        held[ballot.preferences()[0].0].push(i);
    }

    let mut exhausted = 0usize;
    let mut rounds = Vec::new();
    let mut tie_broken = false;

    loop {
        let round = rounds.len() + 1;
        let non_exhausted = total - exhausted;
        let tally = Tally::from_counts(
            (0..n)
                .filter(|&c| active[c] && !held[c].is_empty())
                .map(|c| (CandidateId(c), held[c].len()))
                .collect::<BTreeMap<_, _>>(),
        );

        // Sole survivor wins regardless of exhaustion.
        if active_count == 1 {
            let winner = CandidateId((0..n).find(|&c| active[c]).expect("one active remains"));
            let count = held[winner.0].len();
            rounds.push(RoundLog {
                round,
                tally,
                eliminated: None,
                exhausted_ballots: exhausted,
            });
            return finish(winner, count, total, rounds, tie_broken);
        }

        // Majority of the non-exhausted ballots.
        if let Some((c, count)) = (0..n)
            .filter(|&c| active[c])
            .map(|c| (c, held[c].len()))
            .find(|&(_, count)| 2 * count > non_exhausted)
        {
            rounds.push(RoundLog {
                round,
                tally,
                eliminated: None,
                exhausted_ballots: exhausted,
            });
            return finish(CandidateId(c), count, total, rounds, tie_broken);
        }

        // Eliminate the fewest-first-choice candidate, lowest index first.
        let mut victim = usize::MAX;
        let mut tie_at_bottom = false;
        for c in (0..n).filter(|&c| active[c]) {
            if victim == usize::MAX || held[c].len() < held[victim].len() {
                victim = c;
                tie_at_bottom = false;
            } else if held[c].len() == held[victim].len() {
                tie_at_bottom = true;
            }
        }
        tie_broken |= tie_at_bottom;

        rounds.push(RoundLog {
            round,
            tally,
            eliminated: Some(CandidateId(victim)),
            exhausted_ballots: exhausted,
        });

        active[victim] = false;
        active_count -= 1;
        for ballot_index in std::mem::take(&mut held[victim]) {
            let prefs = election.ballots()[ballot_index].preferences();
            let next = prefs[cursor[ballot_index]..]
                .iter()
                .position(|c| active[c.0]);
            match next {
                Some(offset) => {
                    cursor[ballot_index] += offset;
                    held[prefs[cursor[ballot_index]].0].push(ballot_index);
                }
                None => exhausted += 1,
            }
        }
    }
}

fn finish(
    winner: CandidateId,
    final_count: usize,
    total: usize,
    rounds: Vec<RoundLog>,
    tie_broken: bool,
) -> ElectionResult {
    ElectionResult {
        winner,
        scheme: Scheme::Irv,
        // Normalized against the original ballot count, not the survivors.
        confidence: final_count as f64 / total as f64,
        rounds,
        pairwise: None,
        scores: None,
        tie_broken,
        copeland_fallback: false,
    }
}
