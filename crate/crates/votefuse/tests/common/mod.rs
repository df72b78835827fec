//! Shared test support: a seeded random-election generator and naive
//! reference implementations of every scheme.
//!
//! The oracles deliberately share no code with the library: plain dense
//! arrays, from-scratch re-tallies each round, and exhaustive pairwise
//! scans. They exist to catch bookkeeping bugs in the real implementations.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A raw election: ballots as candidate-id lists plus the candidate count.
#[derive(Debug, Clone)]
pub struct RawElection {
    pub ballots: Vec<Vec<usize>>,
    pub n_candidates: usize,
}

/// Random election with up to `max_candidates` candidates and
/// `max_ballots` truncated-permutation ballots.
pub fn random_election(rng: &mut ChaCha8Rng, max_candidates: usize, max_ballots: usize) -> RawElection {
    let n_candidates = rng.gen_range(1..=max_candidates);
    let n_ballots = rng.gen_range(1..=max_ballots);
    let ballots = (0..n_ballots)
        .map(|_| {
            let mut ids: Vec<usize> = (0..n_candidates).collect();
            ids.shuffle(rng);
            let len = rng.gen_range(1..=n_candidates);
            ids.truncate(len);
            ids
        })
        .collect();
    RawElection {
        ballots,
        n_candidates,
    }
}

/// Random election where `winner` holds a strict majority of first choices.
pub fn election_with_planted_majority(
    rng: &mut ChaCha8Rng,
    max_candidates: usize,
    max_ballots: usize,
) -> (RawElection, usize) {
    let n_candidates = rng.gen_range(2..=max_candidates);
    let n_ballots = rng.gen_range(2..=max_ballots);
    let winner = rng.gen_range(0..n_candidates);
    let majority = n_ballots / 2 + 1;
    let mut ballots = Vec::with_capacity(n_ballots);
    for i in 0..n_ballots {
        let mut ids: Vec<usize> = (0..n_candidates).collect();
        ids.shuffle(rng);
        let pos = ids.iter().position(|&c| c == winner).unwrap();
        if i < majority {
            ids.swap(0, pos);
        } else if pos == 0 {
            ids.swap(0, 1);
        }
        let len = rng.gen_range(1..=n_candidates);
        ids.truncate(len);
        ballots.push(ids);
    }
    ballots.shuffle(rng);
    (
        RawElection {
            ballots,
            n_candidates,
        },
        winner,
    )
}

/// First-choice counts as a dense array.
fn first_choice_counts(e: &RawElection) -> Vec<usize> {
    let mut counts = vec![0usize; e.n_candidates];
    for ballot in &e.ballots {
        counts[ballot[0]] += 1;
    }
    counts
}

/// Lowest-index argmax over a dense count array.
fn argmax(counts: &[usize]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

pub fn plurality_naive(e: &RawElection) -> usize {
    argmax(&first_choice_counts(e))
}

/// Full dense pairwise table: `wins[i][j]` = ballots ranking i above j, with
/// a listed candidate beating any candidate absent from that ballot.
pub fn pairwise_naive(e: &RawElection) -> Vec<Vec<usize>> {
    let n = e.n_candidates;
    let mut wins = vec![vec![0usize; n]; n];
    for ballot in &e.ballots {
        let mut position = vec![None; n];
        for (rank, &c) in ballot.iter().enumerate() {
            position[c] = Some(rank);
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                match (position[i], position[j]) {
                    (Some(_), None) => wins[i][j] += 1,
                    (Some(pi), Some(pj)) if pi < pj => wins[i][j] += 1,
                    _ => {}
                }
            }
        }
    }
    wins
}

/// Condorcet with Copeland fallback. Returns `(winner, had_strict_winner)`.
pub fn condorcet_naive(e: &RawElection) -> (usize, bool) {
    let n = e.n_candidates;
    let wins = pairwise_naive(e);
    for i in 0..n {
        if (0..n).all(|j| j == i || wins[i][j] > wins[j][i]) {
            return (i, true);
        }
    }
    let mut copeland = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && wins[i][j] > wins[j][i] {
                copeland[i] += 1;
            }
        }
    }
    (argmax(&copeland), false)
}

/// Positional sum with linear weights over the longest ballot.
pub fn borda_naive(e: &RawElection) -> usize {
    let max_len = e.ballots.iter().map(Vec::len).max().unwrap();
    let mut scores = vec![0usize; e.n_candidates];
    for ballot in &e.ballots {
        for (position, &c) in ballot.iter().enumerate() {
            scores[c] += max_len - position;
        }
    }
    argmax(&scores)
}

/// Two-round contingent vote recomputed literally.
pub fn contingent_naive(e: &RawElection) -> usize {
    let total = e.ballots.len();
    let counts = first_choice_counts(e);
    let leader = argmax(&counts);
    if 2 * counts[leader] > total {
        return leader;
    }
    let mut order: Vec<usize> = (0..e.n_candidates).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    let survivors = [order[0], order[1]];
    let mut transferred = [0usize; 2];
    for ballot in &e.ballots {
        if let Some(&c) = ballot.iter().find(|&&c| survivors.contains(&c)) {
            transferred[if c == survivors[0] { 0 } else { 1 }] += 1;
        }
    }
    if transferred[0] == transferred[1] {
        survivors[0].min(survivors[1])
    } else if transferred[0] > transferred[1] {
        survivors[0]
    } else {
        survivors[1]
    }
}

/// Instant-runoff recomputed from scratch every round: no ballot buckets,
/// no cursors, just a full re-scan.
pub fn irv_naive(e: &RawElection) -> usize {
    let n = e.n_candidates;
    let mut active = vec![true; n];
    loop {
        let remaining: Vec<usize> = (0..n).filter(|&c| active[c]).collect();
        if remaining.len() == 1 {
            return remaining[0];
        }
        let mut counts = vec![0usize; n];
        let mut non_exhausted = 0;
        for ballot in &e.ballots {
            if let Some(&c) = ballot.iter().find(|&&c| active[c]) {
                counts[c] += 1;
                non_exhausted += 1;
            }
        }
        if let Some(&winner) = remaining.iter().find(|&&c| 2 * counts[c] > non_exhausted) {
            return winner;
        }
        let mut victim = remaining[0];
        for &c in &remaining {
            if counts[c] < counts[victim] {
                victim = c;
            }
        }
        active[victim] = false;
    }
}
