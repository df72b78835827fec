//! Seeded synthetic score matrices for tests, benches and demos.
//!
//! Every cell draws uniformly from [0, 1); the true match of query `q`
//! (reference `q mod n_references`) gets an extra `1 - noise_level` on top.
//! At noise 0 the boost dominates every other score, so each voter's top
//! choice is the true match; at noise 1 the scores carry no signal at all.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ballot::{CandidateId, ScoreMatrix, VoterId};
use crate::error::{Error, Result};
use crate::evaluation::GroundTruth;

/// Reference index treated as the correct match for a query.
pub fn true_match(query: usize, n_references: usize) -> usize {
    query % n_references
}

/// Generates `n_voters` score matrices plus the matching ground truth.
/// The same seed reproduces the same bytes on every platform.
pub fn generate_synthetic(
    n_voters: usize,
    n_queries: usize,
    n_references: usize,
    noise_level: f64,
    seed: u64,
) -> Result<(Vec<ScoreMatrix>, GroundTruth)> {
    if n_voters < 2 {
        return Err(Error::SynthConfig {
            detail: format!("need at least 2 voters, got {n_voters}"),
        });
    }
    if n_queries < 1 {
        return Err(Error::SynthConfig {
            detail: "need at least 1 query".into(),
        });
    }
    if n_references < 2 {
        return Err(Error::SynthConfig {
            detail: format!("need at least 2 references, got {n_references}"),
        });
    }
    if !(0.0..=1.0).contains(&noise_level) {
        return Err(Error::SynthConfig {
            detail: format!("noise level {noise_level} outside [0, 1]"),
        });
    }

    let boost = 1.0 - noise_level;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrices = Vec::with_capacity(n_voters);
    for voter in 0..n_voters {
        let mut rows = Vec::with_capacity(n_queries);
        for query in 0..n_queries {
            let mut row: Vec<f64> = (0..n_references).map(|_| rng.gen::<f64>()).collect();
            row[true_match(query, n_references)] += boost;
            rows.push(row);
        }
        matrices.push(ScoreMatrix::new(
            VoterId::new(format!("synth{voter}"), voter),
            rows,
        )?);
    }

    let accepted = (0..n_queries)
        .map(|q| std::iter::once(CandidateId(true_match(q, n_references))).collect())
        .collect();
    let truth = GroundTruth::new(accepted, n_references)?;
    Ok((matrices, truth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_scores_put_the_true_match_on_top() {
        let (matrices, truth) = generate_synthetic(3, 20, 8, 0.0, 11).unwrap();
        assert_eq!(truth.n_queries(), 20);
        for m in &matrices {
            for q in 0..20 {
                let row = m.row(q);
                let top = (0..8)
                    .max_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap())
                    .unwrap();
                assert_eq!(top, true_match(q, 8));
            }
        }
    }

    #[test]
    fn same_seed_reproduces_identical_matrices() {
        let (a, _) = generate_synthetic(2, 5, 4, 0.5, 99).unwrap();
        let (b, _) = generate_synthetic(2, 5, 4, 0.5, 99).unwrap();
        assert_eq!(a, b);
        let (c, _) = generate_synthetic(2, 5, 4, 0.5, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn truth_wraps_when_queries_exceed_references() {
        let (_, truth) = generate_synthetic(2, 10, 4, 1.0, 1).unwrap();
        assert!(truth.accepted(6).unwrap().contains(&CandidateId(2)));
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(generate_synthetic(1, 5, 4, 0.0, 0).is_err());
        assert!(generate_synthetic(2, 0, 4, 0.0, 0).is_err());
        assert!(generate_synthetic(2, 5, 1, 0.0, 0).is_err());
        assert!(generate_synthetic(2, 5, 4, 1.5, 0).is_err());
        assert!(generate_synthetic(2, 5, 4, -0.1, 0).is_err());
    }
}
