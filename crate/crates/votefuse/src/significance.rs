//! Pairwise McNemar-style comparison of schemes over the same queries,
//! producing the signed Z statistic and its confidence band.
//!
//! The statistic is |n_sf - n_fs| / sqrt(n_sf + n_fs) with no continuity
//! correction, signed positive when the first scheme outperforms the second.
//! Zero discordance yields a flagged zero instead of a division by zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::MatchRecord;

/// Two-tailed normal cutoff for the 95% confidence level.
pub const Z_95: f64 = 1.96;
/// Two-tailed normal cutoff for the 90% confidence level.
pub const Z_90: f64 = 1.645;

/// Discordant-pair counts for two schemes over aligned queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyCounts {
    /// Queries where the first scheme succeeded and the second failed.
    pub n_sf: usize,
    /// Queries where the first scheme failed and the second succeeded.
    pub n_fs: usize,
}

impl ContingencyCounts {
    pub fn is_degenerate(&self) -> bool {
        self.n_sf + self.n_fs == 0
    }
}

/// Signed statistic plus the zero-discordance flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZStatistic {
    pub value: f64,
    pub degenerate: bool,
}

/// Confidence band for a Z value under the two-tailed normal table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    #[serde(rename = "≥95%")]
    AtLeast95,
    #[serde(rename = "≥90%")]
    AtLeast90,
    #[serde(rename = "<90%")]
    Below90,
}

impl Band {
    pub fn label(self) -> &'static str {
        match self {
            Band::AtLeast95 => "≥95%",
            Band::AtLeast90 => "≥90%",
            Band::Below90 => "<90%",
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Counts discordant pairs between two aligned record sequences; concordant
/// queries are ignored.
pub fn mcnemar_counts(a: &[MatchRecord], b: &[MatchRecord]) -> Result<ContingencyCounts> {
    if a.len() != b.len() {
        return Err(Error::RecordMismatch {
            detail: format!("{} records vs {}", a.len(), b.len()),
        });
    }
    let mut counts = ContingencyCounts { n_sf: 0, n_fs: 0 };
    for (ra, rb) in a.iter().zip(b) {
        if ra.query_index != rb.query_index {
            return Err(Error::RecordMismatch {
                detail: format!(
                    "query {} paired with query {}",
                    ra.query_index, rb.query_index
                ),
            });
        }
        match (ra.correct, rb.correct) {
            (true, false) => counts.n_sf += 1,
            (false, true) => counts.n_fs += 1,
            _ => {}
        }
    }
    Ok(counts)
}

/// Signed discordance statistic; positive means the first scheme outperforms
/// the second.
pub fn mcnemar_statistic(counts: &ContingencyCounts) -> ZStatistic {
    if counts.is_degenerate() {
        return ZStatistic {
            value: 0.0,
            degenerate: true,
        };
    }
    let diff = counts.n_sf as f64 - counts.n_fs as f64;
    ZStatistic {
        value: diff / ((counts.n_sf + counts.n_fs) as f64).sqrt(),
        degenerate: false,
    }
}

/// Maps |z| onto the standard two-tailed confidence bands.
pub fn z_confidence_band(z: f64) -> Band {
    let magnitude = z.abs();
    if magnitude >= Z_95 {
        Band::AtLeast95
    } else if magnitude >= Z_90 {
        Band::AtLeast90
    } else {
        Band::Below90
    }
}

/// Skew-symmetric Z table over every ordered pair of schemes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseZTable {
    pub schemes: Vec<String>,
    pub z: Vec<Vec<f64>>,
    pub bands: Vec<Vec<Band>>,
    pub degenerate: Vec<Vec<bool>>,
}

impl PairwiseZTable {
    pub fn n_schemes(&self) -> usize {
        self.schemes.len()
    }
}

/// Builds the table from per-scheme match records; the lower triangle is the
/// negation of the upper one by construction, so skew-symmetry is exact.
pub fn pairwise_z_table(records_by_scheme: &[(String, &[MatchRecord])]) -> Result<PairwiseZTable> {
    let k = records_by_scheme.len();
    if k < 2 {
        return Err(Error::TooFewSchemes { found: k });
    }
    for (i, (label, _)) in records_by_scheme.iter().enumerate() {
        if records_by_scheme[..i].iter().any(|(other, _)| other == label) {
            return Err(Error::DuplicateSchemeLabel {
                label: label.clone(),
            });
        }
    }

    let mut z = vec![vec![0.0; k]; k];
    let mut degenerate = vec![vec![false; k]; k];
    for i in 0..k {
        degenerate[i][i] = true;
        for j in (i + 1)..k {
            let counts = mcnemar_counts(records_by_scheme[i].1, records_by_scheme[j].1)?;
            let stat = mcnemar_statistic(&counts);
            z[i][j] = stat.value;
            z[j][i] = -stat.value;
            degenerate[i][j] = stat.degenerate;
            degenerate[j][i] = stat.degenerate;
        }
    }
    let bands = z
        .iter()
        .map(|row| row.iter().map(|&v| z_confidence_band(v)).collect())
        .collect();

    Ok(PairwiseZTable {
        schemes: records_by_scheme
            .iter()
            .map(|(label, _)| label.clone())
            .collect(),
        z,
        bands,
        degenerate,
    })
}
