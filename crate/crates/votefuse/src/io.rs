//! File formats and result emission.
//!
//! Score matrices are plain CSV, no header, one query per row. Ground truth
//! is `query: id[,id...]` per line with `#` comments. Results land as
//! `radar.csv`, `pr_<scheme>.csv`, `zscores.csv` and `summary.json`
//! (schema version "1"); all numbers use shortest round-trip formatting, so
//! emitting and re-loading reproduces the exact values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ballot::{CandidateId, ScoreMatrix, VoterId};
use crate::error::{Error, Result};
use crate::evaluation::{
    performance_bounds, pr_curve, score_matches, GroundTruth, MatchRecord, PRCurve,
};
use crate::fusion::{run_dataset, FusionConfig, FusionOutcome};
use crate::schemes::Scheme;
use crate::significance::{pairwise_z_table, PairwiseZTable};

/// Version string embedded in every summary.json.
pub const SCHEMA_VERSION: &str = "1";

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a score-matrix CSV into a validated [`ScoreMatrix`].
pub fn load_score_matrix(path: &Path, technique: VoterId) -> Result<ScoreMatrix> {
    let text = read(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected_cols = None;
    for (line_no, line) in text.lines().enumerate() {
        let row_no = line_no + 1;
        let cells: Vec<&str> = line.split(',').collect();
        if let Some(expected) = expected_cols {
            if cells.len() != expected {
                return Err(Error::RaggedRow {
                    path: path.to_path_buf(),
                    row: row_no,
                    expected,
                    found: cells.len(),
                });
            }
        } else {
            expected_cols = Some(cells.len());
        }
        let mut row = Vec::with_capacity(cells.len());
        for (col_no, cell) in cells.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| Error::CsvCell {
                path: path.to_path_buf(),
                row: row_no,
                col: col_no + 1,
                detail: format!("not a number: {:?}", cell.trim()),
            })?;
            if !value.is_finite() {
                return Err(Error::CsvCell {
                    path: path.to_path_buf(),
                    row: row_no,
                    col: col_no + 1,
                    detail: "score must be finite".into(),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile {
            path: path.to_path_buf(),
        });
    }
    ScoreMatrix::new(technique, rows)
}

/// Writes a score matrix in the same CSV dialect `load_score_matrix` reads.
pub fn write_score_matrix(path: &Path, matrix: &ScoreMatrix) -> Result<()> {
    let mut out = String::new();
    for q in 0..matrix.n_queries() {
        let row = matrix.row(q);
        for (i, value) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{value}");
        }
        out.push('\n');
    }
    write(path, &out)
}

/// Parses ground truth: one `query: id[,id...]` line per query, requiring a
/// complete, duplicate-free set of entries for `0..n_queries`.
pub fn load_ground_truth(path: &Path, n_queries: usize, n_references: usize) -> Result<GroundTruth> {
    let text = read(path)?;
    let mut by_query: BTreeMap<usize, Vec<CandidateId>> = BTreeMap::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (query_text, ids_text) = line.split_once(':').ok_or_else(|| Error::MalformedLine {
            path: path.to_path_buf(),
            line: line_no + 1,
            detail: "expected `query: id[,id...]`".into(),
        })?;
        let query: usize = query_text.trim().parse().map_err(|_| Error::MalformedLine {
            path: path.to_path_buf(),
            line: line_no + 1,
            detail: format!("bad query index {:?}", query_text.trim()),
        })?;
        if by_query.contains_key(&query) {
            return Err(Error::DuplicateQuery {
                path: path.to_path_buf(),
                query,
            });
        }
        let mut ids = Vec::new();
        for id_text in ids_text.split(',') {
            let id: usize = id_text.trim().parse().map_err(|_| Error::MalformedLine {
                path: path.to_path_buf(),
                line: line_no + 1,
                detail: format!("bad candidate id {:?}", id_text.trim()),
            })?;
            ids.push(CandidateId(id));
        }
        by_query.insert(query, ids);
    }

    let mut accepted = Vec::with_capacity(n_queries);
    for query in 0..n_queries {
        let ids = by_query.remove(&query).ok_or(Error::MissingTruth { query })?;
        accepted.push(ids.into_iter().collect());
    }
    GroundTruth::new(accepted, n_references)
}

/// Writes ground truth in the format `load_ground_truth` reads.
pub fn write_ground_truth(path: &Path, truth: &GroundTruth) -> Result<()> {
    let mut out = String::new();
    for query in 0..truth.n_queries() {
        let ids: Vec<String> = truth
            .accepted(query)
            .expect("query in range")
            .iter()
            .map(|id| id.0.to_string())
            .collect();
        let _ = writeln!(out, "{query}: {}", ids.join(","));
    }
    write(path, &out)
}

/// Echo of the configuration a bundle was produced with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub schema_version: String,
    pub generator: String,
    pub techniques: Vec<String>,
    pub n_queries: usize,
    pub n_references: usize,
    pub ballot_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub borda_weights: Option<Vec<u64>>,
    pub schemes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_level: Option<f64>,
}

/// Everything one scheme produced over a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub scheme: Scheme,
    pub correct_matches: usize,
    pub pr: PRCurve,
    pub outcomes: Vec<FusionOutcome>,
    pub matches: Vec<MatchRecord>,
}

/// The full output of a run: per-scheme reports plus the significance table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub metadata: RunMetadata,
    pub reports: Vec<SchemeReport>,
    pub z_table: PairwiseZTable,
}

/// Runs every requested scheme over the dataset and assembles the bundle.
pub fn assemble_bundle(
    matrices: &[ScoreMatrix],
    truth: &GroundTruth,
    schemes: &[Scheme],
    ballot_depth: usize,
    borda_weights: Option<Vec<u64>>,
    seed: Option<u64>,
    noise_level: Option<f64>,
) -> Result<ResultBundle> {
    assert!(!schemes.is_empty(), "at least one scheme required");
    let mut reports = Vec::with_capacity(schemes.len());
    for &scheme in schemes {
        let config = FusionConfig::new(scheme)
            .with_ballot_depth(ballot_depth)
            .with_borda_weights(borda_weights.clone());
        let outcomes = run_dataset(matrices, &config)?;
        let matches = score_matches(&outcomes, truth)?;
        reports.push(SchemeReport {
            scheme,
            correct_matches: performance_bounds(&matches),
            pr: pr_curve(&matches),
            outcomes,
            matches,
        });
    }

    let z_table = if reports.len() >= 2 {
        let entries: Vec<(String, &[MatchRecord])> = reports
            .iter()
            .map(|r| (r.scheme.to_string(), r.matches.as_slice()))
            .collect();
        pairwise_z_table(&entries)?
    } else {
        // A single-scheme run has no pairs to compare.
        PairwiseZTable {
            schemes: vec![reports[0].scheme.to_string()],
            z: vec![vec![0.0]],
            bands: vec![vec![crate::significance::z_confidence_band(0.0)]],
            degenerate: vec![vec![true]],
        }
    };

    Ok(ResultBundle {
        metadata: RunMetadata {
            schema_version: SCHEMA_VERSION.to_string(),
            generator: format!("votefuse {}", env!("CARGO_PKG_VERSION")),
            techniques: matrices
                .iter()
                .map(|m| m.technique().name.clone())
                .collect(),
            n_queries: matrices[0].n_queries(),
            n_references: matrices[0].n_references(),
            ballot_depth,
            borda_weights,
            schemes: schemes.iter().map(|s| s.to_string()).collect(),
            seed,
            noise_level,
        },
        reports,
        z_table,
    })
}

/// Writes the plot-ready data files plus `summary.json` into `dir`, creating
/// it if needed. Returns the written paths.
pub fn emit_results(bundle: &ResultBundle, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();

    let mut radar = String::from("scheme,correct_count,total_queries\n");
    for report in &bundle.reports {
        let _ = writeln!(
            radar,
            "{},{},{}",
            report.scheme, report.correct_matches, bundle.metadata.n_queries
        );
    }
    let radar_path = dir.join("radar.csv");
    write(&radar_path, &radar)?;
    written.push(radar_path);

    for report in &bundle.reports {
        let mut pr = String::from("threshold,precision,recall\n");
        for point in &report.pr.points {
            let _ = writeln!(pr, "{},{},{}", point.threshold, point.precision, point.recall);
        }
        let pr_path = dir.join(format!("pr_{}.csv", report.scheme));
        write(&pr_path, &pr)?;
        written.push(pr_path);
    }

    let mut zscores = String::from("scheme_a,scheme_b,z,band\n");
    let table = &bundle.z_table;
    for i in 0..table.schemes.len() {
        for j in (i + 1)..table.schemes.len() {
            let _ = writeln!(
                zscores,
                "{},{},{},{}",
                table.schemes[i], table.schemes[j], table.z[i][j], table.bands[i][j]
            );
        }
    }
    let z_path = dir.join("zscores.csv");
    write(&z_path, &zscores)?;
    written.push(z_path);

    let summary = serde_json::to_string(bundle).expect("bundle serializes");
    let summary_path = dir.join("summary.json");
    write(&summary_path, &summary)?;
    written.push(summary_path);

    Ok(written)
}

/// Reads a `summary.json` back into a bundle.
pub fn load_summary(path: &Path) -> Result<ResultBundle> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::SummaryParse {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

/// Writes per-query match records as CSV for the `compare` command.
pub fn write_match_records(path: &Path, records: &[MatchRecord]) -> Result<()> {
    let mut out = String::from("query_index,winner,correct,confidence\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{}", r.query_index, r.winner, r.correct, r.confidence);
    }
    write(path, &out)
}

/// Reads a match-record CSV written by [`write_match_records`].
pub fn load_match_records(path: &Path) -> Result<Vec<MatchRecord>> {
    let text = read(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "query_index,winner,correct,confidence" => {}
        Some((_, header)) => {
            return Err(Error::MalformedLine {
                path: path.to_path_buf(),
                line: 1,
                detail: format!("unexpected header {header:?}"),
            })
        }
        None => {
            return Err(Error::EmptyFile {
                path: path.to_path_buf(),
            })
        }
    }
    let mut records = Vec::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let malformed = |detail: String| Error::MalformedLine {
            path: path.to_path_buf(),
            line: line_no + 1,
            detail,
        };
        if fields.len() != 4 {
            return Err(malformed(format!("expected 4 fields, got {}", fields.len())));
        }
        let query_index = fields[0]
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad query index {:?}", fields[0])))?;
        let winner = fields[1]
            .trim()
            .parse()
            .map(CandidateId)
            .map_err(|_| malformed(format!("bad winner {:?}", fields[1])))?;
        let correct = match fields[2].trim() {
            "true" => true,
            "false" => false,
            other => return Err(malformed(format!("bad correct flag {other:?}"))),
        };
        let confidence = fields[3]
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad confidence {:?}", fields[3])))?;
        records.push(MatchRecord {
            query_index,
            winner,
            correct,
            confidence,
        });
    }
    Ok(records)
}
