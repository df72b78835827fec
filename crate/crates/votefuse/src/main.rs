use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use votefuse::error::{Error, Result};
use votefuse::io;
use votefuse::manifest::{parse_schemes, render_manifest, RunManifest};
use votefuse::schemes::{decide, ElectionResult, Scheme};
use votefuse::{Election, MatchRecord, ScoreMatrix, VoterId};

#[derive(Parser)]
#[command(name = "votefuse", version, about = "Ranked-choice vote fusion over similarity matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline described by a manifest and emit result files.
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// Scheme(s) to run, overriding the manifest list. Repeatable;
        /// accepts comma-separated values and `all`.
        #[arg(long)]
        scheme: Vec<String>,
        #[arg(long)]
        ballot_depth: Option<usize>,
        /// Output directory, overriding the manifest.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed recorded in the output metadata, overriding the manifest.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide a single election from a ballot file and print the audit trail.
    Elect {
        /// Ballot file: one comma-separated preference list per line,
        /// `#` comments ignored.
        ballots: PathBuf,
        #[arg(long, default_value = "plurality")]
        scheme: String,
        /// Size of the candidate space; defaults to the highest id + 1.
        #[arg(long)]
        candidates: Option<usize>,
        /// Custom Borda weights, comma-separated and strictly descending.
        #[arg(long)]
        borda_weights: Option<String>,
    },
    /// Build a pairwise Z-score table from two or more match-record CSVs.
    Compare {
        /// Match-record files (`query_index,winner,correct,confidence`);
        /// the file stem labels each column.
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        /// Also write zscores.csv into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate seeded synthetic fixtures: score matrices, ground truth and
    /// a ready-to-run manifest.
    Synth {
        #[arg(long, default_value_t = 8)]
        voters: usize,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 100)]
        references: usize,
        /// 0 = every voter's top choice is the true match; 1 = no signal.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Ballot depth recorded in the generated manifest.
        #[arg(long, default_value_t = votefuse::DEFAULT_BALLOT_DEPTH)]
        ballot_depth: usize,
        /// Schemes recorded in the generated manifest.
        #[arg(long, default_value = "all")]
        scheme: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            manifest,
            scheme,
            ballot_depth,
            out,
            seed,
        } => cmd_run(&manifest, &scheme, ballot_depth, out, seed),
        Command::Elect {
            ballots,
            scheme,
            candidates,
            borda_weights,
        } => cmd_elect(&ballots, &scheme, candidates, borda_weights.as_deref()),
        Command::Compare { files, out } => cmd_compare(&files, out.as_deref()),
        Command::Synth {
            voters,
            queries,
            references,
            noise,
            seed,
            out,
            ballot_depth,
            scheme,
        } => cmd_synth(voters, queries, references, noise, seed, &out, ballot_depth, &scheme),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn cmd_run(
    manifest_path: &Path,
    scheme_flags: &[String],
    ballot_depth: Option<usize>,
    out: Option<PathBuf>,
    seed: Option<u64>,
) -> Result<()> {
    let mut manifest = RunManifest::load(manifest_path)?;
    if !scheme_flags.is_empty() {
        let mut schemes = Vec::new();
        for flag in scheme_flags {
            for s in parse_schemes(flag)? {
                if !schemes.contains(&s) {
                    schemes.push(s);
                }
            }
        }
        manifest.schemes = schemes;
    }
    if let Some(depth) = ballot_depth {
        manifest.ballot_depth = depth;
    }
    if let Some(dir) = out {
        manifest.out_dir = dir;
    }
    if seed.is_some() {
        manifest.seed = seed;
    }

    let matrices: Vec<ScoreMatrix> = manifest
        .techniques
        .iter()
        .enumerate()
        .map(|(index, (name, path))| {
            io::load_score_matrix(path, VoterId::new(name.clone(), index))
        })
        .collect::<Result<_>>()?;
    let truth = io::load_ground_truth(
        &manifest.ground_truth,
        matrices[0].n_queries(),
        matrices[0].n_references(),
    )?;

    let bundle = io::assemble_bundle(
        &matrices,
        &truth,
        &manifest.schemes,
        manifest.ballot_depth,
        manifest.borda_weights.clone(),
        manifest.seed,
        manifest.noise_level,
    )?;

    println!(
        "{} techniques, {} queries x {} references",
        bundle.metadata.techniques.len(),
        bundle.metadata.n_queries,
        bundle.metadata.n_references
    );
    for report in &bundle.reports {
        println!(
            "{:<11} {:>6}/{} correct   pr-auc {:.4}",
            report.scheme.to_string(),
            report.correct_matches,
            bundle.metadata.n_queries,
            report.pr.auc
        );
    }

    let written = io::emit_results(&bundle, &manifest.out_dir)?;
    println!("wrote {} files to {}", written.len(), manifest.out_dir.display());
    Ok(())
}

fn cmd_elect(
    ballots_path: &Path,
    scheme: &str,
    candidates: Option<usize>,
    borda_weights: Option<&str>,
) -> Result<()> {
    let scheme: Scheme = scheme.parse()?;
    let text = std::fs::read_to_string(ballots_path).map_err(|source| Error::Io {
        path: ballots_path.to_path_buf(),
        source,
    })?;
    let mut ballots: Vec<Vec<usize>> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids = line
            .split(',')
            .map(|id| id.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::MalformedLine {
                path: ballots_path.to_path_buf(),
                line: line_no + 1,
                detail: format!("expected comma-separated candidate ids, got {line:?}"),
            })?;
        ballots.push(ids);
    }

    let n_candidates = match candidates {
        Some(n) => n,
        None => ballots
            .iter()
            .flat_map(|b| b.iter().copied())
            .max()
            .map(|max| max + 1)
            .unwrap_or(0),
    };
    let election = Election::from_ranked_ids(ballots, n_candidates)?;

    let weights = match borda_weights {
        Some(text) => Some(
            text.split(',')
                .map(|w| w.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidBordaWeights {
                    reason: format!("could not parse {text:?}"),
                })?,
        ),
        None => None,
    };

    let result = decide(&election, scheme, weights.as_deref())?;
    print_audit(&election, &result);
    Ok(())
}

fn print_audit(election: &Election, result: &ElectionResult) {
    println!("scheme:     {}", result.scheme);
    println!(
        "ballots:    {} over {} candidates",
        election.n_ballots(),
        election.n_candidates()
    );
    println!("winner:     {}", result.winner);
    println!("confidence: {:.4}", result.confidence);
    println!("tie_broken: {}", result.tie_broken);
    if result.copeland_fallback {
        println!("note:       no strict head-to-head winner; Copeland fallback used");
    }
    for round in &result.rounds {
        let counts: Vec<String> = round
            .tally
            .counts()
            .iter()
            .map(|(c, n)| format!("{c}:{n}"))
            .collect();
        let mut line = format!("round {}: {}", round.round, counts.join(" "));
        if let Some(eliminated) = round.eliminated {
            line.push_str(&format!("  eliminated {eliminated}"));
        }
        if round.exhausted_ballots > 0 {
            line.push_str(&format!("  exhausted {}", round.exhausted_ballots));
        }
        println!("{line}");
    }
    if let Some(scores) = &result.scores {
        let rendered: Vec<String> = scores
            .scores()
            .iter()
            .map(|(c, s)| format!("{c}:{s}"))
            .collect();
        println!("borda:      {}", rendered.join(" "));
    }
    if let Some(matrix) = &result.pairwise {
        println!("head-to-head wins (row beats column):");
        let listed = matrix.listed();
        let header: Vec<String> = listed.iter().map(|c| c.to_string()).collect();
        println!("      {}", header.join(" "));
        for &i in listed {
            let row: Vec<String> = listed
                .iter()
                .map(|&j| matrix.wins(i, j).to_string())
                .collect();
            println!("  {i}:  {}", row.join(" "));
        }
    }
}

fn cmd_compare(files: &[PathBuf], out: Option<&Path>) -> Result<()> {
    let mut entries: Vec<(String, Vec<MatchRecord>)> = Vec::with_capacity(files.len());
    for file in files {
        let label = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        entries.push((label, io::load_match_records(file)?));
    }
    let borrowed: Vec<(String, &[MatchRecord])> = entries
        .iter()
        .map(|(label, records)| (label.clone(), records.as_slice()))
        .collect();
    let table = votefuse::pairwise_z_table(&borrowed)?;

    for i in 0..table.schemes.len() {
        for j in (i + 1)..table.schemes.len() {
            let note = if table.degenerate[i][j] {
                "  (no discordant pairs)"
            } else {
                ""
            };
            println!(
                "{} vs {}: z = {:+.4}  [{}]{}",
                table.schemes[i], table.schemes[j], table.z[i][j], table.bands[i][j], note
            );
        }
    }

    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut csv = String::from("scheme_a,scheme_b,z,band\n");
        for i in 0..table.schemes.len() {
            for j in (i + 1)..table.schemes.len() {
                use std::fmt::Write as _;
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    table.schemes[i], table.schemes[j], table.z[i][j], table.bands[i][j]
                );
            }
        }
        let path = dir.join("zscores.csv");
        std::fs::write(&path, csv).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_synth(
    voters: usize,
    queries: usize,
    references: usize,
    noise: f64,
    seed: u64,
    out: &Path,
    ballot_depth: usize,
    scheme: &str,
) -> Result<()> {
    let schemes = parse_schemes(scheme)?;
    let (matrices, truth) = votefuse::generate_synthetic(voters, queries, references, noise, seed)?;

    std::fs::create_dir_all(out).map_err(|source| Error::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let mut techniques = Vec::with_capacity(matrices.len());
    for matrix in &matrices {
        let path = out.join(format!("scores_{}.csv", matrix.technique().name));
        io::write_score_matrix(&path, matrix)?;
        techniques.push((matrix.technique().name.clone(), path));
    }
    let truth_path = out.join("truth.txt");
    io::write_ground_truth(&truth_path, &truth)?;

    let manifest = RunManifest {
        techniques,
        ground_truth: truth_path,
        schemes,
        ballot_depth,
        borda_weights: None,
        out_dir: out.join("results"),
        seed: Some(seed),
        noise_level: Some(noise),
    };
    let manifest_path = out.join("run.manifest");
    std::fs::write(&manifest_path, render_manifest(&manifest, out)).map_err(|source| {
        Error::Io {
            path: manifest_path.clone(),
            source,
        }
    })?;

    println!(
        "wrote {} matrices ({}x{}), truth and manifest to {}",
        voters,
        queries,
        references,
        out.display()
    );
    println!("next: votefuse run --manifest {}", manifest_path.display());
    Ok(())
}
