//! Plain-text run manifests: `key = value` lines, `#` comments.
//!
//! ```text
//! technique = hog: scores/hog.csv
//! technique = netlike: scores/netlike.csv
//! ground_truth = truth.txt
//! schemes = all
//! ballot_depth = 10
//! out = results
//! seed = 7
//! ```
//!
//! Relative paths resolve against the manifest's own directory, so a
//! generated fixture directory stays self-contained. Every value can be
//! overridden by a command-line flag.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::schemes::Scheme;

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    /// Technique name plus score-matrix path, in file order.
    pub techniques: Vec<(String, PathBuf)>,
    pub ground_truth: PathBuf,
    pub schemes: Vec<Scheme>,
    pub ballot_depth: usize,
    pub borda_weights: Option<Vec<u64>>,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    pub noise_level: Option<f64>,
}

impl RunManifest {
    /// Parses and validates a manifest file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    fn parse(text: &str, path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let invalid = |detail: String| Error::ManifestInvalid {
            path: path.to_path_buf(),
            detail,
        };

        let mut techniques = Vec::new();
        let mut ground_truth = None;
        let mut schemes = None;
        let mut ballot_depth = None;
        let mut borda_weights = None;
        let mut out_dir = None;
        let mut seed = None;
        let mut noise_level = None;

        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::MalformedLine {
                path: path.to_path_buf(),
                line: line_no + 1,
                detail: "expected `key = value`".into(),
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad_value =
                |what: &str| invalid(format!("line {}: bad {what}: {value:?}", line_no + 1));
            match key {
                "technique" => {
                    let (name, file) = value.split_once(':').ok_or_else(|| {
                        invalid(format!(
                            "line {}: technique needs `name: path`, got {value:?}",
                            line_no + 1
                        ))
                    })?;
                    techniques.push((name.trim().to_string(), resolve(base, file.trim())));
                }
                "ground_truth" => ground_truth = Some(resolve(base, value)),
                "schemes" => {
                    schemes = Some(parse_schemes(value).map_err(|e| invalid(e.to_string()))?)
                }
                "ballot_depth" => {
                    ballot_depth = Some(value.parse().map_err(|_| bad_value("ballot_depth"))?)
                }
                "borda_weights" => {
                    let weights = value
                        .split(',')
                        .map(|w| w.trim().parse::<u64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad_value("borda_weights"))?;
                    borda_weights = Some(weights);
                }
                "out" => out_dir = Some(resolve(base, value)),
                "seed" => seed = Some(value.parse().map_err(|_| bad_value("seed"))?),
                "noise" | "noise_level" => {
                    noise_level = Some(value.parse().map_err(|_| bad_value("noise"))?)
                }
                other => {
                    return Err(invalid(format!(
                        "line {}: unknown key {other:?}",
                        line_no + 1
                    )))
                }
            }
        }

        let manifest = Self {
            techniques,
            ground_truth: ground_truth
                .ok_or_else(|| invalid("missing ground_truth".into()))?,
            schemes: schemes.unwrap_or_else(|| Scheme::ALL.to_vec()),
            ballot_depth: ballot_depth.unwrap_or(crate::ballot::DEFAULT_BALLOT_DEPTH),
            borda_weights,
            out_dir: out_dir.unwrap_or_else(|| resolve(base, "results")),
            seed,
            noise_level,
        };
        manifest.validate(path)?;
        Ok(manifest)
    }

    fn validate(&self, path: &Path) -> Result<()> {
        let invalid = |detail: String| Error::ManifestInvalid {
            path: path.to_path_buf(),
            detail,
        };
        if self.techniques.len() < 2 {
            return Err(invalid(format!(
                "need at least 2 techniques, found {}",
                self.techniques.len()
            )));
        }
        for (i, (name, _)) in self.techniques.iter().enumerate() {
            if self.techniques[..i].iter().any(|(other, _)| other == name) {
                return Err(invalid(format!("duplicate technique name {name:?}")));
            }
        }
        if self.schemes.is_empty() {
            return Err(invalid("need at least 1 scheme".into()));
        }
        if self.ballot_depth == 0 {
            return Err(invalid("ballot_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses a comma-separated scheme list; `all` expands to the five schemes.
pub fn parse_schemes(value: &str) -> Result<Vec<Scheme>> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Scheme::ALL.to_vec());
    }
    let mut schemes = Vec::new();
    for part in value.split(',') {
        let scheme: Scheme = part.parse()?;
        if !schemes.contains(&scheme) {
            schemes.push(scheme);
        }
    }
    if schemes.is_empty() {
        return Err(Error::UnknownScheme {
            name: value.to_string(),
        });
    }
    Ok(schemes)
}

fn resolve(base: &Path, value: &str) -> PathBuf {
    let p = Path::new(value);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Renders a manifest back to text, with paths relative to `base` where
/// possible. Used by `synth` to drop a ready-to-run manifest next to the
/// fixtures it generates.
pub fn render_manifest(manifest: &RunManifest, base: &Path) -> String {
    use std::fmt::Write as _;
    let rel = |p: &Path| {
        p.strip_prefix(base)
            .map(|r| r.display().to_string())
            .unwrap_or_else(|_| p.display().to_string())
    };
    let mut out = String::new();
    for (name, path) in &manifest.techniques {
        let _ = writeln!(out, "technique = {name}: {}", rel(path));
    }
    let _ = writeln!(out, "ground_truth = {}", rel(&manifest.ground_truth));
    let scheme_names: Vec<&str> = manifest.schemes.iter().map(|s| s.name()).collect();
    let _ = writeln!(out, "schemes = {}", scheme_names.join(","));
    let _ = writeln!(out, "ballot_depth = {}", manifest.ballot_depth);
    if let Some(weights) = &manifest.borda_weights {
        let rendered: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(out, "borda_weights = {}", rendered.join(","));
    }
    let _ = writeln!(out, "out = {}", rel(&manifest.out_dir));
    if let Some(seed) = manifest.seed {
        let _ = writeln!(out, "seed = {seed}");
    }
    if let Some(noise) = manifest.noise_level {
        let _ = writeln!(out, "noise = {noise}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunManifest> {
        RunManifest::parse(text, Path::new("/data/run.manifest"))
    }

    #[test]
    fn full_manifest_parses_with_resolved_paths() {
        let m = parse(
            "# demo\n\
             technique = hog: scores/hog.csv\n\
             technique = gist: /abs/gist.csv\n\
             ground_truth = truth.txt\n\
             schemes = plurality, irv\n\
             ballot_depth = 5\n\
             out = results\n\
             seed = 42\n",
        )
        .unwrap();
        assert_eq!(m.techniques.len(), 2);
        assert_eq!(m.techniques[0].1, PathBuf::from("/data/scores/hog.csv"));
        assert_eq!(m.techniques[1].1, PathBuf::from("/abs/gist.csv"));
        assert_eq!(m.schemes, vec![Scheme::Plurality, Scheme::Irv]);
        assert_eq!(m.ballot_depth, 5);
        assert_eq!(m.seed, Some(42));
    }

    #[test]
    fn defaults_fill_in_schemes_depth_and_out() {
        let m = parse(
            "technique = a: a.csv\ntechnique = b: b.csv\nground_truth = t.txt\n",
        )
        .unwrap();
        assert_eq!(m.schemes, Scheme::ALL.to_vec());
        assert_eq!(m.ballot_depth, crate::ballot::DEFAULT_BALLOT_DEPTH);
        assert_eq!(m.out_dir, PathBuf::from("/data/results"));
    }

    #[test]
    fn single_technique_is_rejected() {
        let err = parse("technique = a: a.csv\nground_truth = t.txt\n").unwrap_err();
        assert!(err.to_string().contains("at least 2 techniques"));
    }

    #[test]
    fn unknown_keys_and_schemes_are_rejected() {
        assert!(parse("bogus = 1\n").is_err());
        assert!(parse(
            "technique = a: a.csv\ntechnique = b: b.csv\nground_truth = t.txt\nschemes = approval\n"
        )
        .is_err());
    }

    #[test]
    fn render_round_trips() {
        let m = parse(
            "technique = a: a.csv\ntechnique = b: b.csv\nground_truth = t.txt\nschemes = borda\nseed = 9\n",
        )
        .unwrap();
        let rendered = render_manifest(&m, Path::new("/data"));
        let reparsed = RunManifest::parse(&rendered, Path::new("/data/other.manifest")).unwrap();
        assert_eq!(reparsed.techniques, m.techniques);
        assert_eq!(reparsed.schemes, m.schemes);
        assert_eq!(reparsed.seed, m.seed);
    }
}
