//! File formats: the CSV and JSON shapes the commands emit, and the readers
//! that accept them back. Everything round-trips: `fit` consumes exactly
//! what `compute` and `simulate` write.

use degflow_core::{DegreeDistribution, FitResult, GrowthModel, Segment};
use serde::{Deserialize, Serialize};
use std::env;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A degree distribution plus the provenance needed to reproduce it.
#[derive(Serialize, Deserialize)]
pub struct DistributionFile {
    pub engine_version: String,
    pub model: GrowthModel,
    pub t: u64,
    #[serde(rename = "S")]
    pub start: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<u32>,
    pub dropped_mass_fraction: f64,
    pub segments: Vec<Segment>,
    pub entries: Vec<(u64, f64)>,
}

impl DistributionFile {
    pub fn new(
        dist: DegreeDistribution,
        segments: Vec<Segment>,
        eps: Option<f64>,
        seed: Option<u64>,
        reps: Option<u32>,
    ) -> Self {
        DistributionFile {
            engine_version: ENGINE_VERSION.to_string(),
            model: dist.model,
            t: dist.t,
            start: dist.start,
            eps,
            seed,
            reps,
            dropped_mass_fraction: dist.dropped_mass_fraction,
            segments,
            entries: dist.entries,
        }
    }

    pub fn into_distribution(self) -> DegreeDistribution {
        DegreeDistribution {
            model: self.model,
            t: self.t,
            start: self.start,
            entries: self.entries,
            dropped_mass_fraction: self.dropped_mass_fraction,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct FitFile {
    pub engine_version: String,
    pub input: String,
    pub gamma: f64,
    pub c: f64,
    pub k_min: u64,
    pub k_max: u64,
    pub residual_rms: f64,
    pub n_points: usize,
}

#[derive(Serialize, Deserialize)]
pub struct FitRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    pub gamma: f64,
    pub c: f64,
    pub k_min: u64,
    pub k_max: u64,
    pub residual_rms: f64,
    pub n_points: usize,
}

impl FitRow {
    pub fn from_fit(fit: FitResult, input: Option<String>, m: Option<u64>, t: Option<u64>) -> Self {
        FitRow {
            input,
            m,
            t,
            gamma: fit.gamma,
            c: fit.c,
            k_min: fit.k_min,
            k_max: fit.k_max,
            residual_rms: fit.residual_rms,
            n_points: fit.n_points,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct FitTableFile {
    pub engine_version: String,
    pub rows: Vec<FitRow>,
    /// Drift exponent of the amplitude across horizons, when at least two
    /// rows carry distinct `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct SegmentsFile {
    pub engine_version: String,
    pub model: GrowthModel,
    pub t: u64,
    #[serde(rename = "S")]
    pub start: u64,
    pub segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
pub struct CompareFile {
    pub engine_version: String,
    pub model: GrowthModel,
    pub t: u64,
    #[serde(rename = "S")]
    pub start: u64,
    pub eps: f64,
    pub seed: u64,
    pub reps: u32,
    pub max_k: u64,
    pub rows: Vec<CompareRow>,
    /// Largest |evolved − simulated| / SE over the reported degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_sigma: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct CompareRow {
    pub k: u64,
    pub evolved: f64,
    pub simulated: f64,
    /// Standard error of the simulated value across replications.
    pub std_error: f64,
    pub abs_diff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_diff: Option<f64>,
    /// abs_diff in units of the standard error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Closed-form stationary value, where one exists for the family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic: Option<f64>,
}

/// Where a command's bytes go. Relative `--output` paths are joined onto
/// `$DEGFLOW_OUT_DIR` when the variable is set, so batch scripts can steer
/// a whole run with one export.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    let Some(path) = path else {
        return Ok(Box::new(io::stdout().lock()));
    };
    let resolved = resolve_out_path(path);
    if let Some(dir) = resolved.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.display().to_string(),
                source,
            })?;
        }
    }
    let file = fs::File::create(&resolved).map_err(|source| CliError::Io {
        path: resolved.display().to_string(),
        source,
    })?;
    Ok(Box::new(BufWriter::new(file)))
}

fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = env::var_os("DEGFLOW_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

/// `{:.16e}` prints 17 significant digits — enough to reconstruct any f64.
pub fn write_distribution_csv(
    mut w: impl Write,
    entries: &[(u64, f64)],
    loglog: bool,
) -> io::Result<()> {
    if loglog {
        writeln!(w, "log10k,log10p")?;
        for &(k, p) in entries {
            writeln!(w, "{:.16e},{:.16e}", (k as f64).log10(), p.log10())?;
        }
    } else {
        writeln!(w, "k,p")?;
        for &(k, p) in entries {
            writeln!(w, "{k},{p:.16e}")?;
        }
    }
    w.flush()
}

pub fn write_json<T: Serialize>(mut w: impl Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Io {
        path: "<output>".to_string(),
        source: e.into(),
    })?;
    writeln!(w)
        .and_then(|()| w.flush())
        .map_err(|source| CliError::Io {
            path: "<output>".to_string(),
            source,
        })
}

/// A distribution read back from disk, remembering whether it arrived with
/// metadata (JSON) or as bare `k,p` rows (CSV).
pub struct ParsedInput {
    pub dist: DegreeDistribution,
    pub has_metadata: bool,
}

pub fn read_distribution(path: &Path) -> Result<ParsedInput, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        let file: DistributionFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            line: e.line(),
            reason: e.to_string(),
        })?;
        Ok(ParsedInput {
            dist: file.into_distribution(),
            has_metadata: true,
        })
    } else {
        Ok(ParsedInput {
            dist: parse_csv(path, &text)?,
            has_metadata: false,
        })
    }
}

fn parse_csv(path: &Path, text: &str) -> Result<DegreeDistribution, CliError> {
    let bad = |line: usize, reason: String| CliError::Parse {
        path: path.display().to_string(),
        line,
        reason,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == "k,p" => {}
        Some((_, header)) => {
            return Err(bad(
                1,
                format!("expected header `k,p`, found `{}`", header.trim_end()),
            ))
        }
        None => return Err(bad(1, "empty file".to_string())),
    }
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (k, p) = line
            .split_once(',')
            .ok_or_else(|| bad(idx + 1, "expected two comma-separated columns".to_string()))?;
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|e| bad(idx + 1, format!("bad degree `{k}`: {e}")))?;
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|e| bad(idx + 1, format!("bad probability `{p}`: {e}")))?;
        entries.push((k, p));
    }
    if !entries.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(bad(0, "degrees must be strictly increasing".to_string()));
    }
    // Bare CSV carries no provenance; the placeholder header below is never
    // consulted because metadata-free inputs are fitted over their own data
    // extent rather than a model-derived window.
    Ok(DegreeDistribution {
        model: GrowthModel::constant(1).expect("m=1 is always valid"),
        t: entries.last().map_or(1, |&(k, _)| k.max(1)),
        start: 1,
        entries,
        dropped_mass_fraction: 0.0,
    })
}
