//! Monte Carlo harness: per-scheme squared-error distributions over error
//! weights, in noiseless and noisy settings, with deterministic per-trial RNG
//! streams, a CSV record format and Tukey boxplot statistics.

use std::time::Instant;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::bma_gz_decode;
use crate::code::{compress, expand, random_sparse_error, CodeParams, NoiseConfig, ParityCheck};
use crate::error::{Error, Result};
use crate::gmd::{gmd_decode, practical_radius, DecodePath, GmdConfig, PRACTICAL_ELL_CAP};
use crate::tolerances::Tolerances;

/// Decoding scheme under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scheme {
    Bma,
    GsGmd,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Bma => "bma",
            Scheme::GsGmd => "gs_gmd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bma" => Some(Scheme::Bma),
            "gs_gmd" => Some(Scheme::GsGmd),
            _ => None,
        }
    }
}

/// Outcome classification of a single decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    /// Classical scheme succeeded.
    Ok,
    /// GMD scheme answered through the BMA fast path.
    BmaPath,
    /// GMD scheme answered through the GS trial loop.
    GmdPath,
    /// No candidate was accepted; the recorded estimate is the zero vector.
    Failure,
}

impl DecodeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecodeStatus::Ok => "ok",
            DecodeStatus::BmaPath => "bma_path",
            DecodeStatus::GmdPath => "gmd_path",
            DecodeStatus::Failure => "failure",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ok" => Some(DecodeStatus::Ok),
            "bma_path" => Some(DecodeStatus::BmaPath),
            "gmd_path" => Some(DecodeStatus::GmdPath),
            "failure" => Some(DecodeStatus::Failure),
            _ => None,
        }
    }
}

/// Experiment definition. Identical configurations (including the seed)
/// reproduce identical records.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub t_values: Vec<usize>,
    pub num_trials: usize,
    pub sigma_eta: f64,
    pub scheme: Scheme,
    pub seed: u64,
    /// Target radius for the GMD scheme; defaults to the practical radius of
    /// the code (8 for CRS(16,4), 15 for CRS(32,8)).
    pub tau: Option<usize>,
    pub tol: Tolerances,
}

impl ExperimentConfig {
    pub fn new(n: usize, k: usize, t_values: Vec<usize>, num_trials: usize) -> Self {
        ExperimentConfig {
            n,
            k,
            t_values,
            num_trials,
            sigma_eta: 0.0,
            scheme: Scheme::GsGmd,
            seed: 0,
            tau: None,
            tol: Tolerances::default(),
        }
    }
}

/// One Monte Carlo decode outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub scheme: Scheme,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub sigma_eta: f64,
    pub squared_error: f64,
    pub decode_status: DecodeStatus,
    pub wall_time_ms: f64,
}

/// CSV column set, stable across releases.
pub const CSV_HEADER: &str =
    "trial_id,scheme,n,k,t,sigma_eta,squared_error,decode_status,wall_time_ms";

impl TrialRecord {
    /// Formats one CSV row. Wall time is emitted as zero unless
    /// `include_timing` is set, keeping default output byte-reproducible.
    pub fn to_csv_line(&self, include_timing: bool) -> String {
        let wall = if include_timing {
            self.wall_time_ms
        } else {
            0.0
        };
        format!(
            "{},{},{},{},{},{:e},{:e},{},{:e}",
            self.trial_id,
            self.scheme.as_str(),
            self.n,
            self.k,
            self.t,
            self.sigma_eta,
            self.squared_error,
            self.decode_status.as_str(),
            wall
        )
    }

    /// Parses a row produced by [`TrialRecord::to_csv_line`].
    pub fn parse_csv_line(line: &str) -> Option<TrialRecord> {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 9 {
            return None;
        }
        Some(TrialRecord {
            trial_id: fields[0].parse().ok()?,
            scheme: Scheme::parse(fields[1])?,
            n: fields[2].parse().ok()?,
            k: fields[3].parse().ok()?,
            t: fields[4].parse().ok()?,
            sigma_eta: fields[5].parse().ok()?,
            squared_error: fields[6].parse().ok()?,
            decode_status: DecodeStatus::parse(fields[7])?,
            wall_time_ms: fields[8].parse().ok()?,
        })
    }
}

/// Renders records as CSV with the standard header.
pub fn records_to_csv(records: &[TrialRecord], include_timing: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&rec.to_csv_line(include_timing));
        out.push('\n');
    }
    out
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-trial stream seed derived from the master seed by counter, so trials
/// are order-independent and may be evaluated concurrently.
fn trial_seed(master: u64, counter: u64) -> u64 {
    splitmix64(master ^ splitmix64(counter.wrapping_add(1)))
}

/// Runs the full experiment grid. Per-trial decode failures are recorded
/// (with the zero estimate, so the squared error equals `||e||^2`) and never
/// abort the run.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let params = CodeParams::new(cfg.n, cfg.k)?;
    let h = ParityCheck::of(&params);
    let tau = match cfg.tau {
        Some(t) => t,
        None => practical_radius(cfg.n, cfg.k, PRACTICAL_ELL_CAP).ok_or(Error::NoFeasibleRadius)?,
    };
    let mut gmd_cfg = GmdConfig::new(&params, tau)?;
    gmd_cfg.tol = cfg.tol.for_noise(cfg.sigma_eta);

    // trials are independent given their derived streams, so they run in
    // parallel; collection keeps trial-index order
    let grid: Vec<(usize, usize)> = cfg
        .t_values
        .iter()
        .enumerate()
        .flat_map(|(t_index, &t)| {
            (0..cfg.num_trials).map(move |trial| (t, t_index * cfg.num_trials + trial))
        })
        .collect();
    grid.par_iter()
        .map(|&(t, counter)| run_trial(cfg, &params, &h, &gmd_cfg, t, counter as u64))
        .collect()
}

fn run_trial(
    cfg: &ExperimentConfig,
    params: &CodeParams,
    h: &ParityCheck,
    gmd_cfg: &GmdConfig,
    t: usize,
    counter: u64,
) -> Result<TrialRecord> {
    let seed = trial_seed(cfg.seed, counter);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = random_sparse_error(params, t, &mut rng)?;
    let b = compress(h, &e)?;
    let noise = NoiseConfig {
        sigma_eta: cfg.sigma_eta,
        seed: splitmix64(seed),
    };
    let r = expand(h, &b, &noise)?;

    let start = Instant::now();
    let (estimate, status) = match cfg.scheme {
        Scheme::Bma => {
            let (decoded, _) = bma_gz_decode(params, h, &r, &gmd_cfg.tol)?;
            match decoded {
                Some(e_hat) => (e_hat.as_dense().to_vec(), DecodeStatus::Ok),
                None => (vec![Complex64::ZERO; cfg.n], DecodeStatus::Failure),
            }
        }
        Scheme::GsGmd => match gmd_decode(params, &r, gmd_cfg) {
            Ok(decoded) => {
                let status = match decoded.path {
                    DecodePath::Bma => DecodeStatus::BmaPath,
                    DecodePath::Gmd => DecodeStatus::GmdPath,
                };
                (decoded.error.as_dense().to_vec(), status)
            }
            Err(Error::DecodeFailure) => (vec![Complex64::ZERO; cfg.n], DecodeStatus::Failure),
            Err(other) => return Err(other),
        },
    };
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    Ok(TrialRecord {
        trial_id: counter,
        scheme: cfg.scheme,
        n: cfg.n,
        k: cfg.k,
        t,
        sigma_eta: cfg.sigma_eta,
        squared_error: e.squared_distance(&estimate),
        decode_status: status,
        wall_time_ms,
    })
}

/// Tukey boxplot summary of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub mean: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

/// Quantile by linear interpolation between order statistics (the `(n-1)p`
/// convention); conventions differ, so this one is pinned here.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 < n {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

/// Computes quartiles, mean, 1.5*IQR whiskers and the outlier list.
pub fn boxplot_stats(values: &[f64]) -> Result<BoxplotStats> {
    if values.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile(&sorted, 0.25);
    let median = quantile(&sorted, 0.5);
    let q3 = quantile(&sorted, 0.75);
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    let iqr = q3 - q1;
    let fence_low = q1 - 1.5 * iqr;
    let fence_high = q3 + 1.5 * iqr;
    let whisker_low = sorted
        .iter()
        .copied()
        .find(|&v| v >= fence_low)
        .unwrap_or(sorted[0]);
    let whisker_high = sorted
        .iter()
        .rev()
        .copied()
        .find(|&v| v <= fence_high)
        .unwrap_or(sorted[sorted.len() - 1]);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|&v| v < fence_low || v > fence_high)
        .collect();
    Ok(BoxplotStats {
        q1,
        median,
        q3,
        mean,
        whisker_low,
        whisker_high,
        outliers,
    })
}

/// Boxplot statistics for one `(scheme, t)` record group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStats {
    pub scheme: Scheme,
    pub t: usize,
    pub stats: BoxplotStats,
}

/// Groups records by `(scheme, t)` and summarizes each group's squared
/// errors; groups come back sorted by scheme then weight.
pub fn group_stats(records: &[TrialRecord]) -> Vec<GroupStats> {
    let mut keys: Vec<(Scheme, usize)> = records.iter().map(|r| (r.scheme, r.t)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(scheme, t)| {
            let values: Vec<f64> = records
                .iter()
                .filter(|r| r.scheme == scheme && r.t == t)
                .map(|r| r.squared_error)
                .collect();
            GroupStats {
                scheme,
                t,
                stats: boxplot_stats(&values).expect("group is nonempty by construction"),
            }
        })
        .collect()
}
