//! `crs` — encode, compress, decode and benchmark complex Reed-Solomon
//! sparse recovery from the command line.
//!
//! Vector files are plain text: one component per line as `re im` (a bare
//! `re` is taken as real), `#` starts a comment. `simulate` emits CSV records
//! (see `crs_core::experiment::CSV_HEADER`); `stats` turns those records into
//! per-(scheme, t) boxplot statistics as JSON.
//!
//! Exit codes: 0 success, 1 decode failure (with a machine-readable failure
//! record on stdout), 2 usage or input errors.

use std::collections::HashMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crs_core::classical::bma_gz_decode;
use crs_core::code::{
    compress, encode, expand, CodeParams, MessagePoly, NoiseConfig, ParityCheck, ReceivedVector,
    SparseError,
};
use crs_core::experiment::{
    group_stats, records_to_csv, run_experiment, ExperimentConfig, Scheme, TrialRecord, CSV_HEADER,
};
use crs_core::gmd::{gmd_decode, GmdConfig};
use crs_core::{Error as CoreError, Tolerances};

/// Environment variable holding the default directory for output files.
const OUTPUT_DIR_ENV: &str = "CRS_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "crs", version, about = "Complex Reed-Solomon sparse recovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a message polynomial into a codeword.
    Encode(EncodeArgs),
    /// Compress a sparse vector into its syndrome (measurement vector).
    Compress(CompressArgs),
    /// Recover a sparse vector from a syndrome or received vector.
    Decode(DecodeArgs),
    /// Run a Monte Carlo experiment and emit trial records as CSV.
    Simulate(SimulateArgs),
    /// Summarize trial records into per-(scheme, t) boxplot statistics.
    Stats(StatsArgs),
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Message coefficient file (at most k lines).
    #[arg(long)]
    message: PathBuf,
    /// Output file for the codeword (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompressArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Sparse vector file (n lines).
    #[arg(long)]
    error: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Syndrome file (n-k lines); expanded internally before decoding.
    #[arg(long, conflicts_with = "received")]
    syndrome: Option<PathBuf>,
    /// Received vector file (n lines).
    #[arg(long)]
    received: Option<PathBuf>,
    /// Decoding scheme: bma | gs_gmd.
    #[arg(long, default_value = "gs_gmd")]
    scheme: String,
    /// Target decoding radius (defaults to the practical radius of the code).
    #[arg(long)]
    tau: Option<usize>,
    /// Tolerance override, repeatable: KEY=VALUE (e.g. support=1e-5).
    #[arg(long = "tol")]
    tol: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Default)]
struct SimulateArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Error weights, comma separated (e.g. --t 6,8,10).
    #[arg(long, value_delimiter = ',')]
    t: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long = "sigma-eta")]
    sigma_eta: Option<f64>,
    /// bma | gs_gmd.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tau: Option<usize>,
    /// Record wall-clock timings (off by default so output is reproducible).
    #[arg(long)]
    timing: bool,
    /// key=value configuration file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tolerance override, repeatable: KEY=VALUE.
    #[arg(long = "tol")]
    tol: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Trial record CSV (stdin when omitted).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Encode(args) => cmd_encode(args),
        Command::Compress(args) => cmd_compress(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Stats(args) => cmd_stats(args),
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<ExitCode> {
    let params = CodeParams::new(args.n, args.k)?;
    let msg = MessagePoly(read_vector_file(&args.message)?);
    let cw = encode(&params, &msg)?;
    write_output(args.output.as_deref(), &format_vector(&cw))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compress(args: CompressArgs) -> Result<ExitCode> {
    let params = CodeParams::new(args.n, args.k)?;
    let h = ParityCheck::of(&params);
    let values = read_vector_file(&args.error)?;
    let e = SparseError::from_dense(values);
    let b = compress(&h, &e)?;
    write_output(args.output.as_deref(), &format_vector(b.as_slice()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(args: DecodeArgs) -> Result<ExitCode> {
    let params = CodeParams::new(args.n, args.k)?;
    let h = ParityCheck::of(&params);
    let scheme = Scheme::parse(&args.scheme)
        .ok_or_else(|| anyhow!("unknown scheme {:?} (expected bma or gs_gmd)", args.scheme))?;
    let tol = parse_tol_overrides(&args.tol, Tolerances::default())?;

    let r = match (&args.syndrome, &args.received) {
        (Some(path), None) => {
            let b = crs_core::Syndrome(read_vector_file(path)?);
            expand(&h, &b, &NoiseConfig::none())?
        }
        (None, Some(path)) => ReceivedVector(read_vector_file(path)?),
        _ => bail!("exactly one of --syndrome or --received is required"),
    };

    let decoded: Option<SparseError> = match scheme {
        Scheme::Bma => bma_gz_decode(&params, &h, &r, &tol)?.0,
        Scheme::GsGmd => {
            let mut cfg = match args.tau {
                Some(tau) => GmdConfig::new(&params, tau)?,
                None => GmdConfig::with_practical_radius(&params)?,
            };
            cfg.tol = tol;
            match gmd_decode(&params, &r, &cfg) {
                Ok(d) => Some(d.error),
                Err(CoreError::DecodeFailure) => None,
                Err(e) => return Err(e.into()),
            }
        }
    };

    match decoded {
        Some(e_hat) => {
            write_output(args.output.as_deref(), &format_vector(e_hat.as_dense()))?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!(
                "{{\"status\":\"failure\",\"scheme\":\"{}\",\"n\":{},\"k\":{}}}",
                scheme.as_str(),
                args.n,
                args.k
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode> {
    let file_cfg = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    let lookup = |key: &str| file_cfg.get(key).cloned();

    let n = resolve(args.n, lookup("n"), "n")?.context("missing parameter: n")?;
    let k = resolve(args.k, lookup("k"), "k")?.context("missing parameter: k")?;
    let t_values: Vec<usize> = if args.t.is_empty() {
        match lookup("t") {
            Some(raw) => parse_list(&raw).context("config key t")?,
            None => bail!("missing parameter: t"),
        }
    } else {
        args.t.clone()
    };
    let trials = resolve(args.trials, lookup("trials"), "trials")?.unwrap_or(100);
    let sigma_eta = resolve(args.sigma_eta, lookup("sigma_eta"), "sigma_eta")?.unwrap_or(0.0);
    let scheme_name = args
        .scheme
        .or(lookup("scheme"))
        .unwrap_or_else(|| "gs_gmd".into());
    let scheme = Scheme::parse(&scheme_name)
        .ok_or_else(|| anyhow!("unknown scheme {scheme_name:?} (expected bma or gs_gmd)"))?;
    let seed = resolve(args.seed, lookup("seed"), "seed")?.unwrap_or(0);
    let tau = resolve(args.tau, lookup("tau"), "tau")?;

    let mut tol = Tolerances::default();
    for (key, value) in &file_cfg {
        if let Some(name) = key.strip_prefix("tol.") {
            apply_tol_override(&mut tol, name, value)?;
        }
    }
    tol = parse_tol_overrides(&args.tol, tol)?;

    let mut cfg = ExperimentConfig::new(n, k, t_values, trials);
    cfg.sigma_eta = sigma_eta;
    cfg.scheme = scheme;
    cfg.seed = seed;
    cfg.tau = tau;
    cfg.tol = tol;

    let records = run_experiment(&cfg)?;
    write_output(
        args.output.as_deref(),
        &records_to_csv(&records, args.timing),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(args: StatsArgs) -> Result<ExitCode> {
    let raw = match &args.input {
        Some(path) => fs::read_to_string(resolve_input(path))
            .with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            buf
        }
    };
    let mut lines = raw.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(header) if header.trim() == CSV_HEADER => {}
        _ => bail!("input is not a trial record CSV (expected header {CSV_HEADER:?})"),
    }
    let records: Vec<TrialRecord> = lines
        .enumerate()
        .map(|(i, line)| {
            TrialRecord::parse_csv_line(line)
                .ok_or_else(|| anyhow!("malformed record on data line {}", i + 1))
        })
        .collect::<Result<_>>()?;
    if records.is_empty() {
        bail!("no records in input");
    }

    let groups = group_stats(&records);
    let mut json = String::from("[\n");
    for (i, g) in groups.iter().enumerate() {
        let s = &g.stats;
        json.push_str(&format!(
            "  {{\"scheme\":\"{}\",\"t\":{},\"q1\":{:e},\"median\":{:e},\"q3\":{:e},\"mean\":{:e},\"whisker_low\":{:e},\"whisker_high\":{:e},\"n_outliers\":{}}}{}\n",
            g.scheme.as_str(),
            g.t,
            s.q1,
            s.median,
            s.q3,
            s.mean,
            s.whisker_low,
            s.whisker_high,
            s.outliers.len(),
            if i + 1 < groups.len() { "," } else { "" }
        ));
    }
    json.push_str("]\n");
    write_output(args.output.as_deref(), &json)?;
    Ok(ExitCode::SUCCESS)
}

// --- configuration plumbing ---

fn resolve<T: std::str::FromStr>(
    flag: Option<T>,
    config: Option<String>,
    key: &str,
) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match config {
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| anyhow!("config key {key}: cannot parse {raw:?}")),
        None => Ok(None),
    }
}

fn parse_list(raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("cannot parse list entry {part:?}"))
        })
        .collect()
}

fn parse_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let raw = fs::read_to_string(resolve_input(path))
        .with_context(|| format!("reading {}", path.display()))?;
    let mut map = HashMap::new();
    for (idx, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), idx + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_tol_overrides(pairs: &[String], mut tol: Tolerances) -> Result<Tolerances> {
    for pair in pairs {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("--tol expects KEY=VALUE, got {pair:?}"))?;
        apply_tol_override(&mut tol, key.trim(), value.trim())?;
    }
    Ok(tol)
}

fn apply_tol_override(tol: &mut Tolerances, key: &str, value: &str) -> Result<()> {
    let float = || {
        value
            .parse::<f64>()
            .map_err(|_| anyhow!("tolerance {key}: cannot parse {value:?}"))
    };
    match key {
        "bma_discrepancy" => tol.bma_discrepancy = float()?,
        "root_accept" => tol.root_accept = float()?,
        "residual" => tol.residual = float()?,
        "coeff_clean" => tol.coeff_clean = float()?,
        "newton_resid_factor" => tol.newton_resid_factor = float()?,
        "newton_step" => tol.newton_step = float()?,
        "newton_max_iter" => {
            tol.newton_max_iter = value
                .parse()
                .map_err(|_| anyhow!("tolerance {key}: cannot parse {value:?}"))?
        }
        "condition_max" => tol.condition_max = float()?,
        "root_cluster" => tol.root_cluster = float()?,
        "candidate_dedup" => tol.candidate_dedup = float()?,
        "support" => tol.support = float()?,
        "sv_tie" => tol.sv_tie = float()?,
        other => bail!("unknown tolerance key {other:?}"),
    }
    Ok(())
}

// --- file formats ---

fn read_vector_file(path: &Path) -> Result<Vec<Complex64>> {
    let raw = fs::read_to_string(resolve_input(path))
        .with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let re: f64 = parts
            .next()
            .unwrap()
            .parse()
            .map_err(|_| anyhow!("{}:{}: bad real part", path.display(), idx + 1))?;
        let im: f64 = match parts.next() {
            Some(s) => s
                .parse()
                .map_err(|_| anyhow!("{}:{}: bad imaginary part", path.display(), idx + 1))?,
            None => 0.0,
        };
        if parts.next().is_some() {
            bail!("{}:{}: expected `re im`", path.display(), idx + 1);
        }
        out.push(Complex64::new(re, im));
    }
    if out.is_empty() {
        bail!("{}: no vector components found", path.display());
    }
    Ok(out)
}

fn format_vector(values: &[Complex64]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&format!("{:e} {:e}\n", v.re, v.im));
    }
    out
}

/// Relative inputs are taken as given; this hook exists so input and output
/// resolution stay symmetric.
fn resolve_input(path: &Path) -> PathBuf {
    path.to_path_buf()
}

/// Joins bare relative output paths onto `CRS_OUTPUT_DIR` when set.
fn resolve_output(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            let target = resolve_output(p);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)
                        .with_context(|| format!("creating {}", parent.display()))?;
                }
            }
            fs::write(&target, content).with_context(|| format!("writing {}", target.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
