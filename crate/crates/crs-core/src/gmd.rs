//! Generalized-minimum-distance decoding on top of the GS error/erasure
//! decoder: a fast classical path, then trials with an increasing number of
//! least-reliable coordinates erased, candidate validation against the target
//! radius, and score-based selection of a unique answer.

use num_complex::Complex64;

use crate::classical::{bma_gz_decode, soft_info, SoftInfo};
use crate::code::{horner, CodeParams, ParityCheck, ReceivedVector, SparseError};
use crate::error::{Error, Result};
use crate::interp::{choose_params, decoding_radius, gs_interpolate, johnson_radius, ErasureSet};
use crate::rootfind::{mrr, refine_candidates};
use crate::tolerances::Tolerances;

/// Decoder configuration: target radius, thresholds, and a cap on how many
/// raw root candidates are refined per trial.
#[derive(Debug, Clone)]
pub struct GmdConfig {
    pub tau: usize,
    pub tol: Tolerances,
    pub max_candidates: usize,
}

impl GmdConfig {
    /// Validates `tau` against the Johnson radius of the code.
    pub fn new(params: &CodeParams, tau: usize) -> Result<Self> {
        let johnson = johnson_radius(params.n(), params.d());
        if tau > johnson {
            return Err(Error::RadiusExceedsJohnson { tau, johnson });
        }
        Ok(GmdConfig {
            tau,
            tol: Tolerances::default(),
            max_candidates: 64,
        })
    }

    /// Configuration at the largest radius reachable with a moderate list
    /// size (see [`practical_radius`]).
    pub fn with_practical_radius(params: &CodeParams) -> Result<Self> {
        let tau = practical_radius(params.n(), params.k(), PRACTICAL_ELL_CAP)
            .ok_or(Error::NoFeasibleRadius)?;
        GmdConfig::new(params, tau)
    }
}

/// List-size cap used for the default decoding radius. Within this cap the
/// reachable radius is 8 for CRS(16,4) and 15 for CRS(32,8); pushing closer
/// to the Johnson bound needs list sizes that grow without practical benefit.
pub const PRACTICAL_ELL_CAP: usize = 6;

/// Largest decoding radius reachable with list size at most `max_ell`.
pub fn practical_radius(n: usize, k: usize, max_ell: usize) -> Option<usize> {
    (1..=max_ell)
        .flat_map(|ell| (1..=ell).map(move |s| (s, ell)))
        .filter_map(|(s, ell)| decoding_radius(n, k, s, ell))
        .max()
}

/// Which branch of the decoder produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodePath {
    /// Classical BMA + GZ fast path.
    Bma,
    /// GS-based erasure trials with scoring.
    Gmd,
}

/// A successful decode: the recovered sparse vector, the path taken, and the
/// score of the winning list entry.
#[derive(Debug, Clone)]
pub struct Decoded {
    pub error: SparseError,
    pub path: DecodePath,
    pub score: u32,
}

/// Coordinates of the `rho` smallest reliabilities, ties broken by the lower
/// index.
pub fn erase_least_reliable(soft: &SoftInfo, rho: usize) -> ErasureSet {
    let mut order: Vec<usize> = (0..soft.lambda.len()).collect();
    order.sort_by(|&a, &b| soft.lambda[a].total_cmp(&soft.lambda[b]).then(a.cmp(&b)));
    ErasureSet::from_indices(order.into_iter().take(rho))
}

/// Maps a refined root to its candidate error vector and applies the support
/// gate: `w_i = g(alpha^i)`, `e~ = r - w`, accepted when at most `tau`
/// entries reach `tol.support`. Sub-threshold entries are zeroed in the
/// returned vector.
pub fn validate_candidate(
    params: &CodeParams,
    g: &[Complex64],
    r: &ReceivedVector,
    tau: usize,
    tol: &Tolerances,
) -> Option<Vec<Complex64>> {
    let mut e_tilde = Vec::with_capacity(params.n());
    let mut support = 0usize;
    for i in 0..params.n() {
        let w = horner(g, params.point(i));
        let v = r.as_slice()[i] - w;
        if v.norm() >= tol.support {
            support += 1;
            e_tilde.push(v);
        } else {
            e_tilde.push(Complex64::ZERO);
        }
    }
    (support <= tau).then_some(e_tilde)
}

/// One candidate error vector with its occurrence score.
#[derive(Debug, Clone)]
pub struct ScoredEntry {
    pub e_tilde: Vec<Complex64>,
    pub support: Vec<usize>,
    pub score: u32,
}

/// The list `L` of validated candidates. Membership uses the same support
/// set plus a per-coordinate distance below the dedup tolerance; re-recording
/// a member increments its score.
#[derive(Debug, Clone, Default)]
pub struct ScoredList {
    pub entries: Vec<ScoredEntry>,
}

impl ScoredList {
    pub fn record(&mut self, e_tilde: Vec<Complex64>, dedup_tol: f64) {
        let support: Vec<usize> = e_tilde
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() != 0.0)
            .map(|(i, _)| i)
            .collect();
        for entry in &mut self.entries {
            if entry.support == support
                && entry
                    .e_tilde
                    .iter()
                    .zip(&e_tilde)
                    .all(|(a, b)| (a - b).norm() < dedup_tol)
            {
                entry.score += 1;
                return;
            }
        }
        self.entries.push(ScoredEntry {
            e_tilde,
            support,
            score: 1,
        });
    }

    /// Highest score wins; ties go to the smaller support, then to the entry
    /// recorded first.
    pub fn select(&self) -> Option<&ScoredEntry> {
        let mut best: Option<&ScoredEntry> = None;
        for entry in &self.entries {
            best = match best {
                None => Some(entry),
                Some(b)
                    if entry.score > b.score
                        || (entry.score == b.score && entry.support.len() < b.support.len()) =>
                {
                    Some(entry)
                }
                keep => keep,
            };
        }
        best
    }
}

/// Resolves a scored list to a sparse vector, failing on an empty list.
pub fn score_and_select(list: &ScoredList) -> Result<SparseError> {
    list.select()
        .map(|entry| SparseError::from_dense(entry.e_tilde.clone()))
        .ok_or(Error::DecodeFailure)
}

/// Full decoder: classical fast path first; on failure, `tau` GS trials with
/// `rho = 0..tau-1` erasures ranked by the locator soft information, Newton
/// refinement of every root candidate, validation, scoring, and selection.
///
/// Both the trial radius and the effective length are recomputed from the
/// originals each iteration (`tau - rho` and `n - rho`). The returned error
/// is the list entry of maximal score; an empty list is reported as
/// [`Error::DecodeFailure`], distinct from a recovered zero vector.
pub fn gmd_decode(params: &CodeParams, r: &ReceivedVector, cfg: &GmdConfig) -> Result<Decoded> {
    match run_gmd(params, r, cfg)? {
        TrialsOutcome::Fast(e_hat) => Ok(Decoded {
            error: e_hat,
            path: DecodePath::Bma,
            score: 1,
        }),
        TrialsOutcome::List(list) => {
            let entry = list.select().ok_or(Error::DecodeFailure)?;
            Ok(Decoded {
                error: SparseError::from_dense(entry.e_tilde.clone()),
                path: DecodePath::Gmd,
                score: entry.score,
            })
        }
    }
}

/// Debug hook: same trials as [`gmd_decode`], but the scored list comes back
/// uncollapsed (a fast-path answer shows up as a single entry of score 1).
/// The decoding contract remains the unique selection.
pub fn gmd_decode_list(
    params: &CodeParams,
    r: &ReceivedVector,
    cfg: &GmdConfig,
) -> Result<ScoredList> {
    match run_gmd(params, r, cfg)? {
        TrialsOutcome::Fast(e_hat) => {
            let mut list = ScoredList::default();
            list.record(e_hat.as_dense().to_vec(), cfg.tol.candidate_dedup);
            Ok(list)
        }
        TrialsOutcome::List(list) => Ok(list),
    }
}

enum TrialsOutcome {
    Fast(SparseError),
    List(ScoredList),
}

fn run_gmd(params: &CodeParams, r: &ReceivedVector, cfg: &GmdConfig) -> Result<TrialsOutcome> {
    if r.as_slice().len() != params.n() {
        return Err(Error::LengthMismatch {
            expected: params.n(),
            actual: r.as_slice().len(),
        });
    }
    let tol = &cfg.tol;
    let h = ParityCheck::of(params);

    let (fast, locator) = bma_gz_decode(params, &h, r, tol)?;
    if let Some(e_hat) = fast {
        return Ok(TrialsOutcome::Fast(e_hat));
    }

    let soft = soft_info(params, &locator);
    let mut list = ScoredList::default();
    for rho in 0..cfg.tau {
        let tau_gs = cfg.tau - rho;
        let n_eff = params.n() - rho;
        let erasures = erase_least_reliable(&soft, rho);
        let gs = match choose_params(n_eff, params.k(), tau_gs) {
            Ok(gs) => gs,
            Err(_) => continue, // radius not reachable at this erasure count
        };
        let out = gs_interpolate(params, r, &erasures, &gs, tol);
        if out.degenerate {
            continue;
        }
        let mut raw = mrr(&out.poly, params.k(), tol);
        raw.dedup(tol.candidate_dedup);
        let refined = refine_candidates(params, &out.poly, &raw, cfg.max_candidates, tol);
        for cand in &refined.candidates {
            if let Some(e_tilde) = validate_candidate(params, &cand.coeffs, r, cfg.tau, tol) {
                list.record(e_tilde, tol.candidate_dedup);
            }
        }
    }

    Ok(TrialsOutcome::List(list))
}
