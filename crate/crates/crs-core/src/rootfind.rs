//! Extraction of the degree-bounded y-roots of the interpolation polynomial.
//!
//! Over the complex numbers the classical Roth-Ruckenstein recursion is
//! numerically fragile: tiny coefficient noise makes its exact-zero tests and
//! its final exactness check meaningless, and errors in early root digits are
//! amplified exponentially through the later coefficients. The modified
//! recursion here (a) zeroes relatively small coefficients before measuring
//! x-divisibility, (b) keeps every leaf candidate instead of testing
//! `Q(x, g(x)) = 0`, and (c) leaves the cleanup to a Newton refinement over
//! the evaluation map
//!
//! ```text
//! phi_i(g) = Q(alpha^i, g(alpha^i)),  i = 1..n,
//! ```
//!
//! which is solved in the least-squares sense with an explicit Jacobian
//! `dphi_i/dg_j = alpha^(i j) * dQ/dy(alpha^i, g(alpha^i))`. Raw candidates
//! are truncated to their reliable low-order half before refinement, since
//! that is where the recursion is still accurate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bivariate::BivariatePoly;
use crate::code::{horner, CodeParams};
use crate::error::{Error, Result};
use crate::numerics::{companion_eigenvalues, lsq_solve};
use crate::tolerances::Tolerances;

/// One y-root candidate of degree below `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Ascending coefficients, always of length `k`.
    pub coeffs: Vec<Complex64>,
    pub refined: bool,
    pub converged: bool,
    /// `||phi||_2` after refinement (NaN while raw).
    pub residual: f64,
}

impl Candidate {
    fn raw(coeffs: Vec<Complex64>) -> Self {
        Candidate {
            coeffs,
            refined: false,
            converged: false,
            residual: f64::NAN,
        }
    }
}

/// The set `U` of root candidates produced by the recursion, in discovery
/// order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateSet {
    pub candidates: Vec<Candidate>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Removes candidates that agree coefficient-wise within `tol` with an
    /// earlier one (first occurrence wins).
    pub fn dedup(&mut self, tol: f64) {
        let mut kept: Vec<Candidate> = Vec::with_capacity(self.candidates.len());
        'outer: for cand in self.candidates.drain(..) {
            for prev in &kept {
                let dist = cand
                    .coeffs
                    .iter()
                    .zip(&prev.coeffs)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                if dist < tol {
                    continue 'outer;
                }
            }
            kept.push(cand);
        }
        self.candidates = kept;
    }
}

/// All complex roots of `p` (ascending coefficients) via eigenvalues of the
/// balanced companion matrix. Roots closer than `tol.root_cluster` are merged
/// to their mean; the result is sorted lexicographically by (re, im).
pub fn univariate_roots(p: &[Complex64], tol: &Tolerances) -> Result<Vec<Complex64>> {
    let deg = match p.iter().rposition(|c| c.norm() != 0.0) {
        Some(d) => d,
        None => return Err(Error::ZeroPolynomial),
    };
    if deg == 0 {
        return Ok(vec![]);
    }
    let lead = p[deg];
    let monic_lower: Vec<Complex64> = p[..deg].iter().map(|c| c / lead).collect();
    let eigs = companion_eigenvalues(&monic_lower)?;
    Ok(cluster_roots(eigs, tol.root_cluster))
}

fn cluster_roots(mut roots: Vec<Complex64>, radius: f64) -> Vec<Complex64> {
    roots.sort_by(complex_lex);
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for r in roots {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|m| (m - r).norm() < radius))
        {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }
    let mut means: Vec<Complex64> = clusters
        .iter()
        .map(|c| c.iter().sum::<Complex64>() / c.len() as f64)
        .collect();
    means.sort_by(complex_lex);
    means
}

fn complex_lex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Modified Roth-Ruckenstein recursion. Starts at depth 0 and emits every
/// depth-(k-1) leaf as a raw candidate; branches whose cleaned polynomial
/// vanishes are pruned, and the total leaf count is capped at `4 * (ell + 1)`
/// with the budget split fairly across sibling branches so no subtree starves
/// the others.
pub fn mrr(q: &BivariatePoly, k: usize, tol: &Tolerances) -> CandidateSet {
    assert!(k >= 1);
    let ell = q.y_bound().max(1);
    let ctx = MrrContext { k, ell, tol };
    let mut budget = 4 * (ell + 1);
    let mut out = CandidateSet::default();
    let mut g = vec![Complex64::ZERO; k];
    mrr_recurse(&ctx, q, 0, &mut g, &mut out, &mut budget);
    out
}

struct MrrContext<'a> {
    k: usize,
    ell: usize,
    tol: &'a Tolerances,
}

fn mrr_recurse(
    ctx: &MrrContext<'_>,
    q: &BivariatePoly,
    depth: usize,
    g: &mut Vec<Complex64>,
    out: &mut CandidateSet,
    budget: &mut usize,
) {
    if *budget == 0 {
        return;
    }
    let cleaned = q.cleaned(ctx.tol.coeff_clean);
    let m = match cleaned.x_divisibility() {
        Some(m) => m,
        None => return, // identically zero after cleaning
    };
    let t = cleaned.divide_x(m);
    let p = t.at_x_zero();
    let mut roots = match univariate_roots(&p, ctx.tol) {
        Ok(r) => r,
        Err(_) => return,
    };
    roots.truncate(ctx.ell);
    if roots.is_empty() {
        return;
    }
    for (idx, gamma) in roots.iter().enumerate() {
        if *budget == 0 {
            break;
        }
        g[depth] = *gamma;
        if depth == ctx.k - 1 {
            out.candidates.push(Candidate::raw(g.clone()));
            *budget -= 1;
        } else {
            // fair share of the remaining leaf budget for this branch
            let remaining = roots.len() - idx;
            let share = (*budget).div_ceil(remaining).min(*budget);
            let mut child = share;
            let sub = t.shift_substitute(*gamma);
            mrr_recurse(ctx, &sub, depth + 1, g, out, &mut child);
            *budget -= share - child;
        }
    }
}

/// Refines up to `max_candidates` raw candidates: each gets a truncated
/// Newton start, the converged results replace the raw coefficients with the
/// refinement flags set, and near-duplicates collapse to the first
/// occurrence. Candidates whose refinement does not converge are dropped.
pub fn refine_candidates(
    params: &CodeParams,
    q: &BivariatePoly,
    raw: &CandidateSet,
    max_candidates: usize,
    tol: &Tolerances,
) -> CandidateSet {
    let k = raw.candidates.first().map_or(0, |c| c.coeffs.len());
    let mut refined = CandidateSet::default();
    for cand in raw.candidates.iter().take(max_candidates) {
        let z0 = truncate_start(&cand.coeffs, k);
        let state = newton_refine(params, q, &z0, tol);
        if !state.converged {
            continue;
        }
        refined.candidates.push(Candidate {
            coeffs: state.z,
            refined: true,
            converged: true,
            residual: state.residual,
        });
    }
    refined.dedup(tol.candidate_dedup);
    refined
}

/// Truncated Newton start: keep coefficients `0..=floor(k/2)` of the raw
/// candidate and zero the unreliable tail.
pub fn truncate_start(g: &[Complex64], k: usize) -> Vec<Complex64> {
    let m = k / 2;
    (0..k)
        .map(|j| {
            if j <= m {
                g.get(j).copied().unwrap_or(Complex64::ZERO)
            } else {
                Complex64::ZERO
            }
        })
        .collect()
}

/// Evaluation map `phi(g) = (Q(alpha^i, g(alpha^i)))_{i=1..n}`.
pub fn evaluate_phi(params: &CodeParams, q: &BivariatePoly, g: &[Complex64]) -> Vec<Complex64> {
    (0..params.n())
        .map(|i| {
            let x = params.point(i);
            q.evaluate(x, horner(g, x))
        })
        .collect()
}

/// Jacobian of the evaluation map: `J[i][j] = alpha^(i j) * dQ/dy` at
/// `(alpha^i, g(alpha^i))`. Rows with only a constant y-dependence vanish.
pub fn jacobian(params: &CodeParams, q: &BivariatePoly, g: &[Complex64]) -> DMatrix<Complex64> {
    let n = params.n();
    let k = g.len();
    let mut jac = DMatrix::<Complex64>::zeros(n, k);
    for i in 0..n {
        let x = params.point(i);
        let dy = q.evaluate_dy(x, horner(g, x));
        let mut xpow = Complex64::ONE;
        for j in 0..k {
            jac[(i, j)] = dy * xpow;
            xpow *= x;
        }
    }
    jac
}

/// Final state of a Newton refinement.
#[derive(Debug, Clone)]
pub struct NewtonState {
    pub z: Vec<Complex64>,
    pub iterations: usize,
    pub residual: f64,
    /// True when the residual target was met or the iteration reached a
    /// stationary point (vanishing step). Ill-conditioned Jacobians,
    /// divergence and iteration exhaustion leave this false.
    pub converged: bool,
    /// `||phi||_2` after each accepted iterate, starting with the input.
    pub residual_history: Vec<f64>,
}

/// Damped Newton iteration on `phi(z) = 0`, solving the overdetermined
/// update system in the least-squares sense.
///
/// Stops when `||phi|| < tol.newton_resid(n)`, when the step norm falls
/// below `tol.newton_step`, or after `tol.newton_max_iter` iterations. Steps
/// that would grow the residual are halved up to five times; an iterate is
/// never accepted when it grows the residual more than tenfold.
pub fn newton_refine(
    params: &CodeParams,
    q: &BivariatePoly,
    z0: &[Complex64],
    tol: &Tolerances,
) -> NewtonState {
    let n = params.n();
    let target = tol.newton_resid(n);
    let mut z = z0.to_vec();
    let mut residual = phi_norm(params, q, &z);
    let mut history = vec![residual];
    let mut converged = residual < target;
    let mut iterations = 0;

    while !converged && iterations < tol.newton_max_iter {
        let jac = jacobian(params, q, &z);
        let phi = DVector::from_vec(evaluate_phi(params, q, &z));
        let (delta, cond) = match lsq_solve(&jac, &(-phi)) {
            Ok(sol) => sol,
            Err(_) => break,
        };
        if !cond.is_finite() || cond > tol.condition_max {
            break;
        }
        if delta.norm() < tol.newton_step {
            // stationary point of the least-squares problem
            converged = true;
            break;
        }

        // damped line step: halve while the residual grows, keep the best
        let mut scale = 1.0;
        let mut best: Option<(Vec<Complex64>, f64)> = None;
        for _ in 0..=5 {
            let trial: Vec<Complex64> = z
                .iter()
                .zip(delta.iter())
                .map(|(zi, di)| zi + di * scale)
                .collect();
            let r = phi_norm(params, q, &trial);
            if best.as_ref().is_none_or(|(_, rb)| r < *rb) {
                best = Some((trial, r));
            }
            if r < residual {
                break;
            }
            scale *= 0.5;
        }
        let (z_new, r_new) = best.expect("at least one damping trial");
        if r_new > 10.0 * residual {
            break;
        }
        z = z_new;
        residual = r_new;
        history.push(residual);
        iterations += 1;
        if residual < target {
            converged = true;
        }
    }

    NewtonState {
        z,
        iterations,
        residual,
        converged,
        residual_history: history,
    }
}

fn phi_norm(params: &CodeParams, q: &BivariatePoly, g: &[Complex64]) -> f64 {
    evaluate_phi(params, q, g)
        .iter()
        .map(|v| v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}
