//! Guruswami-Sudan interpolation: decoding-radius arithmetic, parameter
//! selection, assembly of the multiplicity-constrained linear system, and the
//! SVD kernel solve, with erasure support.
//!
//! The interpolation polynomial `Q(x, y)` must vanish with multiplicity `s`
//! at every non-erased point `(alpha^i, r_i)` (enforced through Hasse
//! derivatives of all orders `a + b < s`), be nonzero, and obey the per-row
//! degree bounds `deg Q_nu <= s(n_eff - tau) - nu(k-1) - 1`. The radius bound
//!
//! ```text
//! tau < min( n(2l - s + 1) / (2(l + 1)) - l(k-1) / (2s),  n - l(k-1)/s )
//! ```
//!
//! is evaluated in exact integer arithmetic so radius selection is never at
//! the mercy of floating-point rounding.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bivariate::BivariatePoly;
use crate::code::{CodeParams, ReceivedVector};
use crate::error::{Error, Result};
use crate::numerics::{binomial, kernel_vector};
use crate::tolerances::Tolerances;

/// Search cap for the parameter-selection sweep. Radii this close to the
/// Johnson bound need list sizes no experiment here would run anyway.
const ELL_CAP: usize = 256;

/// Guruswami-Sudan trial parameters: multiplicity, list size, design radius
/// and the number of interpolation points left after erasures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GsParams {
    pub s: usize,
    pub ell: usize,
    pub tau: usize,
    pub n_eff: usize,
}

/// Coordinates excluded from interpolation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ErasureSet(BTreeSet<usize>);

impl ErasureSet {
    pub fn empty() -> Self {
        ErasureSet(BTreeSet::new())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        ErasureSet(indices.into_iter().collect())
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.contains(&idx)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

/// Largest integer radius strictly below p/q (q > 0).
fn strict_floor(p: i128, q: i128) -> i128 {
    (p - 1).div_euclid(q)
}

/// Largest decoding radius for multiplicity `s` and list size `ell`, or
/// `None` when no nonnegative radius satisfies the bound.
pub fn decoding_radius(n: usize, k: usize, s: usize, ell: usize) -> Option<usize> {
    if s == 0 || ell < s || k >= n {
        return None;
    }
    let (n, k, s, ell) = (n as i128, k as i128, s as i128, ell as i128);
    // first bound: n(2l - s + 1) / (2(l+1)) - l(k-1) / (2s)
    let p1 = n * s * (2 * ell - s + 1) - ell * (k - 1) * (ell + 1);
    let q1 = 2 * s * (ell + 1);
    // second bound: n - l(k-1)/s
    let p2 = n * s - ell * (k - 1);
    let q2 = s;
    let (p, q) = if p1 * q2 <= p2 * q1 {
        (p1, q1)
    } else {
        (p2, q2)
    };
    let tau = strict_floor(p, q);
    if tau < 0 {
        None
    } else {
        Some(tau as usize)
    }
}

/// Largest integer strictly below `n - sqrt(n(n-d))`, the generic list
/// decoding limit.
pub fn johnson_radius(n: usize, d: usize) -> usize {
    debug_assert!(d <= n);
    let prod = n * (n - d);
    // smallest sigma with sigma^2 > prod is isqrt(prod) + 1
    (n - 1).saturating_sub(prod.isqrt())
}

/// Picks `(s, ell)` reaching at least `tau_target`, minimizing the list size
/// first and the multiplicity second (ties broken by the cheaper system).
pub fn choose_params(n_eff: usize, k: usize, tau_target: usize) -> Result<GsParams> {
    if n_eff <= k {
        return Err(Error::InvalidCodeParams { n: n_eff, k });
    }
    let d_eff = n_eff - k + 1;
    let johnson = johnson_radius(n_eff, d_eff);
    if tau_target > johnson {
        return Err(Error::RadiusExceedsJohnson {
            tau: tau_target,
            johnson,
        });
    }
    for ell in 1..=ELL_CAP {
        for s in 1..=ell {
            if let Some(radius) = decoding_radius(n_eff, k, s, ell) {
                if radius >= tau_target {
                    return Ok(GsParams {
                        s,
                        ell,
                        tau: tau_target,
                        n_eff,
                    });
                }
            }
        }
    }
    Err(Error::NoFeasibleRadius)
}

/// The assembled interpolation system together with the unknown layout
/// (nu-major, mu-ascending columns).
#[derive(Debug, Clone)]
pub struct InterpSystem {
    pub matrix: DMatrix<Complex64>,
    /// Number of x-coefficients allotted to each y-power.
    pub col_widths: Vec<usize>,
}

impl InterpSystem {
    /// Unknown-count surplus over the constraint count; a kernel exists
    /// structurally whenever this is positive.
    pub fn margin(&self) -> i64 {
        self.matrix.ncols() as i64 - self.matrix.nrows() as i64
    }
}

/// Number of x-coefficients for each y-power `nu` under the degree bounds.
fn column_widths(k: usize, gs: &GsParams) -> Vec<usize> {
    (0..=gs.ell)
        .map(|nu| {
            let bound =
                gs.s as i64 * (gs.n_eff as i64 - gs.tau as i64) - (nu as i64) * (k as i64 - 1);
            bound.max(0) as usize
        })
        .collect()
}

/// Builds the `M x N` Hasse-derivative constraint matrix: one row per
/// non-erased point and derivative order pair `(a, b)` with `a + b < s`, one
/// column per unknown coefficient `Q[nu][mu]`. Erased coordinates contribute
/// no rows, so their ordinate values cannot influence the result.
pub fn build_system(
    params: &CodeParams,
    r: &ReceivedVector,
    erasures: &ErasureSet,
    gs: &GsParams,
) -> InterpSystem {
    debug_assert_eq!(
        gs.n_eff,
        params.n() - erasures.len(),
        "n_eff inconsistent with erasures"
    );
    let col_widths = column_widths(params.k(), gs);
    let n_cols: usize = col_widths.iter().sum();
    let n_rows = gs.n_eff * s_rows(gs.s);
    let mut matrix = DMatrix::<Complex64>::zeros(n_rows, n_cols);

    let max_width = col_widths.iter().copied().max().unwrap_or(0);
    let mut row = 0;
    for i in 0..params.n() {
        if erasures.contains(i) {
            continue;
        }
        let x = params.point(i);
        let y = r.as_slice()[i];
        let x_pows = power_table(x, max_width);
        let y_pows = power_table(y, gs.ell + 1);
        for order in 0..gs.s {
            for a in (0..=order).rev() {
                let b = order - a;
                let mut col = 0;
                for (nu, &width) in col_widths.iter().enumerate() {
                    if nu < b {
                        col += width;
                        continue;
                    }
                    let w_nu = binomial(nu, b) * y_pows[nu - b];
                    for mu in 0..width {
                        if mu >= a {
                            matrix[(row, col + mu)] = w_nu * binomial(mu, a) * x_pows[mu - a];
                        }
                    }
                    col += width;
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, n_rows);
    InterpSystem { matrix, col_widths }
}

fn s_rows(s: usize) -> usize {
    s * (s + 1) / 2
}

fn power_table(x: Complex64, len: usize) -> Vec<Complex64> {
    let mut pows = Vec::with_capacity(len.max(1));
    pows.push(Complex64::ONE);
    for _ in 1..len.max(1) {
        let last = *pows.last().unwrap();
        pows.push(last * x);
    }
    pows
}

/// Result of the kernel solve: the interpolation polynomial (unit coefficient
/// norm), the smallest singular value as a residual diagnostic, a flag for
/// the degenerate empty-constraint case, and the unknown surplus. A margin
/// of zero or less warns that the system may only have a trivial kernel
/// numerically; parameters from [`choose_params`] always leave it positive.
#[derive(Debug, Clone)]
pub struct InterpOutcome {
    pub poly: BivariatePoly,
    pub sigma_min: f64,
    pub degenerate: bool,
    pub margin: i64,
}

/// Extracts the right singular vector of the smallest singular value and
/// reshapes it into the coefficient grid. Ties within `tol.sv_tie * sigma_max`
/// resolve to the smallest index so repeated runs pick the same vector.
pub fn solve_interpolation(system: &InterpSystem, tol: &Tolerances) -> InterpOutcome {
    let n_cols = system.matrix.ncols();
    if system.matrix.nrows() == 0 || n_cols == 0 {
        // no constraints at all: any unit vector satisfies the system
        let mut rows: Vec<Vec<Complex64>> = system
            .col_widths
            .iter()
            .map(|&w| vec![Complex64::ZERO; w])
            .collect();
        match rows.iter_mut().find(|r| !r.is_empty()) {
            Some(first) => first[0] = Complex64::ONE,
            // even the unknown set is empty: fall back to the constant 1
            None => rows[0] = vec![Complex64::ONE],
        }
        return InterpOutcome {
            poly: BivariatePoly::new(rows),
            sigma_min: 0.0,
            degenerate: true,
            margin: system.margin(),
        };
    }
    let (q, sigma_min) = kernel_vector(&system.matrix, tol.sv_tie);
    let mut rows = Vec::with_capacity(system.col_widths.len());
    let mut offset = 0;
    for &width in &system.col_widths {
        rows.push(q.as_slice()[offset..offset + width].to_vec());
        offset += width;
    }
    InterpOutcome {
        poly: BivariatePoly::new(rows),
        sigma_min,
        degenerate: false,
        margin: system.margin(),
    }
}

/// Full interpolation step: build the constraint system and solve it.
pub fn gs_interpolate(
    params: &CodeParams,
    r: &ReceivedVector,
    erasures: &ErasureSet,
    gs: &GsParams,
    tol: &Tolerances,
) -> InterpOutcome {
    let system = build_system(params, r, erasures, gs);
    solve_interpolation(&system, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{
        compress, expand, interpolate_codeword, random_sparse_error, NoiseConfig, ParityCheck,
    };
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent float evaluation of the radius bound; the epsilon nudge
    /// implements "strictly below" away from representation noise.
    fn radius_oracle(n: usize, k: usize, s: usize, ell: usize) -> Option<i64> {
        let (nf, kf, sf, lf) = (n as f64, k as f64, s as f64, ell as f64);
        let b1 = nf * (2.0 * lf - sf + 1.0) / (2.0 * (lf + 1.0)) - lf * (kf - 1.0) / (2.0 * sf);
        let b2 = nf - lf * (kf - 1.0) / sf;
        let tau = (b1.min(b2) - 1e-9).floor() as i64;
        (tau >= 0).then_some(tau)
    }

    #[test]
    fn decoding_radius_frozen_values() {
        assert_eq!(decoding_radius(16, 4, 3, 6), Some(8));
        assert_eq!(decoding_radius(32, 8, 2, 4), Some(15));
        assert_eq!(decoding_radius(16, 4, 1, 1), Some(6));
    }

    #[test]
    fn decoding_radius_matches_float_oracle() {
        for n in [8usize, 16, 32] {
            for k in 1..n.min(12) {
                for ell in 1..=12 {
                    for s in 1..=ell {
                        let got = decoding_radius(n, k, s, ell).map(|t| t as i64);
                        assert_eq!(
                            got,
                            radius_oracle(n, k, s, ell),
                            "n={n} k={k} s={s} l={ell}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decoding_radius_monotone_in_ell_when_first_bound_rules() {
        for s in 1..=4usize {
            for ell in s..12 {
                let active = |l: usize| {
                    let (nf, kf, sf, lf) = (16.0, 4.0, s as f64, l as f64);
                    let b1 = nf * (2.0 * lf - sf + 1.0) / (2.0 * (lf + 1.0))
                        - lf * (kf - 1.0) / (2.0 * sf);
                    let b2 = nf - lf * (kf - 1.0) / sf;
                    b1 <= b2
                };
                if active(ell) && active(ell + 1) {
                    let lo = decoding_radius(16, 4, s, ell);
                    let hi = decoding_radius(16, 4, s, ell + 1);
                    assert!(hi >= lo, "s={s} ell={ell}: {lo:?} -> {hi:?}");
                }
            }
        }
    }

    #[test]
    fn johnson_radius_frozen_values() {
        assert_eq!(johnson_radius(32, 25), 17);
        assert_eq!(johnson_radius(16, 13), 9);
        assert_eq!(johnson_radius(16, 16), 15);
        assert_eq!(johnson_radius(7, 7), 6);
    }

    #[test]
    fn choose_params_minimizes_ell_then_s() {
        // independent exhaustive search over s <= ell <= 20
        let oracle = |n: usize, k: usize, tau: usize| -> Option<(usize, usize)> {
            for ell in 1..=20 {
                for s in 1..=ell {
                    if radius_oracle(n, k, s, ell).is_some_and(|r| r >= tau as i64) {
                        return Some((s, ell));
                    }
                }
            }
            None
        };

        let got = choose_params(16, 4, 6).unwrap();
        assert_eq!((got.s, got.ell), (1, 1));
        assert_eq!(oracle(16, 4, 6), Some((1, 1)));

        let got = choose_params(16, 4, 8).unwrap();
        assert_eq!((got.s, got.ell), oracle(16, 4, 8).unwrap());
        assert!(decoding_radius(16, 4, got.s, got.ell).unwrap() >= 8);

        let got = choose_params(32, 8, 15).unwrap();
        assert_eq!((got.s, got.ell), oracle(32, 8, 15).unwrap());
    }

    #[test]
    fn decoding_radius_none_when_negative() {
        // large list size with s = 1 pushes the first bound below zero
        assert_eq!(decoding_radius(4, 3, 1, 8), None);
        // degenerate argument orders
        assert_eq!(decoding_radius(16, 4, 0, 1), None);
        assert_eq!(decoding_radius(16, 4, 3, 2), None);
        assert_eq!(decoding_radius(4, 4, 1, 1), None);
    }

    #[test]
    fn choose_params_handles_zero_target() {
        let gs = choose_params(16, 4, 0).unwrap();
        assert_eq!((gs.s, gs.ell), (1, 1));
    }

    #[test]
    fn choose_params_rejects_beyond_johnson() {
        assert!(matches!(
            choose_params(16, 4, 10),
            Err(Error::RadiusExceedsJohnson { johnson: 9, .. })
        ));
    }

    #[test]
    fn build_system_s1_rows_are_monomial_evaluations() {
        let params = CodeParams::new(8, 3).unwrap();
        let r = ReceivedVector(
            (0..8)
                .map(|i| Complex64::new(0.1 * i as f64, -0.05 * i as f64))
                .collect(),
        );
        let gs = GsParams {
            s: 1,
            ell: 1,
            tau: 2,
            n_eff: 8,
        };
        let sys = build_system(&params, &r, &ErasureSet::empty(), &gs);
        assert_eq!(sys.matrix.nrows(), 8);
        // row i = [1, x, x^2, ..., y, y*x, ...]
        for i in 0..8 {
            let x = params.point(i);
            let y = r.as_slice()[i];
            let mut col = 0;
            for (nu, &w) in sys.col_widths.iter().enumerate() {
                for mu in 0..w {
                    let expect = x.powu(mu as u32) * y.powu(nu as u32);
                    assert!((sys.matrix[(i, col + mu)] - expect).norm() < 1e-12);
                }
                col += w;
            }
        }
    }

    #[test]
    fn build_system_row_count_and_order_pairs() {
        let params = CodeParams::new(4, 2).unwrap();
        let r = ReceivedVector(vec![Complex64::new(0.5, 0.0); 4]);
        // erase all but one point; s = 2 gives rows (0,0), (1,0), (0,1)
        let erasures = ErasureSet::from_indices([1, 2, 3]);
        let gs = GsParams {
            s: 2,
            ell: 2,
            tau: 1,
            n_eff: 1,
        };
        let sys = build_system(&params, &r, &erasures, &gs);
        assert_eq!(sys.matrix.nrows(), 3);

        let x = params.point(0);
        let y = r.as_slice()[0];
        // row 1 is the (1,0) Hasse derivative: d/dx of x^mu y^nu
        let mut col = 0;
        for (nu, &w) in sys.col_widths.iter().enumerate() {
            for mu in 0..w {
                let expect = if mu >= 1 {
                    Complex64::new(mu as f64, 0.0) * x.powu(mu as u32 - 1) * y.powu(nu as u32)
                } else {
                    Complex64::ZERO
                };
                assert!((sys.matrix[(1, col + mu)] - expect).norm() < 1e-12);
            }
            col += w;
        }
    }

    #[test]
    fn row_count_identity_under_erasures() {
        let params = CodeParams::new(16, 4).unwrap();
        let r = ReceivedVector(vec![Complex64::new(0.3, 0.1); 16]);
        for rho in [0usize, 1, 3, 5] {
            let erasures = ErasureSet::from_indices(0..rho);
            for s in 1..=3usize {
                let gs = GsParams {
                    s,
                    ell: 4,
                    tau: 4,
                    n_eff: 16 - rho,
                };
                let sys = build_system(&params, &r, &erasures, &gs);
                assert_eq!(sys.matrix.nrows(), (16 - rho) * s * (s + 1) / 2);
            }
        }
    }

    #[test]
    fn erased_ordinates_do_not_matter() {
        let params = CodeParams::new(16, 4).unwrap();
        let mut vals: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64 * 0.2, -(i as f64) * 0.1))
            .collect();
        let erasures = ErasureSet::from_indices([2usize, 9]);
        let gs = GsParams {
            s: 2,
            ell: 4,
            tau: 6,
            n_eff: 14,
        };
        let sys1 = build_system(&params, &ReceivedVector(vals.clone()), &erasures, &gs);
        vals[2] = Complex64::new(999.0, -999.0);
        vals[9] = Complex64::new(-5.0, 123.0);
        let sys2 = build_system(&params, &ReceivedVector(vals), &erasures, &gs);
        assert_eq!(sys1.matrix, sys2.matrix);
    }

    #[test]
    fn noiseless_interpolation_vanishes_and_has_message_root() {
        let params = CodeParams::new(16, 4).unwrap();
        let h = ParityCheck::of(&params);
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(41);

        let e = random_sparse_error(&params, 8, &mut rng).unwrap();
        let b = compress(&h, &e).unwrap();
        let r = expand(&h, &b, &NoiseConfig::none()).unwrap();

        let gs = choose_params(16, 4, 8).unwrap();
        let out = gs_interpolate(&params, &r, &ErasureSet::empty(), &gs, &tol);
        assert!(!out.degenerate);
        assert!(out.sigma_min < 1e-10, "sigma_min {}", out.sigma_min);

        // Q(alpha^i, r_i) ~ 0 at every point
        let max_resid = (0..16)
            .map(|i| out.poly.evaluate(params.point(i), r.as_slice()[i]).norm())
            .fold(0.0, f64::max);
        assert!(max_resid < 1e-8, "pointwise residual {max_resid}");

        // the interpolator of the codeword hidden in r is a y-root of Q
        let codeword: Vec<Complex64> = r
            .as_slice()
            .iter()
            .zip(e.as_dense())
            .map(|(r, e)| r - e)
            .collect();
        assert!(h.syndrome_of(&codeword).unwrap().norm() < 1e-12);
        let root = interpolate_codeword(&params, &codeword).unwrap();
        let comp = out.poly.compose_with(&root);
        let max_coeff = comp.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(max_coeff < 1e-6, "composition coefficient {max_coeff}");
    }

    #[test]
    fn multiplicity_constraints_hold_for_s2() {
        let params = CodeParams::new(16, 4).unwrap();
        let h = ParityCheck::of(&params);
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(43);

        let e = random_sparse_error(&params, 6, &mut rng).unwrap();
        let b = compress(&h, &e).unwrap();
        let r = expand(&h, &b, &NoiseConfig::none()).unwrap();
        let gs = choose_params(16, 4, 8).unwrap();
        assert!(
            gs.s >= 2,
            "expected a multiplicity of at least 2, got {}",
            gs.s
        );
        let out = gs_interpolate(&params, &r, &ErasureSet::empty(), &gs, &tol);

        for i in 0..16 {
            let x = params.point(i);
            let y = r.as_slice()[i];
            for order in 0..gs.s {
                for a in 0..=order {
                    let v = out.poly.hasse_evaluate(a, order - a, x, y).norm();
                    assert!(v < 1e-6, "order ({a},{}) at {i}: {v}", order - a);
                }
            }
        }
    }

    #[test]
    fn all_erased_is_degenerate() {
        let params = CodeParams::new(4, 2).unwrap();
        let r = ReceivedVector(vec![Complex64::ZERO; 4]);
        let erasures = ErasureSet::from_indices(0..4);
        let gs = GsParams {
            s: 1,
            ell: 1,
            tau: 0,
            n_eff: 0,
        };
        let sys = build_system(&params, &r, &erasures, &gs);
        assert_eq!(sys.matrix.nrows(), 0);
        let out = solve_interpolation(&sys, &Tolerances::default());
        assert!(out.degenerate);
        assert!(!out.poly.is_zero());
    }

    #[test]
    fn margin_is_positive_for_chosen_params() {
        let params = CodeParams::new(16, 4).unwrap();
        let r = ReceivedVector(vec![Complex64::new(0.1, 0.1); 16]);
        let tol = Tolerances::default();
        for tau in [6usize, 7, 8] {
            let gs = choose_params(16, 4, tau).unwrap();
            let sys = build_system(&params, &r, &ErasureSet::empty(), &gs);
            assert!(sys.margin() > 0, "tau={tau} margin {}", sys.margin());
            let out = solve_interpolation(&sys, &tol);
            assert_eq!(out.margin, sys.margin());
        }
    }
}
