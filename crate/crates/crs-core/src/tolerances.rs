//! Numerical thresholds used by the decoding stages, collected in one record
//! so experiments can sweep them.

/// Tolerance knobs for every threshold comparison in the pipeline.
///
/// All decoders take a `Tolerances` value explicitly; `Tolerances::default()`
/// is tuned for double precision with noise levels up to about 1e-7 per
/// component and error magnitudes of at least 0.1.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Berlekamp-Massey discrepancy cutoff, relative to the largest syndrome
    /// magnitude. Sits above accumulated rounding/noise (measured up to
    /// 1.4e-9 relative on noiseless CRS(32,8) workloads), below the smallest
    /// genuine error contribution (measured down to 9e-6 relative).
    pub bma_discrepancy: f64,
    /// Accept alpha^i as a root of the (monic) error locator when
    /// |Lambda(alpha^i)| falls below this.
    pub root_accept: f64,
    /// Residual gate on ||H e_hat - b||_2, relative to ||b||_2.
    pub residual: f64,
    /// Relative coefficient cleaning threshold inside the modified
    /// Roth-Ruckenstein recursion (coefficients below
    /// `coeff_clean * max|Q|` are zeroed).
    pub coeff_clean: f64,
    /// Newton residual target, as a factor of sqrt(n): the refinement accepts
    /// ||phi(z)||_2 < newton_resid_factor * sqrt(n).
    pub newton_resid_factor: f64,
    /// Stop Newton when the step norm falls below this.
    pub newton_step: f64,
    /// Iteration cap for Newton refinement.
    pub newton_max_iter: usize,
    /// Jacobian condition estimate above which refinement is abandoned.
    pub condition_max: f64,
    /// Univariate roots closer than this are merged to their mean.
    pub root_cluster: f64,
    /// Two refined root candidates are the same polynomial when their
    /// coefficient-wise distance stays below this.
    pub candidate_dedup: f64,
    /// Entries of a candidate error vector below this magnitude do not count
    /// towards its support (and are zeroed in the output).
    pub support: f64,
    /// Relative tie window when picking the smallest singular value.
    pub sv_tie: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            bma_discrepancy: 1e-7,
            root_accept: 1e-6,
            residual: 1e-6,
            coeff_clean: 1e-8,
            newton_resid_factor: 1e-9,
            newton_step: 1e-12,
            newton_max_iter: 50,
            condition_max: 1e12,
            root_cluster: 1e-6,
            candidate_dedup: 1e-6,
            support: 1e-5,
            sv_tie: 1e-12,
        }
    }
}

impl Tolerances {
    /// Newton residual target for a length-`n` evaluation vector.
    pub fn newton_resid(&self, n: usize) -> f64 {
        self.newton_resid_factor * (n as f64).sqrt()
    }

    /// Copy with the noise-sensitive gates raised above the floor a
    /// per-component noise level of `sigma_eta` induces. Locator synthesis
    /// amplifies syndrome noise by the locator coefficient norm (measured up
    /// to a few hundredfold), and locator roots are displaced by orders of
    /// magnitude more than the coefficient perturbation; thresholds below
    /// those floors reject every noisy instance. Off-root locator magnitudes
    /// stay above 1e-2 on these codes, so the raised acceptance gates cannot
    /// admit spurious positions.
    pub fn for_noise(&self, sigma_eta: f64) -> Tolerances {
        let mut adjusted = self.clone();
        if sigma_eta > 0.0 {
            adjusted.bma_discrepancy = adjusted.bma_discrepancy.max(100.0 * sigma_eta);
            adjusted.root_accept = adjusted.root_accept.max(1e4 * sigma_eta);
        }
        adjusted
    }
}
