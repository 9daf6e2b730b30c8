//! Bivariate polynomials `Q(x, y) = sum_{mu,nu} Q[nu][mu] x^mu y^nu` stored as
//! a per-y-power coefficient grid, with the transforms the root finder needs.

use num_complex::Complex64;

use crate::numerics::binomial;

/// Coefficient grid of `Q(x, y)`; `coeffs[nu][mu]` multiplies `x^mu y^nu`.
/// Rows may have different lengths (the interpolation degree bounds shrink
/// with the y-power).
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<Complex64>>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Vec<Complex64>>) -> Self {
        assert!(!coeffs.is_empty(), "at least the y^0 row is required");
        BivariatePoly { coeffs }
    }

    /// Single row `Q(x, y) = p(x) * y^nu`.
    pub fn from_univariate(p: &[Complex64], nu: usize) -> Self {
        let mut coeffs = vec![vec![]; nu + 1];
        coeffs[nu] = p.to_vec();
        BivariatePoly { coeffs }
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }

    /// Structural y-degree bound (number of rows minus one).
    pub fn y_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Effective y-degree: largest nu with a nonzero row, if any.
    pub fn y_degree(&self) -> Option<usize> {
        (0..self.coeffs.len())
            .rev()
            .find(|&nu| self.coeffs[nu].iter().any(|c| c.norm() != 0.0))
    }

    pub fn coeff(&self, mu: usize, nu: usize) -> Complex64 {
        self.coeffs
            .get(nu)
            .and_then(|row| row.get(mu))
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.norm() == 0.0)
    }

    /// Squared Frobenius norm of the coefficient grid.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    /// Zeroes every coefficient with magnitude below `eps_rel * max|Q|`.
    pub fn cleaned(&self, eps_rel: f64) -> Self {
        let cutoff = eps_rel * self.max_abs();
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&c| {
                        if c.norm() < cutoff {
                            Complex64::ZERO
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        BivariatePoly { coeffs }
    }

    /// Largest `m` such that `x^m` divides the polynomial (exact zero test;
    /// clean first). `None` when the polynomial is identically zero.
    pub fn x_divisibility(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter_map(|row| row.iter().position(|c| c.norm() != 0.0))
            .min()
    }

    /// Divides by `x^m`, dropping the first `m` coefficients of every row.
    /// Requires the dropped coefficients to be zero.
    pub fn divide_x(&self, m: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                debug_assert!(row.iter().take(m).all(|c| c.norm() == 0.0));
                row.iter().skip(m).copied().collect()
            })
            .collect();
        BivariatePoly { coeffs }
    }

    /// Coefficient vector of `Q(0, y)` in ascending y-powers.
    pub fn at_x_zero(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|row| row.first().copied().unwrap_or(Complex64::ZERO))
            .collect()
    }

    /// Evaluates `Q(x, y)` by Horner in both variables.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::ZERO, |acc, row| {
            acc * y + crate::code::horner(row, x)
        })
    }

    /// Evaluates `dQ/dy` at `(x, y)`.
    pub fn evaluate_dy(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for nu in (1..self.coeffs.len()).rev() {
            acc = acc * y + crate::code::horner(&self.coeffs[nu], x) * (nu as f64);
        }
        acc
    }

    /// Hasse derivative of order `(a, b)` evaluated at `(x, y)`:
    /// `sum binom(mu, a) binom(nu, b) Q[nu][mu] x^(mu-a) y^(nu-b)`.
    pub fn hasse_evaluate(&self, a: usize, b: usize, x: Complex64, y: Complex64) -> Complex64 {
        let mut total = Complex64::ZERO;
        for (nu, row) in self.coeffs.iter().enumerate() {
            if nu < b {
                continue;
            }
            let wb = binomial(nu, b);
            let mut inner = Complex64::ZERO;
            let mut xpow = Complex64::ONE;
            for (mu, &c) in row.iter().enumerate() {
                if mu >= a {
                    inner += c * binomial(mu, a) * xpow;
                    xpow *= x;
                }
            }
            total += inner * wb * y.powu((nu - b) as u32);
        }
        total
    }

    /// Substitution `T(x, y) = Q(x, x*y + gamma)`, used by the root-finding
    /// recursion. The y-degree is preserved; x-degrees grow by the y-power.
    pub fn shift_substitute(&self, gamma: Complex64) -> Self {
        let ell = self.coeffs.len() - 1;
        let max_len = self.coeffs.iter().map(|row| row.len()).max().unwrap_or(0);
        let mut out = vec![vec![Complex64::ZERO; max_len + ell]; ell + 1];
        for (nu, row) in self.coeffs.iter().enumerate() {
            // (x*y + gamma)^nu = sum_b binom(nu,b) x^b y^b gamma^(nu-b)
            for b in 0..=nu {
                let w = binomial(nu, b) * gamma.powu((nu - b) as u32);
                if w.norm() == 0.0 {
                    continue;
                }
                for (mu, &c) in row.iter().enumerate() {
                    out[b][mu + b] += c * w;
                }
            }
        }
        BivariatePoly { coeffs: out }
    }

    /// Coefficients of the univariate polynomial `Q(x, g(x))`.
    pub fn compose_with(&self, g: &[Complex64]) -> Vec<Complex64> {
        let mut acc = vec![Complex64::ZERO];
        for row in self.coeffs.iter().rev() {
            acc = poly_mul(&acc, g);
            acc = poly_add(&acc, row);
        }
        acc
    }
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}
