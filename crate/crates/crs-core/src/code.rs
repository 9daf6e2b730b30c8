//! Complex Reed-Solomon codes and the compressed-sensing maps built on them.
//!
//! A codeword is `(1/sqrt(n)) * (C(alpha^1), ..., C(alpha^n))` for a message
//! polynomial `C` of degree below `k`, with `alpha = exp(-j*2*pi/n)`. The
//! parity-check matrix `H` consists of the adjoint rows of the unitary DFT at
//! the `n - k` frequencies not occupied by message coefficients, so its rows
//! are orthonormal and its null space is exactly the code. `H` acts as the
//! sensing matrix: a sparse vector `e` compresses to the syndrome `b = H e`,
//! and `r = H^* b + eta` expands the measurement back to length `n`, where it
//! decomposes as codeword + sparse error + noise.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Code geometry: length, dimension, minimum distance and evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeParams {
    n: usize,
    k: usize,
    d: usize,
    alpha_powers: Vec<Complex64>,
}

impl CodeParams {
    /// Builds the `CRS(n, k)` code with `d = n - k + 1` and the evaluation
    /// points `alpha^i` for `i = 1..n`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 || k >= n {
            return Err(Error::InvalidCodeParams { n, k });
        }
        let alpha_powers = (1..=n)
            .map(|i| Complex64::from_polar(1.0, -TAU * i as f64 / n as f64))
            .collect();
        Ok(CodeParams {
            n,
            k,
            d: n - k + 1,
            alpha_powers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `d = n - k + 1`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Half-minimum-distance radius of the classical decoder.
    pub fn tau_bma(&self) -> usize {
        (self.d - 1) / 2
    }

    /// Evaluation points `alpha^1, ..., alpha^n` in coordinate order.
    pub fn alpha_powers(&self) -> &[Complex64] {
        &self.alpha_powers
    }

    /// Evaluation point of coordinate `idx` (0-based), i.e. `alpha^(idx+1)`.
    pub fn point(&self, idx: usize) -> Complex64 {
        self.alpha_powers[idx]
    }
}

/// Message polynomial `C(x)` with `deg C < k`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct MessagePoly(pub Vec<Complex64>);

impl MessagePoly {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    /// Draws a message with i.i.d. standard complex normal coefficients.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        MessagePoly((0..k).map(|_| standard_complex(rng)).collect())
    }
}

/// A sparse vector together with its support and sparsity.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseError {
    values: Vec<Complex64>,
    support: Vec<usize>,
}

impl SparseError {
    /// Wraps a dense vector; the support is derived from its exact nonzeros.
    pub fn from_dense(values: Vec<Complex64>) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() != 0.0)
            .map(|(i, _)| i)
            .collect();
        SparseError { values, support }
    }

    /// Builds a length-`n` vector from `(index, value)` pairs.
    pub fn from_parts(n: usize, entries: &[(usize, Complex64)]) -> Self {
        let mut values = vec![Complex64::ZERO; n];
        for &(i, v) in entries {
            values[i] = v;
        }
        SparseError::from_dense(values)
    }

    pub fn as_dense(&self) -> &[Complex64] {
        &self.values
    }

    /// Support set `E = { i | e_i != 0 }`, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Sparsity `t = #E`.
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    /// Squared Euclidean distance to another dense vector.
    pub fn squared_distance(&self, other: &[Complex64]) -> f64 {
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum()
    }
}

/// Syndrome (measurement vector) `b` with `b = H e`.
#[derive(Debug, Clone, PartialEq)]
pub struct Syndrome(pub Vec<Complex64>);

impl Syndrome {
    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Expanded measurement `r = H^* b + eta`, the GS interpolation ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedVector(pub Vec<Complex64>);

impl ReceivedVector {
    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }
}

/// Noise model: each component gets independent real and imaginary Gaussian
/// parts with standard deviation `sigma_eta / sqrt(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    pub sigma_eta: f64,
    pub seed: u64,
}

impl NoiseConfig {
    /// The noiseless configuration.
    pub fn none() -> Self {
        NoiseConfig {
            sigma_eta: 0.0,
            seed: 0,
        }
    }
}

/// Parity-check matrix with orthonormal rows whose null space is the code.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityCheck {
    n: usize,
    k: usize,
    matrix: DMatrix<Complex64>,
}

impl ParityCheck {
    /// Builds `H` for the given code: row `m` (for `m = k..n-1`) has entries
    /// `(1/sqrt(n)) * conj(alpha^(i*m))` at coordinate `i - 1`.
    pub fn of(params: &CodeParams) -> Self {
        let n = params.n;
        let k = params.k;
        let scale = 1.0 / (n as f64).sqrt();
        let matrix = DMatrix::from_fn(n - k, n, |row, col| {
            let m = (k + row) as f64;
            let i = (col + 1) as f64;
            Complex64::from_polar(scale, TAU * i * m / n as f64)
        });
        ParityCheck { n, k, matrix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Applies `H` to a length-`n` vector, yielding its syndrome.
    pub fn syndrome_of(&self, v: &[Complex64]) -> Result<Syndrome> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: v.len(),
            });
        }
        let x = DVector::from_column_slice(v);
        let b = &self.matrix * x;
        Ok(Syndrome(b.iter().copied().collect()))
    }

    /// Residual `||H v - b||_2`.
    pub fn residual(&self, v: &[Complex64], b: &Syndrome) -> f64 {
        let s = self.syndrome_of(v).expect("length checked by caller");
        s.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Evaluates the message polynomial at all points, scaled by `1/sqrt(n)`.
pub fn encode(params: &CodeParams, msg: &MessagePoly) -> Result<Vec<Complex64>> {
    if msg.0.len() > params.k {
        return Err(Error::DegreeTooLarge {
            degree: msg.0.len() - 1,
            k: params.k,
        });
    }
    let scale = 1.0 / (params.n as f64).sqrt();
    Ok(params
        .alpha_powers
        .iter()
        .map(|&x| horner(&msg.0, x) * scale)
        .collect())
}

/// Compresses a sparse vector into its syndrome `b = H e`.
pub fn compress(h: &ParityCheck, e: &SparseError) -> Result<Syndrome> {
    h.syndrome_of(e.as_dense())
}

/// Expands a syndrome back to length `n` via `r = H^* b + eta`.
///
/// With `sigma_eta = 0` the result is the orthogonal projection of the sparse
/// vector onto the row space of `H`, so `H r = b` and `r - e` is a codeword.
pub fn expand(h: &ParityCheck, b: &Syndrome, noise: &NoiseConfig) -> Result<ReceivedVector> {
    if b.0.len() != h.n - h.k {
        return Err(Error::LengthMismatch {
            expected: h.n - h.k,
            actual: b.0.len(),
        });
    }
    let bv = DVector::from_column_slice(&b.0);
    let r = h.matrix.adjoint() * bv;
    let mut out: Vec<Complex64> = r.iter().copied().collect();
    if noise.sigma_eta > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        let sigma = noise.sigma_eta / 2.0_f64.sqrt();
        for v in &mut out {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v += Complex64::new(re * sigma, im * sigma);
        }
    }
    Ok(ReceivedVector(out))
}

/// Draws a sparse vector with `t` nonzeros on a uniform random support.
///
/// Values are complex with i.i.d. standard normal real and imaginary parts,
/// redrawn while the magnitude falls below 0.1 so that genuine errors stay
/// separated from the noise floor.
pub fn random_sparse_error<R: Rng + ?Sized>(
    params: &CodeParams,
    t: usize,
    rng: &mut R,
) -> Result<SparseError> {
    if t > params.n {
        return Err(Error::SparsityOutOfRange { t, n: params.n });
    }
    let mut support: Vec<usize> = rand::seq::index::sample(rng, params.n, t).into_vec();
    support.sort_unstable();
    let mut values = vec![Complex64::ZERO; params.n];
    for &i in &support {
        values[i] = loop {
            let v = standard_complex(rng);
            if v.norm() >= 0.1 {
                break v;
            }
        };
    }
    Ok(SparseError { values, support })
}

/// Coefficients of the unique degree-below-`k` polynomial that interpolates
/// the given codeword values at the evaluation points, recovered through the
/// inverse unitary transform: `g_m = (1/n) * sum_i v_i * conj(alpha^(i m))`.
///
/// For `v = encode(msg)` this returns the message coefficients scaled by
/// `1/sqrt(n)`; it is the y-root the interpolation step is after.
pub fn interpolate_codeword(params: &CodeParams, values: &[Complex64]) -> Result<Vec<Complex64>> {
    if values.len() != params.n() {
        return Err(Error::LengthMismatch {
            expected: params.n(),
            actual: values.len(),
        });
    }
    let n = params.n() as f64;
    Ok((0..params.k())
        .map(|m| {
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| v * params.point(i).powu(m as u32).conj())
                .sum::<Complex64>()
                / n
        })
        .collect())
}

/// Horner evaluation of an ascending-coefficient polynomial.
pub fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::ZERO, |acc, &c| acc * x + c)
}

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}
