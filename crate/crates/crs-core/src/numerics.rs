//! Dense complex linear algebra plumbing shared by the decoding stages.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Right singular vector for the smallest singular value of `a`, together
/// with that singular value.
///
/// Wide matrices are padded with zero rows before the SVD so the full set of
/// right singular vectors (including the exact null space) is available.
/// When several trailing singular values tie within `tie_rel * sigma_max`,
/// the vector with the smallest index in the descending ordering is chosen,
/// keeping runs reproducible.
pub(crate) fn kernel_vector(a: &DMatrix<Complex64>, tie_rel: f64) -> (DVector<Complex64>, f64) {
    let (m, n) = a.shape();
    assert!(n > 0, "kernel of an empty matrix");
    let square = if m < n {
        let mut padded = DMatrix::zeros(n, n);
        padded.view_mut((0, 0), (m, n)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = square.svd(false, true);
    let sv = &svd.singular_values;
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let last = sv.len() - 1;
    let sigma_min = sv[last];
    let sigma_max = sv[0];
    // singular values are sorted descending; walk forward to the first one
    // inside the tie window of sigma_min
    let mut pick = last;
    for i in 0..=last {
        if sv[i] - sigma_min <= tie_rel * sigma_max {
            pick = i;
            break;
        }
    }
    // rows of v_t are the adjoints of the right singular vectors
    let q = v_t.row(pick).adjoint();
    (q, sv[pick])
}

/// Least-squares solution of `a x = b` via SVD, with a condition estimate.
///
/// Returns the minimum-norm solution and `sigma_max / sigma_min`.
pub(crate) fn lsq_solve(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
) -> Result<(DVector<Complex64>, f64)> {
    lsq_solve_impl(a, b, 0)
}

/// Least-squares solve with one step of iterative refinement. For consistent
/// systems this squares the `cond * eps` error of the plain solve away,
/// which the exact-recovery contract of the error-value solver relies on
/// when the support is clustered (nearly aligned columns).
pub(crate) fn lsq_solve_refined(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
) -> Result<(DVector<Complex64>, f64)> {
    lsq_solve_impl(a, b, 1)
}

fn lsq_solve_impl(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    refine_steps: usize,
) -> Result<(DVector<Complex64>, f64)> {
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let sigma_max = sv[0];
    let sigma_min = sv[sv.len() - 1];
    if sigma_max == 0.0 {
        return Err(Error::RankDeficient);
    }
    let eps = sigma_max * 1e-14;
    let mut x = svd.solve(b, eps).map_err(|_| Error::RankDeficient)?;
    for _ in 0..refine_steps {
        let residual = b - a * &x;
        let correction = svd
            .solve(&residual, eps)
            .map_err(|_| Error::RankDeficient)?;
        x += correction;
    }
    let cond = if sigma_min > 0.0 {
        sigma_max / sigma_min
    } else {
        f64::INFINITY
    };
    Ok((x, cond))
}

/// Eigenvalues of the (balanced) companion matrix of a monic polynomial
/// `x^q + c[q-1] x^(q-1) + ... + c[0]`.
pub(crate) fn companion_eigenvalues(monic_lower: &[Complex64]) -> Result<Vec<Complex64>> {
    let q = monic_lower.len();
    assert!(q > 0);
    let mut m = DMatrix::<Complex64>::zeros(q, q);
    for i in 1..q {
        m[(i, i - 1)] = Complex64::ONE;
    }
    for i in 0..q {
        m[(i, q - 1)] = -monic_lower[i];
    }
    balance(&mut m);
    let schur =
        nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000).ok_or(Error::EigenFailure)?;
    let eig = schur.eigenvalues().ok_or(Error::EigenFailure)?;
    Ok(eig.iter().copied().collect())
}

/// Parlett-Reinsch balancing: diagonal similarity scaling by powers of two
/// until row and column norms roughly agree. Leaves eigenvalues unchanged.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| m[(j, i)].norm()).sum();
            let mut r: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].norm()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if c + r < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Exact binomial coefficient as a float (arguments stay far below overflow).
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as f64
}
