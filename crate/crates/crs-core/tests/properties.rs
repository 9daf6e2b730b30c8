//! Property tests for the algebraic invariants of the code maps and the
//! statistics helpers.

use num_complex::Complex64;
use proptest::collection::vec;
use proptest::prelude::*;

use crs_core::code::{compress, encode, CodeParams, MessagePoly, ParityCheck, SparseError};
use crs_core::experiment::boxplot_stats;
use crs_core::interp::{build_system, ErasureSet, GsParams};
use crs_core::ReceivedVector;

fn complex_unit() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #[test]
    fn encode_is_linear(
        c1 in vec(complex_unit(), 4),
        c2 in vec(complex_unit(), 4),
        scale in complex_unit(),
    ) {
        let params = CodeParams::new(16, 4).unwrap();
        let combo: Vec<Complex64> = c1.iter().zip(&c2).map(|(a, b)| a * scale + b).collect();
        let lhs = encode(&params, &MessagePoly(combo)).unwrap();
        let e1 = encode(&params, &MessagePoly(c1)).unwrap();
        let e2 = encode(&params, &MessagePoly(c2)).unwrap();
        for i in 0..16 {
            let rhs = e1[i] * scale + e2[i];
            prop_assert!((lhs[i] - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn codewords_lie_in_the_parity_null_space(msg in vec(complex_unit(), 4)) {
        let params = CodeParams::new(16, 4).unwrap();
        let h = ParityCheck::of(&params);
        let cw = encode(&params, &MessagePoly(msg)).unwrap();
        let syn = h.syndrome_of(&cw).unwrap();
        let worst = syn.as_slice().iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(worst < 1e-12);
    }

    #[test]
    fn syndrome_sees_only_the_error(
        msg in vec(complex_unit(), 4),
        err in vec(complex_unit(), 16),
    ) {
        let params = CodeParams::new(16, 4).unwrap();
        let h = ParityCheck::of(&params);
        let cw = encode(&params, &MessagePoly(msg)).unwrap();
        let e = SparseError::from_dense(err);
        let sum: Vec<Complex64> = cw.iter().zip(e.as_dense()).map(|(a, b)| a + b).collect();
        let b_sum = h.syndrome_of(&sum).unwrap();
        let b_err = compress(&h, &e).unwrap();
        for (x, y) in b_sum.as_slice().iter().zip(b_err.as_slice()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn boxplot_is_permutation_invariant(
        values in vec(-1e3f64..1e3, 1..40),
        seed in any::<u64>(),
    ) {
        let base = boxplot_stats(&values).unwrap();
        let mut shuffled = values.clone();
        // cheap deterministic shuffle
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let again = boxplot_stats(&shuffled).unwrap();
        prop_assert_eq!(base, again);
    }

    #[test]
    fn boxplot_quartiles_are_ordered(values in vec(-1e3f64..1e3, 1..40)) {
        let s = boxplot_stats(&values).unwrap();
        prop_assert!(s.q1 <= s.median && s.median <= s.q3);
        let iqr = s.q3 - s.q1;
        for v in &s.outliers {
            prop_assert!(*v < s.q1 - 1.5 * iqr || *v > s.q3 + 1.5 * iqr);
        }
    }

    #[test]
    fn interpolation_rows_ignore_erased_ordinates(
        values in vec(complex_unit(), 16),
        garbage in vec(complex_unit(), 16),
        mask in any::<u16>(),
        s in 1usize..3,
    ) {
        let params = CodeParams::new(16, 4).unwrap();
        let erased: Vec<usize> = (0..16).filter(|i| mask & (1 << i) != 0).collect();
        let n_eff = 16 - erased.len();
        let gs = GsParams { s, ell: 3, tau: 0, n_eff };
        let erasures = ErasureSet::from_indices(erased.iter().copied());

        let sys1 = build_system(&params, &ReceivedVector(values.clone()), &erasures, &gs);
        prop_assert_eq!(sys1.matrix.nrows(), n_eff * s * (s + 1) / 2);

        let mut tampered = values;
        for &i in &erased {
            tampered[i] = garbage[i];
        }
        let sys2 = build_system(&params, &ReceivedVector(tampered), &erasures, &gs);
        prop_assert_eq!(sys1.matrix, sys2.matrix);
    }
}
