//! Shared instance generation for the decoding benchmarks.

use crs_core::code::{compress, expand, random_sparse_error, NoiseConfig, ParityCheck};
use crs_core::{CodeParams, ReceivedVector, SparseError};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A ready-to-decode instance: code, parity check and a noiseless received
/// vector carrying a weight-`t` sparse error.
pub struct Instance {
    pub params: CodeParams,
    pub parity: ParityCheck,
    pub error: SparseError,
    pub received: ReceivedVector,
}

/// Builds a deterministic instance for the given code and error weight.
pub fn instance(n: usize, k: usize, t: usize, seed: u64) -> Instance {
    let params = CodeParams::new(n, k).expect("valid code");
    let parity = ParityCheck::of(&params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let error = random_sparse_error(&params, t, &mut rng).expect("t <= n");
    let b = compress(&parity, &error).expect("length checked");
    let received = expand(&parity, &b, &NoiseConfig::none()).expect("length checked");
    Instance {
        params,
        parity,
        error,
        received,
    }
}
