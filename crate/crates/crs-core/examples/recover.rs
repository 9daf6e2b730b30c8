//! Minimal end-to-end run: compress a sparse vector beyond half the minimum
//! distance, expand, and recover it through the GMD list decoder.

use crs_core::code::{compress, expand, random_sparse_error, NoiseConfig, ParityCheck};
use crs_core::gmd::{gmd_decode, GmdConfig};
use crs_core::{CodeParams, Result};
use rand_chacha::rand_core::SeedableRng;

fn main() -> Result<()> {
    let params = CodeParams::new(16, 4)?;
    let h = ParityCheck::of(&params);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);

    // a sparse vector with 8 nonzeros: beyond half the minimum distance
    let e = random_sparse_error(&params, 8, &mut rng)?;
    let b = compress(&h, &e)?;
    let r = expand(&h, &b, &NoiseConfig::none())?;

    let cfg = GmdConfig::with_practical_radius(&params)?;
    let decoded = gmd_decode(&params, &r, &cfg)?;
    let err = e.squared_distance(decoded.error.as_dense());
    println!(
        "support {:?} recovered with squared error {err:e}",
        e.support()
    );
    assert!(err < 1e-10);
    Ok(())
}
