//! Seeded random stick knots for experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::polygon::PolyKnot;

pub const MAX_REJECTIONS: usize = 10_000;

/// Admissible polygon with `sticks` vertices drawn uniformly from the unit
/// cube, redrawing the whole vertex set until validation passes.
pub fn random_polyknot(sticks: usize, seed: u64) -> Result<PolyKnot> {
    if sticks < 4 {
        return Err(Error::Domain(format!("need at least 4 sticks, got {sticks}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let pts: Vec<Point3> = (0..sticks)
            .map(|_| Point3::new(rng.gen(), rng.gen(), rng.gen()))
            .collect();
        if let Ok(p) = PolyKnot::validate(&pts) {
            return Ok(p);
        }
    }
    Err(Error::Generation(MAX_REJECTIONS))
}
