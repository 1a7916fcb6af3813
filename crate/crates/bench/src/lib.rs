//! Benchmark inputs shared by the criterion benches.

use elastic_core::fixtures::{random_srsf, rng};
use elastic_core::Srsf;

/// A reproducible pair of SRSFs with `cells` cells each.
pub fn srsf_pair(seed: u64, cells: usize) -> (Srsf, Srsf) {
    let mut r = rng(seed);
    (random_srsf(&mut r, cells), random_srsf(&mut r, cells))
}
