//! Standard pair grids.
//!
//! By homogeneity the relative half-spread `z` is the only real degree of
//! freedom of a pair, so grids are laid out in `z`; the rescaled and swapped
//! copies exercise homogeneity and symmetry along the way.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::GridSpec;
use crate::means::PositivePair;
use crate::scalar::Real;

const RESCALE_SEED: u64 = 0x5e1f_fe27_2013_1010;

/// Pairs `(1 - z, 1 + z)` for each `z` in `spreads`.
pub fn pairs_from_spreads<T: Real>(spreads: &[T]) -> Vec<PositivePair<T>> {
    spreads
        .iter()
        .map(|&z| PositivePair::from_spread(z, T::one()).expect("spread in [0, 1)"))
        .collect()
}

/// 100 pairs with `z` log-spaced in `[1e-4, 0.999]` at `x + y = 2`, followed
/// by 10 randomly rescaled and randomly ordered copies of randomly chosen
/// entries. The random draw is seeded, so the grid is the same every run.
pub fn default_chain_pairs<T: Real>() -> Vec<PositivePair<T>> {
    let spreads = GridSpec::log(T::lit(1e-4), T::lit(0.999), 100)
        .expect("valid literal grid")
        .points();
    let mut pairs = pairs_from_spreads(&spreads);
    let mut rng = ChaCha8Rng::seed_from_u64(RESCALE_SEED);
    let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    for _ in 0..10 {
        let pick = ((unit() * 100.0) as usize).min(99);
        let lambda = T::lit(10f64.powf(6.0 * unit() - 3.0));
        let p = pairs[pick].scaled(lambda).expect("positive rescaling");
        pairs.push(if unit() < 0.5 { p.swapped() } else { p });
    }
    pairs
}

/// 20 pairs with `z = 0.02, …, 0.92` evenly spaced, at assorted scales and in
/// alternating order.
pub fn identity_pairs<T: Real>() -> Vec<PositivePair<T>> {
    const SCALES: [f64; 5] = [1.0, 0.01, 37.0, 1e4, 0.5];
    (0..20)
        .map(|i| {
            let z = T::lit(0.02 + 0.9 * i as f64 / 19.0);
            let p = PositivePair::from_spread(z, T::lit(SCALES[i % SCALES.len()]))
                .expect("spread in [0, 1)");
            if i % 2 == 1 {
                p.swapped()
            } else {
                p
            }
        })
        .collect()
}

/// 50 pairs with `z = 0, …, 0.99` evenly spaced (the first is diagonal),
/// scales `10^{-3} … 10^{3}`, alternating order.
pub fn round_trip_pairs<T: Real>() -> Vec<PositivePair<T>> {
    (0..50)
        .map(|i| {
            let z = T::lit(0.99 * i as f64 / 49.0);
            let scale = T::lit(10f64.powi(i % 7 - 3));
            let p = PositivePair::from_spread(z, scale).expect("spread in [0, 1)");
            if i % 2 == 1 {
                p.swapped()
            } else {
                p
            }
        })
        .collect()
}
