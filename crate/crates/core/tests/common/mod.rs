#![allow(dead_code)]

use fracyamabe::symbol::a_m;
use fracyamabe::SpectralParams;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters with `1 ≤ k < n/2 − γ`, keeping the regime margin at least `margin`.
pub fn admissible_params(rng: &mut impl Rng, margin: f64) -> SpectralParams {
    loop {
        let n: u32 = rng.gen_range(3..=14);
        let gamma = rng.gen_range(0.02..f64::from(n) / 2.0 - 1.0);
        let room = f64::from(n) / 2.0 - gamma - margin;
        if room <= 1.0 {
            continue;
        }
        let k_max = (room.ceil() as u32 - 1).max(1);
        let k = rng.gen_range(1..=k_max);
        if f64::from(k) < room {
            return SpectralParams::new_extended(n, k, gamma).unwrap();
        }
    }
}

pub fn admissible_strategy() -> impl Strategy<Value = SpectralParams> {
    (3u32..=14, 0.0f64..1.0, 0.0f64..1.0).prop_filter_map("outside regime", |(n, gf, kf)| {
        let nf = f64::from(n);
        let gamma = 0.02 + gf * (nf / 2.0 - 1.05);
        if gamma <= 0.0 {
            return None;
        }
        let room = nf / 2.0 - gamma;
        let k = 1 + (kf * (room - 1.0).max(0.0)).floor() as u32;
        if f64::from(k) < room - 0.02 {
            SpectralParams::new_extended(n, k, gamma).ok()
        } else {
            None
        }
    })
}

/// Circle parameters `k = 1`, `γ < n/2 − 1`.
pub fn circle_strategy() -> impl Strategy<Value = SpectralParams> {
    (4u32..=12, 0.01f64..0.99).prop_map(|(n, gf)| {
        let gamma = gf * (f64::from(n) / 2.0 - 1.0);
        SpectralParams::new_extended(n, 1, gamma).unwrap()
    })
}

pub fn a0(params: &SpectralParams) -> f64 {
    a_m(0, params)
}

pub fn ulp_distance(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if a.signum() != b.signum() {
        return u64::MAX;
    }
    (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
}
