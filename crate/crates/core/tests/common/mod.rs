#![allow(dead_code)]

use fairassort::{DualMatrix, Instance};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Outcome families used to vary the random instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    MarketShare,
    Revenue,
    General,
    Visibility,
    UniformVisibility,
}

pub const KINDS: [Kind; 5] = [Kind::MarketShare, Kind::Revenue, Kind::General, Kind::Visibility, Kind::UniformVisibility];

pub fn random_instance(rng: &mut ChaCha8Rng, kind: Kind, n: usize, k: usize, delta: f64) -> Instance {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
    let q: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let r: Vec<f64> = match kind {
        Kind::UniformVisibility => vec![rng.gen_range(0.5..1.0); n],
        _ => (0..n).map(|_| rng.gen_range(0.1..1.0)).collect(),
    };
    match kind {
        Kind::MarketShare => Instance::market_share(k, delta, r, w, q),
        Kind::Revenue => Instance::revenue(k, delta, r, w, q),
        Kind::Visibility | Kind::UniformVisibility => Instance::visibility(k, delta, r, w, q),
        Kind::General => {
            let a = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let b = (0..n).map(|_| rng.gen_range(0.0..0.5)).collect();
            Instance::new(k, delta, a, b, r, w, q)
        }
    }
    .unwrap()
}

/// Off-diagonal entries `U[0, hi]`, zero diagonal.
pub fn random_dual(rng: &mut ChaCha8Rng, n: usize, hi: f64) -> DualMatrix {
    let mut z = DualMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                z.set(i, j, rng.gen_range(0.0..hi));
            }
        }
    }
    z
}
