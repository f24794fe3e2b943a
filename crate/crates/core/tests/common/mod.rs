#![allow(dead_code)]

use flagcsc::poly::{frac, int};
use flagcsc::{BundleWeight, FlagVariety, KahlerClass, Rational, RootSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TYPES: [&str; 5] = ["A1", "A2", "A3", "B2", "G2"];

#[derive(Clone, Debug)]
pub struct Instance {
    pub lie_type: &'static str,
    /// One-based.
    pub pi_prime: Vec<usize>,
    pub lambda: Vec<i64>,
    pub kappa: Vec<Rational>,
    pub c: Rational,
}

impl Instance {
    pub fn flag(&self) -> FlagVariety {
        FlagVariety::new(RootSystem::parse(self.lie_type).unwrap(), self.pi_prime.iter().map(|i| i - 1)).unwrap()
    }

    pub fn weight(&self) -> BundleWeight {
        BundleWeight::new(self.lambda.clone()).unwrap()
    }

    pub fn class(&self) -> KahlerClass {
        KahlerClass::new(self.kappa.clone()).unwrap()
    }
}

/// `count` instances with strictly negative weights; the curvature sign
/// cycles through 0, negative, positive.
pub fn suite(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let lie_type = TYPES[i % TYPES.len()];
            let rank = RootSystem::parse(lie_type).unwrap().rank;
            let mut idx: Vec<usize> = (1..=rank).collect();
            idx.shuffle(&mut rng);
            let keep = rng.gen_range(0..rank);
            let mut pi_prime: Vec<usize> = idx[..keep].to_vec();
            pi_prime.sort_unstable();
            let width = rank - keep;
            let lambda = (0..width).map(|_| -rng.gen_range(1..=3)).collect();
            let kappa = (0..width).map(|_| frac(rng.gen_range(1..=5), rng.gen_range(1..=3))).collect();
            let c = match (i / TYPES.len()) % 3 {
                0 => int(0),
                1 => -frac(rng.gen_range(1..=6), rng.gen_range(1..=3)),
                _ => frac(rng.gen_range(1..=6), rng.gen_range(1..=3)),
            };
            Instance { lie_type, pi_prime, lambda, kappa, c }
        })
        .collect()
}
