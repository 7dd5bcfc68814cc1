//! Fixed benchmark instances.

use std::sync::Arc;

use fuzzy_prokhorov::random::{random_dyadic_measure, random_standard_space};
use fuzzy_prokhorov::{FuzzySpace, Measure};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub space: Arc<FuzzySpace>,
    pub mu: Measure,
    pub nu: Measure,
}

/// A seeded instance on `n` points with both supports of size `support`.
pub fn instance(n: usize, support: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = random_standard_space(&mut rng, n);
    // Redraw until the support sizes are exact, so timings track the size.
    let draw = |rng: &mut ChaCha8Rng| loop {
        let m = random_dyadic_measure(rng, &space, support);
        if m.support().len() == support {
            return m;
        }
    };
    let mu = draw(&mut rng);
    let nu = draw(&mut rng);
    Instance { space, mu, nu }
}
