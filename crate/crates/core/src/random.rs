//! Seeded random instances: integer-distance spaces, dyadic measures and
//! 1-Lipschitz maps. Used by the experiment harnesses, tests and benches.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;

use crate::map::PointMap;
use crate::measure::{Measure, MetaMeasure};
use crate::space::{default_labels, FuzzySpace};

/// Weights are multiples of `1 / DYADIC_UNITS`.
pub const DYADIC_UNITS: u32 = 64;

/// Closes an arbitrary positive symmetric matrix under shortest paths, which
/// turns it into a metric no larger than the input.
fn metric_closure(d: &mut [Vec<f64>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// Integer distance matrix on `n` points with entries in `[1, 10]`.
pub fn random_distances<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.random_range(1..=10) as f64;
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    metric_closure(&mut d);
    d
}

/// Standard-generator space with integer distances in `[1, 10]`.
pub fn random_standard_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arc<FuzzySpace> {
    let d = random_distances(rng, n);
    Arc::new(FuzzySpace::standard(default_labels(n), d).expect("closure yields a metric"))
}

/// Measure with between 1 and `max_support` atoms and weights that are
/// multiples of `1/64`.
pub fn random_dyadic_measure<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<FuzzySpace>,
    max_support: usize,
) -> Measure {
    let k = rng.random_range(1..=max_support.min(space.len()));
    let points = sample(rng, space.len(), k).into_vec();
    let units = dyadic_composition(rng, k);
    Measure::new(
        space.clone(),
        points.into_iter().zip(units).map(|(p, u)| (p, u as f64 / DYADIC_UNITS as f64)),
    )
    .expect("dyadic weights sum to one")
}

/// Splits `DYADIC_UNITS` into `k` positive parts.
fn dyadic_composition<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<u32> {
    let mut cuts: Vec<u32> = sample(rng, DYADIC_UNITS as usize - 1, k - 1)
        .into_iter()
        .map(|c| c as u32 + 1)
        .collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain([DYADIC_UNITS]) {
        parts.push(c - prev);
        prev = c;
    }
    parts
}

/// Meta-measure with up to `max_components` random component measures.
pub fn random_meta_measure<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<FuzzySpace>,
    max_components: usize,
    max_support: usize,
) -> MetaMeasure {
    let k = rng.random_range(1..=max_components.max(1));
    let weights = dyadic_composition(rng, k);
    let components = weights
        .into_iter()
        .map(|w| (w as f64 / DYADIC_UNITS as f64, random_dyadic_measure(rng, space, max_support)))
        .collect();
    MetaMeasure::new(components).expect("dyadic component weights sum to one")
}

/// A random map from `source` (Standard generator) into a fresh Standard
/// space whose crisp distances never exceed those of the source, so the map
/// is 1-Lipschitz and therefore nonexpanding.
pub fn random_lipschitz_map<R: Rng + ?Sized>(rng: &mut R, source: &Arc<FuzzySpace>) -> PointMap {
    let crate::space::Generator::Standard(src_d) = source.generator() else {
        panic!("random_lipschitz_map expects a Standard-generator source");
    };
    let n = source.len();
    let m = rng.random_range(1..=n + 1);
    let image: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();

    let mut d = random_distances(rng, m);
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (image[x], image[y]);
            if a != b && src_d[x][y] < d[a][b] {
                d[a][b] = src_d[x][y];
                d[b][a] = src_d[x][y];
            }
        }
    }
    metric_closure(&mut d);
    let target = Arc::new(FuzzySpace::standard(default_labels(m), d).expect("closure yields a metric"));
    PointMap::new(source.clone(), target, image).expect("image indices in range")
}
