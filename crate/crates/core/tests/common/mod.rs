//! Test-only oracle: evaluates the defining infimum directly, quantifying
//! over every subset of the whole space (not only the supports) and using
//! the public neighborhood and mass operations.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use fuzzy_prokhorov::{neighborhood, FuzzySpace, Measure, PointSet, Radius, TimeScale};

fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Both constraint families at radius `r`, for every `A ⊆ X`.
pub fn feasible_by_definition(mu: &Measure, nu: &Measure, r: f64, t: f64) -> bool {
    let space = mu.space();
    let (r, t) = (Radius::new(r).unwrap(), TimeScale::new(t).unwrap());
    all_subsets(space.len()).all(|a| {
        let hood = neighborhood(space, &a, r, t).unwrap();
        mu.mass(&a).unwrap() <= nu.mass(&hood).unwrap() + r.get()
            && nu.mass(&a).unwrap() <= mu.mass(&hood).unwrap() + r.get()
    })
}

/// `1 − inf{r : feasible}`. The feasible set is up-closed, so its infimum is
/// the smallest candidate `c` (0, a gap `1 − M`, or a residual mass
/// difference) at which the constraints hold for radii just above `c`.
pub fn m_hat_by_definition(mu: &Measure, nu: &Measure, t: f64) -> f64 {
    let space = mu.space();
    let n = space.len();
    let ts = TimeScale::new(t).unwrap();
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    let mut push = |c: f64| {
        if (0.0..1.0).contains(&c) {
            candidates.insert(c.to_bits());
        }
    };
    push(0.0);
    let mut gaps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let g = 1.0 - space.membership(i, j, ts).unwrap();
            gaps.push(g);
            push(g);
        }
    }
    for a in all_subsets(n) {
        for &g in gaps.iter().chain([0.0].iter()) {
            let r = g.next_up();
            if r >= 1.0 {
                continue;
            }
            let hood = neighborhood(space, &a, Radius::new(r).unwrap(), ts).unwrap();
            push(mu.mass(&a).unwrap() - nu.mass(&hood).unwrap());
            push(nu.mass(&a).unwrap() - mu.mass(&hood).unwrap());
        }
        push(mu.mass(&a).unwrap());
        push(nu.mass(&a).unwrap());
    }
    let mut sorted: Vec<f64> = candidates.into_iter().map(f64::from_bits).collect();
    sorted.sort_by(f64::total_cmp);
    for c in sorted {
        let r = c.next_up();
        if r < 1.0 && feasible_by_definition(mu, nu, r, t) {
            return 1.0 - c;
        }
    }
    0.0
}

/// Line space with points at the given coordinates, Standard generator.
pub fn line(points: &[f64]) -> Arc<FuzzySpace> {
    let d = points
        .iter()
        .map(|a| points.iter().map(|b| (a - b).abs()).collect())
        .collect();
    let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
    Arc::new(FuzzySpace::standard(labels, d).unwrap())
}
