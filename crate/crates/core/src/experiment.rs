//! Metric curves, the empirical convergence experiment and the probe for
//! nonexpansion of the flattening map.
//!
//! Grid points and trials are evaluated in parallel; every output is
//! assembled in input order, so results depend only on the inputs and seed.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{flatten, sample_empirical, total_variation, Measure, MetaMeasure};
use crate::prokhorov;
use crate::random::{random_meta_measure, random_standard_space};
use crate::space::{FuzzySpace, TimeScale};

/// Samples of `t ↦ M̂(μ, ν, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricCurve {
    pub samples: Vec<(f64, f64)>,
}

impl MetricCurve {
    /// `t,m_hat` header, one unquoted row per sample, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,m_hat\n");
        for (t, m) in &self.samples {
            writeln!(out, "{t},{m}").unwrap();
        }
        out
    }
}

/// `steps` uniformly spaced samples on `[t_min, t_max]`.
pub fn prokhorov_curve(mu: &Measure, nu: &Measure, t_min: f64, t_max: f64, steps: usize) -> Result<MetricCurve> {
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(Error::Range(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if steps < 2 {
        return Err(Error::Range(format!("need at least 2 steps, got {steps}")));
    }
    let last = (steps - 1) as f64;
    let samples = (0..steps)
        .into_par_iter()
        .map(|k| {
            let t = if k + 1 == steps { t_max } else { t_min + (t_max - t_min) * (k as f64 / last) };
            prokhorov::value(mu, nu, TimeScale::new(t)?).map(|m| (t, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MetricCurve { samples })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `1 − M̂(empirical, μ, t)`.
    pub gap: f64,
    pub total_variation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,gap,tv\n");
        for r in &self.rows {
            writeln!(out, "{},{},{}", r.n, r.gap, r.total_variation).unwrap();
        }
        out
    }

    /// Whether the gap never increases along the schedule.
    pub fn gap_nonincreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].gap <= w[0].gap)
    }
}

/// For each sample count, draws an empirical measure from `mu` and records
/// its distance to `mu` under `1 − M̂` and under total variation.
///
/// Row `k` uses the `k`-th `u64` of a ChaCha8 stream seeded with `seed` as
/// its sampling seed.
pub fn convergence_experiment(mu: &Measure, schedule: &[usize], t: TimeScale, seed: u64) -> Result<ConvergenceReport> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(usize, u64)> = schedule.iter().map(|&n| (n, seeds.random())).collect();
    let rows = jobs
        .into_par_iter()
        .map(|(n, s)| {
            let empirical = sample_empirical(mu, n, s)?;
            let gap = 1.0 - prokhorov::value(&empirical, mu, t)?;
            let tv = total_variation(&empirical, mu)?;
            Ok(ConvergenceRow { n, gap, total_variation: tv })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { rows })
}

/// Distance between two meta-measures one level up: the distinct component
/// measures become the points of a table space whose membership at `t` is
/// `M̂` itself.
pub fn meta_prokhorov(a: &MetaMeasure, b: &MetaMeasure, t: TimeScale) -> Result<f64> {
    let mut points: Vec<&Measure> = Vec::new();
    for (_, m) in a.components().iter().chain(b.components()) {
        if !points.contains(&m) {
            points.push(m);
        }
    }
    let labels = (0..points.len()).map(|i| format!("m{i}")).collect();
    let derived = FuzzySpace::tabulate(labels, vec![t.get()], |i, j, _| {
        prokhorov::value(points[i], points[j], t).expect("components share a space")
    })?;
    let derived = Arc::new(derived);
    let lift = |meta: &MetaMeasure| {
        Measure::new(
            derived.clone(),
            meta.components().iter().map(|(w, m)| (points.iter().position(|p| *p == m).unwrap(), *w)),
        )
    };
    prokhorov::value(&lift(a)?, &lift(b)?, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiTrial {
    /// `M̂` between the two meta-measures.
    pub meta_value: f64,
    /// `M̂` between their flattenings.
    pub flat_value: f64,
}

impl PsiTrial {
    /// Positive when flattening moved the two measures further apart.
    pub fn excess(&self) -> f64 {
        self.meta_value - self.flat_value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiProbeReport {
    pub t: f64,
    pub trials: Vec<PsiTrial>,
    pub violations: usize,
    pub max_excess: f64,
}

impl PsiProbeReport {
    pub fn to_table(&self) -> String {
        let mut out = String::from("trials,violations,max_excess\n");
        writeln!(out, "{},{},{}", self.trials.len(), self.violations, self.max_excess).unwrap();
        out
    }
}

/// Tolerance for counting a probe trial as a nonexpansion violation.
pub const PSI_TOLERANCE: f64 = 1e-9;

/// Samples pairs of random meta-measures on `space` and compares their
/// distance with the distance of their flattenings. Report only.
pub fn psi_nonexpansion_probe(
    space: &Arc<FuzzySpace>,
    trial_count: usize,
    seed: u64,
    t: TimeScale,
) -> Result<PsiProbeReport> {
    if trial_count == 0 {
        return Err(Error::Range("trial count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(MetaMeasure, MetaMeasure)> = (0..trial_count)
        .map(|_| {
            let a = random_meta_measure(&mut rng, space, 3, 4);
            let b = random_meta_measure(&mut rng, space, 3, 4);
            (a, b)
        })
        .collect();
    let trials = pairs
        .par_iter()
        .map(|(a, b)| {
            Ok(PsiTrial {
                meta_value: meta_prokhorov(a, b, t)?,
                flat_value: prokhorov::value(&flatten(a), &flatten(b), t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = trials.iter().filter(|tr| tr.excess() > PSI_TOLERANCE).count();
    let max_excess = trials.iter().map(PsiTrial::excess).fold(f64::NEG_INFINITY, f64::max);
    Ok(PsiProbeReport { t: t.get(), trials, violations, max_excess })
}

/// Random Standard space on `n` points, for callers that have no space file.
pub fn probe_space(n: usize, seed: u64) -> Arc<FuzzySpace> {
    random_standard_space(&mut ChaCha8Rng::seed_from_u64(seed), n)
}
