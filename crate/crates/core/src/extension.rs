//! Extending a fuzzy metric from a subset to an ambient point set through the
//! space of measures, and adjoining a terminal point for subprobabilities.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::axioms::validate_axioms;
use crate::error::{Error, Result};
use crate::measure::{dirac, Measure};
use crate::prokhorov;
use crate::space::{FuzzySpace, TimeScale};

/// Label given to the adjoined terminal point (primes are appended if the
/// space already uses it).
pub const TERMINAL_LABEL: &str = "⊥";

/// How points outside the subset are sent into measures on the subset.
#[derive(Debug, Clone)]
pub enum EmbeddingStrategy {
    /// `F(z_k) = (1 − λ_k) δ_{y₀} + λ_k δ_{y₁}` with `λ_k = k / (m + 1)`, where
    /// `y₀, y₁` are the two lexicographically smallest subset labels and
    /// `z_1 … z_m` the remaining ambient points in ambient order.
    TwoAnchor,
    /// Explicit images for the points outside the subset, keyed by label.
    Assigned(BTreeMap<String, Measure>),
}

/// An injective map `F` from the ambient points into measures on the subset,
/// with `F(y) = δ_y` on the subset.
#[derive(Debug, Clone)]
pub struct EmbeddingPlan {
    ambient: Vec<String>,
    subset: Arc<FuzzySpace>,
    images: Vec<Measure>,
}

impl EmbeddingPlan {
    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn subset(&self) -> &Arc<FuzzySpace> {
        &self.subset
    }

    /// `F(x)` for each ambient point, in ambient order.
    pub fn images(&self) -> &[Measure] {
        &self.images
    }
}

pub fn plan_embedding(
    ambient: &[String],
    subset: Arc<FuzzySpace>,
    strategy: EmbeddingStrategy,
) -> Result<EmbeddingPlan> {
    let mut seen = HashSet::new();
    if let Some(dup) = ambient.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(Error::Embedding(format!("duplicate ambient label `{dup}`")));
    }
    if let Some(missing) = subset.labels().iter().find(|l| !seen.contains(l.as_str())) {
        return Err(Error::Embedding(format!("subset label `{missing}` is not in the ambient set")));
    }
    let outside: Vec<&String> = ambient.iter().filter(|l| subset.index_of(l).is_none()).collect();

    let mut extra: BTreeMap<&str, Measure> = BTreeMap::new();
    match strategy {
        EmbeddingStrategy::TwoAnchor => {
            if !outside.is_empty() {
                if subset.len() < 2 {
                    return Err(Error::Embedding(
                        "the subset needs at least two points to embed further points".into(),
                    ));
                }
                let mut sorted: Vec<&String> = subset.labels().iter().collect();
                sorted.sort();
                let y0 = subset.index_of(sorted[0]).unwrap();
                let y1 = subset.index_of(sorted[1]).unwrap();
                let m = outside.len() as f64;
                for (k, z) in outside.iter().enumerate() {
                    let lambda = (k + 1) as f64 / (m + 1.0);
                    let image = Measure::new(subset.clone(), [(y0, 1.0 - lambda), (y1, lambda)])?;
                    extra.insert(z.as_str(), image);
                }
            }
        }
        EmbeddingStrategy::Assigned(map) => {
            for z in &outside {
                let image = map
                    .get(z.as_str())
                    .ok_or_else(|| Error::Embedding(format!("no image assigned to `{z}`")))?;
                if !Arc::ptr_eq(image.space(), &subset) && **image.space() != *subset {
                    return Err(Error::Embedding(format!("image of `{z}` lives on another space")));
                }
                extra.insert(z.as_str(), image.clone());
            }
            if let Some(stray) = map.keys().find(|k| !outside.iter().any(|z| z == k)) {
                return Err(Error::Embedding(format!("`{stray}` is not an ambient point outside the subset")));
            }
        }
    }

    let images = ambient
        .iter()
        .map(|l| match subset.index_of(l) {
            Some(y) => dirac(subset.clone(), y),
            None => Ok(extra[l.as_str()].clone()),
        })
        .collect::<Result<Vec<_>>>()?;

    for a in 0..images.len() {
        for b in (a + 1)..images.len() {
            if images[a] == images[b] {
                return Err(Error::Embedding(format!(
                    "`{}` and `{}` have the same image; the embedding must be injective",
                    ambient[a], ambient[b]
                )));
            }
        }
    }
    Ok(EmbeddingPlan { ambient: ambient.to_vec(), subset, images })
}

/// The extended fuzzy metric `M′(x, x′, t) = M̂(F(x), F(x′), t)` tabulated
/// on a grid.
#[derive(Debug, Clone)]
pub struct ExtendedSpace {
    pub space: Arc<FuzzySpace>,
    pub plan: EmbeddingPlan,
}

/// 32 log-spaced points on `[0.01, 100]`.
pub fn default_t_grid() -> Vec<TimeScale> {
    log_grid(0.01, 100.0, 32).expect("valid default grid")
}

/// `count` log-spaced points from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, count: usize) -> Result<Vec<TimeScale>> {
    if !(min > 0.0 && max > min && max.is_finite()) || count < 2 {
        return Err(Error::Range(format!("log grid needs 0 < min < max and count >= 2, got {min}:{max}:{count}")));
    }
    let (lo, hi) = (min.ln(), max.ln());
    (0..count)
        .map(|k| {
            let t = match k {
                0 => min,
                k if k + 1 == count => max,
                k => (lo + (hi - lo) * k as f64 / (count - 1) as f64).exp(),
            };
            TimeScale::new(t)
        })
        .collect()
}

fn check_grid(grid: &[TimeScale]) -> Result<Vec<f64>> {
    let ts: Vec<f64> = grid.iter().map(|t| t.get()).collect();
    if ts.is_empty() || ts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Range("t grid must be nonempty and strictly increasing".into()));
    }
    Ok(ts)
}

/// Tabulates `M′` on `t_grid` and validates the result on the same grid.
pub fn extend_metric(plan: &EmbeddingPlan, t_grid: &[TimeScale]) -> Result<ExtendedSpace> {
    let ts = check_grid(t_grid)?;
    let n = plan.ambient.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let series = pairs
        .par_iter()
        .map(|&(i, j)| {
            t_grid
                .iter()
                .map(|&t| prokhorov::value(&plan.images[i], &plan.images[j], t))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let values: BTreeMap<(usize, usize), Vec<f64>> = pairs.into_iter().zip(series).collect();
    let space = FuzzySpace::table(plan.ambient.clone(), ts, &values)?;

    let report = validate_axioms(&space, t_grid);
    if let Some(v) = report.violations.first() {
        return Err(Error::Extension(v.describe(&space)));
    }
    Ok(ExtendedSpace { space: Arc::new(space), plan: plan.clone() })
}

/// The space `X ∪ {⊥}` with `M′ = M` on `X`, `M′(x, ⊥, t) = 1/2` for every
/// `x ∈ X`, tabulated on `t_grid`. A probability measure on the result is a
/// subprobability measure on `X` with the missing mass parked at `⊥`.
pub fn adjoin_terminal(space: &FuzzySpace, t_grid: &[TimeScale]) -> Result<FuzzySpace> {
    let ts = check_grid(t_grid)?;
    let mut terminal = TERMINAL_LABEL.to_string();
    while space.index_of(&terminal).is_some() {
        terminal.push('\'');
    }
    let n = space.len();
    let mut labels = space.labels().to_vec();
    labels.push(terminal);
    FuzzySpace::tabulate(labels, ts, |i, j, t| if j == n { 0.5 } else { space.m(i, j, t) })
}
