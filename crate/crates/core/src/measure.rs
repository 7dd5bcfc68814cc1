//! Finite-support probability measures.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::map::PointMap;
use crate::space::{FuzzySpace, PointSet};

/// Accepted deviation of the input total mass from 1 before renormalizing.
pub const MASS_TOLERANCE: f64 = 1e-12;

pub(crate) fn same_space(a: &Arc<FuzzySpace>, b: &Arc<FuzzySpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A probability measure with finite support on a [`FuzzySpace`].
///
/// Atoms are kept sorted by point index and every stored weight is strictly
/// positive, so the support is exactly the set of stored indices.
#[derive(Debug, Clone)]
pub struct Measure {
    space: Arc<FuzzySpace>,
    atoms: Vec<(usize, f64)>,
}

impl PartialEq for Measure {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && same_space(&self.space, &other.space)
    }
}

impl Measure {
    /// Builds a measure from `(point, weight)` pairs. Repeated points are
    /// summed and zero weights dropped. The total must be within
    /// [`MASS_TOLERANCE`] of 1; it is then renormalized by division.
    pub fn new(space: Arc<FuzzySpace>, weights: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for (i, w) in weights {
            space.check_index(i)?;
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::Measure(format!(
                    "weight {w} at `{}` is not a nonnegative real",
                    space.label(i)
                )));
            }
            *acc.entry(i).or_insert(0.0) += w;
        }
        let total: f64 = acc.values().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Measure(format!("weights sum to {total}, expected 1")));
        }
        let atoms = acc
            .into_iter()
            .filter(|&(_, w)| w > 0.0)
            .map(|(i, w)| (i, w / total))
            .collect();
        Ok(Self { space, atoms })
    }

    /// Like [`Measure::new`] with points named by label.
    pub fn from_labels<'a>(
        space: Arc<FuzzySpace>,
        weights: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        let mut indexed = Vec::new();
        for (label, w) in weights {
            let i = space
                .index_of(label)
                .ok_or_else(|| Error::Measure(format!("unknown label `{label}`")))?;
            indexed.push((i, w));
        }
        Self::new(space, indexed)
    }

    /// Normalizes arbitrary nonnegative counts, e.g. sample tallies.
    fn from_counts(space: Arc<FuzzySpace>, counts: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let counts: Vec<(usize, f64)> = counts.into_iter().filter(|&(_, c)| c > 0.0).collect();
        let total: f64 = counts.iter().map(|&(_, c)| c).sum();
        let atoms = counts.into_iter().map(|(i, c)| (i, c / total)).collect();
        Self { space, atoms }
    }

    pub fn space(&self) -> &Arc<FuzzySpace> {
        &self.space
    }

    /// `(point, weight)` pairs sorted by point.
    pub fn atoms(&self) -> &[(usize, f64)] {
        &self.atoms
    }

    pub fn support(&self) -> Vec<usize> {
        self.atoms.iter().map(|&(i, _)| i).collect()
    }

    pub fn weight(&self, i: usize) -> f64 {
        match self.atoms.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(k) => self.atoms[k].1,
            Err(_) => 0.0,
        }
    }

    /// `μ(A)`.
    pub fn mass(&self, a: &PointSet) -> Result<f64> {
        for &i in a {
            self.space.check_index(i)?;
        }
        Ok(self.atoms.iter().filter(|(i, _)| a.contains(i)).map(|&(_, w)| w).sum())
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }
}

/// `δ_x`.
pub fn dirac(space: Arc<FuzzySpace>, x: usize) -> Result<Measure> {
    space.check_index(x)?;
    Ok(Measure { space, atoms: vec![(x, 1.0)] })
}

/// The image measure `P(f)(μ)`, with `P(f)(μ)(A) = μ(f⁻¹(A))`.
pub fn pushforward(f: &PointMap, mu: &Measure) -> Result<Measure> {
    if !same_space(f.source(), mu.space()) {
        return Err(Error::SpaceMismatch);
    }
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for &(x, w) in mu.atoms() {
        *acc.entry(f.apply(x)).or_insert(0.0) += w;
    }
    Ok(Measure { space: f.target().clone(), atoms: acc.into_iter().collect() })
}

/// `(1/2) Σ |μ(i) − ν(i)|`.
pub fn total_variation(mu: &Measure, nu: &Measure) -> Result<f64> {
    if !same_space(mu.space(), nu.space()) {
        return Err(Error::SpaceMismatch);
    }
    let mut diff: BTreeMap<usize, f64> = BTreeMap::new();
    for &(i, w) in mu.atoms() {
        *diff.entry(i).or_insert(0.0) += w;
    }
    for &(i, w) in nu.atoms() {
        *diff.entry(i).or_insert(0.0) -= w;
    }
    Ok(0.5 * diff.values().map(|d| d.abs()).sum::<f64>())
}

/// Empirical measure of `n_samples` i.i.d. draws from `mu`.
///
/// Draws come from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`)
/// through `rand`'s `WeightedIndex`, so results are identical on every
/// platform for a given seed.
pub fn sample_empirical(mu: &Measure, n_samples: usize, seed: u64) -> Result<Measure> {
    if n_samples == 0 {
        return Err(Error::Measure("sample count must be at least 1".into()));
    }
    let weights: Vec<f64> = mu.atoms().iter().map(|&(_, w)| w).collect();
    let index = WeightedIndex::new(&weights).map_err(|e| Error::Measure(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; weights.len()];
    for _ in 0..n_samples {
        counts[index.sample(&mut rng)] += 1;
    }
    Ok(Measure::from_counts(
        mu.space().clone(),
        mu.atoms().iter().zip(counts).map(|(&(i, _), c)| (i, c as f64)),
    ))
}

/// A finitely supported measure on measures: `Σ αᵢ δ_{μᵢ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaMeasure {
    components: Vec<(f64, Measure)>,
}

impl MetaMeasure {
    /// Component weights follow the same normalization rules as [`Measure::new`].
    /// Equal component measures are merged.
    pub fn new(components: Vec<(f64, Measure)>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Measure("meta-measure needs at least one component".into()));
        };
        let space = first.1.space().clone();
        let mut merged: Vec<(f64, Measure)> = Vec::new();
        for (w, m) in components {
            if !same_space(&space, m.space()) {
                return Err(Error::SpaceMismatch);
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::Measure(format!("component weight {w} is not a nonnegative real")));
            }
            match merged.iter_mut().find(|(_, existing)| *existing == m) {
                Some(slot) => slot.0 += w,
                None => merged.push((w, m)),
            }
        }
        let total: f64 = merged.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Measure(format!("component weights sum to {total}, expected 1")));
        }
        merged.retain(|(w, _)| *w > 0.0);
        for c in &mut merged {
            c.0 /= total;
        }
        Ok(Self { components: merged })
    }

    pub fn dirac(mu: Measure) -> Self {
        Self { components: vec![(1.0, mu)] }
    }

    /// Distinct component measures with their weights.
    pub fn components(&self) -> &[(f64, Measure)] {
        &self.components
    }

    pub fn space(&self) -> &Arc<FuzzySpace> {
        self.components[0].1.space()
    }
}

/// `ψ(Σ αᵢ δ_{μᵢ}) = Σ αᵢ μᵢ`.
pub fn flatten(meta: &MetaMeasure) -> Measure {
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for (alpha, mu) in meta.components() {
        for &(i, w) in mu.atoms() {
            *acc.entry(i).or_insert(0.0) += alpha * w;
        }
    }
    Measure::from_counts(meta.space().clone(), acc)
}
