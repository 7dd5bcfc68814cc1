//! Point maps between finite spaces and the nonexpansion check.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{FuzzySpace, TimeScale};

/// A total map between the points of two spaces.
#[derive(Debug, Clone)]
pub struct PointMap {
    source: Arc<FuzzySpace>,
    target: Arc<FuzzySpace>,
    image: Vec<usize>,
}

impl PointMap {
    pub fn new(source: Arc<FuzzySpace>, target: Arc<FuzzySpace>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.len() {
            return Err(Error::PointMap(format!(
                "map defines {} images for {} source points",
                image.len(),
                source.len()
            )));
        }
        if let Some((x, &y)) = image.iter().enumerate().find(|(_, &y)| y >= target.len()) {
            return Err(Error::PointMap(format!(
                "image of `{}` is index {y}, target has {} points",
                source.label(x),
                target.len()
            )));
        }
        Ok(Self { source, target, image })
    }

    pub fn identity(space: Arc<FuzzySpace>) -> Self {
        let image = (0..space.len()).collect();
        Self { source: space.clone(), target: space, image }
    }

    pub fn source(&self) -> &Arc<FuzzySpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FuzzySpace> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }
}

/// A pair and time scale at which a map expands distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionWitness {
    pub x: usize,
    pub y: usize,
    pub t: f64,
    pub source_membership: f64,
    pub target_membership: f64,
}

/// Checks `M'(f(x), f(y), t) >= M(x, y, t)` for every pair and sampled `t`.
/// Returns the first failing pair, or `None` when the map is nonexpanding.
pub fn check_nonexpanding(f: &PointMap, t_samples: &[TimeScale]) -> Option<ExpansionWitness> {
    let (src, dst) = (f.source(), f.target());
    for &t in t_samples {
        let t = t.get();
        for x in 0..src.len() {
            for y in 0..src.len() {
                let before = src.m(x, y, t);
                let after = dst.m(f.apply(x), f.apply(y), t);
                if after < before {
                    return Some(ExpansionWitness {
                        x,
                        y,
                        t,
                        source_membership: before,
                        target_membership: after,
                    });
                }
            }
        }
    }
    None
}
