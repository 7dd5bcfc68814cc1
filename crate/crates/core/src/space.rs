//! Finite fuzzy metric spaces, open balls and neighborhoods.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

/// A set of point indices.
pub type PointSet = BTreeSet<usize>;

/// Radius of an open ball, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Radius(f64);

impl Radius {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r < 1.0 {
            Ok(Self(r))
        } else {
            Err(Error::Radius(r))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Time scale parameter `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TimeScale(f64);

impl TimeScale {
    pub fn new(t: f64) -> Result<Self> {
        if t > 0.0 && t.is_finite() {
            Ok(Self(t))
        } else {
            Err(Error::TimeScale(t))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// How the membership function `M(i, j, t)` of a space is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `t / (t + d(i, j))`.
    Standard(Vec<Vec<f64>>),
    /// `exp(-d(i, j) / t)`.
    Exponential(Vec<Vec<f64>>),
    /// Sampled membership values, linear between grid points and constant
    /// outside the grid. `values` holds one series per unordered pair `i < j`
    /// in row-major upper-triangle order.
    Table { t_grid: Vec<f64>, values: Vec<Vec<f64>> },
}

/// A finite fuzzy metric space under the Łukasiewicz t-norm.
///
/// Construction checks structure (shapes, ranges, symmetry). Closed-form
/// generators additionally require a crisp metric, which makes them valid
/// fuzzy metrics. Table input is only checked for shape and range; use
/// [`crate::validate_axioms`] to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySpace {
    labels: Vec<String>,
    generator: Generator,
}

impl FuzzySpace {
    pub fn standard(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        check_labels(&labels)?;
        check_metric(&labels, &dist)?;
        Ok(Self { labels, generator: Generator::Standard(dist) })
    }

    pub fn exponential(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        check_labels(&labels)?;
        check_metric(&labels, &dist)?;
        Ok(Self { labels, generator: Generator::Exponential(dist) })
    }

    /// Builds a table space. `values` maps ordered index pairs to series over
    /// `t_grid`; each unordered pair must appear at least once, and when both
    /// orientations are given they must agree. Diagonal entries, if present,
    /// must be all ones.
    pub fn table(
        labels: Vec<String>,
        t_grid: Vec<f64>,
        values: &BTreeMap<(usize, usize), Vec<f64>>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        if t_grid.is_empty() {
            return Err(Error::Space("t_grid is empty".into()));
        }
        for (k, &t) in t_grid.iter().enumerate() {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Space(format!("t_grid[{k}] = {t} is not a positive time scale")));
            }
            if k > 0 && t <= t_grid[k - 1] {
                return Err(Error::Space(format!("t_grid not strictly increasing at index {k}")));
            }
        }
        let n = labels.len();
        for (&(i, j), series) in values {
            if i >= n || j >= n {
                return Err(Error::Space(format!("pair ({i},{j}) references a missing point")));
            }
            if series.len() != t_grid.len() {
                return Err(Error::Space(format!(
                    "pair ({},{}) has {} values, t_grid has {}",
                    labels[i],
                    labels[j],
                    series.len(),
                    t_grid.len()
                )));
            }
            for &v in series {
                if !(v > 0.0 && v <= 1.0) {
                    return Err(Error::Space(format!(
                        "pair ({},{}) has membership {v} outside (0, 1]",
                        labels[i], labels[j]
                    )));
                }
            }
            if i == j && series.iter().any(|&v| v != 1.0) {
                return Err(Error::Space(format!("diagonal pair ({0},{0}) must be 1", labels[i])));
            }
        }
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let series = match (values.get(&(i, j)), values.get(&(j, i))) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::Space(format!(
                            "pair ({},{}) is asymmetric",
                            labels[i], labels[j]
                        )))
                    }
                    (Some(a), _) | (None, Some(a)) => a.clone(),
                    (None, None) => {
                        return Err(Error::Space(format!(
                            "pair ({},{}) has no values",
                            labels[i], labels[j]
                        )))
                    }
                };
                upper.push(series);
            }
        }
        Ok(Self { labels, generator: Generator::Table { t_grid, values: upper } })
    }

    /// Table space built from a closure evaluated at every grid point for
    /// each pair `i < j`.
    pub fn tabulate<F>(labels: Vec<String>, t_grid: Vec<f64>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, f64) -> f64,
    {
        let n = labels.len();
        let mut values = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                values.insert((i, j), t_grid.iter().map(|&t| f(i, j, t)).collect());
            }
        }
        Self::table(labels, t_grid, &values)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// The table grid, if this is a table space.
    pub fn t_grid(&self) -> Option<&[f64]> {
        match &self.generator {
            Generator::Table { t_grid, .. } => Some(t_grid),
            _ => None,
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Index { index: i, len: self.len() })
        }
    }

    /// `M(i, j, t)`.
    pub fn membership(&self, i: usize, j: usize, t: TimeScale) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.m(i, j, t.get()))
    }

    /// Unchecked membership. Indices must be valid and `t > 0`.
    pub(crate) fn m(&self, i: usize, j: usize, t: f64) -> f64 {
        if i == j {
            return 1.0;
        }
        match &self.generator {
            Generator::Standard(d) => t / (t + d[i][j]),
            Generator::Exponential(d) => (-d[i][j] / t).exp(),
            Generator::Table { t_grid, values } => {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                let n = self.len();
                let k = a * n - a * (a + 1) / 2 + (b - a - 1);
                interpolate(t_grid, &values[k], t)
            }
        }
    }

    /// `1 - M(i, j, t)`: the smallest radius whose open ball at `i` does
    /// *not* yet contain `j`. Every ball test goes through this value so
    /// that breakpoints and membership agree bit-for-bit.
    pub(crate) fn gap(&self, i: usize, j: usize, t: f64) -> f64 {
        1.0 - self.m(i, j, t)
    }
}

fn interpolate(grid: &[f64], values: &[f64], t: f64) -> f64 {
    if t <= grid[0] {
        return values[0];
    }
    let last = grid.len() - 1;
    if t >= grid[last] {
        return values[last];
    }
    // grid[k] < t < grid[k + 1]
    let k = grid.partition_point(|&g| g <= t) - 1;
    let (t0, t1) = (grid[k], grid[k + 1]);
    let w = (t - t0) / (t1 - t0);
    values[k] + w * (values[k + 1] - values[k])
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Space("a space needs at least one point".into()));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Space(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

const METRIC_TOL: f64 = 1e-9;

fn check_metric(labels: &[String], d: &[Vec<f64>]) -> Result<()> {
    let n = labels.len();
    if d.len() != n || d.iter().any(|row| row.len() != n) {
        return Err(Error::Space(format!("distance matrix must be {n}x{n}")));
    }
    for i in 0..n {
        for j in 0..n {
            let v = d[i][j];
            let pair = || format!("({},{})", labels[i], labels[j]);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Space(format!("distance {} = {v} is not a nonnegative real", pair())));
            }
            if i == j && v != 0.0 {
                return Err(Error::Space(format!("diagonal distance {} = {v} must be 0", pair())));
            }
            if i != j && v == 0.0 {
                return Err(Error::Space(format!("distinct points {} at distance 0", pair())));
            }
            if v != d[j][i] {
                return Err(Error::Space(format!("distance matrix asymmetric at pair {}", pair())));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > d[i][j] + d[j][k] + METRIC_TOL {
                    return Err(Error::Space(format!(
                        "triangle inequality fails for triple ({},{},{})",
                        labels[i], labels[j], labels[k]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Open ball test: `y ∈ B(center, r, t)`, i.e. `M(center, y, t) > 1 - r`.
///
/// Evaluated as `1 - M(center, y, t) < r` with no tolerance.
pub fn in_ball(space: &FuzzySpace, center: usize, y: usize, r: Radius, t: TimeScale) -> Result<bool> {
    space.check_index(center)?;
    space.check_index(y)?;
    Ok(space.gap(center, y, t.get()) < r.get())
}

/// `A^{r,t}`: the union of the open balls `B(x, r, t)` over `x ∈ A`.
pub fn neighborhood(space: &FuzzySpace, a: &PointSet, r: Radius, t: TimeScale) -> Result<PointSet> {
    for &x in a {
        space.check_index(x)?;
    }
    let t = t.get();
    Ok((0..space.len())
        .filter(|&y| a.iter().any(|&x| space.gap(x, y, t) < r.get()))
        .collect())
}

/// Labels `p0, p1, …` for quick construction.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point(d: f64) -> FuzzySpace {
        FuzzySpace::standard(default_labels(2), vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    fn t(v: f64) -> TimeScale {
        TimeScale::new(v).unwrap()
    }

    fn r(v: f64) -> Radius {
        Radius::new(v).unwrap()
    }

    #[test]
    fn standard_membership() {
        assert_eq!(two_point(1.0).membership(0, 1, t(1.0)).unwrap(), 0.5);
        assert_eq!(two_point(4.0).membership(0, 1, t(1.0)).unwrap(), 0.2);
        assert_eq!(two_point(4.0).membership(1, 1, t(3.0)).unwrap(), 1.0);
    }

    #[test]
    fn exponential_membership() {
        let s = FuzzySpace::exponential(default_labels(2), vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert!((s.membership(0, 1, t(1.0)).unwrap() - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(s.membership(0, 0, t(3.0)).unwrap(), 1.0);
    }

    #[test]
    fn membership_errors() {
        let s = two_point(1.0);
        assert!(matches!(s.membership(0, 2, t(1.0)), Err(Error::Index { index: 2, len: 2 })));
        assert!(TimeScale::new(0.0).is_err());
        assert!(TimeScale::new(-1.0).is_err());
        assert!(Radius::new(0.0).is_err());
        assert!(Radius::new(1.0).is_err());
    }

    #[test]
    fn table_interpolates_and_clamps() {
        let mut values = BTreeMap::new();
        values.insert((0, 1), vec![0.2, 0.6]);
        let s = FuzzySpace::table(default_labels(2), vec![1.0, 3.0], &values).unwrap();
        assert_eq!(s.membership(0, 1, t(0.5)).unwrap(), 0.2);
        assert!((s.membership(1, 0, t(2.0)).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(s.membership(0, 1, t(10.0)).unwrap(), 0.6);
    }

    #[test]
    fn table_rejects_bad_input() {
        let labels = default_labels(3);
        let mut values = BTreeMap::new();
        values.insert((0, 1), vec![0.5]);
        values.insert((1, 2), vec![0.5]);
        let err = FuzzySpace::table(labels.clone(), vec![1.0], &values).unwrap_err();
        assert!(err.to_string().contains("(p0,p2)"), "{err}");

        values.insert((0, 2), vec![0.5]);
        values.insert((2, 0), vec![0.4]);
        let err = FuzzySpace::table(labels.clone(), vec![1.0], &values).unwrap_err();
        assert!(err.to_string().contains("asymmetric"), "{err}");

        values.remove(&(2, 0));
        assert!(FuzzySpace::table(labels.clone(), vec![2.0, 1.0], &values).is_err());
        values.insert((0, 2), vec![0.0]);
        assert!(FuzzySpace::table(labels, vec![1.0], &values).is_err());
    }

    #[test]
    fn standard_rejects_non_metrics() {
        let err = FuzzySpace::standard(default_labels(2), vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert!(err.to_string().contains("(p0,p1)"), "{err}");
        let d = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        let err = FuzzySpace::standard(default_labels(3), d).unwrap_err();
        assert!(err.to_string().contains("triangle"), "{err}");
        assert!(FuzzySpace::standard(vec!["a".into(), "a".into()], vec![vec![0.0; 2]; 2]).is_err());
        assert!(FuzzySpace::standard(default_labels(2), vec![vec![0.0; 2]; 2]).is_err());
    }

    #[test]
    fn ball_is_strict() {
        // M = 0.5 at d = 1, t = 1.
        let s = two_point(1.0);
        assert!(in_ball(&s, 0, 1, r(0.6), t(1.0)).unwrap());
        assert!(!in_ball(&s, 0, 1, r(0.5), t(1.0)).unwrap());
        assert!(in_ball(&s, 0, 0, r(1e-9), t(1.0)).unwrap());
    }

    #[test]
    fn neighborhood_examples() {
        // M = 0.2 at d = 4, t = 1.
        let s = two_point(4.0);
        let a: PointSet = [0].into();
        assert!(neighborhood(&s, &PointSet::new(), r(0.5), t(1.0)).unwrap().is_empty());
        assert_eq!(neighborhood(&s, &a, r(0.5), t(1.0)).unwrap(), a);
        assert_eq!(neighborhood(&s, &a, r(0.9), t(1.0)).unwrap(), [0, 1].into());
        assert!(neighborhood(&s, &[5].into(), r(0.5), t(1.0)).is_err());
    }
}
