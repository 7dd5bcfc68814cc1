//! Auditing the fuzzy metric axioms on sampled time scales.

use std::fmt;

use crate::space::{FuzzySpace, TimeScale};
use crate::tnorm::luk_unchecked;

/// Default absolute tolerance for axiom and property checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One failed axiom instance, with its witnessing points and time scales.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `M(i, j, t) <= 0`.
    NonPositive { i: usize, j: usize, t: f64, value: f64 },
    /// `M(i, i, t) != 1`, or `M(i, j, t) = 1` for `i != j`.
    Identity { i: usize, j: usize, t: f64, value: f64 },
    /// `M(i, j, t) != M(j, i, t)`.
    Asymmetric { i: usize, j: usize, t: f64, forward: f64, backward: f64 },
    /// `M(i, k, t + s) < M(i, j, t) ⋆ M(j, k, s)`.
    Triangle { i: usize, j: usize, k: usize, t: f64, s: f64, lhs: f64, rhs: f64 },
    /// `M(i, j, t1) > M(i, j, t2)` for `t1 < t2`.
    NotMonotone { i: usize, j: usize, t1: f64, t2: f64, at_t1: f64, at_t2: f64 },
}

impl Violation {
    /// Describes the violation with point labels from `space`.
    pub fn describe(&self, space: &FuzzySpace) -> String {
        let l = |i: usize| space.label(i);
        match *self {
            Violation::NonPositive { i, j, t, value } => {
                format!("positivity: M({},{},{t}) = {value}", l(i), l(j))
            }
            Violation::Identity { i, j, t, value } => {
                format!("identity: M({},{},{t}) = {value}", l(i), l(j))
            }
            Violation::Asymmetric { i, j, t, forward, backward } => {
                format!("symmetry: M({0},{1},{t}) = {forward} but M({1},{0},{t}) = {backward}", l(i), l(j))
            }
            Violation::Triangle { i, j, k, t, s, lhs, rhs } => format!(
                "triangle: triple ({},{},{}) at t = {t}, s = {s}: M(x,z,t+s) = {lhs} < {rhs}",
                l(i),
                l(j),
                l(k)
            ),
            Violation::NotMonotone { i, j, t1, t2, at_t1, at_t2 } => format!(
                "monotonicity: M({0},{1},{t1}) = {at_t1} > M({0},{1},{t2}) = {at_t2}",
                l(i),
                l(j)
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks axioms (i)–(iv) for every point triple at every sampled `(t, s)`
/// pair, and monotonicity in `t` along the sorted samples, with
/// [`DEFAULT_TOLERANCE`].
pub fn validate_axioms(space: &FuzzySpace, t_samples: &[TimeScale]) -> AxiomReport {
    validate_axioms_with(space, t_samples, DEFAULT_TOLERANCE)
}

pub fn validate_axioms_with(space: &FuzzySpace, t_samples: &[TimeScale], tol: f64) -> AxiomReport {
    let n = space.len();
    let mut ts: Vec<f64> = t_samples.iter().map(|t| t.get()).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut violations = Vec::new();

    // Membership snapshot per sample: m[ti][i * n + j].
    let snapshot: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| (0..n * n).map(|ij| space.m(ij / n, ij % n, t)).collect())
        .collect();

    for (ti, &t) in ts.iter().enumerate() {
        let m = &snapshot[ti];
        for i in 0..n {
            for j in 0..n {
                let v = m[i * n + j];
                if v <= 0.0 {
                    violations.push(Violation::NonPositive { i, j, t, value: v });
                }
                if (i == j) != (v == 1.0) {
                    violations.push(Violation::Identity { i, j, t, value: v });
                }
                if i < j {
                    let back = m[j * n + i];
                    if (v - back).abs() > tol {
                        violations.push(Violation::Asymmetric { i, j, t, forward: v, backward: back });
                    }
                }
            }
        }
    }

    for (ti, &t) in ts.iter().enumerate() {
        for (si, &s) in ts.iter().enumerate() {
            let (mt, ms) = (&snapshot[ti], &snapshot[si]);
            for i in 0..n {
                for k in 0..n {
                    let lhs = space.m(i, k, t + s);
                    for j in 0..n {
                        let rhs = luk_unchecked(mt[i * n + j], ms[j * n + k]);
                        if lhs + tol < rhs {
                            violations.push(Violation::Triangle { i, j, k, t, s, lhs, rhs });
                        }
                    }
                }
            }
        }
    }

    for w in 1..ts.len() {
        let (a, b) = (&snapshot[w - 1], &snapshot[w]);
        for i in 0..n {
            for j in 0..n {
                if a[i * n + j] > b[i * n + j] + tol {
                    violations.push(Violation::NotMonotone {
                        i,
                        j,
                        t1: ts[w - 1],
                        t2: ts[w],
                        at_t1: a[i * n + j],
                        at_t2: b[i * n + j],
                    });
                }
            }
        }
    }

    AxiomReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::default_labels;
    use std::collections::BTreeMap;

    fn grid(ts: &[f64]) -> Vec<TimeScale> {
        ts.iter().map(|&t| TimeScale::new(t).unwrap()).collect()
    }

    #[test]
    fn standard_space_is_valid() {
        let d = vec![
            vec![0.0, 1.0, 2.0, 3.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![3.0, 2.0, 1.0, 0.0],
        ];
        let s = FuzzySpace::standard(default_labels(4), d.clone()).unwrap();
        let ts = grid(&[0.01, 0.1, 0.25, 1.0, 4.0, 10.0, 100.0]);
        assert!(validate_axioms(&s, &ts).is_valid());
        let e = FuzzySpace::exponential(default_labels(4), d).unwrap();
        assert!(validate_axioms(&e, &ts).is_valid());
    }

    #[test]
    fn single_point_is_valid() {
        let s = FuzzySpace::standard(default_labels(1), vec![vec![0.0]]).unwrap();
        assert!(validate_axioms(&s, &grid(&[1.0, 2.0])).is_valid());
    }

    #[test]
    fn table_triangle_violation_is_reported() {
        // M(0,1) = M(1,2) = 0.9 but M(0,2) = 0.5 < 0.9 ⋆ 0.9 = 0.8.
        let mut values = BTreeMap::new();
        values.insert((0, 1), vec![0.9]);
        values.insert((1, 2), vec![0.9]);
        values.insert((0, 2), vec![0.5]);
        let s = FuzzySpace::table(default_labels(3), vec![1.0], &values).unwrap();
        let report = validate_axioms(&s, &grid(&[1.0]));
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Triangle { i: 0, j: 1, k: 2, .. }
        )));
        let text = report.violations[0].describe(&s);
        assert!(text.contains("triangle"), "{text}");
    }

    #[test]
    fn table_monotonicity_and_identity_violations() {
        let mut values = BTreeMap::new();
        values.insert((0, 1), vec![0.8, 0.6, 1.0]);
        let s = FuzzySpace::table(default_labels(2), vec![1.0, 2.0, 3.0], &values).unwrap();
        let report = validate_axioms(&s, &grid(&[1.0, 2.0, 3.0]));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NotMonotone { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Identity { i: 0, j: 1, .. })));
    }
}
